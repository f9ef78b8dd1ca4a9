import math

import pytest

from thermolen import (
    DegenerateState,
    MetricTensor2,
    Rep,
    StatePoint,
    convert_state,
    degeneracy_scan,
    det_energy,
    det_entropy,
    energy_metric,
    entropy_metric,
    metric_from_hessian,
    state_from_tv,
    t4_residual,
)
from thermolen.validate import sample_states


def rel(a, b):
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


def metric_close(g, h, tol):
    scale = max(abs(g.g11), abs(g.g12), abs(g.g22))
    for a, b in ((g.g11, h.g11), (g.g12, h.g12), (g.g22, h.g22)):
        assert abs(a - b) / max(abs(a), abs(b), scale) < tol


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def test_energy_metric_ideal_hand_values(ideal):
    # T=2, v=1: g11 = T/c_v = 4/3, g12 = -T*alpha/(kappa_T*c_v) = -4/3,
    # g22 = c_p/(v*kappa_T*c_v) = 10/3
    g = energy_metric(ideal, state_from_tv(ideal, 2.0, 1.0))
    assert rel(g.g11, 4.0 / 3.0) < 1e-12
    assert rel(g.g12, -4.0 / 3.0) < 1e-12
    assert rel(g.g22, 10.0 / 3.0) < 1e-12
    assert g.definiteness() == "positive_definite"


def test_entropy_metric_ideal_hand_values(ideal):
    # u=3, v=1 (T=2): g11 = 1/(c_v T^2) = 1/6, cross term vanishes, g22 = R/v^2
    g = entropy_metric(ideal, StatePoint.entropy(3.0, 1.0))
    assert rel(g.g11, 1.0 / 6.0) < 1e-12
    assert abs(g.g12) < 1e-15
    assert rel(g.g22, 1.0) < 1e-12


def test_energy_metric_requires_energy_rep(ideal):
    with pytest.raises(ValueError):
        energy_metric(ideal, StatePoint.entropy(3.0, 1.0))
    with pytest.raises(ValueError):
        entropy_metric(ideal, StatePoint.energy(0.0, 1.0))


def test_energy_metric_linear_g22_zero(linear_sv_bilinear):
    g = energy_metric(linear_sv_bilinear, StatePoint.energy(1.3, 0.7))
    assert g.g22 == 0.0
    assert g.g12 == 1.0
    assert g.g11 == 0.0
    assert g.definiteness() == "indefinite"  # det = -1


def test_entropy_metric_linear_uv_g22_zero(linear_uv):
    g = entropy_metric(linear_uv, StatePoint.entropy(1.0, 1.5))
    assert g.g22 == 0.0
    assert g.g11 > 0.0


def test_energy_metric_degenerate_at_critical(vdw):
    with pytest.raises(DegenerateState):
        energy_metric(vdw, state_from_tv(vdw, 1.0, 1.0))


@pytest.mark.parametrize("name", ["ideal", "quasi_ideal", "van_der_waals"])
def test_metric_oracle_equivalence(gas_models, rng, name):
    model = gas_models[name]
    for pt in sample_states(model, 100, rng):
        metric_close(energy_metric(model, pt),
                     metric_from_hessian(model, pt, step=1e-4), 1e-6)
        pt_s = convert_state(model, pt, Rep.ENTROPY)
        metric_close(entropy_metric(model, pt_s),
                     metric_from_hessian(model, pt_s, step=1e-4), 1e-6)


def test_metric_oracle_linear(linear_sv_curved, linear_uv):
    # fundamental relations are polynomial, so the stencil has no truncation
    # error; a larger step keeps roundoff amplification small
    pt = StatePoint.energy(0.8, 1.2)
    metric_close(energy_metric(linear_sv_curved, pt),
                 metric_from_hessian(linear_sv_curved, pt, step=1e-3), 1e-6)
    pt_s = StatePoint.entropy(1.0, 1.5)
    metric_close(entropy_metric(linear_uv, pt_s),
                 metric_from_hessian(linear_uv, pt_s, step=1e-3), 1e-6)


@pytest.mark.parametrize("name", ["ideal", "quasi_ideal", "van_der_waals"])
def test_entropy_metric_positive_semidefinite(gas_models, rng, name):
    model = gas_models[name]
    for pt in sample_states(model, 60, rng):
        g = entropy_metric(model, convert_state(model, pt, Rep.ENTROPY))
        assert g.g12 * g.g12 <= g.g11 * g.g22 + 1e-12
        assert g.g11 > 0.0


# ---------------------------------------------------------------------------
# finite-difference oracle details
# ---------------------------------------------------------------------------

def test_hessian_matches_example(ideal):
    pt = state_from_tv(ideal, 2.0, 1.0)
    metric_close(metric_from_hessian(ideal, pt, step=1e-4),
                 energy_metric(ideal, pt), 1e-6)


def test_hessian_second_order_convergence(ideal):
    # away from the roundoff floor the central stencil error drops ~4x per halving
    pt = state_from_tv(ideal, 2.0, 1.0)
    exact = energy_metric(ideal, pt)

    def err(step):
        h = metric_from_hessian(ideal, pt, step=step)
        return (abs(h.g11 - exact.g11) + abs(h.g12 - exact.g12)
                + abs(h.g22 - exact.g22))

    ratio = err(2e-2) / err(1e-2)
    assert 3.2 < ratio < 4.8


def test_hessian_bilinear_exact(linear_sv_bilinear):
    h = metric_from_hessian(linear_sv_bilinear, StatePoint.energy(0.7, 1.9), step=1e-3)
    assert abs(h.g11) < 1e-10
    assert abs(h.g12 - 1.0) < 1e-10
    assert abs(h.g22) < 1e-10


# ---------------------------------------------------------------------------
# determinants and the T^4 identity
# ---------------------------------------------------------------------------

def test_det_hand_values(ideal):
    # T=2, v=1: det_u = T p/(v c_v) = 8/3, det_s = R/(c_v T^2 v^2) = 1/6
    pt = state_from_tv(ideal, 2.0, 1.0)
    assert rel(det_energy(ideal, pt), 8.0 / 3.0) < 1e-12
    assert rel(det_entropy(ideal, pt), 1.0 / 6.0) < 1e-12


def test_det_zero_at_critical(vdw):
    pt = state_from_tv(vdw, 1.0, 1.0)
    assert abs(det_energy(vdw, pt)) < 1e-8
    assert abs(det_entropy(vdw, pt)) < 1e-8


@pytest.mark.parametrize("name", ["ideal", "quasi_ideal", "van_der_waals"])
def test_det_matches_metric_determinant(gas_models, rng, name):
    model = gas_models[name]
    for pt in sample_states(model, 50, rng):
        g = energy_metric(model, pt)
        assert rel(g.det, det_energy(model, pt)) < 1e-10
        pt_s = convert_state(model, pt, Rep.ENTROPY)
        gs = entropy_metric(model, pt_s)
        assert rel(gs.det, det_entropy(model, pt_s)) < 1e-10


def test_t4_hand_values(ideal, vdw):
    pt = state_from_tv(ideal, 2.0, 1.0)
    assert abs(t4_residual(ideal, pt)) < 1e-14  # 8/3 - 16/6
    crit = state_from_tv(vdw, 1.0, 1.0)
    assert abs(t4_residual(vdw, crit)) < 1e-14


@pytest.mark.parametrize("name", ["ideal", "quasi_ideal", "van_der_waals"])
def test_t4_identity_sweep(gas_models, rng, name):
    model = gas_models[name]
    for pt in sample_states(model, 1000, rng):
        det_u = det_energy(model, pt)
        assert abs(t4_residual(model, pt)) <= 1e-10 * max(1.0, det_u)


def test_t4_linear(linear_sv_curved):
    pt = StatePoint.energy(0.8, 1.2)
    det_u = abs(det_energy(linear_sv_curved, pt))
    assert abs(t4_residual(linear_sv_curved, pt)) <= 1e-10 * max(1.0, det_u)


def test_sign_structure(ideal, quasi, rng):
    for model in (ideal, quasi):
        for pt in sample_states(model, 50, rng):
            assert det_energy(model, pt) > 0.0
            assert energy_metric(model, pt).g11 > 0.0


# ---------------------------------------------------------------------------
# degeneracy scan
# ---------------------------------------------------------------------------

def test_scan_critical_isotherm_single_root(vdw):
    report = degeneracy_scan(vdw, 1.0, 0.5, 3.0, tol=1e-8)
    assert len(report.roots) == 1
    assert abs(report.roots[0] - 1.0) < 1e-4  # tangential root of 4Tv^3=(3v-1)^2
    assert report.residuals[0] <= 1e-8


def test_scan_supercritical_no_roots(vdw):
    report = degeneracy_scan(vdw, 1.2, 0.5, 3.0, tol=1e-8)
    assert report.roots == ()
    # dense-sampling oracle: det stays positive on the supercritical isotherm
    assert all(det_energy(vdw, state_from_tv(vdw, 1.2, v)) > 0
               for v in [0.5 + 2.5 * k / 2000 for k in range(2001)])


def test_scan_ideal_no_roots(ideal):
    assert degeneracy_scan(ideal, 2.0, 0.5, 5.0, tol=1e-8).roots == ()


def test_scan_subcritical_two_roots(vdw):
    report = degeneracy_scan(vdw, 0.9, 0.5, 3.0, tol=1e-8)
    assert len(report.roots) == 2
    assert report.roots[0] < 1.0 < report.roots[1]
    assert list(report.roots) == sorted(report.roots)
    assert all(r <= 1e-8 for r in report.residuals)
    assert len(report.brackets) == 2
    for (lo, hi), root in zip(report.brackets, report.roots):
        assert lo <= root <= hi


def test_scan_root_pair_merges_toward_critical(vdw):
    gaps = []
    for T in (0.85, 0.95, 0.99):
        report = degeneracy_scan(vdw, T, 0.5, 3.0, tol=1e-10)
        assert len(report.roots) == 2
        assert report.roots[0] < 1.0 < report.roots[1]
        gaps.append(report.roots[1] - report.roots[0])
    assert gaps[0] > gaps[1] > gaps[2]


def test_scan_argument_guards(vdw):
    with pytest.raises(Exception):
        degeneracy_scan(vdw, 1.0, 0.2, 3.0)  # v_lo inside covolume
    with pytest.raises(ValueError):
        degeneracy_scan(vdw, 1.0, 0.5, 0.4)
    with pytest.raises(ValueError):
        degeneracy_scan(vdw, 1.0, 0.5, 3.0, tol=-1.0)


# ---------------------------------------------------------------------------
# tensor type
# ---------------------------------------------------------------------------

def test_metric_tensor_definiteness():
    assert MetricTensor2(Rep.ENERGY, 1.0, 0.0, 1.0).definiteness() == "positive_definite"
    assert MetricTensor2(Rep.ENERGY, 1.0, 1.0, 1.0).definiteness() == "positive_semidefinite"
    assert MetricTensor2(Rep.ENERGY, 1.0, 2.0, 1.0).definiteness() == "indefinite"
    assert MetricTensor2(Rep.ENERGY, -1.0, 0.0, -2.0).definiteness() == "negative_definite"


def test_metric_tensor_quadratic_form():
    g = MetricTensor2(Rep.ENERGY, 2.0, 1.0, 3.0)
    assert g.quadratic_form(1.0, 2.0) == 2.0 + 4.0 + 12.0
    assert g.det == 5.0
