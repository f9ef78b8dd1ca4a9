import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from thermolen import (
    ConfigError,
    DegenerateState,
    LinearCoeffs,
    ModelConfig,
    NonPhysicalState,
    Reference,
    Rep,
    StatePoint,
    convert_state,
    fundamental_energy,
    fundamental_entropy,
    material_at,
    pressure,
    state_from_tv,
    temperature,
)
from thermolen.validate import sample_states


def rel(a, b):
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


# ---------------------------------------------------------------------------
# material_at
# ---------------------------------------------------------------------------

def test_material_ideal_hand_values(ideal):
    # T=2, v=1: p = RT/v = 2, c_p = c_v + R = 5/2, alpha = 1/T, kappa_T = 1/p,
    # kappa_S = (c_v/c_p) kappa_T = 3/10
    pt = state_from_tv(ideal, 2.0, 1.0)
    m = material_at(ideal, pt)
    assert rel(m.T, 2.0) < 1e-12
    assert rel(m.p, 2.0) < 1e-12
    assert rel(m.c_p, 2.5) < 1e-12
    assert rel(m.alpha, 0.5) < 1e-12
    assert rel(m.kappa_T, 0.5) < 1e-12
    assert rel(m.kappa_S, 0.3) < 1e-12


def test_quasi_ideal_b_zero_matches_ideal(ideal):
    quasi0 = ModelConfig(family="quasi_ideal", R=1.0, c_v=1.5, b=0.0)
    for T, v in ((0.7, 0.4), (2.0, 1.0), (3.5, 4.2)):
        a = material_at(ideal, state_from_tv(ideal, T, v))
        b = material_at(quasi0, state_from_tv(quasi0, T, v))
        assert a == b  # bit-identical: same closed forms with b = 0


def test_vdw_critical_point_is_degenerate(vdw):
    # reduced units: -24T/(3v-1)**2 + 6/v**3 = 0 at (T, v) = (1, 1)
    pt = state_from_tv(vdw, 1.0, 1.0)
    with pytest.raises(DegenerateState):
        material_at(vdw, pt)


def test_material_ideal_exact_identities(ideal, rng):
    for pt in sample_states(ideal, 50, rng):
        m = material_at(ideal, pt)
        assert abs(m.alpha * m.T - 1.0) < 1e-12
        assert abs(m.kappa_T * m.p - 1.0) < 1e-12


@settings(max_examples=60, deadline=None)
@given(T=st.floats(0.2, 5.0), v=st.floats(0.45, 6.0))
def test_quasi_ideal_material_invariants(T, v):
    model = ModelConfig(family="quasi_ideal", R=1.0, c_v=1.5, b=0.1)
    m = material_at(model, state_from_tv(model, T, v))
    assert m.T > 0
    assert rel(m.c_p, m.c_v + model.R) < 1e-12
    assert rel(m.kappa_S, (m.c_v / m.c_p) * m.kappa_T) < 1e-12


@pytest.mark.parametrize("name", ["ideal", "quasi_ideal", "van_der_waals"])
def test_cp_cv_identity(gas_models, rng, name):
    # c_p - c_v = T v alpha**2 / kappa_T at non-degenerate states
    model = gas_models[name]
    for pt in sample_states(model, 100, rng):
        m = material_at(model, pt)
        ident = m.T * pt.v * m.alpha * m.alpha / m.kappa_T
        assert rel(m.c_p - m.c_v, ident) < 1e-10


def test_material_linear_sv_has_zero_cp(linear_sv_curved):
    # u linear in v forces c_p = v*kappa_T*c_v*u_vv = 0: the v-direction is
    # isotropic and kappa_S is undefined, which material_at reports
    with pytest.raises(DegenerateState, match="c_p"):
        material_at(linear_sv_curved, StatePoint.energy(0.8, 1.2))


def test_material_bilinear_degenerate(linear_sv_bilinear):
    with pytest.raises(DegenerateState):
        material_at(linear_sv_bilinear, StatePoint.energy(1.0, 2.0))


# ---------------------------------------------------------------------------
# pressure
# ---------------------------------------------------------------------------

def test_pressure_values(ideal, quasi, vdw):
    assert pressure(ideal, 2.0, 1.0) == 2.0
    assert rel(pressure(quasi, 2.0, 1.0), 2.0 / 0.9) < 1e-12
    assert rel(pressure(vdw, 1.0, 1.0), 1.0) < 1e-12  # 8/(3*1-1) - 3 = 1


def test_pressure_domain_guard(quasi):
    with pytest.raises(NonPhysicalState):
        pressure(quasi, 1.0, 0.1)
    with pytest.raises(NonPhysicalState):
        pressure(quasi, -1.0, 1.0)


def test_pressure_linear_families(linear_sv_curved, linear_uv):
    # linear_sv: T = 0.4 s v + 1 + 0.6 s, p = -(0.5 + 0.2 s**2)
    s, v = 0.8, 1.2
    T = 0.4 * s * v + 1.0 + 0.6 * s
    p = pressure(linear_sv_curved, T, v)
    assert rel(p, -(0.5 + 0.2 * s * s)) < 1e-12
    # linear_uv: 1/T = -0.04 u v + 0.5, p = T*(0.1 - 0.02 u**2)
    u, v = 1.0, 1.5
    T = 1.0 / (0.5 - 0.04 * u * v)
    p = pressure(linear_uv, T, v)
    assert rel(p, T * (0.1 - 0.02 * u * u)) < 1e-12


# ---------------------------------------------------------------------------
# fundamental relations
# ---------------------------------------------------------------------------

def test_fundamental_uss_is_t_over_cv():
    model = ModelConfig(family="ideal", R=1.0, c_v=1.5)  # T(0, 1) = T_ref = 1
    f = fundamental_energy(model, 0.0, 1.0)
    assert rel(f.u_ss, 1.0 / 1.5) < 1e-12


def _fd_second(f, x, y, hx, hy):
    f00 = f(x, y)
    fxx = (f(x + hx, y) - 2 * f00 + f(x - hx, y)) / hx ** 2
    fyy = (f(x, y + hy) - 2 * f00 + f(x, y - hy)) / hy ** 2
    fxy = (f(x + hx, y + hy) - f(x + hx, y - hy)
           - f(x - hx, y + hy) + f(x - hx, y - hy)) / (4 * hx * hy)
    return fxx, fxy, fyy


@pytest.mark.parametrize("name", ["ideal", "quasi_ideal", "van_der_waals"])
def test_fundamental_second_partials_vs_fd(gas_models, name):
    model = gas_models[name]
    pt = state_from_tv(model, 1.7, 2.1)
    s, v = pt.x1, pt.x2
    f = fundamental_energy(model, s, v)
    fd = _fd_second(lambda a, b: fundamental_energy(model, a, b).u, s, v, 1e-4, 1e-4)
    for got, want in zip((f.u_ss, f.u_sv, f.u_vv), fd):
        assert rel(got, want) < 1e-6


def test_fundamental_bilinear(linear_sv_bilinear):
    f = fundamental_energy(linear_sv_bilinear, 1.3, 2.0)
    assert f.u == pytest.approx(2.6, rel=1e-14)
    assert f.u_vv == 0.0
    assert f.u_sv == 1.0
    assert f.u_ss == 0.0


@pytest.mark.parametrize("name", ["ideal", "quasi_ideal", "van_der_waals"])
def test_first_partials_match_material(gas_models, name):
    model = gas_models[name]
    for T, v in ((0.9, 0.8), (2.0, 1.0), (3.1, 2.5)):
        pt = state_from_tv(model, T, v)
        f = fundamental_energy(model, pt.x1, pt.x2)
        m = material_at(model, pt)
        assert rel(f.u_s, m.T) < 1e-10
        assert rel(-f.u_v, m.p) < 1e-10
        assert rel(-f.u_v, pressure(model, T, v)) < 1e-10


@pytest.mark.parametrize("name", ["ideal", "quasi_ideal", "van_der_waals"])
def test_maxwell_consistency(gas_models, rng, name):
    # d2u/dsdv analytic vs -(dp/ds)_v by central differences
    model = gas_models[name]
    for pt in sample_states(model, 100, rng):
        s, v = pt.x1, pt.x2
        f = fundamental_energy(model, s, v)
        h = 1e-5 * max(1.0, abs(s))
        p_hi = pressure(model, temperature(model, StatePoint.energy(s + h, v)), v)
        p_lo = pressure(model, temperature(model, StatePoint.energy(s - h, v)), v)
        assert rel(f.u_sv, -(p_hi - p_lo) / (2 * h)) < 1e-6


def test_entropy_side_partials_match_inverse(vdw):
    # s(u, v) partials vs finite differences of the closed form
    u, v = 2.4, 1.7
    sf = fundamental_entropy(vdw, u, v)
    fd = _fd_second(lambda a, b: fundamental_entropy(vdw, a, b).s, u, v, 1e-4, 1e-4)
    for got, want in zip((sf.s_uu, sf.s_uv, sf.s_vv), fd):
        assert rel(got, want) < 1e-6
    assert rel(sf.s_u, 1.0 / temperature(vdw, StatePoint.entropy(u, v))) < 1e-12


# ---------------------------------------------------------------------------
# convert_state
# ---------------------------------------------------------------------------

def test_convert_caloric_example(ideal):
    # u = c_v T = 3 for T = 2
    pt = state_from_tv(ideal, 2.0, 1.0)
    out = convert_state(ideal, pt, Rep.ENTROPY)
    assert out.rep is Rep.ENTROPY
    assert rel(out.u, 3.0) < 1e-12
    assert out.v == pt.v


def test_convert_identity(ideal):
    pt = StatePoint.energy(0.3, 1.4)
    assert convert_state(ideal, pt, Rep.ENERGY) is pt


@pytest.mark.parametrize("fixture", ["ideal", "quasi", "vdw",
                                     "linear_sv_curved", "linear_uv"])
def test_convert_round_trip(request, fixture):
    model = request.getfixturevalue(fixture)
    if model.family.value.startswith("linear"):
        points = [StatePoint.energy(0.8, 1.2)] if model.family is not None else []
        if model.family.value == "linear_uv":
            points = [convert_state(model, StatePoint.entropy(1.0, 1.5), Rep.ENERGY)]
    else:
        points = [state_from_tv(model, T, v) for T, v in ((0.8, 0.9), (2.3, 3.0))]
    for pt in points:
        back = convert_state(model, convert_state(model, pt, Rep.ENTROPY), Rep.ENERGY)
        assert rel(back.x1, pt.x1) < 1e-12 or abs(back.x1 - pt.x1) < 1e-12
        assert back.x2 == pt.x2


def test_convert_out_of_domain(ideal):
    with pytest.raises(NonPhysicalState):
        convert_state(ideal, StatePoint.entropy(-1.0, 1.0), Rep.ENERGY)


def test_state_point_accessors():
    pt = StatePoint.energy(0.1, 2.0)
    assert pt.s == 0.1 and pt.v == 2.0
    with pytest.raises(ValueError):
        _ = pt.u


# ---------------------------------------------------------------------------
# config validation and JSON
# ---------------------------------------------------------------------------

def test_config_invariants():
    with pytest.raises(ConfigError):
        ModelConfig(family="ideal", R=-1.0, c_v=1.5)
    with pytest.raises(ConfigError):
        ModelConfig(family="ideal", R=1.0, c_v=0.0)
    with pytest.raises(ConfigError):
        ModelConfig(family="ideal", R=1.0, c_v=1.5, b=0.1)  # b needs quasi_ideal
    with pytest.raises(ConfigError):
        ModelConfig(family="quasi_ideal", R=1.0, c_v=1.5, a=1.0)  # a needs vdw
    with pytest.raises(ConfigError):
        ModelConfig(family="linear_sv", R=1.0)  # coefficients required
    with pytest.raises(ConfigError):
        ModelConfig(family="quasi_ideal", R=1.0, c_v=1.5, b=2.0,
                    reference=Reference(v_ref=1.0))  # v_ref inside covolume


def test_json_defaults_and_round_trip(tmp_path):
    doc = {"family": "quasi_ideal", "c_v": 20.0, "b": 0.05}
    model = ModelConfig.from_json_dict(doc)
    assert model.R == pytest.approx(8.314462618)
    assert model.molar_mass == 1.0
    assert model.reference == Reference(0.0, 1.0, 1.0)
    path = tmp_path / "m.json"
    path.write_text(json.dumps(doc))
    assert ModelConfig.from_json_file(path) == model


def test_json_rejects_unknown_keys():
    with pytest.raises(ConfigError, match="unknown config keys"):
        ModelConfig.from_json_dict({"family": "ideal", "c_v": 1.5, "gamma": 1.4})
    with pytest.raises(ConfigError, match="unknown reference keys"):
        ModelConfig.from_json_dict({"family": "ideal", "c_v": 1.5,
                                    "reference": {"u_ref": 1.0}})
    with pytest.raises(ConfigError, match="family"):
        ModelConfig.from_json_dict({"c_v": 1.5})
    with pytest.raises(ConfigError, match="unknown family"):
        ModelConfig.from_json_dict({"family": "peng_robinson", "c_v": 1.5})
    with pytest.raises(ConfigError, match="number"):
        ModelConfig.from_json_dict({"family": "ideal", "c_v": "big"})


def test_json_linear_coeffs():
    model = ModelConfig.from_json_dict({
        "family": "linear_sv",
        "linear_coeffs": {"a_poly": [0.0, 1.0]},
    })
    assert model.linear_coeffs == LinearCoeffs((0.0, 1.0), (0.0,))
    f = fundamental_energy(model, 2.0, 3.0)
    assert f.u == 6.0
