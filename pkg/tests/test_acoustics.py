import math

import pytest

from thermolen import (
    DegenerateState,
    ModelConfig,
    NonPhysicalState,
    Rep,
    StatePoint,
    convert_state,
    length_density,
    length_via_sound,
    material_at,
    sound_speeds,
    state_from_tv,
)
from thermolen.metric import det_energy, det_entropy
from thermolen.validate import sample_states


def rel(a, b):
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


def test_ideal_spot_values(ideal):
    # R=1, c_v=3/2, molar_mass=1, T=2, v=1: kappa_T = 1/2, rho = 1, gamma = 5/3
    pt = state_from_tv(ideal, 2.0, 1.0)
    speeds = sound_speeds(ideal, pt)
    assert rel(speeds.nu_isothermal, math.sqrt(2.0)) < 1e-12
    assert rel(speeds.nu_adiabatic, math.sqrt(10.0 / 3.0)) < 1e-12
    assert speeds.rho == 1.0


def test_vdw_critical_speeds_vanish(vdw):
    speeds = sound_speeds(vdw, state_from_tv(vdw, 1.0, 1.0))
    assert speeds.nu_isothermal == 0.0
    assert speeds.nu_adiabatic == 0.0


def test_unstable_state_rejected(vdw):
    # inside the spinodal det_u < 0 and the sound speed is imaginary
    with pytest.raises(NonPhysicalState):
        sound_speeds(vdw, state_from_tv(vdw, 0.85, 1.0))


@pytest.mark.parametrize("name", ["ideal", "quasi_ideal", "van_der_waals"])
def test_route_agreement(gas_models, rng, name):
    # compressibility route equals both determinant routes
    model = gas_models[name]
    for pt in sample_states(model, 100, rng):
        m = material_at(model, pt)
        speeds = sound_speeds(model, pt)
        rho = speeds.rho
        via_kappa = math.sqrt(1.0 / (m.kappa_T * rho))
        via_det_u = math.sqrt(pt.v * m.c_v * det_energy(model, pt) / (m.T * rho))
        via_det_s = math.sqrt(pt.v * m.c_v * m.T ** 3 * det_entropy(model, pt) / rho)
        assert rel(speeds.nu_isothermal, via_kappa) < 1e-12
        assert rel(speeds.nu_isothermal, via_det_u) < 1e-12
        assert rel(speeds.nu_isothermal, via_det_s) < 1e-12


@pytest.mark.parametrize("name", ["ideal", "quasi_ideal", "van_der_waals"])
def test_ratio_identity(gas_models, rng, name):
    model = gas_models[name]
    for pt in sample_states(model, 100, rng):
        m = material_at(model, pt)
        speeds = sound_speeds(model, pt)
        assert rel(speeds.nu_adiabatic / speeds.nu_isothermal,
                   math.sqrt(m.c_p / m.c_v)) < 1e-12


def test_monotone_collapse_on_critical_isotherm(vdw):
    def nu(v):
        return sound_speeds(vdw, state_from_tv(vdw, 1.0, v)).nu_isothermal

    assert nu(1.01) < nu(1.5)
    assert nu(1.001) < nu(1.01)
    assert nu(1.001) < 0.15  # collapsing toward zero


def test_molar_mass_scaling(ideal):
    heavy = ModelConfig(family="ideal", R=1.0, c_v=1.5, molar_mass=4.0)
    pt = state_from_tv(ideal, 2.0, 1.0)
    light = sound_speeds(ideal, pt)
    dense = sound_speeds(heavy, state_from_tv(heavy, 2.0, 1.0))
    assert rel(dense.nu_isothermal, light.nu_isothermal / 2.0) < 1e-12
    assert dense.rho == 4.0


# ---------------------------------------------------------------------------
# length density through sound speed
# ---------------------------------------------------------------------------

def test_length_via_sound_ideal_spot(ideal):
    pt = state_from_tv(ideal, 2.0, 1.0)
    # direction v: nu_a sqrt(rho/v) = sqrt(10/3); direction s: sqrt(T/c_v)
    assert rel(length_via_sound(ideal, pt, Rep.ENERGY, "v"),
               math.sqrt(10.0 / 3.0)) < 1e-12
    assert rel(length_via_sound(ideal, pt, Rep.ENERGY, "s"),
               math.sqrt(4.0 / 3.0)) < 1e-12


@pytest.mark.parametrize("name", ["ideal", "quasi_ideal", "van_der_waals"])
def test_length_via_sound_matches_density(gas_models, rng, name):
    model = gas_models[name]
    for pt in sample_states(model, 40, rng):
        for direction in ("s", "v"):
            assert rel(length_via_sound(model, pt, Rep.ENERGY, direction),
                       length_density(model, Rep.ENERGY, pt, direction)) < 1e-12
        pt_s = convert_state(model, pt, Rep.ENTROPY)
        for direction in ("u", "v"):
            assert rel(length_via_sound(model, pt_s, Rep.ENTROPY, direction),
                       length_density(model, Rep.ENTROPY, pt_s, direction)) < 1e-12


def test_length_via_sound_degenerate_v_direction(vdw):
    # at the critical point the nu_a form reports zero with the sound speed
    pt = state_from_tv(vdw, 1.0, 1.0)
    assert length_via_sound(vdw, pt, Rep.ENERGY, "v") == 0.0
    # the s-direction form needs kappa_T and must signal the degeneracy
    with pytest.raises(DegenerateState):
        length_via_sound(vdw, pt, Rep.ENERGY, "s")


def test_length_via_sound_validation(ideal):
    pt = state_from_tv(ideal, 2.0, 1.0)
    with pytest.raises(ValueError):
        length_via_sound(ideal, pt, Rep.ENTROPY, "v")  # rep mismatch
    with pytest.raises(ValueError):
        length_via_sound(ideal, pt, Rep.ENERGY, "u")
