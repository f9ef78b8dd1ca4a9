"""Sound speeds from compressibilities and metric determinants.

The isothermal speed is nu_i = sqrt(1/(kappa_T*rho)), computed here through
the determinant route nu_i = sqrt(v*c_v*det_u/(T*rho)), which is finite
everywhere and vanishes with the determinant; the adiabatic speed is
nu_a = sqrt(c_p/c_v) * nu_i = sqrt(v*c_p*det_u/(T*rho)).  At a degenerate
state (det = 0) both speeds are reported as zero; note this is the
convention of the determinant formulas, where the whole acoustic scale
collapses with the metric, rather than the kappa_S limit.

rho is the mass density molar_mass/v; molar_mass defaults to 1 so reduced-
unit configurations work out of the box.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .eos import ModelConfig, Rep, StatePoint, material_at, pressure_derivatives
from .errors import NonPhysicalState
from .metric import det_energy_with_scale

# determinants within this many units of the cancellation scale count as zero
_DEGENERACY_EPS = 1e-12


@dataclass(frozen=True)
class SoundSpeeds:
    """Isothermal and adiabatic sound speeds with the mass density used."""

    nu_isothermal: float
    nu_adiabatic: float
    rho: float


def sound_speeds(model: ModelConfig, point: StatePoint) -> SoundSpeeds:
    """Sound speeds at a state; both are zero where the metrics degenerate."""
    v = point.v
    rho = model.molar_mass / v
    det_u, scale = det_energy_with_scale(model, point)
    T = pressure_derivatives(model, point)[0]
    if det_u <= _DEGENERACY_EPS * scale:
        if det_u < -_DEGENERACY_EPS * scale:
            raise NonPhysicalState(
                f"det_u = {det_u} < 0: unstable state, sound speed undefined")
        return SoundSpeeds(0.0, 0.0, rho)
    m = material_at(model, point)
    nu_i = math.sqrt(v * m.c_v * det_u / (T * rho))
    nu_a = math.sqrt(m.c_p / m.c_v) * nu_i
    return SoundSpeeds(nu_i, nu_a, rho)


def length_via_sound(model: ModelConfig, point: StatePoint, rep: Rep,
                     direction: str) -> float:
    """Length density expressed through sound speed.

    Energy representation: dL/dv = nu_a*sqrt(rho/v) and
    dL/ds = nu_i*sqrt(T*kappa_T*rho/c_v); entropy representation:
    dL/dv = nu_i*sqrt(rho/(T*v)*(1 + v*kappa_T*(T*(dp/dT)_v - p)**2/(T*c_v)))
    and dL/du = nu_i*sqrt(rho*kappa_T/(T**2*c_v)).

    Equals pathlen.length_density at non-degenerate states.  The v-direction
    form uses only nu_a and rho, so it reports zero at degenerate states
    along with the sound speed; the s/u directions need kappa_T and raise
    DegenerateState there.
    """
    rep = Rep(rep)
    if point.rep is not rep:
        raise ValueError("state point representation must match the requested rep")
    first = "s" if rep is Rep.ENERGY else "u"
    if direction not in (first, "v"):
        raise ValueError(f"direction must be {first!r} or 'v'")
    v = point.v
    speeds = sound_speeds(model, point)
    if rep is Rep.ENERGY:
        if direction == "v":
            return speeds.nu_adiabatic * math.sqrt(speeds.rho / v)
        m = material_at(model, point)
        return speeds.nu_isothermal * math.sqrt(m.T * m.kappa_T * speeds.rho / m.c_v)
    m = material_at(model, point)
    T, _, p_T, _ = pressure_derivatives(model, point)
    if direction == "v":
        d = T * p_T - m.p
        bracket = 1.0 + v * m.kappa_T * d * d / (T * m.c_v)
        return speeds.nu_isothermal * math.sqrt(speeds.rho / (T * v) * bracket)
    return speeds.nu_isothermal * math.sqrt(speeds.rho * m.kappa_T / (T * T * m.c_v))
