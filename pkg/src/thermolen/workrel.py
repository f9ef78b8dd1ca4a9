"""Isothermal work and the work/length identities for (quasi-)ideal gases.

For pressure laws of the form p = RT/(v - b), the length of an isothermal
expansion is proportional to the work done:

    energy representation:   L = W / sqrt(R*T)
    entropy representation:  L = W / sqrt(R*T**2)

with W = integral p dv.  The isotherm integrand that makes this exact is the
isotherm-specific sqrt(R*T)/(v - b) (the second s-derivative of u with T
held fixed along the process), not the constant-entropy reduced integrand of
a general path; the ratio of the two conventions is sqrt(c_p/c_v) for an
ideal gas and both are reported by the CLI.  Dividing the two identities
gives L_energy/L_entropy = sqrt(T) for the same segment.

The underlying pressure solves (dp/dv) + p**2/(R*T) = 0 along the process
(and p/T solves the entropy-representation analogue with 1/R), which
check_isotherm_pressure_ode verifies pointwise.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .eos import GAS_FAMILIES, Family, ModelConfig, pressure
from .errors import NonPhysicalState, UnsupportedModel
from .pathlen import QuadratureOptions
from .quadrature import adaptive_simpson

_WORK_FAMILIES = (Family.IDEAL, Family.QUASI_IDEAL)


@dataclass(frozen=True)
class IsothermSegment:
    """Isothermal expansion from v1 to v2 (v1 <= v2) at temperature T."""

    T: float
    v1: float
    v2: float

    def __post_init__(self):
        if not self.T > 0:
            raise NonPhysicalState(f"T = {self.T} must be positive")
        if not self.v1 <= self.v2:
            raise ValueError("segment requires v1 <= v2")


@dataclass(frozen=True)
class WorkLengthReport:
    """Isothermal work, the measured length, the work-based prediction and
    their relative residual."""

    work: float
    length: float
    predicted_length: float
    residual: float


def _require_segment(model: ModelConfig, seg: IsothermSegment) -> None:
    if not seg.v1 > model.b:
        raise NonPhysicalState(f"v1 = {seg.v1} must exceed b = {model.b}")


def work_isotherm(model: ModelConfig, seg: IsothermSegment,
                  opts: QuadratureOptions | None = None) -> float:
    """W = integral p(T, v) dv over the segment (closed form: R*T*ln((v2-b)/(v1-b))
    for the ideal and quasi-ideal families)."""
    _require_segment(model, seg)
    opts = opts or QuadratureOptions()
    value, _, _ = adaptive_simpson(lambda v: pressure(model, seg.T, v),
                                   seg.v1, seg.v2, abs_tol=opts.abs_tol,
                                   rel_tol=opts.rel_tol, max_depth=opts.max_depth)
    return value


def _relative_residual(length: float, predicted: float) -> float:
    if predicted == 0.0:
        return 0.0 if length == 0.0 else math.inf
    return abs(length - predicted) / abs(predicted)


def _check_family(model: ModelConfig) -> None:
    if model.family not in _WORK_FAMILIES:
        raise UnsupportedModel(
            "work/length identities require p = RT/(v - b); "
            f"got family {model.family.value}")


def check_work_length_energy(model: ModelConfig, seg: IsothermSegment,
                             opts: QuadratureOptions | None = None) -> WorkLengthReport:
    """Energy-representation identity L = W/sqrt(R*T) along an isotherm.

    The length uses the isotherm integrand sqrt(R*T)/(v - b); valid for the
    ideal and quasi-ideal families only.
    """
    _check_family(model)
    _require_segment(model, seg)
    opts = opts or QuadratureOptions()
    R, b, T = model.R, model.b, seg.T
    root_rt = math.sqrt(R * T)
    value, _, _ = adaptive_simpson(lambda v: root_rt / (v - b), seg.v1, seg.v2,
                                   abs_tol=opts.abs_tol, rel_tol=opts.rel_tol,
                                   max_depth=opts.max_depth)
    work = work_isotherm(model, seg, opts)
    predicted = work / root_rt
    return WorkLengthReport(work, value, predicted, _relative_residual(value, predicted))


def check_work_length_entropy(model: ModelConfig, seg: IsothermSegment,
                              opts: QuadratureOptions | None = None) -> WorkLengthReport:
    """Entropy-representation identity L = W/sqrt(R*T**2) along an isotherm.

    With the caloric equation u = c_v*T, constant u coincides with constant T,
    and the integrand is sqrt(R)/(v - b).
    """
    _check_family(model)
    _require_segment(model, seg)
    opts = opts or QuadratureOptions()
    R, b, T = model.R, model.b, seg.T
    root_r = math.sqrt(R)
    value, _, _ = adaptive_simpson(lambda v: root_r / (v - b), seg.v1, seg.v2,
                                   abs_tol=opts.abs_tol, rel_tol=opts.rel_tol,
                                   max_depth=opts.max_depth)
    work = work_isotherm(model, seg, opts)
    predicted = work / (root_r * T)
    return WorkLengthReport(work, value, predicted, _relative_residual(value, predicted))


def check_isotherm_pressure_ode(model: ModelConfig, T: float,
                                v_lo: float = 0.5, v_hi: float = 5.0, n: int = 101,
                                pressure_fn: Callable[[float], float] | None = None) -> float:
    """Max pointwise residual of the isotherm pressure ODEs on a v-grid.

    Checks dp/dv + p**2/(R*T) = 0 and d(p/T)/dv + (p/T)**2/R = 0 for the
    model's own pressure law (analytic derivative, residual at rounding
    level) or for a supplied pressure_fn (finite-difference derivative), so
    a perturbed pressure is detectably non-solving.
    """
    if model.family not in _WORK_FAMILIES:
        raise UnsupportedModel("the pressure ODE check applies to ideal and "
                               "quasi-ideal families")
    if not T > 0:
        raise NonPhysicalState(f"T = {T} must be positive")
    if not v_lo > model.b or not v_hi > v_lo or n < 1:
        raise ValueError("need b < v_lo < v_hi and n >= 1")
    R, b = model.R, model.b
    worst = 0.0
    for i in range(n):
        v = v_lo if n == 1 else v_lo + (v_hi - v_lo) * i / (n - 1)
        if pressure_fn is None:
            p = R * T / (v - b)
            dp = -R * T / ((v - b) * (v - b))
        else:
            p = pressure_fn(v)
            h = 1e-6 * v
            dp = (pressure_fn(v + h) - pressure_fn(v - h)) / (2.0 * h)
        energy_resid = abs(dp + p * p / (R * T))
        entropy_resid = abs(dp / T + (p / T) ** 2 / R)
        worst = max(worst, energy_resid, entropy_resid)
    return worst
