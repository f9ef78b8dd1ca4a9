"""Energy (Weinhold) and entropy (Ruppeiner) metric tensors.

The energy metric is the Hessian of u(s, v); in material functions

    g11 = T/c_v,  g12 = -T*alpha/(kappa_T*c_v),  g22 = c_p/(v*kappa_T*c_v).

The entropy metric is minus the Hessian of s(u, v); with the shorthand
D = (T*alpha - kappa_T*p)/kappa_T = T*(dp/dT)_v - p,

    g11 = 1/(c_v*T**2),  g12 = -D/(c_v*T**2),
    g22 = (D**2 - c_v*T*(dp/dv)_T)/(c_v*T**2).

(The sign convention follows entropy maximization: the metric is minus the
entropy Hessian, so it is positive semidefinite at stable states.)

Both determinants reduce to multiples of (dp/dv)_T,

    det_u = -(T/c_v)*(dp/dv)_T,      det_s = -(dp/dv)_T/(c_v*T**3),

which keeps them finite, and exactly zero, on the spinodal where kappa_T
diverges, and makes det_u = T**4 * det_s an identity.  The det = 0 locus is
the degeneracy proxy reported by degeneracy_scan (no curvature tensor is
computed here).
"""
from __future__ import annotations

from dataclasses import dataclass

from .eos import (
    GAS_FAMILIES,
    ModelConfig,
    Rep,
    StatePoint,
    convert_state,
    energy_hessian,
    fundamental_energy,
    fundamental_entropy,
    material_at,
    pressure_derivatives,
    pressure_dv_with_scale,
    state_from_tv,
)
from .errors import NonPhysicalState

# classification slack for definiteness, relative to the largest entry
_DEFINITENESS_RTOL = 1e-12


@dataclass(frozen=True)
class MetricTensor2:
    """Symmetric 2x2 metric with a representation tag (g21 = g12 implied)."""

    rep: Rep
    g11: float
    g12: float
    g22: float

    @property
    def det(self) -> float:
        return self.g11 * self.g22 - self.g12 * self.g12

    def definiteness(self) -> str:
        """Classify the quadratic form: positive_definite, positive_semidefinite,
        indefinite, negative_semidefinite or negative_definite."""
        scale = max(abs(self.g11), abs(self.g12), abs(self.g22), 1e-300)
        tol_d = _DEFINITENESS_RTOL * scale * scale
        tol_t = _DEFINITENESS_RTOL * scale
        det = self.det
        trace = self.g11 + self.g22
        if det > tol_d:
            return "positive_definite" if trace > 0 else "negative_definite"
        if det < -tol_d:
            return "indefinite"
        if trace > tol_t:
            return "positive_semidefinite"
        if trace < -tol_t:
            return "negative_semidefinite"
        return "positive_semidefinite"  # zero matrix counts as degenerate psd

    def quadratic_form(self, dx1: float, dx2: float) -> float:
        return self.g11 * dx1 * dx1 + 2.0 * self.g12 * dx1 * dx2 + self.g22 * dx2 * dx2


@dataclass(frozen=True)
class DegeneracyReport:
    """Zeros of det_u along one isotherm: roots, the intervals that produced
    them, and |det| at each reported root."""

    T: float
    roots: tuple[float, ...]
    brackets: tuple[tuple[float, float], ...]
    residuals: tuple[float, ...]


def energy_metric(model: ModelConfig, point: StatePoint) -> MetricTensor2:
    """Energy metric at an energy-representation state point."""
    if point.rep is not Rep.ENERGY:
        raise ValueError("energy_metric requires an energy-representation point; "
                         "use convert_state first")
    if model.family in GAS_FAMILIES:
        m = material_at(model, point)  # raises DegenerateState on the spinodal
        g11 = m.T / m.c_v
        g12 = -m.T * m.alpha / (m.kappa_T * m.c_v)
        g22 = m.c_p / (point.v * m.kappa_T * m.c_v)
        return MetricTensor2(Rep.ENERGY, g11, g12, g22)
    _, _, u_ss, u_sv, u_vv = energy_hessian(model, point)
    return MetricTensor2(Rep.ENERGY, u_ss, u_sv, u_vv)


def entropy_metric(model: ModelConfig, point: StatePoint) -> MetricTensor2:
    """Entropy metric (minus the s-Hessian) at an entropy-representation point."""
    if point.rep is not Rep.ENTROPY:
        raise ValueError("entropy_metric requires an entropy-representation point; "
                         "use convert_state first")
    if model.family in GAS_FAMILIES:
        m = material_at(model, point)
        T = m.T
        p_T, p_v = pressure_derivatives(model, point)[2:]
        pref = 1.0 / (m.c_v * T * T)
        d = T * p_T - m.p  # = (T*alpha - kappa_T*p)/kappa_T, finite everywhere
        g22 = pref * (d * d - m.c_v * T * p_v)
        return MetricTensor2(Rep.ENTROPY, pref, -pref * d, g22)
    sf = fundamental_entropy(model, point.x1, point.x2)
    return MetricTensor2(Rep.ENTROPY, -sf.s_uu, -sf.s_uv, -sf.s_vv)


def metric_from_hessian(model: ModelConfig, point: StatePoint,
                        step: float = 1e-4) -> MetricTensor2:
    """Independent oracle: central second differences of the fundamental
    relation (u in the energy rep, -s in the entropy rep).

    step is relative; the stencil spacing in each coordinate is
    step * max(1, |x|).
    """
    if step <= 0:
        raise ValueError("step must be positive")
    if point.rep is Rep.ENERGY:
        def f(x1, x2):
            return fundamental_energy(model, x1, x2).u
    else:
        def f(x1, x2):
            return -fundamental_entropy(model, x1, x2).s
    x1, x2 = point.x1, point.x2
    h1 = step * max(1.0, abs(x1))
    h2 = step * max(1.0, abs(x2))
    f00 = f(x1, x2)
    f11 = (f(x1 + h1, x2) - 2.0 * f00 + f(x1 - h1, x2)) / (h1 * h1)
    f22 = (f(x1, x2 + h2) - 2.0 * f00 + f(x1, x2 - h2)) / (h2 * h2)
    f12 = (f(x1 + h1, x2 + h2) - f(x1 + h1, x2 - h2)
           - f(x1 - h1, x2 + h2) + f(x1 - h1, x2 - h2)) / (4.0 * h1 * h2)
    return MetricTensor2(point.rep, f11, f12, f22)


def det_energy(model: ModelConfig, point: StatePoint) -> float:
    """det of the energy metric, computed from (dp/dv)_T so it is finite and
    zero (to rounding) at degenerate states."""
    return det_energy_with_scale(model, point)[0]


def det_energy_with_scale(model: ModelConfig, point: StatePoint) -> tuple[float, float]:
    """(det_u, scale): scale is the sum of the magnitudes of the cancelling
    terms, the yardstick for deciding whether a tiny det is rounding noise."""
    if model.family in GAS_FAMILIES:
        T = pressure_derivatives(model, point)[0]
        p_v, p_v_scale = pressure_dv_with_scale(model, point)
        return -(T / model.c_v) * p_v, (T / model.c_v) * p_v_scale
    _, _, u_ss, u_sv, u_vv = energy_hessian(model, point)
    return u_ss * u_vv - u_sv * u_sv, abs(u_ss * u_vv) + u_sv * u_sv


def det_entropy(model: ModelConfig, point: StatePoint) -> float:
    """det of the entropy metric from (dp/dv)_T; zero at degenerate states."""
    T, _, _, p_v = pressure_derivatives(model, point)
    if model.family in GAS_FAMILIES:
        return -p_v / (model.c_v * T * T * T)
    sf = fundamental_entropy(model, *_entropy_coords(model, point))
    return sf.s_uu * sf.s_vv - sf.s_uv * sf.s_uv


def _entropy_coords(model, point):
    q = convert_state(model, point, Rep.ENTROPY)
    return q.x1, q.x2


def t4_residual(model: ModelConfig, point: StatePoint) -> float:
    """det_u - T**4 * det_s; vanishes identically for every model."""
    T = pressure_derivatives(model, point)[0]
    return det_energy(model, point) - T ** 4 * det_entropy(model, point)


def degeneracy_scan(model: ModelConfig, T: float, v_lo: float, v_hi: float,
                    tol: float = 1e-9, cells: int = 512) -> DegeneracyReport:
    """Locate zeros of det_u(T, .) on [v_lo, v_hi].

    Sign changes on a uniform grid are refined by bisection; positive-side
    tangential touches (local minima of det that reach zero without a sign
    change, as on the critical isotherm) are refined by golden-section
    minimization and accepted when |det| at the minimizer is within tol.
    An empty root list is a valid result, not an error.
    """
    if not v_lo > model.b:
        raise NonPhysicalState(f"v_lo = {v_lo} must exceed b = {model.b}")
    if not v_hi > v_lo:
        raise ValueError("v_hi must exceed v_lo")
    if not tol > 0:
        raise ValueError("tol must be positive")
    if cells < 2:
        raise ValueError("cells must be at least 2")

    def det(v: float) -> float:
        return det_energy(model, state_from_tv(model, T, v))

    xs = [v_lo + (v_hi - v_lo) * i / cells for i in range(cells + 1)]
    xs[-1] = v_hi
    fs = [det(x) for x in xs]

    found: list[tuple[float, float, tuple[float, float]]] = []  # (root, resid, bracket)

    def add_bisection(lo, hi, flo, fhi):
        root, resid = _bisect(det, lo, hi, flo, fhi, tol)
        found.append((root, resid, (lo, hi)))

    for i in range(cells):
        if fs[i] == 0.0:
            found.append((xs[i], 0.0, (xs[i], xs[i])))
        elif fs[i] * fs[i + 1] < 0.0:
            add_bisection(xs[i], xs[i + 1], fs[i], fs[i + 1])
    if fs[-1] == 0.0:
        found.append((xs[-1], 0.0, (xs[-1], xs[-1])))

    # tangential candidates: strict interior minima with positive neighbors
    for i in range(1, cells):
        if fs[i] > 0.0 and fs[i - 1] > fs[i] and fs[i] < fs[i + 1]:
            lo, hi = xs[i - 1], xs[i + 1]
            vmin, fmin = _golden_min(det, lo, hi, min(tol, (hi - lo) * 1e-12))
            if -tol <= fmin <= tol:
                found.append((vmin, abs(fmin), (lo, hi)))
            elif fmin < -tol:
                # the grid skipped a dip below zero: two roots inside
                flo, fhi = det(lo), det(hi)
                add_bisection(lo, vmin, flo, fmin)
                add_bisection(vmin, hi, fmin, fhi)

    found.sort(key=lambda item: item[0])
    merged: list[tuple[float, float, tuple[float, float]]] = []
    for item in found:
        if merged and abs(item[0] - merged[-1][0]) <= tol:
            if item[1] < merged[-1][1]:
                merged[-1] = item
            continue
        merged.append(item)

    return DegeneracyReport(
        T=T,
        roots=tuple(r for r, _, _ in merged),
        brackets=tuple(br for _, _, br in merged),
        residuals=tuple(res for _, res, _ in merged),
    )


def _bisect(f, lo, hi, flo, fhi, tol, max_iter=200):
    """Bisection to interval width <= tol, then keep halving (bounded) until
    the residual also drops within tol."""
    for it in range(max_iter):
        mid = 0.5 * (lo + hi)
        fmid = f(mid)
        if fmid == 0.0:
            return mid, 0.0
        if flo * fmid < 0.0:
            hi, fhi = mid, fmid
        else:
            lo, flo = mid, fmid
        if hi - lo <= tol and min(abs(flo), abs(fhi)) <= tol:
            break
        if hi - lo <= 1e-16 * max(1.0, abs(lo)):
            break
    return (lo, abs(flo)) if abs(flo) <= abs(fhi) else (hi, abs(fhi))


def _golden_min(f, lo, hi, xtol, max_iter=200):
    """Golden-section minimization; deterministic, derivative-free."""
    invphi = 0.6180339887498949
    x1 = hi - invphi * (hi - lo)
    x2 = lo + invphi * (hi - lo)
    f1, f2 = f(x1), f(x2)
    for _ in range(max_iter):
        if hi - lo <= xtol:
            break
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - invphi * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + invphi * (hi - lo)
            f2 = f(x2)
    xm = 0.5 * (lo + hi)
    return xm, f(xm)
