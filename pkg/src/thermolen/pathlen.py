"""Thermodynamic length along paths in state space, and minimal-length paths.

Length is the Riemannian arc length L = integral sqrt(g_ij dX^i dX^j) in the
chosen representation, evaluated by adaptive Simpson quadrature.  The
constant-coordinate path variants use their reduced integrands directly
(sqrt(g22) dv, sqrt(g11) ds, and the isobaric/isoenergetic analogues);
isotherms resolve to curves (x1(v), v) through the model, where the general
quadratic form collapses to -(dp/dv)_T (dv)^2 in the energy representation
and -(dp/dv)_T/T (dv)^2 in the entropy representation.

Units: energy-representation lengths are sqrt(energy/mol); entropy-
representation lengths are sqrt(entropy/mol).

Near a metric degeneracy the quadratic form can round to a tiny negative
number; values within clamp_eps times the local magnitude scale are clamped
to zero and flagged on the result, anything more negative is an error.

Minimal-length paths are found variationally: a polyline's interior nodes
are optimized by gradient descent with finite-difference gradients and a
backtracking (Armijo) line search.  Only improving steps are accepted, so
the returned length never exceeds the initialization's.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import _forms
from ._codes import (
    KIND_CONST_P,
    KIND_CONST_S,
    KIND_CONST_U,
    KIND_CONST_V,
    KIND_CONST_V_ENTROPY,
    KIND_ISOTHERM_ENERGY,
    KIND_ISOTHERM_ENTROPY,
)
from .backend import kernels
from .eos import (
    Family,
    ModelConfig,
    Rep,
    StatePoint,
    energy_hessian,
    fundamental_entropy,
    pressure_derivatives,
    state_from_tv,
)
from .errors import ConfigError, NegativeQuadraticForm, NonPhysicalState, UnsupportedModel
from .quadrature import adaptive_simpson


@dataclass(frozen=True)
class QuadratureOptions:
    """Error targets and guards for the length quadrature."""

    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_depth: int = 40
    clamp_eps: float = 1e-12

    def __post_init__(self):
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_depth < 1:
            raise ValueError("max_depth must be at least 1")
        if self.clamp_eps < 0:
            raise ValueError("clamp_eps must be nonnegative")


@dataclass(frozen=True)
class LengthResult:
    """Length value with quadrature bookkeeping."""

    length: float
    error_estimate: float
    evaluations: int
    touched_degeneracy: bool


# ---------------------------------------------------------------------------
# path specifications
# ---------------------------------------------------------------------------

def _check_range(rng, name: str) -> tuple[float, float]:
    lo, hi = float(rng[0]), float(rng[1])
    if not lo <= hi:
        raise ConfigError(f"{name} must be ordered (lo <= hi), got {rng}")
    return lo, hi


@dataclass(frozen=True)
class ConstS:
    """Isentrope: s fixed, v sweeps v_range (energy representation)."""

    s: float
    v_range: tuple[float, float]

    rep = Rep.ENERGY

    def __post_init__(self):
        object.__setattr__(self, "v_range", _check_range(self.v_range, "v_range"))


@dataclass(frozen=True)
class ConstV:
    """Isochore: v fixed, s sweeps s_range (energy representation)."""

    v: float
    s_range: tuple[float, float]

    rep = Rep.ENERGY

    def __post_init__(self):
        object.__setattr__(self, "s_range", _check_range(self.s_range, "s_range"))


@dataclass(frozen=True)
class ConstP:
    """Isobar: p fixed, v sweeps v_range (energy representation)."""

    p: float
    v_range: tuple[float, float]

    rep = Rep.ENERGY

    def __post_init__(self):
        object.__setattr__(self, "v_range", _check_range(self.v_range, "v_range"))


@dataclass(frozen=True)
class ConstU:
    """Isoenergetic curve: u fixed, v sweeps v_range (entropy representation)."""

    u: float
    v_range: tuple[float, float]

    rep = Rep.ENTROPY

    def __post_init__(self):
        object.__setattr__(self, "v_range", _check_range(self.v_range, "v_range"))


@dataclass(frozen=True)
class ConstVEntropy:
    """Isochore in the entropy representation: v fixed, u sweeps u_range."""

    v: float
    u_range: tuple[float, float]

    rep = Rep.ENTROPY

    def __post_init__(self):
        object.__setattr__(self, "u_range", _check_range(self.u_range, "u_range"))


@dataclass(frozen=True)
class Isotherm:
    """Isotherm resolved through the model to (x1(v), v) in the chosen rep."""

    T: float
    v_range: tuple[float, float]
    rep: Rep = Rep.ENERGY

    def __post_init__(self):
        object.__setattr__(self, "rep", Rep(self.rep))
        object.__setattr__(self, "v_range", _check_range(self.v_range, "v_range"))


@dataclass(frozen=True)
class Polyline:
    """Straight coordinate segments through ordered nodes (>= 2)."""

    rep: Rep
    nodes: tuple[tuple[float, float], ...]

    def __post_init__(self):
        object.__setattr__(self, "rep", Rep(self.rep))
        nodes = tuple((float(a), float(b)) for a, b in self.nodes)
        if len(nodes) < 2:
            raise ConfigError("polyline needs at least 2 nodes")
        object.__setattr__(self, "nodes", nodes)


@dataclass(frozen=True)
class Parametric:
    """Curve (x1(xi), x2(xi)).

    x1/x2 are either callables over xi in (lo, hi) = xi, or sampled tables
    (sequences) over a strictly increasing xi grid; tables are interpolated
    with cubic splines.  Optional dx1/dx2 callables supply derivatives,
    otherwise second-order finite differences are used.
    """

    rep: Rep
    x1: Callable[[float], float] | Sequence[float]
    x2: Callable[[float], float] | Sequence[float]
    xi: tuple[float, ...]
    dx1: Callable[[float], float] | None = None
    dx2: Callable[[float], float] | None = None

    def __post_init__(self):
        object.__setattr__(self, "rep", Rep(self.rep))
        xi = tuple(float(t) for t in self.xi)
        if len(xi) < 2 or any(b <= a for a, b in zip(xi, xi[1:])):
            raise ConfigError("xi must be strictly increasing with >= 2 entries")
        object.__setattr__(self, "xi", xi)
        if callable(self.x1) != callable(self.x2):
            raise ConfigError("x1 and x2 must both be callables or both tables")
        if not callable(self.x1):
            if len(self.x1) != len(xi) or len(self.x2) != len(xi):
                raise ConfigError("sampled tables must match the xi grid length")
            object.__setattr__(self, "x1", tuple(float(y) for y in self.x1))
            object.__setattr__(self, "x2", tuple(float(y) for y in self.x2))


PathSpec = ConstS | ConstV | ConstP | ConstU | ConstVEntropy | Isotherm | Polyline | Parametric


_VARIANT_NAMES = {
    ConstS: "const_s", ConstV: "const_v", ConstP: "const_p", ConstU: "const_u",
    ConstVEntropy: "const_v_entropy", Isotherm: "isotherm",
    Polyline: "polyline", Parametric: "parametric",
}


def path_from_json_dict(doc: dict) -> PathSpec:
    """Decode the documented PathSpec JSON; unknown keys rejected."""
    if not isinstance(doc, dict) or "variant" not in doc:
        raise ConfigError("path spec must be an object with a 'variant' key")
    variant = doc["variant"]
    spec = {
        "const_s": (ConstS, {"s", "v_range"}),
        "const_v": (ConstV, {"v", "s_range"}),
        "const_p": (ConstP, {"p", "v_range"}),
        "const_u": (ConstU, {"u", "v_range"}),
        "const_v_entropy": (ConstVEntropy, {"v", "u_range"}),
        "isotherm": (Isotherm, {"T", "v_range", "rep"}),
        "polyline": (Polyline, {"rep", "nodes"}),
        "parametric": (Parametric, {"rep", "xi", "x1", "x2"}),
    }.get(variant)
    if spec is None:
        raise ConfigError(f"unknown path variant {variant!r}")
    cls, allowed = spec
    unknown = set(doc) - allowed - {"variant"}
    if unknown:
        raise ConfigError(f"unknown path keys for {variant}: {sorted(unknown)}")
    kwargs = {k: doc[k] for k in doc if k != "variant"}
    try:
        return cls(**kwargs)
    except TypeError as exc:
        raise ConfigError(f"bad path spec for {variant}: {exc}") from None


def path_to_json_dict(path: PathSpec) -> dict:
    """Encode a PathSpec as its documented JSON form (callables rejected)."""
    name = _VARIANT_NAMES[type(path)]
    if isinstance(path, ConstS):
        return {"variant": name, "s": path.s, "v_range": list(path.v_range)}
    if isinstance(path, ConstV):
        return {"variant": name, "v": path.v, "s_range": list(path.s_range)}
    if isinstance(path, ConstP):
        return {"variant": name, "p": path.p, "v_range": list(path.v_range)}
    if isinstance(path, ConstU):
        return {"variant": name, "u": path.u, "v_range": list(path.v_range)}
    if isinstance(path, ConstVEntropy):
        return {"variant": name, "v": path.v, "u_range": list(path.u_range)}
    if isinstance(path, Isotherm):
        return {"variant": name, "T": path.T, "v_range": list(path.v_range),
                "rep": path.rep.value}
    if isinstance(path, Polyline):
        return {"variant": name, "rep": path.rep.value,
                "nodes": [list(n) for n in path.nodes]}
    if callable(path.x1):
        raise ConfigError("parametric paths with callables are not serializable")
    return {"variant": name, "rep": path.rep.value, "xi": list(path.xi),
            "x1": list(path.x1), "x2": list(path.x2)}


# ---------------------------------------------------------------------------
# metric components along paths (finite limit forms; no material-function
# singularities on the spinodal)
# ---------------------------------------------------------------------------

def _metric_components(model: ModelConfig, rep: Rep, x1: float, x2: float):
    """(g11, g12, g22, g22_scale) at a point, via the kernel forms for gas
    families and the fundamental-relation Hessians for linear families."""
    gp = _forms.gas_params(model)
    if gp is not None:
        _, P = gp
        if rep is Rep.ENERGY:
            T = _forms._temperature_sv(P, x1, x2)
            return _forms._energy_g(P, T, x2)
        T = _forms._temperature_uv(P, x1, x2)
        return _forms._entropy_g(P, T, x2)
    if rep is Rep.ENERGY:
        _, _, u_ss, u_sv, u_vv = energy_hessian(model, StatePoint.energy(x1, x2))
        return u_ss, u_sv, u_vv, abs(u_vv)
    sf = fundamental_entropy(model, x1, x2)
    return -sf.s_uu, -sf.s_uv, -sf.s_vv, abs(sf.s_vv)


def _clamped_sqrt(q: float, scale: float, clamp_eps: float, counter: list) -> float:
    if q >= 0.0:
        return math.sqrt(q)
    if q >= -clamp_eps * scale:
        counter[0] += 1
        return 0.0
    raise NegativeQuadraticForm(
        f"quadratic form {q} < 0 beyond clamp (scale {scale}): unstable state on path")


def _generic_atom(model, kind, aux, lo, hi, opts):
    """Pure-Python integrand for one atom; covers the linear families."""
    counter = [0]
    ce = opts.clamp_eps

    if kind in (KIND_ISOTHERM_ENERGY, KIND_ISOTHERM_ENTROPY):
        T0 = aux[0]
        rep = Rep.ENERGY if kind == KIND_ISOTHERM_ENERGY else Rep.ENTROPY

        def integrand(v):
            point = state_from_tv(model, T0, v, rep)
            p_v = pressure_derivatives(model, point)[3]
            q = -p_v if rep is Rep.ENERGY else -p_v / T0
            return _clamped_sqrt(q, abs(q), ce, counter)
    elif kind == KIND_CONST_P:
        raise UnsupportedModel(
            "constant-pressure paths need a closed-form T(p, v); "
            "not available for linear fundamental relations")
    else:
        if kind == KIND_CONST_S:
            def integrand(v):
                _, _, g22, g22s = _metric_components(model, Rep.ENERGY, aux[0], v)
                return _clamped_sqrt(g22, g22s, ce, counter)
        elif kind == KIND_CONST_V:
            def integrand(s):
                g11, _, _, _ = _metric_components(model, Rep.ENERGY, s, aux[0])
                return _clamped_sqrt(g11, abs(g11), ce, counter)
        elif kind == KIND_CONST_U:
            def integrand(v):
                _, _, g22, g22s = _metric_components(model, Rep.ENTROPY, aux[0], v)
                return _clamped_sqrt(g22, g22s, ce, counter)
        elif kind == KIND_CONST_V_ENTROPY:
            def integrand(u):
                g11, _, _, _ = _metric_components(model, Rep.ENTROPY, u, aux[0])
                return _clamped_sqrt(g11, abs(g11), ce, counter)
        else:
            raise ValueError(f"unknown atom kind {kind}")

    value, err, evals = adaptive_simpson(integrand, lo, hi, abs_tol=opts.abs_tol,
                                         rel_tol=opts.rel_tol, max_depth=opts.max_depth)
    return value, err, evals, counter[0]


def _run_atom(model, kind, aux, lo, hi, opts: QuadratureOptions):
    gp = _forms.gas_params(model)
    if gp is not None and kernels.supports(kind, gp[0]):
        return kernels.atom_length(kind, gp[0], gp[1], tuple(aux), lo, hi,
                                   opts.abs_tol, opts.rel_tol, opts.max_depth,
                                   opts.clamp_eps)
    return _generic_atom(model, kind, aux, lo, hi, opts)


def _segment_sum(model, rep: Rep, flat: np.ndarray, opts: QuadratureOptions):
    """Polyline length: kernel for gas families, generic quadrature otherwise."""
    gp = _forms.gas_params(model)
    if gp is not None and kernels.supports(0, gp[0]):
        return kernels.polyline_length(1 if rep is Rep.ENTROPY else 0, gp[0],
                                       gp[1], np.ascontiguousarray(flat, dtype=float),
                                       opts.abs_tol, opts.rel_tol,
                                       opts.max_depth, opts.clamp_eps)
    n_seg = len(flat) // 2 - 1
    if n_seg < 1:
        return 0.0, 0.0, 0, 0
    total = err = 0.0
    evals = clamped = 0
    counter = [0]
    seg_abs = opts.abs_tol / n_seg
    for i in range(n_seg):
        x1a, x2a, x1b, x2b = flat[2 * i:2 * i + 4]
        if x1a == x1b and x2a == x2b:
            continue
        dx1, dx2 = x1b - x1a, x2b - x2a

        def integrand(t, x1a=x1a, x2a=x2a, dx1=dx1, dx2=dx2):
            g11, g12, g22, g22s = _metric_components(model, rep,
                                                     x1a + dx1 * t, x2a + dx2 * t)
            q = g11 * dx1 * dx1 + 2.0 * g12 * dx1 * dx2 + g22 * dx2 * dx2
            scale = (abs(g11) * dx1 * dx1 + 2.0 * abs(g12 * dx1 * dx2)
                     + g22s * dx2 * dx2)
            return _clamped_sqrt(q, scale, opts.clamp_eps, counter)

        v, e, n = adaptive_simpson(integrand, 0.0, 1.0, abs_tol=seg_abs,
                                   rel_tol=opts.rel_tol, max_depth=opts.max_depth)
        total += v
        err += e
        evals += n
    clamped = counter[0]
    return total, err, evals, clamped


def _fd_derivative(fn, t, lo, hi, h):
    """Second-order derivative estimate that never samples outside [lo, hi]."""
    if t - h >= lo and t + h <= hi:
        return (fn(t + h) - fn(t - h)) / (2.0 * h)
    if t + 2.0 * h <= hi:
        return (-3.0 * fn(t) + 4.0 * fn(t + h) - fn(t + 2.0 * h)) / (2.0 * h)
    return (3.0 * fn(t) - 4.0 * fn(t - h) + fn(t - 2.0 * h)) / (2.0 * h)


def _parametric_length(model, path: Parametric, opts: QuadratureOptions):
    lo, hi = path.xi[0], path.xi[-1]
    if callable(path.x1):
        fx1, fx2 = path.x1, path.x2
        if len(path.xi) != 2:
            raise ConfigError("callable parametric paths take xi = (lo, hi)")
    else:
        from scipy.interpolate import CubicSpline

        sp1 = CubicSpline(path.xi, path.x1)
        sp2 = CubicSpline(path.xi, path.x2)
        fx1 = lambda t: float(sp1(t))
        fx2 = lambda t: float(sp2(t))
        d1s, d2s = sp1.derivative(), sp2.derivative()
    h = 1e-6 * (hi - lo)
    counter = [0]

    def integrand(t):
        x1, x2 = fx1(t), fx2(t)
        if callable(path.x1):
            d1 = path.dx1(t) if path.dx1 is not None else _fd_derivative(fx1, t, lo, hi, h)
            d2 = path.dx2(t) if path.dx2 is not None else _fd_derivative(fx2, t, lo, hi, h)
        else:
            d1, d2 = float(d1s(t)), float(d2s(t))
        g11, g12, g22, g22s = _metric_components(model, path.rep, x1, x2)
        q = g11 * d1 * d1 + 2.0 * g12 * d1 * d2 + g22 * d2 * d2
        scale = abs(g11) * d1 * d1 + 2.0 * abs(g12 * d1 * d2) + g22s * d2 * d2
        return _clamped_sqrt(q, scale, opts.clamp_eps, counter)

    value, err, evals = adaptive_simpson(integrand, lo, hi, abs_tol=opts.abs_tol,
                                         rel_tol=opts.rel_tol, max_depth=opts.max_depth)
    return value, err, evals, counter[0]


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def length(model: ModelConfig, metric: Rep, path: PathSpec,
           opts: QuadratureOptions | None = None) -> LengthResult:
    """Thermodynamic length of a path in the requested metric representation.

    The path's representation must match the metric (isotherms adopt the
    requested one at construction).
    """
    opts = opts or QuadratureOptions()
    metric = Rep(metric)
    if path.rep is not metric:
        raise ValueError(f"path is in the {path.rep.value} representation but the "
                         f"{metric.value} metric was requested; convert the path first")

    if isinstance(path, Polyline):
        flat = np.asarray([c for node in path.nodes for c in node], dtype=float)
        total, err, evals, clamped = _segment_sum(model, path.rep, flat, opts)
        return LengthResult(total, err, evals, clamped > 0)
    if isinstance(path, Parametric):
        total, err, evals, clamped = _parametric_length(model, path, opts)
        return LengthResult(total, err, evals, clamped > 0)

    if isinstance(path, ConstS):
        kind, aux, rng = KIND_CONST_S, (path.s,), path.v_range
    elif isinstance(path, ConstV):
        kind, aux, rng = KIND_CONST_V, (path.v,), path.s_range
    elif isinstance(path, ConstP):
        kind, aux, rng = KIND_CONST_P, (path.p,), path.v_range
    elif isinstance(path, ConstU):
        kind, aux, rng = KIND_CONST_U, (path.u,), path.v_range
    elif isinstance(path, ConstVEntropy):
        kind, aux, rng = KIND_CONST_V_ENTROPY, (path.v,), path.u_range
    elif isinstance(path, Isotherm):
        kind = KIND_ISOTHERM_ENERGY if metric is Rep.ENERGY else KIND_ISOTHERM_ENTROPY
        aux, rng = (path.T,), path.v_range
    else:
        raise TypeError(f"unknown path spec {type(path).__name__}")

    value, err, evals, clamped = _run_atom(model, kind, aux, rng[0], rng[1], opts)
    return LengthResult(value, err, evals, clamped > 0)


def length_density(model: ModelConfig, metric: Rep, point: StatePoint,
                   direction: str) -> float:
    """dL/dX along the constant-other-coordinate path through the point:
    sqrt(g11) for the first coordinate, sqrt(g22) for v.  Always >= 0."""
    metric = Rep(metric)
    if point.rep is not metric:
        raise ValueError("state point representation must match the metric")
    first = "s" if metric is Rep.ENERGY else "u"
    if direction not in (first, "v"):
        raise ValueError(f"direction must be {first!r} or 'v' in the "
                         f"{metric.value} representation")
    g11, _, g22, g22s = _metric_components(model, metric, point.x1, point.x2)
    counter = [0]
    if direction == "v":
        return _clamped_sqrt(g22, g22s, QuadratureOptions().clamp_eps, counter)
    return _clamped_sqrt(g11, abs(g11), QuadratureOptions().clamp_eps, counter)


def isotherm_g22_length(model: ModelConfig, metric: Rep, T: float,
                        v_range: tuple[float, float],
                        opts: QuadratureOptions | None = None) -> LengthResult:
    """Alternative isotherm convention: accumulate the constant-coordinate
    reduced integrand sqrt(g22) along the isotherm curve.

    For an ideal gas in the energy representation this exceeds the general
    metric length of the same curve by sqrt(c_p/c_v); both are reported by
    the CLI since either reading appears in practice.
    """
    opts = opts or QuadratureOptions()
    metric = Rep(metric)
    lo, hi = _check_range(v_range, "v_range")
    counter = [0]

    def integrand(v):
        point = state_from_tv(model, T, v, metric)
        _, _, g22, g22s = _metric_components(model, metric, point.x1, point.x2)
        return _clamped_sqrt(g22, g22s, opts.clamp_eps, counter)

    value, err, evals = adaptive_simpson(integrand, lo, hi, abs_tol=opts.abs_tol,
                                         rel_tol=opts.rel_tol, max_depth=opts.max_depth)
    return LengthResult(value, err, evals, counter[0] > 0)


# ---------------------------------------------------------------------------
# geodesics
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GeodesicResult:
    """Optimized polyline with its length; converged is False when the
    iteration cap was reached before the decrease threshold."""

    path: Polyline
    result: LengthResult
    converged: bool
    iterations: int


def geodesic(model: ModelConfig, metric: Rep, start: StatePoint, end: StatePoint,
             n_segments: int = 8, opts: QuadratureOptions | None = None,
             max_iter: int = 5000,
             init_nodes: Sequence[tuple[float, float]] | None = None) -> GeodesicResult:
    """Minimal-length polyline between two states.

    Starts from the straight coordinate polyline (or init_nodes), then
    gradient-descends the interior nodes with finite-difference gradients
    and backtracking line search.  Terminates when the decrease per
    iteration falls below 1e-12 * L or at the iteration cap; the best path
    found is always returned.
    """
    opts = opts or QuadratureOptions()
    metric = Rep(metric)
    if start.rep is not metric or end.rep is not metric:
        raise ValueError("endpoint representations must match the metric")
    if n_segments < 2:
        raise ValueError("n_segments must be at least 2")

    if start.x1 == end.x1 and start.x2 == end.x2:
        path = Polyline(metric, ((start.x1, start.x2), (end.x1, end.x2)))
        return GeodesicResult(path, LengthResult(0.0, 0.0, 0, False), True, 0)

    if init_nodes is not None:
        nodes = np.asarray(init_nodes, dtype=float)
        if nodes.ndim != 2 or nodes.shape[1] != 2 or nodes.shape[0] != n_segments + 1:
            raise ValueError("init_nodes must have shape (n_segments + 1, 2)")
        if (nodes[0] != (start.x1, start.x2)).any() or (nodes[-1] != (end.x1, end.x2)).any():
            raise ValueError("init_nodes must start and end at the given endpoints")
        nodes = nodes.copy()
    else:
        t = np.linspace(0.0, 1.0, n_segments + 1)[:, None]
        nodes = (1.0 - t) * np.array([start.x1, start.x2]) + t * np.array([end.x1, end.x2])

    def objective(flat: np.ndarray):
        try:
            return _segment_sum(model, metric, flat, opts)
        except (NonPhysicalState, NegativeQuadraticForm):
            return math.inf, 0.0, 0, 0

    flat = nodes.ravel().copy()
    f0 = objective(flat)
    if not math.isfinite(f0[0]):
        raise NonPhysicalState("initial polyline leaves the model domain; "
                               "supply feasible init_nodes")
    f_cur = f0[0]

    free = slice(2, 2 * n_segments)  # interior node coordinates
    n_free = 2 * (n_segments - 1)
    fd_step = 1e-6
    diam = max(float(np.ptp(nodes[:, 0])), float(np.ptp(nodes[:, 1])), 1e-3)
    alpha = None
    converged = False
    iterations = 0

    for iterations in range(1, max_iter + 1):
        grad = np.zeros(n_free)
        for j in range(n_free):
            idx = 2 + j
            h = fd_step * max(1.0, abs(flat[idx]))
            trial = flat.copy()
            trial[idx] = flat[idx] + h
            fp = objective(trial)[0]
            trial[idx] = flat[idx] - h
            fm = objective(trial)[0]
            if not (math.isfinite(fp) and math.isfinite(fm)):
                grad[j] = 0.0
            else:
                grad[j] = (fp - fm) / (2.0 * h)
        gsq = float(grad @ grad)
        gmax = float(np.max(np.abs(grad))) if n_free else 0.0
        if gmax == 0.0:
            converged = True
            break
        if alpha is None:
            alpha = 0.01 * diam / gmax
        step = alpha
        accepted = False
        for _ in range(40):
            trial = flat.copy()
            trial[free] = flat[free] - step * grad
            f_try = objective(trial)[0]
            if f_try <= f_cur - 1e-4 * step * gsq:
                accepted = True
                break
            step *= 0.5
        if not accepted:
            converged = True
            break
        decrease = f_cur - f_try
        flat, f_cur = trial, f_try
        alpha = min(step * 2.0, 1e6 * diam)
        if decrease < 1e-12 * max(abs(f_cur), 1e-30):
            converged = True
            break

    final = objective(flat)
    path = Polyline(metric, tuple((flat[2 * i], flat[2 * i + 1])
                                  for i in range(n_segments + 1)))
    result = LengthResult(final[0], final[1], final[2], final[3] > 0)
    return GeodesicResult(path, result, converged, iterations)
