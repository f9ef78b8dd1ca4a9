"""Equation-of-state models and material functions.

A model is a closed-form fundamental relation for a two-degree-of-freedom
system, per mole throughout.  The gas families (ideal, quasi-ideal with
excluded covolume b, van der Waals) use the constant-c_v fundamental relation

    T(s, v) = T_ref * exp((s - s_ref)/c_v) * ((v - b)/(v_ref - b))**(-R/c_v)
    u(s, v) = c_v * T(s, v) - a / v

which reproduces the familiar pressure laws p = RT/(v-b) and
p = RT/(v-b) - a/v**2 and gives every metric constructor an analytically
differentiable oracle.  The linear families carry fundamental relations that
are linear in one extensive variable, u = A(s)*v + B(s) or
s = A(u)*v + B(u) with polynomial A, B; they are the canonical examples of
metrics with an isotropic coordinate direction.

All quantities are molar: R and c_v in energy/(mol*K), v in volume/mol,
u in energy/mol, s in energy/(mol*K).  Mass density is molar_mass/v.
"""
from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import ConfigError, DegenerateState, NonPhysicalState, UnsupportedModel

DEFAULT_R = 8.314462618  # energy/(mol*K)

# tolerance for accepting a polynomial-inversion root as real
_REAL_ROOT_IMAG_TOL = 1e-9


class Family(str, enum.Enum):
    IDEAL = "ideal"
    QUASI_IDEAL = "quasi_ideal"
    VAN_DER_WAALS = "van_der_waals"
    LINEAR_SV = "linear_sv"
    LINEAR_UV = "linear_uv"


GAS_FAMILIES = (Family.IDEAL, Family.QUASI_IDEAL, Family.VAN_DER_WAALS)
LINEAR_FAMILIES = (Family.LINEAR_SV, Family.LINEAR_UV)


class Rep(str, enum.Enum):
    """Coordinate representation: energy (s, v) or entropy (u, v)."""

    ENERGY = "energy"
    ENTROPY = "entropy"


@dataclass(frozen=True)
class Reference:
    """Integration constants of the fundamental relation.

    Lengths and metric entries depend only on T, v and p, never on the
    entropy origin, so any fixed convention works; these are the documented
    defaults.
    """

    s_ref: float = 0.0
    v_ref: float = 1.0
    T_ref: float = 1.0


@dataclass(frozen=True)
class LinearCoeffs:
    """Ascending polynomial coefficients for the linear fundamental relations.

    linear_sv: u = A(s)*v + B(s);  linear_uv: s = A(u)*v + B(u).
    """

    a_poly: tuple[float, ...]
    b_poly: tuple[float, ...] = (0.0,)


@dataclass(frozen=True)
class ModelConfig:
    """Equation-of-state family plus parameters; the single source of truth.

    Immutable after construction and safe to share across threads.
    c_p_override is a fault-injection hook for the validation suite: when
    set, material_at reports that value for c_p instead of the closed form,
    which makes the self-consistency checks fail on purpose.
    """

    family: Family
    R: float = DEFAULT_R
    c_v: float | None = None
    a: float = 0.0
    b: float = 0.0
    molar_mass: float = 1.0
    reference: Reference = field(default_factory=Reference)
    linear_coeffs: LinearCoeffs | None = None
    c_p_override: float | None = None

    def __post_init__(self):
        if not isinstance(self.family, Family):
            object.__setattr__(self, "family", Family(self.family))
        if self.R <= 0:
            raise ConfigError("R must be positive")
        if self.molar_mass <= 0:
            raise ConfigError("molar_mass must be positive")
        if self.a < 0:
            raise ConfigError("a must be nonnegative")
        if self.b < 0:
            raise ConfigError("b must be nonnegative")
        if self.family in GAS_FAMILIES:
            if self.c_v is None or self.c_v <= 0:
                raise ConfigError(f"{self.family.value} requires c_v > 0")
            if self.linear_coeffs is not None:
                raise ConfigError("linear_coeffs only apply to linear families")
            if self.family is Family.IDEAL and self.b != 0.0:
                raise ConfigError("ideal gas has b = 0; use quasi_ideal for b > 0")
            if self.family is not Family.VAN_DER_WAALS and self.a != 0.0:
                raise ConfigError("attraction parameter a only applies to van_der_waals")
        else:
            if self.linear_coeffs is None:
                raise ConfigError(f"{self.family.value} requires linear_coeffs")
            if self.a != 0.0 or self.b != 0.0:
                raise ConfigError("a/b do not apply to linear families")
        if self.reference.T_ref <= 0:
            raise ConfigError("T_ref must be positive")
        if self.reference.v_ref <= self.b:
            raise ConfigError("v_ref must exceed the covolume b")

    # -- serialization ----------------------------------------------------

    @staticmethod
    def from_json_dict(doc: dict) -> "ModelConfig":
        """Build a config from the documented JSON schema; unknown keys rejected."""
        if not isinstance(doc, dict):
            raise ConfigError("model config must be a JSON object")
        allowed = {"family", "R", "c_v", "a", "b", "molar_mass", "reference",
                   "linear_coeffs", "c_p_override"}
        unknown = set(doc) - allowed
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        if "family" not in doc:
            raise ConfigError("config is missing 'family'")
        try:
            family = Family(doc["family"])
        except ValueError:
            raise ConfigError(f"unknown family {doc['family']!r}") from None

        def num(key, default=None):
            if key not in doc:
                return default
            val = doc[key]
            if isinstance(val, bool) or not isinstance(val, (int, float)):
                raise ConfigError(f"config key {key!r} must be a number")
            return float(val)

        ref_doc = doc.get("reference", {})
        if not isinstance(ref_doc, dict):
            raise ConfigError("'reference' must be an object")
        ref_unknown = set(ref_doc) - {"s_ref", "v_ref", "T_ref"}
        if ref_unknown:
            raise ConfigError(f"unknown reference keys: {sorted(ref_unknown)}")
        reference = Reference(
            s_ref=float(ref_doc.get("s_ref", 0.0)),
            v_ref=float(ref_doc.get("v_ref", 1.0)),
            T_ref=float(ref_doc.get("T_ref", 1.0)),
        )

        coeffs = None
        if "linear_coeffs" in doc:
            cdoc = doc["linear_coeffs"]
            if not isinstance(cdoc, dict):
                raise ConfigError("'linear_coeffs' must be an object")
            c_unknown = set(cdoc) - {"a_poly", "b_poly"}
            if c_unknown:
                raise ConfigError(f"unknown linear_coeffs keys: {sorted(c_unknown)}")
            if "a_poly" not in cdoc:
                raise ConfigError("linear_coeffs requires 'a_poly'")
            coeffs = LinearCoeffs(
                a_poly=tuple(float(c) for c in cdoc["a_poly"]),
                b_poly=tuple(float(c) for c in cdoc.get("b_poly", [0.0])),
            )

        return ModelConfig(
            family=family,
            R=num("R", DEFAULT_R),
            c_v=num("c_v"),
            a=num("a", 0.0),
            b=num("b", 0.0),
            molar_mass=num("molar_mass", 1.0),
            reference=reference,
            linear_coeffs=coeffs,
            c_p_override=num("c_p_override"),
        )

    @staticmethod
    def from_json_file(path) -> "ModelConfig":
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
        return ModelConfig.from_json_dict(doc)


@dataclass(frozen=True)
class StatePoint:
    """Representation-tagged coordinates: (s, v) in energy rep, (u, v) in entropy rep."""

    rep: Rep
    x1: float
    x2: float

    @staticmethod
    def energy(s: float, v: float) -> "StatePoint":
        return StatePoint(Rep.ENERGY, float(s), float(v))

    @staticmethod
    def entropy(u: float, v: float) -> "StatePoint":
        return StatePoint(Rep.ENTROPY, float(u), float(v))

    @property
    def v(self) -> float:
        return self.x2

    @property
    def s(self) -> float:
        if self.rep is not Rep.ENERGY:
            raise ValueError("s is the first coordinate only in the energy representation")
        return self.x1

    @property
    def u(self) -> float:
        if self.rep is not Rep.ENTROPY:
            raise ValueError("u is the first coordinate only in the entropy representation")
        return self.x1


@dataclass(frozen=True)
class MaterialState:
    """Material functions at a state: temperature, pressure, heat capacities,
    thermal expansion and the two compressibilities."""

    T: float
    p: float
    c_v: float
    c_p: float
    alpha: float
    kappa_T: float
    kappa_S: float


class UFund(NamedTuple):
    """u(s, v) with first and second partials (u_s = T, u_v = -p)."""

    u: float
    u_s: float
    u_v: float
    u_ss: float
    u_sv: float
    u_vv: float


class SFund(NamedTuple):
    """s(u, v) with first and second partials (s_u = 1/T, s_v = p/T)."""

    s: float
    s_u: float
    s_v: float
    s_uu: float
    s_uv: float
    s_vv: float


# ---------------------------------------------------------------------------
# gas-family closed forms
# ---------------------------------------------------------------------------

def _check_v(model: ModelConfig, v: float) -> None:
    if not v > model.b:
        raise NonPhysicalState(f"v = {v} must exceed the covolume b = {model.b}")


def gas_temperature_sv(model: ModelConfig, s: float, v: float) -> float:
    """T(s, v) for the gas families (always positive in-domain)."""
    _check_v(model, v)
    ref = model.reference
    w = (v - model.b) / (ref.v_ref - model.b)
    return ref.T_ref * math.exp((s - ref.s_ref) / model.c_v) * w ** (-model.R / model.c_v)


def gas_temperature_uv(model: ModelConfig, u: float, v: float) -> float:
    """T(u, v) = (u + a/v)/c_v for the gas families."""
    _check_v(model, v)
    T = (u + model.a / v) / model.c_v
    if not T > 0.0:
        raise NonPhysicalState(f"u = {u} at v = {v} implies T = {T} <= 0")
    return T


def gas_pressure(model: ModelConfig, T: float, v: float) -> float:
    return model.R * T / (v - model.b) - model.a / (v * v)


def gas_pressure_dT(model: ModelConfig, T: float, v: float) -> float:
    return model.R / (v - model.b)


def gas_pressure_dv(model: ModelConfig, T: float, v: float) -> float:
    vb = v - model.b
    return -model.R * T / (vb * vb) + 2.0 * model.a / (v * v * v)


def gas_entropy_tv(model: ModelConfig, T: float, v: float) -> float:
    """s(T, v) inverted from the fundamental relation."""
    _check_v(model, v)
    if not T > 0.0:
        raise NonPhysicalState(f"T = {T} must be positive")
    ref = model.reference
    w = (v - model.b) / (ref.v_ref - model.b)
    return ref.s_ref + model.c_v * math.log(T / ref.T_ref) + model.R * math.log(w)


# ---------------------------------------------------------------------------
# linear-family polynomials and inversions
# ---------------------------------------------------------------------------

def _poly_d(coeffs) -> tuple[float, ...]:
    der = npoly.polyder(np.asarray(coeffs, dtype=float))
    return tuple(der) if der.size else (0.0,)


def _poly_val(coeffs, x: float) -> float:
    return float(npoly.polyval(x, np.asarray(coeffs, dtype=float)))


def _linear_native(model: ModelConfig, x: float, v: float):
    """Value and partials of the native relation f = A(x)*v + B(x).

    x is s for linear_sv, u for linear_uv; returns
    (f, f_x, f_v, f_xx, f_xv, f_vv) with f_vv identically zero.
    """
    coeffs = model.linear_coeffs
    a1, a2 = _poly_d(coeffs.a_poly), _poly_d(_poly_d(coeffs.a_poly))
    b1, b2 = _poly_d(coeffs.b_poly), _poly_d(_poly_d(coeffs.b_poly))
    A, Ap, App = _poly_val(coeffs.a_poly, x), _poly_val(a1, x), _poly_val(a2, x)
    B, Bp, Bpp = _poly_val(coeffs.b_poly, x), _poly_val(b1, x), _poly_val(b2, x)
    return (A * v + B, Ap * v + Bp, A, App * v + Bpp, Ap, 0.0)


def _solve_poly(a_poly, b_poly, v: float, target: float, admissible, what: str) -> float:
    """Solve A(x)*v + B(x) = target for x; require one admissible real root."""
    a = np.asarray(a_poly, dtype=float) * v
    b = np.asarray(b_poly, dtype=float)
    n = max(a.size, b.size)
    poly = np.zeros(n)
    poly[: a.size] += a
    poly[: b.size] += b
    poly[0] -= target
    nonzero = np.nonzero(poly)[0]
    if nonzero.size == 0:
        raise DegenerateState(f"{what}: relation degenerates to 0 = 0 at v = {v}")
    if nonzero.max() == 0:
        raise NonPhysicalState(f"{what}: relation is constant in the unknown at v = {v}")
    roots = npoly.polyroots(poly[: nonzero.max() + 1])
    real = [float(r.real) for r in roots
            if abs(r.imag) <= _REAL_ROOT_IMAG_TOL * (1.0 + abs(r.real))]
    good = sorted(x for x in real if admissible(x))
    if not good:
        raise NonPhysicalState(f"{what}: no admissible real root at v = {v}")
    if good[-1] - good[0] > 1e-9 * (1.0 + abs(good[0])):
        raise NonPhysicalState(f"{what}: ambiguous inversion ({len(good)} roots) at v = {v}")
    return good[0]


def _linear_T(model: ModelConfig, x: float, v: float) -> float:
    """Temperature implied by the native linear relation at (x, v)."""
    f_x = _linear_native(model, x, v)[1]
    if model.family is Family.LINEAR_SV:
        return f_x
    return 1.0 / f_x if f_x != 0.0 else -math.inf


def _invert_linear_value(model: ModelConfig, target: float, v: float, what: str) -> float:
    """Solve A(x)*v + B(x) = target for x, keeping roots with T > 0."""
    coeffs = model.linear_coeffs
    return _solve_poly(coeffs.a_poly, coeffs.b_poly, v, target,
                       lambda x: _linear_T(model, x, v) > 0.0, what)


def _invert_linear_slope(model: ModelConfig, target: float, v: float, what: str) -> float:
    """Solve A'(x)*v + B'(x) = target for x, keeping roots with T > 0."""
    coeffs = model.linear_coeffs
    return _solve_poly(_poly_d(coeffs.a_poly), _poly_d(coeffs.b_poly), v, target,
                       lambda x: _linear_T(model, x, v) > 0.0, what)


def _transform_inverse(f_x: float, f_v: float, f_xx: float, f_xv: float, f_vv: float):
    """Partials of the inverse relation x(f, v) given those of f(x, v).

    Implicit-function formulas: x_f = 1/f_x, x_v = -f_v/f_x, and the second
    partials below.  Used to move Hessians between the two representations.
    """
    if f_x == 0.0:
        raise DegenerateState("fundamental relation not invertible: f_x = 0")
    g_f = 1.0 / f_x
    g_v = -f_v / f_x
    fx3 = f_x * f_x * f_x
    g_ff = -f_xx / fx3
    g_fv = (f_xx * f_v - f_xv * f_x) / fx3
    g_vv = -(f_vv * f_x * f_x - 2.0 * f_xv * f_v * f_x + f_xx * f_v * f_v) / fx3
    return g_f, g_v, g_ff, g_fv, g_vv


# ---------------------------------------------------------------------------
# fundamental relations
# ---------------------------------------------------------------------------

def fundamental_energy(model: ModelConfig, s: float, v: float) -> UFund:
    """u(s, v) and all first/second partials in closed form.

    The Hessian of u is the energy metric.
    """
    fam = model.family
    if fam in GAS_FAMILIES:
        T = gas_temperature_sv(model, s, v)
        R, c_v, a = model.R, model.c_v, model.a
        vb = v - model.b
        u = c_v * T - a / v
        u_v = -(R * T / vb - a / (v * v))
        u_sv = -R * T / (c_v * vb)
        u_vv = R * T * (1.0 + R / c_v) / (vb * vb) - 2.0 * a / (v * v * v)
        return UFund(u, T, u_v, T / c_v, u_sv, u_vv)
    _check_v(model, v)
    if fam is Family.LINEAR_SV:
        return UFund(*_linear_native(model, s, v))
    if fam is Family.LINEAR_UV:
        u = _invert_linear_value(model, s, v, "u(s,v)")
        _, s_u, s_v, s_uu, s_uv, s_vv = _linear_native(model, u, v)
        u_s, u_v, u_ss, u_sv, u_vv = _transform_inverse(s_u, s_v, s_uu, s_uv, s_vv)
        return UFund(u, u_s, u_v, u_ss, u_sv, u_vv)
    raise UnsupportedModel(f"unknown family {fam}")


def fundamental_entropy(model: ModelConfig, u: float, v: float) -> SFund:
    """s(u, v) and all first/second partials.

    Minus the Hessian of s is the entropy metric.
    """
    fam = model.family
    if fam in GAS_FAMILIES:
        T = gas_temperature_uv(model, u, v)
        R, c_v, a = model.R, model.c_v, model.a
        vb = v - model.b
        s = gas_entropy_tv(model, T, v)
        s_v = R / vb - a / (T * v * v)
        s_uu = -1.0 / (c_v * T * T)
        s_uv = a / (c_v * T * T * v * v)
        s_vv = (-R / (vb * vb) + 2.0 * a / (T * v * v * v)
                - a * a / (c_v * T * T * v * v * v * v))
        return SFund(s, 1.0 / T, s_v, s_uu, s_uv, s_vv)
    _check_v(model, v)
    if fam is Family.LINEAR_UV:
        return SFund(*_linear_native(model, u, v))
    if fam is Family.LINEAR_SV:
        s = _invert_linear_value(model, u, v, "s(u,v)")
        _, u_s, u_v, u_ss, u_sv, u_vv = _linear_native(model, s, v)
        s_u, s_v, s_uu, s_uv, s_vv = _transform_inverse(u_s, u_v, u_ss, u_sv, u_vv)
        return SFund(s, s_u, s_v, s_uu, s_uv, s_vv)
    raise UnsupportedModel(f"unknown family {fam}")


def energy_hessian(model: ModelConfig, point: StatePoint) -> tuple[float, float, float, float, float]:
    """(T, p, u_ss, u_sv, u_vv) at a point in either representation."""
    if point.rep is Rep.ENERGY:
        f = fundamental_energy(model, point.x1, point.x2)
        T, p = f.u_s, -f.u_v
        h = (f.u_ss, f.u_sv, f.u_vv)
    else:
        sf = fundamental_entropy(model, point.x1, point.x2)
        u_s, u_v, u_ss, u_sv, u_vv = _transform_inverse(sf.s_u, sf.s_v, sf.s_uu, sf.s_uv, sf.s_vv)
        T, p = u_s, -u_v
        h = (u_ss, u_sv, u_vv)
    if not T > 0.0:
        raise NonPhysicalState(f"state implies T = {T} <= 0")
    return (T, p, *h)


# ---------------------------------------------------------------------------
# state evaluation
# ---------------------------------------------------------------------------

def temperature(model: ModelConfig, point: StatePoint) -> float:
    """Temperature at a state point in either representation."""
    if model.family in GAS_FAMILIES:
        if point.rep is Rep.ENERGY:
            return gas_temperature_sv(model, point.x1, point.x2)
        return gas_temperature_uv(model, point.x1, point.x2)
    return energy_hessian(model, point)[0]


def pressure(model: ModelConfig, T: float, v: float) -> float:
    """p(T, v): closed form for the gas families, derived from the
    fundamental relation for the linear families."""
    _check_v(model, v)
    if not T > 0.0:
        raise NonPhysicalState(f"T = {T} must be positive")
    fam = model.family
    if fam in GAS_FAMILIES:
        return gas_pressure(model, T, v)
    if fam is Family.LINEAR_SV:
        # u_s(s, v) = A'(s) v + B'(s) = T, then p = -u_v = -A(s)
        s = _invert_linear_slope(model, T, v, "s(T,v)")
        return -_poly_val(model.linear_coeffs.a_poly, s)
    # linear_uv: s_u(u, v) = A'(u) v + B'(u) = 1/T, then p = T * s_v = T * A(u)
    u = _invert_linear_slope(model, 1.0 / T, v, "u(T,v)")
    return T * _poly_val(model.linear_coeffs.a_poly, u)


def pressure_derivatives(model: ModelConfig, point: StatePoint):
    """(T, p, (dp/dT)_v, (dp/dv)_T) at a state point.

    For linear families the derivatives come from the energy Hessian:
    (dp/dT)_v = -u_sv/u_ss and (dp/dv)_T = -det(Hess u)/u_ss.
    """
    v = point.v
    _check_v(model, v)
    if model.family in GAS_FAMILIES:
        T = temperature(model, point)
        return (T, gas_pressure(model, T, v),
                gas_pressure_dT(model, T, v), gas_pressure_dv(model, T, v))
    T, p, u_ss, u_sv, u_vv = energy_hessian(model, point)
    if u_ss == 0.0:
        raise DegenerateState("u_ss = 0: (T, v) is not a coordinate chart here")
    det = u_ss * u_vv - u_sv * u_sv
    return T, p, -u_sv / u_ss, -det / u_ss


# (dp/dv)_T within this fraction of its cancellation scale counts as zero;
# states that close to the spinodal have no meaningful material functions
_PV_DEGENERACY_RTOL = 1e-13


def pressure_dv_with_scale(model: ModelConfig, point: StatePoint) -> tuple[float, float]:
    """((dp/dv)_T, scale): the scale is the magnitude of the cancelling
    terms, the yardstick for deciding whether a tiny value is a rounded
    degeneracy."""
    v = point.v
    if model.family in GAS_FAMILIES:
        T = temperature(model, point)
        vb = v - model.b
        repulsive = model.R * T / (vb * vb)
        attractive = 2.0 * model.a / (v * v * v)
        return attractive - repulsive, repulsive + attractive
    _, _, u_ss, u_sv, u_vv = energy_hessian(model, point)
    if u_ss == 0.0:
        raise DegenerateState("u_ss = 0: (T, v) is not a coordinate chart here")
    det = u_ss * u_vv - u_sv * u_sv
    return -det / u_ss, (abs(u_ss * u_vv) + u_sv * u_sv) / abs(u_ss)


def material_at(model: ModelConfig, point: StatePoint) -> MaterialState:
    """All six material functions evaluated from the model's closed forms.

    Raises DegenerateState where (dp/dv)_T = 0 to rounding (kappa_T
    infinite); the caller decides how to proceed there.
    """
    T, p, p_T, p_v = pressure_derivatives(model, point)
    _, p_v_scale = pressure_dv_with_scale(model, point)
    if abs(p_v) <= _PV_DEGENERACY_RTOL * p_v_scale:
        raise DegenerateState(
            f"(dp/dv)_T = 0 at T = {T}, v = {point.v}: kappa_T is infinite")
    v = point.v
    kappa_T = -1.0 / (v * p_v)
    alpha = kappa_T * p_T
    if model.family in GAS_FAMILIES:
        c_v = model.c_v
    else:
        u_ss = energy_hessian(model, point)[2]
        if u_ss == 0.0:
            raise DegenerateState("u_ss = 0: heat capacity undefined")
        c_v = T / u_ss
    correction = T * p_T * p_T / p_v
    c_p = c_v - correction
    if model.c_p_override is not None:
        c_p = model.c_p_override
    if abs(c_p) <= _PV_DEGENERACY_RTOL * (abs(c_v) + abs(correction)):
        raise DegenerateState("c_p = 0: adiabatic compressibility undefined")
    kappa_S = (c_v / c_p) * kappa_T
    return MaterialState(T=T, p=p, c_v=c_v, c_p=c_p, alpha=alpha,
                         kappa_T=kappa_T, kappa_S=kappa_S)


def convert_state(model: ModelConfig, point: StatePoint, target: Rep) -> StatePoint:
    """Map (s, v) <-> (u, v) through the fundamental relation."""
    if point.rep is target:
        return point
    if target is Rep.ENTROPY:
        u = fundamental_energy(model, point.x1, point.x2).u
        return StatePoint.entropy(u, point.x2)
    s = fundamental_entropy(model, point.x1, point.x2).s
    return StatePoint.energy(s, point.x2)


def state_from_tv(model: ModelConfig, T: float, v: float, rep: Rep = Rep.ENERGY) -> StatePoint:
    """State point on the isotherm T at volume v, in the requested representation."""
    if not T > 0.0:
        raise NonPhysicalState(f"T = {T} must be positive")
    if model.family in GAS_FAMILIES:
        if rep is Rep.ENERGY:
            return StatePoint.energy(gas_entropy_tv(model, T, v), v)
        _check_v(model, v)
        return StatePoint.entropy(model.c_v * T - model.a / v, v)
    _check_v(model, v)
    if model.family is Family.LINEAR_SV:
        s = _invert_linear_slope(model, T, v, "s(T,v)")
        point = StatePoint.energy(s, v)
    else:
        u = _invert_linear_slope(model, 1.0 / T, v, "u(T,v)")
        point = StatePoint.entropy(u, v)
    return convert_state(model, point, rep)
