"""Scalar integrand forms for the gas-family path kernels.

Every form returns (q, scale): q is the quantity under the square root of
the length integrand, scale is a cancellation-aware magnitude used to decide
whether a slightly negative q is rounding noise at a degeneracy (clamp to
zero) or a genuinely unstable state (hard error).  All formulas are written
in terms of (dp/dT)_v and (dp/dv)_T so they stay finite on the spinodal,
where the raw material functions alpha, kappa_T and c_p diverge.

The compiled kernel (_kernel_c) reimplements these forms in C with the same
expression order; keep the two in sync.
"""
from __future__ import annotations

import math

from ._codes import (
    FAM_IDEAL,
    FAM_QUASI_IDEAL,
    FAM_VDW,
    KIND_CONST_P,
    KIND_CONST_S,
    KIND_CONST_U,
    KIND_CONST_V,
    KIND_CONST_V_ENTROPY,
    KIND_ISOTHERM_ENERGY,
    KIND_ISOTHERM_ENTROPY,
    KIND_SEG_ENERGY,
    KIND_SEG_ENTROPY,
)
from .errors import NonPhysicalState

_FAMILY_CODE = {"ideal": FAM_IDEAL, "quasi_ideal": FAM_QUASI_IDEAL,
                "van_der_waals": FAM_VDW}


def gas_params(model) -> tuple[int, tuple[float, ...]] | None:
    """(family_code, packed parameters) for kernel dispatch, or None."""
    code = _FAMILY_CODE.get(model.family.value)
    if code is None:
        return None
    ref = model.reference
    return code, (model.R, model.c_v, model.a, model.b,
                  ref.s_ref, ref.v_ref, ref.T_ref)


def _temperature_sv(P, s: float, v: float) -> float:
    R, c_v, a, b, s_ref, v_ref, T_ref = P
    if not v > b:
        raise NonPhysicalState(f"v = {v} must exceed b = {b}")
    w = (v - b) / (v_ref - b)
    return T_ref * math.exp((s - s_ref) / c_v) * w ** (-R / c_v)


def _temperature_uv(P, u: float, v: float) -> float:
    R, c_v, a, b, s_ref, v_ref, T_ref = P
    if not v > b:
        raise NonPhysicalState(f"v = {v} must exceed b = {b}")
    T = (u + a / v) / c_v
    if not T > 0.0:
        raise NonPhysicalState(f"u = {u} at v = {v} implies T <= 0")
    return T


def _p_parts(P, T: float, v: float):
    """(p, p_T, p_v, p_v_scale): pressure, its derivatives, and the sum of
    absolute magnitudes of the two p_v terms (the cancellation scale)."""
    R, c_v, a, b = P[0], P[1], P[2], P[3]
    vb = v - b
    rep = R * T / (vb * vb)  # repulsive part of -(dp/dv)_T
    att = 2.0 * a / (v * v * v)
    return R * T / vb - a / (v * v), R / vb, att - rep, rep + att


def _energy_g(P, T: float, v: float):
    """Energy-metric components and magnitude scales at (T, v)."""
    c_v = P[1]
    p, p_T, p_v, p_v_scale = _p_parts(P, T, v)
    g11 = T / c_v
    g12 = -(T / c_v) * p_T
    g22 = -p_v + (T / c_v) * p_T * p_T
    g22_scale = p_v_scale + (T / c_v) * p_T * p_T
    return g11, g12, g22, g22_scale


def _entropy_g(P, T: float, v: float):
    """Entropy-metric components and magnitude scales at (T, v)."""
    c_v = P[1]
    p, p_T, p_v, p_v_scale = _p_parts(P, T, v)
    pref = 1.0 / (c_v * T * T)
    d = T * p_T - p
    g11 = pref
    g12 = -pref * d
    g22 = pref * (d * d - c_v * T * p_v)
    g22_scale = pref * (d * d + c_v * T * p_v_scale)
    return g11, g12, g22, g22_scale


def form_at(kind: int, P, aux, t: float) -> tuple[float, float]:
    """(q, scale) for integrand kind at parameter t."""
    if kind == KIND_CONST_S:
        T = _temperature_sv(P, aux[0], t)
        _, _, g22, g22_scale = _energy_g(P, T, t)
        return g22, g22_scale
    if kind == KIND_CONST_V:
        T = _temperature_sv(P, t, aux[0])
        q = T / P[1]
        return q, q
    if kind == KIND_CONST_P:
        R, c_v, a, b = P[0], P[1], P[2], P[3]
        v = t
        if not v > b:
            raise NonPhysicalState(f"v = {v} must exceed b = {b}")
        T = (aux[0] + a / (v * v)) * (v - b) / R
        if not T > 0.0:
            raise NonPhysicalState(f"isobar p = {aux[0]} leaves the domain at v = {v}")
        _, p_T, p_v, p_v_scale = _p_parts(P, T, v)
        head = c_v * p_v * p_v / (T * p_T * p_T)
        return head - p_v, head + p_v_scale
    if kind == KIND_CONST_U:
        T = _temperature_uv(P, aux[0], t)
        _, _, g22, g22_scale = _entropy_g(P, T, t)
        return g22, g22_scale
    if kind == KIND_CONST_V_ENTROPY:
        T = _temperature_uv(P, t, aux[0])
        q = 1.0 / (P[1] * T * T)
        return q, q
    if kind == KIND_ISOTHERM_ENERGY:
        T = aux[0]
        _, _, p_v, p_v_scale = _p_parts(P, T, t)
        return -p_v, p_v_scale
    if kind == KIND_ISOTHERM_ENTROPY:
        T = aux[0]
        _, _, p_v, p_v_scale = _p_parts(P, T, t)
        return -p_v / T, p_v_scale / T
    if kind == KIND_SEG_ENERGY or kind == KIND_SEG_ENTROPY:
        x1a, x2a, x1b, x2b = aux
        dx1 = x1b - x1a
        dx2 = x2b - x2a
        x1 = x1a + dx1 * t
        x2 = x2a + dx2 * t
        if kind == KIND_SEG_ENERGY:
            T = _temperature_sv(P, x1, x2)
            g11, g12, g22, g22_scale = _energy_g(P, T, x2)
        else:
            T = _temperature_uv(P, x1, x2)
            g11, g12, g22, g22_scale = _entropy_g(P, T, x2)
        q = g11 * dx1 * dx1 + 2.0 * g12 * dx1 * dx2 + g22 * dx2 * dx2
        scale = (g11 * dx1 * dx1 + 2.0 * abs(g12 * dx1 * dx2)
                 + g22_scale * dx2 * dx2)
        return q, scale
    raise ValueError(f"unknown integrand kind {kind}")
