"""Pure-Python kernel: gas-family path integrals via the reference engine.

Twin of the compiled kernel in _kernel_c.pyx; selected at import time by
backend.py when the extension is unavailable (or forced by
THERMOLEN_BACKEND=python).
"""
from __future__ import annotations

import math

from . import _forms
from ._codes import FAM_IDEAL, FAM_QUASI_IDEAL, FAM_VDW, KIND_SEG_ENERGY, KIND_SEG_ENTROPY
from .errors import NegativeQuadraticForm
from .quadrature import adaptive_simpson

BACKEND_NAME = "python"
SUPPORTED_FAMILIES = frozenset({FAM_IDEAL, FAM_QUASI_IDEAL, FAM_VDW})


def supports(kind: int, family: int) -> bool:
    return family in SUPPORTED_FAMILIES


def atom_length(kind: int, family: int, params, aux, lo: float, hi: float,
                abs_tol: float, rel_tol: float, max_depth: int,
                clamp_eps: float):
    """Integrate one constant-coordinate/isotherm/segment integrand.

    Returns (value, error_estimate, evaluations, clamped_count); raises
    NonPhysicalState, NegativeQuadraticForm or DepthExceeded like the rest
    of the library.
    """
    counter = [0]

    def integrand(t: float) -> float:
        q, scale = _forms.form_at(kind, params, aux, t)
        if q >= 0.0:
            return math.sqrt(q)
        if q >= -clamp_eps * scale:
            counter[0] += 1
            return 0.0
        raise NegativeQuadraticForm(
            f"integrand form {q} < 0 beyond clamp at t = {t} (scale {scale})")

    value, error, evals = adaptive_simpson(integrand, lo, hi,
                                           abs_tol=abs_tol, rel_tol=rel_tol,
                                           max_depth=max_depth)
    return value, error, evals, counter[0]


def polyline_length(rep_entropy: int, family: int, params, nodes,
                    abs_tol: float, rel_tol: float, max_depth: int,
                    clamp_eps: float):
    """Sum of straight-segment lengths over flat node coordinates
    [x1_0, x2_0, x1_1, x2_1, ...]; the absolute budget is split evenly."""
    n_seg = len(nodes) // 2 - 1
    kind = KIND_SEG_ENTROPY if rep_entropy else KIND_SEG_ENERGY
    if n_seg < 1:
        return 0.0, 0.0, 0, 0
    seg_abs = abs_tol / n_seg
    total = err = 0.0
    evals = clamped = 0
    for i in range(n_seg):
        aux = (nodes[2 * i], nodes[2 * i + 1], nodes[2 * i + 2], nodes[2 * i + 3])
        if aux[0] == aux[2] and aux[1] == aux[3]:
            continue
        v, e, n, c = atom_length(kind, family, params, aux, 0.0, 1.0,
                                 seg_abs, rel_tol, max_depth, clamp_eps)
        total += v
        err += e
        evals += n
        clamped += c
    return total, err, evals, clamped
