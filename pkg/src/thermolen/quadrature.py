"""Adaptive Simpson quadrature with an interval-doubling error estimate.

This is the reference engine; the compiled kernel reimplements the identical
recursion in C for the hot path integrands.  The error budget is the tighter
of the absolute tolerance and the relative tolerance scaled by a cheap pilot
estimate, split in half at every bisection.  Accepted panels return the
Richardson-extrapolated value S2 + (S2 - S1)/15 and report |S2 - S1|/15
(plus a machine-epsilon floor) as their error contribution, so the reported
estimate stays an honest bound on what further refinement could change.
"""
from __future__ import annotations

from typing import Callable, NamedTuple

from .errors import DepthExceeded

# never accept a panel shallower than this, to avoid symmetric-integrand traps
MIN_DEPTH = 3

_EPS = 2.220446049250313e-16


class QuadResult(NamedTuple):
    value: float
    error: float
    evaluations: int


def _simpson(fa: float, fm: float, fb: float, width: float) -> float:
    return width * (fa + 4.0 * fm + fb) / 6.0


def adaptive_simpson(f: Callable[[float], float], a: float, b: float,
                     abs_tol: float = 1e-10, rel_tol: float = 1e-10,
                     max_depth: int = 40) -> QuadResult:
    """Integrate f over [a, b]; zero-width intervals are exactly zero."""
    if a == b:
        return QuadResult(0.0, 0.0, 0)

    # pilot: 8-panel composite Simpson fixes the relative-tolerance scale
    h = (b - a) / 8.0
    ys = []
    for i in range(9):
        x = a if i == 0 else (b if i == 8 else a + i * h)
        ys.append(f(x))
    pilot = (h / 3.0) * (ys[0] + 4.0 * ys[1] + 2.0 * ys[2] + 4.0 * ys[3]
                         + 2.0 * ys[4] + 4.0 * ys[5] + 2.0 * ys[6]
                         + 4.0 * ys[7] + ys[8])
    budget = abs_tol if pilot == 0.0 else min(abs_tol, rel_tol * abs(pilot))
    budget = max(budget, 5e-324)

    m = 0.5 * (a + b)
    fm = f(m)
    s_whole = _simpson(ys[0], fm, ys[8], b - a)
    value, error, evals = _descend(f, a, m, b, ys[0], fm, ys[8],
                                   s_whole, budget, 0, max_depth)
    return QuadResult(value, error, evals + 10)


def _descend(f, a, m, b, fa, fm, fb, s_prev, budget, depth, max_depth):
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = f(lm)
    frm = f(rm)
    s_left = _simpson(fa, flm, fm, m - a)
    s_right = _simpson(fm, frm, fb, b - m)
    s2 = s_left + s_right
    diff = s2 - s_prev
    if depth >= MIN_DEPTH and abs(diff) <= 15.0 * budget:
        return s2 + diff / 15.0, abs(diff) / 15.0 + _EPS * abs(s2), 2
    if depth >= max_depth:
        raise DepthExceeded(
            f"tolerance unreachable on [{a}, {b}] at depth {depth}")
    lv, le, ln = _descend(f, a, lm, m, fa, flm, fm, s_left,
                          0.5 * budget, depth + 1, max_depth)
    rv, re, rn = _descend(f, m, rm, b, fm, frm, fb, s_right,
                          0.5 * budget, depth + 1, max_depth)
    return lv + rv, le + re, ln + rn + 2
