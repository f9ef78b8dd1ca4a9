# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel: gas-family path integrals with the integrand inlined.

C twin of _kernel_py; the adaptive Simpson recursion and the integrand
formulas mirror quadrature.py and _forms.py expression for expression so the
two backends agree to rounding error.  Errors travel as status codes inside
the C core and are raised as the library exceptions at the wrapper.
"""

from libc.math cimport exp, fabs, log, pow, sqrt

from .errors import DepthExceeded, NegativeQuadraticForm, NonPhysicalState

BACKEND_NAME = "compiled"

cdef int FAM_IDEAL = 0
cdef int FAM_QUASI_IDEAL = 1
cdef int FAM_VDW = 2

cdef int KIND_CONST_S = 1
cdef int KIND_CONST_V = 2
cdef int KIND_CONST_P = 3
cdef int KIND_CONST_U = 4
cdef int KIND_CONST_V_ENTROPY = 5
cdef int KIND_ISOTHERM_ENERGY = 6
cdef int KIND_ISOTHERM_ENTROPY = 7
cdef int KIND_SEG_ENERGY = 8
cdef int KIND_SEG_ENTROPY = 9

cdef int ST_OK = 0
cdef int ST_NONPHYSICAL = 1
cdef int ST_NEGATIVE_FORM = 2
cdef int ST_DEPTH = 3

cdef int MIN_DEPTH = 3
cdef double EPS = 2.220446049250313e-16

SUPPORTED_FAMILIES = frozenset({FAM_IDEAL, FAM_QUASI_IDEAL, FAM_VDW})


def supports(int kind, int family):
    return family == FAM_IDEAL or family == FAM_QUASI_IDEAL or family == FAM_VDW


cdef struct Ctx:
    int kind
    double R, cv, a, b, s_ref, v_ref, T_ref
    double aux0, aux1, aux2, aux3
    double clamp_eps
    long evals
    long clamped
    int status


cdef double _temperature_sv(Ctx* c, double s, double v) nogil:
    cdef double w
    if not (v > c.b):
        c.status = ST_NONPHYSICAL
        return 0.0
    w = (v - c.b) / (c.v_ref - c.b)
    return c.T_ref * exp((s - c.s_ref) / c.cv) * pow(w, -c.R / c.cv)


cdef double _temperature_uv(Ctx* c, double u, double v) nogil:
    cdef double T
    if not (v > c.b):
        c.status = ST_NONPHYSICAL
        return 0.0
    T = (u + c.a / v) / c.cv
    if not (T > 0.0):
        c.status = ST_NONPHYSICAL
        return 0.0
    return T


cdef void _p_parts(Ctx* c, double T, double v,
                   double* p, double* p_T, double* p_v, double* p_v_scale) nogil:
    cdef double vb = v - c.b
    cdef double rep = c.R * T / (vb * vb)
    cdef double att = 2.0 * c.a / (v * v * v)
    p[0] = c.R * T / vb - c.a / (v * v)
    p_T[0] = c.R / vb
    p_v[0] = att - rep
    p_v_scale[0] = rep + att


cdef void _energy_g(Ctx* c, double T, double v,
                    double* g11, double* g12, double* g22, double* g22_scale) nogil:
    cdef double p, p_T, p_v, p_v_scale
    _p_parts(c, T, v, &p, &p_T, &p_v, &p_v_scale)
    g11[0] = T / c.cv
    g12[0] = -(T / c.cv) * p_T
    g22[0] = -p_v + (T / c.cv) * p_T * p_T
    g22_scale[0] = p_v_scale + (T / c.cv) * p_T * p_T


cdef void _entropy_g(Ctx* c, double T, double v,
                     double* g11, double* g12, double* g22, double* g22_scale) nogil:
    cdef double p, p_T, p_v, p_v_scale, pref, d
    _p_parts(c, T, v, &p, &p_T, &p_v, &p_v_scale)
    pref = 1.0 / (c.cv * T * T)
    d = T * p_T - p
    g11[0] = pref
    g12[0] = -pref * d
    g22[0] = pref * (d * d - c.cv * T * p_v)
    g22_scale[0] = pref * (d * d + c.cv * T * p_v_scale)


cdef void _form_at(Ctx* c, double t, double* q, double* scale) nogil:
    cdef double T, v, g11, g12, g22, g22_scale
    cdef double p, p_T, p_v, p_v_scale, head
    cdef double x1a, x2a, x1b, x2b, dx1, dx2, x1, x2
    cdef int kind = c.kind
    if kind == KIND_CONST_S:
        T = _temperature_sv(c, c.aux0, t)
        if c.status:
            return
        _energy_g(c, T, t, &g11, &g12, &g22, &g22_scale)
        q[0] = g22
        scale[0] = g22_scale
    elif kind == KIND_CONST_V:
        T = _temperature_sv(c, t, c.aux0)
        if c.status:
            return
        q[0] = T / c.cv
        scale[0] = q[0]
    elif kind == KIND_CONST_P:
        v = t
        if not (v > c.b):
            c.status = ST_NONPHYSICAL
            return
        T = (c.aux0 + c.a / (v * v)) * (v - c.b) / c.R
        if not (T > 0.0):
            c.status = ST_NONPHYSICAL
            return
        _p_parts(c, T, v, &p, &p_T, &p_v, &p_v_scale)
        head = c.cv * p_v * p_v / (T * p_T * p_T)
        q[0] = head - p_v
        scale[0] = head + p_v_scale
    elif kind == KIND_CONST_U:
        T = _temperature_uv(c, c.aux0, t)
        if c.status:
            return
        _entropy_g(c, T, t, &g11, &g12, &g22, &g22_scale)
        q[0] = g22
        scale[0] = g22_scale
    elif kind == KIND_CONST_V_ENTROPY:
        T = _temperature_uv(c, t, c.aux0)
        if c.status:
            return
        q[0] = 1.0 / (c.cv * T * T)
        scale[0] = q[0]
    elif kind == KIND_ISOTHERM_ENERGY:
        T = c.aux0
        if not (t > c.b):
            c.status = ST_NONPHYSICAL
            return
        _p_parts(c, T, t, &p, &p_T, &p_v, &p_v_scale)
        q[0] = -p_v
        scale[0] = p_v_scale
    elif kind == KIND_ISOTHERM_ENTROPY:
        T = c.aux0
        if not (t > c.b):
            c.status = ST_NONPHYSICAL
            return
        _p_parts(c, T, t, &p, &p_T, &p_v, &p_v_scale)
        q[0] = -p_v / T
        scale[0] = p_v_scale / T
    else:  # segments
        x1a = c.aux0
        x2a = c.aux1
        x1b = c.aux2
        x2b = c.aux3
        dx1 = x1b - x1a
        dx2 = x2b - x2a
        x1 = x1a + dx1 * t
        x2 = x2a + dx2 * t
        if kind == KIND_SEG_ENERGY:
            T = _temperature_sv(c, x1, x2)
            if c.status:
                return
            _energy_g(c, T, x2, &g11, &g12, &g22, &g22_scale)
        else:
            T = _temperature_uv(c, x1, x2)
            if c.status:
                return
            _entropy_g(c, T, x2, &g11, &g12, &g22, &g22_scale)
        q[0] = g11 * dx1 * dx1 + 2.0 * g12 * dx1 * dx2 + g22 * dx2 * dx2
        scale[0] = (g11 * dx1 * dx1 + 2.0 * fabs(g12 * dx1 * dx2)
                    + g22_scale * dx2 * dx2)


cdef double _integrand(Ctx* c, double t) nogil:
    cdef double q = 0.0, scale = 0.0
    _form_at(c, t, &q, &scale)
    if c.status:
        return 0.0
    c.evals += 1
    if q >= 0.0:
        return sqrt(q)
    if q >= -c.clamp_eps * scale:
        c.clamped += 1
        return 0.0
    c.status = ST_NEGATIVE_FORM
    return 0.0


cdef double _simpson(double fa, double fm, double fb, double width) nogil:
    return width * (fa + 4.0 * fm + fb) / 6.0


cdef double _descend(Ctx* c, double a, double m, double b,
                     double fa, double fm, double fb, double s_prev,
                     double budget, int depth, int max_depth,
                     double* err) nogil:
    cdef double lm = 0.5 * (a + m)
    cdef double rm = 0.5 * (m + b)
    cdef double flm = _integrand(c, lm)
    if c.status:
        return 0.0
    cdef double frm = _integrand(c, rm)
    if c.status:
        return 0.0
    cdef double s_left = _simpson(fa, flm, fm, m - a)
    cdef double s_right = _simpson(fm, frm, fb, b - m)
    cdef double s2 = s_left + s_right
    cdef double diff = s2 - s_prev
    cdef double le = 0.0, re = 0.0, lv, rv
    if depth >= MIN_DEPTH and fabs(diff) <= 15.0 * budget:
        err[0] = fabs(diff) / 15.0 + EPS * fabs(s2)
        return s2 + diff / 15.0
    if depth >= max_depth:
        c.status = ST_DEPTH
        return 0.0
    lv = _descend(c, a, lm, m, fa, flm, fm, s_left, 0.5 * budget,
                  depth + 1, max_depth, &le)
    if c.status:
        return 0.0
    rv = _descend(c, m, rm, b, fm, frm, fb, s_right, 0.5 * budget,
                  depth + 1, max_depth, &re)
    if c.status:
        return 0.0
    err[0] = le + re
    return lv + rv


cdef double _integrate(Ctx* c, double lo, double hi,
                       double abs_tol, double rel_tol, int max_depth,
                       double* err) nogil:
    cdef double h, pilot, budget, m, fm, s_whole, value
    cdef double ys[9]
    cdef int i
    if lo == hi:
        err[0] = 0.0
        return 0.0
    h = (hi - lo) / 8.0
    for i in range(9):
        if i == 0:
            ys[i] = _integrand(c, lo)
        elif i == 8:
            ys[i] = _integrand(c, hi)
        else:
            ys[i] = _integrand(c, lo + i * h)
        if c.status:
            return 0.0
    pilot = (h / 3.0) * (ys[0] + 4.0 * ys[1] + 2.0 * ys[2] + 4.0 * ys[3]
                         + 2.0 * ys[4] + 4.0 * ys[5] + 2.0 * ys[6]
                         + 4.0 * ys[7] + ys[8])
    if pilot == 0.0:
        budget = abs_tol
    else:
        budget = min(abs_tol, rel_tol * fabs(pilot))
    if budget < 5e-324:
        budget = 5e-324
    m = 0.5 * (lo + hi)
    fm = _integrand(c, m)
    if c.status:
        return 0.0
    s_whole = _simpson(ys[0], fm, ys[8], hi - lo)
    value = _descend(c, lo, m, hi, ys[0], fm, ys[8], s_whole,
                     budget, 0, max_depth, err)
    return value


cdef void _fill_ctx(Ctx* c, int kind, tuple params, double clamp_eps):
    c.kind = kind
    c.R = params[0]
    c.cv = params[1]
    c.a = params[2]
    c.b = params[3]
    c.s_ref = params[4]
    c.v_ref = params[5]
    c.T_ref = params[6]
    c.aux0 = 0.0
    c.aux1 = 0.0
    c.aux2 = 0.0
    c.aux3 = 0.0
    c.clamp_eps = clamp_eps
    c.evals = 0
    c.clamped = 0
    c.status = ST_OK


cdef object _raise_status(Ctx* c):
    if c.status == ST_NONPHYSICAL:
        raise NonPhysicalState("path left the model domain")
    if c.status == ST_NEGATIVE_FORM:
        raise NegativeQuadraticForm(
            "integrand form negative beyond clamp (unstable state on path)")
    if c.status == ST_DEPTH:
        raise DepthExceeded("tolerance unreachable at the recursion cap")
    return None


def atom_length(int kind, int family, tuple params, tuple aux,
                double lo, double hi, double abs_tol, double rel_tol,
                int max_depth, double clamp_eps):
    """Compiled counterpart of _kernel_py.atom_length (same contract)."""
    cdef Ctx c
    cdef double err = 0.0
    cdef double value
    cdef int i
    _fill_ctx(&c, kind, params, clamp_eps)
    if len(aux) > 0:
        c.aux0 = aux[0]
    if len(aux) > 1:
        c.aux1 = aux[1]
    if len(aux) > 2:
        c.aux2 = aux[2]
    if len(aux) > 3:
        c.aux3 = aux[3]
    value = _integrate(&c, lo, hi, abs_tol, rel_tol, max_depth, &err)
    if c.status:
        _raise_status(&c)
    return value, err, c.evals, c.clamped


def polyline_length(int rep_entropy, int family, tuple params, double[::1] nodes,
                    double abs_tol, double rel_tol, int max_depth,
                    double clamp_eps):
    """Compiled counterpart of _kernel_py.polyline_length (same contract)."""
    cdef Ctx c
    cdef Py_ssize_t n_seg = nodes.shape[0] // 2 - 1
    cdef int kind = KIND_SEG_ENTROPY if rep_entropy else KIND_SEG_ENERGY
    cdef double total = 0.0, err_total = 0.0, err = 0.0, seg_abs, value
    cdef long evals = 0, clamped = 0
    cdef Py_ssize_t i
    if n_seg < 1:
        return 0.0, 0.0, 0, 0
    seg_abs = abs_tol / n_seg
    _fill_ctx(&c, kind, params, clamp_eps)
    for i in range(n_seg):
        c.aux0 = nodes[2 * i]
        c.aux1 = nodes[2 * i + 1]
        c.aux2 = nodes[2 * i + 2]
        c.aux3 = nodes[2 * i + 3]
        if c.aux0 == c.aux2 and c.aux1 == c.aux3:
            continue
        err = 0.0
        value = _integrate(&c, 0.0, 1.0, seg_abs, rel_tol, max_depth, &err)
        if c.status:
            _raise_status(&c)
        total += value
        err_total += err
        evals += c.evals
        clamped += c.clamped
        c.evals = 0
        c.clamped = 0
    return total, err_total, evals, clamped
