# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled hot kernels: batched gauge norms and min-gauge-distance.

Mirrors ``_kernels_py`` exactly (same golden-section schedule) so the two
backends agree to rounding error.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport INFINITY, fabs, hypot, pow, sqrt

cnp.import_array()

cdef double INV_PHI = (sqrt(5.0) - 1.0) / 2.0


cdef inline double _gnorm(double x, double y, int kind, double p,
                          const double[:, ::1] H, const double[:, ::1] Minv) noexcept nogil:
    cdef double acc, v
    cdef Py_ssize_t i
    if kind == 0:
        if p == 1.0:
            return fabs(x) + fabs(y)
        if p == 2.0:
            return hypot(x, y)
        return pow(pow(fabs(x), p) + pow(fabs(y), p), 1.0 / p)
    if kind == 1:
        acc = -INFINITY
        for i in range(H.shape[0]):
            v = H[i, 0] * x + H[i, 1] * y
            if v > acc:
                acc = v
        return acc
    return hypot(Minv[0, 0] * x + Minv[0, 1] * y, Minv[1, 0] * x + Minv[1, 1] * y)


def norms(V, int kind, double p, H, Minv):
    cdef const double[:, ::1] Vm = np.ascontiguousarray(V, dtype=np.float64)
    cdef const double[:, ::1] Hm = np.ascontiguousarray(H, dtype=np.float64)
    cdef const double[:, ::1] Mm = np.ascontiguousarray(Minv, dtype=np.float64)
    cdef Py_ssize_t n = Vm.shape[0], i
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    with nogil:
        for i in range(n):
            o[i] = _gnorm(Vm[i, 0], Vm[i, 1], kind, p, Hm, Mm)
    return out


def min_dist_points(X, P, int kind, double p, H, Minv):
    cdef const double[:, ::1] Xm = np.ascontiguousarray(X, dtype=np.float64)
    cdef const double[:, ::1] Pm = np.ascontiguousarray(P, dtype=np.float64)
    cdef const double[:, ::1] Hm = np.ascontiguousarray(H, dtype=np.float64)
    cdef const double[:, ::1] Mm = np.ascontiguousarray(Minv, dtype=np.float64)
    cdef Py_ssize_t n = Xm.shape[0], m = Pm.shape[0], i, j
    cdef double best, v, x, y
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    with nogil:
        for i in range(n):
            x = Xm[i, 0]
            y = Xm[i, 1]
            best = INFINITY
            for j in range(m):
                v = _gnorm(x - Pm[j, 0], y - Pm[j, 1], kind, p, Hm, Mm)
                if v < best:
                    best = v
            o[i] = best
    return out


cdef inline double _seg_dist(double bx, double by, double dx, double dy,
                             int kind, double p, const double[:, ::1] H,
                             const double[:, ::1] Minv, int iters) noexcept nogil:
    """Golden-section min of t -> |b - t*d| over t in [0, 1] (convex)."""
    cdef double lo = 0.0, hi = 1.0, t1, t2, f1, f2, fe, te, fl, fh
    cdef int k
    t1 = hi - INV_PHI * (hi - lo)
    t2 = lo + INV_PHI * (hi - lo)
    f1 = _gnorm(bx - t1 * dx, by - t1 * dy, kind, p, H, Minv)
    f2 = _gnorm(bx - t2 * dx, by - t2 * dy, kind, p, H, Minv)
    for k in range(iters):
        if f1 < f2:
            hi = t2
            t1 = hi - INV_PHI * (hi - lo)
            t2 = lo + INV_PHI * (hi - lo)
            f2 = f1
            f1 = _gnorm(bx - t1 * dx, by - t1 * dy, kind, p, H, Minv)
        else:
            lo = t1
            t1 = hi - INV_PHI * (hi - lo)
            t2 = lo + INV_PHI * (hi - lo)
            f1 = f2
            f2 = _gnorm(bx - t2 * dx, by - t2 * dy, kind, p, H, Minv)
    fe = f1 if f1 < f2 else f2
    fl = _gnorm(bx - lo * dx, by - lo * dy, kind, p, H, Minv)
    fh = _gnorm(bx - hi * dx, by - hi * dy, kind, p, H, Minv)
    if fl < fe:
        fe = fl
    if fh < fe:
        fe = fh
    return fe


def box_bounds_points(boxes, P, int kind, double p, H, Minv):
    """Center value and pair-based upper bound per box; see the NumPy twin."""
    cdef const double[:, ::1] Bx = np.ascontiguousarray(boxes, dtype=np.float64)
    cdef const double[:, ::1] Pm = np.ascontiguousarray(P, dtype=np.float64)
    cdef const double[:, ::1] Hm = np.ascontiguousarray(H, dtype=np.float64)
    cdef const double[:, ::1] Mm = np.ascontiguousarray(Minv, dtype=np.float64)
    cdef Py_ssize_t n = Bx.shape[0], m = Pm.shape[0], i, j, j1, j2, c
    cdef double cx, cy, d, d1, d2, m1, m2, mavg, v1, v2, qx, qy
    fc_arr = np.empty(n, dtype=np.float64)
    ub_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] fc = fc_arr
    cdef double[::1] ub = ub_arr
    with nogil:
        for i in range(n):
            cx = 0.5 * (Bx[i, 0] + Bx[i, 2])
            cy = 0.5 * (Bx[i, 1] + Bx[i, 3])
            d1 = INFINITY
            d2 = INFINITY
            j1 = 0
            j2 = 0
            for j in range(m):
                d = _gnorm(cx - Pm[j, 0], cy - Pm[j, 1], kind, p, Hm, Mm)
                if d < d1:
                    d2 = d1
                    j2 = j1
                    d1 = d
                    j1 = j
                elif d < d2:
                    d2 = d
                    j2 = j
            fc[i] = d1
            m1 = -INFINITY
            m2 = -INFINITY
            mavg = -INFINITY
            for c in range(4):
                qx = Bx[i, 0] if (c & 1) == 0 else Bx[i, 2]
                qy = Bx[i, 1] if (c & 2) == 0 else Bx[i, 3]
                v1 = _gnorm(qx - Pm[j1, 0], qy - Pm[j1, 1], kind, p, Hm, Mm)
                if v1 > m1:
                    m1 = v1
                if m > 1:
                    v2 = _gnorm(qx - Pm[j2, 0], qy - Pm[j2, 1], kind, p, Hm, Mm)
                    if v2 > m2:
                        m2 = v2
                    if 0.5 * (v1 + v2) > mavg:
                        mavg = 0.5 * (v1 + v2)
            if m > 1:
                if m2 < m1:
                    m1 = m2
                if mavg < m1:
                    m1 = mavg
            ub[i] = m1
    return fc_arr, ub_arr


def minimax_box_segments(boxes, SA, SB, int kind, double p, H, Minv, int iters=60):
    """min over segments of the max over box corners of the segment distance."""
    cdef const double[:, ::1] Bx = np.ascontiguousarray(boxes, dtype=np.float64)
    cdef const double[:, ::1] Am = np.ascontiguousarray(SA, dtype=np.float64)
    cdef const double[:, ::1] Bm = np.ascontiguousarray(SB, dtype=np.float64)
    cdef const double[:, ::1] Hm = np.ascontiguousarray(H, dtype=np.float64)
    cdef const double[:, ::1] Mm = np.ascontiguousarray(Minv, dtype=np.float64)
    cdef Py_ssize_t n = Bx.shape[0], m = Am.shape[0], i, j, c
    cdef double best, mx, v, qx, qy
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    with nogil:
        for i in range(n):
            best = INFINITY
            for j in range(m):
                mx = -INFINITY
                for c in range(4):
                    qx = Bx[i, 0] if (c & 1) == 0 else Bx[i, 2]
                    qy = Bx[i, 1] if (c & 2) == 0 else Bx[i, 3]
                    v = _seg_dist(qx - Am[j, 0], qy - Am[j, 1],
                                  Bm[j, 0] - Am[j, 0], Bm[j, 1] - Am[j, 1],
                                  kind, p, Hm, Mm, iters)
                    if v > mx:
                        mx = v
                if mx < best:
                    best = mx
            o[i] = best
    return out


def min_dist_segments(X, SA, SB, int kind, double p, H, Minv, int iters=60):
    cdef const double[:, ::1] Xm = np.ascontiguousarray(X, dtype=np.float64)
    cdef const double[:, ::1] Am = np.ascontiguousarray(SA, dtype=np.float64)
    cdef const double[:, ::1] Bm = np.ascontiguousarray(SB, dtype=np.float64)
    cdef const double[:, ::1] Hm = np.ascontiguousarray(H, dtype=np.float64)
    cdef const double[:, ::1] Mm = np.ascontiguousarray(Minv, dtype=np.float64)
    cdef Py_ssize_t n = Xm.shape[0], m = Am.shape[0], i, j
    cdef double best, v
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    with nogil:
        for i in range(n):
            best = INFINITY
            for j in range(m):
                v = _seg_dist(Xm[i, 0] - Am[j, 0], Xm[i, 1] - Am[j, 1],
                              Bm[j, 0] - Am[j, 0], Bm[j, 1] - Am[j, 1],
                              kind, p, Hm, Mm, iters)
                if v < best:
                    best = v
            o[i] = best
    return out
