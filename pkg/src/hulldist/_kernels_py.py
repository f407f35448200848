"""NumPy fallback for the hot kernels.

Same contract as the compiled module ``_kernels_c``: batched gauge norms and
batched min-gauge-distance to point sets / segment sets.  Gauge is encoded as
(kind, p, H, Minv); unused parameters are dummies.
"""

import numpy as np

_INV_PHI = (np.sqrt(5.0) - 1.0) / 2.0  # golden ratio step

KIND_LP = 0
KIND_POLYTOPE = 1
KIND_ELLIPSE = 2


def norms(V, kind, p, H, Minv):
    """Gauge norms of row vectors V, shape (N, 2) -> (N,)."""
    V = np.asarray(V, dtype=float)
    if kind == KIND_LP:
        if p == 1.0:
            return np.abs(V[:, 0]) + np.abs(V[:, 1])
        if p == 2.0:
            return np.hypot(V[:, 0], V[:, 1])
        return (np.abs(V[:, 0]) ** p + np.abs(V[:, 1]) ** p) ** (1.0 / p)
    if kind == KIND_POLYTOPE:
        return np.max(V @ H.T, axis=1)
    W = V @ Minv.T
    return np.hypot(W[:, 0], W[:, 1])


def _norms_flat(Vx, Vy, kind, p, H, Minv):
    if kind == KIND_LP:
        if p == 1.0:
            return np.abs(Vx) + np.abs(Vy)
        if p == 2.0:
            return np.hypot(Vx, Vy)
        return (np.abs(Vx) ** p + np.abs(Vy) ** p) ** (1.0 / p)
    if kind == KIND_POLYTOPE:
        acc = np.full(Vx.shape, -np.inf)
        for h in H:
            np.maximum(acc, h[0] * Vx + h[1] * Vy, out=acc)
        return acc
    return np.hypot(Minv[0, 0] * Vx + Minv[0, 1] * Vy, Minv[1, 0] * Vx + Minv[1, 1] * Vy)


def min_dist_points(X, P, kind, p, H, Minv):
    """min_j gauge_norm(X_i - P_j); X (N,2), P (M,2) -> (N,)."""
    X = np.asarray(X, dtype=float)
    P = np.asarray(P, dtype=float)
    dx = X[:, 0:1] - P[None, :, 0]
    dy = X[:, 1:2] - P[None, :, 1]
    return np.min(_norms_flat(dx, dy, kind, p, H, Minv), axis=1)


def box_bounds_points(boxes, P, kind, p, H, Minv):
    """Center value and a box upper bound for f = min_j |x - P_j| over each box.

    Returns (fc, ub): fc is f at the box center; ub bounds sup over the box
    using the two center-nearest sites j1, j2 via corner maxima of d_j1,
    d_j2, and their average.  Each of the three is convex, so its box
    maximum sits at a corner; the average closes the pair-active plateaus of
    polyhedral gauges where the plain Lipschitz bound stalls.
    """
    boxes = np.asarray(boxes, dtype=float)
    P = np.asarray(P, dtype=float)
    n, m = len(boxes), len(P)
    cx = 0.5 * (boxes[:, 0] + boxes[:, 2])
    cy = 0.5 * (boxes[:, 1] + boxes[:, 3])
    d = _norms_flat(cx[:, None] - P[None, :, 0], cy[:, None] - P[None, :, 1], kind, p, H, Minv)
    if m == 1:
        j1 = np.zeros(n, dtype=np.intp)
        j2 = j1
        fc = d[:, 0]
    else:
        part = np.argpartition(d, 1, axis=1)[:, :2]
        dpart = np.take_along_axis(d, part, axis=1)
        first = np.argmin(dpart, axis=1)
        j1 = np.take_along_axis(part, first[:, None], axis=1)[:, 0]
        j2 = np.take_along_axis(part, (1 - first)[:, None], axis=1)[:, 0]
        fc = np.take_along_axis(d, j1[:, None], axis=1)[:, 0]
    corx = boxes[:, (0, 2, 0, 2)]
    cory = boxes[:, (1, 1, 3, 3)]
    d1 = _norms_flat(corx - P[j1, 0][:, None], cory - P[j1, 1][:, None], kind, p, H, Minv)
    d2 = _norms_flat(corx - P[j2, 0][:, None], cory - P[j2, 1][:, None], kind, p, H, Minv)
    ub = np.minimum(np.max(d1, axis=1), np.max(d2, axis=1))
    if m > 1:
        np.minimum(ub, np.max(0.5 * (d1 + d2), axis=1), out=ub)
    return fc, ub


def minimax_box_segments(boxes, SA, SB, kind, p, H, Minv, iters=60):
    """min over segments of the max over box corners of the segment distance."""
    boxes = np.asarray(boxes, dtype=float)
    corners = np.stack(
        [boxes[:, (0, 2, 0, 2)], boxes[:, (1, 1, 3, 3)]], axis=2
    ).reshape(-1, 2)
    d = _per_segment_dists(corners, SA, SB, kind, p, H, Minv, iters)
    d = d.reshape(len(boxes), 4, -1)
    return np.min(np.max(d, axis=1), axis=1)


def _per_segment_dists(X, SA, SB, kind, p, H, Minv, iters):
    """(N, M) gauge distances from each X_i to each segment (no min reduction)."""
    X = np.asarray(X, dtype=float)
    SA = np.asarray(SA, dtype=float)
    SB = np.asarray(SB, dtype=float)
    n, m = len(X), len(SA)
    dirx = (SB[:, 0] - SA[:, 0])[None, :]
    diry = (SB[:, 1] - SA[:, 1])[None, :]
    bx = X[:, 0:1] - SA[None, :, 0]
    by = X[:, 1:2] - SA[None, :, 1]

    def val(t):
        return _norms_flat(bx - t * dirx, by - t * diry, kind, p, H, Minv)

    lo = np.zeros((n, m))
    hi = np.ones((n, m))
    t1 = hi - _INV_PHI * (hi - lo)
    t2 = lo + _INV_PHI * (hi - lo)
    f1 = val(t1)
    f2 = val(t2)
    for _ in range(iters):
        take1 = f1 < f2
        hi = np.where(take1, t2, hi)
        lo = np.where(take1, lo, t1)
        t1 = hi - _INV_PHI * (hi - lo)
        t2 = lo + _INV_PHI * (hi - lo)
        fe = val(np.where(take1, t1, t2))
        f1, f2 = np.where(take1, fe, f2), np.where(take1, f1, fe)
    return np.minimum(np.minimum(f1, f2), np.minimum(val(lo), val(hi)))


def min_dist_segments(X, SA, SB, kind, p, H, Minv, iters=60):
    """min over segments [SA_j, SB_j] of the gauge distance from each X_i.

    The distance along a segment is convex in the parameter, so a fixed
    number of golden-section steps certifies the minimum to ~0.618**iters of
    the segment length.
    """
    return np.min(_per_segment_dists(X, SA, SB, kind, p, H, Minv, iters), axis=1)
