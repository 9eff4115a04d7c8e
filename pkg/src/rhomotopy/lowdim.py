"""Closed-form ``SH^r`` in degrees 0 and 1 from pair combinatorics.

Degree 0 counts classes of points under a distance threshold. Degree 1
counts classes of adjacent pairs under two moves that slide one endpoint by
at most ``r``, discarding every class that reaches a trivial pair.
"""
from __future__ import annotations

import math
from typing import List, Set, Tuple

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import NotEuclidean, PreconditionViolated
from .intervals import ALL, BELOW, Interval, upper_expand
from .space import QMetSpace
from .unionfind import DisjointSet

Pair = Tuple[int, int]


def _matrix(X: QMetSpace) -> np.ndarray:
    dtype = float if X.backend == "float" else object
    return np.array([list(row) for row in X.dist], dtype=dtype)


def sh0_classes(X: QMetSpace, r, I: Interval) -> int:
    """Rank of ``SH^r_{0,I}``: zero unless ``0 ∈ I``, else the number of
    classes under ``d <= s`` (or ``d < s`` for an open right end) with ``s``
    the right end of ``I^r``."""
    if not I.contains(0, X.tau):
        return 0
    R = upper_expand(I, r).R
    ds = DisjointSet(X.points)
    for x in X.points:
        row = X.dist[x]
        for y in X.points:
            if x == y or math.isinf(row[y]):
                continue
            if R.kind == ALL:
                joined = True
            elif R.kind == BELOW:
                joined = X.lt(row[y], R.a)
            else:
                joined = X.le(row[y], R.a)
            if joined:
                ds.union(x, y)
    return len(ds.classes())


def adjacent_pairs(X: QMetSpace, ell) -> Set[Pair]:
    """Pairs at distance ``ell`` with no third point on a geodesic."""
    D = X.dist
    out = set()
    for x in X.points:
        for y in X.points:
            if x == y or not X.eq(D[x][y], ell):
                continue
            if not any(
                a != x and a != y and X.le(D[x][a] + D[a][y], ell) for a in X.points
            ):
                out.add((x, y))
    return out


def _pair_masks(X: QMetSpace, ell, r):
    # the diagonal stays in: (x,x) is trivial, and in an asymmetric space a
    # move can reach it from (x,a) with d(a,x) <= r < ℓ <= d(x,a)
    D = _matrix(X)
    bound = ell + r + X.tau
    P = (D <= bound).astype(bool)
    return D, P, bound


def trivial_pairs(X: QMetSpace, ell, r) -> Set[Pair]:
    """``T_{ℓ,r}``: pairs of ``P_{≤ℓ+r}`` with a witness ``a`` such that
    ``d(x,a)+d(a,y) <= ℓ+r`` and both legs are shorter than ``ℓ``."""
    D, P, bound = _pair_masks(X, ell, r)
    short = (D < ell - X.tau).astype(bool)
    out = set()
    for x in X.points:
        via = (D[x][:, None] + D <= bound).astype(bool) & short[x][:, None] & short
        hit = via.any(axis=0) & P[x]
        out.update((x, int(y)) for y in np.flatnonzero(hit))
    return out


def pair_partition(X: QMetSpace, ell, r):
    """Components of ``P_{≤ℓ+r}`` under both moves, as a label per pair id
    ``x*|X|+y``, and the set of labels that contain a trivial pair."""
    D, P, bound = _pair_masks(X, ell, r)
    n = len(X)
    tau = X.tau
    close = (D <= r + tau).astype(bool)
    src, dst = [], []
    for y in X.points:
        # (x,y) ~ (x',y): d(x,x') <= r and d(x,x') + d(x',y) <= ℓ+r
        col = P[:, y]
        ok = close & (D + D[:, y][None, :] <= bound).astype(bool) & col[:, None] & col[None, :]
        xs, x2s = np.nonzero(ok)
        src.append(xs * n + y)
        dst.append(x2s * n + y)
    for x in X.points:
        # (x,y) ~ (x,y'): d(y',y) <= r and d(x,y') + d(y',y) <= ℓ+r
        row = P[x]
        ok = close & (D[x][:, None] + D <= bound).astype(bool) & row[:, None] & row[None, :]
        y2s, ys = np.nonzero(ok)
        src.append(x * n + y2s)
        dst.append(x * n + ys)
    src, dst = np.concatenate(src), np.concatenate(dst)
    graph = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(n * n, n * n))
    _, labels = connected_components(graph, directed=False)
    marked = {int(labels[x * n + y]) for x, y in trivial_pairs(X, ell, r)}
    return labels, marked


def sh1_adjacency(X: QMetSpace, ell, r) -> int:
    """Rank of ``SH^r_{1,{ℓ}}`` as the number of non-trivial classes that
    meet ``Adj_ℓ``."""
    if not ell > r:
        raise PreconditionViolated(f"need ℓ > r, got ℓ={ell}, r={r}")
    adj = adjacent_pairs(X, ell)
    if not adj:
        return 0
    labels, marked = pair_partition(X, ell, r)
    n = len(X)
    return len({int(labels[x * n + y]) for x, y in adj} - marked)


def adjacent_classes(X: QMetSpace, ell, r) -> List[List[Pair]]:
    """The surviving classes themselves, each restricted to ``Adj_ℓ``."""
    adj = adjacent_pairs(X, ell)
    labels, marked = pair_partition(X, ell, r)
    n = len(X)
    groups = {}
    for x, y in sorted(adj):
        label = int(labels[x * n + y])
        if label not in marked:
            groups.setdefault(label, []).append((x, y))
    return list(groups.values())


def thick_interval_hits(X: QMetSpace, x: int, y: int, r) -> List[int]:
    """Sample points in the open lens around the segment ``[x, y]`` that are
    also inside the ellipse ``|x-a| + |a-y| <= |x-y| + r``."""
    if X.coords is None:
        raise NotEuclidean("space has no coordinates")
    C = np.asarray(X.coords, dtype=float)
    dx = np.linalg.norm(C - C[x], axis=1)
    dy = np.linalg.norm(C - C[y], axis=1)
    d = float(np.linalg.norm(C[x] - C[y]))
    tau = X.tau
    inside = (dx < d - tau) & (dy < d - tau) & (dx + dy <= d + r + tau)
    return [int(a) for a in np.flatnonzero(inside)]
