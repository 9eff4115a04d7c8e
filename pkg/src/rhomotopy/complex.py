"""The length-filtered reachability complex and its interval truncations.

A degree-n generator is a tuple ``(x_0, ..., x_n)`` with ``x_i != x_{i+1}``
and every step finite; its level is the sum of the step distances, always
accumulated left to right so float levels are reproducible. ``C_I`` keeps
the tuples whose level lies in ``I = R \\ L``; faces landing in ``L`` are
zero in the quotient.
"""
from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from . import config
from .errors import DegreeBoundRequired, DegreeNotMaterialized, MismatchedSpaces, NotComparable
from .intervals import ALL, Interval, precedes
from .linalg import SparseMatrix
from .space import QMetSpace, ShortMap, is_inf

Chain = Dict[Tuple[int, ...], int]


def tuple_level(X: QMetSpace, t: Sequence[int]):
    D = X.dist
    level = 0 if X.backend != "float" else 0.0
    for a, b in zip(t, t[1:]):
        level = level + D[a][b]
    return level


def is_generator(X: QMetSpace, t: Sequence[int]) -> bool:
    return all(a != b and not is_inf(X.dist[a][b]) for a, b in zip(t, t[1:]))


def _successors(X: QMetSpace):
    D = X.dist
    return [
        sorted(((D[p][q], q) for q in X.points if q != p and not is_inf(D[p][q])))
        for p in X.points
    ]


def enumerate_tuples(X: QMetSpace, n: int, I: Interval, degree_bound: Optional[int] = None):
    """Degree-n generators with level in ``I``, as ``(tuples, levels)``.

    Successors are scanned in increasing distance so a branch stops as soon
    as its partial level leaves the right ray. Output is sorted
    lexicographically by point indices.
    """
    if I.R.kind == ALL and degree_bound is None:
        raise DegreeBoundRequired("interval is unbounded above; pass a degree bound")
    if degree_bound is not None and n > degree_bound:
        return [], []
    tol = X.tau
    R = I.R
    bounded = R.kind != ALL
    succ = _successors(X)
    zero = 0.0 if X.backend == "float" else 0
    found: List[Tuple[Tuple[int, ...], object]] = []
    path = [0] * (n + 1)

    dists = [[d for d, _ in row] for row in succ]
    lo_bound = I.L.a if I.L.a is not None else None
    hi_bound = I.R.a if bounded else None

    def last_step(level):
        # final step: only successors whose distance brings the level into I
        p = path[n - 1]
        row, ds = succ[p], dists[p]
        start = 0 if lo_bound is None else bisect_left(ds, lo_bound - level - 2 * tol)
        stop = len(ds) if hi_bound is None else bisect_right(ds, hi_bound - level + 2 * tol)
        head = path[:n]
        for dist, q in row[start:stop]:
            nl = level + dist
            if I.contains(nl, tol):
                found.append((tuple(head) + (q,), nl))

    def rec(k, level):
        if k == n:
            if I.contains(level, tol):
                found.append((tuple(path), level))
            return
        if k == n - 1:
            last_step(level)
            return
        for dist, q in succ[path[k]]:
            nl = level + dist
            if bounded and not R.contains(nl, tol):
                break
            path[k + 1] = q
            rec(k + 1, nl)

    for x in X.points:
        path[0] = x
        rec(0, zero)
    found.sort(key=lambda item: item[0])
    return [t for t, _ in found], [lv for _, lv in found]


def max_degree(X: QMetSpace, I: Interval) -> int:
    """Largest degree that can carry a generator of ``C_I`` (R bounded)."""
    if I.R.kind == ALL:
        raise DegreeBoundRequired("interval is unbounded above; pass a degree bound")
    positive = [v for row in X.dist for v in row if v != 0 and not is_inf(v)]
    if not positive:
        return 0
    m = min(positive)
    sup = I.R.a + X.tau
    if sup < 0:
        return 0
    return int(math.floor(sup / m)) if X.backend == "float" else int(sup // m)


@dataclass(frozen=True, eq=False)
class TruncatedComplex:
    """Bases and boundary matrices of ``C_I`` in degrees ``0..degree_bound``.

    ``boundaries[n]`` is the matrix of ``∂_n : C_n -> C_{n-1}`` (index 0 is
    the zero map out of degree 0). ``exhaustive`` is true when no generator
    exists above ``degree_bound``.
    """

    space: QMetSpace
    interval: Interval
    degree_bound: int
    bases: Tuple[Tuple[Tuple[int, ...], ...], ...]
    levels: Tuple[Tuple[object, ...], ...]
    boundaries: Tuple[SparseMatrix, ...]
    exhaustive: bool

    def __post_init__(self):
        object.__setattr__(self, "_index", tuple({t: i for i, t in enumerate(b)} for b in self.bases))
        object.__setattr__(self, "_order", {})

    def basis(self, n: int):
        if 0 <= n <= self.degree_bound:
            return self.bases[n]
        if n < 0 or self.exhaustive:
            return ()
        raise_not_materialized(self, n)

    def level_order(self, n: int) -> Tuple[int, ...]:
        """Column indices of degree n sorted by level; reducing boundary
        columns in this order keeps fill-in low."""
        if not 0 <= n <= self.degree_bound:
            return ()
        cache = self._order
        if n not in cache:
            lv = self.levels[n]
            cache[n] = tuple(sorted(range(len(lv)), key=lv.__getitem__))
        return cache[n]

    def dim(self, n: int) -> int:
        return len(self.basis(n))

    def has_degree(self, n: int) -> bool:
        return n < 0 or n <= self.degree_bound or self.exhaustive

    def index(self, n: int) -> Dict[Tuple[int, ...], int]:
        if 0 <= n <= self.degree_bound:
            return self._index[n]
        return {}

    def boundary(self, n: int) -> SparseMatrix:
        """``∂_n`` as a ``dim(n-1) x dim(n)`` matrix."""
        if n <= 0:
            return SparseMatrix.zero(0, self.dim(n) if n == 0 else 0)
        if n <= self.degree_bound:
            return self.boundaries[n]
        if self.exhaustive:
            return SparseMatrix.zero(self.dim(n - 1), 0)
        raise_not_materialized(self, n)

    def vector(self, chain: Chain, n: int) -> Dict[int, int]:
        """Coordinates of a chain; tuples outside the basis are dropped."""
        idx = self.index(n)
        out = {}
        for t, c in chain.items():
            i = idx.get(t)
            if i is not None and c:
                out[i] = out.get(i, 0) + c
        return {i: c for i, c in out.items() if c}

    def chain(self, vec: Dict[int, int], n: int) -> Chain:
        basis = self.basis(n)
        return {basis[i]: c for i, c in vec.items() if c}

    def dump(self) -> str:
        """Text listing of bases and boundary triplets for golden files."""
        lines = [f"interval {self.interval}", f"degree_bound {self.degree_bound}"]
        for n in range(self.degree_bound + 1):
            lines.append(f"degree {n} ({len(self.bases[n])})")
            for t, lv in zip(self.bases[n], self.levels[n]):
                lines.append(f"{_fmt_level(lv)} : {','.join(map(str, t))}")
            if n >= 1:
                lines.append(f"boundary {n}")
                for col, entries in enumerate(self.boundaries[n].cols):
                    for row in sorted(entries):
                        lines.append(f"{row} {col} {entries[row]}")
        return "\n".join(lines) + "\n"


def _fmt_level(v):
    return repr(v) if isinstance(v, float) else str(v)


def raise_not_materialized(C: TruncatedComplex, n: int):
    raise DegreeNotMaterialized(f"degree {n} is above the materialized bound {C.degree_bound}")


def _boundary_matrix(X, I, upper, lower_index, n_lower):
    cols = []
    debug = config.DEBUG
    for t in upper:
        col: Dict[int, int] = {}
        last = len(t) - 1
        for i in range(len(t)):
            if 0 < i < last and t[i - 1] == t[i + 1]:
                continue
            face = t[:i] + t[i + 1:]
            j = lower_index.get(face)
            if j is None:
                if debug:
                    _check_dropped_face(X, I, face)
                continue
            s = col.get(j, 0) + (-1 if i % 2 else 1)
            if s:
                col[j] = s
            else:
                del col[j]
        cols.append(col)
    return SparseMatrix(n_lower, tuple(cols))


def _check_dropped_face(X, I, face):
    lv = tuple_level(X, face)
    if not I.L.contains(lv, X.tau):
        raise AssertionError(f"face {face} of level {lv} is neither degenerate nor in L")


def truncated_complex(X: QMetSpace, I: Interval, degree_bound: Optional[int] = None) -> TruncatedComplex:
    """Materialize ``C_I`` up to ``degree_bound``.

    With a bounded right ray and no bound, every nonempty degree is built.
    """
    exhaustive = False
    if degree_bound is None:
        degree_bound = max_degree(X, I)
        exhaustive = True
    elif I.R.kind != ALL and degree_bound >= max_degree(X, I):
        exhaustive = True
    bases, levels, mats = [], [], []
    lower_index: Dict[Tuple[int, ...], int] = {}
    for n in range(degree_bound + 1):
        tuples, lv = enumerate_tuples(X, n, I, degree_bound)
        bases.append(tuple(tuples))
        levels.append(tuple(lv))
        if n == 0:
            mats.append(SparseMatrix.zero(0, len(tuples)))
        else:
            mats.append(_boundary_matrix(X, I, tuples, lower_index, len(bases[n - 1])))
        lower_index = {t: i for i, t in enumerate(tuples)}
    C = TruncatedComplex(X, I, degree_bound, tuple(bases), tuple(levels), tuple(mats), exhaustive)
    if config.DEBUG:
        for n in range(2, degree_bound + 1):
            assert (mats[n - 1] @ mats[n]).is_zero(), f"boundary squares to nonzero in degree {n}"
    return C


def inclusion_matrix(C_I: TruncatedComplex, C_J: TruncatedComplex, n: int) -> SparseMatrix:
    """Matrix of ``C_I -> C_J`` in degree n for ``I ≼ J``."""
    if C_I.space != C_J.space:
        raise MismatchedSpaces("complexes live on different spaces")
    if not precedes(C_I.interval, C_J.interval):
        raise NotComparable(f"{C_I.interval} does not precede {C_J.interval}")
    target = C_J.index(n)
    if not C_J.has_degree(n):
        raise_not_materialized(C_J, n)
    cols = []
    for t in C_I.basis(n):
        j = target.get(t)
        cols.append({} if j is None else {j: 1})
    return SparseMatrix(C_J.dim(n), tuple(cols))


# --- unfiltered chain-level operations ----------------------------------

def _add(chain: Chain, t, c):
    s = chain.get(t, 0) + c
    if s:
        chain[t] = s
    else:
        chain.pop(t, None)


def boundary_chain(X: QMetSpace, chain: Chain) -> Chain:
    """Boundary in the full reachability complex."""
    out: Chain = {}
    for t, c in chain.items():
        last = len(t) - 1
        if last == 0:
            continue
        for i in range(len(t)):
            if 0 < i < last and t[i - 1] == t[i + 1]:
                continue
            _add(out, t[:i] + t[i + 1:], c if i % 2 == 0 else -c)
    return out


def map_chain(phi: ShortMap, chain: Chain) -> Chain:
    """``RC(phi)``: apply pointwise, degenerate images are zero."""
    Y = phi.target
    out: Chain = {}
    for t, c in chain.items():
        img = tuple(phi.assignment[x] for x in t)
        if is_generator(Y, img):
            _add(out, img, c)
    return out


def prism_homotopy(phi: ShortMap, psi: ShortMap, chain: Chain) -> Chain:
    """``h = Σ_j (-1)^j h_j`` with ``h_j(x) = (φx_0..φx_j, ψx_j..ψx_n)``."""
    if phi.source != psi.source or phi.target != psi.target:
        raise MismatchedSpaces("maps do not share source and target")
    Y = phi.target
    f, g = phi.assignment, psi.assignment
    out: Chain = {}
    for t, c in chain.items():
        for j in range(len(t)):
            img = tuple(f[x] for x in t[: j + 1]) + tuple(g[x] for x in t[j:])
            if is_generator(Y, img):
                _add(out, img, c if j % 2 == 0 else -c)
    return out


def chain_sub(a: Chain, b: Chain) -> Chain:
    out = dict(a)
    for t, c in b.items():
        _add(out, t, -c)
    return out


def chain_add(a: Chain, b: Chain) -> Chain:
    out = dict(a)
    for t, c in b.items():
        _add(out, t, c)
    return out
