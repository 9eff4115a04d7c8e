"""Finite quasimetric spaces, short maps and r-homotopy of points and maps.

Distances live in one of three numeric backends fixed per space:

* ``"int"``       exact Python integers (shortest-path distances of digraphs)
* ``"rational"``  exact :class:`fractions.Fraction`
* ``"float"``     binary floats (point clouds)

``math.inf`` is the distinguished infinite distance in every backend. Exact
backends compare with tolerance 0; float spaces carry a grouping tolerance
``tau`` used by :meth:`QMetSpace.le` and :meth:`QMetSpace.lt`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Integral, Rational
from typing import Optional, Sequence, Tuple

import numpy as np

from .errors import (
    BackendMismatch,
    MismatchedSpaces,
    NegativeEntry,
    NonzeroDiagonal,
    NotAShortMap,
    NotSquare,
    TriangleViolation,
    ZeroOffDiagonal,
)
from .unionfind import DisjointSet

INF = math.inf
BACKENDS = ("int", "rational", "float")
DEFAULT_TAU = 1e-9


def is_inf(value) -> bool:
    return isinstance(value, float) and value == INF


def infer_backend(values) -> str:
    backend = "int"
    for v in values:
        if is_inf(v):
            continue
        if isinstance(v, bool):
            raise BackendMismatch("booleans are not distances")
        if isinstance(v, float):
            return "float"
        if isinstance(v, Integral):
            continue
        if isinstance(v, Rational):
            backend = "rational"
            continue
        raise BackendMismatch(f"unsupported distance value {v!r}")
    return backend


def coerce(value, backend: str):
    """Convert ``value`` into ``backend`` without losing precision.

    Exact backends refuse binary floats; the float backend refuses fractions.
    """
    if is_inf(value):
        return INF
    if isinstance(value, bool):
        raise BackendMismatch("booleans are not distances")
    if backend == "int":
        if isinstance(value, Integral):
            return int(value)
        if isinstance(value, Rational):
            if value.denominator == 1:
                return int(value.numerator)
            return Fraction(value)
        raise BackendMismatch(f"{value!r} is not exact; space uses the int backend")
    if backend == "rational":
        if isinstance(value, (Integral, Rational)) and not isinstance(value, float):
            return Fraction(value)
        raise BackendMismatch(f"{value!r} is not exact; space uses the rational backend")
    if backend == "float":
        if isinstance(value, float):
            return value
        if isinstance(value, Integral):
            return float(value)
        raise BackendMismatch(f"{value!r} is exact; space uses the float backend")
    raise ValueError(f"unknown backend {backend!r}")


@dataclass(frozen=True, eq=False)
class QMetSpace:
    """A validated finite quasimetric space.

    Construct through :func:`validate_space`; the constructor itself does not
    check the axioms. Points are identified by index, ``labels`` are metadata.
    """

    dist: Tuple[Tuple[object, ...], ...]
    backend: str
    labels: Tuple[object, ...]
    coords: Optional[Tuple[Tuple[float, ...], ...]] = None
    tau: float = 0.0
    _key: tuple = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_key", (self.backend, self.dist))

    def __len__(self) -> int:
        return len(self.dist)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, QMetSpace):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    @property
    def points(self) -> range:
        return range(len(self.dist))

    def d(self, x: int, y: int):
        return self.dist[x][y]

    # tolerant comparisons; tau is 0 for exact backends
    def le(self, a, b) -> bool:
        return a <= b + self.tau

    def lt(self, a, b) -> bool:
        return a < b - self.tau

    def eq(self, a, b) -> bool:
        if is_inf(a) or is_inf(b):
            return a == b
        return abs(a - b) <= self.tau

    def coerce(self, value):
        return coerce(value, self.backend)

    def subspace(self, indices: Sequence[int]) -> "QMetSpace":
        idx = tuple(indices)
        dist = tuple(tuple(self.dist[i][j] for j in idx) for i in idx)
        coords = None if self.coords is None else tuple(self.coords[i] for i in idx)
        return QMetSpace(dist, self.backend, tuple(self.labels[i] for i in idx), coords, self.tau)

    def finite_values(self):
        """Sorted distinct finite positive distances (tau-grouped for floats)."""
        return group_values(
            [v for row in self.dist for v in row if not is_inf(v) and v != 0], self.tau
        )[0]

    def is_symmetric(self) -> bool:
        n = len(self)
        return all(self.eq(self.dist[i][j], self.dist[j][i]) for i in range(n) for j in range(i))


def group_values(values, tau):
    """Sort and merge values whose consecutive gaps are at most ``tau``.

    Returns ``(representatives, merged_groups)``; each representative is the
    smallest member of its group, and ``merged_groups`` lists every group that
    contained more than one distinct value.
    """
    distinct = sorted(set(values))
    reps, merged = [], []
    group = []
    for v in distinct:
        if group and v - group[-1] > tau:
            reps.append(group[0])
            if len(group) > 1:
                merged.append(tuple(group))
            group = []
        group.append(v)
    if group:
        reps.append(group[0])
        if len(group) > 1:
            merged.append(tuple(group))
    return reps, merged


def validate_space(matrix, backend=None, labels=None, coords=None, tau=DEFAULT_TAU) -> QMetSpace:
    """Check the quasimetric axioms and return a :class:`QMetSpace`.

    ``tau`` only applies to the float backend; the triangle inequality is
    then checked up to ``tau`` to absorb rounding of computed distances.
    """
    rows = [list(r) for r in matrix]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise NotSquare(f"distance matrix is not square ({n} rows)")
    flat = [v for r in rows for v in r]
    if backend is None:
        backend = infer_backend(flat)
    rows = [[coerce(v, backend) for v in r] for r in rows]
    if backend == "int" and any(isinstance(v, Fraction) for r in rows for v in r):
        raise BackendMismatch("non-integral entry in an int-backend matrix")
    tol = tau if backend == "float" else 0
    for i in range(n):
        for j in range(n):
            v = rows[i][j]
            if isinstance(v, float) and math.isnan(v):
                raise NegativeEntry(i, j, v)
            if v < 0:
                raise NegativeEntry(i, j, v)
            if i == j and v != 0:
                raise NonzeroDiagonal(i, v)
            if i != j and v == 0:
                raise ZeroOffDiagonal(i, j)
    if backend == "float":
        _check_triangle_float(rows, tol)
    else:
        for x in range(n):
            rx = rows[x]
            for y in range(n):
                dxy = rx[y]
                if is_inf(dxy):
                    continue
                ry = rows[y]
                for z in range(n):
                    if rx[z] > dxy + ry[z]:
                        raise TriangleViolation(x, y, z)
    if labels is None:
        labels = tuple(range(n))
    elif len(labels) != n:
        raise ValueError("labels must have one entry per point")
    if coords is not None:
        coords = tuple(tuple(float(c) for c in p) for p in coords)
        if len(coords) != n:
            raise ValueError("coords must have one entry per point")
    return QMetSpace(
        tuple(tuple(r) for r in rows), backend, tuple(labels), coords, tol
    )


def _check_triangle_float(rows, tol):
    D = np.array(rows, dtype=float)
    for y in range(len(rows)):
        bad = D > np.add.outer(D[:, y], D[y, :]) + tol
        if bad.any():
            x, z = map(int, np.argwhere(bad)[0])
            raise TriangleViolation(x, y, z)


@dataclass(frozen=True)
class ShortMap:
    """A distance non-increasing map, stored as a tuple of target indices."""

    source: QMetSpace
    target: QMetSpace
    assignment: Tuple[int, ...]

    def __post_init__(self):
        a = tuple(int(v) for v in self.assignment)
        object.__setattr__(self, "assignment", a)
        if len(a) != len(self.source):
            raise NotAShortMap("assignment length differs from the source size")
        if any(not 0 <= v < len(self.target) for v in a):
            raise NotAShortMap("assignment points outside the target")
        bad = first_non_short_pair(self.source, self.target, a)
        if bad is not None:
            x, y = bad
            raise NotAShortMap(f"d(f({x}),f({y})) > d({x},{y})")

    def __call__(self, x: int) -> int:
        return self.assignment[x]

    def __len__(self):
        return len(self.assignment)

    def is_injective(self) -> bool:
        return len(set(self.assignment)) == len(self.assignment)

    def is_identity(self) -> bool:
        return self.source == self.target and all(i == v for i, v in enumerate(self.assignment))


def first_non_short_pair(source: QMetSpace, target: QMetSpace, assignment):
    sd, td = source.dist, target.dist
    n = len(assignment)
    for x in range(n):
        fx = assignment[x]
        for y in range(n):
            if not target.le(td[fx][assignment[y]], sd[x][y]):
                return x, y
    return None


def is_short(source: QMetSpace, target: QMetSpace, assignment) -> bool:
    return first_non_short_pair(source, target, assignment) is None


def identity(X: QMetSpace) -> ShortMap:
    return ShortMap(X, X, tuple(X.points))


def compose(f: ShortMap, g: ShortMap) -> ShortMap:
    """Return ``f ∘ g`` (apply ``g`` first)."""
    if g.target != f.source:
        raise MismatchedSpaces("cannot compose: target of g is not the source of f")
    out = tuple(f.assignment[v] for v in g.assignment)
    return ShortMap(g.source, f.target, out)


def _check_parallel(phi: ShortMap, psi: ShortMap) -> None:
    if phi.source != psi.source or phi.target != psi.target:
        raise MismatchedSpaces("maps do not share source and target")


def map_distance(phi: ShortMap, psi: ShortMap):
    """Sup-distance ``max_x d(phi(x), psi(x))``."""
    _check_parallel(phi, psi)
    td = phi.target.dist
    return max((td[a][b] for a, b in zip(phi.assignment, psi.assignment)), default=0)


def homotopy_classes(X: QMetSpace, r, strict: bool = False) -> DisjointSet:
    """Components of the symmetrized threshold graph ``d <= r`` (or ``d < r``)."""
    ds = DisjointSet(X.points)
    test = X.lt if strict else X.le
    for x in X.points:
        row = X.dist[x]
        for y in X.points:
            if x != y and test(row[y], r):
                ds.union(x, y)
    return ds


def points_r_homotopic(X: QMetSpace, x: int, y: int, r) -> bool:
    if x == y:
        return True
    return homotopy_classes(X, r).connected(x, y)


@dataclass(frozen=True)
class HomotopyChain:
    maps: Tuple[ShortMap, ...]
    radius: object

    def __post_init__(self):
        object.__setattr__(self, "maps", tuple(self.maps))
        if not self.maps:
            raise ValueError("a homotopy chain needs at least one map")

    def __len__(self):
        return len(self.maps)


def verify_homotopy_chain(chain: HomotopyChain) -> bool:
    """Certificate check: consecutive maps are within ``radius`` in some direction."""
    maps = chain.maps
    first = maps[0]
    for m in maps[1:]:
        _check_parallel(first, m)
    space = first.target
    for a, b in zip(maps, maps[1:]):
        if not (space.le(map_distance(a, b), chain.radius) or space.le(map_distance(b, a), chain.radius)):
            return False
    return True


def is_isometry_matrix(X: QMetSpace, Y: QMetSpace, assignment) -> bool:
    return all(
        X.eq(Y.dist[assignment[x]][assignment[y]], X.dist[x][y]) for x in X.points for y in X.points
    )
