"""Spectral homology ``SH^r_{n,I}`` and the invariants it specializes to.

``SH^r_{n,I}`` is the image of ``H_n(C_{I_r}) -> H_n(C_{I^r})`` where
``I_r = R \\ (L - r)`` and ``I^r = (R + r) \\ L``. Ranks are over ℚ unless
another field is requested; integer coefficients are only accepted for
``r = 0``, where the group is a plain homology group.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from numbers import Integral
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .complex import TruncatedComplex, map_chain, truncated_complex
from .digraph import Digraph, shortest_path_space
from .errors import (
    DegreeBoundRequired,
    DegreeNotMaterialized,
    DualPathMismatch,
    MismatchedSpaces,
    NonIntegerQueryOnDigraph,
    NotComparable,
    UnsupportedCoefficients,
)
from .homology import (
    HomologyGroup,
    betti,
    cycle_basis,
    homology,
    inclusion_map,
    induced_image_rank,
)
from .intervals import (
    ALL,
    Interval,
    format_interval,
    full,
    left_closed_ray,
    lower_expand,
    precedes,
    singleton,
    upper_expand,
)
from .linalg import QQ, ZZ, Coefficients, ColumnReducer, dense_nullspace_q, dense_rank_q, solve_coordinates
from .minimal_model import jumping_points
from .space import QMetSpace, ShortMap, is_inf

IMAGE_FORMULA = "image-formula"
PLAIN_HOMOLOGY = "plain-homology"
CE_PAGE_FORMULA = "ce-page-formula"
LOWDIM_ORACLE = "lowdim-oracle"


@dataclass(frozen=True)
class SHQuery:
    r: object
    n: int
    interval: Interval
    coefficients: Coefficients = QQ
    degree_bound: Optional[int] = None

    def __post_init__(self):
        if self.r < 0:
            raise ValueError("r must be nonnegative")
        if self.n < 0:
            raise ValueError("degree must be nonnegative")

    def describe(self) -> dict:
        return {
            "r": _jsonable(self.r),
            "n": self.n,
            "interval": format_interval(self.interval),
            "coefficients": str(self.coefficients),
            "degree_bound": self.degree_bound,
        }


@dataclass(frozen=True)
class SHResult:
    rank: int
    torsion: Tuple[int, ...] = ()
    provenance: str = IMAGE_FORMULA
    query: Optional[SHQuery] = None


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else int(v)
    return v


# --- complex cache -------------------------------------------------------

@lru_cache(maxsize=16)
def _cached_complex(X: QMetSpace, I: Interval, bound: Optional[int]) -> TruncatedComplex:
    return truncated_complex(X, I, bound)


def clear_cache() -> None:
    _cached_complex.cache_clear()


def complex_for(X: QMetSpace, I: Interval, top: int, degree_bound: Optional[int] = None) -> TruncatedComplex:
    """``C_I`` materialized at least up to degree ``top``."""
    if I.R.kind == ALL:
        if degree_bound is None:
            raise DegreeBoundRequired(f"interval {format_interval(I)} is unbounded above; pass a degree bound")
        if degree_bound < top:
            raise DegreeNotMaterialized(f"degree bound {degree_bound} is below the required degree {top}")
    return _cached_complex(X, I, top)


def _shift(X: QMetSpace, r):
    if isinstance(r, float) and X.backend != "float":
        raise TypeError(f"radius {r!r} is a float but the space uses the {X.backend} backend")
    return X.coerce(r) if X.backend == "float" else r


def expansions(X: QMetSpace, I: Interval, r):
    r = _shift(X, r)
    return lower_expand(I, r), upper_expand(I, r)


# --- SH, SZ, SB ----------------------------------------------------------

def _as_query(r, n, I, coefficients, degree_bound):
    return SHQuery(r, n, I, coefficients, degree_bound)


def sh(
    X: QMetSpace,
    r,
    n: int,
    I: Interval,
    coefficients: Coefficients = QQ,
    degree_bound: Optional[int] = None,
) -> SHResult:
    """Rank of ``SH^r_{n,I}(X)`` by the image formula."""
    q = _as_query(r, n, I, coefficients, degree_bound)
    if r == 0:
        C = complex_for(X, I, n + 1, degree_bound)
        h = homology(C, n, coefficients)
        return SHResult(h.rank, h.torsion, PLAIN_HOMOLOGY, q)
    if coefficients.kind == "Z":
        raise UnsupportedCoefficients("integer coefficients are only supported for r = 0")
    lo, hi = expansions(X, I, r)
    C_lo = complex_for(X, lo, n, degree_bound)
    C_hi = complex_for(X, hi, n + 1, degree_bound)
    rank = induced_image_rank(inclusion_map(C_lo, C_hi), n, coefficients)
    return SHResult(rank, (), IMAGE_FORMULA, q)


def sz(X, r, n, I, coefficients: Coefficients = QQ, degree_bound=None) -> int:
    """Rank of ``Im(H_n(C_{I_r}) -> H_n(C_I))``."""
    if r == 0:
        return betti(complex_for(X, I, n + 1, degree_bound), n, coefficients)
    lo, _ = expansions(X, I, r)
    C_lo = complex_for(X, lo, n, degree_bound)
    C = complex_for(X, I, n + 1, degree_bound)
    return induced_image_rank(inclusion_map(C_lo, C), n, _field(coefficients))


def sb(X, r, n, I, coefficients: Coefficients = QQ, degree_bound=None) -> int:
    """Rank of ``Ker(H_n(C_I) -> H_n(C_{I^r}))``."""
    if r == 0:
        return 0
    _, hi = expansions(X, I, r)
    C = complex_for(X, I, n + 1, degree_bound)
    C_hi = complex_for(X, hi, n + 1, degree_bound)
    field_ = _field(coefficients)
    return betti(C, n, field_) - induced_image_rank(inclusion_map(C, C_hi), n, field_)


def _field(coefficients: Coefficients) -> Coefficients:
    if coefficients.kind == "Z":
        raise UnsupportedCoefficients("integer coefficients are only supported for r = 0")
    return coefficients


def _transfer(C: TruncatedComplex, D: TruncatedComplex, vec: Dict[int, int], n: int) -> Dict[int, int]:
    """Push a degree-n vector of C into D by tuple identity (drops absent tuples)."""
    basis, idx = C.basis(n), D.index(n)
    out = {}
    for i, c in vec.items():
        j = idx.get(basis[i])
        if j is not None:
            out[j] = out.get(j, 0) + c
    return {j: c for j, c in out.items() if c}


def _boundary_reducer(D: TruncatedComplex, n: int, p) -> ColumnReducer:
    red = ColumnReducer(p)
    bd = D.boundary(n + 1)
    for j in D.level_order(n + 1) or range(bd.n_cols):
        red.add(bd.cols[j])
    return red


@dataclass
class SubquotientCheck:
    sz: int
    sb: int
    sh: int
    contained: bool


def check_sb_in_sz(X, r, n, I, coefficients: Coefficients = QQ, degree_bound=None) -> SubquotientCheck:
    """Compute SZ and SB as subspaces of ``H_n(C_I)`` and test ``SB ⊆ SZ``."""
    field_ = _field(coefficients) if r != 0 else (QQ if coefficients.kind == "Z" else coefficients)
    p = field_.modulus
    lo, hi = expansions(X, I, r)
    C_lo = complex_for(X, lo, n, degree_bound)
    C = complex_for(X, I, n + 1, degree_bound)
    C_hi = complex_for(X, hi, n + 1, degree_bound)
    # SZ: images of lower cycles modulo boundaries of C_I
    red_sz = _boundary_reducer(C, n, p)
    base = red_sz.rank
    for z in cycle_basis(C_lo, n, p):
        w = _transfer(C_lo, C, z, n)
        if w:
            red_sz.add(w)
    sz_rank = red_sz.rank - base
    # SB: combinations of cycles of C_I that become boundaries in C_{I^r}
    cycles = cycle_basis(C, n, p)
    red_hi = _boundary_reducer(C_hi, n, p)
    sb_cycles = []
    for k, z in enumerate(cycles):
        w = _transfer(C, C_hi, z, n)
        independent, _, comb = red_hi.add(w, {k: 1})
        if not independent:
            sb_cycles.append(comb)
    red_c = _boundary_reducer(C, n, p)
    base_c = red_c.rank
    sb_classes = []
    contained = True
    for comb in sb_cycles:
        vec: Dict[int, int] = {}
        for k, a in comb.items():
            for i, v in cycles[k].items():
                s = vec.get(i, 0) + a * v
                vec[i] = s % p if p else s
        vec = {i: v for i, v in vec.items() if v}
        if vec:
            sb_classes.append(vec)
        if vec and red_sz.reduce(vec)[0]:
            contained = False
    for vec in sb_classes:
        red_c.add(vec)
    sb_rank = red_c.rank - base_c
    sh_rank = sh(X, r, n, I, field_, degree_bound).rank
    return SubquotientCheck(sz_rank, sb_rank, sh_rank, contained)


# --- SH as a module with explicit bases ------------------------------------

class SHModule:
    """``SH^r_{n,I}(X)`` with a basis of cycle representatives in ``C_{I_r}``.

    :meth:`coordinates` expresses a degree-n chain of ``C_{I^r}`` (assumed to
    represent a class in the image) in that basis.
    """

    def __init__(self, X: QMetSpace, r, n: int, I: Interval, coefficients: Coefficients = QQ, degree_bound=None):
        self.space, self.r, self.n, self.interval = X, r, n, I
        self.coefficients = _field(coefficients)
        p = self.p = self.coefficients.modulus
        self.lower, self.upper = expansions(X, I, r)
        self.C_lo = complex_for(X, self.lower, n, degree_bound)
        self.C_hi = complex_for(X, self.upper, n + 1, degree_bound)
        self._red = _boundary_reducer(self.C_hi, n, p)
        self.generators: List[Dict[Tuple[int, ...], int]] = []
        for z in cycle_basis(self.C_lo, n, p):
            w = _transfer(self.C_lo, self.C_hi, z, n)
            if not w:
                continue
            independent, _, _ = self._red.add(w, {len(self.generators): 1})
            if independent:
                self.generators.append(self.C_lo.chain(z, n))

    @property
    def rank(self) -> int:
        return len(self.generators)

    def coordinates(self, chain) -> List:
        vec = self.C_hi.vector(chain, self.n)
        zero = 0 if self.p else Fraction(0)
        if not vec:
            return [zero] * self.rank
        c = solve_coordinates(self._red, vec, self.p)
        if c is None:
            raise ValueError("chain does not represent a class of the image")
        return [c.get(k, zero) for k in range(self.rank)]


def _matrix_from(source: SHModule, target: SHModule, push) -> List[List]:
    cols = [target.coordinates(push(g)) for g in source.generators]
    return [[cols[j][i] for j in range(len(cols))] for i in range(target.rank)]


def sh_induced(phi: ShortMap, r, n: int, I: Interval, coefficients: Coefficients = QQ, degree_bound=None,
               modules: Optional[Tuple[SHModule, SHModule]] = None) -> List[List]:
    """Matrix of ``SH^r_{n,I}(phi)`` in the computed bases (rows: target)."""
    src, dst = modules or (
        SHModule(phi.source, r, n, I, coefficients, degree_bound),
        SHModule(phi.target, r, n, I, coefficients, degree_bound),
    )
    if src.space != phi.source or dst.space != phi.target:
        raise MismatchedSpaces("modules do not match the map")
    return _matrix_from(src, dst, lambda g: map_chain(phi, g))


def interval_map(X: QMetSpace, r, n: int, I: Interval, J: Interval, coefficients: Coefficients = QQ,
                 degree_bound=None, modules: Optional[Tuple[SHModule, SHModule]] = None) -> List[List]:
    """Matrix of ``f_{I,J}: SH^r_{n,I} -> SH^r_{n,J}`` for ``I ≼ J``."""
    if not precedes(I, J):
        raise NotComparable(f"{format_interval(I)} does not precede {format_interval(J)}")
    src, dst = modules or (SHModule(X, r, n, I, coefficients, degree_bound), SHModule(X, r, n, J, coefficients, degree_bound))
    return _matrix_from(src, dst, lambda g: g)


def matmul(A, B, p=None):
    if not A or not B:
        rows = len(A)
        cols = len(B[0]) if B else 0
        return [[0] * cols for _ in range(rows)]
    out = [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]
    if p:
        out = [[v % p for v in row] for row in out]
    return out


# --- named specializations -----------------------------------------------

def magnitude_homology(X: QMetSpace, n: int, ell, coefficients: Coefficients = ZZ) -> HomologyGroup:
    return homology(complex_for(X, singleton(ell), n + 1), n, coefficients)


def blurred_magnitude_homology(X: QMetSpace, n: int, ell, coefficients: Coefficients = QQ) -> HomologyGroup:
    """``H_n(F_ℓ RC(X))`` computed directly on the sublevel complex."""
    return homology(complex_for(X, left_closed_ray(ell), n + 1), n, coefficients)


def reachability_homology(X: QMetSpace, n: int, degree_bound: int, coefficients: Coefficients = ZZ) -> HomologyGroup:
    """``H_n`` of the whole reachability complex; checked at r = 0 and r = 1."""
    if degree_bound is None or degree_bound < n + 1:
        raise DegreeBoundRequired("reachability homology needs a degree bound of at least n + 1")
    zero = sh(X, 0, n, full(), coefficients, degree_bound)
    field_ = QQ if coefficients.kind == "Z" else coefficients
    one = sh(X, _unit(X), n, full(), field_, degree_bound)
    if zero.rank != one.rank:
        raise DualPathMismatch(f"reachability rank differs between r=0 ({zero.rank}) and r=1 ({one.rank})")
    return HomologyGroup(zero.rank, zero.torsion)


def _unit(X: QMetSpace):
    return 1.0 if X.backend == "float" else 1


def path_homology_rank(G: Union[Digraph, QMetSpace], n: int) -> int:
    """Rank of path homology via ``SH^1_{n,{n}}``."""
    return mpss_page(G, 2, n, n)


# --- persistence ---------------------------------------------------------

@dataclass(frozen=True)
class PersistenceDiagram:
    """Bars ``(birth, death)``; a class is alive on ``[birth, death)``."""

    bars: Tuple[Tuple[object, object], ...]
    degree: int
    radius: object
    axis: Tuple[object, ...] = ()
    ranks: Tuple[int, ...] = ()

    def rank_at(self, ell) -> int:
        return sum(1 for b, d in self.bars if b <= ell < d)


def achieved_levels(X: QMetSpace, degrees: Sequence[int]) -> List:
    """Distinct levels of all generators in the given degrees (τ-grouped)."""
    from .complex import enumerate_tuples
    from .space import group_values

    values = []
    for k in degrees:
        _, lv = enumerate_tuples(X, k, full(), degree_bound=k)
        values.extend(lv)
    return group_values(values, X.tau)[0]


def persistence_axis(X: QMetSpace, r, n: int) -> List:
    levels = achieved_levels(X, [n, n + 1])
    pts = set(levels)
    if r != 0:
        pts.update(c - r for c in levels if c - r >= 0)
    axis = sorted(pts)
    # merge float points closer than tau
    merged = []
    for v in axis:
        if merged and v - merged[-1] <= X.tau:
            continue
        merged.append(v)
    top = merged[-1] if merged else 0
    merged.append(top + (1.0 if X.backend == "float" else 1))
    return merged


def persistent_sh(X: QMetSpace, r, n: int, coefficients: Coefficients = QQ) -> PersistenceDiagram:
    """Barcode of ``ℓ ↦ SH^r_{n,(-∞,ℓ]}`` via the rank function.

    ``β(i, j)`` is the rank of ``H_n(F_{a_i}) -> H_n(F_{a_j + r})``, which is
    the rank of the structure map between the values at ``a_i`` and ``a_j``.
    """
    field_ = _field(coefficients) if r != 0 else (QQ if coefficients.kind == "Z" else coefficients)
    r = _shift(X, r)
    axis = persistence_axis(X, r, n)
    m = len(axis)
    lows = [complex_for(X, left_closed_ray(a), n + 1) for a in axis]
    highs = [complex_for(X, left_closed_ray(a + r), n + 1) for a in axis] if r != 0 else lows
    beta = {}
    for i in range(m):
        for j in range(i, m):
            beta[i, j] = induced_image_rank(inclusion_map(lows[i], highs[j]), n, field_)
    B = lambda i, j: beta[i, j] if i >= 0 and i <= j else 0
    bars = []
    for i in range(m):
        for j in range(i + 1, m):
            mult = B(i, j - 1) - B(i, j) - B(i - 1, j - 1) + B(i - 1, j)
            bars.extend([(axis[i], axis[j])] * mult)
        inf_mult = B(i, m - 1) - B(i - 1, m - 1)
        bars.extend([(axis[i], math.inf)] * inf_mult)
    ranks = tuple(beta[i, i] for i in range(m))
    return PersistenceDiagram(tuple(bars), n, r, tuple(axis), ranks)


# --- magnitude-path spectral sequence ------------------------------------

def _digraph_space(G: Union[Digraph, QMetSpace]) -> QMetSpace:
    X = shortest_path_space(G) if isinstance(G, Digraph) else G
    if X.backend != "int":
        raise NonIntegerQueryOnDigraph("page queries need an integer-valued space")
    return X


def _check_integer(*values):
    for v in values:
        if isinstance(v, bool) or not (isinstance(v, Integral) or (isinstance(v, Fraction) and v.denominator == 1)):
            raise NonIntegerQueryOnDigraph(
                f"digraph page queries take integer indices only, got {v}; "
                "non-integer levels are not covered by the page identification"
            )


def mpss_page(G: Union[Digraph, QMetSpace], s: int, n: int, ell: int, coefficients: Coefficients = QQ) -> int:
    """``rank E^s_{ℓ, n-ℓ} = rank SH^{s-1}_{n,{ℓ}}``."""
    _check_integer(s, n, ell)
    if s < 1:
        raise ValueError("pages start at s = 1")
    X = _digraph_space(G)
    field_ = QQ if coefficients.kind == "Z" else coefficients
    return sh(X, int(s) - 1, int(n), singleton(int(ell)), field_).rank


def _tuples_between(X: QMetSpace, k: int, lo: int, hi: int) -> List[Tuple[int, ...]]:
    """Brute force: degree-k generators with integer level in ``[lo, hi]``."""
    D = X.dist
    out = []
    for t in itertools.product(X.points, repeat=k + 1):
        level = 0
        for a, b in zip(t, t[1:]):
            if a == b or is_inf(D[a][b]):
                break
            level += D[a][b]
        else:
            if lo <= level <= hi:
                out.append(t)
    return out


class _DenseQuotient:
    """``F_hi / F_{lo-1}`` for integer filtration levels, in dense form."""

    def __init__(self, X: QMetSpace, lo: int, hi: int, top: int):
        self.bases = [_tuples_between(X, k, lo, hi) for k in range(top + 1)]
        self.index = [{t: i for i, t in enumerate(b)} for b in self.bases]

    def dim(self, k):
        return len(self.bases[k]) if 0 <= k < len(self.bases) else 0

    def boundary_rows(self, k):
        """Dense ``∂_k`` as a list of rows."""
        rows = [[0] * self.dim(k) for _ in range(self.dim(k - 1))]
        if k <= 0:
            return rows
        idx = self.index[k - 1]
        for j, t in enumerate(self.bases[k]):
            for i in range(k + 1):
                face = t[:i] + t[i + 1:]
                if any(a == b for a, b in zip(face, face[1:])):
                    continue
                row = idx.get(face)
                if row is not None:
                    rows[row][j] += -1 if i % 2 else 1
        return rows

    def cycles(self, k):
        if k == 0:
            return [[Fraction(int(i == j)) for i in range(self.dim(0))] for j in range(self.dim(0))]
        return dense_nullspace_q(self.boundary_rows(k), self.dim(k))

    def betti(self, k):
        return self.dim(k) - dense_rank_q(self.boundary_rows(k)) - dense_rank_q(self.boundary_rows(k + 1))


def _dense_image_rank(A: _DenseQuotient, B: _DenseQuotient, k: int) -> int:
    """Rank of ``H_k(A) -> H_k(B)`` for the projection on common tuples."""
    bdry = B.boundary_rows(k + 1)
    n_rows = B.dim(k)
    cols = [[bdry[i][j] for i in range(n_rows)] for j in range(B.dim(k + 1))]
    rank_b = dense_rank_q(cols) if cols else 0
    images = []
    for z in A.cycles(k):
        w = [Fraction(0)] * n_rows
        for i, c in enumerate(z):
            if c:
                j = B.index[k].get(A.bases[k][i])
                if j is not None:
                    w[j] += c
        images.append(w)
    total = cols + images
    return (dense_rank_q(total) if total and n_rows else 0) - rank_b


def mpss_page_ce(G: Union[Digraph, QMetSpace], s: int, n: int, ell: int) -> int:
    """Page rank from ``E^s = Z^s / B^s`` on the integer filtration, with

    ``Z^s = Im(H_n(F_ℓ/F_{ℓ-s}) -> H_n(F_ℓ/F_{ℓ-1}))`` and
    ``B^s = Ker(H_n(F_ℓ/F_{ℓ-1}) -> H_n(F_{ℓ+s-1}/F_{ℓ-1}))``.
    """
    _check_integer(s, n, ell)
    if s < 1:
        raise ValueError("pages start at s = 1")
    s, n, ell = int(s), int(n), int(ell)
    X = _digraph_space(G)
    top = n + 1
    graded = _DenseQuotient(X, ell, ell, top)
    deep = _DenseQuotient(X, ell - s + 1, ell, top)
    wide = _DenseQuotient(X, ell, ell + s - 1, top)
    z_rank = _dense_image_rank(deep, graded, n)
    b_rank = graded.betti(n) - _dense_image_rank(graded, wide, n)
    return z_rank - b_rank


@dataclass(frozen=True)
class PageTable:
    page: int
    entries: Dict[Tuple[int, int], int]
    provenance: str = IMAGE_FORMULA

    def rank(self, ell: int, n: int) -> int:
        return self.entries.get((ell, n), 0)


def page_table(G, s: int, max_n: int, max_ell: int, method: str = IMAGE_FORMULA) -> PageTable:
    fn = mpss_page if method == IMAGE_FORMULA else mpss_page_ce
    entries = {}
    for n in range(max_n + 1):
        for ell in range(max_ell + 1):
            v = fn(G, s, n, ell)
            if v:
                entries[(ell, n)] = v
    return PageTable(s, entries, method)


# --- decomposition ledger ------------------------------------------------

@dataclass
class DecompositionReport:
    jumping_points: Tuple[object, ...]
    model_sizes: Tuple[int, ...]
    summands: Dict[Tuple[int, int, int], Tuple[int, ...]] = field(default_factory=dict)
    totals: Dict[Tuple[int, int, int], int] = field(default_factory=dict)
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_decomposition(G: Union[Digraph, QMetSpace], max_page: int, max_n: int, max_ell: int) -> DecompositionReport:
    """Rank bookkeeping for the splitting of the page sequence along the
    nested minimal models ``G = M_{r_0} ⊃ M_{r_1} ⊃ ... ⊃ M_{r_K}``.

    Summand ``[k]`` (k = 1..K) has rank ``E^s(M_{r_{k-1}}) - E^s(M_{r_k})``;
    the last summand is ``E^s(M_{r_K})``.
    """
    X = _digraph_space(G)
    jp = jumping_points(X)
    models = [X] + [X.subspace(m.subset) for m in jp.models]
    report = DecompositionReport(tuple(jp.points), tuple(len(M) for M in models))
    for s in range(1, max_page + 1):
        for n in range(max_n + 1):
            for ell in range(max_ell + 1):
                ranks = [mpss_page(M, s, n, ell) for M in models]
                parts = tuple(ranks[k - 1] - ranks[k] for k in range(1, len(models))) + (ranks[-1],)
                key = (s, n, ell)
                report.summands[key] = parts
                report.totals[key] = ranks[0]
                if any(v < 0 for v in parts):
                    report.failures.append(f"negative summand rank at page {s}, n={n}, ℓ={ell}: {parts}")
                if sum(parts) != ranks[0]:
                    report.failures.append(f"summands do not add up at page {s}, n={n}, ℓ={ell}")
                for k, rk in enumerate(jp.points, start=1):
                    if s >= rk + 1 and parts[k - 1] != 0:
                        report.failures.append(
                            f"summand [{k}] (r={rk}) is nonzero at page {s}, n={n}, ℓ={ell}"
                        )
    return report
