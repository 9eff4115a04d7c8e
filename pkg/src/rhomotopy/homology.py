"""Smith normal form, homology of truncated complexes and induced image ranks."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from . import config
from .complex import TruncatedComplex, inclusion_matrix, is_generator, raise_not_materialized
from .errors import MismatchedSpaces, NotAChainMap, UnsupportedCoefficients
from .linalg import QQ, ZZ, Coefficients, ColumnReducer, SparseMatrix, kernel_basis, matrix_rank
from .space import ShortMap


# --- Smith normal form ---------------------------------------------------

def _eye(k):
    return [[int(i == j) for j in range(k)] for i in range(k)]


def smith_normal_form(M: Sequence[Sequence[int]], _check: bool = True):
    """Return ``(D, U, V)`` with ``U·M·V = D`` diagonal and ``d_1 | d_2 | ...``.

    Pivots are chosen with the smallest nonzero magnitude; all arithmetic is
    on Python integers.
    """
    A = [[int(v) for v in row] for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U, V = _eye(m), _eye(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        if q:
            A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
            U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        if q:
            for row in A:
                row[dst] += q * row[src]
            for row in V:
                row[dst] += q * row[src]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = A[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
            rest_col = [(abs(A[i][t]), i) for i in range(t + 1, m) if A[i][t]]
            rest_row = [(abs(A[t][j]), j) for j in range(t + 1, n) if A[t][j]]
            if rest_col or rest_row:
                if rest_col and (not rest_row or min(rest_col)[0] <= min(rest_row)[0]):
                    swap_rows(t, min(rest_col)[1])
                else:
                    swap_cols(t, min(rest_row)[1])
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-v for v in A[t]]
            U[t] = [-v for v in U[t]]
    if _check and config.DEBUG:
        check_snf(M, A, U, V)
    return A, U, V


def invariant_factors(D) -> List[int]:
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i]]


def _matmul(A, B):
    if not A:
        return []
    cols = list(zip(*B)) if B else []
    return [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in A]


def _is_unimodular(U) -> bool:
    if not U:
        return True
    D, _, _ = smith_normal_form(U, _check=False)
    return all(D[i][i] == 1 for i in range(len(U)))


def check_snf(M, D, U, V) -> None:
    """Assert the SNF postconditions; raises AssertionError."""
    m = len(M)
    n = len(M[0]) if m else 0
    if m and n:
        assert _matmul(_matmul(U, M), V) == D, "U·M·V != D"
    for i in range(m):
        for j in range(n):
            assert i == j or D[i][j] == 0, "D is not diagonal"
    f = invariant_factors(D) if m and n else []
    assert all(v > 0 for v in f), "invariant factors must be positive"
    assert all(b % a == 0 for a, b in zip(f, f[1:])), "divisibility chain broken"
    k = len(f)
    assert all(D[i][i] == 0 for i in range(k, min(m, n))), "zeros must trail"
    assert _is_unimodular(U) and _is_unimodular(V), "transform is not unimodular"


# --- homology ------------------------------------------------------------

@dataclass(frozen=True)
class HomologyGroup:
    rank: int
    torsion: Tuple[int, ...] = ()

    def __str__(self):
        parts = []
        if self.rank:
            parts.append("Z^%d" % self.rank if self.rank > 1 else "Z")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"


def _require(C: TruncatedComplex, *degrees):
    for k in degrees:
        if not C.has_degree(k):
            raise_not_materialized(C, k)


def betti(C: TruncatedComplex, n: int, coefficients: Coefficients = QQ) -> int:
    _require(C, n, n + 1)
    p = coefficients.modulus
    return C.dim(n) - boundary_rank(C, n, p) - boundary_rank(C, n + 1, p)


def boundary_rank(C: TruncatedComplex, n: int, p: Optional[int] = None) -> int:
    return matrix_rank(C.boundary(n), p, C.level_order(n) or None)


def homology(C: TruncatedComplex, n: int, coefficients: Coefficients = QQ) -> HomologyGroup:
    """``H_n(C)``; torsion is reported for integer coefficients only."""
    _require(C, n, n + 1)
    if coefficients.kind != "Z":
        return HomologyGroup(betti(C, n, coefficients))
    d_next = C.boundary(n + 1)
    nonzero_rows = sorted({i for col in d_next.cols for i in col})
    nonzero_cols = [j for j, col in enumerate(d_next.cols) if col]
    torsion: Tuple[int, ...] = ()
    rank_next = 0
    if nonzero_rows:
        pos = {r: k for k, r in enumerate(nonzero_rows)}
        dense = [[0] * len(nonzero_cols) for _ in nonzero_rows]
        for c, j in enumerate(nonzero_cols):
            for i, v in d_next.cols[j].items():
                dense[pos[i]][c] = v
        D, _, _ = smith_normal_form(dense)
        f = invariant_factors(D)
        rank_next = len(f)
        torsion = tuple(v for v in f if v > 1)
    rank = C.dim(n) - boundary_rank(C, n) - rank_next
    return HomologyGroup(rank, torsion)


# --- chain maps ----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ChainMap:
    """Per-degree matrices of a chain map ``source -> target``."""

    source: TruncatedComplex
    target: TruncatedComplex
    matrices: Dict[int, SparseMatrix] = field(default_factory=dict)

    def degree(self, n: int) -> SparseMatrix:
        m = self.matrices.get(n)
        if m is None:
            if self.source.has_degree(n) and self.source.dim(n) == 0:
                return SparseMatrix.zero(self.target.dim(n) if self.target.has_degree(n) else 0, 0)
            raise_not_materialized(self.source, n)
        return m

    def commutes(self, n: int) -> bool:
        """``∂^D_n f_n = f_{n-1} ∂^C_n``."""
        if n <= 0:
            return True
        left = self.target.boundary(n) @ self.degree(n)
        right = self.degree(n - 1) @ self.source.boundary(n)
        return left == right


def _common_degrees(C: TruncatedComplex, D: TruncatedComplex):
    top = max(C.degree_bound, D.degree_bound)
    return [k for k in range(top + 1) if C.has_degree(k) and D.has_degree(k)]


def inclusion_map(C_I: TruncatedComplex, C_J: TruncatedComplex) -> ChainMap:
    return ChainMap(C_I, C_J, {k: inclusion_matrix(C_I, C_J, k) for k in _common_degrees(C_I, C_J)})


def short_map_chain_map(phi: ShortMap, C: TruncatedComplex, D: TruncatedComplex) -> ChainMap:
    """``RC(phi)`` between truncations with the same interval."""
    if phi.source != C.space or phi.target != D.space:
        raise MismatchedSpaces("map does not match the complexes")
    f = phi.assignment
    Y = phi.target
    mats = {}
    for k in _common_degrees(C, D):
        idx = D.index(k)
        cols = []
        for t in C.basis(k):
            img = tuple(f[x] for x in t)
            j = idx.get(img) if is_generator(Y, img) else None
            cols.append({} if j is None else {j: 1})
        mats[k] = SparseMatrix(D.dim(k), tuple(cols))
    return ChainMap(C, D, mats)


def cycle_basis(C: TruncatedComplex, n: int, p: Optional[int] = None) -> List[Dict[int, int]]:
    if n == 0:
        return [{i: 1} for i in range(C.dim(0))]
    return kernel_basis(C.boundary(n), p, C.level_order(n) or None)


def _field_modulus(coefficients: Coefficients) -> Optional[int]:
    if coefficients.kind == "Z":
        raise UnsupportedCoefficients("image ranks are computed over a field (Q or Fp)")
    return coefficients.modulus


def induced_image_rank(f: ChainMap, n: int, coefficients: Coefficients = QQ) -> int:
    """Rank of ``H_n(f)``: ``rank[f(Z_n) | B_n(D)] - rank B_n(D)``."""
    p = _field_modulus(coefficients)
    C, D = f.source, f.target
    _require(C, n)
    _require(D, n, n + 1)
    if not f.commutes(n):
        raise NotAChainMap(f"map does not commute with the boundary in degree {n}")
    fn = f.degree(n)
    red = ColumnReducer(p)
    bd = D.boundary(n + 1)
    for j in D.level_order(n + 1) or range(bd.n_cols):
        red.add(bd.cols[j])
    base = red.rank
    for z in cycle_basis(C, n, p):
        w = fn.apply(z)
        if w:
            red.add(w)
    return red.rank - base


def kernel_rank(f: ChainMap, n: int, coefficients: Coefficients = QQ) -> int:
    """Rank of the kernel of ``H_n(f)``."""
    return betti(f.source, n, coefficients) - induced_image_rank(f, n, coefficients)
