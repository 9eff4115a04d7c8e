"""Sparse exact linear algebra over ℚ and 𝔽_p.

Columns are ``dict[row -> int]``. Over ℚ all arithmetic is fraction-free on
Python integers (each reduced column is divided by its content), so ranks and
kernels are exact and entries stay small on boundary matrices.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

Column = Dict[int, int]


@dataclass(frozen=True)
class Coefficients:
    """Coefficient ring: ``Z``, ``Q`` or ``Fp`` with prime ``p``."""

    kind: str = "Q"
    p: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("Z", "Q", "Fp"):
            raise ValueError(f"unknown coefficients {self.kind!r}")
        if self.kind == "Fp":
            if self.p is None or self.p < 2 or any(self.p % q == 0 for q in range(2, int(self.p ** 0.5) + 1)):
                raise ValueError(f"Fp needs a prime p, got {self.p!r}")
        elif self.p is not None:
            raise ValueError("only Fp takes a modulus")

    @property
    def modulus(self) -> Optional[int]:
        """Prime for 𝔽_p, None for the characteristic-zero rings."""
        return self.p if self.kind == "Fp" else None

    def __str__(self):
        return f"F{self.p}" if self.kind == "Fp" else self.kind

    @classmethod
    def parse(cls, text: str, p: Optional[int] = None) -> "Coefficients":
        t = text.strip()
        if t in ("Z", "Q"):
            return cls(t)
        if t == "Fp":
            return cls("Fp", p)
        if t.startswith("F") and t[1:].isdigit():
            return cls("Fp", int(t[1:]))
        raise ValueError(f"unknown coefficients {text!r}")


ZZ = Coefficients("Z")
QQ = Coefficients("Q")


def Fp(p: int) -> Coefficients:
    return Coefficients("Fp", p)


@dataclass(frozen=True)
class SparseMatrix:
    """Column-major sparse integer matrix."""

    n_rows: int
    cols: Tuple[Column, ...]

    @property
    def n_cols(self) -> int:
        return len(self.cols)

    @property
    def shape(self):
        return (self.n_rows, self.n_cols)

    def to_dense(self) -> List[List[int]]:
        out = [[0] * self.n_cols for _ in range(self.n_rows)]
        for j, col in enumerate(self.cols):
            for i, v in col.items():
                out[i][j] = v
        return out

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]], n_cols: Optional[int] = None) -> "SparseMatrix":
        n_rows = len(rows)
        n_cols = len(rows[0]) if rows else (n_cols or 0)
        cols = tuple({i: int(rows[i][j]) for i in range(n_rows) if rows[i][j]} for j in range(n_cols))
        return cls(n_rows, cols)

    @classmethod
    def zero(cls, n_rows: int, n_cols: int) -> "SparseMatrix":
        return cls(n_rows, tuple({} for _ in range(n_cols)))

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, tuple({i: 1} for i in range(n)))

    def apply(self, vec: Column) -> Column:
        out: Column = {}
        for j, c in vec.items():
            for i, v in self.cols[j].items():
                s = out.get(i, 0) + c * v
                if s:
                    out[i] = s
                else:
                    out.pop(i, None)
        return out

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.n_cols != other.n_rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return SparseMatrix(self.n_rows, tuple(self.apply(c) for c in other.cols))

    def is_zero(self) -> bool:
        return not any(self.cols)

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and all(
            {k: v for k, v in a.items() if v} == {k: v for k, v in b.items() if v}
            for a, b in zip(self.cols, other.cols)
        )

    def __hash__(self):
        return hash((self.n_rows, len(self.cols)))

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        cols = []
        for a, b in zip(self.cols, other.cols):
            c = dict(a)
            for k, v in b.items():
                s = c.get(k, 0) - v
                if s:
                    c[k] = s
                else:
                    c.pop(k, None)
            cols.append(c)
        return SparseMatrix(self.n_rows, tuple(cols))


def _content(col: Column, comb: Optional[dict]) -> int:
    g = 0
    for v in col.values():
        g = gcd(g, v)
        if g == 1:
            return 1
    if comb:
        for v in comb.values():
            g = gcd(g, v)
            if g == 1:
                return 1
    return g


class ColumnReducer:
    """Incremental column echelon form keyed by the lowest (largest) row.

    Over ℚ (``p is None``) a reduction step is ``v <- a*v - b*pivot`` with
    integer ``a, b``; the optional ``comb`` dict records the same linear
    combination of caller-supplied generator tags, so the relation
    ``v ≡ Σ comb[t]·g_t`` (modulo untracked columns) is preserved exactly.
    """

    def __init__(self, p: Optional[int] = None):
        self.p = p
        self.pivots: Dict[int, Tuple[Column, Optional[dict]]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, col: Column, comb: Optional[dict] = None):
        col = {k: v for k, v in col.items() if v}
        comb = None if comb is None else dict(comb)
        p = self.p
        if p is not None:
            col = {k: v % p for k, v in col.items() if v % p}
            if comb is not None:
                comb = {k: v % p for k, v in comb.items() if v % p}
        pivots = self.pivots
        while col:
            low = max(col)
            entry = pivots.get(low)
            if entry is None:
                break
            pcol, pcomb = entry
            b = col[low]
            if p is not None:
                # pivot entries are normalized to 1
                _axpy_mod(col, pcol, -b, p)
                if comb is not None and pcomb:
                    _axpy_mod(comb, pcomb, -b, p)
                continue
            a = pcol[low]
            if a == 1 or a == -1:
                _axpy(col, pcol, -b * a)
                if comb is not None and pcomb:
                    _axpy(comb, pcomb, -b * a)
            else:
                g = gcd(a, b)
                ma, mb = a // g, b // g
                if ma != 1:
                    for k in col:
                        col[k] *= ma
                    if comb is not None:
                        for k in comb:
                            comb[k] *= ma
                _axpy(col, pcol, -mb)
                if comb is not None and pcomb:
                    _axpy(comb, pcomb, -mb)
                c = _content(col, comb)
                if c > 1:
                    col = {k: v // c for k, v in col.items()}
                    if comb is not None:
                        comb = {k: v // c for k, v in comb.items()}
        return col, comb

    def add(self, col: Column, comb: Optional[dict] = None):
        """Reduce and insert ``col``; returns ``(independent, residual, comb)``."""
        col, comb = self.reduce(col, comb)
        if not col:
            return False, col, comb
        low = max(col)
        if self.p is not None:
            inv = pow(col[low], -1, self.p)
            if inv != 1:
                col = {k: v * inv % self.p for k, v in col.items()}
                if comb is not None:
                    comb = {k: v * inv % self.p for k, v in comb.items()}
        else:
            c = _content(col, comb)
            if col[low] < 0:
                c = -c
            if c != 1:
                col = {k: v // c for k, v in col.items()}
                if comb is not None:
                    comb = {k: v // c for k, v in comb.items()}
        self.pivots[low] = (col, comb)
        return True, col, comb


def _axpy(y: dict, x: dict, a: int) -> None:
    for k, v in x.items():
        s = y.get(k, 0) + a * v
        if s:
            y[k] = s
        else:
            y.pop(k, None)


def _axpy_mod(y: dict, x: dict, a: int, p: int) -> None:
    for k, v in x.items():
        s = (y.get(k, 0) + a * v) % p
        if s:
            y[k] = s
        else:
            y.pop(k, None)


def rank(columns: Iterable[Column], p: Optional[int] = None) -> int:
    red = ColumnReducer(p)
    for col in columns:
        red.add(col)
    return red.rank


def matrix_rank(M: SparseMatrix, p: Optional[int] = None, order: Optional[Sequence[int]] = None) -> int:
    if order is None:
        return rank(M.cols, p)
    return rank((M.cols[j] for j in order), p)


def kernel_basis(M: SparseMatrix, p: Optional[int] = None, order: Optional[Sequence[int]] = None) -> List[Column]:
    """Basis of the null space of ``M`` as sparse vectors over its columns."""
    red = ColumnReducer(p)
    out = []
    for j in (range(M.n_cols) if order is None else order):
        col = M.cols[j]
        independent, _, comb = red.add(col, {j: 1})
        if not independent:
            out.append(comb)
    return out


SELF = "__self__"


def solve_coordinates(red: ColumnReducer, vec: Column, p: Optional[int] = None):
    """Coefficients ``c`` with ``vec ≡ Σ c[t]·g_t`` modulo untracked columns.

    Returns None if ``vec`` is outside the span. Over ℚ the result holds
    :class:`~fractions.Fraction` values.
    """
    residual, comb = red.reduce(vec, {SELF: 1})
    if residual:
        return None
    s = comb.pop(SELF, 0)
    if s == 0:
        return None
    if p is not None:
        inv = pow(s, -1, p)
        return {t: (-c * inv) % p for t, c in comb.items() if (-c * inv) % p}
    return {t: Fraction(-c, s) for t, c in comb.items() if c}


# --- dense rational routines (independent of the sparse reducer) ---------

def dense_rank_q(rows: Sequence[Sequence]) -> int:
    """Rank over ℚ by Gaussian elimination on Fractions."""
    M = [[Fraction(v) for v in r] for r in rows]
    if not M:
        return 0
    n_rows, n_cols = len(M), len(M[0])
    rk = 0
    for c in range(n_cols):
        piv = next((i for i in range(rk, n_rows) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[rk], M[piv] = M[piv], M[rk]
        pv = M[rk][c]
        prow = M[rk]
        for i in range(rk + 1, n_rows):
            f = M[i][c]
            if f:
                f = f / pv
                row = M[i]
                for k in range(c, n_cols):
                    if prow[k]:
                        row[k] -= f * prow[k]
        rk += 1
        if rk == n_rows:
            break
    return rk


def dense_nullspace_q(rows: Sequence[Sequence], n_cols: int) -> List[List[Fraction]]:
    """Null space basis (column vectors) of a dense matrix over ℚ."""
    M = [[Fraction(v) for v in r] for r in rows]
    pivots = []
    rk = 0
    n_rows = len(M)
    for c in range(n_cols):
        piv = next((i for i in range(rk, n_rows) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[rk], M[piv] = M[piv], M[rk]
        pv = M[rk][c]
        M[rk] = [v / pv for v in M[rk]]
        for i in range(n_rows):
            if i != rk and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[rk])]
        pivots.append(c)
        rk += 1
    free = [c for c in range(n_cols) if c not in set(pivots)]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * n_cols
        v[fcol] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -M[i][fcol]
        basis.append(v)
    return basis
