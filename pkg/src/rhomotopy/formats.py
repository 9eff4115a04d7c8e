"""Text formats for spaces, digraphs and point clouds.

Matrix files hold one row per line, entries separated by commas or
whitespace. ``inf`` marks an infinite distance, ``p/q`` a rational and any
other decimal a float. ``#`` starts a comment; the directive
``# backend: <name>`` pins the numeric backend so that printing and parsing
round-trip exactly.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import List, Optional

import numpy as np

from .digraph import Digraph
from .errors import ParseError
from .space import DEFAULT_TAU, INF, QMetSpace, is_inf, validate_space

_TOKEN = re.compile(r"[^\s,]+")
_INT = re.compile(r"[+-]?\d+$")
_RATIONAL = re.compile(r"[+-]?\d+/\d+$")
_INF_WORDS = {"inf", "+inf", "infinity", "∞"}


def _lines(text: str):
    """Yield ``(line_no, content, directives)`` skipping blanks and comments."""
    for no, raw in enumerate(text.splitlines(), start=1):
        body, _, comment = raw.partition("#")
        yield no, body, comment.strip()


def parse_number(token: str, line: Optional[int] = None, col: Optional[int] = None):
    t = token.strip()
    if t.lower() in _INF_WORDS:
        return INF
    if _INT.match(t):
        return int(t)
    if _RATIONAL.match(t):
        if int(t.split("/")[1]) == 0:
            raise ParseError(f"zero denominator in {token!r}", line, col)
        return Fraction(t)
    try:
        return float(t)
    except ValueError:
        raise ParseError(f"cannot read number {token!r}", line, col) from None


def parse_matrix(text: str, backend: Optional[str] = None, tau: float = DEFAULT_TAU) -> QMetSpace:
    rows: List[list] = []
    for no, body, comment in _lines(text):
        if comment.startswith("backend:") and backend is None:
            backend = comment.split(":", 1)[1].strip()
        row = [parse_number(m.group(), no, m.start() + 1) for m in _TOKEN.finditer(body)]
        if row:
            if rows and len(row) != len(rows[0]):
                raise ParseError(f"row has {len(row)} entries, expected {len(rows[0])}", no)
            rows.append(row)
    if not rows:
        raise ParseError("empty matrix")
    return validate_space(rows, backend=backend, tau=tau)


def parse_digraph(text: str) -> Digraph:
    """One arrow ``u v`` per line; a lone ``v`` declares an isolated vertex."""
    vertices, arrows = set(), []
    for no, body, _ in _lines(text):
        toks = list(_TOKEN.finditer(body))
        if not toks:
            continue
        if len(toks) > 2:
            raise ParseError("expected 'u v'", no, toks[2].start() + 1)
        ids = []
        for m in toks:
            if not _INT.match(m.group()):
                raise ParseError(f"vertex {m.group()!r} is not an integer", no, m.start() + 1)
            ids.append(int(m.group()))
        vertices.update(ids)
        if len(ids) == 2:
            arrows.append(tuple(ids))
    return Digraph(vertices, arrows)


_METRICS = ("euclidean", "manhattan", "chebyshev")


def point_distances(P: np.ndarray, metric: str = "euclidean") -> np.ndarray:
    diff = np.abs(P[:, None, :] - P[None, :, :])
    if metric == "euclidean":
        return np.sqrt((diff ** 2).sum(-1))
    if metric == "manhattan":
        return diff.sum(-1)
    if metric == "chebyshev":
        return diff.max(-1)
    raise ValueError(f"unknown metric {metric!r}; choose from {_METRICS}")


def parse_points(text: str, metric: str = "euclidean", tau: float = DEFAULT_TAU) -> QMetSpace:
    pts = []
    for no, body, _ in _lines(text):
        row = []
        for m in _TOKEN.finditer(body):
            v = parse_number(m.group(), no, m.start() + 1)
            if is_inf(v):
                raise ParseError("coordinates must be finite", no, m.start() + 1)
            row.append(float(v))
        if row:
            if pts and len(row) != len(pts[0]):
                raise ParseError("points have different dimensions", no)
            pts.append(row)
    if not pts:
        raise ParseError("no points")
    P = np.array(pts, dtype=float)
    D = point_distances(P, metric)
    np.fill_diagonal(D, 0.0)
    return validate_space(D.tolist(), backend="float", coords=pts, tau=tau)


def format_number(v) -> str:
    if is_inf(v):
        return "inf"
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else str(v.numerator)
    return str(v)


def format_matrix(X: QMetSpace) -> str:
    lines = [f"# backend: {X.backend}"]
    lines.extend(",".join(format_number(v) for v in row) for row in X.dist)
    return "\n".join(lines) + "\n"


def format_digraph(G: Digraph) -> str:
    used = {v for a in G.arrows for v in a}
    lines = [str(v) for v in G.vertices if v not in used]
    lines.extend(f"{u} {v}" for u, v in G.arrows)
    return "\n".join(lines) + "\n"
