"""Named examples and random generators for spaces and digraphs."""
from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .digraph import Digraph, shortest_path_space
from .space import INF, QMetSpace, validate_space


# --- named digraphs ------------------------------------------------------

def lev_digraph() -> Digraph:
    """Square 0→1→2, 0→3→2 closed up by 2→0."""
    return Digraph(4, [(0, 1), (0, 3), (1, 2), (3, 2), (2, 0)])


def pentagon_with_apex() -> Digraph:
    """Undirected 5-cycle 3-4-5-1-2-3 plus a vertex 0 joined to 1 and 2."""
    edges = [(3, 4), (4, 5), (5, 1), (1, 2), (2, 3), (0, 1), (0, 2)]
    return Digraph(6, [a for u, v in edges for a in ((u, v), (v, u))])


def diamond() -> Digraph:
    """Two sources 0, 3 over two sinks 1, 2."""
    return Digraph(4, [(0, 1), (0, 2), (3, 1), (3, 2)])


def double_diamond() -> Digraph:
    """Sources 0, 5 feeding two 2-cycles 1↔2 and 3↔4."""
    return Digraph(6, [(0, 1), (0, 3), (1, 2), (2, 1), (3, 4), (4, 3), (5, 2), (5, 4)])


def directed_path(n: int) -> Digraph:
    return Digraph(n, [(i, i + 1) for i in range(n - 1)])


def directed_cycle(n: int) -> Digraph:
    return Digraph(n, [(i, (i + 1) % n) for i in range(n)])


def undirected_cycle(n: int) -> Digraph:
    return Digraph(n, [a for i in range(n) for a in ((i, (i + 1) % n), ((i + 1) % n, i))])


def grid_digraph(rows: int, cols: int, directed: bool = True) -> Digraph:
    """Grid with arrows pointing right and down (both ways if undirected)."""
    idx = lambda i, j: i * cols + j
    arrows = []
    for i in range(rows):
        for j in range(cols):
            if j + 1 < cols:
                arrows.append((idx(i, j), idx(i, j + 1)))
            if i + 1 < rows:
                arrows.append((idx(i, j), idx(i + 1, j)))
    if not directed:
        arrows += [(v, u) for u, v in arrows]
    return Digraph(rows * cols, arrows)


# --- point clouds --------------------------------------------------------

def euclidean_space(points: Sequence[Sequence[float]], tau: float = 1e-9) -> QMetSpace:
    P = np.asarray(points, dtype=float)
    if P.ndim != 2:
        raise ValueError("points must be a 2-d array")
    D = np.sqrt(((P[:, None, :] - P[None, :, :]) ** 2).sum(-1))
    np.fill_diagonal(D, 0.0)
    return validate_space(D.tolist(), backend="float", coords=P.tolist(), tau=tau)


def discontinuity_points(eps) -> List[Tuple[float, float]]:
    e = float(eps)
    return [(-2.0, 0.0), (-2.0, 1.0), (2.0, 0.0), (2.0, 1.0), (-e, 0.0), (e, 1.0)]


def discontinuity_space(eps) -> QMetSpace:
    return euclidean_space(discontinuity_points(eps))


def circle_arc_points(gap_deg: float, count: int) -> List[Tuple[float, float]]:
    """``count`` equally spaced unit-circle points on the arc that omits a gap
    of ``gap_deg`` degrees centered at the top; the endpoints sit at
    ``90 ± gap_deg/2`` degrees."""
    if count < 2:
        raise ValueError("an arc sample needs at least two points")
    start = math.radians(90.0 + gap_deg / 2.0)
    span = math.radians(360.0 - gap_deg)
    return [
        (math.cos(start + span * i / (count - 1)), math.sin(start + span * i / (count - 1)))
        for i in range(count)
    ]


def circle_arc(gap_deg: float, count: int, tau: float = 1e-9) -> QMetSpace:
    return euclidean_space(circle_arc_points(gap_deg, count), tau)


def circle_points(count: int) -> List[Tuple[float, float]]:
    return [(math.cos(2 * math.pi * i / count), math.sin(2 * math.pi * i / count)) for i in range(count)]


def circle(count: int, tau: float = 1e-9) -> QMetSpace:
    return euclidean_space(circle_points(count), tau)


def grid_points(rows: int, cols: int, step: float = 1.0) -> List[Tuple[float, float]]:
    return [(j * step, i * step) for i in range(rows) for j in range(cols)]


# --- random instances ----------------------------------------------------

def closure(matrix) -> List[list]:
    """Floyd–Warshall shortest-path closure; keeps the entry type."""
    D = [list(r) for r in matrix]
    n = len(D)
    for k in range(n):
        Dk = D[k]
        for i in range(n):
            dik = D[i][k]
            if dik == INF:
                continue
            Di = D[i]
            for j in range(n):
                v = dik + Dk[j]
                if v < Di[j]:
                    Di[j] = v
    return D


def random_space(
    n: int,
    rng: random.Random,
    backend: str = "int",
    max_weight: int = 4,
    infinite_prob: float = 0.0,
) -> QMetSpace:
    """Random quasimetric space: random positive weights, then path closure."""
    W = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if rng.random() < infinite_prob:
                W[i][j] = INF
                continue
            w = rng.randint(1, max_weight)
            if backend == "rational":
                w = Fraction(w, rng.randint(1, 3))
            elif backend == "float":
                w = float(w) + rng.random()
            W[i][j] = w
    return validate_space(closure(W), backend=backend)


def random_digraph(n: int, rng: random.Random, p: float = 0.35) -> Digraph:
    arrows = [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p]
    return Digraph(n, arrows)


def random_digraph_space(n: int, rng: random.Random, p: float = 0.35) -> QMetSpace:
    return shortest_path_space(random_digraph(n, rng, p))


def named_digraph(name: str) -> Digraph:
    table = {
        "lev": lev_digraph,
        "pentagon": pentagon_with_apex,
        "diamond": diamond,
        "double-diamond": double_diamond,
    }
    if name not in table:
        raise KeyError(f"unknown digraph {name!r}; choose from {sorted(table)}")
    return table[name]()


def generate(kind: str, params: Optional[dict] = None) -> QMetSpace:
    """Generator dispatch used by the CLI."""
    params = dict(params or {})
    tau = float(params.pop("tau", 1e-9))
    if kind == "circle_arc":
        return circle_arc(float(params.get("gap", 30.0)), int(params.get("count", 200)), tau)
    if kind == "circle":
        return circle(int(params.get("count", 200)), tau)
    if kind == "grid":
        rows, cols = int(params.get("rows", 3)), int(params.get("cols", 3))
        return euclidean_space(grid_points(rows, cols, float(params.get("step", 1.0))), tau)
    if kind == "cycle":
        n = int(params.get("n", 5))
        G = directed_cycle(n) if params.get("directed", "1") not in ("0", "false") else undirected_cycle(n)
        return shortest_path_space(G)
    if kind == "discontinuity":
        return discontinuity_space(float(params.get("eps", 0.0)))
    if kind in ("lev", "pentagon", "diamond", "double-diamond"):
        return shortest_path_space(named_digraph(kind))
    raise ValueError(f"unknown generator {kind!r}")
