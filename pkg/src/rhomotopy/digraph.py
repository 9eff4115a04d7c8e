"""Digraphs, their shortest-path quasimetric and digraph retracts."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence, Tuple, Union

from .errors import NotARetraction, NotASubdigraph, NotShort
from .space import INF, QMetSpace, is_short, validate_space


@dataclass(frozen=True)
class Digraph:
    """Vertices are integer ids; loops are implicit and never stored."""

    vertices: Tuple[int, ...]
    arrows: Tuple[Tuple[int, int], ...]

    def __init__(self, vertices: Union[int, Iterable[int]], arrows: Iterable[Tuple[int, int]] = ()):
        if isinstance(vertices, int):
            vertices = range(vertices)
        verts = tuple(sorted(set(int(v) for v in vertices)))
        vset = set(verts)
        arr = set()
        for u, v in arrows:
            u, v = int(u), int(v)
            if u not in vset or v not in vset:
                raise ValueError(f"arrow ({u},{v}) uses an unknown vertex")
            if u != v:
                arr.add((u, v))
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "arrows", tuple(sorted(arr)))

    def __len__(self):
        return len(self.vertices)

    def index(self, v: int) -> int:
        return self.vertices.index(v)

    def successors(self):
        succ = {v: [] for v in self.vertices}
        for u, v in self.arrows:
            succ[u].append(v)
        return succ


def distance_table(G: Digraph):
    """All-pairs BFS distances keyed by vertex ids."""
    succ = G.successors()
    table = {}
    for s in G.vertices:
        dist = {s: 0}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in succ[u]:
                if v not in dist:
                    dist[v] = dist[u] + 1
                    queue.append(v)
        table[s] = dist
    return table


def shortest_path_space(G: Digraph) -> QMetSpace:
    """The quasimetric space Q(G) on the vertices of G, in vertex order."""
    table = distance_table(G)
    matrix = [[table[u].get(v, INF) for v in G.vertices] for u in G.vertices]
    return validate_space(matrix, backend="int", labels=G.vertices)


def digraph_retract_from_points(G: Digraph, A: Iterable[int], rho: Union[Mapping[int, int], Sequence[int]]) -> Digraph:
    """Digraph H on ``A`` whose arrows are the pairs at G-distance <= 1.

    ``rho`` maps vertex ids to vertex ids (a mapping, or a sequence indexed
    like ``G.vertices``). It must fix ``A`` pointwise and be short for Q(G);
    the result is checked to make ``rho`` a digraph morphism G -> H.
    """
    A = tuple(sorted(set(A)))
    if not isinstance(rho, Mapping):
        rho = dict(zip(G.vertices, rho))
    if set(rho) != set(G.vertices):
        raise NotARetraction("retraction must be defined on every vertex")
    if any(rho[a] != a for a in A) or any(rho[v] not in A for v in G.vertices):
        raise NotARetraction("map does not fix A pointwise or leaves A")
    X = shortest_path_space(G)
    assignment = [G.index(rho[v]) for v in G.vertices]
    if not is_short(X, X, assignment):
        raise NotShort("retraction is not short for the shortest-path distance")
    table = distance_table(G)
    H = Digraph(A, [(u, v) for u in A for v in A if u != v and table[u].get(v, INF) <= 1])
    hset = set(H.arrows)
    for u, v in G.arrows:
        a, b = rho[u], rho[v]
        if a != b and (a, b) not in hset:
            raise NotShort(f"arrow ({u},{v}) is not sent to an arrow of H")
    return H


def is_convex_subdigraph(G: Digraph, H: Digraph) -> bool:
    if not set(H.vertices) <= set(G.vertices) or not set(H.arrows) <= set(G.arrows):
        raise NotASubdigraph("H is not a subdigraph of G")
    tg, th = distance_table(G), distance_table(H)
    return all(
        th[u].get(v, INF) == tg[u].get(v, INF) for u in H.vertices for v in H.vertices
    )


def is_digraph_morphism(G: Digraph, H: Digraph, f: Mapping[int, int]) -> bool:
    harrows = set(H.arrows)
    return all(f[u] == f[v] or (f[u], f[v]) in harrows for u, v in G.arrows)
