from __future__ import annotations

from typing import Dict, Generic, Hashable, Iterable, List, TypeVar

T = TypeVar("T", bound=Hashable)


class DisjointSet(Generic[T]):
    """Union-find with path halving and union by size."""

    def __init__(self, items: Iterable[T] = ()):
        self.parent: Dict[T, T] = {}
        self.size: Dict[T, int] = {}
        for item in items:
            self.add(item)

    def add(self, e: T) -> None:
        if e not in self.parent:
            self.parent[e] = e
            self.size[e] = 1

    def find(self, e: T) -> T:
        parent = self.parent
        while parent[e] != e:
            parent[e] = parent[parent[e]]
            e = parent[e]
        return e

    def union(self, a: T, b: T) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return True

    def connected(self, a: T, b: T) -> bool:
        return self.find(a) == self.find(b)

    def classes(self) -> List[List[T]]:
        groups: Dict[T, List[T]] = {}
        for e in self.parent:
            groups.setdefault(self.find(e), []).append(e)
        return list(groups.values())

    def __len__(self) -> int:
        return sum(1 for e in self.parent if self.parent[e] == e)
