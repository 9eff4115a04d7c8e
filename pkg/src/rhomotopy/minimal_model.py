"""r-deformation retracts, r-minimal models and homotopy jumping points."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .errors import DualPathMismatch, SearchBudgetExceeded
from .space import (
    HomotopyChain,
    QMetSpace,
    ShortMap,
    group_values,
    identity,
    is_inf,
)

DEFAULT_BUDGET = 10_000_000


class _Budget:
    def __init__(self, limit):
        self.limit = limit
        self.used = 0

    def tick(self):
        self.used += 1
        if self.used > self.limit:
            raise SearchBudgetExceeded(self.limit)


def _search_non_injective(X: QMetSpace, cand: List[List[int]], budget: _Budget, rng) -> Optional[Tuple[int, ...]]:
    """Backtracking over short self-maps with per-point candidate images.

    Returns the first non-injective short map found, or None.
    """
    n = len(X)
    D = X.dist
    le = X.le
    if rng is None:
        order = sorted(range(n), key=lambda x: (-len(cand[x]), x))
        domains = [sorted(c, key=lambda y, x=x: (y == x, y)) for x, c in enumerate(cand)]
    else:
        order = list(range(n))
        rng.shuffle(order)
        domains = []
        for c in cand:
            c = list(c)
            rng.shuffle(c)
            domains.append(c)
    assign = [-1] * n

    def rec(k, doms):
        if k == n:
            if len(set(assign)) < n:
                return tuple(assign)
            return None
        x = order[k]
        rest = order[k + 1:]
        for y in doms[x]:
            budget.tick()
            assign[x] = y
            new = list(doms)
            ok = True
            Dx, Dy = D[x], D[y]
            for x2 in rest:
                dxx2, dx2x = Dx[x2], D[x2][x]
                kept = [y2 for y2 in doms[x2] if le(Dy[y2], dxx2) and le(D[y2][y], dx2x)]
                if not kept:
                    ok = False
                    break
                new[x2] = kept
            if ok:
                found = rec(k + 1, new)
                if found is not None:
                    return found
        assign[x] = -1
        return None

    return rec(0, domains)


def find_contracting_endo(X: QMetSpace, r, budget: int = DEFAULT_BUDGET, seed=None) -> Optional[ShortMap]:
    """A non-injective short self-map within sup-distance ``r`` of the identity.

    The forward search (``d(x, phi(x)) <= r``) runs first, then the backward
    one (``d(phi(x), x) <= r``). Returns None iff ``X`` is r-minimal.
    """
    r = X.coerce(r)
    n = len(X)
    if n <= 1:
        return None
    rng = random.Random(seed) if seed is not None else None
    counter = _Budget(budget)
    D = X.dist
    forward = [[y for y in X.points if X.le(D[x][y], r)] for x in X.points]
    backward = [[y for y in X.points if X.le(D[y][x], r)] for x in X.points]
    for cand in (forward, backward):
        if all(len(c) == 1 for c in cand):
            continue
        found = _search_non_injective(X, cand, counter, rng)
        if found is not None:
            return ShortMap(X, X, found)
    return None


def _compose_raw(f, g):
    return tuple(f[v] for v in g)


def idempotent_power(phi: ShortMap) -> Tuple[int, ShortMap]:
    """Least ``n >= 1`` with ``phi^n`` idempotent, together with ``phi^n``."""
    if phi.source != phi.target:
        raise ValueError("idempotent_power needs a self-map")
    base = phi.assignment
    power, n = base, 1
    while _compose_raw(power, power) != power:
        power = _compose_raw(base, power)
        n += 1
    return n, ShortMap(phi.source, phi.target, power)


@dataclass(frozen=True)
class RetractionResult:
    """A retract of ``space`` given by ``subset`` (indices of the ORIGINAL space).

    ``retraction`` maps ``space`` onto the subspace on ``subset``;
    ``certificate`` is a chain of self-maps of ``space`` from the identity to
    inclusion-after-retraction, each step within ``radius``.
    """

    space: QMetSpace
    subset: Tuple[int, ...]
    retraction: ShortMap
    certificate: HomotopyChain
    radius: object
    local_subset: Tuple[int, ...] = ()

    @property
    def model(self) -> QMetSpace:
        return self.retraction.target

    def inclusion(self) -> ShortMap:
        return ShortMap(self.model, self.space, self.local_subset)


def minimal_model(
    X: QMetSpace,
    r,
    budget: int = DEFAULT_BUDGET,
    seed=None,
    origin: Optional[Sequence[int]] = None,
) -> RetractionResult:
    """Retract ``X`` onto an r-minimal model.

    Repeats: find a contracting endomorphism, take its idempotent power and
    retract onto the image. ``origin`` gives the indices of ``X`` inside a
    larger ambient space so that reported subsets stay comparable.
    """
    r = X.coerce(r)
    n = len(X)
    origin = tuple(range(n)) if origin is None else tuple(origin)
    local = list(range(n))          # current subset, as indices of X
    rho = list(range(n))            # X -> X, values in ``local``
    chain = [tuple(range(n))]
    current = X
    step = 0
    while True:
        step_seed = None if seed is None else seed * 1_000_003 + step
        phi = find_contracting_endo(current, r, budget=budget, seed=step_seed)
        if phi is None:
            break
        k, phin = idempotent_power(phi)
        pos = {v: i for i, v in enumerate(local)}
        power = phi.assignment
        for _ in range(k):
            chain.append(tuple(local[power[pos[rho[x]]]] for x in range(n)))
            power = _compose_raw(phi.assignment, power)
        image = sorted(set(phin.assignment))
        rho = [local[phin.assignment[pos[rho[x]]]] for x in range(n)]
        local = [local[p] for p in image]
        current = X.subspace(local)
        step += 1
    pos = {v: i for i, v in enumerate(local)}
    retraction = ShortMap(X, current, tuple(pos[rho[x]] for x in range(n)))
    certificate = HomotopyChain(tuple(ShortMap(X, X, m) for m in chain), r)
    return RetractionResult(
        space=X,
        subset=tuple(origin[i] for i in local),
        retraction=retraction,
        certificate=certificate,
        radius=r,
        local_subset=tuple(local),
    )


def is_r_minimal(X: QMetSpace, r, budget: int = DEFAULT_BUDGET) -> bool:
    return find_contracting_endo(X, r, budget=budget) is None


@dataclass(frozen=True)
class JumpingPointsResult:
    points: Tuple[object, ...]
    model_sizes: Tuple[int, ...]
    ratios: Tuple[Fraction, ...]
    models: Tuple[RetractionResult, ...] = field(default=(), repr=False)
    merged: Tuple[Tuple[object, ...], ...] = ()


def _candidate_groups(X: QMetSpace):
    values = [v for row in X.dist for v in row if not is_inf(v) and v != 0]
    reps, _ = group_values(values, X.tau)
    distinct = sorted(set(values))
    groups = []
    for i, rep in enumerate(reps):
        nxt = reps[i + 1] if i + 1 < len(reps) else None
        members = [v for v in distinct if v >= rep and (nxt is None or v < nxt)]
        groups.append(tuple(members))
    return groups


def _midpoint(a, b):
    if isinstance(a, int) and isinstance(b, int):
        return Fraction(a + b, 2)
    return (a + b) / 2


def jumping_points(X: QMetSpace, budget: int = DEFAULT_BUDGET, seed=None, verify: bool = False) -> JumpingPointsResult:
    """Thresholds where the size of the r-minimal model drops.

    Candidates are the distinct finite distances of ``X`` (tau-grouped for
    float spaces, evaluated at the top of each group). Each model is computed
    from the previous one. With ``verify`` the model size is also checked at
    one midpoint per gap between candidates.
    """
    n = len(X)
    groups = _candidate_groups(X)
    merged = tuple(g for g in groups if len(g) > 1)
    points, sizes, models = [], [], []
    size_after = []
    current_idx = tuple(range(n))
    current = X
    for group in groups:
        if len(current) > 1:
            res = minimal_model(current, group[-1], budget=budget, seed=seed, origin=current_idx)
            if len(res.subset) < len(current):
                points.append(group[0])
                sizes.append(len(res.subset))
                models.append(res)
                current_idx = res.subset
                current = X.subspace(current_idx)
        size_after.append(len(current))
    if verify:
        _verify_plateaus(X, groups, size_after, budget)
    ratios = tuple(Fraction(s, n) for s in sizes)
    return JumpingPointsResult(tuple(points), tuple(sizes), ratios, tuple(models), merged)


def _verify_plateaus(X, groups, size_after, budget):
    probes = []
    if groups:
        probes.append((_midpoint(0, groups[0][0]), len(X)))
    for gi, group in enumerate(groups):
        hi = groups[gi + 1][0] if gi + 1 < len(groups) else group[-1] + 1
        probes.append((_midpoint(group[-1], hi), size_after[gi]))
    for mid, expected in probes:
        size = len(minimal_model(X, X.coerce(mid), budget=budget).subset)
        if size != expected:
            raise DualPathMismatch(
                f"plateau check failed at r={mid}: model size {size}, expected {expected}"
            )


def nested_models(X: QMetSpace, budget: int = DEFAULT_BUDGET, seed=None) -> List[RetractionResult]:
    """Chain X ⊃ M_{r_1}(X) ⊃ ... with retractions between consecutive models."""
    return list(jumping_points(X, budget=budget, seed=seed).models)


def stable_model(X: QMetSpace, budget: int = DEFAULT_BUDGET) -> QMetSpace:
    models = nested_models(X, budget=budget)
    if not models:
        return X
    return X.subspace(models[-1].subset)


def _signature(X: QMetSpace, x: int):
    return (sorted(X.dist[x]), sorted(X.dist[y][x] for y in X.points))


def _sig_match(X, s, t):
    return all(X.eq(a, b) for a, b in zip(s[0], t[0])) and all(X.eq(a, b) for a, b in zip(s[1], t[1]))


def is_isometric(X: QMetSpace, Y: QMetSpace) -> Optional[Tuple[int, ...]]:
    """A distance-preserving bijection X -> Y, or None."""
    n = len(X)
    if n != len(Y) or X.backend != Y.backend:
        return None
    sx = [_signature(X, x) for x in X.points]
    sy = [_signature(Y, y) for y in Y.points]
    cand = [[y for y in Y.points if _sig_match(X, sx[x], sy[y])] for x in X.points]
    if any(not c for c in cand):
        return None
    order = sorted(X.points, key=lambda x: len(cand[x]))
    assign = [-1] * n
    used = [False] * n

    def rec(k):
        if k == n:
            return True
        x = order[k]
        for y in cand[x]:
            if used[y]:
                continue
            if all(
                X.eq(X.dist[x][x2], Y.dist[y][assign[x2]]) and X.eq(X.dist[x2][x], Y.dist[assign[x2]][y])
                for x2 in order[:k]
            ):
                assign[x], used[y] = y, True
                if rec(k + 1):
                    return True
                assign[x], used[y] = -1, False
        return False

    return tuple(assign) if rec(0) else None


def identity_retraction(X: QMetSpace, r) -> RetractionResult:
    n = len(X)
    return RetractionResult(X, tuple(range(n)), identity(X), HomotopyChain((identity(X),), r), r, tuple(range(n)))
