"""Cross-checks between independent computation paths."""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

from .intervals import closed, full, left_closed_ray, singleton
from .lowdim import sh0_classes, sh1_adjacency
from .minimal_model import minimal_model
from .space import QMetSpace
from .spectral import achieved_levels, mpss_page, mpss_page_ce, sh, verify_decomposition


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    ok: bool
    detail: str = ""


def sampled_intervals(X: QMetSpace, max_degree: int = 3, limit: Optional[int] = None, degree_bound: int = 3):
    """Singletons at achieved levels, closed gaps between consecutive levels,
    sublevel rays, and the whole line (needs ``degree_bound``)."""
    levels = achieved_levels(X, range(max_degree + 1))
    if limit is not None:
        levels = levels[:limit]
    out = [singleton(v) for v in levels]
    out += [closed(a, b) for a, b in zip(levels, levels[1:])]
    out += [left_closed_ray(v) for v in levels]
    out.append(full())
    return out


def page_checks(X: QMetSpace, max_page=3, max_n=2, max_ell=5) -> List[Check]:
    out = []
    for s in range(1, max_page + 1):
        for n in range(max_n + 1):
            for ell in range(max_ell + 1):
                a, b = mpss_page(X, s, n, ell), mpss_page_ce(X, s, n, ell)
                out.append(Check("pages", f"E^{s}[n={n},l={ell}]", a == b, f"image={a} ce={b}"))
    return out


def lowdim_checks(X: QMetSpace, radii, max_levels: Optional[int] = None) -> List[Check]:
    out = []
    levels = X.finite_values()
    if max_levels is not None:
        levels = levels[:max_levels]
    for r in radii:
        a, b = sh0_classes(X, r, singleton(X.coerce(0))), sh(X, r, 0, singleton(X.coerce(0))).rank
        out.append(Check("lowdim", f"SH0 r={r}", a == b, f"classes={a} sh={b}"))
        for ell in levels:
            if not ell > r:
                continue
            a, b = sh1_adjacency(X, ell, r), sh(X, r, 1, singleton(ell)).rank
            out.append(Check("lowdim", f"SH1 r={r} l={ell}", a == b, f"adjacency={a} sh={b}"))
    return out


def invariance_checks(X: QMetSpace, r, max_n: int = 2, limit: Optional[int] = None, degree_bound: int = 3) -> List[Check]:
    res = minimal_model(X, r)
    M = res.model
    out = [Check("invariance", f"model r={r}", True, f"size {len(X)} -> {len(M)}")]
    for I in sampled_intervals(X, max_n + 1, limit, degree_bound):
        for n in range(max_n + 1):
            a = sh(X, r, n, I, degree_bound=degree_bound).rank
            b = sh(M, r, n, I, degree_bound=degree_bound).rank
            out.append(Check("invariance", f"SH^{r}_{n},{I}", a == b, f"X={a} model={b}"))
    return out


def decomposition_checks(X: QMetSpace, max_page=4, max_n=2, max_ell=4) -> List[Check]:
    rep = verify_decomposition(X, max_page, max_n, max_ell)
    if rep.ok:
        return [Check("decomposition", "ledger", True, f"jumping points {list(rep.jumping_points)}")]
    return [Check("decomposition", "ledger", False, f) for f in rep.failures]


def run_all(X: QMetSpace, radii=None, max_levels: int = 12) -> List[Check]:
    """Every suite that applies to ``X``."""
    checks: List[Check] = []
    if radii is None:
        vals = X.finite_values()
        radii = [X.coerce(0)] + vals[:2]
    if X.backend == "int":
        checks += page_checks(X)
        checks += decomposition_checks(X)
    checks += lowdim_checks(X, radii, max_levels)
    for r in radii:
        if r != 0:
            checks += invariance_checks(X, r, max_n=1, limit=max_levels)
    return checks
