"""Acceptance criteria 1-12.

Run with ``pytest tests/test_acceptance.py`` (or execute this file); the
terminal summary prints one PASS/FAIL line per criterion.
"""
import math
import random

import pytest

import oracles
from rhomotopy.complex import (
    boundary_chain,
    chain_add,
    chain_sub,
    is_generator,
    map_chain,
    prism_homotopy,
    truncated_complex,
)
from rhomotopy.digraph import shortest_path_space
from rhomotopy.generators import (
    circle,
    circle_arc,
    directed_cycle,
    discontinuity_space,
    named_digraph,
    random_digraph,
    random_space,
    undirected_cycle,
)
from rhomotopy.homology import check_snf, smith_normal_form
from rhomotopy.intervals import closed, full, left_closed_ray, singleton
from rhomotopy.linalg import ZZ
from rhomotopy.lowdim import sh1_adjacency
from rhomotopy.minimal_model import (
    find_contracting_endo,
    idempotent_power,
    is_isometric,
    jumping_points,
    minimal_model,
)
from rhomotopy.space import ShortMap, is_inf, is_short, map_distance, verify_homotopy_chain
from rhomotopy.spectral import (
    achieved_levels,
    blurred_magnitude_homology,
    check_sb_in_sz,
    magnitude_homology,
    mpss_page,
    mpss_page_ce,
    persistent_sh,
    reachability_homology,
    sh,
    verify_decomposition,
)
from rhomotopy.verify import sampled_intervals

TAU = 1e-9


def digraph_space(name):
    return shortest_path_space(named_digraph(name))


def page_digraphs():
    rng = random.Random(2024)
    graphs = [named_digraph("lev"), named_digraph("diamond"), named_digraph("pentagon")]
    graphs += [random_digraph(rng.randint(2, 6), rng) for _ in range(20)]
    return graphs


def random_short_map(X, rng, tries=500):
    n = len(X)
    for _ in range(tries):
        a = tuple(rng.randrange(n) for _ in range(n))
        if is_short(X, X, a):
            return a
    return (rng.randrange(n),) * n


# 1 ---------------------------------------------------------------------------

@pytest.mark.criterion(1, "four-vertex digraph retracts onto a directed 3-cycle at r=1")
def test_criterion_01_three_cycle_retract():
    X = digraph_space("lev")
    res = minimal_model(X, 1)
    assert len(res.subset) == 3
    assert is_isometric(res.model, shortest_path_space(directed_cycle(3))) is not None
    assert len(res.certificate) == 4
    assert verify_homotopy_chain(res.certificate)
    assert res.certificate.maps[0].is_identity()
    phi = find_contracting_endo(X, 1)
    k, power = idempotent_power(phi)
    assert k == 3
    assert res.certificate.maps[1].assignment == phi.assignment


# 2 ---------------------------------------------------------------------------

@pytest.mark.criterion(2, "pentagon with apex retracts onto the 5-cycle; exactly two one-step retractions")
def test_criterion_02_pentagon():
    X = digraph_space("pentagon")
    res = minimal_model(X, 1)
    assert len(res.subset) == 5
    assert is_isometric(res.model, shortest_path_space(undirected_cycle(5))) is not None
    retractions = [
        f for f in oracles.short_maps(X)
        if len(set(f)) == 5
        and all(f[f[x]] == f[x] for x in range(6))
        and max(max(X.dist[x][f[x]], X.dist[f[x]][x]) for x in range(6)) <= 1
    ]
    assert len(retractions) == 2
    apex = X.labels.index(0)
    assert sorted(X.labels[f[apex]] for f in retractions) == [1, 2]
    assert all(sorted(X.labels[v] for v in set(f)) == [1, 2, 3, 4, 5] for f in retractions)
    assert tuple(sorted(X.labels[i] for i in res.subset)) == (1, 2, 3, 4, 5)


# 3 ---------------------------------------------------------------------------

@pytest.mark.criterion(3, "six-point plane sample: jumping points and minimal displacement")
def test_criterion_03_discontinuity():
    X0 = discontinuity_space(0)
    jp = jumping_points(X0)
    assert jp.points == (1, 2)
    assert (len(X0),) + jp.model_sizes == (6, 3, 1)

    eps = 0.25
    expected = math.sqrt(1 + (2 - eps) ** 2)
    assert expected == pytest.approx(math.sqrt(65) / 4, abs=1e-15)
    X = discontinuity_space(eps)
    jp = jumping_points(X)
    assert len(jp.points) == 1
    assert abs(jp.points[0] - expected) <= TAU

    ident = tuple(range(len(X)))
    best = min(
        max(max(X.dist[f[x]][x], X.dist[x][f[x]]) for x in range(len(X)))
        for f in oracles.short_maps(X, TAU)
        if f != ident
    )
    assert abs(best - expected) <= TAU


# 4 ---------------------------------------------------------------------------

@pytest.mark.criterion(4, "the two stable digraphs have no jumping points")
@pytest.mark.parametrize("name", ["diamond", "double-diamond"])
def test_criterion_04_stable_digraphs(name):
    X = digraph_space(name)
    assert jumping_points(X, verify=True).points == ()


# 5 ---------------------------------------------------------------------------

@pytest.mark.criterion(5, "rank MH_1 equals the number of adjacent pairs, torsion-free")
def test_criterion_05_mh1_adjacency():
    rng = random.Random(7)
    for _ in range(50):
        X = random_space(rng.randint(2, 8), rng, max_weight=4, infinite_prob=0.1)
        for ell in X.finite_values():
            h = magnitude_homology(X, 1, ell, ZZ)
            assert h.rank == len(oracles.adjacent_pairs(X, ell)), (X.dist, ell)
            assert h.torsion == ()


# 6 ---------------------------------------------------------------------------

@pytest.mark.criterion(6, "page ranks agree between the image formula and the quotient route")
@pytest.mark.nodebug
def test_criterion_06_dual_path_pages():
    for G in page_digraphs():
        for s in range(1, 4):
            for n in range(3):
                for ell in range(6):
                    assert mpss_page(G, s, n, ell) == mpss_page_ce(G, s, n, ell), (G.arrows, s, n, ell)


# 7 ---------------------------------------------------------------------------

def invariance_cases():
    cases = [
        ("lev", digraph_space("lev"), 1),
        ("pentagon", digraph_space("pentagon"), 1),
        ("diamond", digraph_space("diamond"), 1),
        ("double-diamond", digraph_space("double-diamond"), 1),
        ("plane-0", discontinuity_space(0), 1.0),
        ("plane-0", discontinuity_space(0), 2.0),
    ]
    X = discontinuity_space(0.25)
    cases.append(("plane-1/4", X, jumping_points(X).points[0]))
    return cases


@pytest.mark.criterion(7, "SH ranks are unchanged on the r-minimal model")
@pytest.mark.nodebug
def test_criterion_07_homotopy_invariance():
    for name, X, r in invariance_cases():
        M = minimal_model(X, r).model
        for I in sampled_intervals(X, 3, degree_bound=3):
            for n in range(3):
                a = sh(X, r, n, I, degree_bound=3).rank
                b = sh(M, r, n, I, degree_bound=3).rank
                assert a == b, (name, r, n, I)


# 8 ---------------------------------------------------------------------------

@pytest.mark.criterion(8, "r=0 specializations: magnitude, blurred magnitude, reachability")
def test_criterion_08_specializations():
    rng = random.Random(11)
    spaces = [digraph_space("lev"), digraph_space("pentagon"), discontinuity_space(0)]
    spaces += [random_space(rng.randint(2, 5), rng, max_weight=3) for _ in range(6)]
    for X in spaces:
        exact = X.backend != "float"
        for ell in X.finite_values()[:5]:
            for n in range(3):
                a = sh(X, 0, n, singleton(ell), ZZ)
                b = magnitude_homology(X, n, ell, ZZ)
                assert (a.rank, a.torsion) == (b.rank, b.torsion)
                if exact:
                    assert b.rank == oracles.magnitude_betti(X, n, ell)
        for n in range(2):
            dgm = persistent_sh(X, 0, n)
            for ell in dgm.axis:
                direct = blurred_magnitude_homology(X, n, ell).rank
                assert dgm.rank_at(ell) == direct
                if exact:
                    assert direct == oracles.sublevel_betti(X, n, ell)

    small = [named_digraph("lev"), named_digraph("diamond")]
    small += [random_digraph(rng.randint(2, 4), rng, 0.4) for _ in range(15)]
    for G in small:
        X = shortest_path_space(G)
        for n in range(3):
            h = reachability_homology(X, n, n + 1)
            assert h.rank == oracles.order_complex_betti(X, n), (G.arrows, n)
            assert h.torsion == ()


# 9 ---------------------------------------------------------------------------

@pytest.mark.criterion(9, "path homology via the second page matches brute-force invariant paths")
@pytest.mark.nodebug
def test_criterion_09_path_homology():
    for G in page_digraphs():
        for n in range(3):
            via_page = mpss_page(G, 2, n, n)
            assert via_page == oracles.path_homology(len(G), G.arrows, n), (G.arrows, n)
            assert via_page == mpss_page_ce(G, 2, n, n)


# 10 --------------------------------------------------------------------------

@pytest.mark.criterion(10, "page decomposition along nested models")
@pytest.mark.nodebug
def test_criterion_10_decomposition():
    rng = random.Random(99)
    graphs = [named_digraph("lev"), named_digraph("pentagon")]
    graphs += [random_digraph(rng.randint(2, 5), rng, 0.4) for _ in range(10)]
    for G in graphs:
        rep = verify_decomposition(G, 4, 2, 4)
        assert rep.ok, rep.failures
        for key, parts in rep.summands.items():
            assert all(v >= 0 for v in parts)
            assert sum(parts) == rep.totals[key]


# 11 --------------------------------------------------------------------------

def arc_levels(X, lo, hi):
    return [v for v in X.finite_values() if lo < v < hi]


@pytest.mark.criterion(11, "singular pair of the circle arc; full circle has none")
@pytest.mark.nodebug
def test_criterion_11_arc():
    r = 0.3
    hi = 0.707
    chord = 2 * math.sin(math.radians(15))
    X = circle_arc(30.0, 200)
    levels = arc_levels(X, r, hi)
    hits = [v for v in levels if abs(v - chord) <= TAU]
    assert len(hits) == 1
    for ell in levels:
        expected = 2 if ell == hits[0] else 0
        assert sh1_adjacency(X, ell, r) == expected, ell
        assert sh(X, r, 1, singleton(ell)).rank == expected, ell

    Y = circle(200)
    for ell in arc_levels(Y, r, hi):
        assert sh1_adjacency(Y, ell, r) == 0, ell
        assert sh(Y, r, 1, singleton(ell)).rank == 0, ell


# 12 --------------------------------------------------------------------------

@pytest.mark.criterion(12, "property suites")
def test_criterion_12_boundary_squares_to_zero():
    rng = random.Random(3)
    for _ in range(20):
        X = random_space(rng.randint(2, 5), rng, backend=rng.choice(["int", "rational"]), max_weight=3)
        vals = X.finite_values()
        for I in (singleton(vals[0]), closed(vals[0], vals[-1]), left_closed_ray(vals[-1]), full()):
            C = truncated_complex(X, I, degree_bound=3)
            for n in range(2, 4):
                assert (C.boundary(n - 1) @ C.boundary(n)).is_zero()


@pytest.mark.criterion(12, "property suites")
def test_criterion_12_snf_postconditions():
    rng = random.Random(4)
    for _ in range(100):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        M = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(m)]
        D, U, V = smith_normal_form(M)
        check_snf(M, D, U, V)
        UMV = [[sum(U[i][k] * M[k][l] * V[l][j] for k in range(m) for l in range(n)) for j in range(n)]
               for i in range(m)]
        assert UMV == D
        diag = [D[i][i] for i in range(min(m, n))]
        assert all(D[i][j] == 0 for i in range(m) for j in range(n) if i != j)
        nz = [d for d in diag if d]
        assert all(d > 0 for d in nz) and diag[: len(nz)] == nz
        assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
        assert len(nz) == oracles.rank(M)


@pytest.mark.criterion(12, "property suites")
def test_criterion_12_prism_identity():
    rng = random.Random(5)
    done = 0
    while done < 100:
        X = random_space(rng.randint(2, 5), rng, max_weight=3, infinite_prob=0.15)
        phi = ShortMap(X, X, random_short_map(X, rng))
        psi = ShortMap(X, X, random_short_map(X, rng))
        if is_inf(map_distance(phi, psi)):
            continue
        k = rng.randint(0, 3)
        chain = {}
        for _ in range(4):
            t = tuple(rng.randrange(len(X)) for _ in range(k + 1))
            if is_generator(X, t):
                chain[t] = chain.get(t, 0) + rng.choice([-2, -1, 1, 3])
        lhs = chain_add(
            boundary_chain(X, prism_homotopy(phi, psi, chain)),
            prism_homotopy(phi, psi, boundary_chain(X, chain)),
        )
        assert lhs == chain_sub(map_chain(psi, chain), map_chain(phi, chain))
        done += 1


@pytest.mark.criterion(12, "property suites")
def test_criterion_12_subquotient():
    rng = random.Random(6)
    for _ in range(15):
        X = random_space(rng.randint(2, 5), rng, max_weight=4)
        vals = X.finite_values()
        r = rng.choice(vals)
        for ell in vals[:4]:
            for n in range(3):
                c = check_sb_in_sz(X, r, n, singleton(ell))
                assert c.contained
                assert c.sh == c.sz - c.sb


@pytest.mark.criterion(12, "property suites")
def test_criterion_12_model_uniqueness():
    rng = random.Random(8)
    spaces = [digraph_space("lev"), digraph_space("pentagon"), discontinuity_space(0)]
    spaces += [random_space(rng.randint(3, 7), rng, max_weight=3) for _ in range(8)]
    for X in spaces:
        for r in X.finite_values()[:3]:
            base = minimal_model(X, r).model
            for seed in range(5):
                other = minimal_model(X, r, seed=seed).model
                assert is_isometric(base, other) is not None, (X.dist, r, seed)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
