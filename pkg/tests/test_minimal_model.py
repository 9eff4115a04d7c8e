import math
import random
from fractions import Fraction

import pytest

import oracles
from rhomotopy.digraph import shortest_path_space
from rhomotopy.errors import SearchBudgetExceeded
from rhomotopy.generators import directed_cycle, discontinuity_space, named_digraph, random_space
from rhomotopy.minimal_model import (
    find_contracting_endo,
    idempotent_power,
    is_isometric,
    is_r_minimal,
    jumping_points,
    minimal_model,
    nested_models,
    stable_model,
)
from rhomotopy.space import ShortMap, compose, validate_space, verify_homotopy_chain


def brute_force_minimal(X, r):
    """No non-injective short self-map lies within r of the identity."""
    n = len(X)
    for f in oracles.short_maps(X, X.tau):
        if len(set(f)) == n:
            continue
        fwd = max(X.dist[x][f[x]] for x in range(n))
        bwd = max(X.dist[f[x]][x] for x in range(n))
        if min(fwd, bwd) <= r + X.tau:
            return False
    return True


def test_idempotent_power():
    X = shortest_path_space(named_digraph("lev"))
    phi = ShortMap(X, X, (1, 2, 0, 2))
    k, p = idempotent_power(phi)
    assert k == 3
    assert compose(p, p) == p
    assert sorted(set(p.assignment)) == [0, 1, 2]


def test_two_point_space():
    X = validate_space([[0, 1], [2, 0]])
    assert len(minimal_model(X, 1).subset) == 1
    assert len(minimal_model(X, Fraction(1, 2)).subset) == 2
    assert is_r_minimal(X, 0)


def test_retraction_fixes_the_model():
    X = shortest_path_space(named_digraph("pentagon"))
    res = minimal_model(X, 1)
    rho = res.retraction.assignment
    for local, original in enumerate(res.local_subset):
        assert rho[original] == local
    incl = res.inclusion()
    assert compose(res.retraction, incl).is_identity()
    assert verify_homotopy_chain(res.certificate)
    assert res.certificate.maps[-1] == compose(incl, res.retraction)


def test_models_are_minimal_by_brute_force():
    rng = random.Random(4)
    for _ in range(25):
        X = random_space(rng.randint(2, 6), rng, max_weight=4, infinite_prob=0.15)
        for r in X.finite_values()[:3]:
            res = minimal_model(X, r)
            assert verify_homotopy_chain(res.certificate)
            assert brute_force_minimal(res.model, r)


def test_budget():
    X = shortest_path_space(named_digraph("pentagon"))
    with pytest.raises(SearchBudgetExceeded):
        minimal_model(X, 1, budget=1)


def test_seeds_do_not_change_the_model_up_to_isometry():
    X = discontinuity_space(0)
    base = minimal_model(X, 1).model
    for seed in range(5):
        assert is_isometric(base, minimal_model(X, 1, seed=seed).model) is not None


def test_jumping_points_of_the_plane_sample():
    X = discontinuity_space(0)
    jp = jumping_points(X, verify=True)
    assert jp.points == (1, 2)
    assert jp.model_sizes == (3, 1)
    assert jp.ratios == (Fraction(1, 2), Fraction(1, 6))
    assert [len(m.subset) for m in nested_models(X)] == [3, 1]
    assert len(stable_model(X)) == 1


def test_jumping_points_of_a_cycle():
    X = shortest_path_space(directed_cycle(4))
    jp = jumping_points(X)
    assert jp.points == (3,)
    assert jp.model_sizes == (1,)


def test_stable_digraph_is_its_own_model():
    X = shortest_path_space(named_digraph("diamond"))
    assert stable_model(X) is X
    assert find_contracting_endo(X, 100) is None


def test_near_equal_float_levels_are_merged():
    X = validate_space([[0, 1.0, 2.0], [1.0 + 1e-12, 0, 1.0], [2.0, 1.0, 0]], tau=1e-9)
    jp = jumping_points(X)
    assert jp.merged and math.isclose(jp.merged[0][0], 1.0)


def test_is_isometric():
    A = shortest_path_space(directed_cycle(3))
    B = validate_space([[0, 2, 1], [1, 0, 2], [2, 1, 0]])
    assert is_isometric(A, B) is not None
    C = validate_space([[0, 1, 1], [1, 0, 1], [1, 1, 0]])
    assert is_isometric(A, C) is None
