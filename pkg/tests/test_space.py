import math
from fractions import Fraction

import pytest

from rhomotopy.errors import (
    BackendMismatch,
    MismatchedSpaces,
    NegativeEntry,
    NonzeroDiagonal,
    NotAShortMap,
    NotSquare,
    TriangleViolation,
    ZeroOffDiagonal,
)
from rhomotopy.space import (
    INF,
    HomotopyChain,
    ShortMap,
    coerce,
    compose,
    group_values,
    homotopy_classes,
    identity,
    map_distance,
    points_r_homotopic,
    validate_space,
    verify_homotopy_chain,
)

TWO = [[0, 1], [1, 0]]
CYCLE3 = [[0, 1, 2], [2, 0, 1], [1, 2, 0]]


def test_backend_inference():
    assert validate_space(TWO).backend == "int"
    assert validate_space([[0, Fraction(1, 2)], [1, 0]]).backend == "rational"
    assert validate_space([[0, 1.5], [1, 0]]).backend == "float"
    assert validate_space([[0, INF], [1, 0]]).backend == "int"


@pytest.mark.parametrize(
    "matrix, error",
    [
        ([[0, 1]], NotSquare),
        ([[0, -1], [1, 0]], NegativeEntry),
        ([[1, 1], [1, 0]], NonzeroDiagonal),
        ([[0, 0], [1, 0]], ZeroOffDiagonal),
        ([[0, 1, 5], [1, 0, 1], [5, 1, 0]], TriangleViolation),
        ([[0, float("nan")], [1, 0]], NegativeEntry),
    ],
)
def test_axiom_errors(matrix, error):
    with pytest.raises(error):
        validate_space(matrix)


def test_triangle_tolerance_for_floats():
    m = [[0, 1.0, 2.0 + 1e-12], [1.0, 0, 1.0], [2.0, 1.0, 0]]
    X = validate_space(m, tau=1e-9)
    assert X.tau == 1e-9
    with pytest.raises(TriangleViolation):
        validate_space(m, tau=0.0)


def test_exact_backends_have_zero_tolerance():
    assert validate_space(TWO, tau=0.5).tau == 0


def test_coerce():
    assert coerce(Fraction(4, 2), "int") == 2
    assert coerce(3, "rational") == Fraction(3)
    assert coerce(3, "float") == 3.0
    assert coerce(INF, "int") == INF
    with pytest.raises(BackendMismatch):
        coerce(0.5, "int")
    with pytest.raises(BackendMismatch):
        coerce(Fraction(1, 3), "float")
    with pytest.raises(BackendMismatch):
        coerce(True, "int")


def test_group_values():
    reps, merged = group_values([1.0, 1.0 + 1e-12, 2.0], 1e-9)
    assert reps == [1.0, 2.0]
    assert merged == [(1.0, 1.0 + 1e-12)]


def test_space_basics():
    X = validate_space(CYCLE3)
    assert len(X) == 3
    assert not X.is_symmetric()
    assert X.finite_values() == [1, 2]
    Y = X.subspace([0, 2])
    assert Y.dist == ((0, 2), (1, 0))
    assert Y.labels == (0, 2)
    assert validate_space(TWO) == validate_space([[0, 1], [1, 0]])
    assert hash(validate_space(TWO)) == hash(validate_space([[0, 1], [1, 0]]))


def test_short_maps():
    X = validate_space(CYCLE3)
    rot = ShortMap(X, X, (1, 2, 0))
    assert rot.is_injective() and not rot.is_identity()
    assert compose(rot, compose(rot, rot)).is_identity()
    assert map_distance(identity(X), rot) == 1
    assert map_distance(rot, identity(X)) == 2
    with pytest.raises(NotAShortMap):
        ShortMap(X, X, (1, 0, 2))
    with pytest.raises(NotAShortMap):
        ShortMap(X, X, (0, 1))
    P = validate_space(TWO)
    with pytest.raises(MismatchedSpaces):
        compose(rot, ShortMap(P, P, (0, 1)))
    with pytest.raises(MismatchedSpaces):
        map_distance(rot, ShortMap(P, P, (0, 1)))


def test_constant_map_is_always_short():
    X = validate_space([[0, 1, INF], [INF, 0, INF], [1, 2, 0]])
    for v in X.points:
        ShortMap(X, X, (v,) * 3)


def test_point_homotopy_classes():
    X = validate_space([[0, 1, 3], [1, 0, 2], [3, 2, 0]])
    assert len(homotopy_classes(X, 1).classes()) == 2
    assert points_r_homotopic(X, 0, 2, 2)
    assert not points_r_homotopic(X, 0, 2, 1)
    # strict threshold
    assert len(homotopy_classes(X, 1, strict=True).classes()) == 3


def test_homotopy_chain_checks_both_directions():
    X = validate_space(CYCLE3)
    rot = ShortMap(X, X, (1, 2, 0))
    assert verify_homotopy_chain(HomotopyChain((identity(X), rot), 1))
    assert not verify_homotopy_chain(HomotopyChain((identity(X), compose(rot, rot)), 0))
    with pytest.raises(ValueError):
        HomotopyChain((), 1)


def test_infinite_distance_compares_above_everything():
    X = validate_space([[0, INF], [1, 0]])
    assert X.le(5, X.d(0, 1))
    assert math.isinf(X.d(0, 1))
