import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rhomotopy.errors import ParseError, TriangleViolation
from rhomotopy.formats import (
    format_digraph,
    format_matrix,
    parse_digraph,
    parse_matrix,
    parse_number,
    parse_points,
)
from rhomotopy.generators import discontinuity_points, named_digraph, random_digraph, random_space


def test_two_point_matrix():
    X = parse_matrix("0,1\n1,0")
    assert X.dist == ((0, 1), (1, 0))
    assert X.is_symmetric()


def test_edge_list():
    G = parse_digraph("0 1\n0 3\n1 2\n3 2\n2 0\n")
    assert G.arrows == named_digraph("lev").arrows


def test_point_cloud():
    text = "\n".join(f"{x},{y}" for x, y in discontinuity_points(0))
    X = parse_points(text)
    assert len(X) == 6
    assert X.backend == "float"
    assert X.coords is not None
    assert parse_points("0 0\n3 4", "manhattan").dist[0][1] == 7.0
    assert parse_points("0 0\n3 4", "chebyshev").dist[0][1] == 4.0
    with pytest.raises(ValueError):
        parse_points("0 0\n3 4", "cosine")


def test_numbers():
    assert parse_number("3") == 3
    assert parse_number("3/6") == Fraction(1, 2)
    assert parse_number("0.5") == 0.5
    assert math.isinf(parse_number("inf"))
    with pytest.raises(ParseError):
        parse_number("1/0")


def test_comments_and_directives():
    X = parse_matrix("# a comment\n# backend: float\n0 1  # trailing\n1 0\n")
    assert X.backend == "float"
    assert X.dist[0][1] == 1.0


def test_parse_errors_carry_positions():
    with pytest.raises(ParseError) as err:
        parse_matrix("0,1\n1,x")
    assert (err.value.line, err.value.col) == (2, 3)
    with pytest.raises(ParseError) as err:
        parse_matrix("0,1\n1,0,2")
    assert err.value.line == 2
    with pytest.raises(ParseError):
        parse_matrix("# nothing\n")
    with pytest.raises(ParseError) as err:
        parse_digraph("0 1\n1 a")
    assert (err.value.line, err.value.col) == (2, 3)
    with pytest.raises(ParseError):
        parse_digraph("0 1 2")
    with pytest.raises(ParseError):
        parse_points("0 0\n1 2 3")


def test_axiom_violations_surface():
    with pytest.raises(TriangleViolation):
        parse_matrix("0 1 5\n1 0 1\n5 1 0")


def test_isolated_vertices():
    G = parse_digraph("7\n0 1\n")
    assert G.vertices == (0, 1, 7)
    assert parse_digraph(format_digraph(G)) == G or parse_digraph(format_digraph(G)).arrows == G.arrows


@pytest.mark.parametrize("backend", ["int", "rational", "float"])
def test_matrix_round_trip(backend):
    rng = random.Random(backend)
    for _ in range(30):
        X = random_space(rng.randint(1, 6), rng, backend=backend, infinite_prob=0.2)
        Y = parse_matrix(format_matrix(X))
        assert Y.backend == X.backend
        assert Y.dist == X.dist
        assert all(type(a) is type(b) for ra, rb in zip(X.dist, Y.dist) for a, b in zip(ra, rb))


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(st.floats(-1e6, 1e6), st.floats(-1e6, 1e6)), min_size=1, max_size=6, unique=True))
def test_point_cloud_round_trip(points):
    text = "\n".join(f"{x!r} {y!r}" for x, y in points)
    try:
        X = parse_points(text)
    except ValueError:
        return  # coincident points after rounding are rejected by the axioms
    Y = parse_matrix(format_matrix(X), tau=X.tau)
    assert Y.dist == X.dist


def test_digraph_round_trip():
    rng = random.Random(0)
    for _ in range(20):
        G = random_digraph(rng.randint(1, 6), rng)
        H = parse_digraph(format_digraph(G))
        assert H.vertices == G.vertices and H.arrows == G.arrows
