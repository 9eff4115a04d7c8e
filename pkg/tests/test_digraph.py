import pytest

from rhomotopy.digraph import (
    Digraph,
    digraph_retract_from_points,
    distance_table,
    is_convex_subdigraph,
    is_digraph_morphism,
    shortest_path_space,
)
from rhomotopy.errors import NotARetraction, NotASubdigraph, NotShort
from rhomotopy.generators import directed_cycle, directed_path, grid_digraph, named_digraph
from rhomotopy.space import INF


def test_shortest_paths_of_the_four_vertex_digraph():
    X = shortest_path_space(named_digraph("lev"))
    assert X.dist == (
        (0, 1, 2, 1),
        (2, 0, 1, 3),
        (1, 2, 0, 2),
        (2, 3, 1, 0),
    )
    assert X.backend == "int"
    assert not X.is_symmetric()


def test_unreachable_vertices_are_infinite():
    X = shortest_path_space(directed_path(3))
    assert X.dist[0][2] == 2
    assert X.dist[2][0] == INF


def test_loops_and_unknown_vertices():
    G = Digraph(2, [(0, 0), (0, 1)])
    assert G.arrows == ((0, 1),)
    with pytest.raises(ValueError):
        Digraph(2, [(0, 5)])


def test_labels_follow_vertex_ids():
    G = Digraph([10, 20, 30], [(10, 20), (20, 30)])
    X = shortest_path_space(G)
    assert X.labels == (10, 20, 30)
    assert distance_table(G)[10][30] == 2


def test_retract_onto_the_cycle():
    G = named_digraph("lev")
    H = digraph_retract_from_points(G, [0, 1, 2], {0: 0, 1: 1, 2: 2, 3: 1})
    assert H.arrows == ((0, 1), (1, 2), (2, 0))
    assert is_digraph_morphism(G, H, {0: 0, 1: 1, 2: 2, 3: 1})
    assert is_convex_subdigraph(G, H)


def test_retract_errors():
    G = named_digraph("lev")
    with pytest.raises(NotARetraction):
        digraph_retract_from_points(G, [0, 1, 2], {0: 1, 1: 1, 2: 2, 3: 1})
    with pytest.raises(NotARetraction):
        digraph_retract_from_points(G, [0, 1, 2], {0: 0, 1: 1, 2: 2})
    with pytest.raises(NotShort):
        digraph_retract_from_points(G, [0, 1, 2], {0: 0, 1: 1, 2: 2, 3: 0})


def test_convexity():
    G = directed_cycle(4)
    H = Digraph([0, 1, 2], [(0, 1), (1, 2)])
    # 2 -> 0 takes two steps in G but is unreachable in H
    assert not is_convex_subdigraph(G, H)
    with pytest.raises(NotASubdigraph):
        is_convex_subdigraph(G, Digraph([0, 2], [(0, 2)]))


def test_grid():
    G = grid_digraph(2, 3)
    X = shortest_path_space(G)
    assert X.dist[0][5] == 3
    assert X.dist[5][0] == INF
