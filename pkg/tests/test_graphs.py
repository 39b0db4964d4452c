import pytest

from fairsplit.errors import InputError
from fairsplit.graphs import (Graph, VertexPartition, cliques_plus_isolated,
                              consecutive_partition, cycle_graph,
                              degree_profile, generate_family, is_independent,
                              matching_graph, path_graph, path_union_cliques,
                              power_path, single_block_partition)


def test_graph_basics():
    g = Graph(4, [(1, 2), (2, 3)])
    assert g.n == 4
    assert g.has_edge(2, 1)
    assert not g.has_edge(1, 3)
    assert g.degree(2) == 2
    assert g.neighbors(4) == set()


def test_graph_rejects_bad_edges():
    with pytest.raises(InputError):
        Graph(3, [(1, 1)])
    with pytest.raises(InputError):
        Graph(3, [(1, 4)])
    with pytest.raises(InputError):
        Graph(3, [(0, 2)])


def test_second_neighborhood_is_distance_exactly_two():
    p = path_graph(5)
    assert p.second_neighborhood(3) == {1, 5}
    assert p.second_neighborhood(1) == {3}
    m = matching_graph(4)
    assert m.second_neighborhood(1) == set()


def test_degree_profile():
    prof = degree_profile(path_graph(5))
    assert prof[3] == (2, 2)
    assert prof[1] == (1, 1)


def test_path_and_cycle():
    assert len(path_graph(6).edges) == 5
    assert len(cycle_graph(6).edges) == 6
    with pytest.raises(InputError):
        cycle_graph(2)


def test_power_path_edges():
    g = power_path(6, 2)
    assert g.has_edge(1, 3) and not g.has_edge(1, 4)
    # r = 1 is the ordinary path
    assert power_path(5, 1).edges == path_graph(5).edges


def test_cliques_plus_isolated_shape():
    g = cliques_plus_isolated(2, 4)  # two triangles + isolated = 7 vertices
    assert g.n == 7
    assert len(g.edges) == 6
    assert g.degree(7) == 0


def test_path_union_cliques_counts():
    g = path_union_cliques(3, 3)  # path on 7 vertices + 2-cliques
    assert g.n == (3 - 1) * 3 + 1
    # path edges all present
    for i in range(1, g.n):
        assert g.has_edge(i, i + 1)
    with pytest.raises(InputError):
        path_union_cliques(1, 3)


def test_generate_family_dispatch():
    g = generate_family("cycle", n=5)
    assert len(g.edges) == 5
    with pytest.raises(InputError):
        generate_family("nope", n=3)
    with pytest.raises(InputError):
        generate_family("power_path", n=3)  # missing r


def test_partition_validation():
    p = VertexPartition([(3, 1), (2,)], 3)
    assert p.blocks[0] == (1, 3)
    assert p.block_of(2) == 1
    assert p.sizes() == [2, 1]
    with pytest.raises(InputError):
        VertexPartition([(1, 2), (2, 3)], 3)
    with pytest.raises(InputError):
        VertexPartition([(1,), (3,)], 3)  # hole at 2


def test_partition_helpers():
    assert single_block_partition(4).blocks == [(1, 2, 3, 4)]
    p = consecutive_partition([2, 3])
    assert p.blocks == [(1, 2), (3, 4, 5)]


def test_relabel_round_trip():
    import random
    rng = random.Random(11)
    g = cycle_graph(7)
    for _ in range(20):
        perm = list(range(1, 8))
        rng.shuffle(perm)
        mapping = {i + 1: perm[i] for i in range(7)}
        h = g.relabel(mapping)
        assert len(h.edges) == len(g.edges)
        inverse = {v: k for k, v in mapping.items()}
        assert h.relabel(inverse) == g


def test_is_independent():
    g = cycle_graph(5)
    assert is_independent(g, [1, 3])
    assert not is_independent(g, [1, 2])
    assert is_independent(g, [])
