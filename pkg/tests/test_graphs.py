import pytest
import congestlab as cl
from congestlab import graphs
from congestlab.exceptions import *


def test_parse_graph():
    print("Testing graph file parsing")

    g = graphs.parse_graph("3 2\n0 1\n1 2")
    assert g.node_ids == (0, 1, 2)
    assert g.edges == {(0, 1), (1, 2)}

    g = graphs.parse_graph("1 0")
    assert g.n == 1 and g.m == 0

    # Edge line order and comments are irrelevant
    g1 = graphs.parse_graph("# a path\n3 2\n\n2 1\n1 0\n")
    g2 = graphs.parse_graph("3 2\n0 1\n1 2\n")
    assert g1 == g2

    # Declared ids
    g = graphs.parse_graph("2 1\nnodes 5 9\n9 5\n")
    assert g.node_ids == (5, 9)
    assert g.has_edge(5, 9)

    with pytest.raises(GraphFormatException) as e:
        graphs.parse_graph("3 2\n0 1\n0 1")
    assert e.value.line == 3

    with pytest.raises(GraphFormatException) as e:
        graphs.parse_graph("3 1\n1 1")
    assert e.value.line == 2

    with pytest.raises(GraphFormatException) as e:
        graphs.parse_graph("3 1\n0 7")
    assert e.value.line == 2

    with pytest.raises(GraphFormatException) as e:
        graphs.parse_graph("3 2\n0 x")
    assert e.value.line == 2

    # Too few edge lines
    with pytest.raises(GraphFormatException):
        graphs.parse_graph("3 2\n0 1")
    with pytest.raises(GraphFormatException):
        graphs.parse_graph("")


def test_serialize_roundtrip(tmp_path, petersen):
    print("Testing canonical serialization")

    for g in [petersen, graphs.path_graph(1), graphs.parse_graph("2 1\nnodes 5 9\n9 5\n")]:
        text = graphs.serialize_graph(g)
        assert graphs.parse_graph(text) == g
        # Canonical form is stable
        assert graphs.serialize_graph(graphs.parse_graph(text)) == text

    assert "nodes" not in graphs.serialize_graph(petersen)
    path = str(tmp_path / "petersen.txt")
    graphs.write_graph(petersen, path)
    assert graphs.read_graph(path) == petersen


def test_graph_invariants():
    print("Testing graph invariants")

    with pytest.raises(StructureException):
        cl.Graph([0, 1], [(0, 0)])
    with pytest.raises(StructureException):
        cl.Graph([0, 1], [(0, 1), (1, 0)])
    with pytest.raises(StructureException):
        cl.Graph([0, 1], [(0, 2)])
    with pytest.raises(StructureException):
        cl.Graph([0, 0], [])
    # Ids are polynomially bounded in n
    with pytest.raises(StructureException):
        cl.Graph([0, 10_000], [])
    assert cl.Graph([0, 10_000], [], id_bound=10_000).n == 2

    g = graphs.paw_graph()
    assert g.induced([0, 1, 2]) == graphs.complete_graph(3)
    assert g.edge_induced([(2, 3)]).node_ids == (2, 3)
    assert g.induced([0, 1, 2]).is_subgraph_of(g)
    assert not g.is_subgraph_of(g.induced([0, 1, 2]))


def test_degeneracy():
    print("Testing degeneracy")

    assert graphs.degeneracy(graphs.path_graph(5))[0] == 1
    assert graphs.degeneracy(graphs.star_graph(6))[0] == 1
    assert graphs.degeneracy(graphs.spider_graph(3, 2))[0] == 1
    assert graphs.degeneracy(graphs.cycle_graph(7))[0] == 2
    assert graphs.degeneracy(graphs.complete_graph(5))[0] == 4
    assert graphs.degeneracy(graphs.petersen_graph())[0] == 3
    assert graphs.degeneracy(cl.Graph())[0] == 0

    for seed in range(5):
        g = graphs.random_graph(30, 0.2, seed)
        d, order = graphs.degeneracy(g)
        assert sorted(order) == list(g.node_ids)
        assert graphs.back_degree(g, order) == d
        assert graphs.edge_count_bound_check(g, d)


def test_orientations():
    print("Testing exact orientations")

    o = graphs.exact_d_orientation(graphs.path_graph(3))
    assert o.max_outdegree() <= 1
    o = graphs.exact_d_orientation(graphs.cycle_graph(4))
    assert graphs.is_acyclic(o) and o.max_outdegree() == 2
    k4 = graphs.complete_graph(4)
    o = graphs.exact_d_orientation(k4)
    assert sorted(o.outdeg(v) for v in k4) == [0, 1, 2, 3]
    assert graphs.is_acyclic(o)

    # A cyclically oriented triangle
    c3 = graphs.cycle_graph(3)
    cyclic = cl.Orientation(c3, {(0, 1): 1, (1, 2): 2, (0, 2): 0})
    assert not graphs.is_acyclic(cyclic)
    with pytest.raises(StructureException):
        graphs.removal_order(cyclic)

    with pytest.raises(StructureException):
        cl.Orientation(c3, {(0, 1): 1, (1, 2): 2})
    with pytest.raises(StructureException):
        cl.Orientation(c3, {(0, 1): 2, (1, 2): 2, (0, 2): 0})

    for seed in range(5):
        g = graphs.degenerate_graph(40, 3, seed)
        o = graphs.exact_d_orientation(g)
        d, _ = graphs.degeneracy(g)
        assert graphs.is_acyclic(o)
        assert o.max_outdegree() <= d <= 3
        for v in g:
            assert o.indeg(v) + o.outdeg(v) == g.degree(v)
        # Reverse direction: a removal order with back-degree equal to the outdegree
        order = graphs.removal_order(o)
        assert graphs.back_degree(g, order) == o.max_outdegree()
        assert d <= o.max_outdegree()


def test_generators():
    print("Testing seeded generators")

    assert graphs.random_graph(20, 0.2, 7) == graphs.random_graph(20, 0.2, 7)
    assert graphs.degenerate_graph(50, 4, 3) == graphs.degenerate_graph(50, 4, 3)
    assert graphs.degenerate_graph(50, 4, 3) != graphs.degenerate_graph(50, 4, 4)
    for d in range(1, 6):
        g = graphs.degenerate_graph(60, d, d)
        assert graphs.degeneracy(g)[0] <= d

    g = graphs.degenerate_graph(30, 3, 0)
    sub = graphs.random_subgraph(g, 0.5, 0)
    assert sub.is_subgraph_of(g)
    assert sub.node_ids == g.node_ids

    assert graphs.petersen_graph().m == 15
    assert graphs.hypercube_graph(3).n == 8 and graphs.hypercube_graph(3).m == 12
    assert graphs.complete_bipartite_graph(2, 3).m == 6
    assert graphs.spider_graph(3, 2).n == 7
    assert graphs.star_graph(3).degree(0) == 3

    assert graphs.path_edges(4) == 4
    assert graphs.path_edges(4, "nodes") == 3
    with pytest.raises(ValueError):
        graphs.path_edges(4, "hops")
