import math
import pytest
from fractions import Fraction
from hypothesis import given, settings, strategies as st
from congestlab import graphs
from congestlab._orient import distributed_orientation, peel_rounds
from congestlab.exceptions import *


def test_peel_rounds():
    print("Testing peeling schedule length")

    assert peel_rounds(1) == 1
    assert peel_rounds(2) == 3
    assert peel_rounds(10) == 7
    assert peel_rounds(100, C=4) == 8
    assert peel_rounds(100, C=Fraction(5, 2)) >= peel_rounds(100, C=4)

    with pytest.raises(ValueError):
        peel_rounds(10, C=2)
    with pytest.raises(ValueError):
        peel_rounds(10, C=Fraction(3, 2))


def test_orient_small(petersen):
    print("Testing orientation of small graphs")

    o, state, m = distributed_orientation(graphs.path_graph(10), 1)
    # Every node has degree at most C*d, so everything goes at once
    assert state.iteration_sizes == [10, 0]
    assert state.iterations == 1
    assert all(r == 0 for r in state.removed_at.values())
    assert o.max_outdegree() == 1
    assert graphs.is_acyclic(o)
    assert m.rounds_used == 1 + peel_rounds(10)
    assert m.phases["ids"] == 1

    o, state, _ = distributed_orientation(petersen, 1)
    assert state.iterations == 1
    assert o.max_outdegree() <= state.alpha == 3

    # Ties on the iteration are broken by id
    for t, h in o.arcs():
        assert state.key(t) < state.key(h)

    with pytest.raises(DegeneracyException):
        distributed_orientation(graphs.complete_graph(3), 0)
    with pytest.raises(DegeneracyException):
        distributed_orientation(graphs.complete_graph(8), 1)
    with pytest.raises(ValueError):
        distributed_orientation(petersen, -1)


def test_orient_degenerate():
    print("Testing orientation of degenerate graphs")

    for seed in range(4):
        g = graphs.degenerate_graph(200, 3, seed)
        o, state, m = distributed_orientation(g, 3)
        assert graphs.is_acyclic(o)
        assert o.max_outdegree() <= state.alpha == 9
        assert state.shrinkage_holds()
        assert state.iterations <= peel_rounds(g.n)
        assert state.survivors == []
        assert m.max_message_bits <= 16 + 8

    g = graphs.degenerate_graph(100, 2, 0)
    o, state, _ = distributed_orientation(g, 2, C=Fraction(5, 2))
    assert o.max_outdegree() <= 5
    assert state.as_dict()["C"] == "5/2"


@settings(max_examples=50, deadline=None)
@given(n=st.integers(1, 60), d=st.integers(1, 5), seed=st.integers(0, 1000))
def test_orient_properties(n, d, seed):
    g = graphs.degenerate_graph(n, d, seed)
    o, state, _ = distributed_orientation(g, d)
    assert graphs.is_acyclic(o)
    assert o.max_outdegree() <= math.ceil(3 * d)
    assert state.shrinkage_holds()
    for v in g:
        assert o.outdeg(v) + o.indeg(v) == g.degree(v)


@pytest.mark.slow
def test_orientation_sweep():
    print("Testing orientation over generated degenerate graphs")

    for i in range(104):
        d = 1 + i % 8
        n = 50 * (1 + i // 8 % 10)
        g = graphs.degenerate_graph(n, d, seed=i)
        assert g.m <= n * d
        o, state, _ = distributed_orientation(g, d)
        assert graphs.is_acyclic(o), (i, n, d)
        assert o.max_outdegree() <= 3 * d
        assert state.survivors == []
        sizes = state.iteration_sizes
        assert all(3 * b <= 2 * a for a, b in zip(sizes, sizes[1:]))
        assert state.iterations <= math.ceil(math.log(n, 1.5)) + 1
