import pytest
from congestlab import graphs
from congestlab import oracle
from congestlab._targets import available_targets
from congestlab._enumerate import (
    make_target,
    enumerate_target,
    enumerate_cliques,
    enumerate_c4,
    enumerate_c5,
    enumerate_budget,
)
from congestlab.exceptions import *


def test_targets():
    print("Testing the target registry")

    assert sorted(available_targets) == ["c4", "c5", "clique"]
    assert all(cls.name == name for name, cls in available_targets.items())
    assert make_target("clique", k=4).label == "clique-4"
    assert make_target("c5").needs_paths
    assert not make_target("c4").needs_paths

    with pytest.raises(ValueError):
        make_target("k5")
    with pytest.raises(ValueError):
        make_target("clique", k=2)
    # A d-degenerate graph has no clique on more than d + 1 nodes
    with pytest.raises(ValueError):
        make_target("clique", k=5).check(3)
    make_target("clique", k=4).check(3)


def test_cliques(k4):
    print("Testing clique enumeration")

    copies, m = enumerate_cliques(k4, 3, 3)
    assert len(copies) == 4
    assert copies == oracle.oracle_enumerate(k4, graphs.complete_graph(3))
    assert m.rounds_used == enumerate_budget(k4, make_target("clique", k=3), 3)

    copies, _ = enumerate_cliques(k4, 4, 3)
    assert len(copies) == 1

    copies, _ = enumerate_cliques(graphs.cycle_graph(5), 3, 2)
    assert len(copies) == 0

    with pytest.raises(ValueError):
        enumerate_cliques(k4, 5, 3)


def test_clique_sinks():
    print("Testing that cliques are owned by their sink")

    for seed in range(3):
        g = graphs.degenerate_graph(40, 4, seed)
        for k in [3, 4]:
            copies, _ = enumerate_cliques(g, k, 4)
            sigma = copies.orientation
            for copy in copies:
                sink = copies.owner[copy]
                assert all(not sigma.points(sink, x) for x in copy.nodes if x != sink)
                assert sink in copies.reporters(copy)


def test_cycles(k23, petersen):
    print("Testing 4-cycle and 5-cycle enumeration")

    copies, _ = enumerate_c4(graphs.complete_bipartite_graph(2, 2), 2)
    assert len(copies) == 1
    copies, _ = enumerate_c4(k23, 2)
    assert len(copies) == 3
    copies, _ = enumerate_c4(petersen, 3)
    assert len(copies) == 0

    copies, _ = enumerate_c5(graphs.cycle_graph(5), 2)
    assert len(copies) == 1
    copies, m = enumerate_c5(petersen, 3)
    assert len(copies) == 12
    assert "paths" in m.phases


def test_against_oracle():
    print("Testing enumeration against the oracle")

    for seed in range(3):
        g = graphs.degenerate_graph(30, 3, seed)
        for target in [make_target("clique", k=3), make_target("clique", k=4), make_target("c4"), make_target("c5")]:
            copies, _ = enumerate_target(g, target, 3)
            assert copies == oracle.oracle_enumerate(g, target.graph)
            for copy in copies:
                copy.validate(g)
                assert copies.owner[copy] in copies.reporters(copy)
                # Local reports only hold copies through the reporting node
                assert set(copies.reporters(copy)) <= copy.nodes


def test_dedup():
    print("Testing designated reporting")

    g = graphs.degenerate_graph(30, 3, 5)
    for target in [make_target("clique", k=3), make_target("c4"), make_target("c5")]:
        full, _ = enumerate_target(g, target, 3)
        copies, _ = enumerate_target(g, target, 3, dedup=True)
        assert copies == full
        assert sum(len(r) for r in copies.reports.values()) == len(copies)
        for copy in copies:
            assert copies.reporters(copy) == [copies.owner[copy]]


def test_budget_and_faults():
    print("Testing enumeration budgets and degeneracy faults")

    g = graphs.degenerate_graph(50, 3, 1)
    for target in [make_target("clique", k=3), make_target("c5")]:
        _, m = enumerate_target(g, target, 3)
        assert m.rounds_used == enumerate_budget(g, target, 3)
        assert m.max_message_bits <= 16 * 6

    # K6 is 5-degenerate; with d = 1 the peeling stalls
    with pytest.raises(DegeneracyException):
        enumerate_c4(graphs.complete_graph(6), 1)


@pytest.mark.slow
def test_enumeration_sweep():
    print("Testing enumeration over seeded random graphs")

    targets = [make_target("clique", k=3), make_target("clique", k=4), make_target("c4"), make_target("c5")]
    for i in range(100):
        g = graphs.random_graph(20 + 10 * (i % 5), (0.05, 0.1, 0.15)[i % 3], seed=i)
        d = max(graphs.degeneracy(g)[0], 3)
        for target in targets:
            copies, m = enumerate_target(g, target, d)
            assert copies == oracle.oracle_enumerate(g, target.graph), (i, target.label)
            assert m.rounds_used == enumerate_budget(g, target, d)
            if target.name != "clique":
                continue
            sigma = copies.orientation
            for copy in copies:
                sink = copies.owner[copy]
                assert sink in copies.reporters(copy)
                assert all(not sigma.points(sink, x) for x in copy.nodes if x != sink)
