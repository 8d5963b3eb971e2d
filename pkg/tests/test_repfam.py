import itertools
import pytest
from hypothesis import given, settings, strategies as st
from congestlab._repfam import (
    SetFamily,
    Blocker,
    blockers,
    is_q_representative,
    minimize,
    compose_check,
)
from congestlab import _utils as utils
from congestlab.exceptions import *


def family(*members):
    return SetFamily(members)


@st.composite
def families(draw, max_universe=12, max_size=4, max_members=12):
    universe = list(range(1, draw(st.integers(2, max_universe)) + 1))
    p = draw(st.integers(1, max_size))
    members = draw(
        st.lists(
            st.sets(st.sampled_from(universe), min_size=1, max_size=p),
            min_size=1,
            max_size=max_members,
        )
    )
    return SetFamily(members)


def test_set_family():
    print("Testing SetFamily")

    f = SetFamily.from_pairs([({1, 2}, (2, 1)), ({1, 2}, (1, 2)), ({3}, (3,))], key=tuple)
    assert len(f) == 2
    assert f.witness_of({1, 2}) == (1, 2)
    assert f.max_size == 2
    assert f.union() == {1, 2, 3}
    assert {3} in f and {1} not in f
    assert [sorted(m) for m in f] == [[1, 2], [3]]
    assert f.without({3}) == family({1, 2})
    assert f.without({3}).witness_of({1, 2}) == (1, 2)

    # Without a key the first witness wins
    f = SetFamily.from_pairs([({1, 2}, "a"), ({1, 2}, "b")])
    assert f.witness_of({1, 2}) == "a"

    with pytest.raises(StructureException):
        SetFamily([{1, 5}], universe_hint={1, 2})
    with pytest.raises(StructureException):
        SetFamily([{1}], witness={frozenset({2}): "x"})
    with pytest.raises(StructureException):
        f.restrict([{7}])
    with pytest.raises(StructureException):
        Blocker(frozenset({1, 2}), 1)
    assert len(list(blockers({1, 2, 3}, 2))) == 7


def test_is_q_representative():
    print("Testing is_q_representative")

    f = family({1, 2}, {2, 3}, {4})
    for q in range(4):
        assert is_q_representative(f, f, q)
    assert not is_q_representative(family({1}), family({1}, {2}), 1)
    assert is_q_representative(family({1}), family({1}, {2}), 0)

    pairs = [set(c) for c in itertools.combinations([1, 2, 3], 2)]
    full = SetFamily(pairs)
    for kept in itertools.combinations(pairs, 2):
        assert not is_q_representative(SetFamily(kept), full, 1)

    with pytest.raises(ValueError):
        is_q_representative(family({9}), full, 1)
    with pytest.raises(GuardException):
        is_q_representative(full, full, 7)
    big = SetFamily([{i} for i in range(21)])
    with pytest.raises(GuardException):
        is_q_representative(big, big, 1)


def test_minimize_examples():
    print("Testing minimize on known families")

    assert minimize(family({1, 2}), 2) == family({1, 2})

    # All 2-subsets of [4] with q = 2 meet the bound with equality
    full = SetFamily(itertools.combinations(range(1, 5), 2))
    result = minimize(full, 2)
    assert len(result) == 6 == utils.binom(4, 2)

    full = family({1, 2}, {1, 3}, {2, 3})
    assert minimize(full, 1) == full

    # With q = 0 one member is enough; larger members are visited first and dropped
    assert minimize(family({1}, {2}, {3}), 0) == family({1})
    assert minimize(family({1, 2}, {1, 3}, {2, 3}), 0) == family({1, 2})

    # Supersets are represented by their subsets
    full = family({1}, {1, 2}, {1, 2, 3})
    assert minimize(full, 2) == family({1})

    # Witnesses survive
    full = SetFamily.from_pairs([({1, 2}, (1, 2)), ({3, 4}, (4, 3))])
    result = minimize(full, 1)
    for m in result:
        assert result.witness_of(m) == full.witness_of(m)

    with pytest.raises(ValueError):
        minimize(full, -1)
    with pytest.raises(GuardException):
        minimize(SetFamily([range(8)]), 8, budget=100)


def test_compose_check():
    print("Testing composition of representative families")

    f = family({1, 2}, {2, 3}, {1, 3})
    assert compose_check(f, f, f, 1)
    a = SetFamily([{1}, {2}, {3}])
    assert compose_check(a, a, minimize(a, 0), 0)
    with pytest.raises(ValueError):
        compose_check(family({1}), family({1}, {2}), family({1}), 1)


@settings(max_examples=500, deadline=None)
@given(full=families(), q=st.integers(0, 4))
def test_minimize_properties(full, q):
    result = minimize(full, q)
    assert result.members <= full.members
    assert is_q_representative(result, full, q)
    assert len(result) <= utils.binom(full.max_size + q, full.max_size)
    # Inclusion-minimal
    for m in result.members:
        assert not is_q_representative(result.without(m), full, q)
    assert minimize(result, q) == result


@settings(max_examples=100, deadline=None)
@given(full=families(max_universe=10), q=st.integers(0, 3), data=st.data())
def test_compose_property(full, q, data):
    members = sorted(full.members, key=sorted)
    b = data.draw(st.lists(st.sampled_from(members), min_size=1, unique=True))
    c = data.draw(st.lists(st.sampled_from(b), min_size=1, unique=True))
    assert compose_check(full, full.restrict(b), full.restrict(c), q)
