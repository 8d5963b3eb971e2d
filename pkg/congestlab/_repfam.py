"""
Representative families of node sets.

A subfamily S of a family F is q-representative for F if every blocker B with
|B| <= q that is avoided by some member of F is also avoided by some member of
S. Inclusion-minimal q-representative subfamilies of p-sets have at most
binom(p + q, p) members.
"""
import itertools
from dataclasses import dataclass
from ._model import ModelMixin
from . import _utils as utils
from .exceptions import *


DEFAULT_FAMILY_BUDGET = 4096
MAX_CHECK_UNIVERSE = 20
MAX_CHECK_Q = 6


def _set_key(s):
    return tuple(sorted(s))


class SetFamily(ModelMixin):
    """A family of node-id sets, optionally annotating each set with a witness."""

    def __init__(self, members=(), witness=None, universe_hint=None):
        members = frozenset(frozenset(m) for m in members)
        union = frozenset().union(*members)
        if universe_hint is None:
            universe_hint = union
        universe_hint = frozenset(universe_hint)
        if not union <= universe_hint:
            raise StructureException("Family members use elements outside the universe")
        if witness is not None:
            witness = {frozenset(k): v for k, v in witness.items()}
            if set(witness) != set(members):
                raise StructureException("Witnesses must annotate exactly the members")
        self.members = members
        self.witness = witness
        self.universe_hint = universe_hint

    @classmethod
    def from_pairs(cls, pairs, key=None, universe_hint=None):
        """Build an annotated family from (set, witness) pairs.

        Duplicate sets are merged: the first witness is kept, or the smallest
        one under `key` when a key is given.
        """
        witness = {}
        for s, w in pairs:
            s = frozenset(s)
            if s not in witness or (key is not None and key(w) < key(witness[s])):
                witness[s] = w
        return cls(witness.keys(), witness=witness, universe_hint=universe_hint)

    @property
    def max_size(self):
        return max((len(m) for m in self.members), default=0)

    def union(self):
        return frozenset().union(*self.members)

    def sorted_members(self):
        return sorted(self.members, key=_set_key)

    def restrict(self, members):
        members = frozenset(frozenset(m) for m in members)
        if not members <= self.members:
            raise StructureException("Can only restrict a family to its own members")
        witness = None
        if self.witness is not None:
            witness = {m: self.witness[m] for m in members}
        return SetFamily(members, witness=witness, universe_hint=self.universe_hint)

    def without(self, member):
        return self.restrict(self.members - {frozenset(member)})

    def witness_of(self, member):
        return None if self.witness is None else self.witness.get(frozenset(member))

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.sorted_members())

    def __contains__(self, member):
        return frozenset(member) in self.members

    def __eq__(self, other):
        if not isinstance(other, SetFamily):
            return NotImplemented
        return self.members == other.members

    def __hash__(self):
        return hash(self.members)

    def __repr__(self):
        return f"SetFamily({[list(m) for m in self.sorted_members()]})"

    def as_dict(self):
        return {"members": [list(m) for m in self.sorted_members()]}


@dataclass(frozen=True)
class Blocker:
    """A set B of at most `budget` elements that family members must avoid."""

    elements: frozenset
    budget: int

    def __post_init__(self):
        if len(self.elements) > self.budget:
            raise StructureException(
                f"Blocker has {len(self.elements)} elements, budget is {self.budget}"
            )

    def avoided_by(self, family):
        return any(m.isdisjoint(self.elements) for m in family.members)


def blockers(universe, q):
    """Every blocker of size at most q drawn from `universe`."""
    universe = sorted(universe)
    for size in range(min(q, len(universe)) + 1):
        for b in itertools.combinations(universe, size):
            yield Blocker(frozenset(b), q)


def is_q_representative(
    sub, full, q, max_universe=MAX_CHECK_UNIVERSE, max_q=MAX_CHECK_Q
):
    """Exhaustive check of the definition over all blockers.

    Blockers are drawn from the union of the members of `full`: elements
    outside it cannot change disjointness with any member.

    Args:
        sub (SetFamily): candidate subfamily of `full`.
        full (SetFamily): the represented family.
        q (int): blocker size bound.

    Returns:
        bool: whether `sub` is q-representative for `full`.
    """
    if not sub.members <= full.members:
        raise ValueError("sub must be a subfamily of full")
    universe = full.union()
    if len(universe) > max_universe or q > max_q:
        raise GuardException(
            f"Exhaustive check limited to |union| <= {max_universe} and q <= {max_q}"
        )
    for b in blockers(universe, q):
        if b.avoided_by(full) and not b.avoided_by(sub):
            return False
    return True


def _popcount(x):
    return bin(x).count("1")


def _hittable(masks, budget):
    """Is there a set of at most `budget` elements meeting every mask?"""
    if not masks:
        return True
    if budget == 0:
        return False
    smallest = min(masks, key=_popcount)
    bits = smallest
    while bits:
        low = bits & -bits
        if _hittable([s for s in masks if not s & low], budget - 1):
            return True
        bits ^= low
    return False


def _covered(member, others, q):
    """True iff every blocker of size <= q avoiding `member` also avoids one of `others`."""
    residual = set()
    for other in others:
        r = other & ~member
        if not r:
            return True
        residual.add(r)
    return not _hittable(list(residual), q)


def minimize(full, q, budget=DEFAULT_FAMILY_BUDGET):
    """Inclusion-minimal q-representative subfamily of `full`.

    A single greedy pass in descending lexicographic order drops every
    member that the remaining members already represent. A member that
    survives is essential when it is visited and stays essential as the
    family shrinks, so the result is inclusion-minimal and has at most
    binom(p + q, p) members. Witnesses of the surviving sets are preserved.

    Args:
        full (SetFamily): family to compress.
        q (int): representativeness parameter.
        budget (int, optional): refuse when binom(p + q, p) exceeds it.

    Returns:
        SetFamily: the minimized subfamily.
    """
    if q < 0:
        raise ValueError(f"q must be non-negative, got {q}")
    p = full.max_size
    if utils.binom(p + q, p) > budget:
        raise GuardException(
            f"binom({p + q}, {p}) exceeds the family budget {budget}"
        )
    index = {x: i for i, x in enumerate(sorted(full.union()))}
    mask = {m: sum(1 << index[x] for x in m) for m in full.members}
    current = sorted(full.members, key=_set_key, reverse=True)
    for m in list(current):
        if _covered(mask[m], [mask[a] for a in current if a != m], q):
            current.remove(m)
    return full.restrict(current)


def compose_check(a, b, c, q):
    """Transitivity on one instance: (b rep a) and (c rep b) implies (c rep a)."""
    if not (c.members <= b.members <= a.members):
        raise ValueError("Families must be nested: c <= b <= a")
    if is_q_representative(b, a, q) and is_q_representative(c, b, q):
        return is_q_representative(c, a, q)
    return True
