"""
Distributed acyclic orientation of d-degenerate graphs by iterated peeling.

V_0 = V and V_{i+1} keeps the nodes of V_i whose degree inside G[V_i] exceeds
C*d. Each iteration costs one announcement round. Every edge points at the
endpoint with the larger (i_v, id) key, which gives an acyclic orientation
with outdegree at most ceil(C*d).
"""
import functools
import logging
import math
from fractions import Fraction
from ._model import ModelMixin, Orientation
from ._sim import PhasedProtocol, SimConfig, run, metrics
from .exceptions import *


logger = logging.getLogger(__name__)

DEFAULT_C = 3


def _check_c(C):
    C = Fraction(C)
    if C <= 2:
        raise ValueError(f"The peeling constant C must exceed 2, got {C}")
    return C


def peel_rounds(n, C=DEFAULT_C):
    """Iterations reserved for peeling: ceil(log_{C/2} n) + 1."""
    base = _check_c(C) / 2
    t = 0
    while base**t < n:
        t += 1
    return t + 1


class PeelState(ModelMixin):
    """Outcome of a peeling run: i_v per node and |V_i| per iteration."""

    def __init__(self, C, d, max_iterations, removed_at):
        self.C = C
        self.d = d
        self.alpha = math.ceil(C * d)
        self.max_iterations = max_iterations
        self.removed_at = dict(removed_at)
        self.iteration_sizes = []
        for i in range(max_iterations + 1):
            size = sum(1 for r in self.removed_at.values() if r is None or r >= i)
            self.iteration_sizes.append(size)
            if size == 0:
                break

    @property
    def survivors(self):
        return sorted(v for v, r in self.removed_at.items() if r is None)

    @property
    def iterations(self):
        """Number of non-empty V_i."""
        return sum(1 for size in self.iteration_sizes if size > 0)

    def shrinkage_holds(self):
        """|V_{i+1}| <= (2/C) |V_i| for every recorded iteration."""
        sizes = self.iteration_sizes
        return all(sizes[i + 1] * self.C <= 2 * sizes[i] for i in range(len(sizes) - 1))

    def key(self, v):
        r = self.removed_at[v]
        return (self.max_iterations if r is None else r, v)

    def as_dict(self):
        return {
            "C": str(self.C),
            "d": self.d,
            "alpha": self.alpha,
            "iterations": self.iterations,
            "iteration_sizes": self.iteration_sizes,
        }


class NodePeel(object):
    def __init__(self, node, neighbours):
        self.node = node
        self.alive = set(neighbours)
        self.removed_at = None
        self.neighbour_removed_at = {}
        self.removing = False

    def key(self, rounds):
        return (rounds if self.removed_at is None else self.removed_at, self.node)

    def out_neighbours(self, rounds):
        """Neighbours with a larger (i, id) key, in ascending id order."""
        mine = self.key(rounds)
        out = []
        for u in sorted(self.neighbour_removed_at.keys() | self.alive):
            r = self.neighbour_removed_at.get(u)
            if ((rounds if r is None else r), u) > mine:
                out.append(u)
        return out


class PeelProtocol(PhasedProtocol):
    """Peeling with one 1-bit announcement round per iteration."""

    label = "orientation"

    def __init__(self, d, C=DEFAULT_C):
        if d < 0:
            raise ValueError(f"d must be non-negative, got {d}")
        self.d = d
        self.C = _check_c(C)

    @property
    def alpha(self):
        return math.ceil(self.C * self.d)

    def build_phases(self):
        self.rounds = peel_rounds(self.params.n, self.C)
        return [
            self.phase(
                f"peel-{i}", 1, functools.partial(self._emit_peel, i), functools.partial(self._absorb_peel, i)
            )
            for i in range(self.rounds)
        ]

    def initialize(self, view):
        view.state["peel"] = NodePeel(view.own_id, view.neighbour_ids)

    def _emit_peel(self, i, view):
        peel = view.state["peel"]
        peel.removing = peel.removed_at is None and len(peel.alive) <= self.C * self.d
        return "1" if peel.removing else "0"

    def _absorb_peel(self, i, view, received):
        peel = view.state["peel"]
        for u, bits in received.items():
            if bits == "1":
                peel.alive.discard(u)
                peel.neighbour_removed_at[u] = i
        if peel.removing:
            peel.removed_at = i
            peel.removing = False

    def out_neighbours(self, view):
        return view.state["peel"].out_neighbours(self.rounds)

    def output(self, view):
        return view.state["peel"]


def peel_state(protocol, peels):
    removed_at = {v: peel.removed_at for v, peel in peels.items()}
    return PeelState(protocol.C, protocol.d, protocol.rounds, removed_at)


def check_peeled(state, d):
    if state.survivors:
        raise DegeneracyException(
            f"Degeneracy bound {d} violated: {len(state.survivors)} nodes remain after "
            f"{state.max_iterations} peeling iterations"
        )


def distributed_orientation(g, d, C=DEFAULT_C, cfg=None):
    """Orient a d-degenerate graph in O(log n) rounds.

    Args:
        g (Graph): the network.
        d (int): degeneracy bound.
        C (Union[int, Fraction], optional): peeling constant, must exceed 2.
        cfg (SimConfig, optional): simulation parameters.

    Returns:
        Tuple[Orientation, PeelState, Metrics]: an acyclic orientation with
            outdegree at most ceil(C*d), the peeling record and round metrics.
    """
    protocol = PeelProtocol(d, C)
    transcript = run(g, protocol, cfg or SimConfig())
    state = peel_state(protocol, transcript.node_outputs)
    check_peeled(state, d)
    orientation = Orientation.from_key(g, state.key)
    logger.debug(
        f"Oriented n={g.n}, d={d}, C={protocol.C} in {state.iterations} iterations, "
        f"max outdegree {orientation.max_outdegree()}"
    )
    return orientation, state, metrics(transcript)
