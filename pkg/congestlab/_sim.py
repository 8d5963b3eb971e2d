"""
Deterministic round-synchronous engine for the broadcast CONGEST model.

In every round each active node (1) computes locally, (2) emits one bit
string of at most B bits and (3) receives the strings emitted by all of its
neighbours. There is no per-neighbour channel: the engine takes a single
payload per node and delivers that payload on every incident edge.

Most algorithms are written as a `PhasedProtocol`, a fixed sequence of
broadcast phases whose round counts are computed in advance from worst-case
payload sizes. Every phase payload is cut into exactly that many chunks, so
all nodes stay on the same oblivious schedule.
"""
import logging
import os
from abc import ABC, abstractmethod
from dataclasses import dataclass, field, asdict
from typing import Callable, Optional
from ._model import ModelMixin
from . import _codec as codec
from . import _utils as utils
from .exceptions import *


logger = logging.getLogger(__name__)

HEADER_BITS = 16


@dataclass
class SimConfig:
    """Simulation parameters shared by every algorithm.

    The bandwidth on a graph with n nodes is
    B = bandwidth_factor * max(2, ceil(log2 n)) bits per round.
    """

    bandwidth_factor: int = 16
    max_rounds: int = 1_000_000
    header_bits: int = HEADER_BITS
    n_bound: Optional[int] = None
    family_budget: int = 4096
    max_target_nodes: int = 10

    def __post_init__(self):
        if self.bandwidth_factor < 1:
            raise ValueError("bandwidth_factor must be at least 1")
        if self.max_rounds < 1:
            raise ValueError("max_rounds must be at least 1")
        if self.header_bits < 1:
            raise ValueError("header_bits must be at least 1")

    @classmethod
    def from_env(cls, **kwargs):
        """Defaults overlaid with CONGESTLAB_* environment variables, then kwargs."""
        values = {}
        if os.environ.get("CONGESTLAB_BANDWIDTH_FACTOR"):
            values["bandwidth_factor"] = int(os.environ["CONGESTLAB_BANDWIDTH_FACTOR"])
        if os.environ.get("CONGESTLAB_MAX_ROUNDS"):
            values["max_rounds"] = int(os.environ["CONGESTLAB_MAX_ROUNDS"])
        values.update({k: v for k, v in kwargs.items() if v is not None})
        return cls(**values)

    def bandwidth(self, n):
        return self.bandwidth_factor * max(2, utils.log2_ceil(n))

    def resolve(self, g):
        """Round parameters for one graph."""
        n = g.n
        if self.n_bound is not None:
            if self.n_bound < n:
                raise ValueError(f"n_bound {self.n_bound} is below the node count {n}")
            n = self.n_bound
        bandwidth = self.bandwidth(n)
        if bandwidth <= self.header_bits:
            raise ValueError(
                f"Bandwidth {bandwidth} leaves no room beside the {self.header_bits}-bit chunk header"
            )
        id_bits = utils.bit_width(max(g.node_ids, default=0))
        return RoundParams(
            n=n,
            bandwidth=bandwidth,
            id_bits=id_bits,
            header_bits=self.header_bits,
            family_budget=self.family_budget,
        )

    def as_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class RoundParams:
    """Public parameters every node knows at the start of a run."""

    n: int
    bandwidth: int
    id_bits: int
    header_bits: int = HEADER_BITS
    family_budget: int = 4096

    @property
    def chunk_bits(self):
        return self.bandwidth - self.header_bits

    def phase_rounds(self, bits):
        return utils.ceil_div(bits, self.chunk_bits)


def fragment(payload, bandwidth, phase_cap, header_bits=HEADER_BITS):
    """Cut a payload into exactly `phase_cap` chunks of at most `bandwidth` bits.

    Each chunk is a `header_bits` content length followed by the content;
    chunks past the end of the payload are header-only.

    Args:
        payload (str): bit string.
        bandwidth (int): B, the per-round limit.
        phase_cap (int): number of rounds reserved for the phase.
        header_bits (int, optional): width of the length header.

    Returns:
        list: `phase_cap` bit strings.
    """
    room = bandwidth - header_bits
    if room <= 0 or room >= 1 << header_bits:
        raise ValueError(f"Cannot fragment with bandwidth {bandwidth}")
    if len(payload) > room * phase_cap:
        raise PhaseOverflowException(
            f"Payload of {len(payload)} bits does not fit in {phase_cap} rounds of {room} bits"
        )
    chunks = []
    for i in range(phase_cap):
        content = payload[i * room : (i + 1) * room]
        chunks.append(format(len(content), f"0{header_bits}b") + content)
    return chunks


def reassemble(chunks, header_bits=HEADER_BITS):
    parts = []
    for chunk in chunks:
        if len(chunk) < header_bits:
            raise StructureException("Chunk is shorter than its header")
        size = int(chunk[:header_bits], 2)
        content = chunk[header_bits:]
        if len(content) != size:
            raise StructureException(f"Chunk announces {size} bits, carries {len(content)}")
        parts.append(content)
    return "".join(parts)


class NodeView(object):
    """Everything a node may look at: own id, degree, public parameters and its inbox.

    Neighbour ids are unknown (None) until the node has run an id exchange;
    messages arrive by port, numbered 0..degree-1.
    """

    def __init__(self, own_id, degree, params, input=None):
        self.own_id = own_id
        self.degree = degree
        self.params = params
        self.input = input
        self.neighbour_ids = None
        self.received = {}
        self.state = {}

    @property
    def n(self):
        return self.params.n

    def __repr__(self):
        return f"NodeView({self.own_id}, degree={self.degree})"


class NodeAlgorithm(ABC):
    """State machine of a single node. Sub-class this to write raw algorithms."""

    def __init__(self, view):
        self.view = view
        self.halted = False
        self.output = None

    @abstractmethod
    def broadcast(self, round):
        """Bit string sent to every neighbour in `round` (1-based)."""
        raise NotImplementedError()

    @abstractmethod
    def deliver(self, round, messages):
        """Receive the neighbours' strings of `round`, keyed by port."""
        raise NotImplementedError()

    def halt(self, output=None):
        self.halted = True
        self.output = output


class Protocol(ABC):
    """A distributed algorithm: public setup plus one state machine per node."""

    label = "protocol"

    def setup(self, params):
        self.params = params

    @abstractmethod
    def make_node(self, view):
        raise NotImplementedError()

    def phase_log(self):
        return []


@dataclass
class Phase:
    label: str
    rounds: int
    emit: Callable
    absorb: Callable


class PhasedProtocol(Protocol):
    """Protocol made of broadcast phases on a precomputed schedule.

    The first phase is always a one-round id exchange, after which
    `initialize(view)` runs with `view.neighbour_ids` known. Sub-classes
    return their phases from `build_phases()`; each phase has an `emit(view)`
    producing the node's payload and an `absorb(view, received)` consuming
    the neighbours' payloads keyed by neighbour id.
    """

    def setup(self, params):
        super().setup(params)
        id_phase = self.phase("ids", params.id_bits, self._emit_id, self._absorb_ids)
        self.schedule = [id_phase] + [p for p in self.build_phases() if p.rounds > 0]

    def phase(self, label, bits, emit, absorb):
        return Phase(label, self.params.phase_rounds(bits), emit, absorb)

    @abstractmethod
    def build_phases(self):
        raise NotImplementedError()

    def initialize(self, view):
        pass

    def output(self, view):
        return None

    def make_node(self, view):
        return PhasedNode(self, view)

    def budget(self):
        return sum(p.rounds for p in self.schedule)

    def phase_log(self):
        log = []
        start = 1
        for p in self.schedule:
            log.append((p.label, start, start + p.rounds - 1))
            start += p.rounds
        return log

    def _emit_id(self, view):
        return codec.BitWriter().write_uint(view.own_id, self.params.id_bits).getvalue()

    def _absorb_ids(self, view, received):
        view.neighbour_ids = tuple(
            codec.BitReader(received[port]).read_uint(self.params.id_bits)
            for port in range(view.degree)
        )
        self.initialize(view)


class PhasedNode(NodeAlgorithm):
    def __init__(self, protocol, view):
        super().__init__(view)
        self.protocol = protocol
        self._phase = 0
        self._chunks = None
        self._inbox = None
        self._step = 0
        self._check_done()

    def _check_done(self):
        if self._phase >= len(self.protocol.schedule):
            self.halt(self.protocol.output(self.view))

    def broadcast(self, round):
        phase = self.protocol.schedule[self._phase]
        if self._chunks is None:
            params = self.view.params
            self._chunks = fragment(
                phase.emit(self.view), params.bandwidth, phase.rounds, params.header_bits
            )
            self._inbox = [[] for _ in range(self.view.degree)]
            self._step = 0
        return self._chunks[self._step]

    def deliver(self, round, messages):
        for port, chunk in messages.items():
            self._inbox[port].append(chunk)
        self._step += 1
        phase = self.protocol.schedule[self._phase]
        if self._step < phase.rounds:
            return
        payloads = [reassemble(c, self.view.params.header_bits) for c in self._inbox]
        if self.view.neighbour_ids is None:
            received = dict(enumerate(payloads))
        else:
            received = dict(zip(self.view.neighbour_ids, payloads))
        self.view.received = received
        phase.absorb(self.view, received)
        self._phase += 1
        self._chunks = None
        self._check_done()


def _same_output(a, b):
    """Structural equality of node outputs; plain state objects compare by their attributes."""
    if type(a) is not type(b):
        return False
    if isinstance(a, dict):
        return a.keys() == b.keys() and all(_same_output(a[k], b[k]) for k in a)
    if isinstance(a, (list, tuple)):
        return len(a) == len(b) and all(_same_output(x, y) for x, y in zip(a, b))
    if type(a).__eq__ is object.__eq__ and hasattr(a, "__dict__"):
        return _same_output(vars(a), vars(b))
    return a == b


class Transcript(ModelMixin):
    """Record of one run: per-round bits per node, node outputs and phase boundaries."""

    def __init__(self, node_ids, degrees, params, rounds_used, per_round_bits, node_outputs, phase_log):
        self.node_ids = tuple(node_ids)
        self.degrees = tuple(degrees)
        self.bandwidth = params.bandwidth
        self.id_bits = params.id_bits
        self.rounds_used = rounds_used
        self.per_round_bits = per_round_bits
        self.node_outputs = node_outputs
        self.phase_log = phase_log

    def __eq__(self, other):
        if not isinstance(other, Transcript):
            return NotImplemented
        return (
            self.node_ids == other.node_ids
            and self.rounds_used == other.rounds_used
            and self.per_round_bits == other.per_round_bits
            and self.phase_log == other.phase_log
            and _same_output(self.node_outputs, other.node_outputs)
        )


@dataclass
class Metrics:
    rounds_used: int = 0
    max_message_bits: int = 0
    total_bits: int = 0
    phases: dict = field(default_factory=dict)

    def as_dict(self):
        return asdict(self)


def run(g, protocol, cfg=None, inputs=None):
    """Simulate a protocol on a graph.

    Args:
        g (Graph): the network.
        protocol (Protocol): the algorithm; `setup` is called with the
            round parameters of `g`.
        cfg (SimConfig, optional): simulation parameters.
        inputs (dict, optional): private per-node input, exposed as
            `NodeView.input`.

    Returns:
        Transcript: the complete record of the run.
    """
    cfg = cfg or SimConfig()
    params = cfg.resolve(g)
    protocol.setup(params)
    logger.debug(
        f"Running {protocol.label} on n={g.n}, m={g.m} with B={params.bandwidth}, id_bits={params.id_bits}"
    )
    nodes = {}
    for v in g:
        view = NodeView(v, g.degree(v), params, None if inputs is None else inputs.get(v))
        nodes[v] = protocol.make_node(view)
    per_round_bits = []
    rounds = 0
    while not all(node.halted for node in nodes.values()):
        if rounds >= cfg.max_rounds:
            raise RoundLimitException(
                f"{protocol.label} did not terminate within {cfg.max_rounds} rounds"
            )
        rounds += 1
        sent = {}
        for v, node in nodes.items():
            bits = "" if node.halted else node.broadcast(rounds)
            if len(bits) > params.bandwidth:
                raise BandwidthException(v, rounds, len(bits), params.bandwidth)
            sent[v] = bits
        per_round_bits.append(tuple(len(sent[v]) for v in g))
        # Deliver simultaneously, after every node has emitted
        for v, node in nodes.items():
            if not node.halted:
                node.deliver(
                    rounds, {port: sent[u] for port, u in enumerate(g.neighbours(v))}
                )
    for label, first, last in protocol.phase_log():
        logger.debug(f"{protocol.label}: phase {label} used rounds {first}..{last}")
    return Transcript(
        node_ids=g.node_ids,
        degrees=[g.degree(v) for v in g],
        params=params,
        rounds_used=rounds,
        per_round_bits=per_round_bits,
        node_outputs={v: node.output for v, node in nodes.items()},
        phase_log=protocol.phase_log(),
    )


def metrics(t):
    """Aggregate a transcript into Metrics."""
    max_bits = 0
    total = 0
    for bits in t.per_round_bits:
        for b, deg in zip(bits, t.degrees):
            total += b * deg
            if b > max_bits:
                max_bits = b
    phases = {}
    for label, first, last in t.phase_log:
        phases[label] = phases.get(label, 0) + last - first + 1
    return Metrics(
        rounds_used=t.rounds_used, max_message_bits=max_bits, total_bits=total, phases=phases
    )
