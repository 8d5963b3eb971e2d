import pytest
from hypothesis import given, settings, strategies as st
import congestlab as cl
from congestlab import graphs
from congestlab import _codec as codec
from congestlab._sim import (
    HEADER_BITS,
    NodeAlgorithm,
    Protocol,
    PhasedProtocol,
    fragment,
    reassemble,
    run,
    metrics,
)
from congestlab._detect import PathProtocol
from congestlab._enumerate import EnumProtocol, make_target
from congestlab.exceptions import *


class IdExchange(PhasedProtocol):
    """Broadcast own id once, then halt with the neighbour ids."""

    label = "id-exchange"

    def build_phases(self):
        return []

    def output(self, view):
        return view.neighbour_ids


class Silent(Protocol):
    label = "silent"

    def make_node(self, view):
        node = Chatty(view, 0)
        node.halt()
        return node


class Chatty(NodeAlgorithm):
    def __init__(self, view, bits):
        super().__init__(view)
        self.bits = bits

    def broadcast(self, round):
        return "1" * self.bits

    def deliver(self, round, messages):
        pass


class Loud(Protocol):
    label = "loud"

    def __init__(self, extra):
        self.extra = extra

    def make_node(self, view):
        return Chatty(view, view.params.bandwidth + self.extra)


class Stamped(IdExchange):
    """Halts with a fresh value on every call."""

    label = "stamped"
    stamps = 0

    def output(self, view):
        Stamped.stamps += 1
        return Stamped.stamps


def test_config(monkeypatch):
    print("Testing SimConfig")

    cfg = cl.SimConfig()
    assert cfg.bandwidth_factor == 16
    assert cfg.bandwidth(3) == 32
    assert cfg.bandwidth(200) == 16 * 8
    # Floor of 2 on the log term
    assert cfg.bandwidth(1) == cfg.bandwidth(2) == 32

    with pytest.raises(ValueError):
        cl.SimConfig(bandwidth_factor=0)
    with pytest.raises(ValueError):
        cl.SimConfig(max_rounds=0)
    with pytest.raises(ValueError):
        cl.SimConfig(bandwidth_factor=8).resolve(graphs.path_graph(3))
    with pytest.raises(ValueError):
        cl.SimConfig(n_bound=2).resolve(graphs.path_graph(3))

    params = cl.SimConfig(n_bound=1000).resolve(graphs.path_graph(3))
    assert params.n == 1000 and params.bandwidth == 160
    params = cl.SimConfig().resolve(cl.Graph([0, 9], [(0, 9)], id_bound=100))
    assert params.id_bits == 4
    assert params.chunk_bits == params.bandwidth - HEADER_BITS

    monkeypatch.setenv("CONGESTLAB_BANDWIDTH_FACTOR", "20")
    monkeypatch.setenv("CONGESTLAB_MAX_ROUNDS", "50")
    cfg = cl.SimConfig.from_env()
    assert cfg.bandwidth_factor == 20 and cfg.max_rounds == 50
    cfg = cl.SimConfig.from_env(bandwidth_factor=24, max_rounds=None)
    assert cfg.bandwidth_factor == 24 and cfg.max_rounds == 50
    assert cfg.as_dict()["bandwidth_factor"] == 24


def test_fragment():
    print("Testing fragmentation")

    B = 64
    chunks = fragment("", B, 3)
    assert len(chunks) == 3 and all(len(c) == HEADER_BITS for c in chunks)
    assert reassemble(chunks) == ""

    payload = "1" * (B - HEADER_BITS)
    chunks = fragment(payload, B, 1)
    assert len(chunks) == 1 and len(chunks[0]) == B
    assert reassemble(chunks) == payload

    # Two and a half chunks of content
    payload = "10" * (5 * (B - HEADER_BITS) // 4)
    chunks = fragment(payload, B, 3)
    assert len(chunks) == 3 and max(len(c) for c in chunks) <= B
    assert reassemble(chunks) == payload

    with pytest.raises(PhaseOverflowException):
        fragment("1" * (B - HEADER_BITS + 1), B, 1)
    with pytest.raises(ValueError):
        fragment("", HEADER_BITS, 1)
    with pytest.raises(StructureException):
        reassemble(["0" * (HEADER_BITS - 1) + "1"])


@settings(max_examples=200, deadline=None)
@given(payload=st.text(alphabet="01", max_size=400), bandwidth=st.integers(17, 96))
def test_fragment_reassemble(payload, bandwidth):
    room = bandwidth - HEADER_BITS
    cap = max(1, -(-len(payload) // room))
    chunks = fragment(payload, bandwidth, cap)
    assert len(chunks) == cap
    assert all(len(c) <= bandwidth for c in chunks)
    assert reassemble(chunks) == payload


def test_codec():
    print("Testing message encodings")

    id_bits = 5
    seqs = [(1, 2, 3), (31, 0)]
    bits = codec.encode_family(seqs, id_bits)
    assert len(bits) == 16 + (16 + 3 * 5) + (16 + 2 * 5)
    assert codec.decode_family(bits, id_bits) == seqs
    assert len(bits) <= codec.family_bits(2, 3, id_bits)

    keyed = {4: [(4, 7)], 2: [(2, 1), (2, 3)]}
    bits = codec.encode_keyed_families(keyed, id_bits)
    assert codec.decode_keyed_families(bits, id_bits) == keyed
    assert len(bits) <= codec.keyed_family_bits(2, 2, 2, id_bits)

    w = codec.BitWriter().write_uint(1, 1).write_uint(5, 3).write_sequence([1], 2)
    r = codec.BitReader(w.getvalue())
    assert r.read_uint(1) == 1 and r.read_uint(3) == 5 and r.read_sequence(2) == (1,)
    assert r.at_end()
    with pytest.raises(StructureException):
        r.read_uint(1)
    with pytest.raises(StructureException):
        codec.BitWriter().write_uint(8, 3)
    # A decoder must consume the whole message
    with pytest.raises(StructureException):
        codec.decode_family(codec.encode_family(seqs, id_bits) + "0", id_bits)
    with pytest.raises(StructureException):
        codec.decode_keyed_families(codec.encode_keyed_families(keyed, id_bits) + "1", id_bits)


def test_id_exchange(triangle):
    print("Testing the id exchange round")

    t = run(triangle, IdExchange())
    assert t.rounds_used == 1
    assert t.node_outputs == {0: (1, 2), 1: (0, 2), 2: (0, 1)}
    m = metrics(t)
    # 2-bit ids plus the chunk header
    assert m.rounds_used == 1
    assert m.max_message_bits == 18
    assert m.total_bits == 3 * 18 * 2
    assert m.phases == {"ids": 1}


def test_empty_and_faulty_algorithms(triangle):
    print("Testing halting and bandwidth faults")

    t = run(triangle, Silent())
    assert t.rounds_used == 0
    m = metrics(t)
    assert m.rounds_used == 0 and m.total_bits == 0

    with pytest.raises(BandwidthException) as e:
        run(triangle, Loud(1))
    assert e.value.round == 1
    with pytest.raises(RoundLimitException):
        run(triangle, Loud(0), cl.SimConfig(max_rounds=5))


def test_determinism():
    print("Testing deterministic transcripts")

    g = graphs.random_graph(20, 0.2, 7)
    t1 = run(g, PathProtocol(4))
    t2 = run(g, PathProtocol(4))
    assert t1 == t2
    m = metrics(t1)
    assert m.max_message_bits <= cl.SimConfig().bandwidth(g.n)
    assert sum(m.phases.values()) == m.rounds_used

    target = make_target("clique", k=3)
    t1 = run(g, EnumProtocol(target, 4, 4, False))
    t2 = run(g, EnumProtocol(target, 4, 4, False))
    assert t1 == t2

    # Same schedule and bits, different outputs
    t1 = run(g, Stamped())
    t2 = run(g, Stamped())
    assert t1.per_round_bits == t2.per_round_bits
    assert t1 != t2

