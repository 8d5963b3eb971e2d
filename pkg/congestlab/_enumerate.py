"""
Clique, 4-cycle and 5-cycle enumeration on degenerate graphs.

After orienting the graph, every node broadcasts its out-neighbours N_out(v)
(and, for 5-cycles, its length-2 out-paths L(v)). Node v then knows the edge
set F = {{u, w} : u in N+(v), w in N_out(u)} plus the edges of L(u) for every
neighbour u, with a direction on each, and lists the copies through v in G[F].

In supported mode the support graph is public: every node computes the same
orientation locally, and edge presence is sent as bitmaps over the support's
out-edges and out-paths.
"""
import logging
import networkx as nx
from ._model import ModelMixin, Orientation
from ._orient import PeelProtocol, peel_state, check_peeled, DEFAULT_C
from ._sim import PhasedProtocol, SimConfig, run, metrics
from ._targets import available_targets
from . import _codec as codec
from . import graphs
from .exceptions import *


logger = logging.getLogger(__name__)


def make_target(name, **kwargs):
    """Instantiate a registered target by name, e.g. `make_target("clique", k=4)`."""
    if name not in available_targets:
        raise ValueError(
            f"Unknown target {name}, choose from {', '.join(sorted(available_targets))}"
        )
    return available_targets[name](**kwargs)


class EnumContext(ModelMixin):
    """What node v learned: N_out(u) for u in N+(v), L(u) for neighbours u, and F."""

    def __init__(self, node):
        self.node = node
        self.out_sets = {}
        self.paths = {}
        self.arcs = set()
        self.reports = set()

    def gather(self):
        """Directed edges of F."""
        self.arcs = set()
        for u, outs in self.out_sets.items():
            for w in outs:
                self.arcs.add((u, w))
        for pairs in self.paths.values():
            self.arcs.update(pairs)
        return self.arcs

    def edges(self):
        return {tuple(sorted(a)) for a in self.arcs}

    def local_graph(self):
        G = nx.Graph()
        G.add_node(self.node)
        G.add_edges_from(self.arcs)
        return G

    def points(self, u, v):
        return (u, v) in self.arcs

    def as_dict(self):
        return {"node": self.node, "edges": sorted(self.edges()), "reports": len(self.reports)}


class CopySet(ModelMixin):
    """Deduplicated copies with their designated reporter and per-node reports."""

    def __init__(self, target, copies, owner, reports, orientation=None):
        self.target = target
        self.copies = frozenset(copies)
        self.owner = owner
        self.reports = reports
        self.orientation = orientation
        self.budget = None
        self.agreement = None

    def __len__(self):
        return len(self.copies)

    def __iter__(self):
        return iter(sorted(self.copies, key=lambda c: sorted(c.edge_image)))

    def __contains__(self, copy):
        return copy in self.copies

    def __eq__(self, other):
        if isinstance(other, CopySet):
            return self.copies == other.copies
        if isinstance(other, (set, frozenset)):
            return self.copies == other
        return NotImplemented

    def reporters(self, copy):
        return sorted(v for v, copies in self.reports.items() if copy in copies)

    def as_dict(self):
        return {
            "target": self.target.label,
            "copies": [sorted(c.edge_image) for c in self],
            "owners": [self.owner[c] for c in self],
            "budget": self.budget,
            "agreement": self.agreement,
        }


def _report(target, ctx, dedup):
    ctx.gather()
    copies = target.local_copies(ctx.local_graph(), ctx.node)
    if dedup:
        copies = {c for c in copies if target.owner(c, ctx.points) == ctx.node}
    ctx.reports = copies
    return ctx


class EnumProtocol(PeelProtocol):
    """Peeling orientation followed by the out-neighbour (and out-path) broadcasts."""

    label = "enumerate"

    def __init__(self, target, d, C=DEFAULT_C, dedup=False):
        super().__init__(d, C)
        self.target = target
        self.dedup = dedup

    def build_phases(self):
        phases = super().build_phases()
        id_bits = self.params.id_bits
        phases.append(
            self.phase("out", codec.sequence_bits(self.alpha, id_bits), self._emit_out, self._absorb_out)
        )
        if self.target.needs_paths:
            phases.append(
                self.phase(
                    "paths",
                    codec.sequence_bits(2 * self.alpha * self.alpha, id_bits),
                    self._emit_paths,
                    self._absorb_paths,
                )
            )
        return phases

    def initialize(self, view):
        super().initialize(view)
        view.state["enum"] = EnumContext(view.own_id)

    def _emit_out(self, view):
        if view.state["peel"].removed_at is None:
            raise DegeneracyException(
                f"Degeneracy bound {self.d} violated: node {view.own_id} survived peeling"
            )
        return codec.BitWriter().write_sequence(self.out_neighbours(view), self.params.id_bits).getvalue()

    def _absorb_out(self, view, received):
        ctx = view.state["enum"]
        ctx.out_sets[view.own_id] = tuple(self.out_neighbours(view))
        for u, bits in received.items():
            ctx.out_sets[u] = codec.BitReader(bits).read_sequence(self.params.id_bits)

    def _emit_paths(self, view):
        ctx = view.state["enum"]
        flat = []
        for u in self.out_neighbours(view):
            for w in ctx.out_sets[u]:
                flat.extend((u, w))
        return codec.BitWriter().write_sequence(flat, self.params.id_bits).getvalue()

    def _absorb_paths(self, view, received):
        ctx = view.state["enum"]
        for u, bits in received.items():
            flat = codec.BitReader(bits).read_sequence(self.params.id_bits)
            ctx.paths[u] = set(zip(flat[0::2], flat[1::2]))

    def output(self, view):
        return (view.state["peel"], _report(self.target, view.state["enum"], self.dedup))


class SupportedEnumProtocol(PhasedProtocol):
    """Enumeration when the support graph and its orientation are public.

    Node v's private input (`view.input`) is its set of input neighbours.
    """

    label = "supported-enumerate"

    def __init__(self, target, sigma, dedup=False):
        self.target = target
        self.sigma = sigma
        self.dedup = dedup

    def path_slots(self, v):
        """Support out-paths v -> w -> x in canonical (w, x) order."""
        return [(w, x) for w in self.sigma.out_neighbours(v) for x in self.sigma.out_neighbours(w)]

    def build_phases(self):
        d = self.sigma.max_outdegree()
        phases = [self.phase("bitmap", d, self._emit_bitmap, self._absorb_bitmap)]
        if self.target.needs_paths:
            phases.append(self.phase("paths", d * d, self._emit_paths, self._absorb_paths))
        return phases

    def initialize(self, view):
        ctx = EnumContext(view.own_id)
        ctx.out_sets[view.own_id] = tuple(
            w for w in self.sigma.out_neighbours(view.own_id) if w in view.input
        )
        for u in view.neighbour_ids:
            ctx.out_sets.setdefault(u, ())
        view.state["enum"] = ctx

    def _emit_bitmap(self, view):
        return "".join("1" if w in view.input else "0" for w in self.sigma.out_neighbours(view.own_id))

    def _absorb_bitmap(self, view, received):
        ctx = view.state["enum"]
        for u, bits in received.items():
            ctx.out_sets[u] = tuple(
                w for w, bit in zip(self.sigma.out_neighbours(u), bits) if bit == "1"
            )

    def _emit_paths(self, view):
        ctx = view.state["enum"]
        return "".join(
            "1" if w in view.input and x in ctx.out_sets.get(w, ()) else "0"
            for w, x in self.path_slots(view.own_id)
        )

    def _absorb_paths(self, view, received):
        ctx = view.state["enum"]
        for u, bits in received.items():
            ctx.paths[u] = {slot for slot, bit in zip(self.path_slots(u), bits) if bit == "1"}

    def output(self, view):
        return _report(self.target, view.state["enum"], self.dedup)


def _copy_set(g, target, contexts, orientation):
    reports = {}
    copies = set()
    for v, ctx in contexts.items():
        reports[v] = frozenset(ctx.reports)
        copies.update(ctx.reports)
    for copy in copies:
        copy.validate(g)
    owner = {copy: target.owner(copy, orientation.points) for copy in copies}
    return CopySet(target, copies, owner, reports, orientation)


def enumerate_target(g, target, d, cfg=None, C=DEFAULT_C, dedup=False):
    """Enumerate every copy of a registered target in a d-degenerate graph.

    Args:
        g (Graph): the network.
        target (BaseTarget): what to enumerate.
        d (int): degeneracy bound.
        cfg (SimConfig, optional): simulation parameters.
        C (Union[int, Fraction], optional): peeling constant.
        dedup (bool, optional): report each copy only at its designated node.

    Returns:
        Tuple[CopySet, Metrics]: the copies and the round metrics, orientation included.
    """
    target.check(d)
    protocol = EnumProtocol(target, d, C, dedup)
    transcript = run(g, protocol, cfg or SimConfig())
    outputs = transcript.node_outputs
    state = peel_state(protocol, {v: peel for v, (peel, _) in outputs.items()})
    check_peeled(state, d)
    orientation = Orientation.from_key(g, state.key)
    contexts = {v: ctx for v, (_, ctx) in outputs.items()}
    copy_set = _copy_set(g, target, contexts, orientation)
    m = metrics(transcript)
    logger.debug(f"{target.label}: {len(copy_set)} copies on n={g.n}, d={d} in {m.rounds_used} rounds")
    return copy_set, m


def enumerate_cliques(g, k, d, cfg=None, C=DEFAULT_C, dedup=False):
    """Enumerate k-cliques; each clique is owned by its sink."""
    return enumerate_target(g, make_target("clique", k=k), d, cfg, C, dedup)


def enumerate_c4(g, d, cfg=None, C=DEFAULT_C, dedup=False):
    return enumerate_target(g, make_target("c4"), d, cfg, C, dedup)


def enumerate_c5(g, d, cfg=None, C=DEFAULT_C, dedup=False):
    return enumerate_target(g, make_target("c5"), d, cfg, C, dedup)


def supported_orientation(support, d=None):
    """The public d-orientation of the support graph, computed without communication."""
    orientation = graphs.exact_d_orientation(support)
    if d is not None and orientation.max_outdegree() > d:
        raise DegeneracyException(f"Support graph is not {d}-degenerate")
    return orientation


def supported_enumerate(support, input, target, cfg=None, dedup=False, d=None):
    """Enumerate copies in an input graph that is a subgraph of a public support graph.

    Args:
        support (Graph): the communication network, known to every node.
        input (Graph): the input subgraph.
        target (Union[BaseTarget, str]): target or registered target name.
        cfg (SimConfig, optional): simulation parameters.
        dedup (bool, optional): report each copy only at its designated node.
        d (int, optional): degeneracy bound of the support.

    Returns:
        Tuple[CopySet, Metrics]: copies in `input` and the rounds spent on `support`.
    """
    if isinstance(target, str):
        target = make_target(target)
    if not input.is_subgraph_of(support):
        raise StructureException("Input graph is not a subgraph of the support graph")
    sigma = supported_orientation(support, d)
    inputs = {v: set(input.neighbours(v)) if v in input else set() for v in support}
    protocol = SupportedEnumProtocol(target, sigma, dedup)
    transcript = run(support, protocol, cfg or SimConfig(), inputs=inputs)
    copy_set = _copy_set(input, target, transcript.node_outputs, sigma.restrict(input))
    m = metrics(transcript)
    m.phases["orientation"] = 0
    logger.debug(
        f"supported {target.label}: {len(copy_set)} copies, support n={support.n}, "
        f"d={sigma.max_outdegree()}, {m.rounds_used} rounds"
    )
    return copy_set, m


def enumerate_budget(g, target, d, cfg=None, C=DEFAULT_C):
    """Rounds enumerate_target spends on g, orientation included, without running it."""
    protocol = EnumProtocol(target, d, C)
    protocol.setup((cfg or SimConfig()).resolve(g))
    return protocol.budget()


def supported_budget(support, target, cfg=None, d=None):
    """Rounds supported_enumerate spends: the id exchange plus the bitmap phases."""
    protocol = SupportedEnumProtocol(target, supported_orientation(support, d))
    protocol.setup((cfg or SimConfig()).resolve(support))
    return protocol.budget()
