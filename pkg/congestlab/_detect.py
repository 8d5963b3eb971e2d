"""
Detection of paths, cycles, trees and pseudotrees with representative families.

Every algorithm is a `PhasedProtocol`: after the id exchange, node v holds a
family of node sets for each level, broadcasts it, and builds the next level
from its neighbours' families, compressing with `minimize`. The schedule
reserves enough rounds for the largest inclusion-minimal family, so round
counts depend only on k, n and the id width.
"""
import functools
import logging
import networkx as nx
from ._model import ModelMixin, Graph, SubgraphCopy
from ._repfam import SetFamily, minimize
from ._sim import PhasedProtocol, SimConfig, run, metrics
from . import _codec as codec
from . import _utils as utils
from . import graphs
from .exceptions import *


logger = logging.getLogger(__name__)

MAX_K = 8


def _check_k(k, lowest):
    if k < lowest:
        raise ValueError(f"k must be at least {lowest}, got {k}")
    if k > MAX_K:
        raise GuardException(f"k = {k} exceeds the desk-scale limit {MAX_K}")


class DetectResult(ModelMixin):
    """Per-node detection flags with validated witnesses."""

    def __init__(self, target, found, witnesses, metrics, budget, states=None):
        self.target = target
        self.found = found
        self.witnesses = witnesses
        self.metrics = metrics
        self.budget = budget
        self._states = states or {}
        self.agreement = None

    @property
    def any_found(self):
        return any(self.found.values())

    @property
    def found_nodes(self):
        return sorted(v for v, hit in self.found.items() if hit)

    @property
    def states(self):
        return self._states

    def witness(self):
        """Witness of the smallest found node, or None."""
        nodes = self.found_nodes
        return self.witnesses[nodes[0]] if nodes else None

    def as_dict(self):
        return {
            "target": self.target,
            "found": self.any_found,
            "found_nodes": self.found_nodes,
            "witnesses": {
                str(v): [list(p) for p in copy.mapping] for v, copy in sorted(self.witnesses.items())
            },
            "metrics": self.metrics.as_dict(),
            "budget": self.budget,
            "agreement": self.agreement,
        }


def _detect(g, protocol, cfg, make_copy, target):
    cfg = cfg or SimConfig()
    transcript = run(g, protocol, cfg)
    found = {}
    witnesses = {}
    for v, state in transcript.node_outputs.items():
        found[v] = state.found
        if state.found:
            # Every witness must be a real copy in the host
            witnesses[v] = make_copy(state.witness).validate(g)
    m = metrics(transcript)
    logger.debug(
        f"{target}: found at {sum(found.values())} of {g.n} nodes in {m.rounds_used} rounds"
    )
    return DetectResult(target, found, witnesses, m, protocol.budget(), transcript.node_outputs)


# Paths and cycles


class PathFamilyState(ModelMixin):
    """Families of one node, by level; level l holds node sets of l-edge paths ending here."""

    def __init__(self, node, length, anchor=None):
        self.node = node
        self.length = length
        self.anchor = anchor
        self.families = {}
        self.found = False
        self.witness = None

    def top(self):
        return self.families.get(self.length, SetFamily())


def _best_witness(family):
    return min(family.witness.values()) if family else None


def _extend_paths(v, received, id_bits):
    """P'_v: every received path not through v, extended by v."""
    pairs = []
    for u, bits in received.items():
        for seq in codec.decode_family(bits, id_bits):
            if seq[-1] != u:
                raise StructureException(f"Node {u} sent a path ending at {seq[-1]}")
            if v not in seq:
                path = seq + (v,)
                pairs.append((path, path))
    return pairs


class PathProtocol(PhasedProtocol):
    """Detect paths with `length` edges ending at each node.

    With an anchor w, only paths starting at w are tracked and a node next to
    w that ends such a path closes a cycle on length + 1 nodes.
    """

    label = "paths"

    def __init__(self, length, anchor=None):
        self.length = length
        self.anchor = anchor

    def family_bound(self, level):
        # Members all contain v, so binom(length, level) already suffices
        return utils.binom(self.length + 1, level)

    def q(self, level):
        return self.length - level

    def build_phases(self):
        return [
            self.phase(
                f"level-{level}",
                codec.family_bits(self.family_bound(level), level + 1, self.params.id_bits),
                functools.partial(self._emit, level),
                functools.partial(self._absorb, level),
            )
            for level in range(1, self.length)
        ]

    def _minimize(self, pairs, level):
        family = SetFamily.from_pairs(((frozenset(s), w) for s, w in pairs), key=tuple)
        return minimize(family, self.q(level), budget=self.params.family_budget)

    def initialize(self, view):
        v = view.own_id
        state = PathFamilyState(v, self.length, self.anchor)
        if self.anchor is None:
            starts = view.neighbour_ids
        else:
            starts = [w for w in view.neighbour_ids if w == self.anchor]
        state.families[1] = self._minimize([((u, v), (u, v)) for u in starts], 1)
        view.state["paths"] = state

    def _emit(self, level, view):
        family = view.state["paths"].families[level]
        return codec.encode_family([family.witness_of(m) for m in family], self.params.id_bits)

    def _absorb(self, level, view, received):
        state = view.state["paths"]
        pairs = _extend_paths(view.own_id, received, self.params.id_bits)
        state.families[level + 1] = self._minimize(pairs, level + 1)

    def output(self, view):
        state = view.state["paths"]
        top = state.top()
        if self.anchor is not None and self.anchor not in view.neighbour_ids:
            top = SetFamily()
        state.found = len(top) > 0
        state.witness = _best_witness(top)
        return state


class CycleState(ModelMixin):
    """Anchored path families of one node, one PathFamilyState per anchor."""

    def __init__(self, node, k):
        self.node = node
        self.k = k
        self.anchors = {}
        self.found = False
        self.witness = None


class CycleProtocol(PhasedProtocol):
    """All anchored cycle detections at once, one keyed payload per phase."""

    label = "cycles"

    def __init__(self, k):
        self.k = k
        self.length = k - 1

    def family_bound(self, level):
        return utils.binom(self.length + 1, level)

    def build_phases(self):
        return [
            self.phase(
                f"level-{level}",
                codec.keyed_family_bits(
                    self.params.n, self.family_bound(level), level + 1, self.params.id_bits
                ),
                functools.partial(self._emit, level),
                functools.partial(self._absorb, level),
            )
            for level in range(1, self.length)
        ]

    def _minimize(self, pairs, level):
        family = SetFamily.from_pairs(((frozenset(s), w) for s, w in pairs), key=tuple)
        return minimize(family, self.length - level, budget=self.params.family_budget)

    def initialize(self, view):
        v = view.own_id
        state = CycleState(v, self.k)
        for w in view.neighbour_ids:
            anchored = PathFamilyState(v, self.length, anchor=w)
            anchored.families[1] = self._minimize([((w, v), (w, v))], 1)
            state.anchors[w] = anchored
        view.state["cycles"] = state

    def _emit(self, level, view):
        keyed = {}
        for w, anchored in view.state["cycles"].anchors.items():
            family = anchored.families.get(level)
            if family:
                keyed[w] = [family.witness_of(m) for m in family]
        return codec.encode_keyed_families(keyed, self.params.id_bits)

    def _absorb(self, level, view, received):
        v = view.own_id
        state = view.state["cycles"]
        pairs = {}
        for u, bits in received.items():
            for w, seqs in codec.decode_keyed_families(bits, self.params.id_bits).items():
                for seq in seqs:
                    if seq[0] != w or seq[-1] != u:
                        raise StructureException(f"Node {u} sent a malformed path for anchor {w}")
                    if v not in seq:
                        path = seq + (v,)
                        pairs.setdefault(w, []).append((path, path))
        for w, anchor_pairs in pairs.items():
            anchored = state.anchors.setdefault(w, PathFamilyState(v, self.length, anchor=w))
            anchored.families[level + 1] = self._minimize(anchor_pairs, level + 1)

    def output(self, view):
        state = view.state["cycles"]
        closing = [
            _best_witness(state.anchors[w].top())
            for w in view.neighbour_ids
            if w in state.anchors and state.anchors[w].top()
        ]
        state.found = bool(closing)
        state.witness = min(closing) if closing else None
        return state


def detect_paths(g, k, cfg=None, convention="edges"):
    """Find, at every node, whether a path with k edges ends there.

    Args:
        g (Graph): host graph.
        k (int): path length, in edges unless `convention="nodes"`.
        cfg (SimConfig, optional): simulation parameters.
        convention (str, optional): `"edges"` or `"nodes"`.

    Returns:
        DetectResult: found flags, path witnesses and round metrics.
    """
    k = graphs.path_edges(k, convention)
    _check_k(k, 1)
    target = graphs.path_graph(k + 1)
    return _detect(
        g,
        PathProtocol(k),
        cfg,
        lambda seq: SubgraphCopy.from_sequence(seq, target),
        f"path-{k}",
    )


def detect_cycles_fixed(g, k, w, cfg=None):
    """Find cycles on k nodes through the anchor w.

    A neighbour v of w reports found when it ends a (k-1)-edge path starting at w.
    """
    _check_k(k, 3)
    if w not in g:
        raise ValueError(f"Anchor {w} is not a node of the graph")
    target = graphs.cycle_graph(k)
    return _detect(
        g,
        PathProtocol(k - 1, anchor=w),
        cfg,
        lambda seq: SubgraphCopy.from_sequence(seq, target),
        f"cycle-{k}@{w}",
    )


def detect_cycles(g, k, cfg=None):
    """Find cycles on k nodes, running every anchor in parallel.

    Node v reports found iff it lies on a k-cycle.
    """
    _check_k(k, 3)
    target = graphs.cycle_graph(k)
    return _detect(
        g,
        CycleProtocol(k),
        cfg,
        lambda seq: SubgraphCopy.from_sequence(seq, target),
        f"cycle-{k}",
    )


def _budget(g, protocol, cfg):
    protocol.setup((cfg or SimConfig()).resolve(g))
    return protocol.budget()


def path_budget(g, k, cfg=None):
    """Rounds detect_paths spends on g, without running it."""
    return _budget(g, PathProtocol(k), cfg)


def cycle_budget(g, k, cfg=None):
    """Rounds detect_cycles spends on g, without running it."""
    return _budget(g, CycleProtocol(k), cfg)


# Trees


class RootedTargetTree(ModelMixin):
    """A tree target with nodes numbered 1..k in post-order (descendants first)."""

    def __init__(self, target, root, index, children):
        self.target = target
        self.root = root
        self.index = dict(index)
        self.node_of = {i: x for x, i in self.index.items()}
        self.children = dict(children)
        self.subtree_size = {}
        self.parent = {}
        for i in sorted(self.children):
            self.subtree_size[i] = 1 + sum(self.subtree_size[c] for c in self.children[i])
            for c in self.children[i]:
                self.parent[c] = i

    @property
    def k(self):
        return len(self.index)

    @property
    def root_index(self):
        return self.k

    def is_leaf(self, i):
        return not self.children[i]

    def subtree_indices(self, i):
        return range(i - self.subtree_size[i] + 1, i + 1)

    def as_dict(self):
        return {
            "root": self.root,
            "index": {str(x): i for x, i in sorted(self.index.items())},
            "subtree_size": self.subtree_size,
        }


def order_tree(h, root=None):
    """Number the nodes of a tree target in post-order.

    Args:
        h (Graph): a tree.
        root (int, optional): root node, defaults to the largest id.

    Returns:
        RootedTargetTree: children are visited in ascending id order, so
            child indices increase from left to right.
    """
    if h.n == 0 or not nx.is_tree(h.to_networkx()):
        raise StructureException("Target must be a tree")
    if root is None:
        root = max(h.node_ids)
    elif root not in h:
        raise StructureException(f"Root {root} is not a node of the target")
    index = {}
    children = {}

    def visit(x, parent):
        kids = [c for c in h.neighbours(x) if c != parent]
        for c in kids:
            visit(c, x)
        index[x] = len(index) + 1
        children[index[x]] = tuple(index[c] for c in kids)

    visit(root, None)
    return RootedTargetTree(h, root, index, children)


def _hosts(witness):
    return tuple(host for _, host in witness)


def _combine(v, i, tree, child_families, q_of, budget):
    """Grow copies of H[i] rooted at v child by child.

    `child_families[c]` maps each neighbour u to the embeddings of H[c]
    rooted at u. The partial family is minimized after every merge.
    """
    partial = SetFamily.from_pairs([({v}, ((i, v),))])
    size = 1
    for c in tree.children[i]:
        size += tree.subtree_size[c]
        pairs = []
        for members in partial:
            wit = partial.witness_of(members)
            for u, embeddings in child_families[c].items():
                for emb in embeddings:
                    hosts = frozenset(_hosts(emb))
                    if members.isdisjoint(hosts):
                        pairs.append((members | hosts, tuple(sorted(wit + emb))))
        partial = minimize(SetFamily.from_pairs(pairs, key=tuple), q_of(size), budget=budget)
        if not partial:
            break
    return partial


class TreeState(ModelMixin):
    def __init__(self, node):
        self.node = node
        self.families = {}
        self.received = {}
        self.found = False
        self.witness = None


class TreeProtocol(PhasedProtocol):
    """Detect copies of a rooted tree H; T_{v,i} holds copies of H[i] rooted at v."""

    label = "tree"

    def __init__(self, tree):
        self.tree = tree
        self.k = tree.k

    def q(self, size):
        return self.k - size

    def family_bound(self, i):
        return utils.binom(self.k, self.tree.subtree_size[i])

    def broadcast_indices(self):
        return [i for i in range(1, self.k) if not self.tree.is_leaf(i)]

    def build_phases(self):
        return [
            self.phase(
                f"subtree-{c}",
                codec.family_bits(
                    self.family_bound(c), self.tree.subtree_size[c], self.params.id_bits
                ),
                functools.partial(self._emit, c),
                functools.partial(self._absorb, c),
            )
            for c in self.broadcast_indices()
        ]

    def _child_families(self, view, c):
        if self.tree.is_leaf(c):
            return {u: [((c, u),)] for u in view.neighbour_ids}
        return view.state["tree"].received[c]

    def _ready(self, view, i):
        return all(self.tree.is_leaf(c) or c in view.state["tree"].received for c in self.tree.children[i])

    def _compute(self, view):
        state = view.state["tree"]
        v = view.own_id
        for i in range(1, self.k + 1):
            if i in state.families or not self._ready(view, i):
                continue
            if self.tree.is_leaf(i):
                state.families[i] = SetFamily.from_pairs([({v}, ((i, v),))])
                continue
            families = {c: self._child_families(view, c) for c in self.tree.children[i]}
            state.families[i] = _combine(v, i, self.tree, families, self.q, self.params.family_budget)

    def initialize(self, view):
        view.state["tree"] = TreeState(view.own_id)
        self._compute(view)

    def _emit(self, c, view):
        family = view.state["tree"].families[c]
        return codec.encode_family(
            [_hosts(family.witness_of(m)) for m in family], self.params.id_bits
        )

    def _absorb(self, c, view, received):
        indices = self.tree.subtree_indices(c)
        view.state["tree"].received[c] = {
            u: [tuple(zip(indices, seq)) for seq in codec.decode_family(bits, self.params.id_bits)]
            for u, bits in received.items()
        }
        self._compute(view)

    def output(self, view):
        state = view.state["tree"]
        top = state.families.get(self.k, SetFamily())
        state.found = len(top) > 0
        state.witness = _best_witness(top)
        return state


def _tree_copy(tree, target):
    def make_copy(witness):
        return SubgraphCopy({tree.node_of[i]: host for i, host in witness}, target)

    return make_copy


def detect_tree(g, h, cfg=None):
    """Find, at every node v, whether a copy of the rooted tree maps its root to v.

    Args:
        g (Graph): host graph.
        h (Union[RootedTargetTree, Graph]): target tree; a plain graph is
            ordered with `order_tree`.
        cfg (SimConfig, optional): simulation parameters.

    Returns:
        DetectResult: found flags and embedding witnesses.
    """
    tree = h if isinstance(h, RootedTargetTree) else order_tree(h)
    _check_k(tree.k, 1)
    return _detect(g, TreeProtocol(tree), cfg, _tree_copy(tree, tree.target), f"tree-{tree.k}")


def tree_budget(g, h, cfg=None):
    tree = h if isinstance(h, RootedTargetTree) else order_tree(h)
    return _budget(g, TreeProtocol(tree), cfg)


# Pseudotrees


class PseudotreeTarget(ModelMixin):
    """A connected target with one cycle, split into a tree H' and a removed cycle edge.

    H' is rooted at u2 (index k); u1 carries index j.
    """

    def __init__(self, target, removed_edge, tree, cycle):
        self.target = target
        self.removed_edge = removed_edge
        self.u1, self.u2 = removed_edge
        self.tree = tree
        self.j = tree.index[self.u1]
        self.cycle = tuple(cycle)

    @property
    def k(self):
        return self.tree.k

    def tracked_indices(self):
        """Indices whose subtree contains j: the j -> root path of H'."""
        return [i for i in range(1, self.k + 1) if self.j in self.tree.subtree_indices(i)]

    def as_dict(self):
        return {
            "removed_edge": list(self.removed_edge),
            "j": self.j,
            "cycle": list(self.cycle),
            "tree": self.tree.as_dict(),
        }


def prepare_pseudotree(h):
    """Split a pseudotree at the smallest edge of its unique cycle."""
    H = h.to_networkx()
    if h.n == 0 or not nx.is_connected(H):
        raise StructureException("A pseudotree must be connected")
    if h.m == h.n - 1:
        raise StructureException("Target is a tree, use detect_tree instead")
    if h.m > h.n:
        raise StructureException("Target has more than one cycle")
    cycle_edges = [utils.norm_edge(u, v) for u, v in nx.find_cycle(H)]
    removed = min(cycle_edges)
    rest = Graph(h.node_ids, [e for e in h.edge_list() if e != removed], id_bound=h.id_bound)
    tree = order_tree(rest, root=removed[1])
    cycle = sorted({v for e in cycle_edges for v in e})
    return PseudotreeTarget(h, removed, tree, cycle)


class PseudotreeProtocol(TreeProtocol):
    """Tree detection of H' where nodes on the j -> root path keep one family per host x of j."""

    label = "pseudotree"

    def __init__(self, target):
        super().__init__(target.tree)
        self.target = target
        self.j = target.j
        self.tracked = set(target.tracked_indices())

    def build_phases(self):
        phases = []
        for c in self.broadcast_indices():
            s = self.tree.subtree_size[c]
            if c in self.tracked:
                bits = codec.keyed_family_bits(
                    self.params.n, self.family_bound(c), s, self.params.id_bits
                )
            else:
                bits = codec.family_bits(self.family_bound(c), s, self.params.id_bits)
            phases.append(
                self.phase(
                    f"subtree-{c}",
                    bits,
                    functools.partial(self._emit, c),
                    functools.partial(self._absorb, c),
                )
            )
        return phases

    def _keyed_child_families(self, view, c):
        """Map x -> {u: embeddings of H[c] rooted at u with j at x}."""
        if self.tree.is_leaf(c):
            return {u: {u: [((c, u),)]} for u in view.neighbour_ids}
        received = view.state["tree"].received[c]
        keyed = {}
        for u, by_key in received.items():
            for x, embeddings in by_key.items():
                keyed.setdefault(x, {})[u] = embeddings
        return keyed

    def _compute(self, view):
        state = view.state["tree"]
        v = view.own_id
        budget = self.params.family_budget
        for i in range(1, self.k + 1):
            if i in state.families or not self._ready(view, i):
                continue
            if i not in self.tracked:
                if self.tree.is_leaf(i):
                    state.families[i] = SetFamily.from_pairs([({v}, ((i, v),))])
                else:
                    families = {c: self._child_families(view, c) for c in self.tree.children[i]}
                    state.families[i] = _combine(v, i, self.tree, families, self.q, budget)
                continue
            if i == self.j:
                if self.tree.is_leaf(i):
                    family = SetFamily.from_pairs([({v}, ((i, v),))])
                else:
                    families = {c: self._child_families(view, c) for c in self.tree.children[i]}
                    family = _combine(v, i, self.tree, families, self.q, budget)
                state.families[i] = {v: family} if family else {}
                continue
            (tracked_child,) = [c for c in self.tree.children[i] if c in self.tracked]
            keyed = self._keyed_child_families(view, tracked_child)
            result = {}
            for x in sorted(keyed):
                families = {
                    c: keyed[x] if c == tracked_child else self._child_families(view, c)
                    for c in self.tree.children[i]
                }
                family = _combine(v, i, self.tree, families, self.q, budget)
                if family:
                    result[x] = family
            state.families[i] = result

    def _emit(self, c, view):
        family = view.state["tree"].families[c]
        if c not in self.tracked:
            return super()._emit(c, view)
        keyed = {
            x: [_hosts(fam.witness_of(m)) for m in fam] for x, fam in family.items()
        }
        return codec.encode_keyed_families(keyed, self.params.id_bits)

    def _absorb(self, c, view, received):
        if c not in self.tracked:
            return super()._absorb(c, view, received)
        indices = self.tree.subtree_indices(c)
        view.state["tree"].received[c] = {
            u: {
                x: [tuple(zip(indices, seq)) for seq in seqs]
                for x, seqs in codec.decode_keyed_families(bits, self.params.id_bits).items()
            }
            for u, bits in received.items()
        }
        self._compute(view)

    def output(self, view):
        state = view.state["tree"]
        keyed = state.families.get(self.k, {})
        closing = [
            _best_witness(keyed[x]) for x in view.neighbour_ids if x in keyed and keyed[x]
        ]
        state.found = bool(closing)
        state.witness = min(closing) if closing else None
        return state


def detect_pseudotree(g, h, cfg=None):
    """Find copies of a pseudotree target; a node reports when it hosts u2.

    Args:
        g (Graph): host graph.
        h (Union[PseudotreeTarget, Graph]): the target.
        cfg (SimConfig, optional): simulation parameters.

    Returns:
        DetectResult: found flags and validated copies of the full target.
    """
    target = h if isinstance(h, PseudotreeTarget) else prepare_pseudotree(h)
    _check_k(target.k, 3)
    return _detect(
        g,
        PseudotreeProtocol(target),
        cfg,
        _tree_copy(target.tree, target.target),
        f"pseudotree-{target.k}",
    )


def pseudotree_budget(g, h, cfg=None):
    target = h if isinstance(h, PseudotreeTarget) else prepare_pseudotree(h)
    return _budget(g, PseudotreeProtocol(target), cfg)
