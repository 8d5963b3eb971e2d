"""
Lower-bound instances for k-cycle detection, built from a set-disjointness input.

Two copies K_A and K_B of K_{N,N} carry the labels 1..2N on their nodes
(left side 1..N, right side N+1..2N) and every node is joined to the node
with the same label on the other copy. The edge between left-i and right-j
stands for universe element (i-1)*N + j. K_A keeps the edges whose element
is in A, each stretched into a path with l1 - 1 edges; K_B does the same for
B with paths of l2 - 1 edges, where l1 = floor(k/2) and l2 = ceil(k/2). The
result has a k-cycle iff A and B intersect.

Node ids: K_A label x is x - 1, K_B label x is 2N + x - 1, and internal path
nodes follow, A's first. The ids of each side depend on that side's set only.
"""
import json
import logging
import networkx as nx
import numpy as np
from ._model import ModelMixin, Graph, Orientation, DEFAULT_ID_EXPONENT
from . import graphs
from . import oracle
from . import _utils as utils
from .exceptions import *


logger = logging.getLogger(__name__)

MIN_K = 6
VERIFY_MAX_N = 5
VERIFY_MAX_K = 8

PROPERTIES = [
    "cycle_iff_intersection",
    "no_one_sided_cycle",
    "degeneracy",
    "cut_size",
    "size_bounds",
    "side_independence",
]


def _check_set(name, elements, M):
    elements = sorted({int(e) for e in elements})
    for e in elements:
        if e < 1 or e > M:
            raise ValueError(f"{name} must be a subset of 1..{M}, got element {e}")
    return elements


def edge_slot(e, N):
    """Left and right labels (1-based) of the K_{N,N} edge standing for element e."""
    i, j = divmod(e - 1, N)
    return i + 1, N + j + 1


class LBInstance(ModelMixin):
    """A lower-bound graph together with the bookkeeping of its construction."""

    def __init__(self, graph, k, N, A, B, side_A, side_B, cut_edges, paths):
        self.graph = graph
        self.k = k
        self.N = N
        self.M = N * N
        self.A = tuple(A)
        self.B = tuple(B)
        self.side_A = frozenset(side_A)
        self.side_B = frozenset(side_B)
        self.cut_edges = tuple(cut_edges)
        self.paths = paths
        self.l1 = k // 2
        self.l2 = k - k // 2

    @property
    def edge_label(self):
        """Universe element -> (left label, right label), identical on both sides."""
        return {e: edge_slot(e, self.N) for e in range(1, self.M + 1)}

    @property
    def cut_size(self):
        return len(self.cut_edges)

    @property
    def intersecting(self):
        return bool(set(self.A) & set(self.B))

    def node_bound(self):
        return (self.k - 4) * self.M + 4 * self.N

    def edge_bound(self):
        return (self.k - 2) * self.M + 2 * self.N

    def base_graph(self):
        """The instance with A = B = [N^2]; every G_{A,B} for this k, N is a subgraph of it."""
        full = range(1, self.M + 1)
        return build_instance(self.k, self.N, full, full).graph

    def metadata(self):
        return {
            "k": self.k,
            "N": self.N,
            "M": self.M,
            "A": list(self.A),
            "B": list(self.B),
            "l1": self.l1,
            "l2": self.l2,
            "cut_edges": [list(e) for e in self.cut_edges],
            "edge_label": {str(e): list(slot) for e, slot in self.edge_label.items()},
        }

    def as_dict(self):
        return {**self.metadata(), "n": self.graph.n, "m": self.graph.m}


def build_instance(k, N, A, B):
    """Build the lower-bound graph G_{A,B}.

    Args:
        k (int): cycle length, at least 6.
        N (int): side size of the bipartite copies, universe is 1..N^2.
        A (iterable): Alice's subset of 1..N^2.
        B (iterable): Bob's subset of 1..N^2.

    Returns:
        LBInstance: the instance; it has a k-cycle iff A and B intersect.
    """
    if k < MIN_K:
        raise ValueError(f"k must be at least {MIN_K}, got {k}")
    if N < 1:
        raise ValueError(f"N must be at least 1, got {N}")
    M = N * N
    A = _check_set("A", A, M)
    B = _check_set("B", B, M)
    l1, l2 = k // 2, k - k // 2

    nodes = list(range(4 * N))
    cut_edges = [(x - 1, 2 * N + x - 1) for x in range(1, 2 * N + 1)]
    edges = list(cut_edges)
    side_A = set(range(2 * N))
    side_B = set(range(2 * N, 4 * N))
    paths = {}
    sides = [
        ("A", A, l1, 0, 4 * N, side_A),
        ("B", B, l2, 2 * N, 4 * N + M * (l1 - 2), side_B),
    ]
    for name, chosen, ell, offset, base, side in sides:
        inner = ell - 2
        for e in chosen:
            left, right = edge_slot(e, N)
            internal = [base + (e - 1) * inner + t for t in range(inner)]
            seq = [offset + left - 1, *internal, offset + right - 1]
            nodes.extend(internal)
            side.update(internal)
            edges.extend(zip(seq, seq[1:]))
            paths[(name, e)] = tuple(seq)

    id_bound = max(max(len(nodes), 2) ** DEFAULT_ID_EXPONENT, max(nodes))
    graph = Graph(nodes, edges, id_bound=id_bound)
    logger.debug(f"Built lower-bound instance k={k}, N={N}: n={graph.n}, m={graph.m}")
    return LBInstance(graph, k, N, A, B, side_A, side_B, cut_edges, paths)


def witness_orientation(inst):
    """2-orientation: edges of each path point away from its first internal node, cut edges point at K_B."""
    heads = {}
    for seq in inst.paths.values():
        heads[utils.norm_edge(seq[0], seq[1])] = seq[0]
        for a, b in zip(seq[1:], seq[2:]):
            heads[utils.norm_edge(a, b)] = b
    for a, b in inst.cut_edges:
        heads[utils.norm_edge(a, b)] = b
    return Orientation(inst.graph, heads)


class VerificationReport(ModelMixin):
    """Outcome of `verify_instance`: one boolean per structural property."""

    def __init__(self, properties, details):
        self.properties = dict(properties)
        self.details = dict(details)

    @property
    def ok(self):
        return all(self.properties.values())

    @property
    def failures(self):
        return [name for name in PROPERTIES if not self.properties.get(name, True)]

    def raise_for_failures(self):
        if self.failures:
            raise VerificationException(self.failures)
        return self

    def as_dict(self):
        return {"ok": self.ok, "properties": self.properties, "details": self.details}


def verify_instance(inst, max_target_nodes=oracle.DEFAULT_MAX_TARGET_NODES):
    """Check the structural properties of a lower-bound instance with the oracles.

    Args:
        inst (LBInstance): instance with N <= 5 and k <= 8.
        max_target_nodes (int, optional): oracle guard on the cycle length.

    Returns:
        VerificationReport: call `raise_for_failures()` to turn failures into
            a `VerificationException`.
    """
    if inst.N > VERIFY_MAX_N or inst.k > VERIFY_MAX_K:
        raise GuardException(
            f"Verification is limited to N <= {VERIFY_MAX_N} and k <= {VERIFY_MAX_K}"
        )
    g = inst.graph
    target = graphs.cycle_graph(inst.k)
    properties = {}
    details = {"n": g.n, "m": g.m}

    has_cycle = oracle.oracle_contains(g, target, max_target_nodes) is not None
    details["has_cycle"] = has_cycle
    properties["cycle_iff_intersection"] = has_cycle == inst.intersecting

    properties["no_one_sided_cycle"] = all(
        oracle.oracle_contains(g.induced(side), target, max_target_nodes) is None
        for side in (inst.side_A, inst.side_B)
    )

    d, _ = graphs.degeneracy(g)
    witness = witness_orientation(inst)
    details["degeneracy"] = d
    details["witness_outdegree"] = witness.max_outdegree()
    forest = nx.is_forest(g.to_networkx())
    properties["degeneracy"] = (
        d <= 2
        and graphs.is_acyclic(witness)
        and witness.max_outdegree() <= 2
        and (d == 2) == (not forest)
    )

    cut = {
        utils.norm_edge(u, v)
        for u, v in g.edges
        if (u in inst.side_A) != (v in inst.side_A)
    }
    properties["cut_size"] = inst.cut_size == 2 * inst.N and cut == {
        utils.norm_edge(u, v) for u, v in inst.cut_edges
    }

    properties["size_bounds"] = g.n <= inst.node_bound() and g.m <= inst.edge_bound()

    only_A = build_instance(inst.k, inst.N, inst.A, ()).graph
    only_B = build_instance(inst.k, inst.N, (), inst.B).graph
    properties["side_independence"] = g.induced(inst.side_A) == only_A.induced(
        inst.side_A
    ) and g.induced(inst.side_B) == only_B.induced(inst.side_B)

    report = VerificationReport(properties, details)
    if report.failures:
        logger.warning(f"Instance k={inst.k}, N={inst.N} failed: {report.failures}")
    return report


def random_sets(N, seed, intersecting=False):
    """Seeded set-disjointness input over 1..N^2.

    Every element independently goes to A, to B or to neither. The sets are
    disjoint unless `intersecting`, in which case one shared element is added.
    """
    M = N * N
    rng = np.random.default_rng(seed)
    side = rng.integers(0, 3, size=M)
    A = {e + 1 for e in range(M) if side[e] == 1}
    B = {e + 1 for e in range(M) if side[e] == 2}
    if intersecting:
        shared = int(rng.integers(1, M + 1))
        A.add(shared)
        B.add(shared)
    return sorted(A), sorted(B)


def write_instance(inst, prefix):
    """Write `prefix.txt` (graph file) and `prefix.json` (metadata)."""
    graphs.write_graph(inst.graph, f"{prefix}.txt")
    with open(f"{prefix}.json", "w", encoding="utf-8") as f:
        json.dump(inst.metadata(), f, indent=2, sort_keys=True)
    return [f"{prefix}.txt", f"{prefix}.json"]


def read_instance(prefix):
    """Load an instance written by `write_instance`, checking graph and metadata agree."""
    with open(f"{prefix}.json", "r", encoding="utf-8") as f:
        meta = json.load(f)
    inst = build_instance(meta["k"], meta["N"], meta["A"], meta["B"])
    g = graphs.read_graph(f"{prefix}.txt", id_bound=inst.graph.id_bound)
    if g != inst.graph:
        raise StructureException(
            f"Graph in {prefix}.txt does not match the instance described by {prefix}.json"
        )
    return inst
