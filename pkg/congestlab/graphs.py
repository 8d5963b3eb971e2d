"""
Graph file I/O, degeneracy, orientations and seeded graph generators.

Graph files are plain text:

    # optional comment lines
    n m
    nodes 3 7 9        (optional; ids default to 0..n-1)
    u v                (m edge lines)
"""
import heapq
import io
import logging
import networkx as nx
import numpy as np
from ._model import Graph, Orientation
from . import _utils as utils
from .exceptions import *


logger = logging.getLogger(__name__)


def _ints(parts, lineno):
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise GraphFormatException(f"Expected integers, got {' '.join(parts)!r}", line=lineno)


def parse_graph(text, id_bound=None):
    """Parse a graph from the edge-list format.

    Args:
        text (Union[str, file-like]): graph description.
        id_bound (int, optional): largest admissible node id (default max(n, 2)**4).

    Returns:
        Graph: the described graph; edge line order is irrelevant.
    """
    if hasattr(text, "read"):
        text = text.read()
    lines = text.splitlines()
    header = None
    node_set = None
    nodes = None
    edges = []
    seen = set()
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 2:
                raise GraphFormatException("Header must be 'n m'", line=lineno)
            header = _ints(parts, lineno)
            if min(header) < 0:
                raise GraphFormatException("Header values must be non-negative", line=lineno)
            continue
        n, m = header
        if parts[0] == "nodes":
            if nodes is not None or edges:
                raise GraphFormatException(
                    "The nodes line must directly follow the header", line=lineno
                )
            nodes = _ints(parts[1:], lineno)
            if len(nodes) != n or len(set(nodes)) != n:
                raise GraphFormatException(f"Expected {n} distinct node ids", line=lineno)
            bound = id_bound if id_bound is not None else max(n, 2) ** 4
            if any(v < 0 or v > bound for v in nodes):
                raise GraphFormatException(
                    f"Node ids must lie in 0..{bound}", line=lineno
                )
            continue
        if len(parts) != 2:
            raise GraphFormatException("Edge lines must be 'u v'", line=lineno)
        if nodes is None:
            nodes = list(range(n))
        if node_set is None:
            node_set = set(nodes)
        u, v = _ints(parts, lineno)
        if len(edges) == m:
            raise GraphFormatException(f"More than {m} edge lines", line=lineno)
        if u == v:
            raise GraphFormatException(f"Self-loop at node {u}", line=lineno)
        if u not in node_set or v not in node_set:
            raise GraphFormatException(f"Edge ({u}, {v}) uses an undeclared node", line=lineno)
        e = utils.norm_edge(u, v)
        if e in seen:
            raise GraphFormatException(f"Duplicate edge ({u}, {v})", line=lineno)
        seen.add(e)
        edges.append(e)
    if header is None:
        raise GraphFormatException("Missing 'n m' header", line=len(lines) or None)
    n, m = header
    if nodes is None:
        nodes = list(range(n))
    if len(edges) != m:
        raise GraphFormatException(
            f"Expected {m} edge lines, found {len(edges)}", line=len(lines)
        )
    return Graph(nodes, edges, id_bound=id_bound)


def serialize_graph(g):
    """Canonical text form: sorted edges, nodes line only for non-default ids."""
    out = io.StringIO()
    out.write(f"{g.n} {g.m}\n")
    if g.node_ids != tuple(range(g.n)):
        out.write("nodes " + " ".join(str(v) for v in g.node_ids) + "\n")
    for u, v in g.edge_list():
        out.write(f"{u} {v}\n")
    return out.getvalue()


def read_graph(path, id_bound=None):
    with open(path, "r", encoding="utf-8") as f:
        return parse_graph(f, id_bound=id_bound)


def write_graph(g, path):
    with open(path, "w", encoding="utf-8") as f:
        f.write(serialize_graph(g))


def degeneracy(g):
    """Exact degeneracy by iterated minimum-degree removal.

    Ties are broken by smallest node id.

    Returns:
        Tuple[int, list]: the degeneracy d and a removal order in which every
            node has at most d neighbours later in the order.
    """
    deg = {v: g.degree(v) for v in g}
    heap = [(d, v) for v, d in deg.items()]
    heapq.heapify(heap)
    removed = set()
    order = []
    d = 0
    while heap:
        dv, v = heapq.heappop(heap)
        if v in removed or dv != deg[v]:
            continue
        removed.add(v)
        order.append(v)
        d = max(d, dv)
        for u in g.neighbours(v):
            if u not in removed:
                deg[u] -= 1
                heapq.heappush(heap, (deg[u], u))
    return d, order


def exact_d_orientation(g):
    """Acyclic orientation with every outdegree at most degeneracy(g).

    Each node's edges point at the neighbours removed after it.
    """
    _, order = degeneracy(g)
    return Orientation.from_order(g, order)


def is_acyclic(o):
    return nx.is_directed_acyclic_graph(o.to_networkx())


def removal_order(o):
    """Topological order of an acyclic orientation (smallest id first on ties).

    The neighbours of v later in this order are exactly N_out(v), so the order
    has back-degree max outdeg.
    """
    if not is_acyclic(o):
        raise StructureException("Only acyclic orientations have a removal order")
    return list(nx.lexicographical_topological_sort(o.to_networkx()))


def back_degree(g, order):
    """Largest number of neighbours a node has later in `order`."""
    position = {v: i for i, v in enumerate(order)}
    return max(
        (sum(1 for u in g.neighbours(v) if position[u] > position[v]) for v in g),
        default=0,
    )


def edge_count_bound_check(g, d):
    return g.m <= g.n * d


def path_edges(k, convention="edges"):
    """Number of edges of a "k-path" under the given naming convention."""
    if convention == "edges":
        return k
    elif convention == "nodes":
        return k - 1
    else:
        raise ValueError(f"Unknown path convention: {convention}")


# Seeded generators


def random_graph(n, p, seed):
    """Erdos-Renyi G(n, p) from networkx's seeded Mersenne Twister generator."""
    return Graph.from_networkx(nx.gnp_random_graph(n, p, seed=seed))


def degenerate_graph(n, d, seed):
    """Random d-degenerate graph on nodes 0..n-1.

    Nodes are visited in a random order and each attaches to up to d random
    earlier nodes; this is an acyclic d-orientation that is then forgotten.
    """
    rng = np.random.default_rng(seed)
    order = [int(v) for v in rng.permutation(n)]
    edges = []
    for i, v in enumerate(order):
        size = min(d, i)
        if size:
            for u in rng.choice(order[:i], size=size, replace=False):
                edges.append(utils.norm_edge(int(u), v))
    return Graph(range(n), edges)


def random_subgraph(g, keep, seed):
    """Keep each edge of g independently with probability `keep`."""
    rng = np.random.default_rng(seed)
    edges = [e for e in g.edge_list() if rng.random() < keep]
    return Graph(g.node_ids, edges, id_bound=g.id_bound)


def _relabel(G):
    return Graph.from_networkx(nx.convert_node_labels_to_integers(G, ordering="sorted"))


def path_graph(nodes):
    return Graph.from_networkx(nx.path_graph(nodes))


def cycle_graph(nodes):
    return Graph.from_networkx(nx.cycle_graph(nodes))


def complete_graph(nodes):
    return Graph.from_networkx(nx.complete_graph(nodes))


def complete_bipartite_graph(a, b):
    return Graph.from_networkx(nx.complete_bipartite_graph(a, b))


def star_graph(leaves):
    """K_{1,leaves} with centre 0."""
    return Graph.from_networkx(nx.star_graph(leaves))


def petersen_graph():
    return Graph.from_networkx(nx.petersen_graph())


def hypercube_graph(dim):
    return _relabel(nx.hypercube_graph(dim))


def spider_graph(legs, length):
    """Centre 0 with `legs` paths of `length` edges each."""
    edges = []
    nxt = 1
    for _ in range(legs):
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Graph(range(nxt), edges)


def paw_graph():
    """Triangle 0-1-2 with pendant node 3 attached to 2."""
    return Graph(range(4), [(0, 1), (0, 2), (1, 2), (2, 3)])
