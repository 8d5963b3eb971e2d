"""
Brute-force subgraph oracles used as ground truth for the distributed algorithms.

Subgraph semantics is non-induced: a copy of H maps every edge of H to an
edge of the host. Copies are deduplicated by their host edge sets.
"""
import itertools
import logging
from networkx.algorithms import isomorphism
from ._model import SubgraphCopy
from . import graphs
from .exceptions import *


logger = logging.getLogger(__name__)

DEFAULT_MAX_TARGET_NODES = 10
SLOW_PATH_MAX_HOST_NODES = 12


def _guard(h, max_target_nodes):
    if h.n > max_target_nodes:
        raise GuardException(
            f"Target has {h.n} nodes, the oracle is limited to {max_target_nodes}"
        )


def _matcher(g, h, anchor=None):
    G = g.to_networkx()
    H = h.to_networkx()
    if anchor is None:
        return isomorphism.GraphMatcher(G, H)
    host_node, target_node = anchor
    for v in G.nodes:
        G.nodes[v]["anchor"] = v == host_node
    for v in H.nodes:
        H.nodes[v]["anchor"] = v == target_node
    return isomorphism.GraphMatcher(
        G, H, node_match=lambda a, b: a["anchor"] == b["anchor"]
    )


def _copies(g, h, anchor=None):
    # Monomorphisms map host nodes to target nodes
    for mapping in _matcher(g, h, anchor).subgraph_monomorphisms_iter():
        yield SubgraphCopy({t: v for v, t in mapping.items()}, h)


def oracle_contains(g, h, max_target_nodes=DEFAULT_MAX_TARGET_NODES):
    """Some copy of h in g, or None.

    Args:
        g (Graph): host graph.
        h (Graph): target graph.
        max_target_nodes (int, optional): desk-scale guard on |V(h)|.

    Returns:
        Optional[SubgraphCopy]: first copy in ascending-id search order.
    """
    _guard(h, max_target_nodes)
    return next(_copies(g, h), None)


def oracle_enumerate(g, h, max_target_nodes=DEFAULT_MAX_TARGET_NODES):
    """Every copy of h in g, deduplicated by edge image."""
    _guard(h, max_target_nodes)
    return set(_copies(g, h))


def oracle_anchored(g, h, target_node, max_target_nodes=DEFAULT_MAX_TARGET_NODES):
    """Host nodes v such that some copy of h maps `target_node` to v."""
    _guard(h, max_target_nodes)
    found = set()
    for v in g:
        if next(_copies(g, h, anchor=(v, target_node)), None) is not None:
            found.add(v)
    return found


def oracle_path_ends(g, k, max_target_nodes=DEFAULT_MAX_TARGET_NODES):
    """Nodes at which some path with k edges ends."""
    return oracle_anchored(g, graphs.path_graph(k + 1), 0, max_target_nodes)


def oracle_cycle_nodes(g, k, max_target_nodes=DEFAULT_MAX_TARGET_NODES):
    """Nodes lying on some cycle with k nodes."""
    return oracle_anchored(g, graphs.cycle_graph(k), 0, max_target_nodes)


def brute_force_enumerate(g, h, max_host_nodes=SLOW_PATH_MAX_HOST_NODES):
    """Unpruned enumeration over all injective maps; an independent slow path."""
    if g.n > max_host_nodes:
        raise GuardException(
            f"Host has {g.n} nodes, the slow path is limited to {max_host_nodes}"
        )
    copies = set()
    targets = h.node_ids
    for image in itertools.permutations(g.node_ids, h.n):
        mapping = dict(zip(targets, image))
        if all(g.has_edge(mapping[a], mapping[b]) for a, b in h.edges):
            copies.add(SubgraphCopy(mapping, h))
    return copies
