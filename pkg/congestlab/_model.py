"""Domain types: graphs, orientations and embedded subgraph copies."""
import networkx as nx
from . import _utils as utils
from .exceptions import *


DEFAULT_ID_EXPONENT = 4


class ModelMixin(object):
    def as_dict(self):
        return {
            k: v if utils.is_jsonable(v) else str(v)
            for k, v in self.__dict__.items()
            if k[0] != "_"
        }


class Graph(ModelMixin):
    """Undirected simple graph with stable non-negative integer node ids.

    Graphs are immutable once built. Node ids are kept in ascending order,
    which is also the iteration order used by every algorithm in the package.
    """

    def __init__(self, nodes=(), edges=(), id_bound=None):
        """
        Args:
            nodes (iterable): node ids; endpoints of `edges` must appear here.
            edges (iterable): pairs of node ids.
            id_bound (int, optional): largest admissible id, defaults to
                max(n, 2) ** 4.
        """
        nodes = list(nodes)
        node_set = set(nodes)
        if len(node_set) != len(nodes):
            raise StructureException("Node ids must be distinct")
        for v in nodes:
            if not isinstance(v, int) or v < 0:
                raise StructureException(f"Invalid node id {v!r}")
        n = len(nodes)
        if id_bound is None:
            id_bound = max(n, 2) ** DEFAULT_ID_EXPONENT
        if nodes and max(nodes) > id_bound:
            raise StructureException(
                f"Node id {max(nodes)} exceeds the polynomial id bound {id_bound}"
            )
        adj = {v: set() for v in nodes}
        edge_set = set()
        for u, v in edges:
            if u == v:
                raise StructureException(f"Self-loop at node {u}")
            if u not in node_set or v not in node_set:
                raise StructureException(f"Edge ({u}, {v}) has an undeclared endpoint")
            e = utils.norm_edge(u, v)
            if e in edge_set:
                raise StructureException(f"Duplicate edge ({u}, {v})")
            edge_set.add(e)
            adj[u].add(v)
            adj[v].add(u)
        self.node_ids = tuple(sorted(nodes))
        self.edges = frozenset(edge_set)
        self.n = n
        self.m = len(edge_set)
        self.id_bound = id_bound
        self._adj = {v: tuple(sorted(adj[v])) for v in self.node_ids}

    @classmethod
    def from_edges(cls, edges, nodes=None, **kwargs):
        """Build a graph from an edge list; nodes default to the endpoints."""
        edges = list(edges)
        if nodes is None:
            nodes = sorted({v for e in edges for v in e})
        return cls(nodes, edges, **kwargs)

    @classmethod
    def from_networkx(cls, G, **kwargs):
        return cls(sorted(G.nodes), sorted(utils.norm_edge(u, v) for u, v in G.edges), **kwargs)

    def to_networkx(self):
        G = nx.Graph()
        G.add_nodes_from(self.node_ids)
        G.add_edges_from(self.edge_list())
        return G

    def neighbours(self, v):
        return self._adj[v]

    def degree(self, v):
        return len(self._adj[v])

    def has_edge(self, u, v):
        return utils.norm_edge(u, v) in self.edges

    def edge_list(self):
        return sorted(self.edges)

    def induced(self, nodes):
        """Subgraph G[A] induced by a node set."""
        nodes = set(nodes)
        return Graph(
            sorted(nodes),
            [e for e in self.edge_list() if e[0] in nodes and e[1] in nodes],
            id_bound=self.id_bound,
        )

    def edge_induced(self, edges):
        """Subgraph G[F] induced by an edge set."""
        edges = {utils.norm_edge(u, v) for u, v in edges}
        for e in edges:
            if e not in self.edges:
                raise StructureException(f"Edge {e} is not in the graph")
        return Graph.from_edges(sorted(edges), id_bound=self.id_bound)

    def is_subgraph_of(self, other):
        return set(self.node_ids) <= set(other.node_ids) and self.edges <= other.edges

    def __len__(self):
        return self.n

    def __iter__(self):
        return iter(self.node_ids)

    def __contains__(self, v):
        return v in self._adj

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.node_ids == other.node_ids and self.edges == other.edges

    def __hash__(self):
        return hash((self.node_ids, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"

    def as_dict(self):
        return {"n": self.n, "m": self.m, "nodes": list(self.node_ids), "edges": self.edge_list()}


class Orientation(ModelMixin):
    """Assignment of a direction to every edge of a base graph."""

    def __init__(self, base, heads):
        """
        Args:
            base (Graph): the oriented graph.
            heads (dict): maps each edge `(u, v)` (u < v) to the node the
                edge points at.
        """
        out = {v: set() for v in base}
        inc = {v: set() for v in base}
        for e in base.edges:
            if e not in heads:
                raise StructureException(f"Edge {e} has no direction")
            head = heads[e]
            if head not in e:
                raise StructureException(f"Edge {e} cannot point at {head}")
            tail = e[0] if head == e[1] else e[1]
            out[tail].add(head)
            inc[head].add(tail)
        if len(heads) != base.m:
            raise StructureException("Orientation directs edges outside the base graph")
        self.base = base
        self._heads = dict(heads)
        self._out = {v: tuple(sorted(s)) for v, s in out.items()}
        self._in = {v: tuple(sorted(s)) for v, s in inc.items()}

    @classmethod
    def from_key(cls, graph, key):
        """Orient every edge towards the endpoint with the larger key."""
        return cls(graph, {e: max(e, key=key) for e in graph.edges})

    @classmethod
    def from_order(cls, graph, order):
        """Orient every edge towards the endpoint that comes later in `order`."""
        position = {v: i for i, v in enumerate(order)}
        return cls.from_key(graph, position.__getitem__)

    def head(self, u, v):
        return self._heads[utils.norm_edge(u, v)]

    def points(self, u, v):
        """True iff the edge {u, v} is directed u -> v."""
        return self.head(u, v) == v

    def out_neighbours(self, v):
        return self._out[v]

    def outdeg(self, v):
        return len(self._out[v])

    def indeg(self, v):
        return len(self._in[v])

    def max_outdegree(self):
        return max((len(s) for s in self._out.values()), default=0)

    def arcs(self):
        return sorted((t, h) for t in self._out for h in self._out[t])

    def restrict(self, subgraph):
        """The same directions on a subgraph of the base graph."""
        if not subgraph.is_subgraph_of(self.base):
            raise StructureException("Can only restrict an orientation to a subgraph")
        return Orientation(subgraph, {e: self._heads[e] for e in subgraph.edges})

    def to_networkx(self):
        D = nx.DiGraph()
        D.add_nodes_from(self.base.node_ids)
        D.add_edges_from(self.arcs())
        return D

    def __eq__(self, other):
        if not isinstance(other, Orientation):
            return NotImplemented
        return self.base == other.base and self._heads == other._heads

    def __repr__(self):
        return f"Orientation(n={self.base.n}, max_outdegree={self.max_outdegree()})"

    def as_dict(self):
        return {"arcs": self.arcs()}


class SubgraphCopy(ModelMixin):
    """A copy of a target graph inside a host graph.

    Copies compare equal iff they use the same host edges, so copies are
    counted up to automorphisms of the target.
    """

    def __init__(self, mapping, target):
        """
        Args:
            mapping (dict): injective map from target node ids to host node ids.
            target (Graph): the embedded graph.
        """
        if len(set(mapping.values())) != len(mapping):
            raise StructureException("Subgraph mapping is not injective")
        if set(mapping) != set(target.node_ids):
            raise StructureException("Subgraph mapping must cover every target node")
        self.mapping = tuple(sorted(mapping.items()))
        self.edge_image = frozenset(
            utils.norm_edge(mapping[a], mapping[b]) for a, b in target.edges
        )
        self._target = target

    @classmethod
    def from_sequence(cls, sequence, target):
        """Map target node i (in ascending id order) to `sequence[i]`."""
        return cls(dict(zip(target.node_ids, sequence)), target)

    @property
    def nodes(self):
        return frozenset(h for _, h in self.mapping)

    def validate(self, host):
        """Raise unless every target edge maps to a host edge."""
        for e in self.edge_image:
            if e not in host.edges:
                raise StructureException(f"Copy uses edge {e} missing from the host")
        return self

    def __eq__(self, other):
        if not isinstance(other, SubgraphCopy):
            return NotImplemented
        return self.edge_image == other.edge_image

    def __hash__(self):
        return hash(self.edge_image)

    def __repr__(self):
        return f"SubgraphCopy({sorted(self.edge_image)})"

    def as_dict(self):
        return {"mapping": [list(p) for p in self.mapping], "edges": sorted(self.edge_image)}
