import networkx as nx
from .._model import SubgraphCopy
from .. import graphs
from ._base import BaseTarget


class Target(BaseTarget):
    """k-cliques; each clique is reported by its unique sink."""

    name = "clique"

    def __init__(self, k=3):
        if k < 3:
            raise ValueError(f"Clique size must be at least 3, got {k}")
        self.k = k
        self._graph = graphs.complete_graph(k)

    @property
    def graph(self):
        return self._graph

    @property
    def label(self):
        return f"clique-{self.k}"

    def check(self, d):
        if self.k > d + 1:
            raise ValueError(f"A {d}-degenerate graph has no {self.k}-clique")

    def local_copies(self, local, v):
        if v not in local:
            return set()
        copies = set()
        for clique in nx.enumerate_all_cliques(local.subgraph(local.neighbors(v))):
            if len(clique) >= self.k:
                break
            if len(clique) == self.k - 1:
                copies.add(SubgraphCopy.from_sequence(sorted(clique + [v]), self._graph))
        return copies

    def designated(self, copy, points):
        nodes = copy.nodes
        return {x for x in nodes if not any(points(x, y) for y in nodes if y != x)}
