import networkx as nx
from .._model import SubgraphCopy
from .. import graphs
from ._base import BaseTarget


class CycleTarget(BaseTarget):
    length = None

    def __init__(self):
        self._graph = graphs.cycle_graph(self.length)

    @property
    def graph(self):
        return self._graph

    def local_copies(self, local, v):
        if v not in local:
            return set()
        ends = set(local.neighbors(v))
        copies = set()
        for path in nx.all_simple_paths(local, v, ends, cutoff=self.length - 1):
            if len(path) == self.length:
                copies.add(SubgraphCopy.from_sequence(path, self._graph))
        return copies

    @staticmethod
    def cyclic_order(copy):
        # Target nodes 0..L-1 are consecutive on the cycle
        return [host for _, host in copy.mapping]

    def orders(self, copy):
        """Every rotation and reflection of the copy's cyclic order."""
        order = self.cyclic_order(copy)
        L = len(order)
        for seq in (order, order[::-1]):
            for shift in range(L):
                yield [seq[(shift + t) % L] for t in range(L)]
