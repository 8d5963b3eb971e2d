import logging
from ._base import BaseNetwork
from ._sim import SimConfig
from . import _enumerate as enum
from . import graphs
from .exceptions import *


logger = logging.getLogger(__name__)


class SupportedNetwork(BaseNetwork):
    """**Supported Network**

    Runs algorithms in supported CONGEST: the communication graph (the
    support) is known to every node, and the input is a subgraph of it that
    each node sees only through its own incident input edges. Orientations
    of the support are computed locally and cost no rounds.
    """

    def __init__(self, support, input=None, bandwidth_factor=None, max_rounds=None, d=None):
        """
        Args:
            support (Union[Graph, str]): the public support graph, or a path to one.
            input (Union[Graph, str], optional): default input subgraph for `enumerate`.
            bandwidth_factor (int, optional): multiplier of log n in the bandwidth.
            max_rounds (int, optional): simulation round limit.
            d (int, optional): degeneracy bound of the support, checked when given.
        """
        self.graph = self.__class__._load_graph(support)
        self.input = None if input is None else self.__class__._load_graph(input)
        self.cfg = SimConfig.from_env(bandwidth_factor=bandwidth_factor, max_rounds=max_rounds)
        self.d = d
        self.orientation = enum.supported_orientation(self.graph, d)
        self._runs = []

    def summary(self):
        d, _ = graphs.degeneracy(self.graph)
        return {"n": self.graph.n, "m": self.graph.m, "degeneracy": d}

    def detect(self, target, **kwargs):
        raise NotImplementedError(
            "Detection runs in broadcast CONGEST, use CoreNetwork on the input graph"
        )

    def enumerate(self, target, input=None, k=None, dedup=False, check=False):
        """List every copy of a sparse target in the input subgraph.

        Args:
            target (str): `clique`, `c4` or `c5`, or `"clique/k"`.
            input (Union[Graph, str], optional): input subgraph, defaults to
                the one given at construction.
            k (int, optional): clique size, defaults to 3.
            dedup (bool, optional): report each copy only at its designated node.
            check (bool, optional): compare the copies with the oracle on the input.

        Returns:
            Tuple[CopySet, Metrics]: copies in the input and rounds on the support.
        """
        if input is None:
            input = self.input
        if input is None:
            raise ValueError("Missing mandatory argument: input")
        input = self.__class__._load_graph(input)
        name, k = self.__class__._split_target(target, k)
        t = enum.make_target(name, **({"k": k} if k is not None else {}))
        copies, m = enum.supported_enumerate(self.graph, input, t, self.cfg, dedup, self.d)
        copies.budget = enum.supported_budget(self.graph, t, self.cfg, self.d)
        if check:
            copies.agreement = self.__class__._enumerate_agreement(
                input, copies, self.cfg.max_target_nodes
            )
        self._record(
            "supported-enumerate",
            t.label,
            getattr(t, "k", t.graph.n),
            m,
            copies.budget,
            copies.agreement,
            copies=len(copies),
        )
        logger.info(
            f"supported {t.label} on support n={self.graph.n}, input m={input.m}: "
            f"{len(copies)} copies in {m.rounds_used} rounds"
        )
        return copies, m
