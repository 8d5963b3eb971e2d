import logging
from ._base import BaseNetwork, DETECT_TARGETS
from ._sim import SimConfig
from ._orient import DEFAULT_C, distributed_orientation
from . import _detect as detect
from . import _enumerate as enum
from . import graphs
from .exceptions import *


logger = logging.getLogger(__name__)


class CoreNetwork(BaseNetwork):
    """**Core Network**

    Runs algorithms in broadcast CONGEST: every node starts knowing only its
    own id and its degree, and each round broadcasts one message of at most
    B bits to all neighbours.

    When specifying targets for `enumerate`, use either:

    * `target` and `k` as arguments; or
    * specify the target in the format `"clique/4"`.
    """

    def __init__(
        self,
        graph,
        bandwidth_factor=None,
        max_rounds=None,
        C=DEFAULT_C,
        d=None,
    ):
        """
        Args:
            graph (Union[Graph, str]): the network, or a path to a graph file.
            bandwidth_factor (int, optional): multiplier of log n in the
                bandwidth, defaults to `CONGESTLAB_BANDWIDTH_FACTOR` or 16.
            max_rounds (int, optional): simulation round limit.
            C (Union[int, Fraction], optional): peeling constant, must exceed 2.
            d (int, optional): degeneracy bound given to the nodes; defaults to
                the exact degeneracy of the graph.
        """
        self.graph = self.__class__._load_graph(graph)
        self.cfg = SimConfig.from_env(bandwidth_factor=bandwidth_factor, max_rounds=max_rounds)
        self.C = C
        self._degeneracy = None
        self.d = d
        self._runs = []

    @property
    def degeneracy(self):
        if self._degeneracy is None:
            self._degeneracy, _ = graphs.degeneracy(self.graph)
        return self._degeneracy

    def _bound(self):
        return self.degeneracy if self.d is None else self.d

    def summary(self):
        return {"n": self.graph.n, "m": self.graph.m, "degeneracy": self.degeneracy}

    def detect(self, target, check=False, **kwargs):
        """Run a detection algorithm.

        Args:
            target (str): one of `path`, `cycle`, `tree` or `pseudotree`.
            check (bool, optional): compare the result with the brute-force
                oracle and attach the outcome as `result.agreement`.
            k (int): path or cycle length (`path`, `cycle`).
            convention (str, optional): `"edges"` (default) or `"nodes"` (`path`).
            anchor (int, optional): fix the cycle's start node (`cycle`).
            h (Graph): target tree or pseudotree (`tree`, `pseudotree`).
            root (int, optional): root of the target tree (`tree`).

        Returns:
            DetectResult: per-node flags, witnesses and metrics.
        """
        g = self.graph
        if target == "path":
            self.__class__._validate_kwargs(kwargs, ["k", "convention"], mandatory=["k"])
            convention = kwargs.get("convention", "edges")
            result = detect.detect_paths(g, kwargs["k"], self.cfg, convention)
            k = graphs.path_edges(kwargs["k"], convention)
            oracle_args = {"k": k}
        elif target == "cycle":
            self.__class__._validate_kwargs(kwargs, ["k", "anchor"], mandatory=["k"])
            k = kwargs["k"]
            anchor = kwargs.get("anchor")
            if anchor is None:
                result = detect.detect_cycles(g, k, self.cfg)
            else:
                result = detect.detect_cycles_fixed(g, k, anchor, self.cfg)
            oracle_args = {"k": k, "anchor": anchor}
        elif target == "tree":
            self.__class__._validate_kwargs(kwargs, ["h", "root"], mandatory=["h"])
            tree = detect.order_tree(kwargs["h"], kwargs.get("root"))
            result = detect.detect_tree(g, tree, self.cfg)
            k = tree.k
            oracle_args = {"tree": tree}
        elif target == "pseudotree":
            self.__class__._validate_kwargs(kwargs, ["h"], mandatory=["h"])
            pseudo = detect.prepare_pseudotree(kwargs["h"])
            result = detect.detect_pseudotree(g, pseudo, self.cfg)
            k = pseudo.k
            oracle_args = {"pseudotree": pseudo}
        else:
            raise ValueError(
                f"Unknown detection target {target}, choose from {', '.join(DETECT_TARGETS)}"
            )
        if check:
            result.agreement = self.__class__._detect_agreement(
                g, result, target, max_target_nodes=self.cfg.max_target_nodes, **oracle_args
            )
        self._record(
            "detect", target, k, result.metrics, result.budget, result.agreement, found=result.any_found
        )
        logger.info(
            f"detect {result.target} on n={g.n}: found={result.any_found}, "
            f"{result.metrics.rounds_used} rounds (budget {result.budget})"
        )
        return result

    def enumerate(self, target, k=None, dedup=False, check=False):
        """List every copy of a sparse target.

        Args:
            target (str): `clique`, `c4` or `c5`, or `"clique/k"`.
            k (int, optional): clique size, defaults to 3.
            dedup (bool, optional): report each copy only at its designated node.
            check (bool, optional): compare the copies with the oracle.

        Returns:
            Tuple[CopySet, Metrics]: copies and round metrics; the copy set
                carries `agreement` and `budget`.
        """
        name, k = self.__class__._split_target(target, k)
        t = enum.make_target(name, **({"k": k} if k is not None else {}))
        d = self._bound()
        copies, m = enum.enumerate_target(self.graph, t, d, self.cfg, self.C, dedup)
        copies.budget = enum.enumerate_budget(self.graph, t, d, self.cfg, self.C)
        if check:
            copies.agreement = self.__class__._enumerate_agreement(
                self.graph, copies, self.cfg.max_target_nodes
            )
        self._record(
            "enumerate", t.label, getattr(t, "k", t.graph.n), m, copies.budget, copies.agreement, copies=len(copies)
        )
        logger.info(f"enumerate {t.label} on n={self.graph.n}, d={d}: {len(copies)} copies in {m.rounds_used} rounds")
        return copies, m

    def orient(self):
        """Distributed peeling orientation with the network's degeneracy bound.

        Returns:
            Tuple[Orientation, PeelState, Metrics]: see `distributed_orientation`.
        """
        return distributed_orientation(self.graph, self._bound(), self.C, self.cfg)
