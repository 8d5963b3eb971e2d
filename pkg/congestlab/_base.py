from abc import ABC
import pandas as pd
from ._model import Graph
from . import graphs
from . import oracle


DETECT_TARGETS = ["path", "cycle", "tree", "pseudotree"]


class BaseNetwork(ABC):
    """Base class for congestlab networks."""

    @classmethod
    def _split_target(cls, target, k=None):
        """Parse target and size, e.g. `"clique/4"` or `("clique", 4)`."""
        if isinstance(target, str) and "/" in target:
            name, size = target.split("/", 1)
            if not size.isdigit():
                raise ValueError(f"Invalid target size in {target}")
            if k is not None and int(size) != k:
                raise ValueError(f"Conflicting sizes for {name}: {size} and {k}")
            return name, int(size)
        return target, k

    @classmethod
    def _validate_kwargs(cls, args, valid=[], mandatory=[]):
        for name in args.keys():
            if name not in valid:
                raise ValueError(f"Invalid argument: {name}")
        for name in mandatory:
            if name not in args.keys():
                raise ValueError(f"Missing mandatory argument: {name}")

    @classmethod
    def _load_graph(cls, graph):
        """Accept a Graph, a networkx graph or a path to a graph file."""
        if isinstance(graph, Graph):
            return graph
        elif isinstance(graph, str):
            return graphs.read_graph(graph)
        elif hasattr(graph, "nodes") and hasattr(graph, "edges"):
            return Graph.from_networkx(graph)
        else:
            raise ValueError("Must supply a Graph, a networkx graph or a file path")

    @classmethod
    def _detect_agreement(cls, g, result, target, **kwargs):
        """Compare a DetectResult with the brute-force oracle."""
        max_nodes = kwargs.get("max_target_nodes", oracle.DEFAULT_MAX_TARGET_NODES)
        if target == "path":
            expected = oracle.oracle_path_ends(g, kwargs["k"], max_nodes)
        elif target == "cycle" and kwargs.get("anchor") is not None:
            # Fixed-anchor runs only decide whether the anchor lies on a k-cycle
            on_cycle = kwargs["anchor"] in oracle.oracle_cycle_nodes(g, kwargs["k"], max_nodes)
            return result.any_found == on_cycle
        elif target == "cycle":
            expected = oracle.oracle_cycle_nodes(g, kwargs["k"], max_nodes)
        elif target == "tree":
            tree = kwargs["tree"]
            expected = oracle.oracle_anchored(g, tree.target, tree.root, max_nodes)
        elif target == "pseudotree":
            pseudo = kwargs["pseudotree"]
            expected = oracle.oracle_anchored(g, pseudo.target, pseudo.u2, max_nodes)
        else:
            raise ValueError(f"Unknown detection target: {target}")
        return set(result.found_nodes) == expected

    @classmethod
    def _enumerate_agreement(cls, g, copies, max_target_nodes=oracle.DEFAULT_MAX_TARGET_NODES):
        return copies == oracle.oracle_enumerate(g, copies.target.graph, max_target_nodes)

    def __init__(self, graph, **kwargs):
        """Create a network over a graph."""
        raise NotImplementedError()

    def _record(self, kind, target, k, metrics, budget=None, agreement=None, **extra):
        self._runs.append(
            {
                "kind": kind,
                "target": target,
                "k": k,
                "rounds": metrics.rounds_used,
                "budget": budget,
                "max_bits": metrics.max_message_bits,
                "total_bits": metrics.total_bits,
                "agreement": agreement,
                **extra,
            }
        )

    def list_runs(self):
        """List the runs made on this network.

        Returns:
            pd.DataFrame: one row per detection or enumeration run.
        """
        df = pd.DataFrame(self._runs)
        if df.empty:
            return pd.DataFrame()
        column_order = ["kind", "target", "k", "rounds", "budget"]
        return df[[*column_order, *df.columns.difference(column_order, sort=False)]]

    def summary(self):
        """Node count, edge count and degeneracy of the network.

        Returns:
            dict: `n`, `m` and `degeneracy`.
        """
        raise NotImplementedError()

    def detect(self, target, **kwargs):
        """Run a detection algorithm.

        Args:
            target (str): one of `path`, `cycle`, `tree` or `pseudotree`.
            **kwargs: target parameters such as `k`, `anchor` or `h`.

        Returns:
            DetectResult: per-node flags, witnesses and metrics.
        """
        raise NotImplementedError()

    def enumerate(self, target, **kwargs):
        """List every copy of a sparse target.

        Args:
            target (str): registered target name, e.g. `clique`, `c4` or `c5`.
            **kwargs: target and run parameters.

        Returns:
            Tuple[CopySet, Metrics]: the copies and round metrics.
        """
        raise NotImplementedError()
