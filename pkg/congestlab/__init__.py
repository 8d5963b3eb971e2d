"""
congestlab simulates distributed graph algorithms in the broadcast CONGEST model.
Each node of the network starts knowing only its own id and degree; in every
synchronous round it broadcasts a single O(log n)-bit message to all of its
neighbours. The simulator enforces the bandwidth and counts rounds exactly.

It ships round-efficient algorithms for detecting paths, cycles, trees and
pseudotrees with representative families, enumerating cliques, 4-cycles and
5-cycles in d-degenerate graphs, and a generator for the lower-bound instances
of k-cycle detection.

Example usage on a graph file:

    import congestlab as cl
    net = cl.Network("graph.txt")
    result = net.detect("cycle", k=5, check=True)
    copies, metrics = net.enumerate("clique/4")

Supported CONGEST, where the support graph is public and the input is a
subgraph of it:

    net = cl.Network("input.txt", support="support.txt")
    copies, metrics = net.enumerate("c4")

The command-line tool `congestlab` wraps the same operations and prints JSON
run reports; see `congestlab --help`.

"""
from .core import CoreNetwork
from .supported import SupportedNetwork
from ._model import Graph, Orientation, SubgraphCopy
from ._sim import SimConfig
from ._version import __version__


def Network(graph, support=None, **kwargs):
    """Factory method to create Network objects.

    Args:
        graph (Union[Graph, str]): the network, or the input subgraph when a
            support graph is given; a Graph or a path to a graph file.
        support (Union[Graph, str], optional): public support graph for
            supported CONGEST.
        **kwargs: Additional options to be passed to the Network constructor.

    Returns:
        Union[CoreNetwork, SupportedNetwork]: Network object.
    """
    if support is not None:
        # Supported CONGEST on the public support graph
        return SupportedNetwork(support, input=graph, **kwargs)
    else:
        # Broadcast CONGEST directly on the graph
        return CoreNetwork(graph, **kwargs)
