from abc import ABC, abstractmethod


class BaseTarget(ABC):
    """Base class for enumeration targets.
    Sub-class this to add further target graphs.
    """

    name = None
    # Targets needing the length-2 out-path sets L(v) set this
    needs_paths = False

    @property
    @abstractmethod
    def graph(self):
        """The target graph H."""
        raise NotImplementedError()

    @property
    def label(self):
        return self.name

    def check(self, d):
        """Raise ValueError if the target cannot occur in a d-degenerate graph."""
        pass

    @abstractmethod
    def local_copies(self, local, v):
        """Copies of H through v in a node's local graph (a networkx Graph)."""
        raise NotImplementedError()

    @abstractmethod
    def designated(self, copy, points):
        """Nodes of `copy` that gather all of its edges.

        `points(u, v)` is True iff the edge {u, v} is directed u -> v.
        """
        raise NotImplementedError()

    def owner(self, copy, points):
        """The designated reporter: smallest designated node id."""
        return min(self.designated(copy, points))
