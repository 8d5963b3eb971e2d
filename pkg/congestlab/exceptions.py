"""
Exceptions raised by congestlab objects
"""


class CongestException(Exception):
    """General congestlab exception."""

    pass


class GraphFormatException(CongestException):
    """A graph file could not be parsed."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class StructureException(CongestException):
    """An input graph does not have the required structure."""

    pass


class GuardException(CongestException):
    """The request exceeds a desk-scale size guard."""

    pass


class BandwidthException(CongestException):
    """A node tried to broadcast more than B bits in one round."""

    def __init__(self, node, round, bits, bandwidth):
        self.node = node
        self.round = round
        super().__init__(
            f"Node {node} broadcast {bits} bits in round {round} (bandwidth {bandwidth})"
        )


class RoundLimitException(CongestException):
    """The simulation did not terminate within max_rounds."""

    pass


class PhaseOverflowException(CongestException):
    """A phase payload does not fit into its precomputed round budget."""

    pass


class DegeneracyException(CongestException):
    """The graph is not d-degenerate for the degeneracy bound supplied."""

    pass


class VerificationException(CongestException):
    """A generated instance failed one or more of its structural properties."""

    def __init__(self, failures):
        self.failures = list(failures)
        super().__init__("Failed properties: " + ", ".join(self.failures))
