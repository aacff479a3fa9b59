"""Exception types shared across the package."""

from __future__ import annotations


class GraphLoadError(ValueError):
    """Base class for failures while parsing or validating graph input."""


class FormatError(GraphLoadError):
    """A line or record is malformed (edge line, cost line or JSON field)."""


class SelfLoopError(GraphLoadError):
    """An edge joins a node to itself."""


class DuplicateEdgeError(GraphLoadError):
    """The same undirected edge appears more than once."""


class DisconnectedGraphError(GraphLoadError):
    """The graph is not connected."""


class UnknownLabelError(GraphLoadError):
    """A cost entry or node reference names a label that is not in the graph."""


class NotATreeError(ValueError):
    """A tree-only routine received a graph with cycles."""


class CapExceededError(RuntimeError):
    """An enumeration grew past its configured cap.

    ``count`` carries the offending size (path count, element count or
    candidate count, depending on the caller).
    """

    def __init__(self, message: str, count: float):
        super().__init__(message)
        self.count = count


class ConsistencyError(RuntimeError):
    """Internal cross-check failed; results cannot be trusted."""


class ContractViolationError(RuntimeError):
    """A caller invoked an operation outside its stated precondition."""
