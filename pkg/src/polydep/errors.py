"""Exception hierarchy shared by the graph, query and trace layers."""


class PolydepError(Exception):
    """Base class for every error raised by this package."""


class GraphError(PolydepError):
    pass


class DuplicateNodeError(GraphError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"duplicate node name {name!r}")


class EmptyNameError(GraphError):
    def __init__(self):
        super().__init__("node names must be non-empty")


class UnknownNodeError(GraphError):
    def __init__(self, node):
        self.node = node
        super().__init__(f"unknown node {node!r}")


class SelfLoopError(GraphError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"self-loop on node {name!r}")


class DuplicateEdgeError(GraphError):
    def __init__(self, parent, child):
        self.edge = (parent, child)
        super().__init__(f"duplicate edge {parent} -> {child}")


class CycleError(GraphError):
    """A directed cycle; ``cycle`` lists node names with the first repeated last."""

    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__("directed cycle " + " -> ".join(self.cycle))


class UndirectedCycleError(GraphError):
    """The skeleton has a cycle, so the graph is not a polytree."""

    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__("undirected cycle " + " - ".join(self.cycle))


class QueryError(PolydepError):
    pass


class OverlapError(QueryError):
    def __init__(self, node):
        self.node = node
        super().__init__(f"node {node!r} appears in more than one of X, Y, Z")


class EmptySetError(QueryError):
    def __init__(self, which):
        self.which = which
        super().__init__(f"{which} must be non-empty")


class DerivationError(PolydepError):
    """Raised when ``dep`` does not certify a requested dependence."""


class UniverseTooLargeError(PolydepError):
    def __init__(self, n, cap):
        super().__init__(f"closure is capped at {cap} nodes, graph has {n}")


class ParseError(PolydepError):
    """Syntax or semantic error in a text input, with a 1-based location."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        self.message = message
        loc = []
        if line is not None:
            loc.append(f"line {line}")
        if column is not None:
            loc.append(f"column {column}")
        prefix = ", ".join(loc)
        super().__init__(f"{prefix}: {message}" if prefix else message)
