"""Exception types shared across the package."""


class SteklovError(Exception):
    """Base class for package-specific errors."""


class GraphError(SteklovError, ValueError):
    """Invalid graph construction input."""


class SelfLoopError(GraphError):
    """An edge joins a vertex to itself."""


class DuplicateEdgeError(GraphError):
    """The same edge appears more than once."""


class DisconnectedError(GraphError):
    """The graph (or an induced subgraph) is not connected."""


class CycleError(GraphError):
    """A connected input has more than n-1 edges, hence a cycle."""


class BoundaryError(GraphError):
    """The boundary set violates a precondition."""


class NotDiametralError(SteklovError, ValueError):
    """A vertex sequence is not a diametral path of the tree."""


class OddDiameterError(SteklovError, ValueError):
    """An even-diameter-only predicate was asked about an odd-diameter tree."""


class FamilyParameterError(SteklovError, ValueError):
    """Family parameters outside their admissible range."""


class EnumerationRangeError(SteklovError, ValueError):
    """Requested vertex count outside the supported enumeration range."""


class EdgeListFormatError(SteklovError, ValueError):
    """Malformed edge-list text."""


class EigensolverError(SteklovError, RuntimeError):
    """The cyclic Jacobi sweep cap was hit before convergence."""


class InteriorSolveError(SteklovError, RuntimeError):
    """The interior Laplacian block was not positive definite (internal error)."""
