"""Exception hierarchy.

User-facing input problems derive from ``GraphInputError`` (CLI exit 1).
Violated internal consistency checks derive from ``InternalCheckError``
(CLI exit 2); these signal implementation bugs or a graph outside the
theory's hypotheses, never bad user input.
"""


class SpliceGenusError(Exception):
    pass


class GraphInputError(SpliceGenusError):
    """Malformed or invalid input graph."""


class GraphSyntaxError(GraphInputError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NotATree(GraphInputError):
    pass


class NotNegativeDefinite(GraphInputError):
    def __init__(self, minor_index):
        self.minor_index = minor_index
        super().__init__(
            f"intersection matrix is not negative definite "
            f"(leading principal minor {minor_index} has wrong sign)"
        )


class NotInDualLattice(GraphInputError):
    """Cycle is not an integer combination of the dual cycles E*_w."""


class NonEffective(GraphInputError):
    """A cycle required to be effective has a negative coefficient."""


class CycleOutOfRange(GraphInputError):
    """Cycle violates the bounds required by the twisted-h1 formula."""


class InternalCheckError(SpliceGenusError):
    pass


class IrrationalCoefficient(InternalCheckError):
    """A Hilbert coefficient failed to reduce to a rational number."""


class NegativeDimension(InternalCheckError):
    """A computed eigenspace dimension came out negative."""


class MismatchedRoutes(InternalCheckError):
    """The two independent computations of c_v disagree."""


class UnstableInM(InternalCheckError):
    """c_v changed when the truncation parameter m was increased."""


class NegativeH1(InternalCheckError):
    """The h1 recursion produced a negative value; carries the trace."""

    def __init__(self, message, trace=None):
        self.trace = trace
        super().__init__(message)


class DegenerateCoefficients(InternalCheckError):
    """Could not draw a coefficient matrix with all maximal minors nonzero."""
