"""Shared exception types."""


class EquimorseError(Exception):
    """Base class for all library errors."""


class RingMismatchError(EquimorseError):
    """Operands belong to different coefficient rings."""


class SingularMatrixError(EquimorseError):
    """A matrix that must be invertible over its ring is not."""


class DegreeMismatchError(EquimorseError):
    """Chain or basis-element degrees do not line up."""


class ClosureOverflowError(EquimorseError):
    """Group closure exceeded the configured element cap."""


class GeneratorError(EquimorseError):
    """A group generator is not a degree-preserving basis bijection."""


class NotClosedUnderBoundaryError(EquimorseError):
    """A basis subset does not span a subcomplex."""

    def __init__(self, element, message=None):
        self.element = element
        super().__init__(message or f"boundary of {element} leaves the selected span")


class AcyclicityError(EquimorseError):
    """A matching is not acyclic; carries an alternating cycle witness."""

    def __init__(self, cycle):
        self.cycle = list(cycle)
        names = " -> ".join(e.label for e in self.cycle)
        super().__init__(f"matching admits a directed cycle: {names}")


class MatchingValidationError(EquimorseError):
    """A matching failed validation; carries the full report."""

    def __init__(self, report):
        self.report = report
        super().__init__("matching failed validation:\n" + report.summary())


class UnsupportedCoefficientsError(EquimorseError):
    """Homology requested over a ring without the needed structure."""
