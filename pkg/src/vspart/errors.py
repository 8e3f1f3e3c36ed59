"""Exception types shared across the library."""


class VspartError(Exception):
    """Base class for all library errors."""


class NotPrime(VspartError):
    """The requested field characteristic is not a prime number."""


class FieldTooLarge(VspartError):
    """The requested field order exceeds the desk-scale guard."""


class DimensionMismatch(VspartError):
    """Operands live in different ambient spaces, or a vector has the wrong length."""


class TooLarge(VspartError):
    """An enumeration would exceed its hard size guard."""


class BudgetExceeded(VspartError):
    """An enumeration or search exceeded its configured budget."""


class ZeroSubspace(VspartError):
    """A nonzero subspace was required."""


class NotAComponent(VspartError):
    """The subspace to be refined is not a component of the partition."""


class InvalidSubPartition(VspartError):
    """The replacement used in a refinement is not a valid partition of the victim."""


class TrivialPartition(VspartError):
    """The operation requires a partition with at least two components."""


class NotDivisible(VspartError):
    """A spread of the requested dimension requires that the dimension divide n."""


class DimensionTooSmall(VspartError):
    """The extension space is too small to host the lifted components."""


class BadDimensions(VspartError):
    """The requested dimensions are outside the construction's range."""


class UnsupportedType(VspartError):
    """The requested type is outside the closed-form construction's cases."""


class NotASolution(VspartError):
    """The multiplicity vector does not solve the component-count equation."""


class UncoveredCase(VspartError):
    """No known construction rule covers the requested parameters.

    Carries the annotated count solutions (possibly empty) so callers can
    report why the parameters are infeasible or merely out of reach.
    """

    def __init__(self, message, solutions=()):
        super().__init__(message)
        self.solutions = tuple(solutions)
