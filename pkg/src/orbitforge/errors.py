"""Exception types shared across the package.

Every message names the violated precondition so that CLI error paths can
surface it verbatim.
"""


class OrbitforgeError(Exception):
    """Base class for all package errors."""


class DimensionMismatchError(OrbitforgeError, ValueError):
    """Operands have incompatible shapes or ambient dimensions."""


class NotNilpotentError(OrbitforgeError, ValueError):
    """A matrix required to be nilpotent is not."""


class NotUnipotentError(OrbitforgeError, ValueError):
    """A matrix required to be unipotent is not."""


class SingularMatrixError(OrbitforgeError, ValueError):
    """A matrix required to be invertible is singular."""


class UnsupportedSpectrumError(OrbitforgeError, ValueError):
    """Characteristic polynomial does not split over the rationals."""


class PreconditionError(OrbitforgeError, ValueError):
    """An operation precondition not covered by a more specific error."""


class GenericityError(OrbitforgeError, RuntimeError):
    """Randomized genericity sampling failed (dominance-incomparable labels,
    or no generic sample found within the trial budget)."""


class InvariantViolation(OrbitforgeError, AssertionError):
    """A structural invariant that should hold by construction failed;
    signals an internal bug, not bad input."""
