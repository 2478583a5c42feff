"""Exception taxonomy shared across the package.

Two families matter to callers (and to the CLI exit-code contract):

* ``ValidationError`` -- the input violates a structural precondition
  (bad divisibility chain, mismatched parents, out-of-range arguments).
* ``NumericalError`` -- the inputs were structurally fine but a numerical
  procedure could not meet its tolerance or certification contract.
"""


class LimitbandError(Exception):
    """Base class for all package-specific errors."""


class ValidationError(LimitbandError, ValueError):
    """Structurally invalid input (CLI exit code 2)."""


class NumericalError(LimitbandError, ArithmeticError):
    """Numerical tolerance or certification failure (CLI exit code 3)."""


# -- structural -------------------------------------------------------------

class DivisibilityError(ValidationError):
    """A frequency chain has a consecutive pair n_j, n_{j+1} with n_j not dividing n_{j+1}."""


class ParentMismatch(ValidationError):
    """Two odometer points belong to different frequency integer sets."""


class DepthError(ValidationError):
    """A requested truncation depth is outside the stored chain."""


class ConditionAError(ValidationError):
    """No admissible next level exists when thinning a chain to cubic growth."""


class GrowthConditionError(ValidationError):
    """A chain violates the cubic growth window required by the distal construction."""


class PartitionError(ValidationError):
    """Block-concatenation segment arithmetic cannot satisfy the spacing constraints."""


class DetError(ValidationError):
    """A matrix expected to be unimodular fails the determinant check."""


# -- numerical --------------------------------------------------------------

class ToleranceError(NumericalError):
    """Band-edge pairing failed its midpoint consistency check; tolerance too coarse."""


class BandEdgeError(NumericalError):
    """An energy is too close to a band edge for the requested computation."""


class QuadratureError(NumericalError):
    """An adaptive quadrature failed to reach its relative tolerance."""


class PrecisionError(NumericalError):
    """A certification bound underflows the configured working precision."""


class ExhaustedError(NumericalError):
    """The gap-opening search ran out of candidate perturbations."""


class StageError(NumericalError):
    """An iterative construction failed at a specific stage."""

    def __init__(self, stage: int, message: str):
        super().__init__(f"stage {stage}: {message}")
        self.stage = stage


class NonConvergenceWarning(UserWarning):
    """Successive approximants still differ by more than the requested tolerance."""
