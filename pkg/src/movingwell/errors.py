"""Exception hierarchy for the movingwell package."""


class MovingWellError(Exception):
    """Base class for all movingwell errors."""


class SingularTimeError(MovingWellError):
    """The requested time hits the collapse instant t0 = -c1/4 (or its guard band)."""


class InadmissibleTimeError(MovingWellError):
    """The requested time lies on the wrong side of t0 for the configured branch."""


class InvalidQuantumNumberError(MovingWellError):
    """Quantum number outside the allowed range for the requested state."""


class OutsideWellError(MovingWellError):
    """Position outside the closed well interval [0, ell(t)]."""


class SeedCollisionError(MovingWellError):
    """Requested a transformed state with the same index as the seed state."""


class RegularityViolationError(MovingWellError):
    """The confluent denominator vanishes inside the well (inadmissible omega)."""


class RealityViolationError(MovingWellError):
    """Transformation function fails the reality condition for Hermitian partners."""


class NearNodeError(MovingWellError):
    """Evaluation too close to a node of the transformation function."""


class StencilOutOfDomainError(MovingWellError):
    """A finite-difference stencil would sample points outside the admissible domain."""


class NonMonotoneResidualsError(MovingWellError):
    """Residuals failed to decrease under step refinement (formula error, not step choice)."""


class UnstableRunError(MovingWellError):
    """Propagated amplitudes grew beyond the configured stability bound."""


class GridMismatchError(MovingWellError):
    """Two sampled fields do not share the same grid."""
