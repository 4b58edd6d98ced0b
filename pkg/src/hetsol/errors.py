"""Exception types shared across the package."""


class HetsolError(Exception):
    """Base class for all package-specific errors."""


class SingularMetric(HetsolError):
    """A candidate metric is not positive definite (some leading minor <= 0)."""


class PoleAtPoint(HetsolError):
    """A rational field was evaluated where its denominator vanishes."""


class StencilOutOfDomain(HetsolError):
    """A finite-difference stencil would leave the chart's domain."""


class PreconditionViolated(HetsolError):
    """An operator was called on data that breaks its stated hypotheses."""


class InvalidKappa(HetsolError):
    """The coupling constant must be a nonzero number."""


class NonpositiveDilaton(HetsolError):
    """A branch requires e^{2*phi} > 0 and the candidate value is not positive."""


class NotEinstein(PreconditionViolated):
    """The background metric fails Ric = (s/3) g at the working point."""


class NotTT(PreconditionViolated):
    """A deformation fails the transverse-traceless conditions at the working point."""


class NotHarmonic(PreconditionViolated):
    """Sample data fails the divergence-free curvature hypothesis."""


class JacobiViolated(HetsolError):
    """Structure constants do not satisfy the Jacobi identity."""


class UnsupportedFieldCombination(HetsolError):
    """Arithmetic between incompatible field kinds (e.g. polynomial + trigonometric)."""
