"""Exception hierarchy.  Every mathematical failure derives from ``MathError``."""


class DT4Error(Exception):
    pass


class ResourceLimitError(DT4Error):
    pass


class MathError(DT4Error):
    pass


class ZeroWeightError(MathError):
    """A character has a torus-fixed (zero-weight) part."""


class UnpairableError(MathError):
    """The specialized vertex is not symmetric under the bar involution."""


class PoleHitError(MathError):
    """A denominator factor vanishes at the evaluation point."""


class PoleAtSpecialization(MathError):
    pass


class ZeroAtSpecialization(MathError):
    pass


class NotConstantError(MathError):
    """Residual dependence on the equivariant parameters after specialization."""


class WrongShapeError(MathError):
    pass


class BadConstantTerm(MathError):
    pass


class BadChartError(DT4Error):
    pass
