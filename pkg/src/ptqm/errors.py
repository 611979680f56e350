"""Exception hierarchy shared by every layer of the toolkit."""


class PTQMError(Exception):
    """Base class for all toolkit errors."""


class DimensionMismatch(PTQMError, ValueError):
    pass


class NotHermitian(PTQMError, ValueError):
    pass


class DegenerateSpectrum(PTQMError):
    """Eigenvalues coalesce (relative gap below the degeneracy tolerance)."""


class ComplexSpectrum(PTQMError):
    """The spectrum is not real, so no positive metric can exist."""


class InvalidMetricParams(PTQMError, ValueError):
    """|u| >= |cos(alpha)|, or a == 0: the metric is not positive definite."""


class ExceptionalPoint(PTQMError):
    """The requested parameters sit at (or numerically on) the exceptional point."""


class InadmissibleObservable(PTQMError, ValueError):
    """The operator fails the quasi-Hermiticity condition for the active metric."""


class InadmissibleProjector(PTQMError, ValueError):
    pass


class ZeroState(PTQMError, ValueError):
    pass


class InvalidConfig(PTQMError, ValueError):
    pass
