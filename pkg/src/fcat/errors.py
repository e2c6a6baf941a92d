"""Exception types shared across the package."""


class FcatError(Exception):
    """Base class for all errors raised by this package."""


class SchemaError(FcatError):
    """A category file is malformed or violates the file schema."""


class MissingData(SchemaError):
    """Required data (e.g. quantum dimensions) is absent and underivable."""


class ConsistencyError(FcatError):
    """Loaded data violates a structural identity.

    Parameters
    ----------
    kind : str
        Which identity failed, e.g. ``'pentagon'`` or ``'sphericality'``.
    residual : float
        Size of the violation.
    """

    def __init__(self, kind, residual, msg=None):
        self.kind = kind
        self.residual = residual
        super().__init__(msg or f"{kind} violated, residual {residual:.3e}")


class UnknownLabel(FcatError):
    """A label id does not belong to the category."""


class ShapeMismatch(FcatError):
    """Sources/targets of morphisms do not line up for the requested operation."""


class BadPosition(FcatError):
    """An invalid re-association position was requested."""


class NotBraided(FcatError):
    """The operation needs R-symbols but the category carries none."""


class NotModular(FcatError):
    """The operation requires non-singular modular data."""


class NotHalfBraiding(FcatError):
    """A would-be half-braiding fails its defining identities."""

    def __init__(self, residual):
        self.residual = residual
        super().__init__(f"half-braiding identities violated, residual {residual:.3e}")


class SplitFailed(FcatError):
    """Rank determination of an idempotent splitting is ambiguous or impossible."""


class DecompositionFailed(FcatError):
    """Block decomposition of the tube algebra could not be completed."""
