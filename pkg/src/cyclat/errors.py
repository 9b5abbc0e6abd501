"""Exception types shared across the toolkit."""


class CyclatError(Exception):
    """Base class for all toolkit errors."""


class IncompatibleFieldError(CyclatError):
    """Arithmetic attempted between scalars of distinct quadratic fields."""


class RankError(CyclatError):
    """Operation applied to a lattice of unsupported rank."""


class AmbientDimensionError(CyclatError):
    """Two lattices live in different ambient spaces."""


class SingularMatrixError(CyclatError):
    """A nonsingular matrix was required."""


class NotWellRoundedError(CyclatError):
    """Canonicalization requested for a lattice that is not well-rounded."""


class NotCyclicError(CyclatError):
    """Generator search requested for a lattice that is not cyclic."""


class ScaleLimitError(CyclatError):
    """Requested computation exceeds the supported desk scale."""


class UnsupportedFieldError(CyclatError):
    """Field descriptor outside the supported tower."""


class EnclosureError(CyclatError):
    """A rigorous enclosure could not be tightened enough."""


class DocumentError(CyclatError):
    """Malformed lattice document; carries a position diagnostic."""

    def __init__(self, message: str, *, where: str = ""):
        super().__init__(f"{message}{f' (at {where})' if where else ''}")
        self.where = where
