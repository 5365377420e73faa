"""Exception types shared across the package."""


class LiecharError(Exception):
    """Base class for all errors raised by this package."""


class NotFiniteTypeError(LiecharError):
    """Cartan matrix is malformed or not of finite type."""


class RankMismatchError(LiecharError):
    """Weights or characters of different ranks were combined."""


class NonDominantError(LiecharError):
    """A dominant weight was required."""


class NonInvariantError(LiecharError):
    """A W-invariant character was required."""


class CoverageError(LiecharError):
    """A decomposition or injective-hull data source lacks a needed weight."""

    def __init__(self, weight, message=None):
        self.weight = weight
        super().__init__(message or f"no data for weight {weight}")


class DivisionFailure(LiecharError):
    """Exact character division failed; carries the obstructing term."""

    def __init__(self, weight, mult, message=None):
        self.weight = weight
        self.mult = mult
        super().__init__(
            message or f"non-divisible: remainder term {mult} at weight {weight}"
        )


class DataValidationError(LiecharError):
    """An external data document failed schema or consistency checks."""
