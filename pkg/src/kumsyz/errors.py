"""Shared exception types."""


class FieldMismatchError(ValueError):
    """Operands live over different fields."""


class InvalidPointError(ValueError):
    """Coordinates do not satisfy the curve equation."""


class BundleNotSymmetricError(ValueError):
    """Operation requires a symmetric (or totally symmetric) bundle."""


class IncompatibleBundlesError(ValueError):
    """Bundle degrees/divisors do not compose for the requested map."""


class DegreeCapError(RuntimeError):
    """Requested graded piece lies beyond the configured degree cap."""


class BudgetError(RuntimeError):
    """Enumeration budget exceeded; caller should switch to sampling."""


class CharacteristicGuardError(ValueError):
    """Field characteristic divides p+1 or p+2 for the requested syzygy index."""


class ConsistencyError(RuntimeError):
    """Internal invariant violated (e.g. a product left its target space)."""


class ConfigError(ValueError):
    """Malformed or semantically invalid run configuration."""
