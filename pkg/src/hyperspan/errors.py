"""Exception types shared across the package."""


class HyperspanError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(HyperspanError, ValueError):
    """A vertex, coordinate set or sub-vertex does not fit the ambient dimension."""


class ParameterError(HyperspanError, ValueError):
    """A construction was asked for with parameters it cannot honour."""


class ConstraintViolation(ParameterError):
    """Additive-spanner parameters break one or more structural inequalities.

    ``violations`` holds one human-readable line per failed inequality.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class CapacityError(HyperspanError, RuntimeError):
    """A request would exceed the configured materialization or BFS budget."""


class SymmetryError(HyperspanError, RuntimeError):
    """A neighbor oracle produced an asymmetric edge relation."""
