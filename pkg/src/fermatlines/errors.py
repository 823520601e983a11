"""Domain errors shared across modules."""


class DimensionMismatch(ValueError):
    """Ambient dimensions of two objects disagree."""


class InfeasibleSystem(Exception):
    """A linear constraint system has no solution (e.g. asking a family
    member to pass through a coordinate point)."""


class CoordinatePointError(ValueError):
    """A point of the form (0,...,1,...,0) was given where the statement
    explicitly excludes them."""


class LineInHypersurface(Exception):
    """The restriction of the defining polynomial to the line vanishes, so
    quantities defined modulo it make no sense."""


class NonGenericScheme(Exception):
    """A length-2 scheme fails the genericity required by the operation."""


class NotInTangencyStratum(ValueError):
    """The restricted polynomial is not a two-root monomial of the expected
    multiplicity, so the tangency deformation count does not apply."""
