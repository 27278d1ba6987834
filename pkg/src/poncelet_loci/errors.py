"""Exception hierarchy shared by the real and exact geometry modules."""


class GeometryError(ValueError):
    """Base class for every domain error raised by this package.

    ``t`` is filled in when the error was raised while sampling a family
    of orbits, so callers can see which boundary parameter failed.
    """

    t = None


class DomainError(GeometryError):
    pass


class TangencyError(GeometryError):
    """Line is tangent to the conic where a transversal chord was expected."""


class NearTangencyError(TangencyError):
    pass


class CausticSolverError(GeometryError):
    pass


class DegeneracyError(GeometryError):
    """Repeated or (nearly) collinear vertices."""


class CircleError(GeometryError):
    """Operation needs a non-circular ellipse."""


class TangentConstructionError(GeometryError):
    pass


class FitArityError(GeometryError):
    pass


class FitAmbiguityError(GeometryError):
    pass


# exact complex projective geometry


class IncidenceError(GeometryError):
    pass


class SingularConicError(GeometryError):
    pass


class IsotropyError(GeometryError):
    pass


class FieldExtensionError(GeometryError):
    """Result needs a square root outside the Gaussian rationals.

    ``polynomial`` holds the coefficients (highest degree first) of the
    polynomial whose roots were required.
    """

    def __init__(self, message, polynomial=()):
        super().__init__(message)
        self.polynomial = tuple(polynomial)
