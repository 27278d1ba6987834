"""Real-plane primitives: the billiard ellipse, its confocal family and chords.

The ellipse is always axis-aligned and centered at the origin, with the
foci on the x-axis.  Boundary points are addressed by the eccentric angle
``t``, so ``P(t) = (a cos t, b sin t)`` and ``P(-t)`` is the mirror image
of ``P(t)`` in the x-axis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import DomainError, NearTangencyError, TangencyError

TWO_PI = 2.0 * math.pi

# relative root separation below which a chord is treated as tangent
NEAR_TANGENT_SEPARATION = 1e-10


class RealPoint(NamedTuple):
    x: float
    y: float


class Direction(NamedTuple):
    dx: float
    dy: float

    @classmethod
    def normalized(cls, dx: float, dy: float) -> Direction:
        norm = math.hypot(dx, dy)
        if norm == 0.0:
            raise DomainError("zero vector has no direction")
        return cls(dx / norm, dy / norm)

    def __neg__(self) -> Direction:
        return Direction(-self.dx, -self.dy)


@dataclass(frozen=True)
class Ellipse:
    """Ellipse ``x^2/a^2 + y^2/b^2 = 1`` with ``a >= b > 0``."""

    a: float
    b: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise DomainError(f"semi-axes must be finite, got a={self.a}, b={self.b}")
        if not self.b > 0:
            raise DomainError(f"semi-minor axis must be positive, got b={self.b}")
        if self.a < self.b:
            raise DomainError(f"need a >= b, got a={self.a}, b={self.b}")

    @property
    def c(self) -> float:
        """Linear eccentricity (distance from center to a focus)."""
        return math.sqrt(self.a * self.a - self.b * self.b)

    @property
    def is_circle(self) -> bool:
        return self.a == self.b

    def implicit(self, p) -> float:
        x, y = p
        return (x / self.a) ** 2 + (y / self.b) ** 2 - 1.0

    def parameter_of(self, p) -> float:
        """Eccentric angle of a point on (or near) the ellipse, in [0, 2*pi)."""
        x, y = p
        return math.atan2(y / self.b, x / self.a) % TWO_PI


def wrap_angle(theta: float) -> float:
    """Map an angle to (-pi, pi]."""
    theta = math.fmod(theta, TWO_PI)
    if theta > math.pi:
        theta -= TWO_PI
    elif theta <= -math.pi:
        theta += TWO_PI
    return theta


def ellipse_point(E: Ellipse, t: float) -> RealPoint:
    return RealPoint(E.a * math.cos(t), E.b * math.sin(t))


def ellipse_tangent_dir(E: Ellipse, t: float) -> Direction:
    """Counterclockwise unit tangent at ``P(t)``."""
    return Direction.normalized(-E.a * math.sin(t), E.b * math.cos(t))


def confocal_ellipse(E: Ellipse, lam: float) -> Ellipse:
    """Interior confocal ellipse with semi-axes ``sqrt(a^2 - lam), sqrt(b^2 - lam)``.

    Raises DomainError unless ``0 <= lam < b^2``.
    """
    b2 = E.b * E.b
    if not (0.0 <= lam < b2):
        raise DomainError(f"confocal parameter must lie in [0, {b2}), got {lam}")
    if lam == 0.0:
        return E
    return Ellipse(math.sqrt(E.a * E.a - lam), math.sqrt(b2 - lam))


def chord_from(E: Ellipse, t: float, d: Direction) -> float:
    """Parameter of the second intersection of the line ``P(t) + s*d`` with E.

    Substituting the line into the implicit equation gives
    ``alpha s^2 + beta s + gamma = 0`` with ``gamma ~ 0``; the root of larger
    magnitude is the far endpoint of the chord.
    """
    px, py = ellipse_point(E, t)
    a2, b2 = E.a * E.a, E.b * E.b
    alpha = d.dx * d.dx / a2 + d.dy * d.dy / b2
    beta = 2.0 * (px * d.dx / a2 + py * d.dy / b2)
    gamma = px * px / a2 + py * py / b2 - 1.0
    if beta == 0.0 and gamma == 0.0:
        raise TangencyError(f"direction {tuple(d)} is tangent to the ellipse at t={t}")
    disc = max(beta * beta - 4.0 * alpha * gamma, 0.0)
    sq = math.sqrt(disc)
    # root separation |s1 - s2| = sq / alpha, compared on the scale of the ellipse
    if sq / alpha <= NEAR_TANGENT_SEPARATION * E.a:
        raise NearTangencyError(
            f"chord at t={t} along {tuple(d)} is numerically tangent "
            f"(root separation {sq / alpha:.3e})"
        )
    q = -0.5 * (beta + math.copysign(sq, beta))
    s1, s2 = q / alpha, gamma / q
    s = s1 if abs(s1) >= abs(s2) else s2
    return E.parameter_of((px + s * d.dx, py + s * d.dy))
