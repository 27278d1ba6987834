"""Billiard map in the ellipse and the Poncelet family of 3-periodic orbits.

Every triangular orbit is tangent to one interior confocal ellipse, the
caustic.  ``find_caustic`` locates it once by bisection on the angular
advance of three successive tangent chords; after that each orbit is built
in closed form by ``poncelet_triangle``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .conic_core import (
    TWO_PI,
    Direction,
    Ellipse,
    RealPoint,
    chord_from,
    confocal_ellipse,
    ellipse_point,
    ellipse_tangent_dir,
    wrap_angle,
)
from .errors import (
    CausticSolverError,
    CircleError,
    DegeneracyError,
    TangentConstructionError,
)

BRACKET_GRID = 64
BISECTION_RTOL = 1e-14
DEFAULT_CAUSTIC_TOL = 1e-10
MIN_AREA_FACTOR = 1e-10
MIN_SEPARATION_FACTOR = 1e-9


@dataclass(frozen=True)
class Orbit:
    t1: float
    t2: float
    t3: float
    v1: RealPoint
    v2: RealPoint
    v3: RealPoint
    closure_residual: float = 0.0

    @property
    def ts(self) -> tuple[float, float, float]:
        return (self.t1, self.t2, self.t3)

    @property
    def vertices(self) -> tuple[RealPoint, RealPoint, RealPoint]:
        return (self.v1, self.v2, self.v3)

    @classmethod
    def from_parameters(cls, E: Ellipse, ts, closure_residual: float = 0.0) -> Orbit:
        t1, t2, t3 = ts
        return cls(
            t1, t2, t3,
            ellipse_point(E, t1), ellipse_point(E, t2), ellipse_point(E, t3),
            closure_residual,
        )


@dataclass(frozen=True)
class CausticResult:
    lambda_star: float
    caustic: Ellipse
    bracket: tuple[float, float]
    residual_at_solution: float


def reflect_direction(d: Direction, tangent: Direction) -> Direction:
    """Mirror ``d`` across the line spanned by ``tangent``."""
    k = 2.0 * (d.dx * tangent.dx + d.dy * tangent.dy)
    return Direction.normalized(k * tangent.dx - d.dx, k * tangent.dy - d.dy)


def billiard_step(E: Ellipse, t: float, d: Direction) -> tuple[float, Direction]:
    """Fly from ``P(t)`` along ``d``; return the next impact and the reflected direction."""
    t_next = chord_from(E, t, d)
    return t_next, reflect_direction(d, ellipse_tangent_dir(E, t_next))


def tangent_chord(E: Ellipse, caustic: Ellipse, t: float) -> float:
    """Next boundary parameter along the counterclockwise tangent from P(t) to the caustic.

    The tangent points ``Q(s)`` on the caustic seen from ``P`` satisfy
    ``cos(s - phi) = 1/R`` in the caustic's eccentric angle; of the two, the
    chord keeping the origin on its left advances ``t`` counterclockwise.
    """
    px, py = ellipse_point(E, t)
    ga, gb = caustic.a, caustic.b
    u, v = px / ga, py / gb
    R = math.hypot(u, v)
    if not R > 1.0:
        raise TangentConstructionError(
            f"P({t}) = ({px}, {py}) is not outside the caustic (R = {R})"
        )
    phi = math.atan2(v, u)
    delta = math.acos(1.0 / R)
    for s in (phi + delta, phi - delta):
        qx, qy = ga * math.cos(s), gb * math.sin(s)
        dx, dy = qx - px, qy - py
        # origin on the left of P -> Q
        if dx * (-py) - dy * (-px) > 0.0:
            return chord_from(E, t, Direction.normalized(dx, dy))
    raise TangentConstructionError(f"no counterclockwise tangent from P({t})")


def _advance(t_from: float, t_to: float) -> float:
    return (t_to - t_from) % TWO_PI


def _defect_around(E: Ellipse, caustic: Ellipse) -> float:
    t, total = 0.0, 0.0
    for _ in range(3):
        t_next = tangent_chord(E, caustic, t)
        total += _advance(t, t_next)
        t = t_next
    return total - TWO_PI


def rotation_defect(E: Ellipse, lam: float) -> float:
    """Total advance of three tangent chords from t=0 around the caustic, minus 2*pi.

    Increases monotonically from -2*pi (lam -> 0) towards +pi (lam -> b^2).
    """
    return _defect_around(E, confocal_ellipse(E, lam))


def _caustic_from_gap(E: Ellipse, gap: float) -> Ellipse:
    # gap = b^2 - lam; keeps the semi-minor axis accurate when lam ~ b^2
    c2 = (E.a - E.b) * (E.a + E.b)
    return Ellipse(math.sqrt(c2 + gap), math.sqrt(gap))


def _bracket_grid(b2: float):
    """Uniform interior grid of (0, b2), then points piling up geometrically at b2.

    Very eccentric tables have their caustic squeezed against the focal
    segment, i.e. lambda* within ~b^2/a^2 of b^2, beyond the uniform grid.
    Yields gaps ``b2 - lam``.
    """
    n = BRACKET_GRID + 1
    for k in range(1, n):
        yield b2 * (n - k) / n
    for j in range(7, 1075):
        gap = b2 * 2.0 ** -j
        if gap < b2 / n:
            yield gap
        if gap == 0.0:
            break


def find_caustic(E: Ellipse, tol: float = DEFAULT_CAUSTIC_TOL) -> CausticResult:
    """Solve for the confocal caustic of the triangular orbits.

    Scans ``BRACKET_GRID`` interior points of ``(0, b^2)`` (extended towards
    ``b^2`` when needed) for a sign change of ``rotation_defect``, then
    bisects until the bracket is narrower than ``1e-14 * b^2`` and cannot be
    split further in floating point.  The search runs on the gap
    ``b^2 - lambda`` so the caustic's semi-minor axis keeps full relative
    precision for very eccentric tables.
    """
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol}")
    b2 = E.b * E.b
    # defect decreases as the gap grows
    g_big = g_small = None
    big = small = None
    prev = g_prev = None
    for gap in _bracket_grid(b2):
        if gap <= 0.0:
            break
        g = _defect_around(E, _caustic_from_gap(E, gap))
        if g == 0.0:
            return CausticResult(b2 - gap, _caustic_from_gap(E, gap), (b2 - gap, b2 - gap), 0.0)
        if g_prev is not None and g_prev < 0.0 < g:
            big, g_big, small, g_small = prev, g_prev, gap, g
            break
        prev, g_prev = gap, g
    if big is None:
        raise CausticSolverError(f"no sign change of the rotation defect on (0, {b2}) for {E}")

    while True:
        mid = 0.5 * (small + big)
        if not small < mid < big:
            break
        if big - small <= BISECTION_RTOL * b2 and (big - small) <= 4.0 * math.ulp(mid):
            break
        g_mid = _defect_around(E, _caustic_from_gap(E, mid))
        if g_mid == 0.0:
            small = big = mid
            g_small = g_big = 0.0
            break
        if g_mid < 0.0:
            big, g_big = mid, g_mid
        else:
            small, g_small = mid, g_mid
    gap, residual = (big, g_big) if abs(g_big) <= abs(g_small) else (small, g_small)
    if abs(residual) > tol:
        raise CausticSolverError(
            f"bisection stalled at lambda={b2 - gap} with |defect| = {abs(residual):.3e} > {tol}"
        )
    return CausticResult(b2 - gap, _caustic_from_gap(E, gap), (b2 - big, b2 - small), abs(residual))


def _check_nondegenerate(E: Ellipse, vertices) -> None:
    (x1, y1), (x2, y2), (x3, y3) = vertices
    for (px, py), (qx, qy) in (((x1, y1), (x2, y2)), ((x2, y2), (x3, y3)), ((x3, y3), (x1, y1))):
        if math.hypot(qx - px, qy - py) <= MIN_SEPARATION_FACTOR * E.a:
            raise DegeneracyError(f"repeated vertex in orbit {vertices}")
    area = 0.5 * abs((x2 - x1) * (y3 - y1) - (y2 - y1) * (x3 - x1))
    if area < MIN_AREA_FACTOR * E.a * E.a:
        raise DegeneracyError(f"orbit triangle is degenerate (area {area:.3e})")


def poncelet_triangle(E: Ellipse, caustic: Ellipse, t: float) -> Orbit:
    """The triangular orbit with first vertex ``P(t)``, traversed counterclockwise."""
    t1 = t % TWO_PI
    t2 = tangent_chord(E, caustic, t1)
    t3 = tangent_chord(E, caustic, t2)
    t4 = tangent_chord(E, caustic, t3)
    orbit = Orbit.from_parameters(E, (t1, t2, t3), abs(wrap_angle(t4 - t1)))
    _check_nondegenerate(E, orbit.vertices)
    return orbit


def reflection_defects(E: Ellipse, ts) -> list[float]:
    """Signed reflection-law defect at each vertex of the closed polygon ``P(ts)``.

    At each vertex, the angle from the incoming direction to the tangent
    minus the angle from the tangent to the outgoing direction.
    """
    pts = [ellipse_point(E, t) for t in ts]
    n = len(pts)
    out = []
    for i in range(n):
        p_prev, p, p_next = pts[i - 1], pts[i], pts[(i + 1) % n]
        tan = ellipse_tangent_dir(E, ts[i])
        din = (p[0] - p_prev[0], p[1] - p_prev[1])
        dout = (p_next[0] - p[0], p_next[1] - p[1])
        theta_in = math.atan2(din[0] * tan.dy - din[1] * tan.dx, din[0] * tan.dx + din[1] * tan.dy)
        theta_out = math.atan2(tan.dx * dout[1] - tan.dy * dout[0], tan.dx * dout[0] + tan.dy * dout[1])
        out.append(wrap_angle(theta_in - theta_out))
    return out


def reflection_residual(E: Ellipse, o: Orbit) -> float:
    """Largest violation of the equal-angle law over the three vertices (radians)."""
    vs = o.vertices
    for i in range(3):
        p, q = vs[i], vs[(i + 1) % 3]
        if math.hypot(q[0] - p[0], q[1] - p[1]) <= MIN_SEPARATION_FACTOR * E.a:
            raise DegeneracyError(f"repeated vertex in orbit {vs}")
    return max(abs(d) for d in reflection_defects(E, o.ts))


def tangency_defect(caustic: Ellipse, p, q) -> float:
    """How far the line through ``p`` and ``q`` is from touching ``caustic``.

    A line ``u x + v y = w`` with unit normal is tangent to the ellipse
    with semi-axes (A, B) iff ``A^2 u^2 + B^2 v^2 = w^2``.
    """
    nx, ny = -(q[1] - p[1]), q[0] - p[0]
    norm = math.hypot(nx, ny)
    if norm == 0.0:
        raise DegeneracyError("tangency defect of a zero-length side")
    nx, ny = nx / norm, ny / norm
    w = nx * p[0] + ny * p[1]
    return abs(caustic.a ** 2 * nx * nx + caustic.b ** 2 * ny * ny - w * w)


def orbit_tangency_defect(caustic: Ellipse, o: Orbit) -> float:
    vs = o.vertices
    return max(tangency_defect(caustic, vs[i], vs[(i + 1) % 3]) for i in range(3))


def symmetric_orbits(E: Ellipse, caustic: Ellipse | None = None) -> tuple[Orbit, Orbit]:
    """The two orbits with a vertex at a major-axis endpoint, (a, 0) and (-a, 0)."""
    if E.is_circle:
        raise CircleError("a circle has no distinguished symmetric orbits")
    if caustic is None:
        caustic = find_caustic(E).caustic
    return poncelet_triangle(E, caustic, 0.0), poncelet_triangle(E, caustic, math.pi)


def same_orbit(o1: Orbit, o2: Orbit, tol: float = 1e-9) -> bool:
    """Equality of vertex cycles up to cyclic permutation and reversal."""
    a = np.array(o1.vertices)
    b = np.array(o2.vertices)
    for cyc in (b, b[::-1]):
        for k in range(3):
            if np.max(np.abs(a - np.roll(cyc, k, axis=0))) <= tol:
                return True
    return False
