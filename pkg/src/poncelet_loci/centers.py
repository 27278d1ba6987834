"""Circumcenter, incenter, centroid and orthocenter of a plane triangle."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .conic_core import RealPoint
from .errors import DegeneracyError

COLLINEAR_FACTOR = 1e-12


class CenterKind(str, enum.Enum):
    CIRCUMCENTER = "circumcenter"
    INCENTER = "incenter"
    CENTROID = "centroid"
    ORTHOCENTER = "orthocenter"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class CircleData:
    center: RealPoint
    radius: float


def _scale2(v1, v2, v3) -> float:
    """Squared diameter of the vertex set."""
    return max(
        (v1[0] - v2[0]) ** 2 + (v1[1] - v2[1]) ** 2,
        (v2[0] - v3[0]) ** 2 + (v2[1] - v3[1]) ** 2,
        (v3[0] - v1[0]) ** 2 + (v3[1] - v1[1]) ** 2,
    )


def _check_triangle(v1, v2, v3) -> None:
    twice_area = (v2[0] - v1[0]) * (v3[1] - v1[1]) - (v2[1] - v1[1]) * (v3[0] - v1[0])
    scale2 = _scale2(v1, v2, v3)
    if not abs(twice_area) > COLLINEAR_FACTOR * scale2 or scale2 == 0.0:
        raise DegeneracyError(f"vertices {v1}, {v2}, {v3} are (nearly) collinear")


def circumcircle(v1, v2, v3) -> CircleData:
    """Circle through three points.

    Solves the two perpendicular-bisector equations
    ``2 (vi - v1) . c = |vi|^2 - |v1|^2`` relative to ``v1``.
    """
    _check_triangle(v1, v2, v3)
    x1, y1 = v1
    m = np.array([[v2[0] - x1, v2[1] - y1], [v3[0] - x1, v3[1] - y1]], dtype=float)
    rhs = 0.5 * np.array([m[0] @ m[0], m[1] @ m[1]])
    # LAPACK gesv: LU with partial pivoting
    cx, cy = np.linalg.solve(m, rhs)
    center = RealPoint(float(cx + x1), float(cy + y1))
    return CircleData(center, math.hypot(cx, cy))


def _line_intersection(p, d, q, e) -> RealPoint:
    # p + s d = q + u e
    m = np.array([[d[0], -e[0]], [d[1], -e[1]]], dtype=float)
    s, _ = np.linalg.solve(m, [q[0] - p[0], q[1] - p[1]])
    return RealPoint(float(p[0] + s * d[0]), float(p[1] + s * d[1]))


def triangle_center(kind: CenterKind | str, v1, v2, v3) -> RealPoint:
    kind = CenterKind(kind)
    _check_triangle(v1, v2, v3)
    if kind is CenterKind.CIRCUMCENTER:
        return circumcircle(v1, v2, v3).center
    if kind is CenterKind.CENTROID:
        return RealPoint((v1[0] + v2[0] + v3[0]) / 3.0, (v1[1] + v2[1] + v3[1]) / 3.0)
    if kind is CenterKind.INCENTER:
        # weight of each vertex is the length of the opposite side
        w1 = math.dist(v2, v3)
        w2 = math.dist(v3, v1)
        w3 = math.dist(v1, v2)
        s = w1 + w2 + w3
        return RealPoint(
            (w1 * v1[0] + w2 * v2[0] + w3 * v3[0]) / s,
            (w1 * v1[1] + w2 * v2[1] + w3 * v3[1]) / s,
        )
    # orthocenter: altitudes from v1 and v2
    alt1 = (-(v3[1] - v2[1]), v3[0] - v2[0])
    alt2 = (-(v1[1] - v3[1]), v1[0] - v3[0])
    return _line_intersection(v1, alt1, v2, alt2)
