"""Independent constructions of 3-periodic orbits, for cross-checking only.

These never touch the caustic: they impose the equal-angle law at the
vertices directly and root-find on the boundary parameters.  The caustic
parameter is then read off a side of the resulting triangle.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import optimize

from .billiards import reflection_defects
from .conic_core import Ellipse, ellipse_point
from .errors import CausticSolverError


def _shoot(E, t1, guess):
    def residual(x):
        return reflection_defects(E, (t1, x[0], x[1]))[1:]

    sol = optimize.root(residual, np.asarray(guess, dtype=float), method="hybr", options={"xtol": 1e-15})
    ts = (t1, float(sol.x[0]), float(sol.x[1]))
    if max(abs(d) for d in reflection_defects(E, ts)) > 1e-10:
        raise CausticSolverError(f"shooting did not converge at t1={t1}: {sol.message}")
    return ts


def shooting_orbit(E: Ellipse, t1: float = 0.0, guess=None, step: float = 0.05) -> tuple[float, float, float]:
    """Solve the reflection law at the 2nd and 3rd vertex for ``(t2, t3)``, with t1 fixed.

    Without a guess, starts from the symmetric orbit through ``(a, 0)`` and
    continues in t1 with steps of at most ``step``.
    """
    if guess is not None:
        return _shoot(E, t1, guess)
    ts = _shoot(E, 0.0, (2 * math.pi / 3, 4 * math.pi / 3))
    k = math.ceil(abs(t1) / step)
    for j in range(1, k + 1):
        s = t1 * j / k
        shift = s - ts[0]
        ts = _shoot(E, s, (ts[1] + shift, ts[2] + shift))
    return ts


def side_lambda(E: Ellipse, p, q) -> float:
    """Confocal parameter of the caustic touched by the line through p and q.

    The line ``u x + v y = w`` (unit normal) touches the confocal ellipse with
    squared semi-axes ``a^2 - lam, b^2 - lam`` iff
    ``lam = a^2 u^2 + b^2 v^2 - w^2``.
    """
    nx, ny = -(q[1] - p[1]), q[0] - p[0]
    norm = math.hypot(nx, ny)
    nx, ny = nx / norm, ny / norm
    w = nx * p[0] + ny * p[1]
    return E.a ** 2 * nx * nx + E.b ** 2 * ny * ny - w * w


def shooting_lambda(E: Ellipse) -> float:
    """Caustic parameter from the shooting orbit through ``(a, 0)``.

    Uses the side opposite ``(a, 0)``; it is vertical, so ``lam = a^2 - x0^2``
    without cancellation in the normal.
    """
    ts = shooting_orbit(E, 0.0)
    p, q = ellipse_point(E, ts[1]), ellipse_point(E, ts[2])
    return side_lambda(E, p, q)


def symmetric_vertex(E: Ellipse) -> tuple[float, float]:
    """Mirror-pair vertex ``(x0, y0)``, ``y0 > 0``, of the orbit through ``(a, 0)``.

    One unknown: the orbit is ``P(0), P(s), P(-s)``; the equal-angle law at
    ``P(s)`` is solved for ``s`` in ``(pi/2, pi)``.
    """

    def defect(s):
        return reflection_defects(E, (0.0, s, -s))[1]

    s = optimize.brentq(defect, math.pi / 2 + 1e-9, math.pi - 1e-9, xtol=1e-16, rtol=1e-15)
    return ellipse_point(E, s)
