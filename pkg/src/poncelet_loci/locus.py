"""Loci of triangle centers over the Poncelet family, conic fitting and classification.

The fitting is algebraic: find the unit coefficient vector ``(A, B, C, D, E, F)``
minimizing ``sum (A x^2 + B xy + C y^2 + D x + E y + F)^2`` over the samples,
i.e. the right singular vector of the design matrix for its smallest
singular value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .billiards import CausticResult, find_caustic, poncelet_triangle, symmetric_orbits
from .centers import CenterKind, circumcircle, triangle_center
from .conic_core import TWO_PI, Ellipse, RealPoint
from .errors import CircleError, DomainError, FitAmbiguityError, FitArityError, GeometryError

PARABOLA_BAND = 1e-10
DEGENERATE_DET = 1e-12
AMBIGUITY_RTOL = 1e-12
COLLAPSE_FACTOR = 1e-9
MIN_REPORT_SAMPLES = 64


@dataclass(frozen=True)
class ConicCoeffs:
    """``A x^2 + B xy + C y^2 + D x + E y + F = 0`` with unit coefficient norm."""

    A: float
    B: float
    C: float
    D: float
    E: float
    F: float

    @classmethod
    def normalized(cls, coeffs: Sequence[float]) -> ConicCoeffs:
        v = np.asarray(coeffs, dtype=float)
        norm = np.linalg.norm(v)
        if norm == 0.0:
            raise DomainError("zero coefficient vector is not a conic")
        v = v / norm
        lead = next((c for c in v[:3] if c != 0.0), None)
        if lead is None:
            lead = next(c for c in v if c != 0.0)
        if lead < 0:
            v = -v
        return cls(*(float(c) for c in v))

    def as_array(self) -> np.ndarray:
        return np.array([self.A, self.B, self.C, self.D, self.E, self.F])

    def __call__(self, x, y):
        return self.A * x * x + self.B * x * y + self.C * y * y + self.D * x + self.E * y + self.F

    def matrix(self) -> np.ndarray:
        A, B, C, D, E, F = self.as_array()
        return np.array([[A, B / 2, D / 2], [B / 2, C, E / 2], [D / 2, E / 2, F]])


@dataclass(frozen=True)
class ConicClass:
    kind: str  # "ellipse" | "parabola" | "hyperbola" | "degenerate"
    center: RealPoint | None = None
    axis_angle: float = math.nan
    semi_major: float = math.nan
    semi_minor: float = math.nan


@dataclass(frozen=True)
class LocusReport:
    kind: CenterKind
    ellipse: Ellipse
    caustic: CausticResult
    samples: list[tuple[float, RealPoint]] = field(repr=False)
    fit: ConicCoeffs | None
    conic_class: ConicClass | None
    max_residual: float
    symmetry_defect: float
    foci_line_points: tuple[RealPoint, RealPoint] | None
    collapsed: bool

    @property
    def n(self) -> int:
        return len(self.samples)


def _design_matrix(points) -> np.ndarray:
    p = np.asarray(points, dtype=float).reshape(-1, 2)
    x, y = p[:, 0], p[:, 1]
    return np.column_stack([x * x, x * y, y * y, x, y, np.ones_like(x)])


def fit_conic(points) -> ConicCoeffs:
    """Least-squares algebraic conic through at least five points.

    Raises FitAmbiguityError when more than one coefficient direction fits
    (e.g. collinear or repeated points).
    """
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    if len(pts) < 5:
        raise FitArityError(f"need at least 5 points to fit a conic, got {len(pts)}")
    M = _design_matrix(pts)
    _, s, vt = np.linalg.svd(M, full_matrices=True)
    s = np.concatenate([s, np.zeros(6 - len(s))])
    if s[0] == 0.0 or s[4] <= AMBIGUITY_RTOL * s[0]:
        raise FitAmbiguityError(
            f"conic through these points is not unique (singular values {s.tolist()})"
        )
    return ConicCoeffs.normalized(vt[-1])


def fit_conic_exact(points) -> tuple[Fraction, ...]:
    """Exact conic through five points, by rational elimination.

    Coordinates are converted to Fractions without rounding, so the result
    is the exact conic through the given floating-point points.  Scaled so
    the last pivot-free coefficient is 1.
    """
    pts = [(Fraction(x), Fraction(y)) for x, y in points]
    if len(pts) != 5:
        raise FitArityError(f"exact fit takes exactly 5 points, got {len(pts)}")
    rows = [[x * x, x * y, y * y, x, y, Fraction(1)] for x, y in pts]
    pivots = []
    r = 0
    for col in range(6):
        pr = next((i for i in range(r, 5) if rows[i][col] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(5):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [vi - f * vr for vi, vr in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == 5:
            break
    if r < 5:
        raise FitAmbiguityError("five points do not determine a unique conic")
    free = next(c for c in range(6) if c not in pivots)
    sol = [Fraction(0)] * 6
    sol[free] = Fraction(1)
    for i, col in enumerate(pivots):
        sol[col] = -rows[i][free]
    return tuple(sol)


def classify_conic(c: ConicCoeffs) -> ConicClass:
    M = c.matrix()
    if abs(np.linalg.det(M)) <= DEGENERATE_DET:
        return ConicClass("degenerate")
    A, B, C, D, E, F = c.as_array()
    disc = B * B - 4.0 * A * C
    if abs(disc) <= PARABOLA_BAND:
        return ConicClass("parabola")
    Q = M[:2, :2]
    cx, cy = np.linalg.solve(2.0 * Q, [-D, -E])
    f0 = F + 0.5 * (D * cx + E * cy)  # value at the center
    evals, evecs = np.linalg.eigh(Q)
    if disc < 0:
        ratios = -f0 / evals
        if np.any(ratios <= 0):
            # x^2 + y^2 + 1 = 0: no real points
            return ConicClass("degenerate")
        axes = np.sqrt(ratios)
        major = int(np.argmax(axes))
        kind = "ellipse"
    else:
        axes = np.sqrt(np.abs(f0 / evals))
        # transverse axis: the eigen-direction along which the conic has real points
        major = int(np.argmax(-f0 / evals))
        kind = "hyperbola"
    vx, vy = evecs[:, major]
    angle = math.atan2(vy, vx)
    if angle <= -math.pi / 2:
        angle += math.pi
    elif angle > math.pi / 2:
        angle -= math.pi
    return ConicClass(
        kind,
        RealPoint(float(cx), float(cy)),
        angle,
        float(axes[major]),
        float(axes[1 - major]),
    )


def x_axis_intersections(c: ConicCoeffs) -> tuple[float, ...]:
    """Real roots of ``A x^2 + D x + F = 0``, ascending."""
    if c.A == 0.0:
        return () if c.D == 0.0 else (-c.F / c.D,)
    disc = c.D * c.D - 4.0 * c.A * c.F
    if disc < 0:
        return ()
    sq = math.sqrt(disc)
    q = -0.5 * (c.D + math.copysign(sq, c.D))
    roots = [q / c.A] + ([c.F / q] if q != 0.0 else [])
    return tuple(sorted(roots))


def sample_locus(
    E: Ellipse,
    kind: CenterKind | str,
    n: int,
    caustic: CausticResult | None = None,
) -> list[tuple[float, RealPoint]]:
    """Centers of the orbits starting at ``t_k = 2 pi k / n``."""
    kind = CenterKind(kind)
    if n < 5:
        raise FitArityError(f"need n >= 5 samples, got {n}")
    if caustic is None:
        caustic = find_caustic(E)
    out = []
    for k in range(n):
        t = TWO_PI * k / n
        try:
            o = poncelet_triangle(E, caustic.caustic, t)
            out.append((t, triangle_center(kind, *o.vertices)))
        except GeometryError as exc:
            exc.t = t
            exc.args = (f"{exc.args[0] if exc.args else exc} (at t={t!r})",) + exc.args[1:]
            raise
    return out


def _diameter(pts: np.ndarray) -> float:
    diff = pts[:, None, :] - pts[None, :, :]
    return float(np.sqrt(np.max(np.einsum("ijk,ijk->ij", diff, diff))))


def locus_report(
    E: Ellipse,
    kind: CenterKind | str,
    n: int = 720,
    caustic: CausticResult | None = None,
    min_samples: int = MIN_REPORT_SAMPLES,
) -> LocusReport:
    kind = CenterKind(kind)
    if n < min_samples:
        raise DomainError(f"locus report needs n >= {min_samples}, got {n}")
    if caustic is None:
        caustic = find_caustic(E)
    samples = sample_locus(E, kind, n, caustic)
    pts = np.array([p for _, p in samples])

    if _diameter(pts) <= COLLAPSE_FACTOR * E.a:
        return LocusReport(kind, E, caustic, samples, None, None, 0.0, 0.0, None, True)

    fit = fit_conic(pts)
    residual = float(np.max(np.abs(fit(pts[:, 0], pts[:, 1]))))
    symmetry = max(abs(fit.B), abs(fit.D), abs(fit.E))
    foci_line = None
    if kind is CenterKind.CIRCUMCENTER and not E.is_circle:
        o1, o2 = symmetric_orbits(E, caustic.caustic)
        foci_line = (circumcircle(*o1.vertices).center, circumcircle(*o2.vertices).center)
    return LocusReport(
        kind, E, caustic, samples, fit, classify_conic(fit), residual, symmetry, foci_line, False
    )


def circumcircle_at(E: Ellipse, caustic: Ellipse, t: float):
    return circumcircle(*poncelet_triangle(E, caustic, t).vertices)


def derivative_checks(
    E: Ellipse,
    h: float = 1e-4,
    caustic: CausticResult | None = None,
    richardson: bool = False,
) -> tuple[float, RealPoint]:
    """Central differences of circumradius and circumcenter at t = 0.

    At ``t = 0`` the orbit has its vertex at ``(a, 0)`` and is symmetric in
    the x-axis, so the radius should be stationary and the center should move
    perpendicular to the x-axis at nonzero speed.
    """
    if E.is_circle:
        raise CircleError("derivative checks need a non-circular ellipse")
    if not 0 < h < 1e-2:
        raise DomainError(f"step must lie in (0, 1e-2), got {h}")
    if caustic is None:
        caustic = find_caustic(E)
    g = caustic.caustic

    def central(step):
        plus, minus = circumcircle_at(E, g, step), circumcircle_at(E, g, -step)
        r = (plus.radius - minus.radius) / (2 * step)
        cx = (plus.center.x - minus.center.x) / (2 * step)
        cy = (plus.center.y - minus.center.y) / (2 * step)
        return np.array([r, cx, cy])

    d = central(h)
    if richardson:
        d = (4.0 * central(h / 2) - d) / 3.0
    return float(d[0]), RealPoint(float(d[1]), float(d[2]))
