import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from poncelet_loci.billiards import CausticResult, find_caustic
from poncelet_loci.conic_core import Ellipse
from poncelet_loci.errors import (
    CircleError,
    DomainError,
    FitAmbiguityError,
    FitArityError,
    GeometryError,
)
from poncelet_loci.locus import (
    circumcircle_at,
    ConicCoeffs,
    classify_conic,
    derivative_checks,
    fit_conic,
    fit_conic_exact,
    locus_report,
    sample_locus,
    x_axis_intersections,
)


def proportional(c, expected, tol=1e-12):
    e = ConicCoeffs.normalized(expected).as_array()
    return np.allclose(c.as_array(), e, atol=tol)


@pytest.fixture(scope="module")
def report21(E21, caustic21):
    return locus_report(E21, "circumcenter", 720, caustic21)


def test_circle_circumcenters_collapse():
    pts = sample_locus(Ellipse(1, 1), "circumcenter", 12)
    assert len(pts) == 12
    for _, p in pts:
        assert math.hypot(*p) <= 1e-9


def test_E21_circumcenter_samples(E21, caustic21, report21):
    samples = sample_locus(E21, "circumcenter", 720, caustic21)
    assert len(samples) == 720
    assert [t for t, _ in samples] == pytest.approx([2 * math.pi * k / 720 for k in range(720)])
    cls = report21.conic_class
    # the locus is elongated along y here, so |x| is bounded by the minor semi-axis
    for _, p in samples:
        assert abs(p.x) <= cls.semi_minor + 1e-9
        assert abs(p.y) <= cls.semi_major + 1e-9
    pts = [p for _, p in samples]
    for k in range(1, 720):
        # t -> -t mirrors across the x-axis, t -> pi - t across the y-axis, t -> t + pi through 0
        mirror = pts[720 - k]
        assert (pts[k].x, -pts[k].y) == pytest.approx(tuple(mirror), abs=1e-9)
    for k in range(720):
        across = pts[(360 - k) % 720]
        assert (-pts[k].x, pts[k].y) == pytest.approx(tuple(across), abs=1e-9)
        opposite = pts[(k + 360) % 720]
        assert (-pts[k].x, -pts[k].y) == pytest.approx(tuple(opposite), abs=1e-9)


def test_E21_centroids_inside(E21, caustic21):
    for _, p in sample_locus(E21, "centroid", 720, caustic21):
        assert E21.implicit(p) < 0


def test_sample_locus_needs_five():
    with pytest.raises(FitArityError):
        sample_locus(Ellipse(2, 1), "circumcenter", 4)


def test_sample_error_carries_t(E21):
    # a "caustic" equal to the table itself has no tangents from the boundary
    bogus = CausticResult(0.0, E21, (0.0, 0.0), 0.0)
    with pytest.raises(GeometryError) as info:
        sample_locus(E21, "circumcenter", 8, bogus)
    assert info.value.t == 0.0
    assert "t=0.0" in str(info.value)


def test_fit_unit_circle():
    pts = [(math.cos(s), math.sin(s)) for s in (0.1, 1.0, 2.3, 3.9, 5.0)]
    assert proportional(fit_conic(pts), (1, 0, 1, 0, 0, -1))


def test_fit_eight_points_on_ellipse():
    pts = np.array([(2 * math.cos(s), math.sin(s)) for s in np.linspace(0, 6, 8)])
    c = fit_conic(pts)
    assert proportional(c, (0.25, 0, 1, 0, 0, -1))
    assert np.max(np.abs(c(pts[:, 0], pts[:, 1]))) <= 1e-12


def test_fit_arity():
    with pytest.raises(FitArityError):
        fit_conic([(0, 0), (1, 0), (0, 1), (1, 1)])


@pytest.mark.parametrize(
    "pts",
    [
        [(float(k), 2.0 * k) for k in range(8)],
        [(1.0, 1.0)] * 6,
    ],
)
def test_fit_ambiguous(pts):
    with pytest.raises(FitAmbiguityError):
        fit_conic(pts)


def test_five_point_fit_is_interpolating():
    rng = np.random.default_rng(3)
    for _ in range(20):
        pts = rng.uniform(-3, 3, size=(5, 2))
        c = fit_conic(pts)
        assert np.max(np.abs(c(pts[:, 0], pts[:, 1]))) <= 1e-12


def test_exact_fit():
    pts = [(1, 0), (0, 1), (-1, 0), (0, -1), (Fraction(3, 5), Fraction(4, 5))]
    sol = fit_conic_exact(pts)
    assert sol == (-1, 0, -1, 0, 0, 1)
    with pytest.raises(FitArityError):
        fit_conic_exact(pts[:4])
    with pytest.raises(FitAmbiguityError):
        fit_conic_exact([(k, k) for k in range(5)])


def test_exact_fit_matches_least_squares():
    pts = [(3, 0), (0, 2), (Fraction(9, 5), Fraction(8, 5)), (-3, 0), (Fraction(-9, 5), Fraction(-8, 5))]
    exact = np.array([float(v) for v in fit_conic_exact(pts)])
    ls = fit_conic([(float(x), float(y)) for x, y in pts])
    assert proportional(ls, exact, tol=1e-10)


@pytest.mark.parametrize(
    "coeffs, kind",
    [
        ((1, 0, -1, 0, 0, -1), "hyperbola"),
        ((1, 0, 0, 0, -1, 0), "parabola"),
        ((1, 0, 1, 0, 0, 1), "degenerate"),  # no real points
        ((1, 0, -1, 0, 0, 0), "degenerate"),  # line pair
        ((1, 0, 0, 0, 0, -1), "degenerate"),  # parallel lines x = +-1
    ],
)
def test_classify_kinds(coeffs, kind):
    assert classify_conic(ConicCoeffs.normalized(coeffs)).kind == kind


def test_classify_unit_circle():
    s3 = math.sqrt(3)
    cls = classify_conic(ConicCoeffs(1 / s3, 0, 1 / s3, 0, 0, -1 / s3))
    assert cls.kind == "ellipse"
    assert cls.center == pytest.approx((0, 0), abs=1e-15)
    assert (cls.semi_major, cls.semi_minor) == pytest.approx((1, 1))


@settings(max_examples=60, deadline=None)
@given(
    st.floats(0.5, 3),
    st.floats(0.2, 1),
    st.floats(-1.5, 1.5),
    st.floats(-2, 2),
    st.floats(-2, 2),
)
def test_classify_moved_ellipse(a, ratio, theta, cx, cy):
    b = a * ratio
    if a - b < 1e-3:
        return
    s = np.linspace(0, 2 * math.pi, 40, endpoint=False)
    x, y = a * np.cos(s), b * np.sin(s)
    c, sn = math.cos(theta), math.sin(theta)
    pts = np.column_stack([c * x - sn * y + cx, sn * x + c * y + cy])
    cls = classify_conic(fit_conic(pts))
    assert cls.kind == "ellipse"
    assert cls.center == pytest.approx((cx, cy), abs=1e-8)
    assert cls.semi_major == pytest.approx(a, rel=1e-8)
    assert cls.semi_minor == pytest.approx(b, rel=1e-8)
    d = (cls.axis_angle - theta) % math.pi
    assert min(d, math.pi - d) <= 1e-7


def test_x_axis_intersections():
    assert x_axis_intersections(ConicCoeffs.normalized((0.25, 0, 1, 0, 0, -1))) == pytest.approx((-2, 2))
    assert x_axis_intersections(ConicCoeffs.normalized((1, 0, 1, 0, 0, 1))) == ()


def test_report_E21(report21):
    assert report21.n == 720
    assert not report21.collapsed
    assert report21.conic_class.kind == "ellipse"
    assert report21.max_residual <= 1e-8
    assert report21.symmetry_defect <= 1e-8
    # vertical major axis
    assert abs(abs(report21.conic_class.axis_angle) - math.pi / 2) <= 1e-9


def test_report_foci_line_points(report21):
    p1, p2 = report21.foci_line_points
    assert abs(p1.y) <= 1e-9 and abs(p2.y) <= 1e-9
    assert sorted([p1.x, p2.x]) == pytest.approx(x_axis_intersections(report21.fit), abs=1e-6)
    assert abs(p1.x - p2.x) >= 1e-6


def test_report_bounded(E21, report21):
    for _, p in report21.samples:
        assert math.hypot(*p) <= 2 * E21.a


def test_report_centroid_ratio(E21, caustic21):
    rep = locus_report(E21, "centroid", 720, caustic21)
    cls = rep.conic_class
    assert cls.kind == "ellipse"
    assert cls.semi_minor / cls.semi_major == pytest.approx(0.5, abs=1e-6)


@pytest.mark.parametrize("kind", ["incenter", "orthocenter"])
def test_report_companion_ellipses(E21, caustic21, kind):
    rep = locus_report(E21, kind, 720, caustic21)
    assert rep.conic_class.kind == "ellipse"
    assert rep.max_residual <= 1e-8
    assert rep.foci_line_points is None


def test_report_circle_collapses():
    rep = locus_report(Ellipse(1, 1), "circumcenter", 720)
    assert rep.collapsed
    assert rep.fit is None and rep.conic_class is None


def test_report_needs_enough_samples():
    with pytest.raises(DomainError):
        locus_report(Ellipse(2, 1), "circumcenter", 32)


def test_derivative_checks(E21, caustic21):
    radius = circumcircle_at(E21, caustic21.caustic, 0.0).radius
    for richardson in (False, True):
        r_prime, c_prime = derivative_checks(E21, 1e-4, caustic21, richardson=richardson)
        speed = math.hypot(*c_prime)
        assert abs(r_prime) <= 1e-6 * radius
        assert abs(c_prime.x) <= 1e-6 * speed
        assert speed >= 1e-6


def test_derivative_checks_errors():
    with pytest.raises(CircleError):
        derivative_checks(Ellipse(1, 1))
    with pytest.raises(DomainError):
        derivative_checks(Ellipse(2, 1), h=0.1)
