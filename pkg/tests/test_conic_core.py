import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from poncelet_loci.conic_core import (
    Direction,
    Ellipse,
    chord_from,
    confocal_ellipse,
    ellipse_point,
    ellipse_tangent_dir,
    wrap_angle,
)
from poncelet_loci.errors import DomainError, NearTangencyError, TangencyError

angles = st.floats(-20.0, 20.0, allow_nan=False)
axes = st.tuples(st.floats(0.2, 20.0), st.floats(0.05, 1.0)).map(lambda ab: Ellipse(ab[0], ab[0] * ab[1]))


@pytest.mark.parametrize(
    "E, t, expected",
    [
        (Ellipse(2, 1), 0.0, (2.0, 0.0)),
        (Ellipse(2, 1), math.pi / 2, (0.0, 1.0)),
        (Ellipse(1, 1), math.pi, (-1.0, 0.0)),
    ],
)
def test_ellipse_point(E, t, expected):
    assert ellipse_point(E, t) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize(
    "t, expected",
    [(0.0, (0.0, 1.0)), (math.pi / 2, (-1.0, 0.0)), (math.pi, (0.0, -1.0))],
)
def test_tangent_direction(t, expected):
    assert ellipse_tangent_dir(Ellipse(2, 1), t) == pytest.approx(expected, abs=1e-15)


def test_ellipse_rejects_bad_axes():
    with pytest.raises(DomainError):
        Ellipse(1, 2)
    with pytest.raises(DomainError):
        Ellipse(1, 0)
    with pytest.raises(DomainError):
        Ellipse(math.inf, 1)


def test_confocal_examples():
    E = Ellipse(2, 1)
    assert confocal_ellipse(E, 0.0) == E
    G = confocal_ellipse(E, 0.75)
    assert G.a == pytest.approx(math.sqrt(3.25), abs=1e-15)
    assert G.b == pytest.approx(0.5, abs=1e-15)
    for bad in (1.0, -0.1, 2.0):
        with pytest.raises(DomainError):
            confocal_ellipse(E, bad)


def test_confocal_exact_focal_distance():
    # 25 - 9 = 16 exactly, and 20.0 - 4.0 as well
    G = confocal_ellipse(Ellipse(5, 3), 5.0)
    assert G.a ** 2 - G.b ** 2 == pytest.approx(16.0, abs=1e-14)


@given(axes, st.floats(0.0, 0.999))
def test_confocal_preserves_focal_distance(E, frac):
    G = confocal_ellipse(E, frac * E.b ** 2)
    assert abs((G.a ** 2 - G.b ** 2) - (E.a ** 2 - E.b ** 2)) <= 1e-14 * max(1.0, E.a ** 2)


@pytest.mark.parametrize(
    "E, t, d, expected",
    [
        (Ellipse(1, 1), 0.0, Direction(-1.0, 0.0), math.pi),
        (Ellipse(1, 1), 0.0, Direction(-math.sqrt(2) / 2, math.sqrt(2) / 2), math.pi / 2),
    ],
)
def test_chord_examples(E, t, d, expected):
    assert chord_from(E, t, d) == pytest.approx(expected, abs=1e-12)


def test_chord_tangent_raises():
    with pytest.raises(TangencyError):
        chord_from(Ellipse(2, 1), 0.0, Direction(0.0, 1.0))


def test_chord_nearly_tangent_raises():
    E = Ellipse(2, 1)
    d = ellipse_tangent_dir(E, 0.7)
    eps = 1e-13
    nearly = Direction.normalized(d.dx - eps * d.dy, d.dy + eps * d.dx)
    with pytest.raises(NearTangencyError):
        chord_from(E, 0.7, nearly)


@given(angles)
def test_points_on_ellipse(t):
    E = Ellipse(3.0, 1.3)
    assert abs(E.implicit(ellipse_point(E, t))) <= 1e-14


@given(axes, angles, st.floats(0.05, math.pi - 0.05))
def test_chord_lands_on_ellipse_and_reverses(E, t, turn):
    # direction rotated inward from the tangent by `turn`
    tan = ellipse_tangent_dir(E, t)
    d = Direction.normalized(
        math.cos(turn) * tan.dx - math.sin(turn) * tan.dy,
        math.sin(turn) * tan.dx + math.cos(turn) * tan.dy,
    )
    t2 = chord_from(E, t, d)
    assert abs(E.implicit(ellipse_point(E, t2))) <= 1e-12
    p, q = ellipse_point(E, t), ellipse_point(E, t2)
    back = Direction.normalized(p[0] - q[0], p[1] - q[1])
    assert abs(wrap_angle(chord_from(E, t2, back) - t)) <= 1e-10
    # the arrival direction is the reverse of `back`
    arrival = Direction.normalized(q[0] - p[0], q[1] - p[1])
    assert arrival == pytest.approx(tuple(d), abs=1e-9)


def test_wrap_angle():
    assert wrap_angle(3 * math.pi) == pytest.approx(math.pi)
    assert wrap_angle(-math.pi) == pytest.approx(math.pi)
    assert wrap_angle(0.5) == 0.5
