"""Exact geometry in the complex projective plane over the Gaussian rationals.

Points and lines are homogeneous triples of :class:`CScalar` (a complex
number with exact rational parts); conics are symmetric 3x3 matrices.
Nothing here rounds: every predicate is decided by exact arithmetic.

The cyclic points ``I = [1:i:0]`` and ``J = [1:-i:0]`` carry the Euclidean
structure: a line is isotropic when it passes through one of them, a
regular conic through both is a circle, and the foci of a conic are where
its tangents through ``I`` meet its tangents through ``J``.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

from .errors import (
    DomainError,
    FieldExtensionError,
    IncidenceError,
    IsotropyError,
    SingularConicError,
)


class CScalar:
    """Gaussian rational ``re + i*im`` with ``re, im`` exact Fractions."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, CScalar):
            re, im = re.re, re.im + Fraction(im)
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def coerce(cls, v) -> CScalar:
        if isinstance(v, CScalar):
            return v
        if isinstance(v, complex):
            return cls(Fraction(v.real), Fraction(v.imag))
        if isinstance(v, (Rational, float, str)):
            return cls(Fraction(v))
        raise TypeError(f"cannot make an exact complex scalar from {v!r}")

    def __add__(self, other):
        o = CScalar.coerce(other)
        return CScalar(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = CScalar.coerce(other)
        return CScalar(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return CScalar.coerce(other) - self

    def __mul__(self, other):
        o = CScalar.coerce(other)
        return CScalar(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = CScalar.coerce(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by exact zero")
        return CScalar((self.re * o.re + self.im * o.im) / n, (self.im * o.re - self.re * o.im) / n)

    def __rtruediv__(self, other):
        return CScalar.coerce(other) / self

    def __neg__(self):
        return CScalar(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        out = CScalar(1)
        for _ in range(k):
            out = out * self
        return out

    def conjugate(self) -> CScalar:
        return CScalar(self.re, -self.im)

    def norm(self) -> Fraction:
        """Squared modulus ``re^2 + im^2``."""
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        try:
            o = CScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        # same rule as complex, so CScalar(4) hashes like 4 and Fraction(4)
        return hash(self.re) + sys.hash_info.imag * hash(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"CScalar({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return _imag_str(self.im)
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{_imag_str(abs(self.im))}"

    def pair(self) -> str:
        """Exact ``(re, im)`` rational pair."""
        return f"({self.re}, {self.im})"


def _imag_str(v: Fraction) -> str:
    if v == 1:
        return "i"
    if v == -1:
        return "-i"
    return f"{v}i"


ZERO = CScalar(0)
ONE = CScalar(1)
I_UNIT = CScalar(0, 1)


def _triple(values) -> tuple[CScalar, CScalar, CScalar]:
    t = tuple(CScalar.coerce(v) for v in values)
    if len(t) != 3:
        raise DomainError(f"homogeneous coordinates need 3 entries, got {len(t)}")
    if all(v.is_zero() for v in t):
        raise DomainError("(0, 0, 0) is not a projective point or line")
    return t


def _canonical(t) -> tuple[CScalar, CScalar, CScalar]:
    lead = next(v for v in t if not v.is_zero())
    return tuple(v / lead for v in t)


class _Homogeneous:
    __slots__ = ("coords",)

    def __init__(self, *coords):
        if len(coords) == 1:
            coords = tuple(coords[0])
        self.coords = _triple(coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def canonical(self):
        """Coordinates scaled so the first nonzero one is 1."""
        return _canonical(self.coords)

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self):
        return hash((type(self).__name__, self.canonical()))

    def __repr__(self):
        return f"{type(self).__name__}({', '.join(str(v) for v in self.canonical())})"


class HPoint(_Homogeneous):
    """Point ``[x:y:z]``."""

    @property
    def is_finite(self) -> bool:
        return not self.coords[2].is_zero()

    def affine(self) -> tuple[CScalar, CScalar]:
        x, y, z = self.coords
        if z.is_zero():
            raise DomainError(f"{self!r} is at infinity")
        return x / z, y / z

    def is_real(self) -> bool:
        return all(v.is_real() for v in self.canonical())

    def conjugate(self) -> HPoint:
        return HPoint(v.conjugate() for v in self.coords)


class HLine(_Homogeneous):
    """Line ``u x + v y + w z = 0``."""

    def contains(self, p: HPoint) -> bool:
        return dot(self.coords, p.coords).is_zero()

    def meet(self, other: HLine) -> HPoint:
        c = cross(self.coords, other.coords)
        if all(v.is_zero() for v in c):
            raise DomainError(f"{self!r} and {other!r} coincide")
        return HPoint(c)


def dot(a, b) -> CScalar:
    """Bilinear pairing (no conjugation)."""
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def cross(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def join(p: HPoint, q: HPoint) -> HLine:
    c = cross(p.coords, q.coords)
    if all(v.is_zero() for v in c):
        raise DomainError(f"{p!r} and {q!r} coincide")
    return HLine(c)


INFINITY_LINE = HLine(0, 0, 1)


class ConicMat:
    """Symmetric 3x3 matrix ``C``; the conic is ``X^T C X = 0``."""

    __slots__ = ("m",)

    def __init__(self, rows: Sequence[Sequence]):
        m = tuple(tuple(CScalar.coerce(v) for v in row) for row in rows)
        if len(m) != 3 or any(len(r) != 3 for r in m):
            raise DomainError("conic matrix must be 3x3")
        for i in range(3):
            for j in range(i + 1, 3):
                if m[i][j] != m[j][i]:
                    raise DomainError("conic matrix must be symmetric")
        if all(v.is_zero() for r in m for v in r):
            raise DomainError("zero matrix is not a conic")
        self.m = m

    @classmethod
    def from_coeffs(cls, A, B, C, D, E, F) -> ConicMat:
        """``A x^2 + B xy + C y^2 + D xz + E yz + F z^2``."""
        A, B, C, D, E, F = (CScalar.coerce(v) for v in (A, B, C, D, E, F))
        h = Fraction(1, 2)
        return cls([[A, B * h, D * h], [B * h, C, E * h], [D * h, E * h, F]])

    @classmethod
    def ellipse(cls, a_sq, b_sq) -> ConicMat:
        """``x^2/a_sq + y^2/b_sq = z^2``, from the squared semi-axes."""
        a_sq, b_sq = Fraction(a_sq), Fraction(b_sq)
        if a_sq <= 0 or b_sq <= 0:
            raise DomainError("squared semi-axes must be positive")
        return cls.from_coeffs(1 / a_sq, 0, 1 / b_sq, 0, 0, -1)

    def __getitem__(self, ij):
        i, j = ij
        return self.m[i][j]

    def __eq__(self, other):
        return isinstance(other, ConicMat) and self.m == other.m

    def __hash__(self):
        return hash(self.m)

    def __repr__(self):
        rows = "; ".join(", ".join(str(v) for v in r) for r in self.m)
        return f"ConicMat([{rows}])"

    def apply(self, p) -> tuple[CScalar, CScalar, CScalar]:
        m = self.m
        return tuple(m[i][0] * p[0] + m[i][1] * p[1] + m[i][2] * p[2] for i in range(3))

    def quad(self, p) -> CScalar:
        return dot(p, self.apply(p))

    def bilinear(self, p, q) -> CScalar:
        return dot(p, self.apply(q))

    def det(self) -> CScalar:
        m = self.m
        return (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )

    def adjugate(self) -> tuple[tuple[CScalar, ...], ...]:
        """Matrix of the dual conic: line ``l`` is tangent iff ``l^T adj(C) l = 0``."""
        m = self.m

        def minor(i, j):
            r = [k for k in range(3) if k != i]
            c = [k for k in range(3) if k != j]
            return m[r[0]][c[0]] * m[r[1]][c[1]] - m[r[0]][c[1]] * m[r[1]][c[0]]

        return tuple(
            tuple(minor(j, i) * (1 if (i + j) % 2 == 0 else -1) for j in range(3)) for i in range(3)
        )

    def is_regular(self) -> bool:
        return not self.det().is_zero()

    def contains(self, p: HPoint) -> bool:
        return self.quad(p.coords).is_zero()


def _require_regular(C: ConicMat) -> None:
    if not C.is_regular():
        raise SingularConicError(f"{C!r} is singular (determinant 0)")


def cyclic_points() -> tuple[HPoint, HPoint]:
    """``I = [1:i:0]`` and ``J = [1:-i:0]``."""
    return HPoint(1, I_UNIT, 0), HPoint(1, -I_UNIT, 0)


def is_isotropic(L: HLine) -> bool:
    I, J = cyclic_points()
    return L.contains(I) or L.contains(J)


def conic_tangent_line(C: ConicMat, P: HPoint) -> HLine:
    """Tangent (polar) line ``C P`` at a point of the conic."""
    _require_regular(C)
    if not C.contains(P):
        raise IncidenceError(f"{P!r} is not on {C!r}")
    return HLine(C.apply(P.coords))


def restriction_discriminant(C: ConicMat, L: HLine) -> CScalar:
    """Discriminant of the binary quadratic obtained by restricting C to L.

    Zero exactly when L is tangent to C (or, for singular C, passes through
    the singular point).  Computed by parametrizing ``L`` by two of its
    points, independently of the dual-conic test.
    """
    p, q = _two_points_on(L)
    a = C.quad(p)
    b = C.bilinear(p, q)
    c = C.quad(q)
    # s^2 a + 2 s t b + t^2 c
    return b * b - a * c


def _two_points_on(L: HLine):
    pts = []
    for axis in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
        c = cross(L.coords, tuple(CScalar(v) for v in axis))
        if not all(v.is_zero() for v in c):
            pts.append(c)
    # any two distinct intersections with the coordinate lines span L
    p = pts[0]
    for q in pts[1:]:
        if not all(v.is_zero() for v in cross(p, q)):
            return p, q
    raise DomainError(f"could not parametrize {L!r}")


def rational_sqrt(v: Fraction) -> Fraction | None:
    if v < 0:
        return None
    n, d = v.numerator, v.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def gaussian_sqrt(z: CScalar) -> CScalar | None:
    """A square root of z inside the Gaussian rationals, or None."""
    if z.is_zero():
        return ZERO
    modulus = rational_sqrt(z.norm())
    if modulus is None:
        return None
    x = rational_sqrt((modulus + z.re) / 2)
    y = rational_sqrt((modulus - z.re) / 2)
    if x is None or y is None:
        return None
    if z.im < 0:
        y = -y
    root = CScalar(x, y)
    return root if root * root == z else None


def _format_poly(coeffs) -> str:
    deg = len(coeffs) - 1
    terms = []
    for k, c in enumerate(coeffs):
        p = deg - k
        if c.is_zero():
            continue
        var = "" if p == 0 else ("k" if p == 1 else f"k^{p}")
        terms.append(f"({c})" + (f"*{var}" if var else ""))
    return " + ".join(terms) + " = 0"


def _tangents_through(C: ConicMat, sign: int) -> list[HLine]:
    """Tangents to C through I (sign=+1) or J (sign=-1), with multiplicity.

    A finite line through the cyclic point is ``x + s*i*y = k z``, i.e.
    ``l = (1, s*i, -k)``.  Tangency ``l^T adj(C) l = 0`` is a quadratic in k.
    """
    adj = C.adjugate()
    si = I_UNIT * sign
    # l = (1, si, 0) + k * (0, 0, -1)
    base = (ONE, si, ZERO)
    step = (ZERO, ZERO, -ONE)

    def form(p, q):
        return sum((p[i] * adj[i][j] * q[j] for i in range(3) for j in range(3)), ZERO)

    alpha = form(step, step)
    beta = form(base, step) + form(step, base)
    gamma = form(base, base)
    lines = []
    if alpha.is_zero():
        # degree drop: the infinity line (k -> infinity) is tangent
        lines.append(INFINITY_LINE)
        if beta.is_zero():
            lines.append(INFINITY_LINE)
            return lines
        roots = [-gamma / beta]
    else:
        disc = beta * beta - 4 * alpha * gamma
        root = gaussian_sqrt(disc)
        if root is None:
            monic = (ONE, beta / alpha, gamma / alpha)
            raise FieldExtensionError(
                f"isotropic tangents through {'I' if sign > 0 else 'J'} need a root of "
                f"{_format_poly(monic)}, which is not in Q(i)",
                monic,
            )
        roots = [(-beta + root) / (2 * alpha), (-beta - root) / (2 * alpha)]
    lines.extend(HLine(ONE, si, -k) for k in roots)
    return lines


def isotropic_tangents(C: ConicMat) -> list[HLine]:
    """The four isotropic tangents (two through I, two through J), with multiplicity."""
    _require_regular(C)
    return _tangents_through(C, +1) + _tangents_through(C, -1)


def foci(C: ConicMat) -> list[HPoint]:
    """Meets of each I-tangent with each J-tangent (four points, with repetition)."""
    lines = isotropic_tangents(C)
    through_i, through_j = lines[:2], lines[2:]
    return [li.meet(lj) for li in through_i for lj in through_j]


def is_circle(C: ConicMat) -> bool:
    _require_regular(C)
    I, J = cyclic_points()
    return C.contains(I) and C.contains(J)


def circle_center(C: ConicMat) -> HPoint:
    """Meet of the tangents at the cyclic points."""
    if not is_circle(C):
        raise DomainError(f"{C!r} is not a circle")
    I, J = cyclic_points()
    return conic_tangent_line(C, I).meet(conic_tangent_line(C, J))


@dataclass(frozen=True)
class Reflection:
    """Projective 3x3 matrix of the isometric involution fixing a line."""

    matrix: tuple[tuple[CScalar, ...], ...]
    axis: HLine

    def __call__(self, p: HPoint) -> HPoint:
        return HPoint(_matvec(self.matrix, p.coords))

    def linear_part(self):
        return tuple(tuple(self.matrix[i][j] for j in range(2)) for i in range(2))

    def apply_line(self, l: HLine) -> HLine:
        # points X on l map to R X; R^-1 = R, so the image line is R^T l
        m = self.matrix
        return HLine(tuple(sum((m[j][i] * l[j] for j in range(3)), ZERO) for i in range(3)))

    def compose(self, other: Reflection):
        return _matmul(self.matrix, other.matrix)


def _matvec(m, v):
    return tuple(sum((m[i][j] * v[j] for j in range(3)), ZERO) for i in range(3))


def _matmul(a, b):
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(3)), ZERO) for j in range(3)) for i in range(3)
    )


def reflection_about(L: HLine) -> Reflection:
    """Unique non-trivial involution of C^2 preserving ``dx^2 + dy^2`` and fixing L pointwise.

    For direction ``(p, q)`` of L the linear part is
    ``[[p^2 - q^2, 2pq], [2pq, q^2 - p^2]] / (p^2 + q^2)``, conjugated by a
    translation to a point of L.  Needs ``p^2 + q^2 != 0``, i.e. L not isotropic.
    """
    u, v, w = L.coords
    if is_isotropic(L):
        raise IsotropyError(f"{L!r} is isotropic; its symmetry is only defined on lines, as a limit")
    n = u * u + v * v  # = p^2 + q^2, nonzero off the isotropic lines
    p, q = v, -u
    m00 = (p * p - q * q) / n
    m01 = 2 * p * q / n
    m11 = (q * q - p * p) / n
    # point of L closest to the origin (in the complexified sense)
    x0, y0 = -w * u / n, -w * v / n
    tx = x0 - (m00 * x0 + m01 * y0)
    ty = y0 - (m01 * x0 + m11 * y0)
    matrix = ((m00, m01, tx), (m01, m11, ty), (ZERO, ZERO, ONE))
    return Reflection(matrix, L)


def reflect_line(L: HLine, l: HLine) -> HLine:
    return reflection_about(L).apply_line(l)


def projective_distance(a, b) -> Fraction:
    """Squared Fubini-Study sine between two projective triples, exactly.

    ``1 - |<a, b>|^2 / (|a|^2 |b|^2)`` with the Hermitian product; zero iff
    the triples are proportional.
    """
    a = tuple(a)
    b = tuple(b)
    herm = a[0] * b[0].conjugate() + a[1] * b[1].conjugate() + a[2] * b[2].conjugate()
    na = sum((x.norm() for x in a), Fraction(0))
    nb = sum((x.norm() for x in b), Fraction(0))
    return 1 - herm.norm() / (na * nb)


def isotropic_limit_probe(
    ns: Iterable[int] = (10, 100, 1000),
    fixed: HLine = HLine(0, 1, 0),
    sign: int = 1,
) -> list[tuple[int, Fraction]]:
    """Reflect ``fixed`` about lines through the origin approaching an isotropic line.

    ``L_n`` has direction ``(1, i (1 - 1/n))`` and tends to the isotropic
    line ``x + i y = 0`` (``sign=-1``: the conjugate family).  Returns
    ``(n, squared projective distance from the reflected line to the limit)``.
    """
    si = I_UNIT * sign
    limit = HLine(ONE, si, ZERO)
    out = []
    for n in ns:
        q = si * (1 - Fraction(1, n))
        L_n = HLine(-q, ONE, ZERO)  # through the origin with direction (1, q)
        out.append((n, projective_distance(reflect_line(L_n, fixed).coords, limit.coords)))
    return out
