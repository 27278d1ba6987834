"""Triangular billiard orbits in an ellipse and the loci of their centers.

Real side: the Poncelet family of 3-periodic orbits (``billiards``), triangle
centers (``centers``) and conic fits of their loci (``locus``).  Exact side:
cyclic points, isotropic tangents, foci and complex reflections over the
Gaussian rationals (``cp2``).
"""

from .billiards import (
    CausticResult,
    Orbit,
    billiard_step,
    find_caustic,
    poncelet_triangle,
    reflect_direction,
    reflection_residual,
    symmetric_orbits,
)
from .centers import CenterKind, CircleData, circumcircle, triangle_center
from .conic_core import (
    Direction,
    Ellipse,
    RealPoint,
    chord_from,
    confocal_ellipse,
    ellipse_point,
    ellipse_tangent_dir,
)
from .errors import GeometryError
from .locus import (
    ConicClass,
    ConicCoeffs,
    LocusReport,
    classify_conic,
    derivative_checks,
    fit_conic,
    locus_report,
    sample_locus,
)

__version__ = "0.1.0"
