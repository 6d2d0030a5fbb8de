"""Exact-arithmetic classification of normal affine surfaces carrying a
C*-action and a C+-action, from their divisor presentation data."""

from .divisor import (
    AffineMap,
    DivisorPair,
    QDivisor,
    affine_equivalent,
    denom_index,
    floor_frac,
    normalize_pair,
    shift_equivalent,
)
from .dpdring import (
    Elliptic,
    GradedElement,
    Hyperbolic,
    Parabolic,
    Presentation,
    SurfaceSpec,
    contains,
    from_equation,
    graded_generator,
    is_line_cross_torus,
    presentation,
)
from .exactmath import (
    Poly,
    Rat,
    RatFunc,
    mod_inverse,
    rational_linear_factorization,
)
from .classify import (
    ClassificationReport,
    classify,
    fiber_structure,
    ml_invariant,
    mm_invariant,
    recognize_homogeneous,
    recognize_sl2,
    ruling_divisor,
    singular_points,
)
from .catalog import CatalogEntry, catalog_surface
from .lnd import (
    DegreeSet,
    EllipticToricLnd,
    FiberLnd,
    HorizontalLnd,
    admissible_degrees,
    apply,
    build_horizontal,
    conjugate_kernel,
    elliptic_lnd,
    fiber_lnd,
    kernel_generator,
    nilpotency_steps,
    parabolic_horizontal,
    positive_lnd_exists,
    reverse,
    stabilization_witness,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
