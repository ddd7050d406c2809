"""
Maximum modulus sets of complex polynomials.

Computes, for a polynomial p, the set of points where |p| attains the
maximum over its circle; traces that set over an annulus; detects the
components that start at positive radius (discontinuities) and the
degenerate single-point components (singletons); and builds polynomial
families with prescribed discontinuity or singleton radii, together with
a computable certificate for the construction parameter.
"""

from .poly import (
    Polynomial,
    TrigProfile,
    evaluate,
    trig_profile,
    reciprocal,
    alternating_odd_product,
    nonpositive_odd_product,
)
from .circlemax import (
    FourierSeries,
    RadialMaxima,
    RootFindingError,
    profile_derivative,
    stationary_angles,
    global_maximizers,
    max_modulus,
    scan_circles,
)
from .tracer import (
    AnnulusWindow,
    CurveComponent,
    MaxModSet,
    Discontinuity,
    trace,
    detect_discontinuities,
    detect_singletons,
    global_max_mod_set,
    global_discontinuities,
    write_csv,
)
from .construct import (
    ConstructionKind,
    ConstructionSpec,
    Certificate,
    SignClass,
    default_annulus,
    certify_a,
    build,
    expected_maximizer_side,
    trichotomy_check,
)

__all__ = [
    "Polynomial",
    "TrigProfile",
    "evaluate",
    "trig_profile",
    "reciprocal",
    "alternating_odd_product",
    "nonpositive_odd_product",
    "FourierSeries",
    "RadialMaxima",
    "RootFindingError",
    "profile_derivative",
    "stationary_angles",
    "global_maximizers",
    "max_modulus",
    "scan_circles",
    "AnnulusWindow",
    "CurveComponent",
    "MaxModSet",
    "Discontinuity",
    "trace",
    "detect_discontinuities",
    "detect_singletons",
    "global_max_mod_set",
    "global_discontinuities",
    "write_csv",
    "ConstructionKind",
    "ConstructionSpec",
    "Certificate",
    "SignClass",
    "default_annulus",
    "certify_a",
    "build",
    "expected_maximizer_side",
    "trichotomy_check",
]

__version__ = "0.1.0"
