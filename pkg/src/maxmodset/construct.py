"""
Constructions with prescribed discontinuities or singletons, and the
certificate that makes them checkable.

The built polynomials have the form ``a*(z^2 + 1) + phat`` with ``phat``
an odd real polynomial vanishing at the prescribed radii.  For large
``a`` the maximum modulus set inside the working annulus lies on the
real axis, with the maximizing side of each circle decided by the sign
of ``phat``.  Instead of taking "a large enough" on faith, ``certify_a``
computes explicit coefficient bounds and returns the smallest certified
``a`` (times a safety margin):

* ``a_first``:   off-axis angles lose to the axis outright;
* ``a_station``: the axis is the only stationary angle near it;
* ``a_concave``: that stationary angle is a local maximum.

All three thresholds come from harmonic-coefficient inequalities
evaluated at the outer radius, so the certificate is independent of the
maximizer search it certifies.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .circlemax import VALUE_TIE_REL, scan_circles
from .poly import (
    Polynomial,
    alternating_odd_product,
    evaluate,
    nonpositive_odd_product,
)

# |phat(r)| below this multiple of the local coefficient scale counts as
# a constructed zero (both axis points maximize).
SIGN_ZERO_REL = 1e-9
_THETA0_DEFAULT = np.pi / 8
_MARGIN = 2.0


class ConstructionKind(enum.Enum):
    """Which odd product backs the construction: simple zeros give one
    discontinuity per target, squared zeros give one singleton each."""

    DISCONTINUITIES = "t1"
    SINGLETONS = "t2"


class SignClass(enum.Enum):
    POSITIVE_AXIS = 1
    NEGATIVE_AXIS = -1
    BOTH = 0


@dataclass(frozen=True)
class ConstructionSpec:
    targets: tuple[float, ...]
    kind: ConstructionKind
    theta0: float = _THETA0_DEFAULT

    def __post_init__(self):
        t = tuple(float(x) for x in self.targets)
        if len(t) == 0:
            raise ValueError("at least one target radius is required")
        if any(x <= 0 for x in t):
            raise ValueError("target radii must be positive")
        if len(set(t)) != len(t):
            raise ValueError("target radii must be distinct")
        if not (0 < self.theta0 < np.pi / 4):
            raise ValueError("theta0 must lie in (0, pi/4)")
        object.__setattr__(self, "targets", t)


@dataclass(frozen=True)
class Certificate:
    """Explicit bounds certifying the construction parameter.

    ``K_bound`` dominates the odd part on the outer circle;
    ``beta1_bound``/``beta2_bound`` are the realized bounds (at
    ``a_cert``) on the weighted harmonic sums controlling the first and
    second angular derivatives of the cross terms.
    """

    theta0: float
    alpha: float
    K_bound: float
    R: float
    R_prime: float
    beta1_bound: float
    beta2_bound: float
    a_first: float
    a_station: float
    a_concave: float
    a_cert: float


def default_annulus(targets) -> tuple[float, float]:
    """Working annulus for a target set: half the smallest target out to
    twice the largest."""
    t = np.atleast_1d(np.asarray(targets, dtype=float))
    if t.size == 0:
        raise ValueError("at least one target radius is required")
    return float(t.min()) / 2.0, 2.0 * float(t.max())


def _harmonic_bound_sums(p_hat: Polynomial, r_prime: float) -> tuple[float, float]:
    """Weighted sums  sum_m m^2 * bound(|b_m|)  split into the part
    linear in ``a`` (cross terms with z^2+1) and the part independent of
    ``a`` (odd-part self terms), both bounded harmonic-by-harmonic at the
    outer radius."""
    ph = p_hat.coeffs.real
    q = np.array([1.0, 0.0, 1.0])
    n = max(len(ph), len(q)) - 1
    qq = np.zeros(n + 1)
    qq[: len(q)] = q
    pp = np.zeros(n + 1)
    pp[: len(ph)] = ph
    rp = r_prime ** np.arange(2 * n + 1)
    s_linear = 0.0
    s_const = 0.0
    for m in range(1, n + 1):
        j = np.arange(0, n + 1 - m)
        k = j + m
        cross = np.sum(np.abs(qq[j] * pp[k] + pp[j] * qq[k]) * rp[j + k])
        self_ = np.sum(np.abs(pp[j] * pp[k]) * rp[j + k])
        s_linear += 2.0 * m * m * cross
        s_const += 2.0 * m * m * self_
    return s_linear, s_const


def _threshold(quad: float, lin: float, const: float) -> float:
    # smallest a >= 0 with quad * a^2 > lin * a + const
    if quad <= 0:
        raise ValueError("quadratic coefficient must be positive")
    if lin == 0 and const == 0:
        return 0.0
    return (lin + np.sqrt(lin * lin + 4.0 * quad * const)) / (2.0 * quad)


def certify_a(p_hat: Polynomial, R: float, R_prime: float,
              theta0: float = _THETA0_DEFAULT) -> Certificate:
    """Certified construction parameter for ``a*(z^2+1) + p_hat`` on the
    annulus [R, R_prime].

    Requires a real-coefficient ``p_hat``, 0 < R < R_prime, and
    ``theta0`` in (0, pi/4).  For the zero polynomial every positive
    ``a`` works and the floor value 1 is returned.
    """
    if not p_hat.has_real_coeffs:
        raise ValueError("odd part must have real coefficients")
    if not (0 < R < R_prime):
        raise ValueError("need 0 < R < R_prime")
    if not (0 < theta0 < np.pi / 4):
        raise ValueError("theta0 must lie in (0, pi/4)")

    alpha = 1.0 - np.cos(2.0 * theta0)
    K = float(np.sum(np.abs(p_hat.coeffs) * R_prime ** np.arange(len(p_hat.coeffs))))
    a_first = 2.0 * K * (R * R + 1.0) / (alpha * R * R)

    s_linear, s_const = _harmonic_bound_sums(p_hat, R_prime)
    slope0 = np.sin(2.0 * theta0) / theta0
    a_station = _threshold(4.0 * R * R * slope0, s_linear, s_const)
    a_concave = _threshold(8.0 * R * R * np.cos(2.0 * theta0), s_linear, s_const)

    base = max(a_first, a_station, a_concave)
    a_cert = _MARGIN * base if base > 0 else 1.0
    realized = a_cert * s_linear + s_const
    return Certificate(
        theta0=float(theta0), alpha=float(alpha), K_bound=K,
        R=float(R), R_prime=float(R_prime),
        beta1_bound=float(realized), beta2_bound=float(realized),
        a_first=float(a_first), a_station=float(a_station),
        a_concave=float(a_concave), a_cert=float(a_cert),
    )


def build(spec: ConstructionSpec) -> tuple[Polynomial, Certificate]:
    """Construct the polynomial for a target set with a certified
    parameter; degree 2n+1 for simple zeros, 4n+1 for squared zeros."""
    if spec.kind is ConstructionKind.DISCONTINUITIES:
        p_hat = alternating_odd_product(spec.targets)
    else:
        p_hat = nonpositive_odd_product(spec.targets)
    R, R_prime = default_annulus(spec.targets)
    cert = certify_a(p_hat, R, R_prime, spec.theta0)
    coeffs = np.zeros(len(p_hat.coeffs), dtype=complex)
    coeffs[0] = cert.a_cert
    coeffs[2] = cert.a_cert
    coeffs += p_hat.coeffs
    return Polynomial(coeffs), cert


def expected_maximizer_side(p_hat: Polynomial, r: float,
                            sign_zero_rel: float = SIGN_ZERO_REL) -> SignClass:
    """Which side of the real axis maximizes, according to the sign of
    the odd part at ``r``: positive axis, negative axis, or both when
    |p_hat(r)| is below the sign-zero tolerance."""
    if r <= 0:
        raise ValueError("radius must be positive")
    if not p_hat.has_real_coeffs:
        raise ValueError("odd part must have real coefficients")
    mags = np.abs(p_hat.coeffs)
    if np.any(mags[0::2] > 1e-12 * mags.max()):
        raise ValueError("polynomial is not odd (even-degree coefficients present)")
    scale = float(np.sum(mags * r ** np.arange(len(mags))))
    val = evaluate(p_hat, complex(r)).real
    if val > sign_zero_rel * scale:
        return SignClass.POSITIVE_AXIS
    if val < -sign_zero_rel * scale:
        return SignClass.NEGATIVE_AXIS
    return SignClass.BOTH


@dataclass(frozen=True)
class TrichotomyReport:
    """Outcome of checking maximizer sides against the sign of the odd
    part over a radius sample.

    Ties are classified by the relative value gap ``2|phat(r)|/M``: when
    the gap clears the tie tolerance with margin the maximizer set must
    match the sign exactly; deep inside the tie band both axis points
    must appear; in the factor-4 gray zone around the tolerance only the
    dominant side is required.
    """

    n_checked: int
    n_strict: int
    n_tie: int
    n_gray: int
    max_angle_err: float
    failures: tuple[str, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.failures


def trichotomy_check(
    p: Polynomial,
    p_hat: Polynomial,
    radii,
    *,
    tie_rel: float = VALUE_TIE_REL,
    angle_tol: float = 1e-6,
) -> TrichotomyReport:
    """Verify that on each circle the maximizers sit on the real axis,
    on the side given by the sign of the odd part."""
    radii = np.atleast_1d(np.asarray(radii, dtype=float))
    scans = scan_circles(p, radii, tie_rel=tie_rel)
    failures = []
    n_strict = n_tie = n_gray = 0
    max_err = 0.0
    for r, scan in zip(radii, scans):
        gap = 2.0 * abs(evaluate(p_hat, complex(r)).real) / scan.value
        sign = np.sign(evaluate(p_hat, complex(r)).real)
        on_pos = any(abs(t) <= angle_tol for t in scan.angles)
        on_neg = any(abs(abs(t) - np.pi) <= angle_tol for t in scan.angles)
        off_axis = [
            t for t in scan.angles
            if abs(t) > angle_tol and abs(abs(t) - np.pi) > angle_tol
        ]
        for t in scan.angles:
            max_err = max(max_err, min(abs(t), abs(abs(t) - np.pi)))
        if off_axis:
            failures.append(f"r={r}: off-axis maximizer(s) at {off_axis}")
            continue
        if gap > 4.0 * tie_rel:
            n_strict += 1
            want_pos = sign > 0
            if on_pos != want_pos or on_neg != (not want_pos):
                failures.append(
                    f"r={r}: strict zone expected "
                    f"{'+r' if want_pos else '-r'} only, got pos={on_pos} neg={on_neg}"
                )
        elif gap < tie_rel / 4.0:
            n_tie += 1
            if not (on_pos and on_neg):
                failures.append(
                    f"r={r}: tie zone expected both axis points, got pos={on_pos} neg={on_neg}"
                )
        else:
            n_gray += 1
            dominant_ok = (on_pos if sign >= 0 else on_neg)
            if not dominant_ok:
                failures.append(f"r={r}: gray zone missing dominant side (sign={sign})")
    return TrichotomyReport(
        n_checked=len(radii), n_strict=n_strict, n_tie=n_tie, n_gray=n_gray,
        max_angle_err=float(max_err), failures=tuple(failures),
    )
