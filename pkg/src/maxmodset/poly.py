"""
Complex polynomials in one variable and their circle profiles.

Coefficients are stored dense in ascending degree order, so ``coeffs[k]``
multiplies ``z**k``.  All values are complex128; instances are immutable
and safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

# Canonicalization strips trailing coefficients that are exactly zero,
# so e.g. reciprocals of polynomials with zero constant term drop degree
# deterministically.  A relative floor would be wrong here: certified
# constructions legitimately mix coefficients spanning 20+ orders of
# magnitude, and the tiny ones dominate once z^k amplification kicks in.


def _canonical(coeffs) -> np.ndarray:
    c = np.atleast_1d(np.asarray(coeffs, dtype=np.complex128)).ravel()
    if c.size == 0:
        c = np.zeros(1, dtype=np.complex128)
    keep = np.nonzero(c != 0)[0]
    if len(keep) == 0:
        return np.zeros(1, dtype=np.complex128)
    c = c[: keep[-1] + 1].copy()
    c.setflags(write=False)
    return c


@dataclass(frozen=True)
class Polynomial:
    """A complex polynomial ``sum(coeffs[k] * z**k)`` in canonical form.

    Canonical form strips trailing zero coefficients; the zero
    polynomial is represented by the single coefficient 0.
    """

    coeffs: np.ndarray = field(default_factory=lambda: np.zeros(1, complex))

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _canonical(self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return self.degree == 0 and self.coeffs[0] == 0

    @property
    def is_monomial(self) -> bool:
        """True iff exactly one coefficient is nonzero (|p| is then
        angle-independent on every circle)."""
        return np.count_nonzero(self.coeffs) == 1

    @property
    def has_real_coeffs(self) -> bool:
        return bool(np.all(self.coeffs.imag == 0.0))

    def __call__(self, z):
        return evaluate(self, z)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs.shape == other.coeffs.shape and bool(
            np.all(self.coeffs == other.coeffs)
        )

    def __repr__(self) -> str:
        return f"Polynomial({self.coeffs.tolist()})"


@dataclass(frozen=True)
class TrigProfile:
    """The squared circle profile of a polynomial at fixed radius.

    Represents ``theta -> |p(r * exp(i theta))|**2`` as the finite series

        c0 + sum_m cos_coeffs[m-1] * cos(m theta)
           + sum_m sin_coeffs[m-1] * sin(m theta)

    with one harmonic per coefficient-index gap, so the number of
    harmonics never exceeds the degree of the source polynomial.  For
    real-coefficient polynomials every sin coefficient is zero.
    """

    r: float
    c0: float
    cos_coeffs: np.ndarray
    sin_coeffs: np.ndarray

    def __post_init__(self):
        for name in ("cos_coeffs", "sin_coeffs"):
            arr = np.atleast_1d(np.asarray(getattr(self, name), dtype=float))
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def n_harmonics(self) -> int:
        return len(self.cos_coeffs)

    def __call__(self, theta):
        theta = np.asarray(theta, dtype=float)
        m = np.arange(1, self.n_harmonics + 1)
        ang = np.multiply.outer(theta, m)
        out = self.c0 + np.cos(ang) @ self.cos_coeffs + np.sin(ang) @ self.sin_coeffs
        return out if out.ndim else float(out)


def evaluate(p: Polynomial, z):
    """Evaluate ``p`` at ``z`` (scalar or array) by Horner's scheme."""
    z = np.asarray(z, dtype=np.complex128)
    acc = np.full(z.shape, p.coeffs[-1])
    for c in p.coeffs[-2::-1]:
        acc = acc * z + c
    return complex(acc) if acc.ndim == 0 else acc


def trig_profile(p: Polynomial, r: float) -> TrigProfile:
    """Expand ``|p(r e^{i theta})|^2`` into its cosine/sine series.

    The constant term is ``sum |a_k|^2 r^{2k}``; harmonic ``m`` collects
    every coefficient pair with index gap ``m``.
    """
    if r <= 0:
        raise ValueError("radius must be positive")
    b = p.coeffs * r ** np.arange(len(p.coeffs))
    n = len(b) - 1
    c0 = float(np.sum(np.abs(b) ** 2))
    cos_c = np.zeros(n)
    sin_c = np.zeros(n)
    for m in range(1, n + 1):
        # lag-m autocorrelation of the radius-weighted coefficients
        cm = np.sum(b[m:] * np.conj(b[:-m]))
        cos_c[m - 1] = 2.0 * cm.real
        sin_c[m - 1] = -2.0 * cm.imag
    return TrigProfile(r=float(r), c0=c0, cos_coeffs=cos_c, sin_coeffs=sin_c)


def reciprocal(p: Polynomial) -> Polynomial:
    """Coefficient reversal: degree-n ``p`` maps to ``z**n * p(1/z)``.

    Involutive whenever the constant term is nonzero; otherwise the
    degree drops and the original cannot be recovered.
    """
    if p.is_zero:
        raise ValueError("reciprocal of the zero polynomial is undefined")
    return Polynomial(p.coeffs[::-1])


def _convolve_extended(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # Accumulate the convolution in 80-bit extended precision so expanded
    # product coefficients stay well below 1e-12 relative error and no
    # spurious sign changes appear.
    a = a.astype(np.longdouble)
    b = b.astype(np.longdouble)
    out = np.zeros(len(a) + len(b) - 1, dtype=np.longdouble)
    for i, ai in enumerate(a):
        out[i : i + len(b)] += ai * b
    return out


def _expand_even_factors(targets: np.ndarray, power: int) -> np.ndarray:
    prod = np.array([1.0], dtype=np.longdouble)
    for t in targets:
        factor = np.array([-(t * t), 0.0, 1.0])  # z^2 - t^2
        for _ in range(power):
            prod = _convolve_extended(prod, factor)
    return prod


def _check_targets(targets) -> np.ndarray:
    t = np.atleast_1d(np.asarray(targets, dtype=float))
    if t.size == 0:
        raise ValueError("at least one target radius is required")
    if np.any(t <= 0):
        raise ValueError("target radii must be positive")
    if len(np.unique(t)) != len(t):
        raise ValueError("target radii must be distinct")
    return t


def alternating_odd_product(targets) -> Polynomial:
    """Odd real polynomial ``z * prod(z^2 - t^2)`` over the targets.

    Degree ``2n + 1`` for ``n`` targets; vanishes at each target and
    changes sign there, alternating along the positive real axis.
    """
    t = _check_targets(targets)
    even = _expand_even_factors(t, power=1)
    coeffs = np.concatenate(([0.0], even)).astype(np.float64)
    return Polynomial(coeffs)


def nonpositive_odd_product(targets) -> Polynomial:
    """Odd real polynomial ``-z * prod((z^2 - t^2)^2)`` over the targets.

    Degree ``4n + 1``; nonpositive on the positive real axis, touching
    zero exactly at the targets (double roots, no sign change).
    """
    t = _check_targets(targets)
    even = _expand_even_factors(t, power=2)
    coeffs = np.concatenate(([0.0], -even)).astype(np.float64)
    return Polynomial(coeffs)
