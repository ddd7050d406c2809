"""Shared fixtures and independent oracles.

The oracles here deliberately avoid the library's code paths: polynomial
values come from naive power sums, circle maxima from dense grids plus
golden-section refinement.
"""

import numpy as np
import pytest
from scipy.optimize import minimize_scalar

from maxmodset import Polynomial


def power_sum_eval(coeffs, z):
    """Naive sum of c_k z^k (independent of the Horner path)."""
    z = np.asarray(z, dtype=complex)
    total = np.zeros(z.shape, dtype=complex)
    for k, c in enumerate(np.atleast_1d(coeffs)):
        total = total + c * z**k
    return total


def grid_circle_max(coeffs, r, n_grid=100_000, tie_rel=1e-9, merge_tol=1e-6):
    """Dense-grid argmax with golden-section refinement.

    Returns (value, angles) where angles collects every refined local
    maximum within ``tie_rel`` of the best, merged at ``merge_tol``.
    """
    th = np.linspace(-np.pi, np.pi, n_grid, endpoint=False)
    vals = np.abs(power_sum_eval(coeffs, r * np.exp(1j * th)))
    left = np.roll(vals, 1)
    right = np.roll(vals, -1)
    peaks = np.nonzero((vals >= left) & (vals >= right))[0]
    dth = 2 * np.pi / n_grid

    refined = []
    for i in peaks:
        center = th[i]

        def neg(t):
            return -abs(power_sum_eval(coeffs, r * np.exp(1j * t)))

        res = minimize_scalar(
            neg, bracket=(center - dth, center, center + dth),
            method="golden", options={"xtol": 1e-12},
        )
        refined.append((res.x, -res.fun))

    vmax = max(v for _, v in refined)
    kept = [(t, v) for t, v in refined if v >= vmax * (1 - tie_rel)]
    # wrap to (-pi, pi] and merge duplicates
    angles = []
    for t, v in kept:
        t = np.arctan2(np.sin(t), np.cos(t))
        if t == -np.pi:
            t = np.pi
        angles.append((t, v))
    angles.sort()
    merged = []
    for t, v in angles:
        if merged and (t - merged[-1][0]) <= merge_tol:
            if v > merged[-1][1]:
                merged[-1] = (t, v)
            continue
        merged.append((t, v))
    if len(merged) > 1 and (merged[0][0] + 2 * np.pi) - merged[-1][0] <= merge_tol:
        merged.pop() if merged[-1][1] <= merged[0][1] else merged.pop(0)
    return vmax, np.array([t for t, _ in merged])


def random_polynomial(rng, max_degree, real=False, min_degree=1):
    deg = int(rng.integers(min_degree, max_degree + 1))
    if real:
        c = rng.standard_normal(deg + 1)
    else:
        c = rng.standard_normal(deg + 1) + 1j * rng.standard_normal(deg + 1)
    # keep the leading coefficient comfortably nonzero
    while abs(c[-1]) < 0.1:
        c[-1] = c[-1] + (1.0 if real else (1.0 + 1.0j))
    return Polynomial(c)


@pytest.fixture(scope="session")
def figure_p():
    """1000(z^2+1) + z(z^2-0.25)(z^2-1)(z^2-4), expanded by hand."""
    c = np.array([1000.0, -1.0, 1000.0, 5.25, 0.0, -5.25, 0.0, 1.0])
    return Polynomial(c)


@pytest.fixture(scope="session")
def figure_ptilde():
    """100(z^2+1) - z(z^2-0.25)^2(z^2-1)^2, expanded by hand."""
    c = np.array([100.0, -0.0625, 100.0, 0.625, 0.0, -2.0625, 0.0, 2.5, 0.0, -1.0])
    return Polynomial(c)
