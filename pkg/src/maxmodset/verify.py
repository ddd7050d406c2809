"""
Self-contained verification suites over seeded random inputs.

Each suite checks one cross-cutting invariant against an oracle that
avoids the code path under test (naive power sums, dense angle grids,
sign predictions from the odd part).  Results carry the worst observed
error so regressions show up as drift before they become failures.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .circlemax import global_maximizers, max_modulus
from .construct import ConstructionKind, ConstructionSpec, build, trichotomy_check
from .poly import (
    Polynomial,
    alternating_odd_product,
    nonpositive_odd_product,
    reciprocal,
    trig_profile,
)
from .tracer import AnnulusWindow, global_discontinuities, trace

PROFILE_IDENTITY_TOL = 1e-9
ARGMAX_VALUE_TOL = 1e-9
ARGMAX_ANGLE_TOL = 1e-6
DUALITY_TOL = 1e-8


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    worst_error: float
    detail: str


def _random_poly(rng, max_degree, real=False):
    deg = int(rng.integers(1, max_degree + 1))
    c = rng.standard_normal(deg + 1)
    if not real:
        c = c + 1j * rng.standard_normal(deg + 1)
    while abs(c[-1]) < 0.1:
        c[-1] = c[-1] + 1.0
    return Polynomial(c)


def _power_sum(coeffs, z):
    z = np.asarray(z, dtype=complex)
    total = np.zeros(z.shape, dtype=complex)
    for k, c in enumerate(coeffs):
        total = total + c * z**k
    return total


def suite_profile_identity(seed: int, tol: float = PROFILE_IDENTITY_TOL) -> SuiteResult:
    """Squared circle profile equals |p|^2 from direct evaluation."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(40):
        p = _random_poly(rng, 12)
        r = float(rng.uniform(0.1, 2.5))
        t = trig_profile(p, r)
        th = rng.uniform(-np.pi, np.pi, size=40)
        direct = np.abs(_power_sum(p.coeffs, r * np.exp(1j * th))) ** 2
        err = np.max(np.abs(t(th) - direct) / np.maximum(direct, 1e-300))
        worst = max(worst, float(err))
    return SuiteResult("profile-identity", worst <= tol, worst,
                       f"max rel err {worst:.3e} (tol {tol:.0e})")


def _grid_argmax(coeffs, r, n_grid=40_000, tie_rel=1e-9):
    th = np.linspace(-np.pi, np.pi, n_grid, endpoint=False)
    vals = np.abs(_power_sum(coeffs, r * np.exp(1j * th)))
    peaks = np.nonzero((vals >= np.roll(vals, 1)) & (vals >= np.roll(vals, -1)))[0]
    dth = 2 * np.pi / n_grid
    refined = []
    for i in peaks:
        res = minimize_scalar(
            lambda t: -abs(_power_sum(coeffs, r * np.exp(1j * t))),
            bracket=(th[i] - dth, th[i], th[i] + dth),
            method="golden", options={"xtol": 1e-12},
        )
        refined.append((float(res.x), float(-res.fun)))
    vmax = max(v for _, v in refined)
    kept = sorted(
        {round(np.arctan2(np.sin(t), np.cos(t)), 9)
         for t, v in refined if v >= vmax * (1 - tie_rel)}
    )
    merged = []
    for t in kept:
        if merged and t - merged[-1] <= 1e-6:
            continue
        merged.append(t)
    if len(merged) > 1 and (merged[0] + 2 * np.pi) - merged[-1] <= 1e-6:
        merged.pop()
    return vmax, np.asarray(merged)


def suite_argmax_oracle(seed: int, value_tol: float = ARGMAX_VALUE_TOL,
                        angle_tol: float = ARGMAX_ANGLE_TOL) -> SuiteResult:
    """Circle maximizers agree with dense-grid argmax plus golden-section
    refinement, in value, angle, and count."""
    rng = np.random.default_rng(seed)
    worst_val = worst_ang = 0.0
    mismatches = 0
    for _ in range(12):
        p = _random_poly(rng, 10)
        for r in rng.uniform(0.3, 2.5, size=3):
            m = global_maximizers(p, float(r))
            val, angles = _grid_argmax(p.coeffs, float(r))
            worst_val = max(worst_val, abs(m.value - val) / val)
            if len(m.angles) != len(angles):
                mismatches += 1
                continue
            for a, b in zip(np.sort(m.angles), angles):
                d = abs(a - b)
                worst_ang = max(worst_ang, min(d, 2 * np.pi - d))
    ok = worst_val <= value_tol and worst_ang <= angle_tol and mismatches == 0
    return SuiteResult(
        "argmax-oracle", ok, max(worst_val, worst_ang),
        f"val err {worst_val:.3e}, angle err {worst_ang:.3e}, "
        f"count mismatches {mismatches}",
    )


def suite_axis_trichotomy(seed: int) -> SuiteResult:
    """Certified builds maximize on the axis side predicted by the sign
    of the odd part, for both construction kinds."""
    rng = np.random.default_rng(seed)
    fail_text = []
    worst = 0.0
    for _ in range(3):
        n = int(rng.integers(1, 4))
        targets = tuple(np.sort(rng.uniform(0.3, 2.5, size=n)))
        if len(set(targets)) != n:
            continue
        for kind in ConstructionKind:
            p, cert = build(ConstructionSpec(targets, kind))
            if kind is ConstructionKind.DISCONTINUITIES:
                p_hat = alternating_odd_product(targets)
            else:
                p_hat = nonpositive_odd_product(targets)
            radii = np.linspace(cert.R, cert.R_prime, 120)
            rep = trichotomy_check(p, p_hat, radii)
            worst = max(worst, rep.max_angle_err)
            if not rep.ok:
                fail_text.extend(rep.failures[:2])
    return SuiteResult(
        "axis-trichotomy", not fail_text, worst,
        f"max angle err {worst:.3e}" + ("; " + "; ".join(fail_text) if fail_text else ""),
    )


def suite_reciprocal_duality(seed: int, tol: float = DUALITY_TOL) -> SuiteResult:
    """Traced maximizers of the reciprocal polynomial map through
    w -> 1/w to maximizers of the original within tolerance."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(5):
        p = _random_poly(rng, 6, real=bool(rng.integers(0, 2)))
        q = reciprocal(p)
        s = trace(q, AnnulusWindow(0.5, 2.0, 50))
        for comp in s.components:
            for r, v in zip(comp.radii[::9], comp.values[::9]):
                r_p = 1.0 / r
                v_p = v * r_p**p.degree
                m = max_modulus(p, r_p)
                worst = max(worst, (m - v_p) / m)
    return SuiteResult("reciprocal-duality", worst <= tol, worst,
                       f"max deficit {worst:.3e} (tol {tol:.0e})")


def suite_refinement_stability(seed: int) -> SuiteResult:
    """Global discontinuity counts are invariant under doubling the
    sweep resolution."""
    rng = np.random.default_rng(seed)
    bad = 0
    pairs = []
    for _ in range(3):
        p = _random_poly(rng, 5, real=True)
        n1 = len(global_discontinuities(p, steps=400))
        n2 = len(global_discontinuities(p, steps=800))
        pairs.append((n1, n2))
        if n1 != n2:
            bad += 1
    return SuiteResult("refinement-stability", bad == 0, float(bad),
                       f"counts {pairs}")


def run_all(seed: int = 0, corrupt_tolerance: bool = False) -> list[SuiteResult]:
    """Run every suite; ``corrupt_tolerance`` deliberately tightens one
    tolerance below reachable precision to exercise the failure path."""
    identity_tol = 1e-30 if corrupt_tolerance else PROFILE_IDENTITY_TOL
    return [
        suite_profile_identity(seed, tol=identity_tol),
        suite_argmax_oracle(seed + 1),
        suite_axis_trichotomy(seed + 2),
        suite_reciprocal_duality(seed + 3),
        suite_refinement_stability(seed + 4),
    ]
