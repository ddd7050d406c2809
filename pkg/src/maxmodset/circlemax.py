"""
Maximum of |p| on a fixed circle, with the full set of maximizing angles.

The squared circle profile is a trigonometric polynomial; its stationary
angles are found by rewriting the profile derivative as a complex Laurent
series, multiplying through by e^{i n theta} and taking the roots of the
resulting degree-2n polynomial (companion eigenvalues).  Roots near the
unit circle are polished by safeguarded Newton steps on the real
derivative, then deduplicated and ranked by |p|.

Radii are independent, so sweeps are evaluated as one batched eigenvalue
problem per structural group.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .poly import Polynomial, TrigProfile, evaluate

# Tie tolerance: an angle counts as a global maximizer when its value is
# within this relative distance of the circle maximum.
VALUE_TIE_REL = 1e-9
# A companion root is a stationary-angle candidate when its modulus is
# within this distance of 1.
UNIT_CIRCLE_TOL = 1e-8
# Angles closer than this are reported once.
ANGLE_MERGE_TOL = 1e-7
# Profiles whose total harmonic weight is below this multiple of the
# constant term are treated as angle-independent (full circle).
DEGENERACY_FLOOR = 1e-13

# Laurent-polynomial coefficients below this relative floor are trimmed
# from both ends before the companion matrix is formed (roots at 0 and
# infinity carry no stationary angle; trimming keeps the matrix
# well-scaled).  Newton polish runs on the untrimmed series.
_COEFF_TRIM_REL = 1e-13
_NEWTON_ITERS = 9
_RESIDUAL_ACCEPT = 1e-6


class RootFindingError(RuntimeError):
    """Stationary-angle root finding failed at some radius."""

    def __init__(self, radius: float, detail: str):
        super().__init__(f"stationary-angle computation failed at r={radius!r}: {detail}")
        self.radius = radius
        self.detail = detail


@dataclass(frozen=True)
class FourierSeries:
    """Real trigonometric series ``c0 + sum a_m cos(m t) + b_m sin(m t)``."""

    c0: float
    cos_coeffs: np.ndarray
    sin_coeffs: np.ndarray

    def __call__(self, theta):
        theta = np.asarray(theta, dtype=float)
        m = np.arange(1, len(self.cos_coeffs) + 1)
        ang = np.multiply.outer(theta, m)
        out = self.c0 + np.cos(ang) @ self.cos_coeffs + np.sin(ang) @ self.sin_coeffs
        return out if out.ndim else float(out)


@dataclass(frozen=True)
class RadialMaxima:
    """Circle maximum of |p| at one radius: the value and every angle
    achieving it within the tie tolerance."""

    r: float
    value: float
    angles: np.ndarray
    is_full_circle: bool = False

    def __post_init__(self):
        a = np.atleast_1d(np.asarray(self.angles, dtype=float))
        a.setflags(write=False)
        object.__setattr__(self, "angles", a)


@dataclass(frozen=True)
class CircleScan:
    """One radius of a sweep: maximizers plus all stationary angles.

    ``stat_angles``/``stat_values`` include minima and saddle angles;
    ``angles`` is the subset within the tie tolerance of ``value``.
    """

    r: float
    value: float
    angles: np.ndarray
    stat_angles: np.ndarray
    stat_values: np.ndarray
    is_full_circle: bool = False

    def maxima(self) -> RadialMaxima:
        return RadialMaxima(self.r, self.value, self.angles, self.is_full_circle)


def profile_derivative(t: TrigProfile) -> FourierSeries:
    """Term-wise theta-derivative of a profile:
    ``cos(m t) -> -m sin(m t)`` and ``sin(m t) -> m cos(m t)``."""
    m = np.arange(1, t.n_harmonics + 1, dtype=float)
    return FourierSeries(c0=0.0, cos_coeffs=m * t.sin_coeffs, sin_coeffs=-m * t.cos_coeffs)


def _wrap_angle(theta):
    # maps to (-pi, pi], keeping pi at pi
    out = np.arctan2(np.sin(theta), np.cos(theta))
    return np.where(out == -np.pi, np.pi, out)


def _newton_polish(theta, cos_c, sin_c):
    """Vectorized safeguarded Newton for the derivative of profiles.

    ``cos_c``/``sin_c`` are per-candidate harmonic rows of the profile.
    Returns polished angles and the relative derivative residual.
    """
    n = cos_c.shape[1]
    m = np.arange(1, n + 1, dtype=float)
    scale = np.sum(m * (np.abs(cos_c) + np.abs(sin_c)), axis=1)
    scale = np.where(scale > 0, scale, 1.0)
    clamp = 0.2 / max(1, n)
    th = theta.copy()
    for _ in range(_NEWTON_ITERS):
        ang = th[:, None] * m[None, :]
        c, s = np.cos(ang), np.sin(ang)
        d1 = np.sum(m * (sin_c * c - cos_c * s), axis=1)
        d2 = -np.sum(m * m * (cos_c * c + sin_c * s), axis=1)
        safe = np.abs(d2) > 1e-300
        step = np.where(safe, -d1 / np.where(safe, d2, 1.0), 0.0)
        step = np.clip(step, -clamp, clamp)
        th = th + step
    ang = th[:, None] * m[None, :]
    d1 = np.sum(m * (sin_c * np.cos(ang) - cos_c * np.sin(ang)), axis=1)
    return th, np.abs(d1) / scale


def _companion_roots(g_stack: np.ndarray) -> np.ndarray:
    """Roots of a stack of polynomials (ascending coefficients, nonzero
    leading column) via batched companion eigenvalues."""
    nb, width = g_stack.shape
    d = width - 1
    monic = g_stack[:, :-1] / g_stack[:, -1:]
    comp = np.zeros((nb, d, d), dtype=g_stack.dtype)
    comp[:, 0, :] = -monic[:, ::-1]
    idx = np.arange(d - 1)
    comp[:, idx + 1, idx] = 1.0
    return np.linalg.eigvals(comp)


def _merge_angles(angles: np.ndarray, values: np.ndarray, tol: float):
    """Circular dedup: clusters of angles within ``tol`` collapse to the
    member with the largest value."""
    if len(angles) == 0:
        return angles, values
    order = np.argsort(angles)
    a, v = angles[order], values[order]
    groups = np.concatenate(([0], np.cumsum(np.diff(a) > tol)))
    keep_a, keep_v = [], []
    for gid in range(groups[-1] + 1):
        sel = groups == gid
        i = np.argmax(v[sel])
        keep_a.append(a[sel][i])
        keep_v.append(v[sel][i])
    # wrap-around cluster: first and last may be the same angle mod 2pi
    if len(keep_a) > 1 and (keep_a[0] + 2 * np.pi) - keep_a[-1] <= tol:
        if keep_v[0] >= keep_v[-1]:
            keep_a.pop(), keep_v.pop()
        else:
            keep_a.pop(0), keep_v.pop(0)
    return np.asarray(keep_a), np.asarray(keep_v)


def _laurent_rows(coeffs: np.ndarray, radii: np.ndarray):
    """Constant terms and lag autocorrelations of the radius-weighted
    coefficient rows; the harmonics of |p|^2 on each circle."""
    n = len(coeffs) - 1
    b = coeffs[None, :] * radii[:, None] ** np.arange(n + 1)[None, :]
    bscale = np.max(np.abs(b), axis=1)
    b = b / bscale[:, None]
    c0 = np.sum(np.abs(b) ** 2, axis=1).real
    cm = np.empty((len(radii), n), dtype=complex)
    for m in range(1, n + 1):
        cm[:, m - 1] = np.sum(b[:, m:] * np.conj(b[:, :-m]), axis=1)
    return c0, cm


def _series_stationary_batch(c0, cos_rows, sin_rows, radii):
    """Stationary angles for a batch of profiles given as harmonic rows.

    Returns (list of angle arrays, full_circle mask).  Raises
    RootFindingError when eigenvalue iteration fails or no stationary
    angle survives for a non-degenerate profile.
    """
    nrows, n = cos_rows.shape
    cm = 0.5 * (cos_rows - 1j * sin_rows)
    harmonic_norm = np.sum(np.abs(cos_rows) + np.abs(sin_rows), axis=1)
    full = harmonic_norm <= DEGENERACY_FLOOR * np.maximum(c0, 1e-300)

    # ascending coefficients of e^{i n t} * d/dt profile, up to a factor i
    marr = np.arange(1, n + 1)
    g = np.zeros((nrows, 2 * n + 1), dtype=complex)
    g[:, n + marr] = marr * cm
    g[:, n - marr] = -marr * np.conj(cm)

    groups: dict[tuple, list[int]] = {}
    for i in range(nrows):
        if full[i]:
            continue
        mags = np.abs(g[i])
        gmax = mags.max()
        nz = np.nonzero(mags > _COEFF_TRIM_REL * gmax)[0]
        if len(nz) == 0 or nz[-1] == nz[0]:
            full[i] = True
            continue
        isreal = bool(np.all(g[i].imag == 0.0))
        groups.setdefault((nz[0], nz[-1], isreal), []).append(i)

    cand_row: list[np.ndarray] = [np.empty(0)] * nrows
    for (lo, hi, isreal), rows in groups.items():
        sub = g[np.asarray(rows), lo : hi + 1]
        if isreal:
            sub = sub.real
        try:
            roots = _companion_roots(sub)
        except np.linalg.LinAlgError as exc:
            raise RootFindingError(float(radii[rows[0]]), f"eigenvalue failure: {exc}")
        dist = np.abs(np.abs(roots) - 1.0)
        for j, i in enumerate(rows):
            cand_row[i] = np.angle(roots[j][dist[j] <= UNIT_CIRCLE_TOL])

    # widen the unit-circle filter for rows left without candidates
    for (lo, hi, isreal), rows in groups.items():
        for j, i in enumerate(rows):
            if len(cand_row[i]) > 0:
                continue
            sub = g[i, lo : hi + 1]
            roots = _companion_roots((sub.real if isreal else sub)[None, :])[0]
            dist = np.abs(np.abs(roots) - 1.0)
            for widen in (1e2, 1e4):
                sel = dist <= UNIT_CIRCLE_TOL * widen
                if np.any(sel):
                    cand_row[i] = np.angle(roots[sel])
                    break
            else:
                raise RootFindingError(
                    float(radii[i]), "no roots near the unit circle"
                )

    counts = np.array([len(c) for c in cand_row])
    flat_theta = np.concatenate([c for c in cand_row if len(c)]) if counts.sum() else np.empty(0)
    row_idx = np.repeat(np.arange(nrows), counts)
    if len(flat_theta):
        th, resid = _newton_polish(flat_theta, cos_rows[row_idx], sin_rows[row_idx])
        th = _wrap_angle(th)
        ok = resid <= _RESIDUAL_ACCEPT
        th, row_idx = th[ok], row_idx[ok]
    else:
        th = flat_theta

    out = []
    for i in range(nrows):
        if full[i]:
            out.append(np.empty(0))
            continue
        mine = th[row_idx == i]
        if len(mine) == 0:
            raise RootFindingError(float(radii[i]), "all stationary candidates rejected")
        out.append(mine)
    return out, full


def scan_circles(
    p: Polynomial,
    radii,
    tie_rel: float = VALUE_TIE_REL,
) -> list[CircleScan]:
    """Circle maxima of ``p`` at each radius, with stationary detail.

    Radii must be positive.  Monomials (and profiles degenerate to
    numerical precision) come back flagged ``is_full_circle`` with an
    empty angle set.
    """
    radii = np.atleast_1d(np.asarray(radii, dtype=float))
    if np.any(radii <= 0):
        raise ValueError("radii must be positive")
    if p.is_zero:
        return [CircleScan(float(r), 0.0, np.empty(0), np.empty(0), np.empty(0), True) for r in radii]
    if p.is_monomial:
        vals = np.abs(evaluate(p, radii.astype(complex)))
        return [
            CircleScan(float(r), float(v), np.empty(0), np.empty(0), np.empty(0), True)
            for r, v in zip(radii, vals)
        ]

    c0, cm = _laurent_rows(p.coeffs, radii)
    cos_rows, sin_rows = 2.0 * cm.real, -2.0 * cm.imag
    angle_sets, full = _series_stationary_batch(c0, cos_rows, sin_rows, radii)

    scans = []
    for i, r in enumerate(radii):
        if full[i]:
            v = float(abs(evaluate(p, complex(r))))
            scans.append(CircleScan(float(r), v, np.empty(0), np.empty(0), np.empty(0), True))
            continue
        th = angle_sets[i]
        vals = np.abs(evaluate(p, r * np.exp(1j * th)))
        th, vals = _merge_angles(th, vals, ANGLE_MERGE_TOL)
        order = np.argsort(th)
        th, vals = th[order], vals[order]
        vmax = float(vals.max())
        mask = vals >= vmax * (1.0 - tie_rel)
        scans.append(CircleScan(float(r), vmax, th[mask], th, vals, False))
    return scans


def stationary_angles(t: TrigProfile) -> np.ndarray:
    """All angles in (-pi, pi] where the profile derivative vanishes.

    Requires a profile with at least one harmonic; raises ValueError for
    degenerate (angle-independent) profiles.
    """
    if t.n_harmonics == 0:
        raise ValueError("profile has no harmonics; every angle is stationary")
    sets, full = _series_stationary_batch(
        np.array([t.c0]),
        t.cos_coeffs[None, :],
        t.sin_coeffs[None, :],
        np.array([t.r]),
    )
    if full[0]:
        raise ValueError("profile is degenerate (angle-independent)")
    return np.sort(sets[0])


def global_maximizers(p: Polynomial, r: float, tie_rel: float = VALUE_TIE_REL) -> RadialMaxima:
    """Maximum of |p| on the circle of radius ``r`` and every maximizing
    angle within the tie tolerance."""
    if r <= 0:
        raise ValueError("radius must be positive")
    return scan_circles(p, [r], tie_rel=tie_rel)[0].maxima()


def max_modulus(p: Polynomial, r: float) -> float:
    """The circle maximum of |p|; nondecreasing in ``r``."""
    if r < 0:
        raise ValueError("radius must be nonnegative")
    if r == 0:
        return float(abs(p.coeffs[0]))
    if p.is_monomial or p.is_zero:
        return float(abs(evaluate(p, complex(r))))
    return global_maximizers(p, r).value
