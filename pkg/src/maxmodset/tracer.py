"""
Tracing the maximum modulus set over an annulus.

A sweep of circle maxima is chained into connected components: a
maximizer at one radius continues a component from the previous radius
when the angular gap is within a slope-scaled tolerance.  Component
endpoints strictly inside the window are localized by re-sweeping the
surrounding interval at 10x resolution (up to three levels).

Maximizer ties are resolved at a relative value tolerance, which smears
point components into short arcs.  To keep single-point components from
slipping between samples, stationary branches that come close to the
circle maximum without reaching it ("watchers") are tracked as bands;
wherever a band's value deficit dips to zero the touch radius is
inserted as a sample.  A component whose true-maximizer core collapses
to a point, while its tie-smeared extent does not, is classified as a
singleton.
"""

from __future__ import annotations

import csv
from bisect import bisect_left, insort
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar

from .circlemax import VALUE_TIE_REL, CircleScan, scan_circles
from .poly import Polynomial, reciprocal

# Non-maximizing stationary angles within this relative value deficit are
# tracked as near-tie watchers.
WATCH_REL = 1e-5
# A point whose deficit is below this floor counts as a true maximizer
# (deficits under the floor are indistinguishable from roundoff).
CORE_FLOOR = 1e-11
# A watch band whose refined minimum deficit is below this floor touches
# the maximum there.
TOUCH_FLOOR = 1e-10
# Angular chaining tolerance: max(CHAIN_CONSTANT * dr / r, CHAIN_ABS_MIN).
CHAIN_CONSTANT = 50.0
CHAIN_ABS_MIN = 1e-4

_REFINE_FACTOR = 10
_REFINE_LEVELS = 3
_MAX_DIP_SEARCHES = 64


@dataclass(frozen=True)
class AnnulusWindow:
    """Radius range and sampling for a trace.

    ``spacing`` is 'uniform', 'geometric', or 'auto' (geometric when
    r_max/r_min > 10, matching how inversion maps grids).
    """

    r_min: float
    r_max: float
    steps: int
    spacing: str = "auto"

    def __post_init__(self):
        if not (0 < self.r_min < self.r_max):
            raise ValueError("need 0 < r_min < r_max")
        if self.steps < 2:
            raise ValueError("need at least 2 radius samples")
        if self.spacing not in ("auto", "uniform", "geometric"):
            raise ValueError(f"unknown spacing {self.spacing!r}")

    @property
    def effective_spacing(self) -> str:
        if self.spacing != "auto":
            return self.spacing
        return "geometric" if self.r_max / self.r_min > 10 else "uniform"

    def radii(self) -> np.ndarray:
        if self.effective_spacing == "geometric":
            return np.geomspace(self.r_min, self.r_max, self.steps)
        return np.linspace(self.r_min, self.r_max, self.steps)

    def base_gap(self, r: float) -> float:
        """Local spacing of the unrefined grid near radius r."""
        if self.effective_spacing == "geometric":
            g = (self.r_max / self.r_min) ** (1.0 / (self.steps - 1))
            return r * (g - 1.0)
        return (self.r_max - self.r_min) / (self.steps - 1)


@dataclass(frozen=True)
class CurveComponent:
    """One connected component of the traced set.

    Points are ordered by nondecreasing radius; ``values`` holds |p| at
    each point and ``deficits`` the relative distance to the circle
    maximum there (zero for the argmax angle, up to the tie tolerance
    for tied angles).
    """

    radii: np.ndarray
    angles: np.ndarray
    values: np.ndarray
    deficits: np.ndarray
    censored_inner: bool
    censored_outer: bool
    is_singleton: bool = False
    singleton_resolution: float = 0.0

    def __post_init__(self):
        for name in ("radii", "angles", "values", "deficits"):
            arr = np.atleast_1d(np.asarray(getattr(self, name), dtype=float))
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def points(self) -> list[tuple[float, float]]:
        return list(zip(self.radii.tolist(), self.angles.tolist()))

    @property
    def min_modulus(self) -> float:
        return float(self.radii[0])

    @property
    def max_modulus(self) -> float:
        return float(self.radii[-1])


@dataclass(frozen=True)
class MaxModSet:
    """Traced components of the maximum modulus set inside a window."""

    window: AnnulusWindow
    components: tuple[CurveComponent, ...]
    full_circle_radii: np.ndarray = field(default_factory=lambda: np.empty(0))

    def __post_init__(self):
        arr = np.atleast_1d(np.asarray(self.full_circle_radii, dtype=float))
        arr.setflags(write=False)
        object.__setattr__(self, "full_circle_radii", arr)
        object.__setattr__(self, "components", tuple(self.components))


@dataclass(frozen=True)
class Discontinuity:
    """A component that starts at positive radius ``modulus``."""

    modulus: float
    component_index: int
    location: tuple[float, float]


def _circ_dist(a: float, b: float) -> float:
    d = abs(a - b) % (2.0 * np.pi)
    return min(d, 2.0 * np.pi - d)


def _chain_tol_fn(window: "AnnulusWindow", chain_constant: float):
    """Angular chaining tolerance as a function of radius.

    Scaled by the *base* grid spacing at that radius, not the refined
    local spacing: where the argmax branches (pitchforks of symmetric
    maximizer pairs) the angular jump goes like sqrt(dr), so a tolerance
    proportional to the refined dr would fragment one branch into
    cascades of one-sample components as refinement deepens.
    """

    def tol(r: float) -> float:
        return min(max(chain_constant * window.base_gap(r) / r, CHAIN_ABS_MIN), 1.0)

    return tol


class _Chain:
    __slots__ = ("rs", "thetas", "vals", "defs", "open_", "censored_inner")

    def __init__(self, censored_inner: bool):
        self.rs: list[float] = []
        self.thetas: list[float] = []
        self.vals: list[float] = []
        self.defs: list[float] = []
        self.open_ = True
        self.censored_inner = censored_inner

    def add(self, r, theta, v, d):
        self.rs.append(r)
        self.thetas.append(theta)
        self.vals.append(v)
        self.defs.append(d)


def _chain_points(radii, scans, r_min, r_max, tol_fn):
    """Group maximizer points across the radius sweep into chains."""
    chains: list[_Chain] = []
    open_chains: list[_Chain] = []
    full_circle: list[float] = []
    prev_r = None
    for r in radii:
        scan = scans[r]
        if scan.is_full_circle:
            full_circle.append(r)
            for ch in open_chains:
                ch.open_ = False
            open_chains = []
            prev_r = None
            continue
        th = scan.angles
        vals = np.empty(len(th))
        for j, t in enumerate(th):
            k = int(np.argmin(np.abs(scan.stat_angles - t)))
            vals[j] = scan.stat_values[k]
        defs = 1.0 - vals / scan.value

        matched = [False] * len(th)
        if prev_r is not None and open_chains:
            tol = tol_fn(prev_r)
            cands = []
            for ci, ch in enumerate(open_chains):
                for pj in range(len(th)):
                    dist = _circ_dist(ch.thetas[-1], th[pj])
                    if dist <= tol:
                        cands.append((dist, ci, pj))
            cands.sort()
            used_c = set()
            next_open = {}
            for dist, ci, pj in cands:
                if ci in used_c or matched[pj]:
                    continue
                used_c.add(ci)
                matched[pj] = True
                open_chains[ci].add(r, float(th[pj]), float(vals[pj]), float(defs[pj]))
                next_open[ci] = open_chains[ci]
            for ci, ch in enumerate(open_chains):
                if ci not in used_c:
                    ch.open_ = False
            open_chains = [next_open[ci] for ci in sorted(next_open)]
        else:
            open_chains = []

        for pj in range(len(th)):
            if not matched[pj]:
                ch = _Chain(censored_inner=(r <= r_min * (1 + 1e-12)))
                ch.add(r, float(th[pj]), float(vals[pj]), float(defs[pj]))
                chains.append(ch)
                open_chains.append(ch)
        prev_r = r
    return chains, full_circle


def _scan_missing(p, radius_list, scans, tie_rel):
    missing = [r for r in radius_list if r not in scans]
    if missing:
        for s in scan_circles(p, missing, tie_rel=tie_rel):
            scans[s.r] = s


def _refine_endpoints(p, radii, scans, window, tie_rel, tol_fn, factor, levels):
    """Re-sweep intervals around interior component endpoints until the
    local gap is below base_gap / factor**levels."""
    geom = window.effective_spacing == "geometric"
    for _ in range(4 * levels):
        chains, _ = _chain_points(radii, scans, window.r_min, window.r_max, tol_fn)
        new_radii: set[float] = set()
        for ch in chains:
            lo, hi = ch.rs[0], ch.rs[-1]
            floor = window.base_gap(lo) / factor**levels
            i = bisect_left(radii, lo)
            if i > 0 and lo - radii[i - 1] > floor and lo > window.r_min:
                new_radii.update(_subdivide(radii[i - 1], lo, factor, geom))
            floor = window.base_gap(hi) / factor**levels
            j = bisect_left(radii, hi)
            if j + 1 < len(radii) and radii[j + 1] - hi > floor and hi < window.r_max:
                new_radii.update(_subdivide(hi, radii[j + 1], factor, geom))
        new_radii -= set(radii)
        if not new_radii:
            break
        _scan_missing(p, sorted(new_radii), scans, tie_rel)
        for r in new_radii:
            insort(radii, r)


def _subdivide(a: float, b: float, factor: int, geometric: bool) -> list[float]:
    if geometric:
        return list(np.geomspace(a, b, factor + 1)[1:-1])
    return list(np.linspace(a, b, factor + 1)[1:-1])


def _watch_bands(radii, scans, tie_rel, watch_rel, tol_fn):
    """Chain non-maximizing near-tie stationary points into bands."""
    bands: list[list[tuple[float, float, float]]] = []
    open_bands: list[list[tuple[float, float, float]]] = []
    prev_r = None
    for r in radii:
        scan = scans[r]
        if scan.is_full_circle:
            open_bands = []
            prev_r = None
            continue
        defs = 1.0 - scan.stat_values / scan.value
        sel = (defs > tie_rel) & (defs <= watch_rel)
        pts = [(float(t), float(d)) for t, d in zip(scan.stat_angles[sel], defs[sel])]
        matched = [False] * len(pts)
        still_open = []
        if prev_r is not None:
            tol = tol_fn(prev_r)
            for band in open_bands:
                best, bdist = None, tol
                for pj, (t, d) in enumerate(pts):
                    dist = _circ_dist(band[-1][1], t)
                    if not matched[pj] and dist <= bdist:
                        best, bdist = pj, dist
                if best is not None:
                    matched[best] = True
                    band.append((r, pts[best][0], pts[best][1]))
                    still_open.append(band)
        open_bands = still_open
        for pj, (t, d) in enumerate(pts):
            if not matched[pj]:
                band = [(r, t, d)]
                bands.append(band)
                open_bands.append(band)
        prev_r = r
    return bands


def _branch_deficit(p, rr, theta_guess, tie_rel):
    scan = scan_circles(p, [rr], tie_rel=tie_rel)[0]
    if scan.is_full_circle or len(scan.stat_angles) == 0:
        return np.inf, theta_guess
    k = int(np.argmin([_circ_dist(t, theta_guess) for t in scan.stat_angles]))
    if _circ_dist(scan.stat_angles[k], theta_guess) > 0.3:
        return np.inf, theta_guess
    return 1.0 - scan.stat_values[k] / scan.value, float(scan.stat_angles[k])


def _dip_radii(p, radii, scans, tie_rel, watch_rel, tol_fn, max_searches):
    """Radii where a watch band's deficit dips to (numerical) zero."""
    bands = _watch_bands(radii, scans, tie_rel, watch_rel, tol_fn)
    touches = []
    searches = 0
    for band in bands:
        if searches >= max_searches:
            break
        ds = np.array([d for _, _, d in band])
        rs = np.array([r for r, _, _ in band])
        ths = np.array([t for _, t, _ in band])
        interior = np.ones(len(band), dtype=bool)
        if len(band) > 1:
            interior[1:] &= ds[1:] <= ds[:-1]
            interior[:-1] &= ds[:-1] <= ds[1:]
        for k in np.nonzero(interior)[0]:
            if searches >= max_searches:
                break
            searches += 1
            i = bisect_left(radii, rs[k])
            lo = radii[max(i - 1, 0)]
            hi = radii[min(i + 1, len(radii) - 1)]
            if hi <= lo:
                continue
            theta0 = float(ths[k])

            def fun(rr):
                return _branch_deficit(p, float(rr), theta0, tie_rel)[0]

            res = minimize_scalar(
                fun, bounds=(lo, hi), method="bounded",
                options={"xatol": 1e-11 * max(1.0, rs[k]), "maxiter": 60},
            )
            if res.fun <= TOUCH_FLOOR:
                touches.append(float(res.x))
    return touches


def _classify(chains, window, base_gap_fn):
    comps = []
    for ch in chains:
        rs = np.asarray(ch.rs)
        censored_inner = ch.censored_inner or rs[0] <= window.r_min * (1 + 1e-12)
        censored_outer = rs[-1] >= window.r_max * (1 - 1e-12)
        comp = CurveComponent(
            rs, np.asarray(ch.thetas), np.asarray(ch.vals), np.asarray(ch.defs),
            censored_inner, censored_outer,
        )
        comps.append(_maybe_singleton(comp, base_gap_fn))
    order = np.argsort([c.min_modulus for c in comps], kind="stable")
    return [comps[i] for i in order]


def _maybe_singleton(comp: CurveComponent, base_gap_fn) -> CurveComponent:
    if comp.censored_inner or comp.censored_outer:
        return comp
    extent = comp.max_modulus - comp.min_modulus
    core = comp.deficits <= CORE_FLOOR
    single = len(comp.radii) == 1 or extent <= 0.5 * base_gap_fn(comp.min_modulus)
    collapsed = False
    if not single and np.any(core):
        core_extent = float(comp.radii[core].max() - comp.radii[core].min())
        collapsed = core_extent <= extent / 3.0
    if not (single or collapsed):
        return comp
    k = int(np.argmin(comp.deficits))
    return CurveComponent(
        comp.radii[k : k + 1], comp.angles[k : k + 1],
        comp.values[k : k + 1], comp.deficits[k : k + 1],
        False, False, is_singleton=True,
        singleton_resolution=max(extent, base_gap_fn(comp.min_modulus)),
    )


def _sharpen_singleton(p, comp, window, tie_rel):
    """Re-localize a singleton by minimizing its branch deficit over the
    tie-smeared span; the touch radius is far sharper than any sample."""
    if not comp.is_singleton:
        return comp
    r0, th0 = float(comp.radii[0]), float(comp.angles[0])
    half = comp.singleton_resolution
    lo = max(window.r_min, r0 - half)
    hi = min(window.r_max, r0 + half)
    if hi <= lo:
        return comp
    res = minimize_scalar(
        lambda rr: _branch_deficit(p, float(rr), th0, tie_rel)[0],
        bounds=(lo, hi), method="bounded",
        options={"xatol": 1e-11 * max(1.0, r0), "maxiter": 60},
    )
    if not (res.fun <= TOUCH_FLOOR):
        return comp
    r_star = float(res.x)
    d_star, th_star = _branch_deficit(p, r_star, th0, tie_rel)
    scan = scan_circles(p, [r_star], tie_rel=tie_rel)[0]
    k = int(np.argmin([_circ_dist(t, th_star) for t in scan.stat_angles]))
    return CurveComponent(
        [r_star], [float(scan.stat_angles[k])], [float(scan.stat_values[k])],
        [max(d_star, 0.0)], False, False, is_singleton=True,
        singleton_resolution=comp.singleton_resolution,
    )


def trace(
    p: Polynomial,
    window: AnnulusWindow,
    *,
    tie_rel: float = VALUE_TIE_REL,
    watch_rel: float = WATCH_REL,
    chain_constant: float = CHAIN_CONSTANT,
    refine_levels: int = _REFINE_LEVELS,
    refine_factor: int = _REFINE_FACTOR,
    max_dip_searches: int = _MAX_DIP_SEARCHES,
) -> MaxModSet:
    """Trace the maximum modulus set of ``p`` over the window.

    Monomials are rejected (their maximum modulus set is the whole
    plane).  The returned components are sorted by inner radius.
    """
    if p.is_zero or p.is_monomial:
        raise ValueError("monomial (or zero) polynomial: maximum modulus set is the plane")

    radii = list(window.radii())
    scans: dict[float, CircleScan] = {}
    _scan_missing(p, radii, scans, tie_rel)
    tol_fn = _chain_tol_fn(window, chain_constant)

    _refine_endpoints(p, radii, scans, window, tie_rel, tol_fn,
                      refine_factor, refine_levels)
    touches = _dip_radii(p, radii, scans, tie_rel, watch_rel, tol_fn,
                         max_dip_searches)
    fresh = [t for t in touches if t not in scans and window.r_min < t < window.r_max]
    if fresh:
        _scan_missing(p, fresh, scans, tie_rel)
        for t in fresh:
            if t not in radii:
                insort(radii, t)
        _refine_endpoints(p, radii, scans, window, tie_rel, tol_fn,
                          refine_factor, refine_levels)

    chains, full_circle = _chain_points(radii, scans, window.r_min, window.r_max,
                                        tol_fn)
    comps = _classify(chains, window, window.base_gap)
    comps = [_sharpen_singleton(p, c, window, tie_rel) for c in comps]
    return MaxModSet(window, tuple(comps), np.asarray(full_circle))


def detect_discontinuities(s: MaxModSet) -> list[Discontinuity]:
    """Components whose inner endpoint lies strictly inside the traced
    region (including singletons), one record each, sorted by modulus."""
    out = []
    for idx, comp in enumerate(s.components):
        if comp.censored_inner or comp.min_modulus <= 0:
            continue
        out.append(
            Discontinuity(comp.min_modulus, idx, (comp.min_modulus, float(comp.angles[0])))
        )
    out.sort(key=lambda d: (d.modulus, d.component_index))
    return out


def detect_singletons(s: MaxModSet) -> list[tuple[float, float]]:
    """Locations (r, theta) of all single-point components."""
    return [
        (comp.min_modulus, float(comp.angles[0]))
        for comp in s.components
        if comp.is_singleton
    ]


def _map_component_inward(comp: CurveComponent, degree: int) -> CurveComponent:
    """Pull a component of the reciprocal polynomial back through
    w -> 1/w: radii invert (order reverses), angles negate, and values
    rescale by r**degree."""
    rs = 1.0 / comp.radii[::-1]
    ths = -comp.angles[::-1]
    vals = comp.values[::-1] * rs**degree
    defs = comp.deficits[::-1]
    return CurveComponent(
        rs, ths, vals, defs,
        censored_inner=comp.censored_outer, censored_outer=comp.censored_inner,
        is_singleton=comp.is_singleton,
        singleton_resolution=comp.singleton_resolution,
    )


def global_max_mod_set(
    p: Polynomial,
    r_split: float = 1.0,
    *,
    steps: int = 2000,
    inner_rel: float = 1e-3,
    tie_rel: float = VALUE_TIE_REL,
    **trace_kwargs,
) -> MaxModSet:
    """The maximum modulus set of ``p`` over three decades of radius on
    each side of ``r_split``.

    Traces ``p`` on (eps, r_split] and the reciprocal polynomial on the
    mirrored window, maps the latter through w -> 1/w, and stitches
    components across the split radius.  Components reaching down to the
    inner cutoff stand in for the component of the origin.
    """
    if r_split <= 0:
        raise ValueError("r_split must be positive")
    if p.is_zero or p.is_monomial:
        raise ValueError("monomial (or zero) polynomial: maximum modulus set is the plane")

    q = reciprocal(p)
    inner_window = AnnulusWindow(inner_rel * r_split, r_split, steps, "geometric")
    outer_window = AnnulusWindow(inner_rel / r_split, 1.0 / r_split, steps, "geometric")
    inner = trace(p, inner_window, tie_rel=tie_rel, **trace_kwargs)
    outer = trace(q, outer_window, tie_rel=tie_rel, **trace_kwargs)

    mapped = [_map_component_inward(c, p.degree) for c in outer.components]
    merged = _stitch(list(inner.components), mapped, r_split)

    full_window = AnnulusWindow(inner_window.r_min, 1.0 / outer_window.r_min,
                                steps, "geometric")
    # components stitched across the split lose their boundary censoring,
    # so a singleton sitting at the split radius is only visible now
    final = []
    for c in merged:
        if not c.is_singleton:
            c = _maybe_singleton(c, full_window.base_gap)
            if c.is_singleton:
                c = _sharpen_singleton(p, c, full_window, tie_rel)
        final.append(c)
    return MaxModSet(full_window, tuple(final),
                     np.concatenate([inner.full_circle_radii,
                                     1.0 / outer.full_circle_radii[::-1]]))


def global_discontinuities(
    p: Polynomial,
    r_split: float = 1.0,
    **kwargs,
) -> list[Discontinuity]:
    """Discontinuities of the full maximum modulus set of ``p``; see
    ``global_max_mod_set`` for the windowing."""
    return detect_discontinuities(global_max_mod_set(p, r_split, **kwargs))


def _stitch(inner_comps, mapped_comps, r_split):
    """Join components meeting at the split radius when their angles
    agree; censoring at the split is resolved by the partner side."""
    tol = CHAIN_ABS_MIN
    eps = 1e-9 * r_split
    merged = []
    used = [False] * len(mapped_comps)
    for comp in inner_comps:
        if comp.max_modulus >= r_split - eps and not comp.is_singleton:
            best, bdist = None, 10 * tol
            for j, mc in enumerate(mapped_comps):
                if used[j] or mc.is_singleton or mc.min_modulus > r_split + eps:
                    continue
                dist = _circ_dist(comp.angles[-1], mc.angles[0])
                if dist < bdist:
                    best, bdist = j, dist
            if best is not None:
                mc = mapped_comps[best]
                used[best] = True
                skip = 1 if abs(mc.radii[0] - comp.radii[-1]) <= eps else 0
                merged.append(
                    CurveComponent(
                        np.concatenate([comp.radii, mc.radii[skip:]]),
                        np.concatenate([comp.angles, mc.angles[skip:]]),
                        np.concatenate([comp.values, mc.values[skip:]]),
                        np.concatenate([comp.deficits, mc.deficits[skip:]]),
                        comp.censored_inner, mc.censored_outer,
                    )
                )
                continue
        merged.append(comp)
    merged.extend(mc for j, mc in enumerate(mapped_comps) if not used[j])
    merged.sort(key=lambda c: c.min_modulus)
    return merged


def write_csv(s: MaxModSet, path) -> None:
    """Emit the traced set as CSV, one row per point, components in
    order and points by radius."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow([
            "component_id", "r", "theta", "x", "y", "modulus_value",
            "censored_inner", "censored_outer", "is_singleton",
        ])
        for idx, comp in enumerate(s.components):
            for r, th, v in zip(comp.radii, comp.angles, comp.values):
                w.writerow([
                    idx, repr(float(r)), repr(float(th)),
                    repr(float(r * np.cos(th))), repr(float(r * np.sin(th))),
                    repr(float(v)),
                    int(comp.censored_inner), int(comp.censored_outer),
                    int(comp.is_singleton),
                ])
