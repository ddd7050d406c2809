"""
SVG rendering of traced CSV output.

The renderer draws only what the CSV says: component polylines in the
plane, circled markers for singletons, filled markers at the inner
endpoints of uncensored components, plus axes and dashed circles at the
discontinuity moduli.  Nothing is recomputed.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass


@dataclass
class _Comp:
    points: list[tuple[float, float]]
    radii: list[float]
    censored_inner: bool
    censored_outer: bool
    is_singleton: bool


def _read_components(csv_path) -> dict[int, _Comp]:
    comps: dict[int, _Comp] = {}
    with open(csv_path) as fh:
        for row in csv.DictReader(fh):
            cid = int(row["component_id"])
            comp = comps.get(cid)
            if comp is None:
                comp = _Comp([], [], row["censored_inner"] == "1",
                             row["censored_outer"] == "1",
                             row["is_singleton"] == "1")
                comps[cid] = comp
            comp.points.append((float(row["x"]), float(row["y"])))
            comp.radii.append(float(row["r"]))
    return comps


def _fmt(v: float) -> str:
    return f"{v:.6g}"


def render_csv(csv_path, svg_path, *, size: int = 640) -> None:
    """Write an SVG rendering of a trace CSV."""
    comps = _read_components(csv_path)
    if not comps:
        raise ValueError(f"no points in {csv_path}")

    lim = 1.08 * max(
        max(max(abs(x), abs(y)) for x, y in c.points) for c in comps.values()
    )
    # flip y so the picture uses mathematical orientation
    def pt(x, y):
        return f"{_fmt(x)},{_fmt(-y)}"

    sw = lim / 240.0
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="{_fmt(-lim)} {_fmt(-lim)} {_fmt(2 * lim)} {_fmt(2 * lim)}">',
        f'<rect x="{_fmt(-lim)}" y="{_fmt(-lim)}" width="{_fmt(2 * lim)}" '
        f'height="{_fmt(2 * lim)}" fill="white"/>',
        f'<line x1="{_fmt(-lim)}" y1="0" x2="{_fmt(lim)}" y2="0" '
        f'stroke="#bbbbbb" stroke-width="{_fmt(sw / 2)}"/>',
        f'<line x1="0" y1="{_fmt(-lim)}" x2="0" y2="{_fmt(lim)}" '
        f'stroke="#bbbbbb" stroke-width="{_fmt(sw / 2)}"/>',
    ]

    # dashed circles at the discontinuity moduli
    moduli: list[float] = []
    for comp in comps.values():
        if not comp.censored_inner and comp.radii:
            m = min(comp.radii)
            if all(abs(m - x) > 1e-6 * max(m, 1.0) for x in moduli):
                moduli.append(m)
    for m in sorted(moduli):
        parts.append(
            f'<circle cx="0" cy="0" r="{_fmt(m)}" fill="none" stroke="#999999" '
            f'stroke-width="{_fmt(sw / 2)}" stroke-dasharray="{_fmt(4 * sw)}"/>'
        )

    for cid in sorted(comps):
        comp = comps[cid]
        if comp.is_singleton or len(comp.points) == 1:
            continue
        coords = " ".join(pt(x, y) for x, y in comp.points)
        parts.append(
            f'<polyline points="{coords}" fill="none" stroke="#1f77b4" '
            f'stroke-width="{_fmt(sw)}"/>'
        )

    # inner endpoints of uncensored arcs: filled markers
    for cid in sorted(comps):
        comp = comps[cid]
        if comp.censored_inner or comp.is_singleton:
            continue
        i = min(range(len(comp.radii)), key=lambda k: comp.radii[k])
        x, y = comp.points[i]
        parts.append(
            f'<circle cx="{_fmt(x)}" cy="{_fmt(-y)}" r="{_fmt(2.2 * sw)}" '
            f'fill="#d62728" class="discontinuity"/>'
        )

    # singletons: circled markers
    for cid in sorted(comps):
        comp = comps[cid]
        if not comp.is_singleton:
            continue
        x, y = comp.points[0]
        parts.append(
            f'<circle cx="{_fmt(x)}" cy="{_fmt(-y)}" r="{_fmt(4 * sw)}" fill="none" '
            f'stroke="#d62728" stroke-width="{_fmt(sw)}" class="singleton"/>'
        )
        parts.append(
            f'<circle cx="{_fmt(x)}" cy="{_fmt(-y)}" r="{_fmt(1.4 * sw)}" '
            f'fill="#d62728"/>'
        )

    parts.append("</svg>")
    with open(svg_path, "w") as fh:
        fh.write("\n".join(parts))
        fh.write("\n")
