"""SVG rendering of an exported episode record."""

from __future__ import annotations

import math

from .geom import TAU

SIZE = 800
MARGIN = 20
WEDGE_RADIUS_FRACTION = 0.04


def _bbox(record: dict):
    xs = [p[0] for p in record["waypoints"]]
    ys = [p[1] for p in record["waypoints"]]
    if record.get("treasure"):
        xs += [record["treasure"][0] - 1, record["treasure"][0] + 1]
        ys += [record["treasure"][1] - 1, record["treasure"][1] + 1]
    for rep in record.get("mosaic_reports") or []:
        o, h = rep.get("origin") or [0.0, 0.0], 2.0 ** rep["i"] / 2
        xs += [o[0] - h, o[0] + h]
        ys += [o[1] - h, o[1] + h]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    span = max(x1 - x0, y1 - y0, 1e-9)
    return x0, y0, span


def render_svg(record: dict) -> str:
    """An SVG string with painted tiles, hint wedges, the trajectory and the treasure disc."""
    x0, y0, span = _bbox(record)
    scale = (SIZE - 2 * MARGIN) / span

    def sx(x):
        return MARGIN + (x - x0) * scale

    def sy(y):
        return SIZE - MARGIN - (y - y0) * scale

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
        f'<rect width="{SIZE}" height="{SIZE}" fill="white"/>',
    ]
    reports = record.get("mosaic_reports") or []
    if reports:
        last = reports[-1]
        o = last.get("origin") or [0.0, 0.0]
        side = 2.0 ** last["i"]
        for level, col, row in last.get("black_tiles") or []:
            s = side / (1 << level)
            w, so = o[0] - side / 2 + col * s, o[1] - side / 2 + row * s
            out.append(
                f'<rect x="{sx(w):.3f}" y="{sy(so + s):.3f}" width="{s * scale:.3f}" '
                f'height="{s * scale:.3f}" fill="#333" fill-opacity="0.6"/>'
            )
    r = WEDGE_RADIUS_FRACTION * span
    for h in record.get("hints", []):
        vx, vy = h["vertex"]
        start, stop = h["p1_angle"], h["p2_angle"]
        sweep = (start - stop) % TAU or TAU
        # excluded wedge: counterclockwise from p1 to p2
        a0, a1 = start, start + (TAU - sweep)
        large = 1 if (a1 - a0) > math.pi else 0
        p0 = (sx(vx + r * math.cos(a0)), sy(vy + r * math.sin(a0)))
        p1 = (sx(vx + r * math.cos(a1)), sy(vy + r * math.sin(a1)))
        out.append(
            f'<path d="M {sx(vx):.3f} {sy(vy):.3f} L {p0[0]:.3f} {p0[1]:.3f} '
            f'A {r * scale:.3f} {r * scale:.3f} 0 {large} 0 {p1[0]:.3f} {p1[1]:.3f} Z" '
            f'fill="#d62728" fill-opacity="0.25" stroke="none"/>'
        )
    pts = " ".join(f"{sx(p[0]):.3f},{sy(p[1]):.3f}" for p in record["waypoints"])
    out.append(f'<polyline points="{pts}" fill="none" stroke="#1f77b4" stroke-width="1"/>')
    if record.get("treasure"):
        tx, ty = record["treasure"]
        out.append(
            f'<circle cx="{sx(tx):.3f}" cy="{sy(ty):.3f}" r="{scale:.3f}" fill="#2ca02c" fill-opacity="0.5"/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
