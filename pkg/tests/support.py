"""Shared test helpers: scripted oracles and brute-force oracles."""

import math

import numpy as np

from angular_hunt.geom import Point
from angular_hunt.hints import HalfPlaneAdversary


class ScriptedHalfPlanes:
    """Honest half-plane oracle whose boundary angles are fixed in advance;
    the side is always the one holding the treasure."""

    def __init__(self, treasure, angles):
        self.treasure = Point(*treasure)
        self.angles = list(angles)
        self.calls = 0

    def hint(self, pos):
        theta = self.angles[min(self.calls, len(self.angles) - 1)]
        self.calls += 1
        return HalfPlaneAdversary(self.treasure, "fixed", theta=theta).hint(pos)


def dense_first_contact(a, b, z, samples=10**7, radius=1.0):
    """Arc length along [a, b] of the first of ``samples`` evenly spaced
    points within ``radius`` of ``z``, or None."""
    a, b, z = (np.asarray(v, float) for v in (a, b, z))
    length = float(np.hypot(*(b - a)))
    chunk = 10**6
    for s in range(0, samples, chunk):
        t = np.arange(s, min(samples, s + chunk)) / (samples - 1)
        pts = a + t[:, None] * (b - a)
        hit = np.flatnonzero(np.hypot(pts[:, 0] - z[0], pts[:, 1] - z[1]) <= radius)
        if hit.size:
            return float(t[hit[0]]) * length
    return None


def grid_uncovered(west, east, south, north, waypoints, pitch=0.05, radius=1.0 + 1e-6):
    """Grid points of the rectangle farther than ``radius`` from the polyline.

    Each segment only tests the grid points inside its bounding box grown by
    ``radius``, so long paths over large rectangles stay cheap.
    """
    xs = np.arange(west, east + 1e-12, pitch)
    ys = np.arange(south, north + 1e-12, pitch)
    covered = np.zeros((len(ys), len(xs)), dtype=bool)
    w = np.asarray(waypoints, float)
    r2 = radius * radius
    for a, b in zip(w[:-1], w[1:]) if len(w) > 1 else [(w[0], w[0])]:
        lo, hi = np.minimum(a, b) - radius, np.maximum(a, b) + radius
        c0, c1 = np.searchsorted(xs, lo[0]), np.searchsorted(xs, hi[0], side="right")
        r0, r1 = np.searchsorted(ys, lo[1]), np.searchsorted(ys, hi[1], side="right")
        if c0 >= c1 or r0 >= r1:
            continue
        gx, gy = np.meshgrid(xs[c0:c1], ys[r0:r1])
        px, py = gx - a[0], gy - a[1]
        ab = b - a
        l2 = float(ab @ ab)
        t = np.zeros_like(px) if l2 == 0 else np.clip((px * ab[0] + py * ab[1]) / l2, 0, 1)
        dx, dy = px - t * ab[0], py - t * ab[1]
        covered[r0:r1, c0:c1] |= dx * dx + dy * dy <= r2
    gy, gx = np.nonzero(~covered)
    return np.column_stack([xs[gx], ys[gy]])


def cw_offset(start, p, vertex=(0.0, 0.0)):
    """Clockwise angular offset of the direction vertex->p from ``start``,
    in [0, 2pi), by counting quarter-turn rotations of the probe before the
    remaining angle is measured with acos (no atan2 differencing)."""
    dx, dy = p[0] - vertex[0], p[1] - vertex[1]
    sx, sy = math.cos(start), math.sin(start)
    quarters = 0
    # rotate the probe counterclockwise until it lies within the quarter just
    # clockwise of the start ray
    for _ in range(4):
        cross = sx * dy - sy * dx  # > 0: probe counterclockwise of start
        dot = sx * dx + sy * dy
        if cross <= 0 and dot > 0:
            break
        dx, dy = -dy, dx
        quarters += 1
    r = math.hypot(dx, dy)
    inner = math.acos(max(-1.0, min(1.0, (sx * dx + sy * dy) / r)))
    return (inner + quarters * math.pi / 2) % (2 * math.pi)
