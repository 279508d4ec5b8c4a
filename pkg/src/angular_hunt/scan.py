"""Snake traversal of a closed rectangle at unit column spacing.

The agent goes to the north-west corner, sweeps columns one unit apart
along the long side, then returns to where it started. Every point of the
rectangle comes within distance 1 of the path; the cost is at most
``5 n max(m, 2)`` for sides ``n >= m``. Hints are not consulted.
"""

from __future__ import annotations

import math

from .errors import StartOutsideRectangle
from .geom import EPS, Point, Rect, StraightRect

COMPLETED = "completed"


def _frame(rect: Rect):
    """Local frame (origin, ex, ey, m, n) with the long side along ey."""
    u, v = rect.u, rect.v
    if rect.half_v >= rect.half_u:
        return rect.center, u, v, 2 * rect.half_u, 2 * rect.half_v
    return rect.center, Point(-v.x, -v.y), u, 2 * rect.half_v, 2 * rect.half_u


def scan_plan(rect, start) -> list:
    """Waypoints visited by the scan, ending back at ``start``."""
    if isinstance(rect, StraightRect):
        rect = rect.as_rect()
    o, ex, ey, m, n = _frame(rect)

    def at(x, y):
        return Point(o.x + ex.x * x + ey.x * y, o.y + ex.y * x + ey.y * y)

    k = math.floor(m)
    left, top, bottom = -m / 2, n / 2, -n / 2
    a = [at(left + i, top) for i in range(k + 1)]
    b = [at(left + i, bottom) for i in range(k + 1)]
    plan = []
    if k % 2 == 1:
        for i in range(0, k, 2):
            plan += [a[i], b[i], b[i + 1], a[i + 1]]
    else:
        for i in range(0, k - 1, 2):
            plan += [a[i], b[i], b[i + 1], a[i + 1]]
        plan += [a[k], b[k]]
    plan.append(Point(start[0], start[1]))
    return plan


def scan_cost_bound(rect) -> float:
    if isinstance(rect, StraightRect):
        rect = rect.as_rect()
    n = 2 * max(rect.half_u, rect.half_v)
    m = 2 * min(rect.half_u, rect.half_v)
    return 5 * n * max(m, 2.0)


def rectangle_scan(ep, rect) -> str:
    """Run the scan from the agent's current position, which must lie in ``rect``.

    Detection interrupts the scan by raising ``Halted`` from the episode.
    """
    r = rect.as_rect() if isinstance(rect, StraightRect) else rect
    tol = EPS * max(1.0, abs(r.center.x), abs(r.center.y), r.half_u, r.half_v)
    if not r.contains(ep.position, tol):
        raise StartOutsideRectangle(f"agent at {ep.position} is outside {rect}")
    for p in scan_plan(r, ep.position):
        ep.go(p)
    return COMPLETED
