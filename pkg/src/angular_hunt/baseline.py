"""Hint-free square spiral, and the area audit behind the quadratic lower bound
for hints of unbounded size."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from .geom import ORIGIN, TAU, Point, check_point, dist_point_segment
from .hints import ForbiddenAngleAdversary
from .simulator import DETECTION_RADIUS, Episode, Halted, HuntReport

_HEADINGS = ((1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0))


def spiral_leg(m: int) -> float:
    """Length of the m-th leg (m >= 1): 1, 1, 2, 2, 3, 3, ..."""
    return float((m + 1) // 2)


def spiral_length(n_legs: int) -> float:
    """Total length of the first ``n_legs`` legs, in closed form."""
    q, odd = divmod(n_legs, 2)
    return float(q * (q + 1) + odd * (q + 1))


def legs_for_radius(radius: float) -> int:
    """Legs after which every point within ``radius`` of the start is within 1
    of the spiral: the ring at Chebyshev radius ceil(radius) must be closed."""
    r = max(1, math.ceil(radius))
    return 4 * r + 1


def _spiral_corners(n_legs: int, start):
    p = check_point(start)
    yield p
    for m in range(1, n_legs + 1):
        hx, hy = _HEADINGS[(m - 1) % 4]
        step = spiral_leg(m)
        p = Point(p.x + hx * step, p.y + hy * step)
        yield p


def spiral_waypoints(n_legs: int, start=ORIGIN) -> list:
    return list(_spiral_corners(n_legs, start))


def spiral_search(ep: Episode, max_legs: int = 1_000_000) -> HuntReport:
    """Walk the square spiral with ring gap 1 until detection; hints are ignored."""
    ep.algorithm = ep.algorithm or "spiral"
    if ep.found:
        return HuntReport(True, ep.cost, [], ep.status)
    try:
        corners = _spiral_corners(max_legs, ep.position)
        next(corners)
        for p in corners:
            ep.go(p)
    except Halted:
        return HuntReport(ep.found, ep.cost, [], ep.status)
    ep.status = "gave_up"
    return HuntReport(False, ep.cost, [], ep.status)


# ---------------------------------------------------------------- lower-bound audit


@dataclass
class AreaReport:
    disc_radius: float
    samples: int
    trajectory_length: float
    forbidden_area: float
    forbidden_bound: float
    near_area: float
    residual_area: float
    residual_guaranteed: float
    standard_error: float
    witness: Optional[list]
    certified: bool

    def to_dict(self) -> dict:
        return asdict(self)


def stratified_disc_samples(radius: float, n: int, seed: int = 0) -> np.ndarray:
    """About ``n`` points, one per equal-area polar cell of the disc, jittered
    uniformly inside its cell. Rows are ordered by (ring, sector)."""
    rings = max(1, int(round(math.sqrt(n))))
    sectors = max(1, n // rings)
    rng = np.random.default_rng(seed)
    ri = np.repeat(np.arange(rings), sectors)
    si = np.tile(np.arange(sectors), rings)
    u = (ri + rng.random(ri.size)) / rings
    r = radius * np.sqrt(u)
    t = (si + rng.random(si.size)) * (TAU / sectors)
    return np.column_stack([r * np.cos(t), r * np.sin(t)])


def forbidden_mask(points: np.ndarray, hints, chunk: int = 200_000) -> np.ndarray:
    """Points lying in the open complement of at least one hint."""
    out = np.zeros(len(points), dtype=bool)
    for h in hints:
        alpha = TAU - h.sweep
        lo = h.p1_angle
        for s in range(0, len(points), chunk):
            p = points[s : s + chunk]
            dx, dy = p[:, 0] - h.vertex.x, p[:, 1] - h.vertex.y
            off = (np.arctan2(dy, dx) - lo) % TAU
            away = np.hypot(dx, dy) > 0.0
            out[s : s + chunk] |= away & (off > 0.0) & (off < alpha)
    return out


def near_mask(points: np.ndarray, waypoints, radius: float = DETECTION_RADIUS, chunk: int = 200_000) -> np.ndarray:
    """Points within ``radius`` of the polyline."""
    w = np.asarray([[p[0], p[1]] for p in waypoints], dtype=float)
    out = np.zeros(len(points), dtype=bool)
    r2 = radius * radius
    for s in range(0, len(points), chunk):
        p = points[s : s + chunk]
        hit = ((p - w[0]) ** 2).sum(axis=1) <= r2
        for a, b in zip(w[:-1], w[1:]):
            ab = b - a
            l2 = float(ab @ ab)
            if l2 == 0.0:
                continue
            t = np.clip(((p - a) @ ab) / l2, 0.0, 1.0)
            q = a + t[:, None] * ab
            hit |= ((p - q) ** 2).sum(axis=1) <= r2
        out[s : s + chunk] = hit
    return out


def _is_forbidden(p: Point, hints) -> bool:
    for h in hints:
        alpha = TAU - h.sweep
        d = p - h.vertex
        if d.norm() == 0.0:
            continue
        off = (d.angle() - h.p1_angle) % TAU
        if 0.0 < off < alpha:
            return True
    return False


def forbidden_area_audit(disc_radius: float, hints, waypoints, samples: int = 1_000_000,
                         seed: int = 0) -> AreaReport:
    """Monte Carlo area accounting over the disc of radius ``disc_radius`` around
    the origin: area excluded by hints, area within 1 of the walk, and what
    remains; a remaining sample point is re-checked exactly and returned."""
    hints = list(hints)
    pts = stratified_disc_samples(disc_radius, samples, seed)
    n = len(pts)
    area = math.pi * disc_radius**2
    forb = forbidden_mask(pts, hints)
    near = near_mask(pts, waypoints)
    resid = ~forb & ~near
    frac = resid.mean()
    length = math.fsum(math.dist(waypoints[i], waypoints[i + 1]) for i in range(len(waypoints) - 1))
    witness = None
    for idx in np.flatnonzero(resid)[:64]:
        cand = Point(float(pts[idx, 0]), float(pts[idx, 1]))
        near_any = any(
            dist_point_segment(cand, waypoints[i], waypoints[i + 1]) <= DETECTION_RADIUS
            for i in range(len(waypoints) - 1)
        ) or (len(waypoints) == 1 and math.dist(cand, waypoints[0]) <= DETECTION_RADIUS)
        if not near_any and not _is_forbidden(cand, hints):
            witness = [cand.x, cand.y]
            break
    guaranteed = area - 2 * disc_radius**2 - (2 * length + math.pi)
    return AreaReport(
        disc_radius=disc_radius,
        samples=n,
        trajectory_length=length,
        forbidden_area=area * forb.mean(),
        forbidden_bound=2 * disc_radius**2,
        near_area=area * near.mean(),
        residual_area=area * frac,
        residual_guaranteed=guaranteed,
        standard_error=area * math.sqrt(max(frac * (1 - frac), 1.0 / n) / n),
        witness=witness,
        certified=witness is not None,
    )


def lower_bound_walk(disc_radius: float, length_budget: Optional[float] = None, seed: int = 0,
                     samples: int = 1_000_000, route=None):
    """Let an agent walk ``route`` (default: the square spiral from the origin)
    for at most ``length_budget`` (default D^2 / 2) against the forbidden-angle
    adversary, asking for a hint after every move, then audit the areas.

    Returns ``(episode, report)``; if a witness exists it is installed as the
    adversary's treasure, which is then honest for every hint and unseen.
    """
    budget = disc_radius**2 / 2 if length_budget is None else length_budget
    if route is None:
        route = spiral_waypoints(legs_for_radius(disc_radius + 2))
    route = [check_point(p) for p in route]
    adv = ForbiddenAngleAdversary(disc_radius, seed=seed)
    ep = Episode(None, adv, budget=budget, start=route[0], algorithm="walk_vs_forbidden")
    ep.get_hint()
    try:
        for p in route[1:]:
            ep.go(p)
            ep.get_hint()
    except Halted:
        pass
    report = forbidden_area_audit(disc_radius, adv.history, ep.trajectory.waypoints, samples, seed)
    if report.witness is not None:
        adv.place_treasure(report.witness)
    ep.meta["area_report"] = report.to_dict()
    return ep, report


def forbidden_hints_total(hints) -> float:
    return math.fsum(TAU - h.sweep for h in hints)


def all_hints_honest(hints, point) -> bool:
    p = check_point(point)
    return all(h.contains_or_vertex(p) for h in hints)

