"""Hint oracles.

Every oracle answers ``hint(position) -> AngularHint`` and knows where the
treasure is (except the forbidden-angle adversary, whose treasure is placed
after the walk). Replies are honest: the returned closed angle contains the
treasure.
"""

from __future__ import annotations

import math
import random

import numpy as np

from .geom import (
    EPS,
    ORIGIN,
    TAU,
    AngularHint,
    HalfPlane,
    Point,
    check_point,
    direction,
    dist,
    wrap_angle,
)

_STRATEGY_ALIASES = {
    "perp": "perpendicular_worst",
    "perpendicular_worst": "perpendicular_worst",
    "random": "random_honest",
    "random_honest": "random_honest",
    "fixed": "fixed_direction",
    "fixed_direction": "fixed_direction",
    "edge": "edge_worst",
    "edge_worst": "edge_worst",
}


def _strategy(name: str, allowed) -> str:
    try:
        s = _STRATEGY_ALIASES[name]
    except KeyError:
        raise ValueError(f"unknown strategy {name!r}") from None
    if s not in allowed:
        raise ValueError(f"strategy {name!r} not available here (choose from {sorted(allowed)})")
    return s


class HalfPlaneAdversary:
    """Emits size-pi hints whose boundary passes through the query point.

    Strategies:
      * ``perpendicular_worst``: boundary perpendicular to the direction of the
        treasure (a heuristic worst case, not a proven one).
      * ``random_honest``: uniformly random boundary direction, side chosen to
        keep the treasure.
      * ``fixed_direction``: boundary always at angle ``theta``.
    """

    kind = "halfplane"

    def __init__(self, treasure, strategy: str = "perpendicular_worst", seed: int = 0, theta: float = 0.0):
        self.treasure = check_point(treasure)
        self.strategy = _strategy(strategy, {"perpendicular_worst", "random_honest", "fixed_direction"})
        self.seed = seed
        self.theta = theta
        self._rng = random.Random(seed)

    def _oriented(self, pos: Point, theta: float) -> HalfPlane:
        n = direction(theta + math.pi / 2)
        if (self.treasure - pos).dot(n) < 0.0:
            n = -n
        return HalfPlane.from_normal(pos, n)

    def query_halfplane(self, pos) -> HalfPlane:
        pos = check_point(pos)
        if self.strategy == "random_honest":
            theta = self._rng.uniform(0.0, math.pi)
            if dist(pos, self.treasure) <= EPS:
                return HalfPlane.from_normal(pos, (0.0, 1.0))
            return self._oriented(pos, theta)
        if dist(pos, self.treasure) <= EPS:
            return HalfPlane.from_normal(pos, (0.0, 1.0))
        if self.strategy == "perpendicular_worst":
            return HalfPlane.from_normal(pos, self.treasure - pos)
        return self._oriented(pos, self.theta)

    def hint(self, pos) -> AngularHint:
        pos = check_point(pos)
        return self.query_halfplane(pos).as_hint(pos)

    def descriptor(self) -> dict:
        d = {"kind": self.kind, "strategy": self.strategy, "seed": self.seed}
        if self.strategy == "fixed_direction":
            d["theta"] = self.theta
        return d


def query_halfplane(adv: HalfPlaneAdversary, pos) -> HalfPlane:
    return adv.query_halfplane(pos)


class BoundedAngleAdversary:
    """Emits hints of size exactly ``beta`` (pi < beta < 2pi).

    ``edge_worst`` puts the treasure on the first ray; ``random_honest``
    rotates the angle uniformly among placements that keep the treasure.
    """

    kind = "bounded"

    def __init__(self, treasure, beta: float, strategy: str = "edge_worst", seed: int = 0):
        if not (math.pi < beta < TAU):
            raise ValueError(f"beta must lie in (pi, 2pi), got {beta}")
        self.treasure = check_point(treasure)
        self.beta = beta
        self.strategy = _strategy(strategy, {"edge_worst", "random_honest"})
        self.seed = seed
        self._rng = random.Random(seed)

    def hint(self, pos) -> AngularHint:
        pos = check_point(pos)
        u = self._rng.random() if self.strategy == "random_honest" else 0.0
        if dist(pos, self.treasure) <= EPS:
            return AngularHint(pos, 0.0, self.beta)
        toward = (self.treasure - pos).angle()
        return AngularHint(pos, wrap_angle(toward + u * self.beta), self.beta)

    def descriptor(self) -> dict:
        return {"kind": self.kind, "beta": self.beta, "strategy": self.strategy, "seed": self.seed}


def query_bounded(adv: BoundedAngleAdversary, pos) -> AngularHint:
    return adv.hint(pos)


MIN_FORBIDDEN = 1e-12


class ForbiddenAngleAdversary:
    """Lower-bound adversary with a deferred treasure.

    The i-th reply excludes a wedge (the *forbidden angle*) of size 2^-i.
    Outside the disc of radius ``disc_radius`` the wedge points straight away
    from the disc and misses it. Inside, the wedge is aimed greedily at the
    direction that excludes the most not-yet-excluded disc area, estimated on
    a fixed cloud of ``n_samples`` points.
    """

    kind = "forbidden"

    def __init__(self, disc_radius: float, center=ORIGIN, n_directions: int = 256, n_samples: int = 4096, seed: int = 0):
        if disc_radius <= 0:
            raise ValueError("disc radius must be positive")
        self.disc_radius = float(disc_radius)
        self.center = check_point(center)
        self.call_count = 0
        self.treasure = None
        self.seed = seed
        self.n_directions = n_directions
        self.history: list[AngularHint] = []
        rng = np.random.default_rng(seed)
        r = self.disc_radius * np.sqrt(rng.random(n_samples))
        t = rng.random(n_samples) * TAU
        self._cloud = np.column_stack([self.center.x + r * np.cos(t), self.center.y + r * np.sin(t)])
        self._excluded = np.zeros(n_samples, dtype=bool)

    def forbidden_size(self, i: int) -> float:
        # floored so that 2pi minus the wedge stays distinguishable from 2pi
        return max(2.0 ** (-i), MIN_FORBIDDEN)

    def _aim_inside(self, pos: Point, alpha: float) -> float:
        rel = self._cloud - np.array([pos.x, pos.y])
        far = np.hypot(rel[:, 0], rel[:, 1]) > EPS
        live = far & ~self._excluded
        ang = np.arctan2(rel[live, 1], rel[live, 0])
        cands = np.arange(self.n_directions) * (TAU / self.n_directions)
        # wrapped angular offset of every live sample from every candidate axis
        off = np.abs((ang[None, :] - cands[:, None] + math.pi) % TAU - math.pi)
        counts = (off <= alpha / 2).sum(axis=1)
        return float(cands[int(np.argmax(counts))])

    def hint(self, pos) -> AngularHint:
        pos = check_point(pos)
        self.call_count += 1
        alpha = self.forbidden_size(self.call_count)
        if dist(pos, self.center) > self.disc_radius:
            axis = (pos - self.center).angle()
        else:
            axis = self._aim_inside(pos, alpha)
        reply = AngularHint(pos, wrap_angle(axis - alpha / 2), TAU - alpha)
        rel = self._cloud - np.array([pos.x, pos.y])
        ang = np.arctan2(rel[:, 1], rel[:, 0])
        off = np.abs((ang - axis + math.pi) % TAU - math.pi)
        self._excluded |= (off < alpha / 2) & (np.hypot(rel[:, 0], rel[:, 1]) > EPS)
        self.history.append(reply)
        return reply

    def place_treasure(self, point) -> None:
        self.treasure = check_point(point)

    def descriptor(self) -> dict:
        return {"kind": self.kind, "disc_radius": self.disc_radius, "strategy": "greedy", "seed": self.seed}


def query_forbidden(adv: ForbiddenAngleAdversary, pos) -> AngularHint:
    return adv.hint(pos)
