"""Episode engine: straight moves, hint queries, cost ledger and detection.

Detection is continuous along each segment: the treasure is found at the
earliest point of the trajectory within distance 1 of it.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from typing import Any, NamedTuple, Optional

from .errors import MoveAfterFound, OracleDishonest
from .geom import EPS, ORIGIN, AngularHint, Point, check_point, dist

DETECTION_RADIUS = 1.0
SCHEMA_VERSION = 1

ARRIVED = "arrived"
FOUND = "found"
BUDGET_EXCEEDED = "budget_exceeded"


class MoveOutcome(NamedTuple):
    status: str
    cost: Optional[float] = None  # detection cost for FOUND


class Halted(Exception):
    """Raised by ``Episode.go`` once the episode cannot continue."""

    def __init__(self, outcome: MoveOutcome):
        super().__init__(outcome.status)
        self.outcome = outcome


def first_contact(a, b, z, radius: float = DETECTION_RADIUS + EPS) -> Optional[float]:
    """Smallest t in [0, 1] with |a + t(b - a) - z| <= radius, or None."""
    dx, dy = b[0] - a[0], b[1] - a[1]
    wx, wy = a[0] - z[0], a[1] - z[1]
    c = wx * wx + wy * wy - radius * radius
    if c <= 0.0:
        return 0.0
    aa = dx * dx + dy * dy
    if aa == 0.0:
        return None
    bb = wx * dx + wy * dy
    if bb >= 0.0:
        return None  # moving away from z
    disc = bb * bb - aa * c
    if disc < 0.0:
        return None
    # stable form of the smaller root (-bb - sqrt(disc)) / aa
    t = c / (-bb + math.sqrt(disc))
    return t if t <= 1.0 else None


@dataclass
class Trajectory:
    waypoints: list = field(default_factory=list)
    hint_events: list = field(default_factory=list)  # (waypoint index, AngularHint)

    def length(self) -> float:
        w = self.waypoints
        return math.fsum(dist(w[i], w[i + 1]) for i in range(len(w) - 1))


@dataclass
class CostLedger:
    total: float = 0.0
    cost_at_detection: Optional[float] = None


class Episode:
    """One run of an agent program against a hint oracle.

    ``treasure`` may be None for deferred-treasure runs, in which case nothing
    is ever detected and honesty cannot be checked.
    """

    def __init__(self, treasure, oracle=None, budget: Optional[float] = None, start=ORIGIN,
                 check_honesty: bool = True, algorithm: str = ""):
        self.treasure = None if treasure is None else check_point(treasure)
        self.oracle = oracle
        self.budget = budget
        self.check_honesty = check_honesty
        self.algorithm = algorithm
        self.start = check_point(start)
        self.position = self.start
        self.trajectory = Trajectory([self.start], [])
        self.ledger = CostLedger()
        self.found = False
        self.status = "running"
        self.meta: dict[str, Any] = {}
        self._compensated = 0.0
        if self.treasure is not None and dist(self.start, self.treasure) <= DETECTION_RADIUS + EPS:
            self._mark_found(0.0)

    @property
    def over(self) -> bool:
        return self.status in (FOUND, BUDGET_EXCEEDED)

    def _mark_found(self, cost: float) -> None:
        self.found = True
        self.status = FOUND
        self.ledger.cost_at_detection = cost

    def _add(self, length: float) -> None:
        # Kahan summation keeps long runs additive to 1e-9
        y = length - self._compensated
        t = self.ledger.total + y
        self._compensated = (t - self.ledger.total) - y
        self.ledger.total = t

    def move_to(self, target) -> MoveOutcome:
        if self.found:
            raise MoveAfterFound("the treasure has already been found")
        if self.status == BUDGET_EXCEEDED:
            raise MoveAfterFound("the episode ran out of budget")
        target = check_point(target)
        a = self.position
        seg = dist(a, target)
        before = self.ledger.total
        t_hit = None if self.treasure is None else first_contact(a, target, self.treasure)
        if self.budget is not None and before + seg > self.budget:
            t_budget = (self.budget - before) / seg if seg > 0 else 1.0
            if t_hit is None or t_hit > t_budget:
                stop = a + (target - a) * t_budget
                self.trajectory.waypoints.append(stop)
                self._add(max(0.0, self.budget - before))
                self.position = stop
                self.status = BUDGET_EXCEEDED
                return MoveOutcome(BUDGET_EXCEEDED)
        self.trajectory.waypoints.append(target)
        self._add(seg)
        self.position = target
        if t_hit is not None:
            self._mark_found(before + t_hit * seg)
            return MoveOutcome(FOUND, self.ledger.cost_at_detection)
        return MoveOutcome(ARRIVED)

    def go(self, target) -> None:
        """Move, raising ``Halted`` if the move found the treasure or hit the budget."""
        out = self.move_to(target)
        if out.status != ARRIVED:
            raise Halted(out)

    def get_hint(self) -> AngularHint:
        if self.over:
            raise MoveAfterFound("no hints after the episode ended")
        reply = self.oracle.hint(self.position)
        if self.check_honesty and self.treasure is not None and not reply.contains_or_vertex(self.treasure):
            raise OracleDishonest(f"hint at {self.position} excludes the treasure")
        self.trajectory.hint_events.append((len(self.trajectory.waypoints) - 1, reply))
        return reply

    @property
    def cost(self) -> float:
        """Cost charged to the algorithm: detection cost if found, else total."""
        if self.ledger.cost_at_detection is not None:
            return self.ledger.cost_at_detection
        return self.ledger.total


def move_to(ep: Episode, target) -> MoveOutcome:
    return ep.move_to(target)


def get_hint(ep: Episode) -> AngularHint:
    return ep.get_hint()


@dataclass
class HuntReport:
    found: bool
    cost: float
    phases: list = field(default_factory=list)
    status: str = ""


# ---------------------------------------------------------------- export


@dataclass
class EpisodeRecord:
    algorithm: str
    oracle: dict
    treasure: Optional[list]
    waypoints: list
    hints: list
    cost: float
    found: bool
    status: str
    phases: list = field(default_factory=list)
    cost_at_detection: Optional[float] = None
    mosaic_reports: Optional[list] = None
    area_report: Optional[dict] = None
    schema: int = SCHEMA_VERSION

    def to_dict(self) -> dict:
        d = asdict(self)
        for key in ("cost_at_detection", "mosaic_reports", "area_report"):
            if d[key] is None:
                del d[key]
        return d

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @staticmethod
    def from_dict(d: dict) -> "EpisodeRecord":
        if d.get("schema") != SCHEMA_VERSION:
            raise ValueError(f"unsupported episode schema {d.get('schema')!r}")
        return EpisodeRecord(**d)

    @staticmethod
    def from_json(text: str) -> "EpisodeRecord":
        return EpisodeRecord.from_dict(json.loads(text))


def export_episode(ep: Episode) -> EpisodeRecord:
    oracle = ep.oracle.descriptor() if ep.oracle is not None and hasattr(ep.oracle, "descriptor") else {"kind": "none"}
    hints = [
        {"at": idx, "vertex": [h.vertex.x, h.vertex.y], "p1_angle": h.p1_angle, "p2_angle": h.p2_angle}
        for idx, h in ep.trajectory.hint_events
    ]
    return EpisodeRecord(
        algorithm=ep.algorithm,
        oracle=oracle,
        treasure=None if ep.treasure is None else [ep.treasure.x, ep.treasure.y],
        waypoints=[[p.x, p.y] for p in ep.trajectory.waypoints],
        hints=hints,
        cost=ep.ledger.total,
        found=ep.found,
        status=ep.status,
        phases=list(ep.meta.get("phases", [])),
        cost_at_detection=ep.ledger.cost_at_detection,
        mosaic_reports=_plain(ep.meta.get("mosaic_reports")),
        area_report=ep.meta.get("area_report"),
    )


def _plain(reports):
    if reports is None:
        return None
    return [r.to_dict() if hasattr(r, "to_dict") else r for r in reports]


def import_episode(data) -> EpisodeRecord:
    if isinstance(data, str):
        return EpisodeRecord.from_json(data)
    return EpisodeRecord.from_dict(data)


def record_length(record: EpisodeRecord) -> float:
    w = record.waypoints
    return math.fsum(math.hypot(w[i + 1][0] - w[i][0], w[i + 1][1] - w[i][1]) for i in range(len(w) - 1))


def replay_detection(waypoints, treasure, radius: float = DETECTION_RADIUS + EPS):
    """Recompute (found, detection cost) for a polyline, independently of Episode."""
    acc = 0.0
    for i in range(len(waypoints) - 1):
        a, b = waypoints[i], waypoints[i + 1]
        t = first_contact(a, b, treasure, radius)
        if t is not None:
            return True, acc + t * dist(a, b)
        acc += dist(a, b)
    if len(waypoints) == 1 and dist(waypoints[0], treasure) <= radius:
        return True, 0.0
    return False, None

