"""Search with half-plane hints: configurations, the eight elementary
transformations, rectangle reduction and the linear-cost hunt.

A configuration is a straight rectangle with a half-plane hint whose boundary
passes through the rectangle's center. Every configuration is carried by a
quarter-turn rotation (optionally followed by a reflection in the vertical
axis through the center) to a *basic* one: lying, type 1. Reductions are
computed in that basic frame and mapped back.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .errors import CaseDispatchGap, NoBasicTransform, PreconditionViolated
from .geom import (
    EPS,
    HalfPlane,
    Line,
    Point,
    Rect,
    StraightRect,
    dist,
    line_intersection,
    project_point_line,
)
from .scan import rectangle_scan
from .simulator import Episode, Halted, HuntReport

MIN_SIDE = 4.0

# 2x2 integer matrices (a, b, c, d) acting on offsets from the center
_ROT = [(1, 0, 0, 1), (0, -1, 1, 0), (-1, 0, 0, -1), (0, 1, -1, 0)]
_FLIP = (-1, 0, 0, 1)


def _matmul(m, n):
    a, b, c, d = m
    e, f, g, h = n
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


@dataclass(frozen=True)
class Configuration:
    rect: StraightRect
    hint: HalfPlane

    def __post_init__(self):
        c = self.rect.center
        scale = max(1.0, abs(c.x), abs(c.y), self.rect.width, self.rect.height)
        if abs(self.hint.boundary.signed_distance(c)) > 1e3 * EPS * scale:
            raise PreconditionViolated("hint boundary must pass through the rectangle center")


@dataclass(frozen=True)
class ConfigClass:
    posture: str  # "lying" | "standing"
    perfection: str  # "perfect" | "imperfect"
    type_id: int
    critical: bool

    @property
    def basic(self) -> bool:
        return self.posture == "lying" and self.type_id == 1


class QuarterMap:
    """Elementary transformation phi_k about ``center``.

    k in 0..3 rotates counterclockwise by k quarter turns; k in 4..7 rotates
    by k - 4 quarter turns and then reflects in the vertical line through
    ``center``.
    """

    def __init__(self, k: int, center: Point):
        if not 0 <= k <= 7:
            raise ValueError("transform index must be in 0..7")
        self.k = k
        self.center = center
        m = _ROT[k % 4]
        self.m = _matmul(_FLIP, m) if k >= 4 else m
        a, b, c, d = self.m
        self.mt = (a, c, b, d)  # orthogonal, inverse is the transpose

    @staticmethod
    def _lin(m, v) -> Point:
        a, b, c, d = m
        return Point(a * v[0] + b * v[1], c * v[0] + d * v[1])

    def vec(self, v) -> Point:
        return self._lin(self.m, v)

    def inv_vec(self, v) -> Point:
        return self._lin(self.mt, v)

    def __call__(self, p) -> Point:
        return self.center + self._lin(self.m, (p[0] - self.center.x, p[1] - self.center.y))

    def inverse(self, p) -> Point:
        return self.center + self._lin(self.mt, (p[0] - self.center.x, p[1] - self.center.y))

    def rect(self, r: StraightRect) -> StraightRect:
        return StraightRect.from_corners(self(r.A), self(r.C))

    def inverse_rect(self, r: StraightRect) -> StraightRect:
        return StraightRect.from_corners(self.inverse(r.A), self.inverse(r.C))

    def halfplane(self, h: HalfPlane, through=None) -> HalfPlane:
        base = h.boundary.anchor if through is None else through
        return HalfPlane.from_normal(self(base), self.vec(h.normal))

    def configuration(self, cfg: Configuration) -> Configuration:
        return Configuration(self.rect(cfg.rect), self.halfplane(cfg.hint, cfg.rect.center))


def classify(cfg: Configuration) -> ConfigClass:
    r = cfg.rect
    line = cfg.hint.boundary
    side = cfg.hint.side
    d = line.direction
    hw, hh = r.width / 2, r.height / 2
    horizontal, vertical = line.is_horizontal(), line.is_vertical()
    # a line through the center and a corner also meets the opposite corner;
    # corner incidence is counted as lying so that a basic image always exists
    lying = (not vertical) and (horizontal or abs(hw * d.y) <= hh * abs(d.x) + EPS * max(hh, 1.0))
    if horizontal:
        smaller = hh
    elif vertical:
        smaller = hw
    elif lying:
        smaller = hh - hw * abs(d.y / d.x)
    else:
        smaller = hw - hh * abs(d.x / d.y)
    critical = smaller < 1.0 - EPS
    if horizontal or vertical:
        if lying:
            type_id = 1 if side == "up" else 2
        else:
            type_id = 1 if side == "left" else 2
        return ConfigClass("lying" if lying else "standing", "perfect", type_id, critical)
    negative = d.x * d.y < 0
    if negative:
        type_id = 1 if side == "right" else 2
    else:
        type_id = 3 if side == "right" else 4
    return ConfigClass("lying" if lying else "standing", "imperfect", type_id, critical)


def basic_transformation(cfg: Configuration):
    """Smallest k for which phi_k(cfg) is basic: returns (k, image, map)."""
    for k in range(8):
        fmap = QuarterMap(k, cfg.rect.center)
        image = fmap.configuration(cfg)
        if classify(image).basic:
            return k, image, fmap
    raise NoBasicTransform(f"no elementary transformation makes {cfg} basic")


def _cw_between(theta: float, start: float, stop: float, tol: float = EPS) -> bool:
    """Line angle ``theta`` lies clockwise from ``start`` (incl.) to ``stop`` (excl.)."""
    span = (start - stop) % math.pi
    off = (start - theta) % math.pi
    if off > math.pi - tol:
        off = 0.0
    return off < span


@dataclass
class ReduceStep:
    rect_in: StraightRect
    rect_out: StraightRect
    transform: int
    critical: bool
    case: int  # 0 for the non-critical branch, 1..6 otherwise
    travel: float
    scans: int = 0


def reduce_rectangle(ep: Episode, rect: StraightRect, trace: Optional[list] = None) -> StraightRect:
    """Shrink ``rect`` using one or two hints; leaves the agent at the new center.

    The returned rectangle lies inside ``rect``, has a perimeter smaller by at
    least 2, and contains the treasure unless the treasure was seen during
    the call. Detection raises ``Halted``.
    """
    if rect.min_side < MIN_SIDE - EPS:
        raise PreconditionViolated(f"rectangle side below {MIN_SIDE}: {rect}")
    p = rect.center
    scale = max(1.0, abs(p.x), abs(p.y), rect.width, rect.height)
    if dist(ep.position, p) > 1e3 * EPS * scale:
        raise PreconditionViolated("agent is not at the rectangle center")
    cost0 = ep.ledger.total
    h1 = ep.get_hint().as_halfplane()
    k, image, fmap = basic_transformation(Configuration(rect, h1))
    R, H1 = image.rect, image.hint
    cls = classify(image)
    west, east, south, north = R.west, R.east, R.south, R.north
    L1 = H1.boundary
    d = line_intersection(L1, Line.make((east, 0.0), math.pi / 2))
    scans = 0
    if not cls.critical:
        case = 0
        new = StraightRect(west, east, d.y, north)  # ABde
    else:
        n = H1.normal
        pp = p + n * 2.0  # p'
        L1b = Line.make(pp, L1.angle)  # L1''
        f_x = line_intersection(L1b, Line.make((0.0, north), 0.0)).x
        j_y = line_intersection(L1b, Line.make((east, 0.0), math.pi / 2)).y
        A = Point(west, north)
        s, s2 = project_point_line(A, L1), project_point_line(A, L1b)
        d2 = project_point_line(d, L1b)
        strip = Rect.from_corners([fmap.inverse(q) for q in (s, s2, d2, d)])  # ss'd'd
        band = fmap.inverse_rect(StraightRect(west, east, p.y, pp.y))  # m'k'km
        column = fmap.inverse_rect(StraightRect(p.x, pp.x, south, north))  # gg'h'h

        ep.go(fmap.inverse(pp))
        H2 = fmap.halfplane(ep.get_hint().as_halfplane(), pp)
        t2, x2 = H2.boundary.angle, H2.side
        a_L1b = L1.angle
        a_pp = Line.through(p, pp).angle
        a_mk = 0.0
        a_gh = math.pi / 2
        a_pk = Line.through(pp, Point(east, p.y)).angle

        if x2 == "right" and _cw_between(t2, a_L1b, a_pp):
            case = 1
            # fBCt; when f falls east of g the dropped strip is not covered by
            # the two hints, so fall back to gBCh
            new = StraightRect(min(f_x, p.x), east, south, north)
        elif x2 == "right" and _cw_between(t2, a_pp, a_mk):
            case = 2
            rectangle_scan(ep, band)
            scans = 1
            new = StraightRect(p.x, east, south, north)  # gBCh
        elif x2 in ("down", "left") and _cw_between(t2, a_mk, a_L1b):
            case = 3
            rectangle_scan(ep, strip)
            rectangle_scan(ep, band)
            scans = 2
            new = StraightRect(p.x, east, south, p.y)  # pkCh
        elif x2 == "left" and _cw_between(t2, a_L1b, a_gh):
            case = 4
            rectangle_scan(ep, strip)
            rectangle_scan(ep, column)
            scans = 2
            new = StraightRect(west, p.x, p.y, north)  # Agpm
        elif (
            (x2 == "left" and _cw_between(t2, a_gh, a_pp))
            or (x2 == "left" and _cw_between(t2, a_pp, a_mk))
            or (x2 in ("up", "right") and _cw_between(t2, a_mk, a_pk))
        ):
            case = 5
            rectangle_scan(ep, column)
            scans = 1
            new = StraightRect(west, east, p.y, north)  # ABkm
        elif x2 == "right" and _cw_between(t2, a_pk, a_L1b):
            case = 6
            new = StraightRect(west, east, j_y, north)  # ABjj'
        else:
            raise CaseDispatchGap(f"second hint ({t2}, {x2}) matched no case")
    ep.go(fmap.inverse(new.center))
    out = fmap.inverse_rect(new)
    if trace is not None:
        trace.append(ReduceStep(rect, out, k, cls.critical, case, ep.ledger.total - cost0, scans))
    return out


def treasure_hunt_halfplane(ep: Episode, max_phase: int = 40, trace: Optional[list] = None) -> HuntReport:
    """Phases i = 1, 2, ...: reduce the square of side 2^i around the start
    until some side is below 4, scan what is left, return to the start."""
    ep.algorithm = ep.algorithm or "hunt1"
    origin = ep.start
    phases: list = []
    ep.meta["phases"] = phases
    if ep.found:
        return HuntReport(True, ep.cost, phases, ep.status)
    for i in range(1, max_phase + 1):
        start_cost = ep.ledger.total
        info = {"phase": i, "side": 2.0**i, "reductions": 0, "cost": 0.0, "cases": {}}
        phases.append(info)
        steps: list = []
        try:
            R = StraightRect.square(origin, 2.0**i)
            while R.min_side >= MIN_SIDE - EPS:
                R = reduce_rectangle(ep, R, steps)
            rectangle_scan(ep, R)
            ep.go(origin)
        except Halted:
            return HuntReport(ep.found, ep.cost, phases, ep.status)
        finally:
            info["reductions"] = len(steps)
            for st in steps:
                key = str(st.case)
                info["cases"][key] = info["cases"].get(key, 0) + 1
            info["cost"] = ep.ledger.total - start_cost
            if trace is not None:
                trace.extend(steps)
    ep.status = "gave_up"
    return HuntReport(False, ep.cost, phases, ep.status)

