"""Tilings and slicings of a square, the slicing ratio constant and tiling indices.

``Tiling(level)`` splits a square into ``4**level`` closed tiles addressed by
(col, row), col counted from the west and row from the south. ``Slicing(i)``
cuts it into ``2**i`` triangles meeting at the center, one cut horizontal.

Two indices are provided. ``index_of`` is the analytical tiling depth that is
guaranteed to contain a tile inside any excluded wedge of a given size; it is
sound but far too deep to enumerate. ``empirical_index`` finds the smallest
depth that works for a given hint size, certified exactly through angular
intervals of tiles.
"""

from __future__ import annotations

import bisect
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import GuardExceeded, InvalidGeometry, NoFeasibleIndex
from .geom import EPS, TAU, AngularHint, Point, StraightRect, direction

RHO_GUARD = 24
EMPIRICAL_MAX_LEVEL = 12
SWEEP_ORIENTATIONS = 10_000
ANGULAR_MARGIN = 1e-6

UNIT_SQUARE = StraightRect(-0.5, 0.5, -0.5, 0.5)


def _ceil_tol(x: float, tol: float = 1e-9) -> int:
    r = round(x)
    if abs(x - r) <= tol:
        return int(r)
    return math.ceil(x)


# ---------------------------------------------------------------- tiles


@dataclass(frozen=True)
class TileAddress:
    level: int
    col: int
    row: int
    base: StraightRect

    def __post_init__(self):
        n = 1 << self.level
        if self.level < 0 or not (0 <= self.col < n and 0 <= self.row < n):
            raise InvalidGeometry(f"tile address out of range: {self.level}, {self.col}, {self.row}")
        if abs(self.base.width - self.base.height) > EPS * max(1.0, self.base.width):
            raise InvalidGeometry("tiling base must be a square")

    @property
    def side(self) -> float:
        return self.base.width / (1 << self.level)

    @property
    def rect(self) -> StraightRect:
        s = self.side
        w = self.base.west + self.col * s
        so = self.base.south + self.row * s
        return StraightRect(w, w + s, so, so + s)

    @property
    def center(self) -> Point:
        return self.rect.center

    def corners(self) -> tuple:
        return self.rect.corners()

    def children(self, depth: int = 1) -> list:
        """Tiles ``depth`` levels finer inside this one, row-major."""
        m = 1 << depth
        return [
            TileAddress(self.level + depth, self.col * m + c, self.row * m + r, self.base)
            for r in range(m)
            for c in range(m)
        ]

    def ancestor(self, level: int) -> "TileAddress":
        shift = self.level - level
        if shift < 0:
            raise InvalidGeometry("ancestor level is finer than the tile")
        return TileAddress(level, self.col >> shift, self.row >> shift, self.base)


def tiling(base: StraightRect, level: int) -> list:
    n = 1 << level
    return [TileAddress(level, c, r, base) for r in range(n) for c in range(n)]


def locate(base: StraightRect, level: int, p) -> TileAddress:
    """A tile of the given level containing ``p`` (the lowest-index one on shared borders)."""
    n = 1 << level
    s = base.width / n
    c = min(n - 1, max(0, math.floor((p[0] - base.west) / s)))
    r = min(n - 1, max(0, math.floor((p[1] - base.south) / s)))
    return TileAddress(level, c, r, base)


def tile_corner_array(base: StraightRect, level: int, cols=None, rows=None) -> np.ndarray:
    """Corners of the selected tiles as an ``(n, 4, 2)`` array."""
    n = 1 << level
    s = base.width / n
    if cols is None:
        rr, cc = np.divmod(np.arange(n * n), n)
    else:
        cc, rr = np.asarray(cols), np.asarray(rows)
    w = base.west + cc * s
    so = base.south + rr * s
    xs = np.stack([w, w + s, w + s, w], axis=1)
    ys = np.stack([so + s, so + s, so, so], axis=1)
    return np.stack([xs, ys], axis=2)


# ---------------------------------------------------------------- slicing


def _ray_exit(center: Point, half: float, theta: float) -> Point:
    """Where the ray from the center leaves the square, placed exactly on the
    side it crosses (and exactly on the corner for diagonal rays)."""
    d = direction(theta)

    def snap(v):
        return math.copysign(half, v) if abs(abs(v) - half) <= 1e-12 * half else v

    if abs(d.x) >= abs(d.y):
        sx = math.copysign(half, d.x)
        return Point(center.x + sx, center.y + snap(sx * d.y / d.x))
    sy = math.copysign(half, d.y)
    return Point(center.x + snap(sy * d.x / d.y), center.y + sy)


@dataclass(frozen=True)
class SlicingTriangle:
    base_square: StraightRect
    slices: int
    sector: int

    def __post_init__(self):
        if self.slices < 3:
            raise InvalidGeometry("slicings start at 3")
        if not 0 <= self.sector < (1 << self.slices):
            raise InvalidGeometry("sector out of range")

    @property
    def width(self) -> float:
        return TAU / (1 << self.slices)

    @property
    def angles(self) -> tuple:
        w = self.width
        return self.sector * w, (self.sector + 1) * w

    def vertices(self) -> tuple:
        c = self.base_square.center
        h = self.base_square.width / 2
        a0, a1 = self.angles
        return c, _ray_exit(c, h, a0), _ray_exit(c, h, a1)

    def side_lengths(self) -> tuple:
        q, u, v = self.vertices()
        return (q - u).norm(), (v - u).norm(), (q - v).norm()

    def contains(self, p, strict: bool = False, tol: float = EPS) -> bool:
        q, u, v = self.vertices()
        p = Point(p[0], p[1])
        s = ((u - q).cross(p - q), (v - u).cross(p - u), (q - v).cross(p - v))
        if strict:
            return all(x > tol for x in s)
        return all(x >= -tol for x in s)

    def base_side(self) -> str:
        """Side of the square holding the triangle's outer edge."""
        mid = (self.angles[0] + self.angles[1]) / 2
        octant = int(mid // (math.pi / 4)) % 8
        return ("east", "north", "north", "west", "west", "south", "south", "east")[octant]


def slicing(base: StraightRect, i: int) -> list:
    return [SlicingTriangle(base, i, s) for s in range(1 << i)]


@lru_cache(maxsize=None)
def rho(i: int) -> int:
    """Largest ceil(a / b) over side lengths a, b of the triangles of Slicing(i)."""
    if i < 3:
        raise InvalidGeometry("rho is defined for i >= 3")
    if i > RHO_GUARD:
        raise GuardExceeded(f"rho({i}) would enumerate 2^{i} triangles; guard is {RHO_GUARD}")
    lengths = [x for t in slicing(UNIT_SQUARE, i) for x in t.side_lengths()]
    return _ceil_tol(max(lengths) / min(lengths))


def phi(i: int) -> int:
    return i * rho(i)


def slicing_level(alpha: float) -> int:
    if not 0.0 < alpha < TAU:
        raise InvalidGeometry(f"angle must lie in (0, 2pi), got {alpha}")
    return max(3, _ceil_tol(math.log2(TAU / alpha)) + 1)


def index_of(alpha: float) -> int:
    """Tiling depth guaranteeing a tile inside any excluded wedge of size ``alpha``."""
    return 4 * phi(slicing_level(alpha))


def psi(beta: float) -> int:
    """Index of the smallest excluded wedge left by hints of size at most ``beta``."""
    return index_of(TAU - beta)


def epsilon_exponent(index: int) -> float:
    """Gap below 2 in the cost exponent for a given index, computed without cancellation."""
    if index < 1:
        raise InvalidGeometry("index must be positive")
    return -0.5 * math.log1p(-(4.0 ** -index)) / (index * math.log(4.0))


def slicing_witness(alpha: float, start: float) -> SlicingTriangle:
    """A triangle of the slicing prescribed for ``alpha`` lying inside the wedge
    swept counterclockwise from ``start`` by ``alpha`` at the center."""
    i = slicing_level(alpha)
    w = TAU / (1 << i)
    m = math.ceil(((start % TAU) - 1e-12) / w)
    return SlicingTriangle(UNIT_SQUARE, i, m % (1 << i))


def interior_tile_witness(tri: SlicingTriangle) -> TileAddress:
    """A tile of Tiling(4 phi(i)) in the interior of ``tri``.

    Built from the row of coarser tiles along the square side that holds the
    triangle's outer edge: take the one under the edge's midpoint and step one
    fine tile inward from the side and from the tile's own edge.
    """
    level = 4 * phi(tri.slices)
    coarse = 1 << (level - 2)
    base = tri.base_square
    _, u, v = tri.vertices()
    # exact arithmetic: at this depth tiles are far below double resolution
    mid = [(Fraction(a) + Fraction(b)) / 2 for a, b in zip(u, v)]
    side = tri.base_side()
    s = Fraction(base.width) / coarse
    if side in ("north", "south"):
        c = min(coarse - 1, math.floor((mid[0] - Fraction(base.west)) / s))
        col = 4 * c + 1
        row = 1 if side == "south" else 4 * (coarse - 1) + 2
    else:
        r = min(coarse - 1, math.floor((mid[1] - Fraction(base.south)) / s))
        row = 4 * r + 1
        col = 1 if side == "west" else 4 * (coarse - 1) + 2
    return TileAddress(level, col, row, base)


def certify_interior(t: TileAddress, tri: SlicingTriangle) -> bool:
    """Exact rational check that all corners of ``t`` are strictly inside ``tri``.

    Tile corners are exact; the triangle's outer vertices are the floating
    point values converted exactly, so the answer is exact for that triangle.
    """
    n = 1 << t.level
    b = t.base
    west, south, width = Fraction(b.west), Fraction(b.south), Fraction(b.width)
    q, u, v = (tuple(map(Fraction, p)) for p in tri.vertices())

    def cross(o, a, p):
        return (a[0] - o[0]) * (p[1] - o[1]) - (a[1] - o[1]) * (p[0] - o[0])

    for dc, dr in ((0, 0), (1, 0), (1, 1), (0, 1)):
        p = (west + width * (t.col + dc) / n, south + width * (t.row + dr) / n)
        if not (cross(q, u, p) > 0 and cross(u, v, p) > 0 and cross(v, q, p) > 0):
            return False
    return True


# ---------------------------------------------------------------- excluded regions


@dataclass(frozen=True)
class Excluded:
    """The open complement of a hint: the wedge the treasure is known to avoid."""

    hint: AngularHint

    @property
    def size(self) -> float:
        return TAU - self.hint.sweep

    @property
    def low(self) -> float:
        """Counterclockwise-first boundary direction of the excluded wedge."""
        return self.hint.p1_angle


def excluded_mask(corners: np.ndarray, hint: AngularHint, margin: float) -> np.ndarray:
    """For each tile in ``corners`` (shape (n, 4, 2)), whether the closed tile
    lies in the open complement of ``hint`` by at least ``margin``."""
    v = hint.vertex
    rel = corners - np.array([v.x, v.y])
    alpha = TAU - hint.sweep
    lo = hint.p1_angle
    d_lo = np.array([math.cos(lo), math.sin(lo)])
    d_hi = np.array([math.cos(lo + alpha), math.sin(lo + alpha)])
    c_lo = d_lo[0] * rel[..., 1] - d_lo[1] * rel[..., 0]
    c_hi = rel[..., 0] * d_hi[1] - rel[..., 1] * d_hi[0]
    if alpha <= math.pi:
        return np.all((c_lo > margin) & (c_hi > margin), axis=1)
    # reflex complement: the hint is a convex wedge; look for a separating axis
    n = corners.shape[0]
    sep = np.zeros(n, dtype=bool)
    axes = [np.array([1.0, 0.0]), np.array([0.0, 1.0])]
    axes += [np.array([-d_lo[1], d_lo[0]]), np.array([-d_hi[1], d_hi[0]])]
    h_lo = lo - hint.sweep  # the hint spans [h_lo, lo] counterclockwise
    for ax in axes:
        for a in (ax, -ax):
            if not _wedge_reaches(a, h_lo, hint.sweep):
                sep |= (rel @ a).min(axis=1) > margin
    return sep


def _wedge_reaches(a: np.ndarray, start: float, span: float) -> bool:
    """Whether some direction in the arc [start, start + span] (span < pi) has
    positive dot product with ``a``."""
    ang = math.atan2(a[1], a[0])
    if (ang - start) % TAU <= span:
        return True
    return math.cos(start - ang) > 1e-12 or math.cos(start + span - ang) > 1e-12


def tile_in_region(t: TileAddress, region) -> bool:
    """Whether the closed tile lies in ``region`` (an ``Excluded`` wedge or the
    interior of a ``SlicingTriangle``)."""
    if isinstance(region, SlicingTriangle):
        return all(region.contains(p, strict=True) for p in t.corners())
    if isinstance(region, Excluded):
        arr = np.array([[list(p) for p in t.corners()]], dtype=float)
        return bool(excluded_mask(arr, region.hint, EPS * t.side)[0])
    raise TypeError(f"unsupported region {type(region).__name__}")


# ---------------------------------------------------------------- empirical index


def _level_intervals(level: int) -> tuple:
    """Pareto frontier of angular intervals of tiles of the unit square seen from
    its center, as sorted arrays (starts, ends); tiles touching the center are
    dropped since no excluded wedge can hold them."""
    n = 1 << level
    s = 1.0 / n
    best_a = np.empty(0)
    best_b = np.empty(0)
    cols = np.arange(n)
    for r in range(n):
        w = -0.5 + cols * s
        so = -0.5 + r * s
        xs = np.stack([w, w + s, w + s, w], axis=1)
        ys = np.array([so + s, so + s, so, so])[None, :].repeat(n, axis=0)
        touching = (xs.min(axis=1) <= 0.0) & (xs.max(axis=1) >= 0.0) & (so <= 0.0) & (so + s >= 0.0)
        cx, cy = w + s / 2, so + s / 2
        mid = np.arctan2(cy, cx)
        off = (np.arctan2(ys, xs) - mid[:, None] + math.pi) % TAU - math.pi
        a = (mid + off.min(axis=1)) % TAU
        b = a + (off.max(axis=1) - off.min(axis=1))
        keep = ~touching
        best_a, best_b = _frontier(np.concatenate([best_a, a[keep]]), np.concatenate([best_b, b[keep]]))
    return best_a, best_b


def _frontier(a: np.ndarray, b: np.ndarray) -> tuple:
    """Drop every interval containing another one (on the circle, via a doubled copy)."""
    if a.size == 0:
        return a, b
    order = np.lexsort((-b, a))
    a, b = a[order], b[order]
    # an interval is dominated if some later-starting interval ends no later;
    # the doubled copy handles intervals that wrap past 2pi
    a2 = np.concatenate([a, a + TAU])
    b2 = np.concatenate([b, b + TAU])
    suffix = np.minimum.accumulate(b2[::-1])[::-1]
    nxt = np.append(suffix[1:], np.inf)[: a.size]
    keep = b < nxt
    # equal intervals: keep one
    a, b = a[keep], b[keep]
    _, first = np.unique(np.round(a, 15), return_index=True)
    return a[first], b[first]


@lru_cache(maxsize=None)
def level_frontier(level: int) -> tuple:
    a, b = _level_intervals(level)
    return tuple(a.tolist()), tuple(b.tolist())


def has_excluded_tile(level: int, low: float, alpha: float, margin: float = ANGULAR_MARGIN) -> bool:
    """Whether some tile of the given level fits in the open wedge (low, low + alpha)."""
    a, b = level_frontier(level)
    if not a:
        return False
    low = low % TAU
    # starts and ends both increase along the frontier, so the first interval
    # starting after the wedge opens is the best candidate
    j = bisect.bisect_right(a, low + margin)
    end = b[j] if j < len(a) else b[0] + TAU
    return end < low + alpha - margin


def certify_level(level: int, alpha: float, margin: float = ANGULAR_MARGIN) -> bool:
    """Exact check over every wedge orientation.

    With the frontier sorted by start, the worst orientation opens just after
    some interval's start, and the best tile is then the next interval.
    """
    a, b = level_frontier(level)
    if not a:
        return False
    m = len(a)
    for j in range(m):
        nb = b[(j + 1) % m] + (TAU if j + 1 == m else 0.0)
        if nb - a[j] >= alpha - 2 * margin:
            return False
    return True


def _direct_check(level: int, sweep: float, low: float) -> bool:
    hint = AngularHint(Point(0.0, 0.0), low % TAU, sweep)
    corners = tile_corner_array(UNIT_SQUARE, level)
    return bool(excluded_mask(corners, hint, EPS / (1 << level)).any())


@lru_cache(maxsize=None)
def _empirical_index(sweep: float, trials: int, seed: int) -> int:
    alpha = TAU - sweep
    rng = random.Random(seed)
    for level in range(1, EMPIRICAL_MAX_LEVEL + 1):
        if not certify_level(level, alpha):
            continue
        a, _ = level_frontier(level)
        aligned = [x + d for x in a[: min(len(a), 64)] for d in (-ANGULAR_MARGIN, 0.0, ANGULAR_MARGIN)]
        sweep_ok = all(
            has_excluded_tile(level, TAU * s / SWEEP_ORIENTATIONS, alpha) for s in range(SWEEP_ORIENTATIONS)
        )
        lows = [rng.uniform(0.0, TAU) for _ in range(trials)] + aligned
        direct_ok = level > 6 or all(_direct_check(level, sweep, low) for low in lows)
        if sweep_ok and direct_ok:
            return level
    raise NoFeasibleIndex(f"no tiling level up to {EMPIRICAL_MAX_LEVEL} works for hint size {sweep}")


def empirical_index(beta: float, trials: int = 200, seed: int = 0) -> int:
    """Smallest level k at which every hint of size ``beta`` at a square's center
    leaves some tile of Tiling(k) inside its complement."""
    if not 0.0 < beta < TAU:
        raise InvalidGeometry(f"hint size must lie in (0, 2pi), got {beta}")
    return _empirical_index(float(beta), int(trials), int(seed))
