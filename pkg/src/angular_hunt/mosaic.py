"""Painting search for hints of bounded size: the quadtree canvas, one Mosaic
call over a square of side 2^i, and the hunt that repeats it with growing i."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from .errors import LevelOverflow, OracleDishonest, PaintGap, TileBudgetExceeded
from .geom import EPS, TAU, StraightRect
from .scan import rectangle_scan
from .simulator import Episode, Halted, HuntReport
from .tiling import TileAddress, empirical_index, excluded_mask, index_of, tile_corner_array

WHITE = "white"
BLACK = "black"
MIXED = "mixed"

DEFAULT_TILE_BUDGET = 4**10
BLACK_TILE_RECORD_LIMIT = 20_000


class PaintState:
    """Black/white quadtree over a square. Leaves are ``WHITE`` or ``BLACK``;
    an internal node is a list of four children indexed by ``2*row_bit + col_bit``.
    Four black children collapse into a black leaf."""

    def __init__(self, base: StraightRect, max_level: int):
        self.base = base
        self.max_level = max_level
        self.root = WHITE

    def paint_black(self, t: TileAddress) -> None:
        if t.level > self.max_level:
            raise LevelOverflow(f"tile level {t.level} exceeds canvas depth {self.max_level}")
        self.root = self._paint(self.root, t.level, t.col, t.row)

    def _paint(self, node, depth_left, col, row):
        if node == BLACK:
            return BLACK
        if depth_left == 0:
            return BLACK
        if node == WHITE:
            node = [WHITE, WHITE, WHITE, WHITE]
        bit = depth_left - 1
        idx = 2 * ((row >> bit) & 1) + ((col >> bit) & 1)
        node[idx] = self._paint(node[idx], depth_left - 1, col, row)
        if all(c == BLACK for c in node):
            return BLACK
        return node

    def state(self, t: TileAddress) -> str:
        node = self.root
        for bit in range(t.level - 1, -1, -1):
            if not isinstance(node, list):
                return node
            node = node[2 * ((t.row >> bit) & 1) + ((t.col >> bit) & 1)]
        return node if not isinstance(node, list) else MIXED

    def white_area(self) -> float:
        side = self.base.width
        total = 0.0
        stack = [(self.root, 0)]
        while stack:
            node, d = stack.pop()
            if node == WHITE:
                total += (side / (1 << d)) ** 2
            elif isinstance(node, list):
                stack.extend((c, d + 1) for c in node)
        return total

    def _leaves(self, colour):
        """(depth, col, row) of every leaf of the given colour."""
        out = []
        stack = [(self.root, 0, 0, 0)]
        while stack:
            node, d, c, r = stack.pop()
            if isinstance(node, list):
                for idx, child in enumerate(node):
                    stack.append((child, d + 1, 2 * c + (idx & 1), 2 * r + (idx >> 1)))
            elif node == colour:
                out.append((d, c, r))
        return out

    def mixed_depth(self) -> int:
        """Largest depth of an internal node, or -1 if the tree is a single leaf."""
        deepest = -1
        stack = [(self.root, 0)]
        while stack:
            node, d = stack.pop()
            if isinstance(node, list):
                deepest = max(deepest, d)
                stack.extend((c, d + 1) for c in node)
        return deepest

    def white_tiles(self, level: int) -> list:
        """White tiles of Tiling(level) in row-major order."""
        cells = []
        for d, c, r in self._leaves(WHITE):
            if d > level:
                continue  # lies inside a mixed tile of this level
            m = 1 << (level - d)
            for rr in range(r * m, (r + 1) * m):
                for cc in range(c * m, (c + 1) * m):
                    cells.append((rr, cc))
        cells.sort()
        return [TileAddress(level, cc, rr, self.base) for rr, cc in cells]

    def black_tiles(self) -> list:
        return sorted(self._leaves(BLACK))


def paint_black(ps: PaintState, t: TileAddress) -> None:
    ps.paint_black(t)


def passes_for(i: int, k: int) -> int:
    """Number of painting passes: ceil(log base 4^k of sqrt(2^i)) = ceil(i / 4k)."""
    return -(-i // (4 * k))


def mosaic_cost_bound(i: int, k: int) -> float:
    q = 4.0**k
    return 2.0 ** (i * (3 + math.log(q - 1, q)) / 2 + 2 * k + 8) if k > 0 else math.inf


def white_area_bound(i: int, k: int) -> float:
    q = 4.0**k
    return 2.0 ** (i * (3 + math.log(q - 1, q)) / 2)


@dataclass
class MosaicReport:
    i: int
    k: int
    index_max: int
    white_area: float
    tiles_painted: list = field(default_factory=list)
    white_area_per_pass: list = field(default_factory=list)
    cost: float = 0.0
    gaps: list = field(default_factory=list)
    scanned_tiles: int = 0
    completed: bool = False
    black_tiles: Optional[list] = None
    origin: Optional[list] = None

    def to_dict(self) -> dict:
        return asdict(self)


def _hint_index(sweep: float, mode: str, trials: int) -> int:
    if mode == "paper":
        return index_of(TAU - sweep)
    return empirical_index(sweep, trials)


def mosaic(ep: Episode, i: int, k: int, index_mode: str = "empirical",
           tile_budget: int = DEFAULT_TILE_BUDGET, trials: int = 200) -> MosaicReport:
    """One Mosaic call from the agent's position; returns the report (``index_max``
    is the value handed back to the outer loop). Detection raises ``Halted``."""
    if i < 1 or k < 1:
        raise ValueError("Mosaic needs i >= 1 and k >= 1")
    if index_mode not in ("empirical", "paper"):
        raise ValueError(f"unknown index mode {index_mode!r}")
    n_pass = passes_for(i, k)
    finest = n_pass * k
    if finest > 60 or 4**finest > tile_budget:
        raise TileBudgetExceeded(f"Tiling({finest}) has 4^{finest} tiles, budget is {tile_budget}")
    origin = ep.position
    square = StraightRect.square(origin, 2.0**i)
    canvas = PaintState(square, finest)
    report = MosaicReport(i, k, k, canvas.white_area(), origin=[origin.x, origin.y])
    ep.meta.setdefault("mosaic_reports", []).append(report)
    cost0 = ep.ledger.total
    index_max = k
    try:
        for j in range(1, n_pass + 1):
            level = (j - 1) * k
            painted = 0
            for t in canvas.white_tiles(level):
                ep.go(t.center)
                hint = ep.get_hint()
                index_max = max(index_max, _hint_index(hint.sweep, index_mode, trials))
                if index_max != k:
                    continue
                sub = _sub_corners(t, k)
                mask = excluded_mask(sub, hint, EPS * t.side / (1 << k))
                if not mask.any():
                    if index_mode == "paper":
                        raise PaintGap(f"no tile of Tiling({k}) fits outside the hint at {t.center}")
                    report.gaps.append({"pass": j, "tile": [t.level, t.col, t.row], "sweep": hint.sweep})
                    index_max = k + 1
                    continue
                for idx in np.flatnonzero(mask):
                    child = TileAddress(level + k, t.col * (1 << k) + int(idx) % (1 << k),
                                        t.row * (1 << k) + int(idx) // (1 << k), square)
                    if ep.treasure is not None and child.rect.contains(ep.treasure, 0.0):
                        raise OracleDishonest(f"painting {child} would exclude the treasure")
                    canvas.paint_black(child)
                    painted += 1
            report.tiles_painted.append(painted)
            report.white_area_per_pass.append(canvas.white_area())
            if canvas.mixed_depth() >= j * k:
                raise AssertionError(f"mixed tile at depth {canvas.mixed_depth()} after pass {j}")
        report.index_max = index_max
        if index_max == k:
            for t in canvas.white_tiles(finest):
                ep.go(t.center)
                rectangle_scan(ep, t.rect)
                report.scanned_tiles += 1
        ep.go(origin)
        report.completed = True
    finally:
        report.index_max = index_max
        report.white_area = canvas.white_area()
        report.cost = ep.ledger.total - cost0
        blacks = canvas.black_tiles()
        if len(blacks) <= BLACK_TILE_RECORD_LIMIT:
            report.black_tiles = [list(b) for b in blacks]
    return report


def _sub_corners(t: TileAddress, k: int) -> np.ndarray:
    """Corners of the 4^k tiles of Tiling(k) of ``t``, row-major inside ``t``."""
    return tile_corner_array(t.rect, k)


def treasure_hunt_bounded(ep: Episode, index_mode: str = "empirical", max_i: int = 40,
                          tile_budget: int = DEFAULT_TILE_BUDGET, trials: int = 200) -> HuntReport:
    """Mosaic over squares of side 2^i, i = 1, 2, ...; for each i repeat with the
    returned index until it stops changing."""
    ep.algorithm = ep.algorithm or "hunt2"
    phases: list = []
    ep.meta["phases"] = phases
    if ep.found:
        return HuntReport(True, ep.cost, phases, ep.status)
    index_new = 1
    try:
        for i in range(1, max_i + 1):
            info = {"phase": i, "indices": [], "cost": 0.0}
            phases.append(info)
            start = ep.ledger.total
            try:
                while True:
                    index_old = index_new
                    index_new = mosaic(ep, i, index_old, index_mode, tile_budget, trials).index_max
                    info["indices"].append(index_new)
                    if index_new == index_old:
                        break
            finally:
                info["cost"] = ep.ledger.total - start
    except Halted:
        return HuntReport(ep.found, ep.cost, phases, ep.status)
    ep.status = "gave_up"
    return HuntReport(False, ep.cost, phases, ep.status)
