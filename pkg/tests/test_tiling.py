import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from angular_hunt import tiling as tiling_module
from angular_hunt.errors import GuardExceeded, InvalidGeometry, NoFeasibleIndex
from angular_hunt.geom import EPS, TAU, AngularHint, Point, StraightRect
from angular_hunt.tiling import (
    UNIT_SQUARE,
    Excluded,
    TileAddress,
    certify_interior,
    certify_level,
    empirical_index,
    epsilon_exponent,
    excluded_mask,
    has_excluded_tile,
    index_of,
    interior_tile_witness,
    level_frontier,
    locate,
    phi,
    psi,
    rho,
    slicing,
    slicing_witness,
    tile_corner_array,
    tile_in_region,
    tiling,
)


def side_ratio_oracle(i):
    """Largest ceil(a / b) over the triangle sides of the i-th slicing of the
    unit square, computed from the boundary exit points by hand."""
    def exit_point(theta):
        c, s = math.cos(theta), math.sin(theta)
        t = 0.5 / max(abs(c), abs(s))
        return (t * c, t * s)

    lengths = []
    for m in range(2**i):
        u = exit_point(m * TAU / 2**i)
        v = exit_point((m + 1) * TAU / 2**i)
        lengths += [math.hypot(*u), math.hypot(*v), math.dist(u, v)]
    ratio = max(lengths) / min(lengths)
    return round(ratio) if abs(ratio - round(ratio)) < 1e-9 else math.ceil(ratio)


# ---------------------------------------------------------------- tilings


def test_tiling_partitions_the_square_exactly():
    base = StraightRect(-8, 8, -8, 8)
    for level in range(4):
        tiles = tiling(base, level)
        assert len(tiles) == 4**level
        area = sum(Fraction(t.rect.width) * Fraction(t.rect.height) for t in tiles)
        assert area == 256
        seen = {(t.rect.west, t.rect.south) for t in tiles}
        assert len(seen) == len(tiles)


def test_children_partition_their_parent():
    base = StraightRect(0, 1, 0, 1)
    t = TileAddress(2, 1, 3, base)
    kids = t.children(2)
    assert len(kids) == 16
    assert all(k.ancestor(2) == t for k in kids)
    assert min(k.rect.west for k in kids) == t.rect.west
    assert max(k.rect.north for k in kids) == t.rect.north


def test_locate_and_corner_array_agree():
    base = StraightRect(-4, 4, -4, 4)
    t = locate(base, 3, (1.3, -2.7))
    assert t.rect.contains((1.3, -2.7))
    arr = tile_corner_array(base, 3)
    idx = t.row * 8 + t.col
    assert arr[idx].tolist() == [list(p) for p in t.corners()]


def test_bad_address_rejected():
    with pytest.raises(InvalidGeometry):
        TileAddress(1, 2, 0, UNIT_SQUARE)


# ---------------------------------------------------------------- slicings


@pytest.mark.parametrize("i", [3, 4, 5])
def test_slicing_partition(i):
    tris = slicing(UNIT_SQUARE, i)
    assert len(tris) == 2**i
    assert tris[0].angles[0] == 0.0  # one boundary is horizontal
    assert math.fsum(t.width for t in tris) == pytest.approx(TAU)
    area = math.fsum(abs((t.vertices()[1] - t.vertices()[0]).cross(t.vertices()[2] - t.vertices()[0])) / 2
                     for t in tris)
    assert area == pytest.approx(1.0, abs=1e-12)


def test_rho_three_matches_side_length_oracle():
    assert rho(3) == 2 == side_ratio_oracle(3)


def test_rho_regression_values_and_monotonicity():
    values = [rho(i) for i in range(3, 9)]
    assert values == [side_ratio_oracle(i) for i in range(3, 9)]
    assert rho(5) == 8
    assert values == sorted(values)


def test_rho_guard():
    with pytest.raises(GuardExceeded):
        rho(25)
    with pytest.raises(InvalidGeometry):
        rho(2)


def test_index_formula():
    assert phi(3) == 6
    assert index_of(math.pi) == 24
    assert index_of(math.pi / 2) == 24
    assert psi(1.5 * math.pi) == 24


def test_index_monotone_in_wedge_size():
    rng = random.Random(7)
    for _ in range(100):
        a, b = sorted(rng.uniform(1e-3, TAU - 1e-3) for _ in range(2))
        assert index_of(b) <= index_of(a)


def test_epsilon_exponent_positive():
    for index in range(1, 500):
        # 4^index - 1 < 4^index exactly, so the logarithm is below 1
        assert 4**index - 1 < 4**index
        assert epsilon_exponent(index) > 0.0
    assert epsilon_exponent(1) == pytest.approx(0.5 * (1 - math.log(3, 4)))


@pytest.mark.parametrize("i", [3, 4])
def test_interior_tile_witness_is_certified(i):
    for tri in slicing(UNIT_SQUARE, i):
        t = interior_tile_witness(tri)
        assert t.level == 4 * phi(i)
        assert certify_interior(t, tri)


def test_slicing_witness_lies_in_the_wedge():
    rng = random.Random(3)
    for _ in range(200):
        alpha = rng.uniform(0.05, math.pi)
        start = rng.uniform(0, TAU)
        tri = slicing_witness(alpha, start)
        lo, hi = tri.angles
        assert (lo - start) % TAU <= alpha
        assert (hi - start) % TAU <= alpha + 1e-12


# ---------------------------------------------------------------- excluded tiles


def test_tile_inside_half_plane_complement():
    base = StraightRect(-4, 4, -4, 4)
    hint = AngularHint(Point(0, 0), math.pi, math.pi)  # the north half, swept clockwise from west
    assert tile_in_region(TileAddress(2, 1, 0, base), Excluded(hint))


def test_tile_straddling_boundary_ray():
    base = StraightRect(-4, 4, -4, 4)
    hint = AngularHint(Point(0, 0), math.pi, math.pi)
    assert not tile_in_region(TileAddress(2, 0, 1, base), Excluded(hint))


def _raster_excluded(tile_rect, hint, per_edge=64, clearance=1e-6):
    """Boundary-sampling oracle: every sampled boundary point of the tile lies
    in the open excluded wedge. Returns None when too close to call."""
    alpha = TAU - hint.sweep
    ts = np.linspace(0, 1, per_edge, endpoint=False)
    cs = tile_rect.corners()
    pts = np.concatenate([np.outer(1 - ts, cs[k]) + np.outer(ts, cs[(k + 1) % 4]) for k in range(4)])
    rel = pts - np.array(hint.vertex)
    if np.hypot(rel[:, 0], rel[:, 1]).min() < clearance:
        return False
    off = (np.arctan2(rel[:, 1], rel[:, 0]) - hint.p1_angle) % TAU
    inside = (off > clearance) & (off < alpha - clearance)
    near = (np.abs(off) < clearance) | (np.abs(off - alpha) < clearance) | (np.abs(off - TAU) < clearance)
    if near.any():
        return None
    return bool(inside.all())


def test_excluded_mask_agrees_with_rasterisation():
    rng = random.Random(12)
    disagreements = 0
    for _ in range(300):
        sweep = rng.uniform(0.3, TAU - 0.3)
        hint = AngularHint(Point(0, 0), rng.uniform(0, TAU), sweep)
        level = rng.randrange(2, 5)
        mask = excluded_mask(tile_corner_array(UNIT_SQUARE, level), hint, EPS / 2**level)
        for idx, t in enumerate(tiling(UNIT_SQUARE, level)):
            ref = _raster_excluded(t.rect, hint)
            if ref is not None and ref != bool(mask[idx]):
                disagreements += 1
    assert disagreements == 0


@settings(max_examples=100, deadline=None)
@given(st.floats(0, TAU), st.floats(0.2, TAU - 0.2), st.integers(1, 5))
def test_frontier_route_agrees_with_direct_route(low, alpha, level):
    hint = AngularHint(Point(0, 0), low % TAU, TAU - alpha)
    direct = bool(excluded_mask(tile_corner_array(UNIT_SQUARE, level), hint, 0.0).any())
    margin = 1e-6
    loose = has_excluded_tile(level, low, alpha, 0.0)
    tight = has_excluded_tile(level, low, alpha, margin)
    # the margin only ever removes tiles
    assert tight <= loose
    if tight:
        assert direct
    if not loose:
        assert not direct


def test_certified_levels_never_fail_a_direct_check():
    rng = random.Random(4)
    for level in range(2, 6):
        for _ in range(20):
            alpha = rng.uniform(0.3, math.pi)
            if not certify_level(level, alpha):
                continue
            for _ in range(50):
                hint = AngularHint(Point(0, 0), rng.uniform(0, TAU), TAU - alpha)
                assert excluded_mask(tile_corner_array(UNIT_SQUARE, level), hint, 1e-9).any()


def test_frontier_sizes_regression():
    assert [len(level_frontier(k)[0]) for k in range(1, 6)] == [0, 12, 30, 102, 340]


# ---------------------------------------------------------------- empirical index


def test_three_quarter_hints_need_level_three():
    assert empirical_index(1.5 * math.pi) == 3


def test_empirical_index_below_formula_and_monotone():
    betas = [1.1 * math.pi, 1.25 * math.pi, 1.5 * math.pi, 1.75 * math.pi, 1.875 * math.pi]
    ks = [empirical_index(b) for b in betas]
    assert ks == sorted(ks)
    for b, k in zip(betas, ks):
        assert k <= index_of(TAU - b)


def test_half_plane_hints_empirical_index():
    assert empirical_index(math.pi) == 2


def test_no_feasible_index_for_needle_complements(monkeypatch):
    monkeypatch.setattr(tiling_module, "EMPIRICAL_MAX_LEVEL", 5)
    with pytest.raises(NoFeasibleIndex):
        empirical_index(TAU - 1e-4, trials=1)
