"""Quick invariant suites for every module, reported as measured-versus-bound lines."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np

from . import baseline, geom, hints, mosaic, reduce, scan, simulator, tiling
from .simulator import Episode, Halted


@dataclass
class Check:
    module: str
    prop: str
    measured: float
    bound: float
    ok: bool

    def line(self) -> str:
        tag = "PASS" if self.ok else "FAIL"
        return f"{tag} {self.module}: {self.prop} (measured {self.measured:.9g}, bound {self.bound:.9g})"


def _geom(rng):
    worst = 0.0
    for _ in range(1000):
        p = geom.Point(rng.uniform(-1e3, 1e3), rng.uniform(-1e3, 1e3))
        c = geom.Point(rng.uniform(-10, 10), rng.uniform(-10, 10))
        q = rng.randrange(4)
        back = geom.rotate_about(geom.rotate_about(p, c, q), c, (4 - q) % 4)
        worst = max(worst, geom.dist(p, back))
    yield Check("geom", "quarter-turn round trip error", worst, 1e-9, worst <= 1e-9)
    drift = 0.0
    for _ in range(1000):
        line = geom.Line.make((rng.uniform(-5, 5), rng.uniform(-5, 5)), rng.uniform(0, 7))
        again = line.canonical()
        da = abs(again.angle - line.angle)
        drift = max(drift, min(da, math.pi - da), geom.dist(again.anchor, line.anchor))
    yield Check("geom", "canonical form re-canonicalised drift", drift, geom.EPS, drift <= geom.EPS)


def _hints(rng):
    bad = 0
    for s in range(300):
        z = geom.Point(rng.uniform(-50, 50), rng.uniform(-50, 50))
        pos = geom.Point(rng.uniform(-50, 50), rng.uniform(-50, 50))
        for adv in (
            hints.HalfPlaneAdversary(z, "perpendicular_worst"),
            hints.HalfPlaneAdversary(z, "random_honest", seed=s),
            hints.BoundedAngleAdversary(z, rng.uniform(math.pi + 0.01, 2 * math.pi - 0.01), "random_honest", s),
        ):
            if not adv.hint(pos).contains_or_vertex(z):
                bad += 1
    yield Check("hints", "dishonest replies", bad, 0, bad == 0)


def _simulator(rng):
    worst = 0.0
    for _ in range(200):
        z = geom.Point(rng.uniform(-5, 5), rng.uniform(-5, 5))
        a = geom.Point(rng.uniform(-5, 5), rng.uniform(-5, 5))
        b = geom.Point(rng.uniform(-5, 5), rng.uniform(-5, 5))
        ep = Episode(z, None, start=a)
        if ep.found:
            continue
        ep.move_to(b)
        ts = np.linspace(0.0, 1.0, 20001)
        pts = np.outer(1 - ts, a) + np.outer(ts, b)
        d = np.hypot(pts[:, 0] - z.x, pts[:, 1] - z.y)
        hit = np.flatnonzero(d <= 1.0)
        if (len(hit) > 0) != ep.found:
            if abs(d.min() - 1.0) > 1e-6:
                worst = math.inf
            continue
        if ep.found:
            worst = max(worst, abs(ts[hit[0]] * geom.dist(a, b) - ep.ledger.cost_at_detection))
    yield Check("simulator", "detection cost vs dense sampling", worst, 1e-3, worst <= 1e-3)


def _scan(rng):
    worst = 0.0
    for _ in range(40):
        w, h = rng.uniform(0.5, 30), rng.uniform(0.5, 30)
        r = geom.StraightRect(0.0, w, 0.0, h)
        ep = Episode(None, None, start=(rng.uniform(0, w), rng.uniform(0, h)))
        scan.rectangle_scan(ep, r)
        worst = max(worst, ep.ledger.total / scan.scan_cost_bound(r))
    yield Check("scan", "cost / 5n max(m,2)", worst, 1.0, worst <= 1.0)


def _reduce(rng):
    worst_ratio, lost = 0.0, 0
    for it in range(300):
        w, h = rng.uniform(4, 40), rng.uniform(4, 40)
        r = geom.StraightRect(-w / 2, w / 2, -h / 2, h / 2)
        z = geom.Point(rng.uniform(-w / 2, w / 2), rng.uniform(-h / 2, h / 2))
        ep = Episode(z, hints.HalfPlaneAdversary(z, "random_honest", seed=it))
        if ep.found:
            continue
        trace = []
        try:
            out = reduce.reduce_rectangle(ep, r, trace)
        except Halted:
            continue
        drop = r.perimeter - out.perimeter
        worst_ratio = max(worst_ratio, trace[0].travel / (21 * drop))
        if not out.contains(z, 1e-9) or drop < 2 - 1e-9:
            lost += 1
    yield Check("reduce", "travel / 21 perimeter drop", worst_ratio, 1.0, worst_ratio <= 1.0)
    yield Check("reduce", "treasure lost or drop < 2 (count)", lost, 0, lost == 0)
    worst = 0.0
    for s in range(6):
        d = 2.0 * 2 ** (s * 1.3)
        t = geom.Point(d * math.cos(s), d * math.sin(s))
        ep = Episode(t, hints.HalfPlaneAdversary(t, "perpendicular_worst", seed=s))
        rep = reduce.treasure_hunt_halfplane(ep)
        worst = max(worst, rep.cost / (2**10 * d) if rep.found else math.inf)
    yield Check("reduce", "hunt cost / (2^10 D)", worst, 1.0, worst <= 1.0)


def _tiling(rng):
    yield Check("tiling", "rho(3)", tiling.rho(3), 2, tiling.rho(3) == 2)
    yield Check("tiling", "index_of(pi)", tiling.index_of(math.pi), 24, tiling.index_of(math.pi) == 24)
    bad = 0
    for _ in range(100):
        a, b = sorted(rng.uniform(0.01, 6.2) for _ in range(2))
        if tiling.index_of(b) > tiling.index_of(a):
            bad += 1
    yield Check("tiling", "index monotonicity violations", bad, 0, bad == 0)


def _mosaic(rng):
    worst_cost, worst_area = 0.0, 0.0
    for i, k, beta in ((6, 2, 1.25 * math.pi), (8, 3, 1.5 * math.pi), (9, 2, 1.25 * math.pi)):
        z = geom.Point(3 * 2**i, 0.5)
        ep = Episode(z, hints.BoundedAngleAdversary(z, beta, "random_honest", seed=i))
        rep = mosaic.mosaic(ep, i, k)
        worst_cost = max(worst_cost, rep.cost / mosaic.mosaic_cost_bound(i, k))
        if rep.index_max == k:
            worst_area = max(worst_area, rep.white_area / mosaic.white_area_bound(i, k))
    yield Check("mosaic", "cost / bound", worst_cost, 1.0, worst_cost <= 1.0)
    yield Check("mosaic", "white area / bound", worst_area, 1.0, worst_area <= 1.0)
    missed = 0
    for s in range(4):
        z = geom.Point(20 * math.cos(s), 20 * math.sin(s))
        ep = Episode(z, hints.BoundedAngleAdversary(z, 1.5 * math.pi, "edge_worst", seed=s))
        if not mosaic.treasure_hunt_bounded(ep).found:
            missed += 1
    yield Check("mosaic", "bounded-hint hunts that missed", missed, 0, missed == 0)


def _baseline(rng):
    _, rep = baseline.lower_bound_walk(10.0, samples=200_000)
    yield Check("baseline", "forbidden area / 2D^2", rep.forbidden_area / rep.forbidden_bound, 1.02,
                rep.forbidden_area <= 1.02 * rep.forbidden_bound)
    yield Check("baseline", "witness found (1 = yes)", float(rep.certified), 1.0, rep.certified)
    n = 41
    pts = baseline.spiral_waypoints(n)
    err = abs(simulator.Trajectory(pts).length() - baseline.spiral_length(n))
    yield Check("baseline", "spiral closed-form length error", err, 1e-9, err <= 1e-9)


SUITES = {
    "geom": _geom,
    "hints": _hints,
    "simulator": _simulator,
    "scan": _scan,
    "reduce": _reduce,
    "tiling": _tiling,
    "mosaic": _mosaic,
    "baseline": _baseline,
}


def run_all(seed: int = 0, modules=None) -> list:
    checks = []
    for name, suite in SUITES.items():
        if modules and name not in modules:
            continue
        checks.extend(suite(random.Random(seed)))
    return checks
