"""Command-line experiment runner.

Subcommands: ``hunt1``, ``hunt2``, ``baseline``, ``sweep``, ``verify``, ``render``.

Episode JSON (``schema: 1``) fields:
  algorithm          name of the search procedure
  oracle             {kind, strategy, seed, beta?, theta?}
  treasure           [x, y] or null
  waypoints          [[x, y], ...] in visiting order, starting at the origin
  hints              [{at, vertex, p1_angle, p2_angle}, ...]; ``at`` indexes waypoints
  cost               total trajectory length walked
  cost_at_detection  length walked until first contact (present when found)
  found, status      outcome
  phases             per-phase summaries of the outer loop
  mosaic_reports     painting summaries (hunt2 only)
  area_report        lower-bound audit summary (baseline --audit only)

Sweep CSV columns: D, seed, strategy, beta, cost, found, phases; floats printed
with 9 significant digits; rows ordered by (D, seed).

Exit codes: 0 ok, 2 bad flags, 3 tile budget exceeded, 4 no feasible index,
5 treasure not found or budget exhausted, 6 dishonest oracle, 7 file I/O,
8 any other library error, 1 failed verification.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import random
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import baseline, errors, mosaic, reduce, render, verify
from .geom import Point
from .hints import BoundedAngleAdversary, HalfPlaneAdversary
from .simulator import Episode, export_episode, import_episode

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_BAD_FLAGS = 2
EXIT_TILE_BUDGET = 3
EXIT_NO_INDEX = 4
EXIT_NOT_FOUND = 5
EXIT_DISHONEST = 6
EXIT_IO = 7
EXIT_OTHER = 8


class BadFlags(ValueError):
    pass


def treasure_at(distance: float, seed: int) -> Point:
    """Treasure at the given distance from the origin in a seeded uniform direction."""
    theta = random.Random(seed).uniform(0.0, 2 * math.pi)
    return Point(distance * math.cos(theta), distance * math.sin(theta))


def _parse_point(text: str) -> Point:
    try:
        x, y = (float(v) for v in text.split(","))
    except ValueError:
        raise BadFlags(f"expected x,y but got {text!r}") from None
    return Point(x, y)


def _treasure(args) -> Point:
    if args.treasure is not None:
        if args.distance is not None:
            raise BadFlags("give either --treasure or --distance, not both")
        return _parse_point(args.treasure)
    if args.distance is None:
        raise BadFlags("one of --treasure or --distance is required")
    if args.distance < 0:
        raise BadFlags("--distance must be non-negative")
    return treasure_at(args.distance, args.seed)


def _write(path, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _episode_json(ep: Episode) -> str:
    return export_episode(ep).to_json(indent=1, sort_keys=True) + "\n"


def run_hunt1(treasure: Point, strategy: str, seed: int, theta: float = 0.0, budget=None) -> Episode:
    adv = HalfPlaneAdversary(treasure, strategy, seed=seed, theta=theta)
    ep = Episode(treasure, adv, budget=budget, algorithm="hunt1")
    reduce.treasure_hunt_halfplane(ep)
    return ep


def run_hunt2(treasure: Point, beta: float, strategy: str, seed: int, index_mode: str = "empirical",
              tile_budget: int = mosaic.DEFAULT_TILE_BUDGET, budget=None) -> Episode:
    adv = BoundedAngleAdversary(treasure, beta, strategy, seed=seed)
    ep = Episode(treasure, adv, budget=budget, algorithm="hunt2")
    mosaic.treasure_hunt_bounded(ep, index_mode, tile_budget=tile_budget)
    return ep


def run_baseline(treasure: Point, budget=None) -> Episode:
    ep = Episode(treasure, None, budget=budget, algorithm="spiral")
    baseline.spiral_search(ep)
    return ep


def _finish_episode(ep: Episode, out) -> int:
    _write(out, _episode_json(ep))
    print(f"found={ep.found} cost={ep.cost:.9g} status={ep.status}", file=sys.stderr)
    return EXIT_OK if ep.found else EXIT_NOT_FOUND


def _cmd_hunt1(args) -> int:
    ep = run_hunt1(_treasure(args), args.adversary, args.seed, args.theta, args.budget)
    return _finish_episode(ep, args.out)


def _cmd_hunt2(args) -> int:
    if not (math.pi < args.beta < 2 * math.pi):
        raise BadFlags("--beta must lie strictly between pi and 2pi")
    ep = run_hunt2(_treasure(args), args.beta, args.adversary, args.seed, args.index_mode,
                   args.tile_budget, args.budget)
    return _finish_episode(ep, args.out)


def _cmd_baseline(args) -> int:
    if args.audit is not None:
        if args.audit <= 0:
            raise BadFlags("--audit needs a positive disc radius")
        ep, rep = baseline.lower_bound_walk(args.audit, seed=args.seed, samples=args.samples)
        _write(args.out, _episode_json(ep))
        print(
            f"forbidden={rep.forbidden_area:.9g} bound={rep.forbidden_bound:.9g} "
            f"residual={rep.residual_area:.9g} witness={rep.witness}",
            file=sys.stderr,
        )
        return EXIT_OK if rep.certified else EXIT_NOT_FOUND
    return _finish_episode(run_baseline(_treasure(args), args.budget), args.out)


def _sweep_one(task):
    algo, d, seed, strategy, beta, index_mode, tile_budget = task
    z = treasure_at(d, seed)
    if algo == "hunt1":
        ep = run_hunt1(z, strategy, seed)
    elif algo == "hunt2":
        ep = run_hunt2(z, beta, strategy, seed, index_mode, tile_budget)
    else:
        ep = run_baseline(z)
    return d, seed, ep.cost, ep.found, len(ep.meta.get("phases", []))


def loglog_slope(ds, costs) -> float:
    """Least-squares slope of log(cost) against log(D)."""
    x, y = np.log(np.asarray(ds, float)), np.log(np.asarray(costs, float))
    return float(np.polyfit(x, y, 1)[0])


def sweep_rows(algo, ds, seeds, strategy, beta, index_mode="empirical",
               tile_budget=mosaic.DEFAULT_TILE_BUDGET, jobs=1) -> list:
    tasks = [(algo, float(d), s, strategy, beta, index_mode, tile_budget) for d in ds for s in range(seeds)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_sweep_one, tasks))
    else:
        rows = [_sweep_one(t) for t in tasks]
    rows.sort(key=lambda r: (r[0], r[1]))
    return rows


def sweep_csv(rows, strategy, beta) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["D", "seed", "strategy", "beta", "cost", "found", "phases"])
    for d, seed, cost, found, phases in rows:
        w.writerow([f"{d:.9g}", seed, strategy, "" if beta is None else f"{beta:.9g}",
                    f"{cost:.9g}", int(found), phases])
    return buf.getvalue()


_DEFAULT_STRATEGY = {"hunt1": "perp", "hunt2": "edge", "baseline": "none"}


def _cmd_sweep(args) -> int:
    if args.dmin <= 0 or args.dmax < args.dmin or args.points < 1 or args.seeds < 1 or args.jobs < 1:
        raise BadFlags("need 0 < dmin <= dmax, points >= 1, seeds >= 1, jobs >= 1")
    if args.algo == "hunt2" and (args.beta is None or not (math.pi < args.beta < 2 * math.pi)):
        raise BadFlags("hunt2 sweeps need --beta strictly between pi and 2pi")
    strategy = args.strategy or _DEFAULT_STRATEGY[args.algo]
    beta = args.beta if args.algo == "hunt2" else None
    ds = np.geomspace(args.dmin, args.dmax, args.points)
    rows = sweep_rows(args.algo, ds, args.seeds, strategy, beta, args.index_mode, args.tile_budget, args.jobs)
    _write(args.out, sweep_csv(rows, strategy, beta))
    found = [r for r in rows if r[3]]
    if len(found) >= 2 and len({r[0] for r in found}) >= 2:
        print(f"slope={loglog_slope([r[0] for r in found], [max(r[2], 1e-12) for r in found]):.9g}",
              file=sys.stderr)
    return EXIT_OK if len(found) == len(rows) else EXIT_NOT_FOUND


def _cmd_verify(args) -> int:
    checks = verify.run_all(args.seed, args.module or None)
    for c in checks:
        print(c.line())
    return EXIT_OK if all(c.ok for c in checks) else EXIT_VERIFY_FAILED


def _cmd_render(args) -> int:
    with open(args.episode, encoding="utf-8") as fh:
        record = import_episode(fh.read())
    _write(args.out, render.render_svg(record.to_dict()))
    return EXIT_OK


def _add_treasure_flags(p) -> None:
    p.add_argument("--treasure", help="treasure coordinates x,y")
    p.add_argument("--distance", type=float, help="treasure distance from the origin (direction from --seed)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=float, default=None, help="stop after this trajectory length")
    p.add_argument("--out", default="-", help="output file (default stdout)")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise BadFlags(message)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="angular-hunt", description="Treasure hunt with angular hints.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("hunt1", help="half-plane hint hunt")
    _add_treasure_flags(p)
    p.add_argument("--adversary", default="perp", choices=["perp", "random", "fixed"])
    p.add_argument("--theta", type=float, default=0.0, help="boundary angle for the fixed adversary")
    p.set_defaults(func=_cmd_hunt1)

    p = sub.add_parser("hunt2", help="bounded-angle hint hunt")
    _add_treasure_flags(p)
    p.add_argument("--beta", type=float, required=True, help="hint size in radians, in (pi, 2pi)")
    p.add_argument("--adversary", default="edge", choices=["edge", "random"])
    p.add_argument("--index-mode", default="empirical", choices=["empirical", "paper"])
    p.add_argument("--tile-budget", type=int, default=mosaic.DEFAULT_TILE_BUDGET)
    p.set_defaults(func=_cmd_hunt2)

    p = sub.add_parser("baseline", help="hint-free spiral, or the lower-bound audit with --audit D")
    _add_treasure_flags(p)
    p.add_argument("--audit", type=float, default=None, help="disc radius for the lower-bound audit")
    p.add_argument("--samples", type=int, default=1_000_000)
    p.set_defaults(func=_cmd_baseline)

    p = sub.add_parser("sweep", help="grid of episodes summarised as CSV")
    p.add_argument("--algo", default="hunt1", choices=["hunt1", "hunt2", "baseline"])
    p.add_argument("--beta", type=float, default=None)
    p.add_argument("--dmin", type=float, default=4.0)
    p.add_argument("--dmax", type=float, default=256.0)
    p.add_argument("--points", type=int, default=7)
    p.add_argument("--seeds", type=int, default=3)
    p.add_argument("--strategy", default=None, choices=["perp", "random", "fixed", "edge"])
    p.add_argument("--index-mode", default="empirical", choices=["empirical", "paper"])
    p.add_argument("--tile-budget", type=int, default=mosaic.DEFAULT_TILE_BUDGET)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("verify", help="run the invariant suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--module", action="append", choices=sorted(verify.SUITES))
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("render", help="episode JSON to SVG")
    p.add_argument("episode")
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_render)
    return ap


_ERROR_CODES = (
    (BadFlags, EXIT_BAD_FLAGS),
    (errors.TileBudgetExceeded, EXIT_TILE_BUDGET),
    (errors.NoFeasibleIndex, EXIT_NO_INDEX),
    (errors.BudgetExceeded, EXIT_NOT_FOUND),
    (errors.OracleDishonest, EXIT_DISHONEST),
    (OSError, EXIT_IO),
)


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except SystemExit as e:  # --help
        return int(e.code or 0)
    except Exception as e:
        for cls, code in _ERROR_CODES:
            if isinstance(e, cls):
                break
        else:
            code = EXIT_OTHER
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return code


if __name__ == "__main__":
    sys.exit(main())
