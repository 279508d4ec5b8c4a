import csv
import io
import json
import math
import os
import subprocess
import sys

import pytest

from angular_hunt import cli


def _run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_hunt1_example(tmp_path, capsys):
    out = tmp_path / "ep.json"
    code, _, err = _run(["hunt1", "--treasure", "100,37", "--adversary", "perp", "--out", str(out)], capsys)
    assert code == cli.EXIT_OK
    rec = json.loads(out.read_text())
    assert rec["found"] and rec["schema"] == 1
    assert rec["cost_at_detection"] <= 2**10 * math.hypot(100, 37)
    assert "found=True" in err


def test_episode_output_is_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["hunt2", "--beta", "4.712", "--distance", "12", "--seed", "5", "--adversary", "random"]
    assert _run(args + ["--out", str(a)], capsys)[0] == 0
    assert _run(args + ["--out", str(b)], capsys)[0] == 0
    assert a.read_bytes() == b.read_bytes()
    rec = json.loads(a.read_text())
    assert rec["oracle"]["kind"] == "bounded" and rec["mosaic_reports"]


def test_treasure_direction_is_seeded():
    p, q = cli.treasure_at(10, 3), cli.treasure_at(10, 3)
    assert p == q and math.hypot(*p) == pytest.approx(10)
    assert cli.treasure_at(10, 4) != p


def test_sweep_csv_order_and_parallel_equality(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["sweep", "--algo", "hunt1", "--dmin", "2", "--dmax", "64", "--points", "4", "--seeds", "3",
            "--strategy", "random"]
    assert _run(args + ["--out", str(a)], capsys)[0] == 0
    code, _, err = _run(args + ["--jobs", "2", "--out", str(b)], capsys)
    assert code == 0 and "slope=" in err
    assert a.read_bytes() == b.read_bytes()
    rows = list(csv.DictReader(io.StringIO(a.read_text())))
    assert list(rows[0]) == ["D", "seed", "strategy", "beta", "cost", "found", "phases"]
    keys = [(float(r["D"]), int(r["seed"])) for r in rows]
    assert keys == sorted(keys) and len(keys) == 12
    assert all(r["found"] == "1" for r in rows)


def test_bounded_hint_sweep_is_subquadratic(tmp_path, capsys):
    out = tmp_path / "sweep.csv"
    code, _, err = _run(["sweep", "--algo", "hunt2", "--beta", "4.712", "--dmin", "4", "--dmax", "256",
                         "--seeds", "10", "--index-mode", "empirical", "--out", str(out)], capsys)
    assert code == 0
    slope = float(err.split("slope=")[1].split()[0])
    assert slope < 2


def test_baseline_and_audit(tmp_path, capsys):
    assert _run(["baseline", "--treasure", "3,4", "--out", str(tmp_path / "s.json")], capsys)[0] == 0
    code, _, err = _run(["baseline", "--audit", "10", "--samples", "100000", "--out", str(tmp_path / "a.json")],
                        capsys)
    assert code == 0 and "witness=" in err
    rec = json.loads((tmp_path / "a.json").read_text())
    assert rec["area_report"]["certified"]


def test_verify_passes(capsys):
    code, out, _ = _run(["verify"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines and all(l.startswith("PASS ") for l in lines)
    assert {l.split()[1].rstrip(":") for l in lines} == set(cli.verify.SUITES)


def test_render(tmp_path, capsys):
    ep = tmp_path / "ep.json"
    _run(["hunt2", "--beta", "4.0", "--treasure", "9,3", "--out", str(ep)], capsys)
    svg = tmp_path / "ep.svg"
    assert _run(["render", str(ep), "--out", str(svg)], capsys)[0] == 0
    text = svg.read_text()
    assert text.startswith("<svg") and "<polyline" in text and "<circle" in text and "<path" in text
    _run(["render", str(ep), "--out", str(tmp_path / "again.svg")], capsys)
    assert (tmp_path / "again.svg").read_text() == text


@pytest.mark.parametrize(
    "argv,code",
    [
        (["hunt1"], cli.EXIT_BAD_FLAGS),
        (["hunt1", "--treasure", "1,2", "--distance", "3"], cli.EXIT_BAD_FLAGS),
        (["hunt1", "--treasure", "nope"], cli.EXIT_BAD_FLAGS),
        (["hunt2", "--beta", "1.0", "--treasure", "3,3"], cli.EXIT_BAD_FLAGS),
        (["frobnicate"], cli.EXIT_BAD_FLAGS),
        (["hunt2", "--beta", "4.712", "--treasure", "30,0", "--index-mode", "paper"], cli.EXIT_TILE_BUDGET),
        (["hunt1", "--treasure", "300,0", "--budget", "10"], cli.EXIT_NOT_FOUND),
        (["render", "/nonexistent/episode.json"], cli.EXIT_IO),
    ],
)
def test_exit_codes(argv, code, capsys, tmp_path):
    if "--out" not in argv and argv[0] not in ("render",):
        argv = argv + ["--out", str(tmp_path / "o")]
    assert _run(argv, capsys)[0] == code


def test_module_entry_point_and_eps_override(tmp_path):
    env = dict(os.environ, ANGULAR_HUNT_EPS="1e-7")
    proc = subprocess.run(
        [sys.executable, "-c", "import angular_hunt.geom as g; print(g.EPS)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert float(proc.stdout) == 1e-7
    proc = subprocess.run([sys.executable, "-m", "angular_hunt", "verify", "--module", "geom"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("PASS")
