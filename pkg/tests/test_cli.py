import csv
import json
import subprocess
import sys

import pytest

from coplex.bench import CSV_COLUMNS, CSV_SCHEMA, audit, read_csv, sidecar_paths
from coplex.cli import CONFIG_ENV, build_parser, load_config_file, main, resolve_settings
from coplex.errors import CoplexError
from coplex.graph import read_graph

STAR_COL = "p edge 4 3\ne 1 2\ne 1 3\ne 1 4\n"
C5_COL = "p edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n"


@pytest.fixture
def star_file(tmp_path):
    path = tmp_path / "star.col"
    path.write_text(STAR_COL)
    return path


def test_solve_star(star_file, tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["solve", str(star_file), "--json", str(out)]) == 0
    text = capsys.readouterr().out
    assert "value: 3" in text and "certificate: 2 3 4" in text and "status: optimal" in text
    record = json.loads(out.read_text())
    assert record["certificate"] == [2, 3, 4] and record["value"] == 3


@pytest.mark.parametrize("alg", ["n2", "n2-2plex", "e", "e-utter"])
def test_solve_c5_every_algorithm(tmp_path, capsys, alg):
    path = tmp_path / "c5.col"
    path.write_text(C5_COL)
    assert main(["solve", str(path), "--alg", alg]) == 0
    assert "value: 3" in capsys.readouterr().out


def test_solve_errors(tmp_path, capsys):
    bad = tmp_path / "bad.col"
    bad.write_text("p edge 3 1\ne 1 9\n")
    assert main(["solve", str(bad)]) == 1
    assert "line 2" in capsys.readouterr().err
    assert main(["solve", str(tmp_path / "nope.col")]) == 1
    with pytest.raises(SystemExit) as exc:
        main(["solve"])
    assert exc.value.code == 1
    assert main(["solve", str(bad), "--alg", "cplex"]) == 1


def test_solve_time_limit_exit_code(tmp_path, capsys):
    assert main(["gen", "--n", "60", "--p", "0.5", "--seed", "7", "--outdir", str(tmp_path)]) == 0
    inst = next(tmp_path.glob("*.col"))
    assert main(["solve", str(inst), "--alg", "e", "--time-limit", "0.01"]) == 2
    assert "status: time_limit" in capsys.readouterr().out


def test_gen_is_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for d in (a, b):
        assert main(["gen", "--n", "12", "--p", "0.4", "--count", "3", "--seed", "5", "--outdir", str(d)]) == 0
    names = sorted(p.name for p in a.iterdir())
    assert len(names) == 4 and "manifest.json" in names
    for name in names:
        assert (a / name).read_bytes() == (b / name).read_bytes()
    g = read_graph(a / "er_n12_p0.4_s5.col")
    assert g.n == 12


def test_config_precedence(tmp_path, monkeypatch):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("# comment\ncut-rounds = 9\nseed=4\nalg = e\npreprocess = off\n")
    parser = build_parser()
    args = parser.parse_args(["solve", "x.col", "--config", str(cfg), "--seed", "11"])
    config, extras = resolve_settings(args)
    assert (config.cut_rounds, config.seed, config.preprocess, extras["alg"]) == (9, 11, False, "e")
    monkeypatch.setenv(CONFIG_ENV, str(cfg))
    config, _ = resolve_settings(parser.parse_args(["solve", "x.col"]))
    assert config.cut_rounds == 9
    monkeypatch.delenv(CONFIG_ENV)
    config, extras = resolve_settings(parser.parse_args(["solve", "x.col"]))
    assert config.cut_rounds == 5 and "alg" not in extras


def test_config_errors(tmp_path, star_file):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("colour = blue\n")
    with pytest.raises(CoplexError, match="c.cfg:1"):
        load_config_file(cfg)
    cfg.write_text("seed\n")
    with pytest.raises(CoplexError):
        load_config_file(cfg)
    cfg.write_text("preprocess = maybe\n")
    assert main(["solve", str(star_file), "--config", str(cfg)]) == 1


def test_bench_roundtrip_and_audit(tmp_path, capsys):
    inst = tmp_path / "inst"
    main(["gen", "--n", "10", "--p", "0.5", "--count", "10", "--seed", "1", "--outdir", str(inst)])
    out = tmp_path / "bench.csv"
    assert main(["bench", str(inst / "manifest.json"), "--out", str(out), "--audit"]) == 0
    text = capsys.readouterr().out
    assert "audit: summary matches" in text
    summary_lines = [l for l in text.splitlines() if l.split() and l.split()[0] in ("n2", "n2-2plex", "e", "e-utter")]
    assert len(summary_lines) == 4 and all(l.split()[5] == "-" for l in summary_lines)

    with out.open() as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 40 and tuple(rows[0]) == CSV_COLUMNS
    assert {r["schema"] for r in rows} == {CSV_SCHEMA}
    assert {r["status"] for r in rows} == {"optimal"}
    # every algorithm agrees on every instance
    by_inst = {}
    for r in rows:
        by_inst.setdefault(r["instance"], set()).add(r["value"])
    assert all(len(v) == 1 for v in by_inst.values())
    meta, summary = sidecar_paths(out)
    meta_doc = json.loads(meta.read_text())
    assert meta_doc["config_hash"] == rows[0]["config_hash"] and meta_doc["generator"]
    assert len(read_csv(out)) == 40

    # tamper with an aggregated column and the audit notices
    rows[0]["nodes"] = str(int(rows[0]["nodes"]) + 1000)
    with out.open("w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
        w.writeheader()
        w.writerows(rows)
    assert audit(out)
    assert main(["bench", "--audit-only", str(out)]) == 1


def test_bench_single_alg_workers_and_missing(tmp_path, capsys):
    inst = tmp_path / "inst"
    main(["gen", "--n", "8", "--p", "0.5", "--count", "3", "--seed", "2", "--outdir", str(inst)])
    one, two = tmp_path / "one.csv", tmp_path / "two.csv"
    assert main(["bench", str(inst / "manifest.json"), "--alg", "e", "--out", str(one)]) == 0
    assert main(["bench", str(inst / "manifest.json"), "--alg", "e", "--workers", "2", "--out", str(two)]) == 0
    strip = lambda p: [(r.instance, r.value, r.nodes) for r in read_csv(p)]
    assert strip(one) == strip(two)
    next(inst.glob("*.col")).unlink()
    assert main(["bench", str(inst / "manifest.json"), "--alg", "e", "--out", str(one)]) == 1
    assert "missing instance" in capsys.readouterr().err


def test_bench_time_limit_exit(tmp_path, capsys):
    inst = tmp_path / "inst"
    main(["gen", "--n", "60", "--p", "0.5", "--count", "1", "--seed", "7", "--outdir", str(inst)])
    out = tmp_path / "b.csv"
    assert main(["bench", str(inst / "manifest.json"), "--alg", "e", "--time-limit", "0.01", "--out", str(out)]) == 2
    rec = read_csv(out)[0]
    assert rec.status == "time_limit" and rec.gap > 0


def test_lab(tmp_path, capsys):
    out = tmp_path / "v.json"
    assert main(["lab", "bijection", "--n-max", "4", "--count", "20", "--out", str(out)]) == 0
    verdict = json.loads(out.read_text())
    assert verdict["passed"] and verdict["check"] == "bijection"
    assert main(["lab", "no-such-check"]) == 1


def test_utter(star_file, tmp_path, capsys):
    path = tmp_path / "p3.col"
    path.write_text("p edge 3 2\ne 1 2\ne 2 3\n")
    out = tmp_path / "u.col"
    assert main(["utter", str(path), str(out)]) == 0
    u = read_graph(out)
    assert (u.n, u.m) == (5, 9)
    assert "c node 4 = edge 1 2" in out.read_text()


def test_module_entry_point(star_file):
    proc = subprocess.run([sys.executable, "-m", "coplex", "solve", str(star_file)],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "certificate: 2 3 4" in proc.stdout


def test_bundled_instances(capsys):
    from pathlib import Path

    data = Path(__file__).resolve().parent.parent / "data"
    assert main(["solve", str(data / "star.col"), "--alg", "n2"]) == 0
    assert "certificate: 2 3 4" in capsys.readouterr().out
    assert main(["solve", str(data / "c5.col"), "--alg", "e-utter"]) == 0
    assert "value: 3" in capsys.readouterr().out
