"""Instance generation, benchmark runs and their summary tables.

A benchmark writes three files: the per-cell CSV, a ``.meta.json`` sidecar
recording the conventions behind each column, and a ``.summary.json`` with
the per-algorithm aggregates.  ``audit`` recomputes the aggregates from the
CSV and compares them with the stored summary.
"""

from __future__ import annotations

import csv
import hashlib
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .errors import CoplexError
from .graph import generate_er, read_graph, to_dimacs_col
from .solver.pipeline import AlgorithmChoice, SolverConfig, solve_max_co2plex

MANIFEST_SCHEMA = "coplex.manifest/1"
CSV_SCHEMA = "coplex.bench/1"
SUMMARY_SCHEMA = "coplex.summary/1"
GENERATOR = "random.Random (MT19937), lexicographic pair order, one draw per pair"

CSV_COLUMNS = ("schema", "instance", "n", "m", "density", "algorithm", "status", "value", "bound",
               "gap", "root_gap", "nodes", "cuts", "wall_time", "seed", "config_hash")
STATUSES = ("optimal", "time_limit", "error")

CONVENTIONS = {
    "gap": "(bound - value) / max(1, |value|); with preprocessing, the largest subinstance gap",
    "root_gap": "(root LP value after the root cut rounds - value) / max(1, |value|)",
    "nodes": "branch-and-bound nodes, root counted as one; summed over subinstances",
    "cuts": "distinct cuts added to the global pool; summed over subinstances",
    "wall_time": "seconds of wall clock around the solver call, excluding parsing",
    "summary_gap": "mean gap over non-error rows, '-' when every gap is closed",
}


# ---------------------------------------------------------------------------
# generation
# ---------------------------------------------------------------------------

def instance_name(n: int, p: float, seed: int) -> str:
    return f"er_n{n}_p{p:g}_s{seed}"


def generate_instances(n: int, p: float, count: int, seed: int, outdir) -> Path:
    """Write ``count`` G(n, p) instances plus ``manifest.json``; returns the manifest path."""
    out = Path(outdir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise CoplexError(f"cannot create {out}: {exc}") from exc
    names = []
    for i in range(count):
        s = seed + i
        name = instance_name(n, p, s)
        graph = generate_er(n, p, s)
        text = to_dimacs_col(graph, [f"{name}: G(n={n}, p={p:g}) seed {s}"])
        try:
            (out / f"{name}.col").write_text(text)
        except OSError as exc:
            raise CoplexError(f"cannot write {out / name}.col: {exc}") from exc
        names.append(f"{name}.col")
    manifest = {
        "schema": MANIFEST_SCHEMA,
        "generator": GENERATOR,
        "params": {"n": n, "p": p, "count": count, "seed": seed},
        "instances": names,
    }
    path = out / "manifest.json"
    path.write_text(json.dumps(manifest, indent=2) + "\n")
    return path


def load_manifest(path) -> list[tuple[str, Path]]:
    """``(instance name, file path)`` pairs in manifest order."""
    path = Path(path)
    data = json.loads(path.read_text())
    if data.get("schema") != MANIFEST_SCHEMA:
        raise CoplexError(f"{path}: unsupported manifest schema {data.get('schema')!r}")
    return [(Path(f).stem, path.parent / f) for f in data["instances"]]


# ---------------------------------------------------------------------------
# running
# ---------------------------------------------------------------------------

def config_hash(config: SolverConfig) -> str:
    blob = json.dumps(asdict(config), sort_keys=True, default=str)
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


@dataclass
class BenchmarkRecord:
    schema: str
    instance: str
    n: int | None
    m: int | None
    density: float | None
    algorithm: str
    status: str
    value: float | None
    bound: float | None
    gap: float | None
    root_gap: float | None
    nodes: int | None
    cuts: int | None
    wall_time: float | None
    seed: int
    config_hash: str

    def row(self) -> dict:
        return {k: ("" if v is None else v) for k, v in asdict(self).items()}


def _float(v):
    return None if v is None else float(v)


def run_cell(name: str, path, algorithm: str, config: SolverConfig) -> BenchmarkRecord:
    """Solve one (instance, algorithm) pair; failures become an ``error`` row."""
    alg = AlgorithmChoice.parse(algorithm).value
    chash = config_hash(config)
    try:
        graph = read_graph(path)
    except (OSError, CoplexError):
        return BenchmarkRecord(CSV_SCHEMA, name, None, None, None, alg, "error", None, None, None, None,
                               None, None, None, config.seed, chash)
    n, m = graph.n, graph.m
    density = 2 * m / (n * (n - 1)) if n >= 2 else 0.0
    try:
        result = solve_max_co2plex(graph, None, alg, config)
    except CoplexError:
        return BenchmarkRecord(CSV_SCHEMA, name, n, m, density, alg, "error", None, None, None, None,
                               None, None, None, config.seed, chash)
    st = result.stats
    status = result.status if result.status in STATUSES else "error"
    return BenchmarkRecord(CSV_SCHEMA, name, n, m, density, alg, status, _float(result.value),
                           _float(st.best_bound), _float(st.gap), _float(st.root_gap), st.nodes, st.cuts,
                           st.wall_time, config.seed, chash)


def _run_packed(args):
    return run_cell(*args)


def run_benchmark(manifest, algorithms: Sequence[str], config: SolverConfig, workers: int = 1) -> list[BenchmarkRecord]:
    """One record per (instance, algorithm), ordered by manifest then algorithm order."""
    cells = [(name, path, AlgorithmChoice.parse(a).value, config)
             for name, path in load_manifest(manifest) for a in algorithms]
    if workers > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            # map preserves input order, so the CSV order does not depend on completion order
            return list(pool.map(_run_packed, cells))
    return [run_cell(*c) for c in cells]


# ---------------------------------------------------------------------------
# CSV, summary, audit
# ---------------------------------------------------------------------------

def write_csv(records: Iterable[BenchmarkRecord], path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
        writer.writeheader()
        for r in records:
            writer.writerow(r.row())


_INT_COLUMNS = {"n", "m", "nodes", "cuts", "seed"}
_FLOAT_COLUMNS = {"density", "value", "bound", "gap", "root_gap", "wall_time"}


def read_csv(path) -> list[BenchmarkRecord]:
    """Parse and validate a benchmark CSV; raises CoplexError on schema violations."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != CSV_COLUMNS:
            raise CoplexError(f"{path}: columns {reader.fieldnames} do not match {list(CSV_COLUMNS)}")
        out = []
        for i, raw in enumerate(reader, start=2):
            if raw["schema"] != CSV_SCHEMA:
                raise CoplexError(f"{path}:{i}: schema {raw['schema']!r}")
            if raw["status"] not in STATUSES:
                raise CoplexError(f"{path}:{i}: status {raw['status']!r}")
            vals = {}
            for key in CSV_COLUMNS:
                text = raw[key]
                if key in _INT_COLUMNS:
                    vals[key] = int(text) if text != "" else None
                elif key in _FLOAT_COLUMNS:
                    vals[key] = float(text) if text != "" else None
                else:
                    vals[key] = text
            rec = BenchmarkRecord(**vals)
            if rec.status != "error":
                _check_record(rec, path, i)
            out.append(rec)
    return out


def _check_record(rec: BenchmarkRecord, path, line: int) -> None:
    if rec.n is None or rec.value is None or rec.nodes is None:
        raise CoplexError(f"{path}:{line}: solved row with missing fields")
    if rec.n >= 2:
        expected = 2 * rec.m / (rec.n * (rec.n - 1))
        if not math.isclose(rec.density, expected, rel_tol=1e-9, abs_tol=1e-12):
            raise CoplexError(f"{path}:{line}: density {rec.density} != {expected}")
    if rec.status == "optimal" and rec.gap not in (None, 0.0):
        raise CoplexError(f"{path}:{line}: optimal row with gap {rec.gap}")


def _mean(values):
    values = [v for v in values if v is not None and math.isfinite(v)]
    return sum(values) / len(values) if values else None


def summarize(records: Sequence[BenchmarkRecord]) -> list[dict]:
    """Per-algorithm aggregates in first-appearance order."""
    order = list(dict.fromkeys(r.algorithm for r in records))
    out = []
    for alg in order:
        rows = [r for r in records if r.algorithm == alg]
        ok = [r for r in rows if r.status != "error"]
        solved = sum(r.status == "optimal" for r in rows)
        gaps = [r.gap for r in ok]
        out.append({
            "algorithm": alg,
            "instances": len(rows),
            "errors": len(rows) - len(ok),
            "solved_pct": 100.0 * solved / len(rows) if rows else 0.0,
            "mean_time": _mean([r.wall_time for r in ok]),
            "mean_nodes": _mean([r.nodes for r in ok]),
            "mean_cuts": _mean([r.cuts for r in ok]),
            "mean_gap": None if all(g == 0 for g in gaps) else _mean(gaps),
            "mean_root_gap": _mean([r.root_gap for r in ok]),
        })
    return out


def format_summary(summary: Sequence[dict]) -> str:
    def cell(v, fmt):
        width = int(fmt.split(".")[0])
        return f"{'-':>{width}}" if v is None else format(v, fmt)

    head = f"{'algorithm':<10} {'solved%':>8} {'time(s)':>9} {'nodes':>9} {'cuts':>9} {'gap':>8} {'rootgap':>8}"
    lines = [head, "-" * len(head)]
    for s in summary:
        lines.append(f"{s['algorithm']:<10} {s['solved_pct']:>8.1f} {cell(s['mean_time'], '9.3f')} "
                     f"{cell(s['mean_nodes'], '9.1f')} {cell(s['mean_cuts'], '9.1f')} "
                     f"{cell(s['mean_gap'], '8.4f')} {cell(s['mean_root_gap'], '8.4f')}")
    return "\n".join(lines)


def sidecar_paths(csv_path) -> tuple[Path, Path]:
    p = Path(csv_path)
    return p.with_suffix(".meta.json"), p.with_suffix(".summary.json")


def write_report(records: Sequence[BenchmarkRecord], csv_path, config: SolverConfig,
                 manifest=None, missing: Sequence[str] = ()) -> list[dict]:
    """CSV plus the two JSON sidecars; returns the summary."""
    write_csv(records, csv_path)
    meta_path, summary_path = sidecar_paths(csv_path)
    meta = {
        "schema": CSV_SCHEMA,
        "columns": list(CSV_COLUMNS),
        "conventions": CONVENTIONS,
        "config": asdict(config),
        "config_hash": config_hash(config),
        "generator": GENERATOR,
        "manifest": None if manifest is None else str(manifest),
        "missing_instances": list(missing),
        "created": time.strftime("%Y-%m-%dT%H:%M:%S"),
    }
    meta_path.write_text(json.dumps(meta, indent=2, default=str) + "\n")
    summary = summarize(records)
    summary_path.write_text(json.dumps({"schema": SUMMARY_SCHEMA, "algorithms": summary}, indent=2) + "\n")
    return summary


def audit(csv_path, rel_tol: float = 1e-9) -> list[str]:
    """Recompute the summary from the CSV; returns the mismatches (empty when consistent)."""
    records = read_csv(csv_path)
    _, summary_path = sidecar_paths(csv_path)
    stored = json.loads(summary_path.read_text())
    if stored.get("schema") != SUMMARY_SCHEMA:
        return [f"summary schema {stored.get('schema')!r}"]
    fresh = summarize(records)
    problems = []
    old = {s["algorithm"]: s for s in stored["algorithms"]}
    if set(old) != {s["algorithm"] for s in fresh}:
        problems.append(f"algorithms differ: stored {sorted(old)}")
    for s in fresh:
        ref = old.get(s["algorithm"])
        if ref is None:
            continue
        for key, value in s.items():
            want = ref.get(key)
            if isinstance(value, float) and isinstance(want, (int, float)):
                if not math.isclose(value, want, rel_tol=rel_tol, abs_tol=1e-12):
                    problems.append(f"{s['algorithm']}.{key}: csv gives {value}, summary has {want}")
            elif value != want:
                problems.append(f"{s['algorithm']}.{key}: csv gives {value}, summary has {want}")
    return problems


def missing_instances(manifest) -> list[str]:
    return [name for name, path in load_manifest(manifest) if not Path(path).is_file()]

