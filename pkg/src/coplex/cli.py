"""Command-line front end: ``coplex {solve,gen,bench,lab,utter}``.

Exit codes: 0 success (optimal), 2 time limit reached, 1 any error.
Settings come from flags, then a ``key=value`` config file (``--config`` or
the ``COPLEX_CONFIG`` environment variable), then built-in defaults.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import fields
from pathlib import Path

from . import __version__
from .bench import audit, format_summary, generate_instances, missing_instances, run_benchmark, write_report
from .errors import CoplexError
from .graph import read_graph, to_dimacs_col
from .lab import SUITES, run_suite
from .solver.pipeline import ALGORITHMS, AlgorithmChoice, SolverConfig, solve_max_co2plex
from .utter import build_utter

CONFIG_ENV = "COPLEX_CONFIG"
EXIT_OK, EXIT_ERROR, EXIT_TIME_LIMIT = 0, 1, 2

_BOOL = {"1": True, "true": True, "yes": True, "on": True, "0": False, "false": False, "no": False, "off": False}
_SOLVER_KEYS = {f.name for f in fields(SolverConfig)}
_EXTRA_KEYS = {"alg", "workers"}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def load_config_file(path) -> dict:
    """Read ``key=value`` lines; ``#`` starts a comment, dashes in keys become underscores."""
    out = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise CoplexError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _SOLVER_KEYS and key not in _EXTRA_KEYS:
            raise CoplexError(f"{path}:{lineno}: unknown key {key!r}")
        out[key] = value
    return out


def _coerce(key: str, value):
    if value is None or not isinstance(value, str):
        return value
    if key in ("cut_rounds", "seed", "workers"):
        return int(value)
    if key in ("threshold", "grasp_alpha"):
        return float(value)
    if key == "time_limit":
        return None if value.lower() in ("", "none", "inf") else float(value)
    if key in ("preprocess", "star_cuts"):
        try:
            return _BOOL[value.lower()]
        except KeyError:
            raise CoplexError(f"{key} expects a boolean, got {value!r}") from None
    return value


def resolve_settings(args) -> tuple[SolverConfig, dict]:
    """Merge flags over the config file over defaults; returns the solver config and the extras."""
    path = getattr(args, "config", None) or os.environ.get(CONFIG_ENV)
    merged = load_config_file(path) if path else {}
    for key in list(_SOLVER_KEYS) + sorted(_EXTRA_KEYS):
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = value
    try:
        merged = {k: _coerce(k, v) for k, v in merged.items()}
    except ValueError as exc:
        raise CoplexError(f"bad setting: {exc}") from exc
    config = SolverConfig(**{k: v for k, v in merged.items() if k in _SOLVER_KEYS})
    extras = {k: merged[k] for k in _EXTRA_KEYS if k in merged}
    return config, extras


def _algorithms(text) -> list[str]:
    if text is None:
        return [a.value for a in ALGORITHMS]
    return [AlgorithmChoice.parse(part).value for part in str(text).split(",") if part.strip()]


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_solve(args) -> int:
    config, extras = resolve_settings(args)
    algorithm = AlgorithmChoice.parse(extras.get("alg", "n2"))
    graph = read_graph(args.instance)
    result = solve_max_co2plex(graph, None, algorithm, config)
    st = result.stats
    certificate = [v + 1 for v in result.co2plex.vertices]
    value = result.value
    print(f"value: {value.numerator if value.denominator == 1 else float(value)}")
    print("certificate: " + " ".join(map(str, certificate)))
    print(f"status: {result.status}")
    print(f"algorithm: {algorithm.value}  nodes: {st.nodes}  cuts: {st.cuts}  "
          f"gap: {st.gap:.6g}  root_gap: {st.root_gap if st.root_gap is None else format(st.root_gap, '.6g')}  "
          f"time: {st.wall_time:.3f}s")
    if args.json:
        record = {
            "schema": "coplex.solve/1",
            "instance": str(args.instance),
            "algorithm": algorithm.value,
            "status": result.status,
            "value": float(value),
            "certificate": certificate,
            "stats": st.as_dict(),
            "subinstances": result.subinstances,
            "config": {f.name: getattr(config, f.name) for f in fields(SolverConfig)},
        }
        Path(args.json).write_text(json.dumps(record, indent=2, default=str) + "\n")
    return EXIT_OK if result.status == "optimal" else EXIT_TIME_LIMIT


def cmd_gen(args) -> int:
    seed = 0 if args.seed is None else args.seed
    manifest = generate_instances(args.n, args.p, args.count, seed, args.outdir)
    print(manifest)
    return EXIT_OK


def cmd_bench(args) -> int:
    if args.audit_only:
        return _report_audit(args.audit_only)
    if not args.manifest:
        raise CoplexError("bench needs a manifest (or --audit-only CSV)")
    config, extras = resolve_settings(args)
    algorithms = _algorithms(extras.get("alg"))
    missing = missing_instances(args.manifest)
    for name in missing:
        print(f"missing instance: {name}", file=sys.stderr)
    records = run_benchmark(args.manifest, algorithms, config, workers=extras.get("workers", 1))
    out = Path(args.out)
    summary = write_report(records, out, config, manifest=args.manifest, missing=missing)
    print(format_summary(summary))
    print(f"wrote {out}")
    code = EXIT_OK
    if args.audit:
        code = _report_audit(out)
    if code == EXIT_OK and any(r.status == "time_limit" for r in records):
        code = EXIT_TIME_LIMIT
    if code == EXIT_OK and (missing or any(r.status == "error" for r in records)):
        code = EXIT_ERROR
    return code


def _report_audit(csv_path) -> int:
    problems = audit(csv_path)
    if problems:
        for p in problems:
            print(f"audit: {p}", file=sys.stderr)
        return EXIT_ERROR
    print(f"audit: summary matches {csv_path}")
    return EXIT_OK


def cmd_lab(args) -> int:
    if args.check not in SUITES:
        print(f"unknown check {args.check!r}; available: {', '.join(SUITES)}", file=sys.stderr)
        return EXIT_ERROR
    verdict = run_suite(args.check, n_max=args.n_max, count=args.count, seed=args.seed)
    text = json.dumps(verdict, indent=2)
    print(text)
    if args.out:
        Path(args.out).write_text(text + "\n")
    return EXIT_OK if verdict["passed"] else EXIT_ERROR


def cmd_utter(args) -> int:
    graph = read_graph(args.instance)
    utter = build_utter(graph)
    comments = [f"utter graph of {args.instance}: {graph.n} vertex nodes, {graph.m} edge nodes"]
    comments += [f"node {v + 1} = vertex {v + 1}" for v in graph.vertices]
    comments += [f"node {graph.n + e + 1} = edge {u + 1} {v + 1}" for e, (u, v) in enumerate(graph.edges)]
    Path(args.out).write_text(to_dimacs_col(utter.graph, comments))
    print(f"wrote {args.out}: {utter.graph.n} nodes, {utter.graph.m} edges")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _solver_flags(p: argparse.ArgumentParser, multi_alg: bool = False) -> None:
    if multi_alg:
        p.add_argument("--alg", help="comma-separated algorithms (default: all of n2,n2-2plex,e,e-utter)")
    else:
        p.add_argument("--alg", help="n2 | n2-2plex | e | e-utter (default n2)")
    p.add_argument("--time-limit", dest="time_limit", type=float, help="seconds per solve")
    p.add_argument("--seed", type=int, help="GRASP seed")
    p.add_argument("--cut-rounds", dest="cut_rounds", type=int, help="separation rounds per node")
    p.add_argument("--threshold", type=float, help="minimum violation for a cut")
    p.add_argument("--no-preprocess", dest="preprocess", action="store_const", const=False,
                   help="skip peeling and decomposition")
    p.add_argument("--config", help=f"key=value settings file (default: ${CONFIG_ENV})")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="coplex", description="Maximum weighted co-2-plex solver and polyhedral lab.")
    parser.add_argument("--version", action="version", version=f"coplex {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="solve one instance")
    p.add_argument("instance", help="DIMACS .col or METIS .graph file")
    p.add_argument("--json", help="also write a JSON record here")
    _solver_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("gen", help="generate G(n, p) instances and a manifest")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int)
    p.add_argument("--outdir", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="run algorithms over a manifest and summarise")
    p.add_argument("manifest", nargs="?")
    p.add_argument("--out", default="bench.csv", help="CSV path; sidecars go next to it")
    p.add_argument("--workers", type=int, help="worker processes")
    p.add_argument("--audit", action="store_true", help="recompute the summary from the CSV afterwards")
    p.add_argument("--audit-only", dest="audit_only", metavar="CSV", help="audit an existing CSV and exit")
    _solver_flags(p, multi_alg=True)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("lab", help="run a named property suite")
    p.add_argument("check", help=", ".join(SUITES))
    p.add_argument("--n-max", dest="n_max", type=int)
    p.add_argument("--count", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", help="also write the JSON verdict here")
    p.set_defaults(func=cmd_lab)

    p = sub.add_parser("utter", help="write the utter graph as DIMACS")
    p.add_argument("instance")
    p.add_argument("out")
    p.set_defaults(func=cmd_utter)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CoplexError, OSError, ValueError) as exc:
        print(f"coplex {args.command}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
