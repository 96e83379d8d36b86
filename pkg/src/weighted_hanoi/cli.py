"""Command-line front end.

Exit codes: 0 success, 1 verification found a counterexample, 2 bad input,
3 a size cap was exceeded. Machine output goes to stdout, diagnostics to
stderr.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
import time
from dataclasses import dataclass
from typing import Optional

from .dp_solver import (
    compute_cost_table,
    count_subproblems,
    generate_solution,
    iter_moves,
    min_cost,
    move_count_bounds,
)
from .model import (
    PAIRS,
    HanoiError,
    Instance,
    WeightMatrix,
    cost_eq,
    cost_to_json,
    format_cost,
    replay,
    weights_from_json,
)
from .oracle import CapExceeded, DEFAULT_STATE_CAP, dijkstra_lex, dijkstra_min_cost, random_weights
from .variants import NotStronglyConnected, parse_digraph, respects_variant, synthesize_weights

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3

WORKED_EXAMPLE = WeightMatrix([[0, 3, 15], [8, 0, 2], [5, 6, 0]])

SUBCOMMANDS = ("solve", "cost", "verify", "variants", "synth", "count", "bench")


@dataclass
class RunConfig:
    subcommand: str
    weights: Optional[WeightMatrix] = None
    n: Optional[int] = None
    source: int = 1
    destination: int = 3
    digraph: Optional[str] = None
    output_format: str = "table"
    dump_table: bool = False
    oracle_n_cap: int = DEFAULT_STATE_CAP
    solution_emit_cap: int = 30
    seed: int = 0
    trials: int = 200


class InputError(HanoiError):
    pass


def load_weights(spec: str) -> WeightMatrix:
    """Read a weights document from a path or an inline JSON string."""
    text = spec
    if not spec.lstrip().startswith("{"):
        try:
            with open(spec) as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read weights file: {exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"weights are not valid JSON: {exc}") from None
    return weights_from_json(doc)


def _need_weights(cfg: RunConfig) -> WeightMatrix:
    if cfg.weights is None:
        raise InputError("--weights is required")
    return cfg.weights


def _need_n(cfg: RunConfig) -> int:
    if cfg.n is None:
        raise InputError("--n is required")
    return cfg.n


def _write_csv(out, rows):
    writer = csv.writer(out, lineterminator="\n")
    writer.writerows(rows)


def _emit_json(out, doc):
    out.write(json.dumps(doc, indent=2) + "\n")


# --- subcommands -----------------------------------------------------------

def cmd_cost(cfg: RunConfig, out) -> int:
    weights = _need_weights(cfg)
    n = _need_n(cfg)
    inst = Instance(n, cfg.source, cfg.destination, weights)
    cost = min_cost(inst)
    table = compute_cost_table(weights, n) if cfg.dump_table else None
    if cfg.output_format == "json":
        doc = {"n": n, "source": cfg.source, "destination": cfg.destination,
               "cost": cost_to_json(cost)}
        if table is not None:
            doc["table"] = table.to_dict()
        _emit_json(out, doc)
    elif cfg.output_format == "csv":
        if table is None:
            _write_csv(out, [("n", "source", "destination", "cost"),
                             (n, cfg.source, cfg.destination, format_cost(cost))])
        else:
            rows = [("m", "pair", "L", "R", "cost", "chose_left")]
            for m in range(1, n + 1):
                for i, j in PAIRS:
                    e = table.entry(m, i, j)
                    rows.append((m, f"{i}->{j}", format_cost(e.branches.left),
                                 format_cost(e.branches.right), format_cost(e.cost),
                                 str(e.chose_left).lower()))
            _write_csv(out, rows)
    else:
        out.write(format_cost(cost) + "\n")
        if table is not None and n > 0:
            out.write(table.format() + "\n")
    return EXIT_OK


def cmd_solve(cfg: RunConfig, out) -> int:
    weights = _need_weights(cfg)
    n = _need_n(cfg)
    if n > cfg.solution_emit_cap:
        print(f"error: {n} discs exceeds the solution cap of {cfg.solution_emit_cap} "
              "(raise it with --emit-cap)", file=sys.stderr)
        return EXIT_CAP
    inst = Instance(n, cfg.source, cfg.destination, weights)
    sol = generate_solution(inst)
    if cfg.output_format == "json":
        _emit_json(out, {
            "cost": cost_to_json(sol.total_cost),
            "moves": sol.move_count,
            "sequence": [{"disc": m.disc, "from": m.src, "to": m.dst} for m in sol.moves],
        })
    elif cfg.output_format == "csv":
        rows = [("step", "disc", "from", "to", "cost")]
        rows += [(k, m.disc, m.src, m.dst, format_cost(weights[m.src, m.dst]))
                 for k, m in enumerate(sol.moves, 1)]
        _write_csv(out, rows)
    else:
        for m in sol.moves:
            out.write(f"disc {m.disc}: {m.src} -> {m.dst} @ {format_cost(weights[m.src, m.dst])}\n")
        out.write(f"total cost: {format_cost(sol.total_cost)}\n")
        out.write(f"moves: {sol.move_count}\n")
    return EXIT_OK


def _verify_case(weights: WeightMatrix, n: int, cap: int) -> Optional[str]:
    """Return a failure description, or None if DP and oracle agree."""
    inst = Instance(n, 1, 3, weights)
    dp = min_cost(inst)
    exhaustive = dijkstra_min_cost(weights, n, 1, 3, cap=cap)
    if not cost_eq(dp, exhaustive, weights.exact):
        return f"cost: recursion {format_cost(dp)} vs exhaustive {format_cost(exhaustive)}"
    sol = replay(inst, iter_moves(inst))
    if not cost_eq(sol.total_cost, dp, weights.exact):
        return f"plan cost {format_cost(sol.total_cost)} vs table {format_cost(dp)}"
    lex = dijkstra_lex(weights, n, 1, 3, cap=cap)
    if lex.moves != sol.move_count:
        return f"moves: plan {sol.move_count} vs fewest optimal {lex.moves}"
    lo, hi = move_count_bounds(n)
    if not lo <= sol.move_count <= hi:
        return f"move count {sol.move_count} outside [{lo}, {hi}]"
    return None


def cmd_verify(cfg: RunConfig, out) -> int:
    levels = [cfg.n] if cfg.n is not None else list(range(1, 7))
    top = max(levels)
    if top > cfg.oracle_n_cap:
        print(f"error: {top} discs exceeds the oracle cap of {cfg.oracle_n_cap} "
              "(raise it with --oracle-cap)", file=sys.stderr)
        return EXIT_CAP
    fixed = [("example", WORKED_EXAMPLE)]
    if cfg.weights is not None:
        fixed.append(("input", cfg.weights))
    summary = []
    failures = []
    for n in levels:
        rng = random.Random(f"{cfg.seed}-{n}")
        cases = fixed + [(f"trial {t}", random_weights(rng)) for t in range(cfg.trials)]
        passed = 0
        for label, w in cases:
            problem = _verify_case(w, n, cfg.oracle_n_cap)
            if problem is None:
                passed += 1
            else:
                failures.append({"n": n, "case": label, "problem": problem,
                                 "weights": w.to_json()["weights"]})
        summary.append({"n": n, "cases": len(cases), "passed": passed})
    ok = not failures
    if cfg.output_format == "json":
        _emit_json(out, {"seed": cfg.seed, "trials": cfg.trials, "ok": ok,
                         "levels": summary, "failures": failures})
    elif cfg.output_format == "csv":
        _write_csv(out, [("seed", "n", "cases", "passed")]
                   + [(cfg.seed, s["n"], s["cases"], s["passed"]) for s in summary])
    else:
        out.write(f"seed {cfg.seed}, {cfg.trials} random matrices per level\n")
        for s in summary:
            status = "PASS" if s["passed"] == s["cases"] else "FAIL"
            out.write(f"n={s['n']}: {s['passed']}/{s['cases']} {status}\n")
        for f in failures:
            out.write(f"counterexample n={f['n']} ({f['case']}): {f['problem']}; "
                      f"weights {json.dumps(f['weights'])}\n")
    return EXIT_OK if ok else EXIT_COUNTEREXAMPLE


def _report_doc(report) -> dict:
    return {
        "digraph": report.digraph.name,
        "arcs": report.digraph.literal(),
        "n": report.n,
        "compatible": report.compatible,
        "strict_compatible": report.strict_compatible,
        "failing_levels": list(report.failing_levels),
        "solution_respects": report.solution_respects,
        "solution_moves": report.solution_moves,
        "forbidden": [
            {"arc": f"{c.arc[0]}>{c.arc[1]}", "threshold": cost_to_json(c.threshold),
             "inequality_holds": c.inequality_holds, "equality_holds": c.equality_holds}
            for c in report.per_forbidden_arc
        ],
    }


def _write_report(cfg, out, report):
    doc = _report_doc(report)
    if cfg.output_format == "json":
        _emit_json(out, doc)
    elif cfg.output_format == "csv":
        rows = [("arc", "threshold", "inequality_holds", "equality_holds")]
        rows += [(f["arc"], f["threshold"], str(f["inequality_holds"]).lower(),
                  str(f["equality_holds"]).lower()) for f in doc["forbidden"]]
        rows.append(("compatible", "", str(report.compatible).lower(), ""))
        _write_csv(out, rows)
    else:
        out.write(f"digraph {doc['digraph']} ({doc['arcs']}), n={report.n}\n")
        for f in doc["forbidden"]:
            out.write(f"  forbid {f['arc']}: threshold {f['threshold']}, "
                      f"inequality {f['inequality_holds']}, equality {f['equality_holds']}\n")
        out.write(f"compatible: {report.compatible}\n")
        out.write(f"compatible at every level: {report.strict_compatible}\n")
        out.write(f"plan {report.source}->{report.destination} avoids forbidden arcs: "
                  f"{report.solution_respects} ({report.solution_moves} moves)\n")


def _digraph(cfg):
    if cfg.digraph is None:
        raise InputError("--digraph is required")
    dg = parse_digraph(cfg.digraph)
    if not dg.is_strongly_connected:
        raise NotStronglyConnected(f"digraph {dg.literal()} is not strongly connected")
    return dg


def cmd_variants(cfg: RunConfig, out) -> int:
    dg = _digraph(cfg)
    weights = _need_weights(cfg)
    n = _need_n(cfg)
    _write_report(cfg, out, respects_variant(weights, n, dg, cfg.source, cfg.destination))
    return EXIT_OK


def cmd_synth(cfg: RunConfig, out) -> int:
    dg = _digraph(cfg)
    base = cfg.weights if cfg.weights is not None else WeightMatrix.uniform(1)
    n = _need_n(cfg)
    w = synthesize_weights(dg, base, n, cfg.source, cfg.destination)
    if cfg.output_format == "json":
        _emit_json(out, w.to_json())
    else:
        out.write(json.dumps(w.to_json()) + "\n")
        _write_report(cfg, out, respects_variant(w, n, dg, cfg.source, cfg.destination))
    return EXIT_OK


def cmd_count(cfg: RunConfig, out) -> int:
    n = _need_n(cfg)
    stats = count_subproblems(n)
    doc = {"n": n, "paper_vn": stats.paper_vn, "distinct_subproblems": stats.distinct_subproblems,
           "naive_calls": stats.naive_calls, "naive_calls_extrapolated": stats.naive_calls_extrapolated}
    if cfg.output_format == "json":
        _emit_json(out, doc)
    elif cfg.output_format == "csv":
        _write_csv(out, [tuple(doc), tuple(doc.values())])
    else:
        note = " (extrapolated)" if stats.naive_calls_extrapolated else ""
        out.write(f"n={n}\n")
        out.write(f"  formula 6^(n-2)+4:        {stats.paper_vn}\n")
        out.write(f"  distinct subproblems:     {stats.distinct_subproblems}\n")
        out.write(f"  unmemoized calls:         {stats.naive_calls}{note}\n")
    return EXIT_OK


def bench_sizes(top: int) -> list:
    """Roughly four points per decade from 1 to ``top``."""
    sizes = {1, top}
    k = 0
    while 10 ** (k / 4) <= top:
        sizes.add(round(10 ** (k / 4)))
        k += 1
    return sorted(s for s in sizes if 1 <= s <= top)


def cmd_bench(cfg: RunConfig, out) -> int:
    weights = cfg.weights if cfg.weights is not None else WORKED_EXAMPLE
    top = cfg.n if cfg.n is not None else 10000
    rows = [("n", "operation", "wall_time_ns")]
    for n in bench_sizes(top):
        t0 = time.perf_counter_ns()
        compute_cost_table(weights, n)
        rows.append((n, "dp_table", time.perf_counter_ns() - t0))
    for n in range(1, cfg.oracle_n_cap + 1):
        t0 = time.perf_counter_ns()
        dijkstra_min_cost(weights, n, 1, 3, cap=cfg.oracle_n_cap)
        rows.append((n, "oracle_dijkstra", time.perf_counter_ns() - t0))
    _write_csv(out, rows)
    return EXIT_OK


COMMANDS = {
    "solve": cmd_solve,
    "cost": cmd_cost,
    "verify": cmd_verify,
    "variants": cmd_variants,
    "synth": cmd_synth,
    "count": cmd_count,
    "bench": cmd_bench,
}


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _nonnegative(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--weights", help="weights JSON file, or the JSON inline")
    common.add_argument("--n", type=_nonnegative, help="number of discs")
    common.add_argument("--from", dest="source", type=int, choices=(1, 2, 3), default=1)
    common.add_argument("--to", dest="destination", type=int, choices=(1, 2, 3), default=3)
    common.add_argument("--digraph", help='arc list like "1>2,2>1" or K3, K3-, L3, C3+, C3')
    common.add_argument("--format", dest="output_format", choices=("table", "json", "csv"),
                        default="table")
    common.add_argument("--dump-table", action="store_true")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=_positive, default=200)
    common.add_argument("--oracle-cap", type=_positive, default=DEFAULT_STATE_CAP)
    common.add_argument("--emit-cap", type=_positive, default=30)

    parser = argparse.ArgumentParser(
        prog="weighted-hanoi", description="Weighted Tower of Hanoi solver and verifier."
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)
    helps = {
        "solve": "print an optimal move sequence",
        "cost": "print the optimal cost (and the full table with --dump-table)",
        "verify": "compare the recursion with exhaustive search on random instances",
        "variants": "check whether weights make a restricted variant optimal",
        "synth": "synthesize finite weights realizing a restricted variant",
        "count": "subproblem counts of the recursion",
        "bench": "CSV timings of the table build and the exhaustive search",
    }
    for name in SUBCOMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


def parse_config(argv=None) -> RunConfig:
    args = build_parser().parse_args(argv)
    weights = load_weights(args.weights) if args.weights is not None else None
    return RunConfig(
        subcommand=args.subcommand,
        weights=weights,
        n=args.n,
        source=args.source,
        destination=args.destination,
        digraph=args.digraph,
        output_format=args.output_format,
        dump_table=args.dump_table,
        oracle_n_cap=args.oracle_cap,
        solution_emit_cap=args.emit_cap,
        seed=args.seed,
        trials=args.trials,
    )


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        cfg = parse_config(argv)
        return COMMANDS[cfg.subcommand](cfg, out)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except HanoiError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT


def run(argv) -> tuple:
    """Run the CLI in-process; returns (exit code, stdout text)."""
    buf = io.StringIO()
    code = main(argv, buf)
    return code, buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())
