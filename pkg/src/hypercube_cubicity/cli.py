"""Command-line front end.

Exit codes: 0 success, 1 property violated, 2 restarts exhausted,
64 usage error, 65 malformed input file, 70 verifier disagreement,
74 I/O failure.

Examples:
  cubicity build -d 8 -c 3 --seed 1 -o rep.json
  cubicity verify rep.json --mode both
  cubicity prob -r 5 --mc 1000000 --seed 3
  cubicity bounds -d 1024 --find-c
  cubicity oracle c4.json
  cubicity experiment --d-min 4 --d-max 12 --trials 10 --seed 0 --csv out.csv
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from . import analysis
from .builder import (
    C_GRID,
    CLASSWISE_MAX_D,
    PAIRWISE_MAX_D,
    attempt_rng,
    build_representation,
    check_property_P_classwise,
    check_property_P_pairwise,
    minimize_seed_set,
)
from .core import to_bitstring
from .experiment import EXPERIMENT_MAX_D, run_experiment
from .files import MalformedFile, RepresentationFile, write_experiment_csv
from .oracle import ORACLE_MAX_N, SmallGraph, exact_cubicity

EX_OK = 0
EX_VIOLATED = 1
EX_EXHAUSTED = 2
EX_USAGE = 64
EX_DATAERR = 65
EX_SOFTWARE = 70
EX_IOERR = 74


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


def _emit(doc) -> None:
    print(json.dumps(doc, indent=2, sort_keys=True))


def _pair_doc(pair, d):
    return None if pair is None else [to_bitstring(pair[0], d), to_bitstring(pair[1], d)]


def _class_doc(cls, d):
    if cls is None:
        return None
    positions = [i + 1 for i in range(d) if cls.positions >> i & 1]
    pattern = "".join(str(cls.pattern >> j & 1) for j in range(cls.distance))
    return {"positions": positions, "pattern": pattern}


def _report_doc(report, d):
    return {
        "method": report.method,
        "satisfied": report.satisfied,
        "checked": report.checked,
        "elapsed_ms": round(report.elapsed_ms, 3),
        "counterexample": _pair_doc(report.counterexample, d),
        "counterexample_class": _class_doc(report.counterexample_class, d),
    }


def _grid(start: float, stop: float, step: float) -> List[float]:
    k = int(round((stop - start) / step))
    return [round(start + i * step, 10) for i in range(k + 1)]


def cmd_build(args) -> int:
    d = args.d
    if d < 2:
        raise UsageError(
            "d must be at least 2: H_1 is K_2, a unit interval graph of cubicity 1, "
            "and needs no randomized construction"
        )
    if d > CLASSWISE_MAX_D:
        raise UsageError(f"d must be at most {CLASSWISE_MAX_D} for verification")
    if args.find_c:
        grid = _grid(args.grid_start, args.grid_stop, args.grid_step)
    elif args.c is not None:
        if args.c <= 0:
            raise UsageError("c must be positive")
        grid = [args.c]
    else:
        raise UsageError("give -c or --find-c")
    attempts = 0
    for c in grid:
        result = build_representation(d, c, args.seed, args.max_restarts)
        attempts += result.attempts
        if result.success:
            break
    if not result.success:
        cls = result.last_counterexample
        print(
            json.dumps({"error": "restarts exhausted", "c": result.c,
                        "counterexample_class": _class_doc(cls, d),
                        "counterexample": _pair_doc(result.report.counterexample, d)}),
            file=sys.stderr,
        )
        return EX_EXHAUSTED
    S = minimize_seed_set(result.seed_set) if args.minimize else result.seed_set
    text = RepresentationFile.from_seed_set(S, verified=True).dumps()
    if args.out:
        try:
            with open(args.out, "w") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"cannot write {args.out}: {exc}", file=sys.stderr)
            return EX_IOERR
        _emit({
            "d": d, "c": result.c, "attempts": attempts, "attempts_at_c": result.attempts,
            "seed_count": len(result.seed_set), "written_count": len(S),
            "duplicates": result.seed_set.duplicate_count, "out": args.out,
        })
    else:
        sys.stdout.write(text)
    return EX_OK


def _load_rep(path) -> RepresentationFile:
    with open(path) as fh:
        return RepresentationFile.loads(fh.read())


def cmd_verify(args) -> int:
    try:
        rep = _load_rep(args.path)
    except OSError as exc:
        print(f"cannot read {args.path}: {exc}", file=sys.stderr)
        return EX_IOERR
    S = rep.seed_set()
    modes = ["pairwise", "classwise"] if args.mode == "both" else [args.mode]
    if "pairwise" in modes and S.d > PAIRWISE_MAX_D:
        raise UsageError(f"pairwise verification is capped at d={PAIRWISE_MAX_D}; use --mode classwise")
    if S.d > CLASSWISE_MAX_D:
        raise UsageError(f"classwise verification is capped at d={CLASSWISE_MAX_D}")
    reports = []
    for mode in modes:
        check = check_property_P_pairwise if mode == "pairwise" else check_property_P_classwise
        reports.append(check(S))
    verdicts = {r.satisfied for r in reports}
    doc = {"d": S.d, "size": len(S), "reports": [_report_doc(r, S.d) for r in reports]}
    if len(verdicts) > 1:
        doc["error"] = "verifier disagreement"
        _emit(doc)
        return EX_SOFTWARE
    doc["satisfied"] = reports[0].satisfied
    _emit(doc)
    return EX_OK if reports[0].satisfied else EX_VIOLATED


def cmd_prob(args) -> int:
    if args.r < 2:
        raise UsageError("r must be at least 2 (r = 1 is an edge, which always survives)")
    p = analysis.edge_prob_exact(args.r)
    doc = {"r": args.r, "exact": f"{p.numerator}/{p.denominator}", "decimal": float(p)}
    if args.mc:
        d = args.d if args.d is not None else args.r
        if d < args.r:
            raise UsageError("d must be at least r")
        est = analysis.edge_prob_monte_carlo(args.r, d, args.mc, attempt_rng(args.seed, 0))
        doc["monte_carlo"] = {
            "estimate": est.estimate, "stderr": est.stderr, "samples": est.samples,
            "d": d, "seed": args.seed,
            "within_3_stderr": abs(est.estimate - float(p)) <= 3 * est.stderr,
        }
    _emit(doc)
    return EX_OK


def cmd_bounds(args) -> int:
    if args.d < 4:
        raise UsageError("bounds are only evaluated for d >= 4")
    if args.find_c:
        c = analysis.required_c(args.d, step=args.step, c_max=args.c_max)
        doc = {"d": args.d, "step": args.step, "required_c": c,
               "report": None if c is None else analysis.failure_bound(args.d, c).to_dict()}
        _emit(doc)
        return EX_OK
    if args.c is None or args.c <= 0:
        raise UsageError("give a positive -c or --find-c")
    report = analysis.failure_bound(args.d, args.c)
    if args.csv:
        print(",".join(report.csv_header()))
        print(",".join(report.csv_row()))
    else:
        _emit(report.to_dict())
    return EX_OK


def cmd_oracle(args) -> int:
    try:
        with open(args.path) as fh:
            text = fh.read()
    except OSError as exc:
        print(f"cannot read {args.path}: {exc}", file=sys.stderr)
        return EX_IOERR
    try:
        G = SmallGraph.from_json(text)
    except (ValueError, KeyError, TypeError) as exc:
        print(f"malformed graph file: {exc}", file=sys.stderr)
        return EX_DATAERR
    if G.n > ORACLE_MAX_N:
        raise UsageError(f"the exact oracle handles at most {ORACLE_MAX_N} vertices")
    if not 1 <= args.t_max <= 4:
        raise UsageError("t_max must lie in 1..4")
    result = exact_cubicity(G, args.t_max)
    doc = {"n": G.n, "edges": len(G.edges())}
    doc.update(result.to_dict())
    _emit(doc)
    return EX_OK


def cmd_experiment(args) -> int:
    if not 2 <= args.d_min <= args.d_max <= EXPERIMENT_MAX_D:
        raise UsageError(f"need 2 <= d-min <= d-max <= {EXPERIMENT_MAX_D}")
    if args.trials < 1:
        raise UsageError("trials must be at least 1")
    result = run_experiment(args.d_min, args.d_max, args.trials, args.seed)
    text = write_experiment_csv(result.rows, result.summaries())
    try:
        with open(args.csv, "w") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"cannot write {args.csv}: {exc}", file=sys.stderr)
        return EX_IOERR
    for line in result.summaries():
        print(line)
    return EX_OK


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cubicity", description="Distance-layer cube representations of hypercubes.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("build", help="sample and verify a seed set")
    p.add_argument("-d", type=int, required=True)
    p.add_argument("-c", type=float)
    p.add_argument("--find-c", action="store_true", help="smallest working c on the grid")
    p.add_argument("--grid-start", type=float, default=C_GRID[0])
    p.add_argument("--grid-stop", type=float, default=C_GRID[-1])
    p.add_argument("--grid-step", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-restarts", type=int, default=20)
    p.add_argument("--minimize", action="store_true")
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="check a representation file")
    p.add_argument("path")
    p.add_argument("--mode", choices=["pairwise", "classwise", "both"], default="both")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("prob", help="survival probability of a pair at distance r")
    p.add_argument("-r", type=int, required=True)
    p.add_argument("--mc", type=int, default=0, help="Monte Carlo samples")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-d", type=int)
    p.set_defaults(func=cmd_prob)

    p = sub.add_parser("bounds", help="union-bound failure probability")
    p.add_argument("-d", type=int, required=True)
    p.add_argument("-c", type=float)
    p.add_argument("--find-c", action="store_true")
    p.add_argument("--step", type=float, default=0.1)
    p.add_argument("--c-max", type=float, default=1000.0)
    p.add_argument("--csv", action="store_true")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("oracle", help="exact cubicity of a small graph")
    p.add_argument("path")
    p.add_argument("--t-max", type=int, default=4)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("experiment", help="scaling table as CSV")
    p.add_argument("--d-min", type=int, default=4)
    p.add_argument("--d-max", type=int, default=12)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv", required=True)
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"cubicity {args.command}: {exc}", file=sys.stderr)
        return EX_USAGE
    except MalformedFile as exc:
        print(f"malformed file: {exc}", file=sys.stderr)
        return EX_DATAERR


if __name__ == "__main__":
    sys.exit(main())
