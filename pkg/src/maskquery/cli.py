"""Command-line interface.

Subcommands: analyze (closed-form values), simulate (one seeded recovery
with a transcript), montecarlo (expected queries over an ensemble),
classical (one deterministic classical run), figures (CSV data for the
two comparison figures), verify (promise checking on a full table).

Exit codes: 0 success, 1 runtime failure, 2 usage error.
If MASKQUERY_OUTPUT_DIR is set, relative output paths land there.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .algorithms import recover_with_budget
from .analytics import (
    classical_lower_bound_m1,
    entropy_budget_m1,
    t_cb,
    t_cs,
    t_q,
    t_q_approx,
    t_q_series,
)
from .bitstring import BitString
from .harness import ExperimentSpec, emit_figure1, emit_figure3, montecarlo_expected_queries
from .oracle import MaskVariant, MaskedOracle, PromiseViolation, verify_promise


def _resolve_output(path: str) -> str:
    base = os.environ.get("MASKQUERY_OUTPUT_DIR")
    if base and not os.path.isabs(path):
        os.makedirs(base, exist_ok=True)
        return os.path.join(base, path)
    return path


def _print_rational(label: str, value: Fraction) -> None:
    print(f"{label} = {value} ≈ {float(value):.6f}")


def _cmd_analyze(args) -> int:
    printed = False
    if args.tq is not None:
        _print_rational(f"t_q({args.tq})", t_q(args.tq))
        printed = True
    if args.tq_approx is not None:
        print(f"t_q_approx({args.tq_approx}) = {t_q_approx(args.tq_approx):.6f}")
        printed = True
    if args.tq_series is not None:
        print(f"t_q_series({args.tq_series}) = {t_q_series(args.tq_series):.9f}")
        printed = True
    if args.tcb is not None:
        n, m = args.tcb
        print(f"t_cb({n}, {m}) = {t_cb(n, m)}")
        printed = True
    if args.tcs is not None:
        n, m = args.tcs
        _print_rational(f"t_cs({n}, {m})", t_cs(n, m))
        printed = True
    if args.lower_bound is not None:
        print(f"classical_lower_bound_m1({args.lower_bound}) = "
              f"{classical_lower_bound_m1(args.lower_bound)}")
        printed = True
    if args.entropy is not None:
        budget = entropy_budget_m1(args.entropy)
        print(f"entropy_budget_m1({args.entropy}) = total {budget.total:.6f}, "
              f"global {budget.global_part:.6f}, local {budget.local_part:.6f}")
        printed = True
    if not printed:
        print("nothing to analyze; see --help", file=sys.stderr)
        return 2
    return 0


def _trivial_mask_note(s: BitString) -> bool:
    if s.is_zeros() or s.is_ones():
        kind = "all-zeros" if s.is_zeros() else "all-ones"
        print(f"mask {s} is {kind}: determined by its weight alone, 0 queries")
        return True
    return False


def _cmd_simulate(args) -> int:
    s = BitString.parse(args.s)
    if s.width != args.n:
        raise ValueError(f"mask {args.s} does not have width {args.n}")
    if _trivial_mask_note(s):
        return 0
    variant = MaskVariant(args.variant)
    oracle = MaskedOracle(args.n, s, variant, "seeded", args.seed)
    strategy = "quantum" if variant is MaskVariant.AND_MASK else "quantum-or"
    m = oracle.m
    result = recover_with_budget(oracle, args.n, m, strategy,
                                 rng=args.seed, trial_source=args.source)
    lines = []
    accumulated = (BitString.zeros(args.n) if variant is MaskVariant.AND_MASK
                   else BitString.ones(args.n))
    for index, k in enumerate(result.transcript, start=1):
        if variant is MaskVariant.AND_MASK:
            accumulated = accumulated | k
        else:
            accumulated = accumulated & ~k
        record = {"trial": index, "k": str(k), "accumulated": str(accumulated),
                  "weight": accumulated.weight()}
        lines.append(record)
        print(f"trial {index}: measured {k}, accumulated {accumulated}")
    print(f"recovered s = {result.s_found} in {result.queries} queries")
    if args.out:
        path = _resolve_output(args.out)
        with open(path, "w") as handle:
            header = {"oracle": oracle.spec(), "strategy": strategy, "seed": args.seed}
            handle.write(json.dumps(header) + "\n")
            for record in lines:
                handle.write(json.dumps(record) + "\n")
            handle.write(json.dumps({"recovered": str(result.s_found),
                                     "queries": result.queries}) + "\n")
        print(f"transcript written to {path}")
    return 0


def _cmd_montecarlo(args) -> int:
    spec = ExperimentSpec(n=args.n, m=args.m, strategy=args.strategy,
                          runs=args.runs, seed=args.seed, variant=args.variant,
                          trial_source=args.source, s=args.s)
    stats = montecarlo_expected_queries(spec)
    print(f"strategy {spec.strategy}: n={spec.n} m={spec.m} runs={stats.runs}")
    print(f"mean queries = {stats.mean:.6f} (std error {stats.std_error:.6f}, "
          f"total {stats.total_queries})")
    if args.out:
        path = _resolve_output(args.out)
        with open(path, "w") as handle:
            json.dump({"spec": json.loads(spec.to_json()),
                       "mean": stats.mean, "std_error": stats.std_error,
                       "runs": stats.runs, "total_queries": stats.total_queries},
                      handle, indent=2, sort_keys=True)
            handle.write("\n")
        print(f"results written to {path}")
    return 0


def _cmd_classical(args) -> int:
    s = BitString.parse(args.s)
    if s.width != args.n:
        raise ValueError(f"mask {args.s} does not have width {args.n}")
    if _trivial_mask_note(s):
        return 0
    oracle = MaskedOracle(args.n, s, MaskVariant.AND_MASK, "seeded", args.seed)
    result = recover_with_budget(oracle, args.n, s.weight(), args.algorithm)
    for probe, answer in result.transcript:
        print(f"f({probe}) = {answer}")
    print(f"recovered s = {result.s_found} in {result.queries} queries")
    return 0


def _cmd_figures(args) -> int:
    if args.which == 1:
        path = _resolve_output(args.out or "figure1.csv")
        emit_figure1(m_max=args.m_max, path=path)
    else:
        path = _resolve_output(args.out or "figure3.csv")
        emit_figure3(n=args.n, path=path)
    print(f"wrote {path} (+ manifest)")
    return 0


def _cmd_verify(args) -> int:
    s = BitString.parse(args.s)
    variant = MaskVariant(args.variant)
    oracle = MaskedOracle(args.n, s, variant, args.labeling, args.seed)
    claimed = args.claimed_m if args.claimed_m is not None else oracle.m
    check = verify_promise(oracle, args.n, claimed, variant)
    if check.holds:
        print(f"promise holds with mask {check.mask} (weight {check.mask.weight()})")
        return 0
    print(f"promise violated: {check.detail}")
    if check.violation:
        x, y = check.violation
        print(f"witness pair: x={x}, y={y}")
    return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="maskquery",
        description="Hidden-mask recovery from promise oracles, with exact "
                    "query accounting.")
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="print closed-form query counts")
    analyze.add_argument("--tq", type=int, metavar="M")
    analyze.add_argument("--tq-approx", type=int, metavar="M")
    analyze.add_argument("--tq-series", type=int, metavar="M")
    analyze.add_argument("--tcb", type=int, nargs=2, metavar=("N", "M"))
    analyze.add_argument("--tcs", type=int, nargs=2, metavar=("N", "M"))
    analyze.add_argument("--lower-bound", type=int, metavar="N")
    analyze.add_argument("--entropy", type=int, metavar="N")
    analyze.set_defaults(func=_cmd_analyze)

    simulate = sub.add_parser("simulate", help="one seeded quantum recovery")
    simulate.add_argument("--n", type=int, required=True)
    simulate.add_argument("--s", type=str, required=True, help="mask, e.g. 110")
    simulate.add_argument("--variant", choices=["and", "or"], default="and")
    simulate.add_argument("--seed", type=int, default=0)
    simulate.add_argument("--source", choices=["fast", "full"], default="fast")
    simulate.add_argument("--out", type=str, help="JSON-lines transcript path")
    simulate.set_defaults(func=_cmd_simulate)

    montecarlo = sub.add_parser("montecarlo", help="expected queries over an ensemble")
    montecarlo.add_argument("--n", type=int, required=True)
    montecarlo.add_argument("--m", type=int, required=True,
                            help="bits the oracle reads (mask weight for AND)")
    montecarlo.add_argument("--strategy", required=True,
                            choices=["quantum", "quantum-or", "binary",
                                     "sequential", "binary-adapted"])
    montecarlo.add_argument("--runs", type=int, default=10000)
    montecarlo.add_argument("--seed", type=int, default=0)
    montecarlo.add_argument("--variant", choices=["and", "or"], default="and")
    montecarlo.add_argument("--source", choices=["fast", "full"], default="fast")
    montecarlo.add_argument("--s", type=str, help="fix the mask instead of drawing")
    montecarlo.add_argument("--out", type=str, help="JSON results path")
    montecarlo.set_defaults(func=_cmd_montecarlo)

    classical = sub.add_parser("classical", help="one deterministic classical run")
    classical.add_argument("--algorithm", required=True,
                           choices=["binary", "sequential", "binary-adapted"])
    classical.add_argument("--n", type=int, required=True)
    classical.add_argument("--s", type=str, required=True)
    classical.add_argument("--seed", type=int, default=0, help="labeling seed")
    classical.set_defaults(func=_cmd_classical)

    figures = sub.add_parser("figures", help="emit figure data CSVs")
    figures.add_argument("--which", type=int, choices=[1, 3], required=True)
    figures.add_argument("--out", type=str)
    figures.add_argument("--m-max", type=int, default=500, help="figure 1 sweep end")
    figures.add_argument("--n", type=int, default=200, help="figure 3 width")
    figures.set_defaults(func=_cmd_figures)

    verify = sub.add_parser("verify", help="check the mask promise on a table")
    verify.add_argument("--n", type=int, required=True)
    verify.add_argument("--s", type=str, required=True)
    verify.add_argument("--variant", choices=["and", "or"], default="and")
    verify.add_argument("--labeling", choices=["canonical", "seeded"], default="seeded")
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--claimed-m", type=int)
    verify.set_defaults(func=_cmd_verify)

    return parser


def cli_dispatch(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ValueError, PromiseViolation) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(cli_dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
