"""Command-line entry point.

Subcommands: solve, verify, oracle, gen, compare, bench.  Data goes to
standard output, diagnostics to standard error.  Exit codes: 0 on success,
1 on verification/comparison failure, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

import numpy as np

from ._version import __version__
from .bench import DegenerateFit, fit_exponent, render_table, run_scaling
from .bmatch import solve_b_matching
from .core import (
    BadRange,
    BMatchInstance,
    InvalidInstance,
    SolverConfig,
    INITIAL_EMPTY,
    INITIAL_GREEDY_EQUALITY,
    generate_instance,
    verify_b_matching,
)
from .io import ParseError, format_weight, parse_instance, parse_result, render_instance, render_result
from .oracle import InfeasibleInstance, OracleLimits, TooLarge, brute_force_b_matching

# The designated stress case for the discrepancy corpus: profitable unused
# capacity that the two-phase method leaves on the table.
STRESS_INSTANCE = BMatchInstance(
    s=2, t=2, alpha=(2, 1), beta=(1, 2), weights=np.array([[6.0, 1.0], [2.0, 5.0]])
)


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _cmd_solve(args: argparse.Namespace) -> int:
    inst = parse_instance(_read(args.file))
    strategy = INITIAL_GREEDY_EQUALITY if args.greedy_init else INITIAL_EMPTY
    cfg = SolverConfig(eps=args.eps, initial_matching=strategy)
    bm, report = solve_b_matching(inst, cfg, check_invariants=args.check_invariants)
    sys.stdout.write(render_result(bm, report, solver_version=__version__))
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    inst = parse_instance(_read(args.instance))
    bm = parse_result(_read(args.result))
    report = verify_b_matching(inst, bm, eps=args.eps)
    print(str(report))
    return 0 if report.ok else 1


def _cmd_oracle(args: argparse.Namespace) -> int:
    inst = parse_instance(_read(args.file))
    _, bm = brute_force_b_matching(
        inst, OracleLimits(max_states=args.max_states), simple_edges=args.simple_edges
    )
    sys.stdout.write(render_result(bm, solver_version=__version__))
    return 0


def _cmd_gen(args: argparse.Namespace) -> int:
    inst = generate_instance(
        args.s, args.t, args.cap_max, args.wmin, args.wmax,
        integer_weights=args.int_weights, seed=args.seed,
    )
    sys.stdout.write(render_instance(inst))
    return 0


def _cmd_compare(args: argparse.Namespace) -> int:
    rng = random.Random(args.seed)
    cases: list[tuple[str, BMatchInstance]] = []
    if args.include_stress:
        cases.append(("stress", STRESS_INSTANCE))
    lo, hi = (-9, -1) if args.all_negative else (-9, 9)
    for _ in range(args.count):
        s = rng.randint(1, args.max_s)
        t = rng.randint(1, args.max_t)
        inst_seed = rng.randrange(2**32)
        cases.append(
            (str(inst_seed), generate_instance(s, t, args.cap_max, lo, hi, True, inst_seed))
        )

    cex_dir = Path(args.cex_dir)
    cex_dir.mkdir(parents=True, exist_ok=True)
    limits = OracleLimits(max_states=args.max_states)
    agree_count = 0
    disagreements = 0
    solver_weights = []
    oracle_weights = []
    for idx, (label, inst) in enumerate(cases):
        bm, _ = solve_b_matching(inst)
        oracle_weight, _ = brute_force_b_matching(inst, limits)
        solver_weights.append(bm.total_weight)
        oracle_weights.append(oracle_weight)
        agree = abs(bm.total_weight - oracle_weight) <= args.eps
        print(
            f"{label} {format_weight(bm.total_weight)} {format_weight(oracle_weight)} "
            f"{'yes' if agree else 'no'}"
        )
        if agree:
            agree_count += 1
        else:
            disagreements += 1
            body = (
                f"# compare counterexample: solver={format_weight(bm.total_weight)} "
                f"oracle={format_weight(oracle_weight)}\n"
            )
            (cex_dir / f"cex_{idx:05d}_{label}.txt").write_text(
                body + render_instance(inst), encoding="utf-8"
            )
    total = len(cases)
    rate = agree_count / total if total else 1.0
    print(
        f"# agreement {agree_count}/{total} rate {rate:.6f} "
        f"counterexamples {disagreements} dir {args.cex_dir}"
    )
    if args.plot:
        from .plots import save_agreement_plot

        save_agreement_plot(solver_weights, oracle_weights, args.plot)
    return 1 if disagreements else 0


def _cmd_bench(args: argparse.Namespace) -> int:
    sizes = [int(tok) for tok in args.sizes.split(",") if tok.strip()]
    rows = run_scaling(sizes, args.reps, args.seed)
    slope = fit_exponent(rows)
    table = render_table(rows, slope)
    plot_path = args.plot
    if args.out:
        Path(args.out).write_text(table, encoding="utf-8")
        if plot_path is None:
            plot_path = str(Path(args.out).with_suffix(".png"))
    else:
        sys.stdout.write(table)
    if plot_path:
        from .plots import save_scaling_plot

        save_scaling_plot(rows, slope, plot_path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bmatching",
        description="Maximum-weight b-matching solver, oracle, and harnesses.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve an instance file, print result JSON")
    p.add_argument("file")
    p.add_argument("--eps", type=float, default=1e-9)
    p.add_argument("--greedy-init", action="store_true",
                   help="seed the solve with greedy equality-edge matches")
    p.add_argument("--check-invariants", action="store_true",
                   help="recompute solver invariants from scratch at every step")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("verify", help="check a result file against an instance file")
    p.add_argument("instance")
    p.add_argument("result")
    p.add_argument("--eps", type=float, default=1e-9)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("oracle", help="exhaustive optimum of an instance file")
    p.add_argument("file")
    p.add_argument("--max-states", type=int, default=OracleLimits().max_states)
    p.add_argument("--simple-edges", action="store_true",
                   help="restrict the oracle to 0/1 multiplicities")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("gen", help="generate a random feasible instance")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--cap-max", type=int, default=3)
    p.add_argument("--wmin", type=float, default=-9)
    p.add_argument("--wmax", type=float, default=9)
    p.add_argument("--int", dest="int_weights", action="store_true",
                   help="round weights to integers")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("compare", help="fuzz solver against the oracle")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--max-s", type=int, default=5)
    p.add_argument("--max-t", type=int, default=5)
    p.add_argument("--cap-max", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--all-negative", action="store_true",
                   help="draw weights from [-9, -1] instead of [-9, 9]")
    p.add_argument("--include-stress", action="store_true",
                   help="prepend the designated stress instance to the run")
    p.add_argument("--cex-dir", default="counterexamples",
                   help="directory for disagreeing instances")
    p.add_argument("--eps", type=float, default=1e-9)
    p.add_argument("--max-states", type=int, default=OracleLimits().max_states)
    p.add_argument("--plot", default=None, help="write an agreement scatter PNG here")
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("bench", help="runtime scaling and fitted exponent")
    p.add_argument("--sizes", required=True, help="comma-separated n values, e.g. 128,256,512")
    p.add_argument("--reps", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="write the TSV here instead of stdout")
    p.add_argument("--plot", default=None,
                   help="write a log-log scaling PNG here (defaults next to --out)")
    p.set_defaults(func=_cmd_bench)
    return parser


def run(argv) -> int:
    """Parse argv and dispatch; returns the process exit code."""
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InvalidInstance, BadRange, TooLarge, InfeasibleInstance, DegenerateFit) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main(argv=None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
