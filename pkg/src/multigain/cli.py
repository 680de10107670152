"""Command-line entry point.

Exit codes: 0 success (and, for ``experiment``, every criterion passed),
1 completed but criteria failed, 2 usage or configuration error, 3 runtime
error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import bounds, oracle
from .algorithms import EaConfig, run
from .core import bitstring, derive_stream, to_str
from .dimacs import read_dimacs
from .errors import InputError, MultiGainError
from .experiments import (
    FIGURE_PANELS,
    ExperimentSpec,
    check_criteria,
    run_experiment,
    write_csv,
    write_figure,
    write_summary,
)
from .instrumentation import empirical_multiple_gain, first_hitting_time
from .problems import (
    MinimizedView,
    OneMaxProblem,
    fixed_start,
    make_knapsack_b,
    make_maxsat_c,
    optimum_fitness,
)

EXIT_OK, EXIT_CRITERIA, EXIT_USAGE, EXIT_RUNTIME = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}\n{self.format_usage()}")


def parse_range(text: str) -> tuple[int, ...]:
    """``lo:hi[:step]`` inclusive on both ends, or a single integer."""
    try:
        parts = [int(p) for p in text.split(":")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid range {text!r}") from None
    if len(parts) == 1:
        return (parts[0],)
    if len(parts) not in (2, 3) or (len(parts) == 3 and parts[2] < 1) or parts[1] < parts[0]:
        raise argparse.ArgumentTypeError(f"invalid range {text!r}; use lo:hi[:step]")
    step = parts[2] if len(parts) == 3 else 1
    return tuple(range(parts[0], parts[1] + 1, step))


PROBLEMS = ("onemax", "knapsack", "maxsat")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="multigain", description="Runtime analysis of elitist EAs via multiple gains.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("experiment", help="run a replication campaign and write CSV, summary and figures")
    p.add_argument("family", choices=("A", "B", "C"))
    p.add_argument("--n", type=parse_range, required=True, help="lo:hi[:step]")
    p.add_argument("--runs", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--lambda", dest="lam", type=int, default=20)
    p.add_argument("--max-generations", type=int, default=10**7)
    p.add_argument("--count-improving", action="store_true", help="count the improving generation in k_i")
    p.add_argument("--threshold", type=float, default=0.91)
    p.add_argument("--out", type=Path, required=True)

    p = sub.add_parser("bounds", help="print EFHT1, k_low and the worst-case bound")
    p.add_argument("problem", choices=PROBLEMS)
    p.add_argument("--n", type=int)
    p.add_argument("--lambda", dest="lam", type=int, default=20)
    p.add_argument("--beta", type=float)
    p.add_argument("--y0", type=float)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--q", type=int)
    p.add_argument("--N", dest="big_n", type=int)
    p.add_argument("--d-min", type=float)
    p.add_argument("--v-min", type=float)
    p.add_argument("--n-opt", type=int)
    p.add_argument("--cnf", type=Path)

    for name, text in (("run", "execute one run and print its Y sequence"),
                       ("gain", "estimate the expected k-generation gain")):
        p = sub.add_parser(name, help=text)
        p.add_argument("problem", choices=PROBLEMS)
        p.add_argument("--n", type=int)
        p.add_argument("--lambda", dest="lam", type=int, default=20)
        p.add_argument("--p", dest="mutation_prob", type=float)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--stream", type=int, default=0)
        p.add_argument("--start", help="initial bit string, e.g. 0011")
        p.add_argument("--max-generations", type=int, default=10**7)
        p.add_argument("--cnf", type=Path)
        p.add_argument("--optimum", type=float, help="optimum fitness of a --cnf formula")
        if name == "gain":
            p.add_argument("--k", type=int, default=1)
            p.add_argument("--samples", type=int, default=10_000)

    p = sub.add_parser("oracle", help="exact expected hitting time on a small instance")
    p.add_argument("problem", choices=PROBLEMS)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=int, default=20)
    return parser


def _cmd_experiment(args, out) -> int:
    if len(args.n) < 2:
        raise UsageError("--n must span at least two grid points (the figures need two per series)")
    spec = ExperimentSpec(
        args.family, args.n, args.runs, args.lam, args.seed,
        args.max_generations, args.count_improving, args.threshold,
    )
    report = run_experiment(spec)
    args.out.mkdir(parents=True, exist_ok=True)
    fam = spec.family.value
    with open(args.out / f"results_{fam}.csv", "wb") as fh:
        write_csv(report, fh)
    with open(args.out / f"summary_{fam}.txt", "wb") as fh:
        write_summary(report, fh)
    for panel in FIGURE_PANELS:
        with open(args.out / f"fig_{fam}_{panel}.svg", "wb") as fh:
            write_figure(report, panel, fh)

    out.write(f"{'n':>4} {'EFHT1':>10} {'T0_mean':>10} {'EFHT2':>10} {'T_max':>8} {'k_hat':>9} {'k_low':>9}\n")
    for r in report.rows:
        out.write(
            f"{r.n:>4} {r.efht1:>10.3f} {r.t0_mean:>10.3f} {r.efht2:>10.3f} "
            f"{r.t0_max:>8d} {r.k_hat:>9.3f} {r.k_low:>9.3f}\n"
        )
    criteria = check_criteria(report)
    for c in criteria:
        out.write(f"{'PASS' if c.passed else 'FAIL'} {c.name}: {c.detail}\n")
    return EXIT_OK if all(c.passed for c in criteria) else EXIT_CRITERIA


def _need(value, flag):
    if value is None:
        raise UsageError(f"{flag} is required here")
    return value


def _cmd_bounds(args, out) -> int:
    if args.problem == "onemax":
        n = _need(args.n, "--n")
        efht1, k_low = bounds.onemax_efht1(n), bounds.onemax_klow(n)
        y0 = n if args.y0 is None else args.y0
    elif args.problem == "knapsack":
        n = _need(args.n, "--n")
        base = bounds.KnapsackBoundParams.experiment_b(n, args.lam)
        params = bounds.KnapsackBoundParams(
            n, args.lam,
            q=base.q if args.q is None else args.q,
            N=base.N if args.big_n is None else args.big_n,
            d_min=base.d_min if args.d_min is None else args.d_min,
            v_min=base.v_min if args.v_min is None else args.v_min,
            y0=base.y0 if args.y0 is None else args.y0,
            beta=base.beta if args.beta is None else args.beta,
        )
        efht1, k_low, y0 = bounds.knapsack_efht1(params), bounds.knapsack_klow(params), params.y0
        regime, loose = bounds.knapsack_regime(params)
        out.write(f"regime: {regime.value} (loose bound {loose:.6g})\n")
    else:
        if args.cnf is not None:
            formula = read_dimacs(args.cnf)
            n_opt = _need(args.n_opt, "--n-opt (with --cnf)")
            y0 = _need(args.y0, "--y0 (with --cnf)")
            params = bounds.MaxSatBoundParams(formula.n, args.lam, n_opt, formula.s, args.beta or 1.0)
        else:
            n = _need(args.n, "--n")
            base = bounds.MaxSatBoundParams.experiment_c(n, args.lam)
            params = bounds.MaxSatBoundParams(
                n, args.lam,
                base.n_opt if args.n_opt is None else args.n_opt,
                base.s,
                base.beta if args.beta is None else args.beta,
            )
            y0 = n - 1 if args.y0 is None else args.y0
        efht1, k_low = bounds.maxsat_efht1(params), bounds.maxsat_klow(params)
    out.write(f"EFHT1: {efht1:.6g}\n")
    out.write(f"k_low: {k_low:.6g}\n")
    out.write(f"worst-case (k_low*y0/alpha): {bounds.worst_case_bound(k_low, y0, args.alpha):.6g}\n")
    return EXIT_OK


def _setup_single(args):
    if args.problem == "maxsat" and args.cnf is not None:
        formula = read_dimacs(args.cnf)
        opt = args.optimum if args.optimum is not None else optimum_fitness(formula)
        problem = MinimizedView(formula, opt)
        rate = 0.5 if args.mutation_prob is None else args.mutation_prob
        cfg = EaConfig.one_plus_lambda(args.lam, rate, args.max_generations)
        x0 = fixed_start("C", formula.n)
    else:
        n = _need(args.n, "--n")
        if args.problem == "onemax":
            problem = MinimizedView(OneMaxProblem(n), float(n))
            cfg = EaConfig.one_plus_one(args.mutation_prob, args.max_generations)
            x0 = fixed_start("A", n)
        elif args.problem == "knapsack":
            problem = MinimizedView(make_knapsack_b(n), 7.0)
            cfg = EaConfig.one_plus_lambda(args.lam, args.mutation_prob, args.max_generations)
            x0 = fixed_start("B", n)
        else:
            problem = MinimizedView(make_maxsat_c(n), float(2 * (n - 1)))
            rate = 0.5 if args.mutation_prob is None else args.mutation_prob
            cfg = EaConfig.one_plus_lambda(args.lam, rate, args.max_generations)
            x0 = fixed_start("C", n)
    if args.start is not None:
        x0 = bitstring(args.start)
    return problem, cfg, x0


def _cmd_run(args, out) -> int:
    problem, cfg, x0 = _setup_single(args)
    trace = run(problem, cfg, x0, derive_stream(args.seed, args.stream))
    out.write(" ".join(f"{y:g}" for y in trace.y_values) + "\n")
    out.write(f"T0: {first_hitting_time(trace)}  evaluations: {trace.evaluations}  final: {to_str(trace.final)}\n")
    return EXIT_OK


def _cmd_gain(args, out) -> int:
    problem, cfg, x0 = _setup_single(args)
    mean, se = empirical_multiple_gain(
        problem, cfg, x0, args.k, args.samples, derive_stream(args.seed, args.stream)
    )
    out.write(f"G(k={args.k}) = {mean:.6g} +/- {se:.3g} (stderr, {args.samples} samples)\n")
    return EXIT_OK


def _cmd_oracle(args, out) -> int:
    n = args.n
    if args.problem == "onemax":
        value = oracle.onemax_exact_efht(n)
    elif args.problem == "knapsack":
        value = oracle.knapsack_exact_efht(make_knapsack_b(n), args.lam, np.zeros(n, dtype=np.uint8))
    else:
        value = oracle.maxsat_c_exact_efht(n, args.lam)
    out.write(f"exact EFHT: {value:.10g}\n")
    return EXIT_OK


COMMANDS = {
    "experiment": _cmd_experiment,
    "bounds": _cmd_bounds,
    "run": _cmd_run,
    "gain": _cmd_gain,
    "oracle": _cmd_oracle,
}


def main(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        err.write(str(exc) + "\n")
        return EXIT_USAGE
    except SystemExit as exc:
        # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    except InputError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (MultiGainError, OSError, ArithmeticError) as exc:
        err.write(f"runtime error: {exc}\n")
        return EXIT_RUNTIME
    except Exception as exc:  # noqa: BLE001
        err.write(f"runtime error: {type(exc).__name__}: {exc}\n")
        return EXIT_RUNTIME


def entry() -> None:
    sys.exit(main())
