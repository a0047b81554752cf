"""Command-line front end: classify, solve, bench and verify.

Exit codes are the machine contract: 0 success/converged, 1 no convergence,
2 file/flag problems, 3 dimension mismatches, 4 missing group inverse.
Benchmark tables print the comparison-table columns; --csv writes
``order,scheme,iterations,residual,error,time_s,rho_or_gamma``.
"""
from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass

import numpy as np

from .analysis import (
    is_semiconvergent,
    power_limit_oracle,
    verify_convergence_theorem,
    verify_semiconvergence_theorem,
)
from .core import ToleranceProfile, gamma, group_inverse, spectral_radius
from .errors import (
    AltSplitError,
    DimensionMismatchError,
    IndexGreaterThanOneError,
    MatrixMarketError,
    MismatchedSplittingError,
    NotSquareError,
)
from .generators import (
    random_group_monotone_regular_triple,
    random_index_one,
    random_proper_triple,
    random_quasi_regular_triple,
    random_semiconvergence_case,
    random_singular_m_matrix_triple,
)
from .problems import (
    make_laplace,
    make_random_walk,
    read_matrix_market,
    read_vector,
    write_vector,
)
from .schemes import SchemeConfig, run
from .splittings import (
    alternating_iteration_matrix,
    classify,
    companion_matrix,
    diag_scaling_splitting,
    make_splitting,
)

CSV_HEADER = ["order", "scheme", "iterations", "residual", "error", "time_s", "rho_or_gamma"]


@dataclass(frozen=True)
class BenchRow:
    """One benchmark table row; ``error`` is None for the singular benchmark."""

    order: int
    scheme: str
    iterations: int
    residual: float
    error: float | None
    time_seconds: float
    rho_or_gamma: float


def _scheme_slices(count: int):
    """single = first splitting, two = first two, three = all three."""
    out = [("single", slice(0, 1))]
    if count >= 2:
        out.insert(0, ("two", slice(0, 2)))
    if count >= 3:
        out.insert(0, ("three", slice(0, 3)))
    return out


def bench_laplace(
    grid_n: int,
    alphas=(1.0, 1.5, 1.75),
    tol: float = 1e-6,
    stop: str = "error",
    single_alpha: float | None = None,
    max_iterations: int = 2_000_000,
):
    """Run the Dirichlet benchmark; returns rows three/two/single."""
    problem = make_laplace(grid_n)
    alphas = sorted(alphas)
    splits = [diag_scaling_splitting(problem.A, a) for a in alphas]
    rule = "error_vs_exact" if stop == "error" else "residual"
    rows = []
    for scheme, sl in _scheme_slices(len(splits)):
        chosen = splits[sl]
        if scheme == "single" and single_alpha is not None:
            chosen = [diag_scaling_splitting(problem.A, single_alpha)]
        config = SchemeConfig(
            splittings=chosen,
            stop_rule=rule,
            tolerance=tol,
            max_iterations=max_iterations,
        )
        report = run(config, problem.b, exact=problem.exact)
        rho = spectral_radius(alternating_iteration_matrix(chosen))
        rows.append(
            BenchRow(
                order=problem.order,
                scheme=scheme,
                iterations=report.iterations,
                residual=report.final_residual,
                error=report.final_error,
                time_seconds=report.elapsed_seconds,
                rho_or_gamma=rho,
            )
        )
    return rows


def bench_markov(
    states: int,
    alphas=(2.0, 2.5, 3.0),
    tol: float = 1e-7,
    stop: str = "residual",
    x0_kind: str = "e1",
    max_iterations: int = 2_000_000,
):
    """Run the stationary-distribution benchmark; gamma column, blank error."""
    problem = make_random_walk(states)
    alphas = sorted(alphas)
    splits = [diag_scaling_splitting(problem.A, a) for a in alphas]
    rule = "successive_diff" if stop == "diff" else "residual"
    if x0_kind == "uniform":
        x0 = np.full(states, 1.0 / states)
    else:
        x0 = np.zeros(states)
        x0[0] = 1.0
    b = np.zeros(states)
    rows = []
    for scheme, sl in _scheme_slices(len(splits)):
        chosen = splits[sl]
        config = SchemeConfig(
            splittings=chosen,
            stop_rule=rule,
            tolerance=tol,
            max_iterations=max_iterations,
        )
        report = run(config, b, x0=x0)
        g = gamma(alternating_iteration_matrix(chosen))
        rows.append(
            BenchRow(
                order=states,
                scheme=scheme,
                iterations=report.iterations,
                residual=report.final_residual,
                error=None,
                time_seconds=report.elapsed_seconds,
                rho_or_gamma=g,
            )
        )
    return rows


def _print_rows(rows, value_name):
    print(f"{'order':>7} {'scheme':>8} {'IT':>9} {'residual':>12} "
          f"{'error':>12} {'time_s':>9} {value_name:>8}")
    for r in rows:
        err = f"{r.error:.4e}" if r.error is not None else "-"
        print(f"{r.order:>7d} {r.scheme:>8} {r.iterations:>9d} "
              f"{r.residual:>12.4e} {err:>12} {r.time_seconds:>9.2f} "
              f"{r.rho_or_gamma:>8.4f}")


def _write_csv(path, rows):
    with open(path, "w", newline="", encoding="ascii") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADER)
        for r in rows:
            writer.writerow([
                r.order,
                r.scheme,
                r.iterations,
                f"{r.residual:.17g}",
                "" if r.error is None else f"{r.error:.17g}",
                f"{r.time_seconds:.6f}",
                f"{r.rho_or_gamma:.17g}",
            ])


def _parse_alphas(text):
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad alpha list {text!r}")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_classify(args) -> int:
    try:
        a = read_matrix_market(args.matrix)
        if args.u is not None:
            u = read_matrix_market(args.u)
            split = make_splitting(a, u)
        else:
            split = diag_scaling_splitting(a, args.diag_alpha)
    except MatrixMarketError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DimensionMismatchError, NotSquareError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except AltSplitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = classify(split)
    for name, value in report.flags().items():
        line = f"{name:<28s} {'yes' if value else 'no'}"
        witness = report.witnesses.get(name)
        if witness is not None:
            line += f"   [{witness.describe()}]"
        print(line)
    return 0


def _cmd_solve(args) -> int:
    try:
        a = read_matrix_market(args.matrix)
        b = read_vector(args.rhs)
        splits = [make_splitting(a, read_matrix_market(p))
                  for p in args.split.split(",")]
    except MatrixMarketError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DimensionMismatchError, NotSquareError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except IndexGreaterThanOneError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4

    if args.x0 == "zero":
        x0 = None
    elif args.x0 == "uniform":
        x0 = np.full(a.shape[0], 1.0 / a.shape[0])
    else:
        try:
            x0 = read_vector(args.x0)
        except (MatrixMarketError, OSError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
    try:
        config = SchemeConfig(
            splittings=splits,
            stop_rule=args.stop,
            tolerance=args.tol,
            max_iterations=args.max_iters,
            delta=args.delta,
        )
        report = run(config, b, x0=x0)
    except (DimensionMismatchError, MismatchedSplittingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except IndexGreaterThanOneError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4

    print(f"iterations   {report.iterations}")
    print(f"converged    {report.converged}")
    print(f"residual     {report.final_residual:.6e}")
    print(f"time_s       {report.elapsed_seconds:.4f}")
    if args.out:
        write_vector(args.out, report.final_x)
    return 0 if report.converged else 1


def _cmd_bench(args) -> int:
    if args.problem == "laplace":
        alphas = args.alphas if args.alphas is not None else [1.0, 1.5, 1.75]
        rows = bench_laplace(
            args.grid,
            alphas=alphas,
            tol=args.tol if args.tol is not None else 1e-6,
            stop=args.stop if args.stop is not None else "error",
            single_alpha=args.single_alpha,
        )
        _print_rows(rows, "rho")
    else:
        alphas = args.alphas if args.alphas is not None else [2.0, 2.5, 3.0]
        rows = bench_markov(
            args.states,
            alphas=alphas,
            tol=args.tol if args.tol is not None else 1e-7,
            stop=args.stop if args.stop is not None else "residual",
            x0_kind=args.x0,
        )
        _print_rows(rows, "gamma")
    if args.csv:
        _write_csv(args.csv, rows)
    return 0


def _suite_group_inverse(rng, trials, size):
    failures = []
    for k in range(trials):
        n = int(rng.integers(2, size + 1))
        r = int(rng.integers(1, n + 1))
        a = random_index_one(rng, n, r)
        x = group_inverse(a)
        scale = max(1.0, float(np.max(np.abs(a))))
        res = max(
            float(np.max(np.abs(a @ x @ a - a))),
            float(np.max(np.abs(x @ a @ x - x))),
            float(np.max(np.abs(a @ x - x @ a))),
        ) / scale
        if res > 1e-10:
            failures.append((k, f"defining-equation residual {res:.3e}"))
    return failures


def _suite_companion(rng, trials, size):
    failures = []
    for k in range(trials):
        n = int(rng.integers(3, size + 1))
        a, splits = random_proper_triple(rng, n)
        h = alternating_iteration_matrix(splits)
        s = companion_matrix(splits)
        a_sharp = group_inverse(a)
        gap = abs(spectral_radius(s) - spectral_radius(h))
        mismatch = float(np.max(np.abs(s - a @ h @ a_sharp)))
        if gap > 1e-8 or mismatch > 1e-8:
            failures.append((k, f"rho gap {gap:.3e}, S - A H A# {mismatch:.3e}"))
    return failures


def _suite_convergence(rng, trials, size, theorem_id):
    failures = []
    for k in range(trials):
        n = int(rng.integers(3, size + 1))
        if theorem_id == "two-vs-three" and rng.random() < 0.7:
            # nonsingular monotone instances exercise the >= I hypotheses
            a, splits = random_group_monotone_regular_triple(rng, n, rank_r=n)
        else:
            a, splits = random_group_monotone_regular_triple(rng, n)
        verdict = verify_convergence_theorem(theorem_id, splits)
        if verdict.hypotheses_hold and not verdict.conclusion_holds:
            failures.append((k, f"hypotheses hold but conclusion fails: {verdict.measured_quantities}"))
    return failures


def _suite_semiconvergence(rng, trials, size):
    failures = []
    for k in range(trials):
        n = int(rng.integers(2, size + 1))
        t, kind = random_semiconvergence_case(rng, n)
        cert = is_semiconvergent(t)
        limit = power_limit_oracle(t, k_max=20_000, tol=ToleranceProfile(eq_tol=1e-11))
        if cert.verdict != (limit is not None):
            failures.append((k, f"{kind}: certificate {cert.verdict}, oracle {limit is not None}"))
        elif cert.verdict and float(np.max(np.abs(cert.limit_matrix - limit))) > 1e-8:
            failures.append((k, f"{kind}: limits disagree"))
    return failures


def _suite_quasi(rng, trials, size):
    failures = []
    for k in range(trials):
        n = int(rng.integers(4, size + 1))
        a, splits = random_quasi_regular_triple(rng, n)
        for theorem_id in ("quasi-three-step", "quasi-three-comparison", "quasi-two-vs-three"):
            verdict = verify_semiconvergence_theorem(theorem_id, splits)
            if verdict.hypotheses_hold and not verdict.conclusion_holds:
                failures.append((k, f"{theorem_id}: {verdict.measured_quantities}"))
        m_a, m_splits = random_singular_m_matrix_triple(rng, n)
        for theorem_id, d in (("regular-three-step", None), ("delta-shift", 0.5),
                              ("induced-regular", None)):
            verdict = verify_semiconvergence_theorem(theorem_id, m_splits, delta=d)
            if verdict.hypotheses_hold and not verdict.conclusion_holds:
                failures.append((k, f"{theorem_id}: {verdict.measured_quantities}"))
    return failures


_SUITES = {
    "group-inverse": _suite_group_inverse,
    "companion": _suite_companion,
    "typeII-convergence": lambda rng, t, s: _suite_convergence(rng, t, s, "typeII-convergence"),
    "both-types-comparison": lambda rng, t, s: _suite_convergence(rng, t, s, "both-types-comparison"),
    "two-vs-three": lambda rng, t, s: _suite_convergence(rng, t, s, "two-vs-three"),
    "semiconvergence": _suite_semiconvergence,
    "quasi": _suite_quasi,
}


def _cmd_verify(args) -> int:
    names = list(_SUITES) if args.suite == "all" else [args.suite]
    rng = np.random.default_rng(args.seed)
    print(f"seed {args.seed}")
    any_failed = False
    for name in names:
        failures = _SUITES[name](rng, args.trials, args.size)
        status = "ok" if not failures else "FAIL"
        print(f"{name:<24s} {args.trials - len(failures)}/{args.trials} {status}")
        if failures:
            any_failed = True
            k, why = failures[0]
            print(f"  first counterexample: trial {k}: {why}")
    return 1 if any_failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="altsplit",
        description="Alternating matrix-splitting iterations and diagnostics",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_classify = sub.add_parser("classify", help="classify a splitting A = U - V")
    p_classify.add_argument("--matrix", required=True, help="A in Matrix Market format")
    group = p_classify.add_mutually_exclusive_group(required=True)
    group.add_argument("--u", help="U in Matrix Market format")
    group.add_argument("--diag-alpha", type=float, help="use U = alpha diag(A)")
    p_classify.set_defaults(func=_cmd_classify)

    p_solve = sub.add_parser("solve", help="run an alternating scheme on files")
    p_solve.add_argument("--matrix", required=True)
    p_solve.add_argument("--rhs", required=True)
    p_solve.add_argument("--split", required=True,
                         help="comma-separated U files (1 to 3)")
    p_solve.add_argument("--delta", type=float, default=None)
    p_solve.add_argument("--tol", type=float, default=1e-8)
    p_solve.add_argument("--max-iters", type=int, default=100_000)
    p_solve.add_argument("--x0", default="zero",
                         help="'zero', 'uniform' or a vector file")
    p_solve.add_argument("--stop", default="residual",
                         choices=["residual", "successive_diff"])
    p_solve.add_argument("--out", default=None, help="write solution here")
    p_solve.set_defaults(func=_cmd_solve)

    p_bench = sub.add_parser("bench", help="reproduce the comparison tables")
    bench_sub = p_bench.add_subparsers(dest="problem", required=True)
    p_lap = bench_sub.add_parser("laplace")
    p_lap.add_argument("--grid", type=int, default=21, help="subdivisions N; order (N-1)^2")
    p_lap.add_argument("--alphas", type=_parse_alphas, default=None)
    p_lap.add_argument("--tol", type=float, default=None)
    p_lap.add_argument("--stop", choices=["error", "residual"], default=None)
    p_lap.add_argument("--single-alpha", type=float, default=None,
                       help="override the splitting used by the single-step row")
    p_lap.add_argument("--csv", default=None)
    p_lap.set_defaults(func=_cmd_bench)
    p_mkv = bench_sub.add_parser("markov")
    p_mkv.add_argument("--states", type=int, default=10)
    p_mkv.add_argument("--alphas", type=_parse_alphas, default=None)
    p_mkv.add_argument("--tol", type=float, default=None)
    p_mkv.add_argument("--stop", choices=["residual", "diff"], default=None)
    p_mkv.add_argument("--x0", choices=["e1", "uniform"], default="e1")
    p_mkv.add_argument("--csv", default=None)
    p_mkv.set_defaults(func=_cmd_bench)

    p_verify = sub.add_parser("verify", help="run a randomized verification suite")
    p_verify.add_argument("--suite", required=True,
                          choices=sorted(_SUITES) + ["all"])
    p_verify.add_argument("--trials", type=int, default=100)
    p_verify.add_argument("--seed", type=int, default=42)
    p_verify.add_argument("--size", type=int, default=8)
    p_verify.set_defaults(func=_cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
