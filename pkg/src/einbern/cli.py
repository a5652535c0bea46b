"""Command-line front end.

Exit codes are a stable contract: 0 success, 1 failed checks or
verdicts, 2 usage or configuration problems, 3 bound not applicable to
the model, 4 internal numerical failure.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .algebra import matricize
from .bounds import build_report, format_report, format_tail_csv
from .config import load_experiment, load_model
from .errors import ApplicabilityError, EinbernError, NumericalError
from .montecarlo import check_expectation, format_results_csv, run_experiment
from .spectral import e_eigenvalues, is_e_psd, z_eigen_max
from .tensor import apply_power, psd_counterexample_tensor
from .verify import run_suite, suite_names

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_INAPPLICABLE = 3
EXIT_NUMERICAL = 4


def _grid_spec(text: str) -> tuple:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected a:b:n, got {text!r}")
    try:
        start, stop, num = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad grid spec {text!r}: {exc}") from exc
    if num < 1:
        raise argparse.ArgumentTypeError("grid needs at least one point")
    return tuple(float(t) for t in np.linspace(start, stop, num))


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="einbern",
        description=(
            "Einstein-product tensor algebra with Bernstein-type "
            "concentration bounds for random tensor sums"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser(
        "verify", help="run a seeded property suite and report pass/fail"
    )
    p_verify.add_argument(
        "--suite", required=True, choices=[*suite_names(), "all"]
    )
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--cases", type=int, default=100)

    p_bound = sub.add_parser(
        "bound", help="evaluate one bound for a model and write its tail curve"
    )
    p_bound.add_argument("--config", required=True, help="model JSON document")
    p_bound.add_argument(
        "--theorem", required=True, choices=["even", "general", "intrinsic"]
    )
    p_bound.add_argument(
        "--t-grid", required=True, type=_grid_spec, metavar="a:b:n",
        help="linspace of t values, e.g. 0:5:21",
    )
    p_bound.add_argument("--out", required=True, help="CSV output path")

    p_sim = sub.add_parser(
        "simulate", help="run a Monte Carlo experiment against its bound"
    )
    p_sim.add_argument("--config", required=True, help="experiment JSON document")
    p_sim.add_argument("--out", required=True, help="CSV output path")

    sub.add_parser(
        "example45",
        help="walk through the built-in PSD-but-not-E-PSD worked example",
    )
    return parser


def cmd_verify(args) -> int:
    results = run_suite(args.suite, seed=args.seed, cases=args.cases)
    width = max(len(r.name) for r in results)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status} {r.name:<{width}}  {r.detail}")
    passed = sum(r.passed for r in results)
    print(f"suite {args.suite}: {passed}/{len(results)} properties passed")
    return EXIT_OK if passed == len(results) else EXIT_FAIL


def cmd_bound(args) -> int:
    model = load_model(args.config)
    report = build_report(model, args.theorem)
    grid = args.t_grid
    if report.tail_domain_min > 0:
        kept = tuple(t for t in grid if t >= report.tail_domain_min - 1e-12)
        if len(kept) < len(grid):
            print(
                f"warning: dropped {len(grid) - len(kept)} grid points below "
                f"the validity threshold t >= {report.tail_domain_min:.6g}",
                file=sys.stderr,
            )
        grid = kept
    sys.stdout.write(format_report(report))
    with open(args.out, "w", encoding="ascii", newline="\n") as fh:
        fh.write(format_tail_csv(report, grid))
    return EXIT_OK


def cmd_simulate(args) -> int:
    config = load_experiment(args.config)
    result = run_experiment(config)
    with open(args.out, "w", encoding="ascii", newline="\n") as fh:
        fh.write(format_results_csv(result))
    print(f"statistic={result.statistic} trials={result.trials} seed={result.seed}")
    print(f"empirical_mean_max={result.empirical_mean_max:.17g}")
    if result.bound_report.expectation_bound is not None:
        check = check_expectation(config, result)
        verdict = "pass" if check.passed else "fail"
        print(
            f"expectation_bound={check.bound:.17g} adjusted_mean="
            f"{check.adjusted_mean:.17g} expectation_verdict={verdict}"
        )
    failed = [row for row in result.rows if not row.passed]
    print(
        f"tail_verdicts={len(result.rows) - len(failed)}/{len(result.rows)} pass"
    )
    return EXIT_OK if result.all_passed else EXIT_FAIL


def cmd_example45(args) -> int:
    t = psd_counterexample_tensor()
    ok = True

    rng = np.random.default_rng(0)
    worst = 0.0
    neg = 0.0
    for _ in range(1000):
        x = rng.standard_normal(3)
        q = apply_power(t, x)
        worst = max(worst, abs(q - 6.0 * x[0] ** 2 * x[1] ** 2))
        neg = min(neg, q)
    form_ok = worst <= 1e-12 and neg >= -1e-12
    ok &= form_ok
    print(
        f"quartic form equals 6*x1^2*x2^2 on 1000 samples: "
        f"max deviation {worst:.2e}, min value {neg:.2e} "
        f"({'ok' if form_ok else 'MISMATCH'})"
    )

    y = np.zeros(9)
    y[0], y[4] = 1.0, -1.0
    quad = float(y @ matricize(t) @ y)
    quad_ok = quad == -2.0
    ok &= quad_ok
    print(
        f"quadratic form of the unfolding at y=(1,0,0,0,-1,0,0,0,0): {quad:g} "
        f"({'ok' if quad_ok else 'MISMATCH'})"
    )

    values = e_eigenvalues(t)
    lam_max, lam_min = float(values[0]), float(values[-1])
    spec_ok = abs(lam_max - 2.0) <= 1e-10 and abs(lam_min + 1.0) <= 1e-10
    ok &= spec_ok
    print(
        f"extreme Einstein eigenvalues: max {lam_max:g}, min {lam_min:g} "
        f"({'ok' if spec_ok else 'MISMATCH'})"
    )

    epsd = is_e_psd(t)
    ok &= not epsd
    print(f"is_e_psd: {epsd} (expected False)")

    est = z_eigen_max(t, restarts=20, iters=500, seed=0)
    z_ok = abs(est.value - 1.5) <= 1e-6
    ok &= z_ok
    print(
        f"largest Z-eigenvalue estimate: {est.value:.9f} "
        f"(residual {est.residual:.2e}, {'ok' if z_ok else 'MISMATCH'})"
    )

    print(
        "conclusion: PSD but not E-PSD"
        if ok
        else "conclusion: checks failed"
    )
    return EXIT_OK if ok else EXIT_FAIL


_HANDLERS = {
    "verify": cmd_verify,
    "bound": cmd_bound,
    "simulate": cmd_simulate,
    "example45": cmd_example45,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else EXIT_OK
    try:
        return _HANDLERS[args.command](args)
    except ApplicabilityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INAPPLICABLE
    except NumericalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (EinbernError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
