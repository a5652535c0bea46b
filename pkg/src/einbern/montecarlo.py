"""Seeded simulation of random tensor sums against the closed-form bounds.

Each trial draws its own generator from (seed, trial index), so trials
are order-independent and the thread count never changes the result.
The executor honours the EB_THREADS environment variable; aggregation
always reduces in trial order.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .bounds import BernsteinReport, Rademacher, SumModel, build_report
from .errors import ApplicabilityError, DomainError, ModelError
from .spectral import e_eigenvalues, gen_spectral_norm
from .tensor import Tensor

__all__ = [
    "ExperimentConfig",
    "TailRow",
    "ExperimentResult",
    "ExpectationCheck",
    "trial_rng",
    "sample_sum",
    "run_experiment",
    "check_expectation",
    "format_results_csv",
]


@dataclass(frozen=True)
class ExperimentConfig:
    """A reproducible tail experiment for one model and one theorem."""

    model: SumModel
    trials: int
    t_grid: tuple
    seed: int
    confidence_slack: float = 3.0
    theorem: str = "auto"

    def __post_init__(self):
        if self.trials < 100:
            raise ModelError(f"at least 100 trials are required, got {self.trials}")
        grid = tuple(float(t) for t in self.t_grid)
        object.__setattr__(self, "t_grid", grid)
        if not grid:
            raise ModelError("t_grid must be non-empty")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ModelError("t_grid must be strictly ascending")
        if grid[0] < 0:
            raise ModelError("t values must be nonnegative")
        if int(self.seed) != self.seed or self.seed < 0:
            raise ModelError("seed must be a nonnegative integer")
        if self.confidence_slack < 0:
            raise ModelError("confidence_slack must be nonnegative")
        if self.theorem not in ("auto", "even", "general", "intrinsic"):
            raise ModelError(f"unknown theorem {self.theorem!r}")


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Independent generator for one trial, derived from (seed, trial)."""
    return np.random.default_rng([int(seed), int(trial)])


def sample_sum(model: SumModel, rng: np.random.Generator) -> Tensor:
    """One realization of the random sum Y = sum_k X_k."""
    stacked = np.stack([c.data for c in model.components])
    if isinstance(model.law, Rademacher):
        signs = rng.integers(0, 2, size=len(model.components)) * 2 - 1
        flat = signs.astype(np.float64) @ stacked
    else:
        n = len(model.components)
        s = model.law.sample_size
        picks = rng.integers(0, n, size=s)
        flat = (n / s) * stacked[picks].sum(axis=0)
    return Tensor(model.components[0].shape, flat, copy=False)


def _statistic(model: SumModel, theorem: str):
    if theorem == "even":
        return "lambda_e_max", lambda y: float(e_eigenvalues(y)[0])
    if model.is_even_symmetric():
        # the generalized norm of a pairwise-symmetric even-order tensor
        # equals its largest eigenvalue magnitude, so one small
        # eigendecomposition per trial suffices
        def stat(y: Tensor) -> float:
            values = e_eigenvalues(y)
            return float(max(values[0], -values[-1]))

        return "gen_spectral_norm", stat
    return "gen_spectral_norm", lambda y: float(gen_spectral_norm(y))


@dataclass(frozen=True)
class TailRow:
    """Empirical and bound values at one grid point."""

    t: float
    frequency: float
    upper_confidence: float
    bound_raw: float
    bound_clamped: float
    passed: bool


@dataclass(frozen=True)
class ExperimentResult:
    """Aggregated trial statistics paired with their bound report."""

    statistic: str
    trials: int
    seed: int
    empirical_mean_max: float
    empirical_std: float
    rows: tuple
    bound_report: BernsteinReport

    @property
    def all_passed(self) -> bool:
        return all(row.passed for row in self.rows)


def _resolve_threads(threads: int | None) -> int:
    if threads is not None:
        return max(1, int(threads))
    env = os.environ.get("EB_THREADS", "").strip()
    if env:
        try:
            return max(1, int(env))
        except ValueError as exc:
            raise ModelError(f"EB_THREADS must be an integer, got {env!r}") from exc
    return os.cpu_count() or 1


def _collect_statistics(config: ExperimentConfig, stat, threads: int) -> np.ndarray:
    out = np.empty(config.trials)

    def fill(lo: int, hi: int) -> None:
        for i in range(lo, hi):
            y = sample_sum(config.model, trial_rng(config.seed, i))
            out[i] = stat(y)

    if threads <= 1 or config.trials < 2 * threads:
        fill(0, config.trials)
        return out
    edges = np.linspace(0, config.trials, threads + 1).astype(int)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [
            pool.submit(fill, int(lo), int(hi))
            for lo, hi in zip(edges[:-1], edges[1:])
        ]
        for fut in futures:
            fut.result()
    return out


def run_experiment(
    config: ExperimentConfig, threads: int | None = None
) -> ExperimentResult:
    """Run all trials and compare tail frequencies against the bound.

    The per-t upper confidence value is the empirical frequency plus
    slack standard errors plus 1/trials, clamped into [0, 1]; a grid
    point passes when that value stays below the clamped bound.
    """
    report = build_report(config.model, config.theorem)
    for t in config.t_grid:
        if t < report.tail_domain_min - 1e-12:
            raise DomainError(
                f"t={t} lies below the bound's validity threshold "
                f"{report.tail_domain_min}"
            )
    name, stat = _statistic(config.model, report.theorem)
    stats = _collect_statistics(config, stat, _resolve_threads(threads))

    trials = config.trials
    rows = []
    for t in config.t_grid:
        freq = float(np.count_nonzero(stats >= t)) / trials
        upper = freq + config.confidence_slack * math.sqrt(
            freq * (1.0 - freq) / trials
        ) + 1.0 / trials
        upper = min(1.0, upper)
        raw, clamped = report.tail(t)
        # a bound of exactly zero only occurs for deterministic zero sums;
        # zero observed frequency is then exact, not a sampling estimate,
        # so the 1/trials correction must not fail it
        passed = upper <= clamped or (freq == 0.0 and clamped == 0.0)
        rows.append(
            TailRow(
                t=float(t),
                frequency=freq,
                upper_confidence=upper,
                bound_raw=raw,
                bound_clamped=clamped,
                passed=passed,
            )
        )
    return ExperimentResult(
        statistic=name,
        trials=trials,
        seed=config.seed,
        empirical_mean_max=float(stats.mean()),
        empirical_std=float(stats.std(ddof=1)),
        rows=tuple(rows),
        bound_report=report,
    )


@dataclass(frozen=True)
class ExpectationCheck:
    """Comparison of the trial mean against the closed-form mean bound."""

    passed: bool
    empirical_mean: float
    adjusted_mean: float
    bound: float
    margin: float


def check_expectation(
    config: ExperimentConfig, result: ExperimentResult | None = None
) -> ExpectationCheck:
    """Check mean(statistic) + slack standard errors against the bound."""
    if result is None:
        result = run_experiment(config)
    bound = result.bound_report.expectation_bound
    if bound is None:
        raise ApplicabilityError(
            "the intrinsic bound has no expectation counterpart"
        )
    adjusted = result.empirical_mean_max + config.confidence_slack * (
        result.empirical_std / math.sqrt(result.trials)
    )
    margin = bound - adjusted
    return ExpectationCheck(
        passed=margin >= 0.0,
        empirical_mean=result.empirical_mean_max,
        adjusted_mean=adjusted,
        bound=bound,
        margin=margin,
    )


def _g(value: float) -> str:
    return format(float(value), ".17g")


def format_results_csv(result: ExperimentResult) -> str:
    """CSV rows (t, empirical_freq, upper_conf, bound_raw, bound_clamped,
    verdict), byte-deterministic for a given config."""
    lines = ["t,empirical_freq,upper_conf,bound_raw,bound_clamped,verdict"]
    for row in result.rows:
        lines.append(
            ",".join(
                [
                    _g(row.t),
                    _g(row.frequency),
                    _g(row.upper_confidence),
                    _g(row.bound_raw),
                    _g(row.bound_clamped),
                    "pass" if row.passed else "fail",
                ]
            )
        )
    return "\n".join(lines) + "\n"
