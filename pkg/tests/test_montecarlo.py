"""Sampling, experiment harness, determinism, and statistic choices."""

import math

import numpy as np
import pytest

from einbern import (
    ApplicabilityError,
    DomainError,
    ExperimentConfig,
    ModelError,
    SumModel,
    Tensor,
    build_report,
    check_expectation,
    format_results_csv,
    identity_tensor,
    matricize,
    matricize_general,
    random_e_symmetric,
    random_tensor,
    run_experiment,
    sample_sum,
    trial_rng,
    variance_general,
)


def small_even_model(count=8, seed=0):
    rng = np.random.default_rng(seed)
    return SumModel.rademacher([random_e_symmetric(rng, 2, 2) for _ in range(count)])


class TestSampleSum:
    def test_single_component_signs(self):
        a = identity_tensor(1, 2)
        model = SumModel.rademacher([a])
        seen = set()
        for k in range(64):
            y = sample_sum(model, trial_rng(3, k))
            assert y.allclose(a, 1e-15) or y.allclose(-1.0 * a, 1e-15)
            seen.add(float(y.data[0]))
        assert seen == {1.0, -1.0}

    def test_identical_population_always_zero(self):
        rng = np.random.default_rng(1)
        b = random_tensor(rng, (2, 2))
        model = SumModel.subsample([b, b, b], 2)
        for k in range(20):
            y = sample_sum(model, trial_rng(0, k))
            assert np.abs(y.data).max() <= 1e-14

    def test_mean_is_zero_by_clt(self):
        rng = np.random.default_rng(2)
        comps = [random_e_symmetric(rng, 1, 2) for _ in range(5)]
        model = SumModel.rademacher(comps)
        trials = 100_000
        acc = np.zeros(4)
        acc_sq = np.zeros(4)
        for k in range(trials):
            y = sample_sum(model, trial_rng(11, k))
            acc += y.data
            acc_sq += y.data**2
        mean = acc / trials
        std = np.sqrt(np.maximum(acc_sq / trials - mean**2, 0.0))
        sigma_mean = std / math.sqrt(trials)
        assert np.all(np.abs(mean) <= 4.0 * sigma_mean + 1e-12)

    def test_subsample_scaling(self):
        rng = np.random.default_rng(3)
        pop = [random_tensor(rng, (2, 2, 2)) for _ in range(5)]
        model = SumModel.subsample(pop, 2)
        y = sample_sum(model, trial_rng(0, 0))
        # every draw is a sum of 2 population members scaled by 5/2
        stacked = np.stack([c.data for c in model.components])
        found = False
        for i in range(5):
            for j in range(5):
                cand = 2.5 * (stacked[i] + stacked[j])
                if np.abs(cand - y.data).max() <= 1e-12:
                    found = True
        assert found

    def test_second_moment_converges(self):
        rng = np.random.default_rng(4)
        comps = [random_tensor(rng, (2, 2, 2)) for _ in range(4)]
        model = SumModel.rademacher(comps)
        exact = matricize(variance_general(model).outer)
        mats = np.stack([matricize_general(c) for c in comps])
        trials = 100_000
        signs = rng.integers(0, 2, size=(trials, 4)) * 2 - 1
        ys = np.einsum("tk,kij->tij", signs.astype(float), mats)
        prods = np.einsum("tij,tkj->tik", ys, ys)
        mean = prods.mean(axis=0)
        sigma = prods.std(axis=0) / math.sqrt(trials)
        assert np.all(np.abs(mean - exact) <= 5.0 * sigma + 1e-12)


class TestExperimentConfig:
    def test_minimum_trials(self):
        model = small_even_model()
        with pytest.raises(ModelError):
            ExperimentConfig(model=model, trials=99, t_grid=(0.0, 1.0), seed=0)

    def test_grid_must_ascend(self):
        model = small_even_model()
        with pytest.raises(ModelError):
            ExperimentConfig(model=model, trials=100, t_grid=(1.0, 0.5), seed=0)

    def test_negative_seed_rejected(self):
        model = small_even_model()
        with pytest.raises(ModelError):
            ExperimentConfig(model=model, trials=100, t_grid=(0.0,), seed=-1)

    def test_unknown_theorem(self):
        model = small_even_model()
        with pytest.raises(ModelError):
            ExperimentConfig(
                model=model, trials=100, t_grid=(0.0,), seed=0, theorem="best"
            )


class TestRunExperiment:
    def test_zero_model_all_pass(self):
        model = SumModel.rademacher([Tensor((2, 2), np.zeros(4))])
        config = ExperimentConfig(
            model=model, trials=200, t_grid=(0.5, 1.0, 2.0), seed=1
        )
        result = run_experiment(config)
        assert result.all_passed
        assert result.empirical_mean_max == 0.0
        assert all(row.frequency == 0.0 for row in result.rows)

    def test_even_model_verdicts_pass(self):
        model = small_even_model(count=20, seed=5)
        report = build_report(model, "even")
        tmax = 3.0 * (math.sqrt(report.nu) + report.L)
        config = ExperimentConfig(
            model=model,
            trials=800,
            t_grid=tuple(np.linspace(0.0, tmax, 12)),
            seed=9,
        )
        result = run_experiment(config)
        assert result.statistic == "lambda_e_max"
        assert result.all_passed

    def test_same_seed_same_bytes(self):
        model = small_even_model(count=5, seed=6)
        config = ExperimentConfig(
            model=model, trials=150, t_grid=(0.0, 1.0, 3.0), seed=21
        )
        a = run_experiment(config)
        b = run_experiment(config)
        assert a == b
        assert format_results_csv(a) == format_results_csv(b)

    def test_thread_count_does_not_change_results(self):
        model = small_even_model(count=5, seed=7)
        config = ExperimentConfig(
            model=model, trials=200, t_grid=(0.0, 1.0, 3.0), seed=22
        )
        serial = format_results_csv(run_experiment(config, threads=1))
        threaded = format_results_csv(run_experiment(config, threads=4))
        assert serial == threaded

    def test_eb_threads_env(self, monkeypatch):
        model = small_even_model(count=5, seed=7)
        config = ExperimentConfig(
            model=model, trials=150, t_grid=(0.0, 2.0), seed=23
        )
        base = format_results_csv(run_experiment(config, threads=1))
        monkeypatch.setenv("EB_THREADS", "3")
        assert format_results_csv(run_experiment(config)) == base
        monkeypatch.setenv("EB_THREADS", "zzz")
        with pytest.raises(ModelError):
            run_experiment(config)

    def test_matrix_statistic_reduction(self):
        # order-2 models: the per-trial statistic is the matrix statistic
        # of the summed matricizations
        rng = np.random.default_rng(8)
        comps = [random_e_symmetric(rng, 1, 3) for _ in range(4)]
        model = SumModel.rademacher(comps)
        config = ExperimentConfig(
            model=model, trials=100, t_grid=(0.0,), seed=31
        )
        result = run_experiment(config)
        stats = []
        for k in range(100):
            y = sample_sum(model, trial_rng(31, k))
            stats.append(float(np.linalg.eigvalsh(matricize(y))[-1]))
        assert result.empirical_mean_max == pytest.approx(
            float(np.mean(stats)), rel=1e-12
        )

    def test_norm_statistic_for_odd_models(self):
        rng = np.random.default_rng(9)
        comps = [random_tensor(rng, (2, 2, 2)) for _ in range(4)]
        model = SumModel.rademacher(comps)
        config = ExperimentConfig(
            model=model, trials=120, t_grid=(0.0, 1.0), seed=32
        )
        result = run_experiment(config)
        assert result.statistic == "gen_spectral_norm"
        y = sample_sum(model, trial_rng(32, 0))
        sigma = float(np.linalg.svd(matricize_general(y), compute_uv=False)[0])
        # recompute the first trial by hand
        stats = []
        for k in range(120):
            yk = sample_sum(model, trial_rng(32, k))
            stats.append(
                float(np.linalg.svd(matricize_general(yk), compute_uv=False)[0])
            )
        assert result.empirical_mean_max == pytest.approx(
            float(np.mean(stats)), rel=1e-10
        )
        assert sigma == pytest.approx(stats[0], rel=1e-12)

    def test_intrinsic_domain_guard(self):
        model = small_even_model(count=5, seed=10)
        report = build_report(model, "intrinsic")
        config = ExperimentConfig(
            model=model,
            trials=100,
            t_grid=(0.0, report.tail_domain_min + 1.0),
            seed=33,
            theorem="intrinsic",
        )
        with pytest.raises(DomainError):
            run_experiment(config)

    def test_upper_confidence_clamped(self):
        # frequencies of 1 at t=0 must not push the confidence value
        # above the clamped bound
        model = small_even_model(count=10, seed=11)
        config = ExperimentConfig(model=model, trials=100, t_grid=(0.0,), seed=34)
        result = run_experiment(config)
        row = result.rows[0]
        assert row.upper_confidence <= 1.0
        assert row.passed


class TestCheckExpectation:
    def test_zero_model(self):
        model = SumModel.rademacher([Tensor((2, 2), np.zeros(4))])
        config = ExperimentConfig(model=model, trials=150, t_grid=(0.5,), seed=2)
        check = check_expectation(config)
        assert check.passed and check.bound == 0.0 and check.margin == 0.0

    def test_sign_flipped_identity(self):
        # single component, m = 1, d = 2: the statistic is +-1 with mean 0,
        # far below the bound sqrt(2 ln 2) + ln(2)/3
        model = SumModel.rademacher([identity_tensor(1, 2)])
        config = ExperimentConfig(model=model, trials=400, t_grid=(0.0,), seed=3)
        check = check_expectation(config)
        assert check.bound == pytest.approx(
            math.sqrt(2 * math.log(2)) + math.log(2) / 3, rel=1e-12
        )
        assert check.passed

    def test_even_model_margin(self):
        model = small_even_model(count=20, seed=12)
        config = ExperimentConfig(model=model, trials=500, t_grid=(0.0,), seed=4)
        check = check_expectation(config)
        assert check.passed and check.margin > 0.0

    def test_intrinsic_has_no_expectation_bound(self):
        model = small_even_model(count=5, seed=13)
        report = build_report(model, "intrinsic")
        config = ExperimentConfig(
            model=model,
            trials=100,
            t_grid=(report.tail_domain_min + 0.5,),
            seed=5,
            theorem="intrinsic",
        )
        result = run_experiment(config)
        with pytest.raises(ApplicabilityError):
            check_expectation(config, result)


class TestResultsCsv:
    def test_columns_and_verdicts(self):
        model = small_even_model(count=5, seed=14)
        config = ExperimentConfig(
            model=model, trials=120, t_grid=(0.0, 5.0, 50.0), seed=6
        )
        csv = format_results_csv(run_experiment(config))
        lines = csv.strip().splitlines()
        assert lines[0] == "t,empirical_freq,upper_conf,bound_raw,bound_clamped,verdict"
        assert len(lines) == 4
        for line in lines[1:]:
            cells = line.split(",")
            assert len(cells) == 6
            assert cells[5] in ("pass", "fail")
