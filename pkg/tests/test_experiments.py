import math

import numpy as np
import pytest
from attrs import evolve

from src.errors import InvariantViolation, ValidationError
from src.experiments import (
    ExperimentConfig,
    SWEEP_COLUMNS,
    cm_error_check,
    cm_error_rate_check,
    concentration,
    dual_complete_check,
    edge_count,
    error_distribution,
    expected_cm_error,
    mean_error,
    nonzero_cm_error_fraction,
    parse_lambda_grid,
    parse_strategies,
    positive_error_comparison,
    regular_core_check,
    run_tasks,
    sweep_lambda,
    task_seeds,
    zipf_sweep,
)
from src.process import ErrorReport, run
from src.hypergraph import Hypergraph, gen_erdos_renyi, peel
from src.rng import derive_seed
from src.sketch import peeling_threshold
from src.streams import get_stream


def small_config(**overrides):
    values = dict(k=3, n=60, lambdas=(0.5,), N=5, model='uniform', strategies=('cm', 'cu'), replicates=1, root_seed=7)
    values.update(overrides)
    return ExperimentConfig(**values)


def _square(x):
    return x * x


class TestConfig:

    def test_grid_is_inclusive(self):
        grid = parse_lambda_grid('0.2:1.4:0.05')
        assert len(grid) == 25
        assert grid[0] == 0.2 and grid[-1] == 1.4
        assert grid[3] == 0.35

    @pytest.mark.parametrize('text', ['0.2:1.4', 'a:b:c', '1:0.5:0.1', '0.1:0.5:0'])
    def test_bad_grids(self, text):
        with pytest.raises(ValidationError):
            parse_lambda_grid(text)

    def test_strategies(self):
        assert parse_strategies('both') == ('cm', 'cu')
        assert parse_strategies('cu') == ('cu',)
        with pytest.raises(ValidationError):
            parse_strategies('all')

    def test_edge_count_rounds_half_up(self):
        assert edge_count(0.818, 1000) == 818
        assert edge_count(0.0005, 1000) == 1
        assert edge_count(0.25, 10) == 3

    @pytest.mark.parametrize('overrides', [
        {'k': 1},
        {'lambdas': ()},
        {'lambdas': (0.001,)},
        {'replicates': 0},
        {'N': 0},
        {'model': 'explicit'},
        {'beta': 0.5},
        {'model': 'zipf'},
    ])
    def test_invalid_configs(self, overrides):
        with pytest.raises(ValidationError):
            small_config(**overrides)

    def test_label(self):
        assert small_config(model='zipf', beta=0.5).label == 'zipf:0.5'
        assert small_config().label == 'uniform'


class TestSweep:

    def test_one_point_one_replicate(self):
        rows = sweep_lambda(small_config())
        assert [row.strategy for row in rows] == ['cm', 'cu']
        assert all(len(row.as_row()) == len(SWEEP_COLUMNS) for row in rows)
        assert rows[0].m == 30
        assert rows[0].seed == rows[1].seed == task_seeds(7, 0, 0)[0]

    def test_rows_are_ordered_by_point_strategy_replicate(self):
        config = small_config(lambdas=(0.3, 0.6), replicates=2)
        rows = sweep_lambda(config)
        assert [(row.lam, row.strategy, row.replicate) for row in rows] == [
            (lam, strategy, replicate)
            for lam in (0.3, 0.6) for strategy in ('cm', 'cu') for replicate in (0, 1)
        ]

    def test_cu_never_exceeds_cm_on_a_shared_stream(self):
        rows = sweep_lambda(small_config(lambdas=(0.5, 1.5), replicates=3))
        by_task = {}
        for row in rows:
            by_task.setdefault((row.lam, row.replicate), {})[row.strategy] = row
        for pair in by_task.values():
            assert pair['cu'].err_weighted <= pair['cm'].err_weighted

    def test_output_does_not_depend_on_jobs(self):
        config = small_config(lambdas=(0.4, 0.9), replicates=3)
        assert sweep_lambda(config, jobs=1) == sweep_lambda(config, jobs=3)

    def test_run_tasks_keeps_order(self):
        assert run_tasks(_square, range(6), jobs=1) == [0, 1, 4, 9, 16, 25]
        assert run_tasks(_square, range(6), jobs=2) == [0, 1, 4, 9, 16, 25]

    def test_balanced_k2_sweep_checks_the_excess_bound(self):
        config = small_config(k=2, n=80, lambdas=(0.4, 1.0, 2.0), model='balanced', replicates=2, check_invariants=True)
        assert len(sweep_lambda(config)) == 12

    def test_excess_bound_failure_is_raised(self, monkeypatch):
        monkeypatch.setattr(ErrorReport, 'excess_bound_holds', lambda self, excess: False)
        config = small_config(k=2, n=40, lambdas=(1.0,), model='balanced', check_invariants=True)
        with pytest.raises(InvariantViolation):
            sweep_lambda(config)

    def test_mean_error(self):
        rows = sweep_lambda(small_config(lambdas=(0.5,), replicates=2))
        cu = [row.err_unweighted for row in rows if row.strategy == 'cu']
        assert mean_error(rows, 0.5, 'cu') == pytest.approx(np.mean(cu))
        assert math.isnan(mean_error(rows, 0.7, 'cu'))


class TestConcentration:

    def test_single_replicate_has_no_spread(self):
        result = concentration(small_config())
        stat = result.stat(0.5, 'cu')
        assert stat.replicates == 1
        assert math.isnan(stat.std_err_unweighted)

    def test_stats_match_rows(self):
        result = concentration(small_config(lambdas=(0.5, 1.0), replicates=4))
        stat = result.stat(1.0, 'cm')
        values = [row.err_unweighted for row in result.rows if row.lam == 1.0 and row.strategy == 'cm']
        assert stat.mean_err_unweighted == pytest.approx(np.mean(values))
        assert stat.std_err_unweighted == pytest.approx(np.std(values, ddof=1))
        with pytest.raises(KeyError):
            result.stat(3.0, 'cm')


class TestZipfSweep:

    def test_betas_share_instances(self):
        config = small_config(lambdas=(0.5, 1.0), replicates=2, betas=(0.0, 0.9))
        rows = zipf_sweep(config)
        assert len(rows) == 2 * 2 * 2 * 2
        assert [row.model for row in rows[:8]] == ['zipf:0.0'] * 8
        assert [row.model for row in rows[8:]] == ['zipf:0.9'] * 8
        # same graph per (lambda, replicate): core fraction and seed agree across betas
        for first, second in zip(rows[:8], rows[8:]):
            assert (first.lam, first.replicate, first.seed) == (second.lam, second.replicate, second.seed)
            assert first.core_fraction == second.core_fraction

    def test_zero_skew_reproduces_the_uniform_sweep(self):
        config = small_config(lambdas=(0.5, 1.0), replicates=2, betas=(0.0, 0.9))
        zero_skew = [row for row in zipf_sweep(config) if row.model == 'zipf:0.0']
        uniform = sweep_lambda(config)
        assert [evolve(row, model='uniform') for row in zero_skew] == uniform


class TestChecks:

    def test_cm_errors_are_integers_for_one_round(self):
        result = error_distribution(3, 1.0, 50, 1, seed=3, strategy='cm', model='balanced')
        errors = result.report.defined_errors()
        assert np.all(errors == np.round(errors))
        assert sorted(result.order) == list(range(50))
        assert [row[0] for row in result.rows()] == list(range(50))

    def test_distribution_summary(self):
        result = error_distribution(3, 1.2, 100, 20, seed=5)
        summary = result.summary()
        assert summary['bin_width'] == 0.02
        assert 0.0 <= summary['mode_mass'] <= 1.0
        low, high = summary['mode_span']
        assert low <= summary['mode'] < high
        assert sum(count for _, count in summary['histogram']) == result.report.defined_errors().size

    def test_dual_cm_is_exact(self):
        result = dual_complete_check(6, 3, 20, model='balanced', seed=1, strategy='cm')
        assert result.measured == 2.0
        assert result.predicted == 2.0
        assert result.vertex_ratios == (3.0,) * 20

    def test_dual_cu_small(self):
        result = dual_complete_check(6, 2, 2000, seed=2)
        assert result.predicted == pytest.approx(0.2)
        assert result.measured == pytest.approx(0.2, abs=0.05)
        assert result.predicted_vertex_ratio == pytest.approx(1.2)

    def test_nonzero_cm_error_fraction(self, path_graph, triangle):
        assert nonzero_cm_error_fraction(path_graph) == 0.0
        assert nonzero_cm_error_fraction(triangle) == 1.0
        assert math.isnan(nonzero_cm_error_fraction(Hypergraph(n=3, k=2, edges=[])))

    def test_cm_rate_vanishes_at_low_density(self):
        result = cm_error_rate_check(3, 0.01, 1000, seed=4, replicates=3)
        assert result.mean < 0.01
        assert result.predicted == pytest.approx((1 - math.exp(-0.03)) ** 3)

    def test_expected_cm_error(self):
        assert expected_cm_error(3, 0.0) == 0.0
        assert expected_cm_error(3, 0.5) == pytest.approx(0.5626, abs=1e-3)
        # the j = 1 term alone is the nonzero-error rate
        assert expected_cm_error(3, 0.5) > (1 - math.exp(-1.5)) ** 3
        # the min of two Poisson(800) draws averages about 800 - sqrt(800 / pi)
        assert expected_cm_error(2, 400.0) == pytest.approx(784.0, abs=2.0)

    def test_cm_error_check_runs_balanced_cm(self):
        result = cm_error_check(3, 0.5, 200, seed=5, replicates=2, N=3)
        assert len(result.values) == 2
        assert all(0.0 < value < 2.0 for value in result.values)
        assert result.predicted == expected_cm_error(3, 0.5)

    def test_regular_cm_balanced_is_exactly_one(self):
        result = regular_core_check(10, 5, seed=6, replicates=3, strategy='cm', model='balanced')
        assert result.values == (1.0, 1.0, 1.0)
        assert result.predicted == 1.0

    def test_positive_error_rates(self):
        result = positive_error_comparison(3, 1.0, 200, 10, seed=8, replicates=2)
        assert len(result.rows()) == 4
        assert 0.0 <= result.mean('cu') <= result.mean('cm') <= 1.0

    def test_replicates_must_be_positive(self):
        with pytest.raises(ValidationError):
            cm_error_rate_check(3, 0.5, 100, seed=1, replicates=0)
        with pytest.raises(ValidationError):
            regular_core_check(5, 5, seed=1, replicates=0)


@pytest.mark.slow
class TestAcceptance:

    def test_cm_balanced_exactness_over_many_graphs(self):
        for trial in range(100):
            k = (2, 3, 4)[trial % 3]
            n = 20 + trial
            hypergraph = gen_erdos_renyi(n, n // 2, k, derive_seed(1, 'exact', trial))
            N = 1 + trial % 50
            report = run(hypergraph, get_stream('balanced', N=N, seed=trial), 'cm')
            assert np.array_equal(report.vertex_counters, N * hypergraph.degree)

    def test_excess_bound_over_a_balanced_k2_sweep(self):
        config = ExperimentConfig(k=2, n=300, lambdas=parse_lambda_grid('0.25:3:0.25'), N=20, model='balanced',
                                  strategies=('cu',), replicates=3, root_seed=5, check_invariants=True)
        assert len(sweep_lambda(config)) == 36

    def test_dual_complete_limits(self):
        k10 = dual_complete_check(10, 2, 100_000, model='balanced', seed=1)
        assert k10.measured == pytest.approx(1 / 9, abs=0.01)
        assert np.allclose(k10.vertex_ratios, 10 / 9, atol=0.01)
        k83 = dual_complete_check(8, 3, 100_000, model='balanced', seed=2)
        assert k83.measured == pytest.approx(1 / 3, abs=0.02)

    def test_regular_core_error(self):
        result = regular_core_check(200, 10_000, seed=3, replicates=10)
        assert result.mean == pytest.approx(0.217, abs=0.02)

    def test_regular_core_dispersion_shrinks(self):
        small = regular_core_check(50, 2000, seed=4, replicates=20)
        large = regular_core_check(200, 2000, seed=4, replicates=20)
        assert large.std < small.std

    def test_k3_peeling_threshold(self):
        def empty_core_frequency(lam):
            m = edge_count(lam, 2000)
            results = [peel(gen_erdos_renyi(2000, m, 3, derive_seed(6, 'peel', int(round(lam * 100)), r))) for r in range(20)]
            return np.mean([r.peelable for r in results]), np.mean([r.core_fraction() for r in results])

        below, _ = empty_core_frequency(0.75)
        above, fraction = empty_core_frequency(0.9)
        assert below >= 0.9
        assert above <= 0.1
        assert fraction >= 0.10

    def test_k2_core_fraction_jumps(self):
        def core_fraction(lam):
            m = edge_count(lam, 1000)
            return np.mean([peel(gen_erdos_renyi(1000, m, 2, derive_seed(7, 'peel', int(round(lam * 100)), r))).core_fraction()
                            for r in range(20)])

        assert core_fraction(0.4) < 0.05
        assert core_fraction(0.75) > 0.1

    def test_cu_phase_transition(self):
        config = ExperimentConfig(k=3, n=1000, lambdas=(0.6, 1.2), N=10_000, strategies=('cu',), replicates=3, root_seed=9)
        rows = sweep_lambda(config, jobs=2)
        low, high = mean_error(rows, 0.6, 'cu'), mean_error(rows, 1.2, 'cu')
        assert low < 0.02
        assert high >= 10 * low

    def test_cm_nonzero_error_rate(self):
        result = cm_error_rate_check(3, 0.5, 1000, seed=10, replicates=10)
        assert result.predicted == pytest.approx(0.469, abs=1e-3)
        assert result.mean == pytest.approx(result.predicted, abs=0.03)

        dense = cm_error_rate_check(2, 5.0, 1000, seed=10, replicates=3)
        assert dense.mean == pytest.approx(0.9999, abs=0.001)

    def test_cm_error_matches_poisson_expectation(self):
        result = cm_error_check(3, 0.5, 1000, seed=10, replicates=10, N=4, jobs=2)
        assert result.mean == pytest.approx(result.predicted, abs=0.05)

    def test_subcritical_errors_are_small(self):
        result = error_distribution(3, 0.4, 1000, 10_000, seed=11)
        assert np.mean(result.report.defined_errors() < 0.05) >= 0.99

    def test_subcritical_error_decreases_with_n(self):
        for k in (2, 3, 4):
            lam = round(0.8 * peeling_threshold(k), 3)
            short = ExperimentConfig(k=k, n=1000, lambdas=(lam,), N=100, strategies=('cu',), replicates=3, root_seed=12)
            long = evolve(short, N=10_000)
            assert mean_error(sweep_lambda(long), lam, 'cu') < mean_error(sweep_lambda(short), lam, 'cu')

    def test_supercritical_k2_error_is_positive(self):
        config = ExperimentConfig(k=2, n=1000, lambdas=(1.0,), N=100, model='balanced', strategies=('cu',),
                                  replicates=5, root_seed=13)
        assert all(row.err_unweighted > 0 for row in sweep_lambda(config))

    def test_dominant_mode_of_dense_instances(self):
        result = error_distribution(3, 3.0, 1000, 50_000, seed=14)
        assert result.mode == pytest.approx(3.22, abs=0.15)
        assert result.mode_mass == pytest.approx(0.90, abs=0.05)

    def test_concentration_tightens_with_density(self):
        config = ExperimentConfig(k=2, n=1000, lambdas=(1.0, 5.0), N=1000, strategies=('cu',), replicates=20, root_seed=15)
        result = concentration(config, jobs=2)
        assert result.stat(5.0, 'cu').std_err_unweighted < result.stat(1.0, 'cu').std_err_unweighted

    def test_zipf_ordering_reverses(self):
        config = ExperimentConfig(k=3, n=1000, lambdas=(0.5, 3.0), N=1000, strategies=('cu',), replicates=15,
                                  root_seed=16, betas=(0.0, 0.5, 0.9))
        rows = zipf_sweep(config, jobs=2)

        def votes(lam, first, second):
            pairs = {}
            for row in rows:
                if row.lam == lam:
                    pairs.setdefault(row.replicate, {})[row.model] = row.err_weighted
            return sum(p[f'zipf:{first}'] < p[f'zipf:{second}'] for p in pairs.values())

        # sparse: uniform keys give the smallest error; 0.5 against 0.9 is not ordered
        assert votes(0.5, 0.0, 0.5) > 7 and votes(0.5, 0.0, 0.9) > 7
        # dense: uniform keys give the largest error
        assert votes(3.0, 0.5, 0.0) > 7 and votes(3.0, 0.9, 0.0) > 7

    def test_whole_tables_are_reproducible(self):
        config = ExperimentConfig(k=3, n=500, lambdas=(0.6, 1.0), N=200, replicates=4, root_seed=17)
        assert sweep_lambda(config, jobs=1) == sweep_lambda(config, jobs=4)
        assert zipf_sweep(config, jobs=1) == zipf_sweep(config, jobs=3)
