"""Tests for zero finding and Monte Carlo zero counting."""

import math

import numpy as np
import pytest

from orthozeros.errors import DegenerateLeadingCoefficient
from orthozeros.kacrice import expected_zeros_orthopoly
from orthozeros.montecarlo import (
    comrade_matrix,
    component_shares,
    evaluate,
    find_real_zeros,
    find_real_zeros_gridscan,
    find_zeros,
    oracle_agreement,
    run_experiment,
    sample_polynomial,
    strip_zeros,
    trial_generator,
    zero_histogram,
)

MIDDLE_EDGES = [-1.0, -0.5, 0.5, 1.0]


class TestSampling:
    def test_substreams_reproducible(self, legendre_table):
        first = sample_polynomial(legendre_table, 10, 1.0, trial_generator(42, 3))
        again = sample_polynomial(legendre_table, 10, 1.0, trial_generator(42, 3))
        other = sample_polynomial(legendre_table, 10, 1.0, trial_generator(42, 4))
        assert np.array_equal(first, again)
        assert not np.array_equal(first, other)

    def test_moments(self, legendre_table):
        draws = np.concatenate([
            sample_polynomial(legendre_table, 599, 2.0, trial_generator(11, t)) for t in range(200)
        ])
        assert abs(draws.mean()) < 0.03
        assert draws.var() == pytest.approx(4.0, rel=0.02)

    @pytest.mark.parametrize("seed, trial_id", [(-1, 0), (2 ** 64, 0), (1, -1)])
    def test_bad_stream(self, seed, trial_id):
        with pytest.raises(ValueError):
            trial_generator(seed, trial_id)

    def test_bad_sigma(self, legendre_table):
        with pytest.raises(ValueError):
            sample_polynomial(legendre_table, 5, 0.0, trial_generator(1, 0))


class TestZeros:
    def test_first_basis_polynomial(self, legendre_table):
        assert find_real_zeros(legendre_table, [0.0, 1.0]) == pytest.approx(np.array([0.0]), abs=1e-14)

    def test_second_basis_polynomial(self, legendre_table):
        zeros = find_real_zeros(legendre_table, [0.0, 0.0, 1.0])
        assert zeros == pytest.approx(np.array([-1.0, 1.0]) / math.sqrt(3.0), abs=1e-14)

    def test_all_zeros_found(self, legendre_table):
        c = sample_polynomial(legendre_table, 12, 1.0, trial_generator(9, 0))
        zeros = find_zeros(legendre_table, c)
        assert zeros.size == 12
        values, _ = evaluate(legendre_table, c, zeros.real[np.abs(zeros.imag) < 1e-12])
        assert np.all(np.abs(values) < 1e-8 * np.abs(c).sum())

    def test_comrade_shape(self, legendre_table):
        matrix = comrade_matrix(legendre_table, [1.0, 2.0, 3.0, 4.0])
        assert matrix.shape == (3, 3)
        assert matrix[0, 1] == matrix[1, 0] == legendre_table.b[0]

    def test_degenerate_leading_coefficient(self, legendre_table):
        with pytest.raises(DegenerateLeadingCoefficient):
            find_real_zeros(legendre_table, [1.0, 0.0])

    def test_scale_invariance(self, legendre_table):
        c = sample_polynomial(legendre_table, 20, 1.0, trial_generator(3, 1))
        assert find_real_zeros(legendre_table, 3.0 * c) == pytest.approx(find_real_zeros(legendre_table, c), abs=1e-12)

    def test_window(self, legendre_table):
        zeros = find_real_zeros(legendre_table, [0.0, 0.0, 1.0], window=(0.0, 1.0))
        assert zeros == pytest.approx(np.array([1.0 / math.sqrt(3.0)]))

    def test_gridscan_matches(self, legendre_table):
        c = sample_polynomial(legendre_table, 18, 1.0, trial_generator(5, 2))
        comrade = find_real_zeros(legendre_table, c, window=(-1.0, 1.0))
        scan = find_real_zeros_gridscan(legendre_table, c, (-1.0, 1.0))
        assert comrade == pytest.approx(scan, abs=1e-8)

    def test_gridscan_needs_finite_window(self, legendre_table):
        with pytest.raises(ValueError):
            find_real_zeros_gridscan(legendre_table, [0.0, 1.0], (-math.inf, 1.0))

    def test_oracle_agreement_small(self, legendre_table):
        assert oracle_agreement(legendre_table, 15, 100, (-1.0, 1.0), seed=2024) >= 0.99

    @pytest.mark.slow
    def test_oracle_agreement(self, legendre_table):
        assert oracle_agreement(legendre_table, 30, 1000, (-1.0, 1.0), seed=2024) >= 0.995

    def test_strip(self):
        eigs = np.array([0.1 + 0.5j, 0.2 - 2.0j, -0.3 + 0.0j, 4.0 + 0.1j])
        assert strip_zeros(eigs, (-1.0, 1.0), 1.0).tolist() == [-0.3, 0.1]


class TestHistogram:
    def test_empty(self):
        hist = zero_histogram([], 10, 5, 3)
        assert hist.total == 0.0 and hist.masses.shape == (10,)

    def test_last_bin_closed(self):
        hist = zero_histogram([-1.0, 0.0, 1.0], [-1.0, 0.0, 1.0], 3, 1)
        assert hist.masses.tolist() == [1.0 / 3.0, 2.0 / 3.0]

    def test_bad_edges(self):
        with pytest.raises(ValueError):
            zero_histogram([0.0], [0.0, 0.0, 1.0], 1, 1)


class TestRunExperiment:
    def test_counts_bounded(self, legendre_table, legendre_spec):
        stats = run_experiment(legendre_table, legendre_spec, 10, trials=50, seed=1, threads=1, keep_records=True)
        assert all(0 <= c <= 10 for c in stats.counts)
        assert len(stats.records) == 50
        assert stats.histogram.total <= 1.0 + 1e-12
        assert stats.real_histogram.total <= stats.histogram.total + 1e-12

    def test_threads_do_not_change_results(self, legendre_table, legendre_spec):
        one = run_experiment(legendre_table, legendre_spec, 25, trials=64, seed=77, threads=1)
        four = run_experiment(legendre_table, legendre_spec, 25, trials=64, seed=77, threads=4)
        assert one.counts == four.counts
        assert one.mean_count == four.mean_count and one.std_error == four.std_error
        assert np.array_equal(one.histogram.masses, four.histogram.masses)

    def test_single_trial_error(self, legendre_table, legendre_spec):
        assert run_experiment(legendre_table, legendre_spec, 5, trials=1, seed=3, threads=1).std_error == 0.0

    def test_bad_trials(self, legendre_table, legendre_spec):
        with pytest.raises(ValueError):
            run_experiment(legendre_table, legendre_spec, 5, trials=0, seed=3)

    @pytest.mark.slow
    def test_agrees_with_quadrature(self, legendre_table, legendre_spec):
        stats = run_experiment(legendre_table, legendre_spec, 20, trials=5000, window=(-1.0, 1.0), seed=20240101, threads=4)
        expected = expected_zeros_orthopoly(legendre_table, legendre_spec, (-1.0, 1.0), 20).value
        assert abs(stats.mean_count - expected) <= 3.0 * stats.std_error

    @pytest.mark.slow
    def test_std_error_scaling(self, legendre_table, legendre_spec):
        small = run_experiment(legendre_table, legendre_spec, 20, trials=1000, seed=11, threads=4)
        large = run_experiment(legendre_table, legendre_spec, 20, trials=4000, seed=11, threads=4)
        # 4x the trials halves the standard error
        assert large.std_error / small.std_error == pytest.approx(0.5, rel=0.2)

    @pytest.mark.slow
    def test_strip_mass_matches_equilibrium(self, legendre_table, legendre_spec):
        stats = run_experiment(legendre_table, legendre_spec, 80, trials=2000, seed=99, threads=4, bins=MIDDLE_EDGES)
        assert stats.histogram.mass_between(-0.5, 0.5) == pytest.approx(1.0 / 3.0, abs=0.02)

    @pytest.mark.slow
    def test_two_intervals_components(self, two_intervals_table, two_intervals_spec):
        stats = run_experiment(two_intervals_table, two_intervals_spec, 80, trials=2000, seed=5, threads=4, bins=MIDDLE_EDGES)
        left, right = stats.component_shares
        assert left == pytest.approx(0.5, abs=0.02)
        assert right == pytest.approx(0.5, abs=0.02)


class TestComponentShares:
    def test_shares(self):
        zeros = [-0.9, -0.6, 0.0, 0.7, 0.8, 0.9]
        assert component_shares(zeros, [(-1.0, -0.5), (0.5, 1.0)]) == (2 / 6, 3 / 6)

    def test_closed_ends(self):
        assert component_shares([-1.0, 1.0], [(-1.0, 1.0)]) == (1.0,)

    def test_no_zeros(self):
        assert component_shares([], [(-1.0, -0.5), (0.5, 1.0)]) == (0.0, 0.0)

    def test_single_interval_run(self, legendre_table, legendre_spec):
        stats = run_experiment(legendre_table, legendre_spec, 12, trials=20, seed=4, threads=1)
        assert stats.component_shares == (1.0,)
