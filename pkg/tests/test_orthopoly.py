"""Tests for recurrences, evaluation and Gauss rules."""

import math

import numpy as np
import pytest

from orthozeros.errors import UnsupportedSpec
from orthozeros.measure import generalized, integrate, jacobi, legendre, load_measure
from orthozeros.orthopoly import (
    RecurrenceTable,
    build_recurrence,
    eval_all,
    eval_scaled,
    gauss_nodes,
    leading_coeff_growth,
    recurrence_analytic,
    recurrence_stieltjes,
)


class TestAnalytic:
    def test_legendre_first_coefficients(self, legendre_table):
        assert legendre_table.a[0] == 0.0
        assert legendre_table.b[0] == pytest.approx(1.0 / math.sqrt(3.0), rel=1e-15)
        assert legendre_table.mu0 == pytest.approx(2.0, rel=1e-15)

    def test_chebyshev_coefficients(self, chebyshev_table):
        assert chebyshev_table.b[0] == pytest.approx(1.0 / math.sqrt(2.0), rel=1e-15)
        assert np.allclose(chebyshev_table.b[1:], 0.5, rtol=1e-14, atol=0.0)
        assert chebyshev_table.mu0 == pytest.approx(math.pi, rel=1e-14)

    def test_symmetric_weights_have_zero_diagonal(self, legendre_table, chebyshev_table):
        assert np.all(legendre_table.a == 0.0)
        assert np.all(chebyshev_table.a == 0.0)

    def test_gamma_log_recursion(self, legendre_table):
        assert legendre_table.gamma_log[0] == pytest.approx(-0.5 * math.log(2.0))
        diffs = legendre_table.gamma_log[1:] - legendre_table.gamma_log[:-1]
        assert np.allclose(diffs, -np.log(legendre_table.b), rtol=1e-14)

    def test_affine_map(self):
        table = recurrence_analytic(jacobi(0.0, 0.0, (0.0, 2.0)), 10)
        assert np.allclose(table.a, 1.0, rtol=0.0, atol=1e-15)
        assert table.b[0] == pytest.approx(1.0 / math.sqrt(3.0), rel=1e-15)

    def test_non_classical_rejected(self, abs_spec):
        with pytest.raises(UnsupportedSpec):
            recurrence_analytic(abs_spec, 5)

    def test_table_is_read_only(self, legendre_table):
        with pytest.raises(ValueError):
            legendre_table.a[0] = 1.0


class TestStieltjes:
    def test_matches_analytic_legendre(self):
        spec = legendre()
        assert recurrence_stieltjes(spec, 50).max_difference(recurrence_analytic(spec, 50)) < 1e-10

    def test_matches_analytic_asymmetric_jacobi(self):
        spec = jacobi(0.5, -0.5)
        stieltjes = recurrence_stieltjes(spec, 40)
        analytic = recurrence_analytic(spec, 40)
        assert stieltjes.max_difference(analytic) < 1e-10
        assert stieltjes.mu0 == pytest.approx(analytic.mu0, rel=1e-12)

    def test_abs_weight_is_even(self, abs_spec):
        table = recurrence_stieltjes(abs_spec, 40)
        assert np.all(table.a == 0.0)
        assert table.mu0 == pytest.approx(1.0, rel=1e-12)

    def test_two_intervals_even(self, two_intervals_table):
        assert np.all(two_intervals_table.a == 0.0)
        assert np.all(two_intervals_table.b > 0.0)
        assert two_intervals_table.mu0 == pytest.approx(1.0, rel=1e-12)

    def test_build_dispatch(self, abs_spec):
        assert np.array_equal(build_recurrence(legendre(), 20).b, recurrence_analytic(legendre(), 20).b)
        assert build_recurrence(abs_spec, 10).n_max == 10


class TestEvaluation:
    def test_legendre_low_degrees(self, legendre_table):
        x = np.array([-0.7, 0.0, 1.0])
        values, derivs = eval_all(legendre_table, x, 1)
        assert np.allclose(values[0], 1.0 / math.sqrt(2.0), rtol=1e-15)
        assert np.allclose(values[1], math.sqrt(1.5) * x, rtol=1e-15)
        assert np.allclose(derivs[0], 0.0)
        assert np.allclose(derivs[1], math.sqrt(1.5), rtol=1e-15)

    def test_p1_at_one(self, legendre_table):
        values, _ = eval_all(legendre_table, 1.0, 1)
        assert values[1] == pytest.approx(1.2247449, abs=1e-7)

    def test_orthonormality(self, abs_spec):
        table = build_recurrence(abs_spec, 12)
        nodes, weights = gauss_nodes(build_recurrence(abs_spec, 30), 30)
        values, _ = eval_all(table, nodes, 12)
        gram = (values * weights) @ values.T
        assert np.allclose(gram, np.eye(13), atol=1e-12)

    @pytest.mark.parametrize("table_name", ["legendre_table", "two_intervals_table"])
    def test_derivatives_match_finite_differences(self, request, table_name):
        table = request.getfixturevalue(table_name)
        x = np.linspace(-0.95, 0.95, 39)
        h = 1e-6
        _, derivs = eval_all(table, x, 20)
        upper, _ = eval_all(table, x + h, 20)
        lower, _ = eval_all(table, x - h, 20)
        central = (upper - lower) / (2.0 * h)
        assert np.allclose(central, derivs, rtol=0.0, atol=1e-6 * np.abs(derivs).max())

    @pytest.mark.parametrize("table_name, spec_name", [
        ("abs_table", "abs_spec"),
        ("two_intervals_table", "two_intervals_spec"),
    ])
    def test_orthonormal_against_measure(self, request, table_name, spec_name):
        table, spec = request.getfixturevalue(table_name), request.getfixturevalue(spec_name)
        degree = 30
        gram = np.empty((degree + 1, degree + 1))
        for j in range(degree + 1):
            for k in range(j, degree + 1):
                def product(x, j=j, k=k):
                    values, _ = eval_all(table, x, degree)
                    return values[j] * values[k]
                gram[j, k] = gram[k, j] = integrate(spec, product)
        assert np.allclose(gram, np.eye(degree + 1), rtol=0.0, atol=1e-9)

    def test_scaled_values_reconstruct(self, legendre_table):
        x = np.array([0.3, 5.0])
        values, derivs, log_scale = eval_scaled(legendre_table, x, 400)
        assert log_scale[0] == 0.0
        assert log_scale[1] > 0.0
        assert np.all(np.isfinite(values)) and np.all(np.isfinite(derivs))

    def test_scalar_input_keeps_shape(self, legendre_table):
        values, derivs = eval_all(legendre_table, 0.25, 3)
        assert values.shape == (4,) and derivs.shape == (4,)

    def test_degree_out_of_range(self, legendre_table):
        with pytest.raises(ValueError):
            eval_all(legendre_table, 0.0, legendre_table.n_max + 1)


class TestGaussNodes:
    def test_affine_covariance(self):
        reference = recurrence_analytic(jacobi(0.5, -0.5), 20)
        mapped = recurrence_analytic(jacobi(0.5, -0.5, (0.0, 4.0)), 20)
        nodes, weights = gauss_nodes(reference, 20)
        mapped_nodes, mapped_weights = gauss_nodes(mapped, 20)
        assert np.allclose(mapped_nodes, 2.0 + 2.0 * nodes, rtol=1e-13, atol=1e-13)
        assert np.allclose(mapped_weights, 2.0 * weights, rtol=1e-12)

    def test_single_node(self, legendre_table):
        nodes, weights = gauss_nodes(legendre_table, 1)
        assert nodes[0] == legendre_table.a[0]
        assert weights[0] == legendre_table.mu0

    def test_two_point_legendre(self, legendre_table):
        nodes, weights = gauss_nodes(legendre_table, 2)
        assert np.allclose(nodes, [-1.0 / math.sqrt(3.0), 1.0 / math.sqrt(3.0)], rtol=1e-14)
        assert np.allclose(weights, [1.0, 1.0], rtol=1e-14)

    @pytest.mark.parametrize("m", [3, 17, 64])
    def test_weights_sum_to_mass(self, chebyshev_table, m):
        _, weights = gauss_nodes(chebyshev_table, m)
        assert math.fsum(weights) == pytest.approx(chebyshev_table.mu0, rel=1e-12)


class TestLeadingCoefficient:
    def test_legendre_growth_tends_to_inverse_capacity(self, legendre_table):
        growth = [leading_coeff_growth(legendre_table, n) for n in (50, 100, 200, 500)]
        assert abs(growth[-1] - 2.0) < 0.02
        assert all(abs(g1 - 2.0) < abs(g0 - 2.0) for g0, g1 in zip(growth[:-1], growth[1:]))

    def test_chebyshev_growth(self, chebyshev_table):
        assert leading_coeff_growth(chebyshev_table, 500) == pytest.approx(2.0, rel=0.01)

    def test_wide_interval_growth(self):
        table = build_recurrence(load_measure("wide-legendre"), 500)
        assert leading_coeff_growth(table, 500) == pytest.approx(1.0, rel=0.01)


class TestCsv:
    def test_round_trip(self, tmp_path, abs_spec):
        table = build_recurrence(abs_spec, 20)
        path = tmp_path / "table.csv"
        table.to_csv(path)
        text = path.read_bytes().decode()
        assert text.startswith("j,a_j,b_j,gamma_log_j\r\n")
        back = RecurrenceTable.from_csv(path)
        assert back.n_max == 20
        assert np.array_equal(back.a, table.a) and np.array_equal(back.b, table.b)
        assert back.mu0 == pytest.approx(table.mu0, rel=1e-15)

    def test_generalized_weight_with_breakpoint(self):
        spec = generalized([(-1.0, 1.0)], breakpoints=[0.0], levels=[1.0, 2.0])
        table = build_recurrence(spec, 10)
        assert table.mu0 == pytest.approx(3.0, rel=1e-12)
        assert table.a[0] == pytest.approx(1.0 / 6.0, rel=1e-12)
