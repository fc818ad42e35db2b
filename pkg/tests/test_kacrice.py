"""Tests for the Kac-Rice expected zero counts."""

import math

import numpy as np
import pytest

from orthozeros.errors import InvalidBasis
from orthozeros.kacrice import (
    FULL_LINE,
    adaptive_integrate,
    expected_zeros_general,
    expected_zeros_kac_monomial,
    expected_zeros_orthopoly,
    kac_asymptote,
    limit_prediction,
    monomial_basis,
    orthonormal_basis,
    sweep_kac,
    sweep_orthopoly,
)
from orthozeros.measure import generalized, load_measure
from orthozeros.orthopoly import build_recurrence

INV_SQRT3 = 1.0 / math.sqrt(3.0)
KAC_CONSTANT = 0.6257358


class TestAdaptiveIntegrate:
    def test_constant(self):
        value, err, panels = adaptive_integrate(lambda x: np.ones_like(x), 0.0, 1.0)
        assert value == pytest.approx(1.0, abs=1e-15)
        assert err >= 0.0 and panels >= 1

    def test_lorentzian(self):
        value, _, _ = adaptive_integrate(lambda x: 1.0 / (1.0 + x * x), -1.0, 1.0, rel_tol=1e-12)
        assert value == pytest.approx(math.pi / 2, rel=1e-12)

    def test_empty_interval(self):
        assert adaptive_integrate(np.sin, 0.3, 0.3) == (0.0, 0.0, 0)

    def test_reversed_interval(self):
        value, _, _ = adaptive_integrate(lambda x: x * x, 1.0, 0.0, rel_tol=1e-12)
        assert value == pytest.approx(-1.0 / 3.0, rel=1e-12)

    def test_nonpositive_tolerance(self):
        with pytest.raises(ValueError):
            adaptive_integrate(np.cos, 0.0, 1.0, rel_tol=0.0)


class TestGeneral:
    def test_monomial_degree_one(self):
        result = expected_zeros_general(monomial_basis(1), (-1.0, 1.0), 1)
        assert result.value == pytest.approx(0.5, abs=1e-6)
        assert result.interval == (-1.0, 1.0)

    @pytest.mark.parametrize("T", [2.0, 10.0, 100.0])
    def test_monomial_arctan(self, T):
        result = expected_zeros_general(monomial_basis(1), (-T, T), 1, rel_tol=1e-10)
        assert result.value == pytest.approx(2.0 / math.pi * math.atan(T), rel=1e-8)

    def test_degenerate_interval(self):
        result = expected_zeros_general(monomial_basis(3), (0.25, 0.25), 3)
        assert result.value == 0.0 and result.panels_used == 0

    def test_nonconstant_first_function(self):
        def basis(x):
            g, dg = monomial_basis(2)(x)
            return g[::-1].copy(), dg[::-1].copy()

        with pytest.raises(InvalidBasis):
            expected_zeros_general(basis, (-1.0, 1.0), 2)

    def test_wrong_function_count(self):
        with pytest.raises(InvalidBasis):
            expected_zeros_general(monomial_basis(3), (-1.0, 1.0), 2)

    def test_orthonormal_basis_reduces(self, legendre_table, legendre_spec):
        general = expected_zeros_general(orthonormal_basis(legendre_table, 10), (-0.8, 0.6), 10, rel_tol=1e-10)
        ortho = expected_zeros_orthopoly(legendre_table, legendre_spec, (-0.8, 0.6), 10, rel_tol=1e-10)
        assert general.value == pytest.approx(ortho.value, rel=1e-8)


class TestOrthopoly:
    def test_legendre_degree_one(self, legendre_table, legendre_spec):
        result = expected_zeros_orthopoly(legendre_table, legendre_spec, (-1.0, 1.0), 1)
        assert result.value == pytest.approx(2.0 / 3.0, abs=1e-6)

    def test_global_law(self, legendre_table, legendre_spec):
        result = expected_zeros_orthopoly(legendre_table, legendre_spec, (-1.0, 1.0), 200, rel_tol=1e-6)
        assert result.value / 200 == pytest.approx(INV_SQRT3, rel=0.01)
        assert result.est_error <= 1e-6 * max(1.0, result.value)

    @pytest.mark.slow
    def test_global_law_monotone(self, legendre_table, legendre_spec):
        results = sweep_orthopoly(legendre_table, legendre_spec, (-1.0, 1.0), [25, 50, 100, 200], rel_tol=1e-6)
        gaps = [abs(r.value / r.n - INV_SQRT3) for r in results]
        assert all(later < earlier for earlier, later in zip(gaps[:-1], gaps[1:]))

    @pytest.mark.parametrize("name", ["chebyshev", "chebyshev2", "jacobi", "abs"])
    def test_global_law_other_weights(self, name):
        spec = load_measure(name)
        table = build_recurrence(spec, 200)
        result = expected_zeros_orthopoly(table, spec, spec.hull, 200, rel_tol=1e-6)
        assert result.value / 200 == pytest.approx(INV_SQRT3, rel=0.02)

    def test_local_law(self, legendre_table, legendre_spec):
        result = expected_zeros_orthopoly(legendre_table, legendre_spec, (-0.5, 0.5), 200, rel_tol=1e-6)
        assert result.value / 200 == pytest.approx(INV_SQRT3 / 3.0, rel=0.02)

    def test_sigma_invariance(self, legendre_table, legendre_spec):
        one = expected_zeros_orthopoly(legendre_table, legendre_spec, (-0.3, 0.9), 12, sigma=1.0)
        two = expected_zeros_orthopoly(legendre_table, legendre_spec, (-0.3, 0.9), 12, sigma=2.0)
        assert one.value == two.value

    @pytest.mark.parametrize("n, interval", [(5, (-0.9, 0.7)), (23, (-1.0, 0.2)), (50, (0.1, 0.95))])
    def test_weighted_form_agrees(self, legendre_table, legendre_spec, n, interval):
        plain = expected_zeros_orthopoly(legendre_table, legendre_spec, interval, n, rel_tol=1e-10)
        weighted = expected_zeros_orthopoly(legendre_table, legendre_spec, interval, n, rel_tol=1e-10, weighted=True)
        assert weighted.value == pytest.approx(plain.value, rel=1e-8)

    def test_additivity(self, legendre_table, legendre_spec):
        rng = np.random.default_rng(7)
        for c in rng.uniform(-0.9, 0.9, 3):
            left = expected_zeros_orthopoly(legendre_table, legendre_spec, (-1.0, c), 30)
            right = expected_zeros_orthopoly(legendre_table, legendre_spec, (c, 1.0), 30)
            whole = expected_zeros_orthopoly(legendre_table, legendre_spec, (-1.0, 1.0), 30)
            assert left.value + right.value == pytest.approx(whole.value, rel=3e-8)

    def test_monotone_in_interval(self, legendre_table, legendre_spec):
        inner = expected_zeros_orthopoly(legendre_table, legendre_spec, (-0.4, 0.4), 40)
        outer = expected_zeros_orthopoly(legendre_table, legendre_spec, (-0.5, 0.6), 40)
        assert inner.value <= outer.value + 1e-8

    @pytest.mark.parametrize("table_name, spec_name", [
        ("chebyshev_table", "chebyshev_spec"),
        ("two_intervals_table", "two_intervals_spec"),
    ])
    def test_bounded_by_degree(self, request, table_name, spec_name):
        table, spec = request.getfixturevalue(table_name), request.getfixturevalue(spec_name)
        result = expected_zeros_orthopoly(table, spec, spec.hull, 40, rel_tol=1e-6)
        assert 0.0 <= result.value <= 40

    def test_outside_hull(self, legendre_table, legendre_spec):
        with pytest.raises(ValueError):
            expected_zeros_orthopoly(legendre_table, legendre_spec, (-1.0, 1.5), 5)

    def test_degree_out_of_range(self, legendre_table, legendre_spec):
        with pytest.raises(ValueError):
            expected_zeros_orthopoly(legendre_table, legendre_spec, (-1.0, 1.0), legendre_table.n_max + 1)

    def test_nonpositive_sigma(self, legendre_table, legendre_spec):
        with pytest.raises(ValueError):
            expected_zeros_orthopoly(legendre_table, legendre_spec, (-1.0, 1.0), 5, sigma=0.0)


class TestKacMonomial:
    def test_degree_one_full_line(self):
        assert expected_zeros_kac_monomial(1).value == pytest.approx(1.0, abs=1e-6)

    def test_half_lines_agree(self):
        positive = expected_zeros_kac_monomial(17, (0.0, math.inf))
        negative = expected_zeros_kac_monomial(17, (-math.inf, 0.0))
        assert positive.value == pytest.approx(negative.value, rel=1e-12)

    def test_unit_interval_is_half(self):
        inner = expected_zeros_kac_monomial(9, (-1.0, 1.0))
        whole = expected_zeros_kac_monomial(9, FULL_LINE)
        assert inner.value == pytest.approx(whole.value / 2.0, rel=1e-8)

    def test_matches_general_on_finite_interval(self):
        kac = expected_zeros_kac_monomial(6, (-2.0, 3.0), rel_tol=1e-10)
        general = expected_zeros_general(monomial_basis(6), (-2.0, 3.0), 6, rel_tol=1e-10)
        assert kac.value == pytest.approx(general.value, rel=1e-8)

    def test_sweep_increases(self):
        values = [r.value for r in sweep_kac([10, 100, 1000])]
        assert values[0] < values[1] < values[2]

    @pytest.mark.slow
    def test_logarithmic_growth(self):
        big = expected_zeros_kac_monomial(10_000, rel_tol=1e-8)
        small = expected_zeros_kac_monomial(100, rel_tol=1e-8)
        ratio = big.value / kac_asymptote(10_000)
        assert 1.0 <= ratio <= 1.12
        assert abs(big.value - (kac_asymptote(10_000) + KAC_CONSTANT)) < 5e-3
        assert abs(ratio - 1.0) < abs(small.value / kac_asymptote(100) - 1.0)

    def test_degree_zero_rejected(self):
        with pytest.raises(ValueError):
            expected_zeros_kac_monomial(0)


class TestLimitPrediction:
    def test_legendre_middle_half(self, legendre_spec):
        assert limit_prediction(legendre_spec, (-0.5, 0.5)) == pytest.approx(INV_SQRT3 / 3.0, rel=1e-10)

    def test_two_intervals_component(self, two_intervals_spec):
        assert limit_prediction(two_intervals_spec, (0.5, 1.0)) == pytest.approx(INV_SQRT3 / 2.0, rel=1e-7)

    def test_unsupported_support(self):
        spec = generalized([(-1.0, -0.6), (-0.2, 0.3), (0.5, 1.0)])
        assert limit_prediction(spec, (-1.0, 1.0)) is None
