import cmath
import math
from fractions import Fraction
from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, settings

from majmeter import (
    Partition,
    QPolynomial,
    bernoulli,
    count_standard_tableaux,
    cumulant_decomposition,
    cumulant_from_polynomial,
    exact_cumulant,
    kolmogorov_distance_to_normal,
    log_laplace_exact,
    maj_polynomial,
    maj_polynomial_float,
    maj_polynomial_sn,
    mean_maj,
    partitions_of,
    predicted_cumulant_exact,
    range_maj,
    tail_probability,
    var_maj,
)
from majmeter.errors import (
    CapExceeded,
    DegenerateDistribution,
    DomainError,
    OddOrder,
)
from majmeter.tableaux import maj_multiset, perm_descents

from conftest import partition_strategy


class TestBernoulli:
    def test_values(self):
        assert bernoulli(0) == 1
        assert bernoulli(1) == Fraction(1, 2)
        assert bernoulli(2) == Fraction(1, 6)
        assert bernoulli(3) == 0
        assert bernoulli(4) == Fraction(-1, 30)
        assert bernoulli(6) == Fraction(1, 42)

    def test_odd_vanish(self):
        assert all(bernoulli(r) == 0 for r in (3, 5, 7, 9, 11))

    def test_generating_series(self):
        # oracle: (1 - e^{-t}) * sum B_r t^r / r!  ==  t, coefficientwise
        order = 12
        minus_expm1 = [Fraction(0)] + [
            -Fraction((-1) ** k, math.factorial(k)) for k in range(1, order + 2)
        ]
        series = [bernoulli(r) / math.factorial(r) for r in range(order + 1)]
        for m in range(order + 1):
            coeff = sum(minus_expm1[j] * series[m - j] for j in range(1, m + 1))
            assert coeff == (1 if m == 1 else 0)


class TestMajPolynomial:
    def test_two_one(self):
        assert maj_polynomial(Partition((2, 1))) == QPolynomial([1, 1], offset=1)

    def test_column(self):
        assert maj_polynomial(Partition((1, 1, 1))) == QPolynomial([1], offset=3)

    def test_known_shape(self):
        poly = maj_polynomial(Partition((4, 2, 2, 1)))
        assert poly.at_one() == 216
        assert poly.support() == (9, 28)

    def test_interior_zero_coefficient(self):
        # (2,2) has tableaux with maj 2 and 4 only
        assert maj_polynomial(Partition((2, 2))) == QPolynomial([1, 0, 1], offset=2)

    def test_matches_enumeration(self):
        for n in range(1, 9):
            for lam in partitions_of(n):
                poly = maj_polynomial(lam)
                histogram = {
                    poly.offset + i: c for i, c in enumerate(poly.coeffs) if c
                }
                assert histogram == maj_multiset(lam)

    def test_conjugate_reverses_coefficients(self):
        from majmeter import conjugate

        for n in range(1, 10):
            for lam in partitions_of(n):
                p = maj_polynomial(lam)
                q = maj_polynomial(conjugate(lam))
                top = n * (n - 1) // 2
                assert q.coeffs == tuple(reversed(p.coeffs))
                assert q.offset == top - p.degree

    def test_cap(self):
        with pytest.raises(CapExceeded, match="extended-precision"):
            maj_polynomial(Partition((301,)))

    def test_json_round_trip(self):
        poly = maj_polynomial(Partition((3, 2)))
        assert QPolynomial.from_json(poly.to_json()) == poly


class TestMajPolynomialSn:
    def test_small(self):
        assert maj_polynomial_sn(1) == QPolynomial([1])
        # oracle: maj over the 6 permutations of S(3)
        histogram = {}
        for images in permutations((1, 2, 3)):
            m = sum(perm_descents(images))
            histogram[m] = histogram.get(m, 0) + 1
        poly = maj_polynomial_sn(3)
        assert {poly.offset + i: c for i, c in enumerate(poly.coeffs)} == histogram
        assert poly == QPolynomial([1, 2, 2, 1])

    def test_total_mass(self):
        for n in range(1, 7):
            assert maj_polynomial_sn(n).at_one() == math.factorial(n)

    def test_rsk_consistency(self):
        # summing shape polynomials weighted by tableau counts recovers S(n)
        for n in range(1, 7):
            top = n * (n - 1) // 2
            acc = [0] * (top + 1)
            for lam in partitions_of(n):
                poly = maj_polynomial(lam)
                weight = count_standard_tableaux(lam)
                for i, c in enumerate(poly.coeffs):
                    acc[poly.offset + i] += weight * c
            assert QPolynomial(acc) == maj_polynomial_sn(n)


class TestCumulants:
    def test_exact_examples(self):
        lam = Partition((4, 2, 2, 1))
        assert exact_cumulant(lam, 2) == Fraction(175, 12)
        assert exact_cumulant(lam, 3) == 0
        assert exact_cumulant(Partition((6,)), 5) == 0

    def test_variance_against_enumeration(self):
        lam = Partition((4, 2, 2, 1))
        values = []
        for m, c in maj_multiset(lam).items():
            values.extend([m] * c)
        mean = Fraction(sum(values), len(values))
        var = sum((Fraction(v) - mean) ** 2 for v in values) / len(values)
        assert exact_cumulant(lam, 2) == var
        assert mean_maj(lam) == mean

    def test_odd_cumulants_vanish(self):
        for lam in (Partition((3, 2)), Partition((4, 4, 1)), Partition((5, 2, 2))):
            for r in (3, 5, 7):
                assert exact_cumulant(lam, r) == 0

    def test_moment_route_two_point(self):
        poly = QPolynomial([1, 1], offset=1)
        assert cumulant_from_polynomial(poly, 1) == Fraction(3, 2)
        assert cumulant_from_polynomial(poly, 2) == Fraction(1, 4)

    def test_route_agreement(self):
        for n in range(1, 9):
            for lam in partitions_of(n):
                poly = maj_polynomial(lam)
                for r in range(2, 7):
                    assert exact_cumulant(lam, r) == cumulant_from_polynomial(poly, r)

    def test_low_order_guard(self):
        with pytest.raises(ValueError):
            exact_cumulant(Partition((2, 1)), 1)


class TestClosedForms:
    def test_mean(self):
        assert mean_maj(Partition((4, 2, 2, 1))) == Fraction(37, 2)
        assert mean_maj(Partition((6,))) == 0

    def test_mean_uniform_group_analogue(self):
        for n in range(2, 7):
            poly = maj_polynomial_sn(n)
            assert cumulant_from_polynomial(poly, 1) == Fraction(n * (n - 1), 4)

    def test_variance(self):
        assert var_maj(Partition((4, 2, 2, 1))) == Fraction(175, 12)
        assert var_maj(Partition((6,))) == 0
        assert var_maj(Partition((2, 1))) == Fraction(1, 4)

    @given(partition_strategy(max_n=10))
    @settings(deadline=None, max_examples=30)
    def test_closed_forms_match_polynomial(self, lam):
        poly = maj_polynomial(lam)
        assert mean_maj(lam) == poly.moment(1)
        assert var_maj(lam) == poly.moment(2) - poly.moment(1) ** 2

    def test_range(self):
        assert range_maj(Partition((4, 2, 2, 1))) == (9, 28)
        assert range_maj(Partition((5,))) == (0, 0)
        assert range_maj(Partition((1,) * 5)) == (10, 10)

    def test_range_matches_support(self):
        for n in range(1, 10):
            for lam in partitions_of(n):
                assert range_maj(lam) == maj_polynomial(lam).support()


class TestDecomposition:
    def test_single_cell(self):
        triple = cumulant_decomposition(Partition((1,)), 2)
        assert triple.alpha_r == 0
        assert triple.beta_r == 1
        # identity pins gamma: (B_2/2)(alpha - beta - gamma) = 0
        assert triple.gamma_r == -1

    def test_two_one(self):
        lam = Partition((2, 1))
        a, b, g = cumulant_decomposition(lam, 2)
        assert bernoulli(2) / 2 * (a - b - g) == Fraction(1, 4) == exact_cumulant(lam, 2)

    def test_identity_sweep(self):
        for n in range(1, 9):
            for lam in partitions_of(n):
                for r in (2, 4, 6):
                    a, b, g = cumulant_decomposition(lam, r)
                    assert bernoulli(r) / r * (a - b - g) == exact_cumulant(lam, r)

    def test_odd_rejected(self):
        with pytest.raises(OddOrder):
            cumulant_decomposition(Partition((2, 1)), 3)


class TestPredictedCumulant:
    def test_r2_tail_is_exactly_p1_over_48(self):
        # the difference between the exact variance and the two leading orders
        # is the linear term p1/48
        for lam in (Partition((4, 2, 2, 1)), Partition((5, 5)), Partition((3, 3, 3))):
            diff = exact_cumulant(lam, 2) - predicted_cumulant_exact(lam, 2)
            assert diff == Fraction(lam.n, 48)

    def test_single_row_remainder_is_linear(self):
        # exact cumulant vanishes for one row, so the prediction is pure remainder
        for n in (6, 12, 24, 48):
            lam = Partition((n,))
            err = abs(float(predicted_cumulant_exact(lam, 2)))
            assert err < 0.1 * n

    def test_odd_orders_predict_zero(self):
        assert predicted_cumulant_exact(Partition((3, 2)), 3) == 0


class TestTails:
    def test_two_point(self):
        poly = QPolynomial([1, 1], offset=1)
        assert tail_probability(poly, 2, "upper") == Fraction(1, 2)
        assert tail_probability(poly, 1, "upper") == 1
        assert tail_probability(poly, 0, "upper") == 1

    def test_against_enumeration(self):
        lam = Partition((4, 2, 2, 1))
        poly = maj_polynomial(lam)
        count = sum(c for m, c in maj_multiset(lam).items() if m >= 19)
        assert tail_probability(poly, 19, "upper") == Fraction(count, 216)

    def test_lower(self):
        poly = QPolynomial([1, 1], offset=1)
        assert tail_probability(poly, 1, "lower") == Fraction(1, 2)


class TestKolmogorov:
    def test_two_point_value(self):
        poly = QPolynomial([1, 1], offset=1)
        expected = 0.5 - 0.5 * math.erfc(1 / math.sqrt(2))  # 1/2 - Phi(-1)
        assert abs(kolmogorov_distance_to_normal(poly) - expected) < 1e-14

    def test_shift_invariance(self):
        poly = maj_polynomial(Partition((3, 2, 1)))
        assert kolmogorov_distance_to_normal(poly) == kolmogorov_distance_to_normal(
            poly.shifted(17)
        )

    def test_degenerate(self):
        with pytest.raises(DegenerateDistribution):
            kolmogorov_distance_to_normal(QPolynomial([1], offset=3))


class TestLogLaplaceExact:
    def test_zero(self):
        assert log_laplace_exact(Partition((3, 1)), 0) == 0

    def test_two_route(self):
        lam = Partition((2, 1))
        poly = maj_polynomial(lam)
        direct = cmath.log(poly(math.exp(1.0 / 3.0)) / 2.0)
        assert abs(log_laplace_exact(lam, 1.0) - direct) < 1e-12

    def test_two_route_relative(self):
        lam = Partition((4, 2, 2, 1))
        poly = maj_polynomial(lam)
        for z in (0.5, 1.0, 2.0, -1.5):
            direct = math.log(poly(math.exp(z / 9.0)) / 216.0)
            value = log_laplace_exact(lam, z).real
            assert abs(value - direct) <= 1e-10 * max(1.0, abs(direct))

    def test_single_row_vanishes(self):
        for z in (0.7, 1 + 0.5j, -2.0):
            assert abs(log_laplace_exact(Partition((8,)), z)) < 1e-12

    def test_domain(self):
        with pytest.raises(DomainError):
            log_laplace_exact(Partition((3, 1)), 3.2j)


class TestFloatVariant:
    def test_bulk_statistics_match_exact(self):
        lam = Partition((20, 15, 7, 3, 3))
        poly = maj_polynomial(lam)
        offset, coeffs = maj_polynomial_float(lam)
        assert offset == poly.offset and len(coeffs) == len(poly.coeffs)
        exact = np.array([float(c) for c in poly.coeffs])
        assert abs(float(coeffs.sum()) - exact.sum()) <= 1e-12 * exact.sum()
        grid = np.arange(offset, offset + len(coeffs))
        mean = float((coeffs * grid).sum() / coeffs.sum())
        assert abs(mean - float(mean_maj(lam))) <= 1e-10
        cdf_f = np.cumsum(coeffs) / coeffs.sum()
        cdf_e = np.cumsum(exact) / exact.sum()
        assert float(np.max(np.abs(cdf_f.astype(float) - cdf_e))) < 1e-12

    def test_matches_exact_small(self):
        lam = Partition((5, 4, 2))
        poly = maj_polynomial(lam)
        offset, coeffs = maj_polynomial_float(lam)
        assert offset == poly.offset
        assert [int(c) for c in coeffs] == list(poly.coeffs)
