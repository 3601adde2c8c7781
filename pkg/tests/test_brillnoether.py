"""
Tests for the Chern-number machinery on W^r_d(C)
"""

from functools import reduce
from operator import mul

import pytest
from hypothesis import given
from hypothesis import strategies as st

from brillnoether import (
    BNSetup,
    CPicElement,
    chern_number,
    class_X,
    class_Y,
    g0b_restriction,
    gp_chain_report,
    harris_tu_monomial,
    integrate_cw,
    koszul_ABB,
    verify_vandermonde,
)
from combinat import iter_box_partitions
from errors import DegreeMismatch, ParameterRange
from formulas import koszul_slope
from grassmann import castelnuovo_rs
from numeric import vandermonde_reciprocal

eta, gamma, theta, c = CPicElement.eta(), CPicElement.gamma(), CPicElement.theta(), CPicElement.chern

monomial_keys = st.tuples(
    st.integers(0, 2),
    st.integers(0, 3),
    st.integers(0, 3),
    st.lists(st.integers(0, 4), max_size=3).map(tuple),
)
cpic_elements = st.dictionaries(monomial_keys, st.integers(-5, 5), max_size=6).map(CPicElement)


class TestSetup:
    @pytest.mark.parametrize("r, s", [(1, 1), (2, 2), (4, 2), (3, 5)])
    def test_w_has_dimension_r(self, r, s):
        setup = BNSetup(r, s)
        assert setup.dim_w == r
        assert setup.h == s - 1
        assert setup.genus == setup.g_curve + 1

    def test_rejects_zero(self):
        with pytest.raises(ParameterRange):
            BNSetup(0, 2)


class TestRing:
    def test_relations(self):
        assert eta * eta == 0
        assert gamma * eta == 0
        assert gamma * gamma == -2 * eta * theta
        assert gamma * gamma * gamma == 0

    def test_chern_edges(self):
        assert c(0) == 1
        assert c(-1) == 0

    def test_chern_indices_commute(self):
        assert c(2) * c(1) == c(1) * c(2)

    def test_arithmetic(self):
        x = 3 * theta - c(1)
        assert x - x == 0
        assert 1 - x == CPicElement.one() - x
        assert (x + 2) * eta == 3 * eta * theta - eta * c(1) + 2 * eta

    def test_mixed_product(self):
        assert (2 * gamma + 3 * eta) * gamma == -4 * eta * theta

    @given(cpic_elements)
    def test_normal_form_idempotent(self, x):
        assert x.reduce() == x
        assert x.reduce().reduce() == x.reduce()

    @given(cpic_elements, cpic_elements)
    def test_commutative(self, x, y):
        assert x * y == y * x


class TestChernNumbers:
    @pytest.mark.parametrize("r, s", [(2, 2), (2, 3), (3, 2)])
    def test_top_class_counts_series(self, r, s):
        setup = BNSetup(r, s)
        assert chern_number(c(r), setup) == castelnuovo_rs(r, s)

    def test_degree_mismatch(self):
        with pytest.raises(DegreeMismatch):
            chern_number(theta, BNSetup(2, 2))

    def test_rejects_curve_classes(self):
        with pytest.raises(DegreeMismatch):
            chern_number(eta * c(1), BNSetup(2, 2))

    def test_integrate_cw_uses_eta(self):
        setup = BNSetup(2, 2)
        assert integrate_cw(eta * c(2), setup) == castelnuovo_rs(2, 2)
        assert integrate_cw(gamma * c(2), setup) == 0

    def test_monomial_length(self):
        with pytest.raises(ParameterRange):
            harris_tu_monomial((1, 0), BNSetup(2, 1))

    @pytest.mark.parametrize("r, s, exponents", [
        (1, 2, (0, 0)),
        (2, 3, (0, 0, 0)),
        (2, 3, (1, 0, 2)),
        (3, 2, (2, 1, 1, 3)),
    ])
    def test_monomial_matches_vandermonde(self, r, s, exponents):
        setup = BNSetup(r, s)
        degree, value = harris_tu_monomial(exponents, setup)
        assert degree == (r + 1) * setup.h + sum(exponents)
        rows = [setup.h + e - j for j, e in enumerate(exponents)]
        assert value == vandermonde_reciprocal(rows)

    def test_monomial_with_repeated_rows_vanishes(self):
        # rows 0 and 1 of the determinant coincide
        assert harris_tu_monomial((0, 1, 0), BNSetup(2, 3))[1] == 0

    @pytest.mark.parametrize("r, s", [(2, 2), (2, 3), (3, 2)])
    def test_chern_numbers_are_integers(self, r, s):
        setup = BNSetup(r, s)
        for k in range(r + 1):
            for shape in iter_box_partitions(r, r):
                if shape.weight != r - k:
                    continue
                poly = reduce(mul, [theta] * k + [c(part) for part in shape.parts], CPicElement.one())
                assert chern_number(poly, setup).denominator == 1

    @pytest.mark.parametrize("r", [2, 3, 4])
    @pytest.mark.parametrize("s", [2, 3])
    def test_vandermonde(self, r, s):
        report = verify_vandermonde(BNSetup(r, s))
        assert report.passed
        assert all(check.status == "pass" for check in report.checks)

    def test_vandermonde_needs_r2(self):
        with pytest.raises(ParameterRange):
            verify_vandermonde(BNSetup(1, 2))


class TestLoci:
    def test_needs_r2(self):
        with pytest.raises(ParameterRange):
            class_X(BNSetup(1, 2))

    def test_class_x_coefficients(self):
        setup = BNSetup(2, 2)
        terms = class_X(setup).terms
        assert terms[(0, 0, 0, (2,))] == 1
        assert terms[(0, 1, 0, (1,))] == 2
        assert terms[(1, 0, 0, (1,))] == 2 * setup.d + 2 * setup.genus - 4 == 20
        assert terms[(1, 0, 1, ())] == -6

    def test_class_y_coefficients(self):
        setup = BNSetup(2, 2)
        terms = class_Y(setup).terms
        assert terms[(0, 0, 0, (2,))] == 1
        assert terms[(0, 1, 0, (1,))] == 1
        assert terms[(1, 0, 0, (1,))] == setup.d - 1
        assert terms[(1, 0, 1, ())] == -2

    @pytest.mark.parametrize("r, s", [(2, 2), (3, 2)])
    def test_restriction_b2(self, r, s):
        setup = BNSetup(r, s)
        g, d = setup.genus, setup.d
        assert g0b_restriction(2, "Y", setup) == -4 * theta + eta
        assert g0b_restriction(2, "X", setup) == -4 * theta - (2 * g - 4) * eta - 2 * (d * eta + gamma)

    def test_restriction_arguments(self):
        setup = BNSetup(2, 2)
        assert g0b_restriction(1, "X", setup) == -c(1)
        assert g0b_restriction(1, "Y", setup) == -c(1)
        with pytest.raises(ParameterRange):
            g0b_restriction(0, "X", setup)
        with pytest.raises(ParameterRange):
            g0b_restriction(2, "Z", setup)


class TestDivisorChains:
    def test_koszul_slope_seven(self):
        assert koszul_ABB(2, 0).slope == 7

    def test_koszul_pencil_slope_eight(self):
        assert koszul_ABB(1, 1).slope == 8

    @pytest.mark.parametrize("s, i", [(1, 1), (2, 0), (2, 1), (3, 0)])
    def test_koszul_chain_matches_closed_form(self, s, i):
        coefficients = koszul_ABB(s, i)
        assert coefficients.slope == koszul_slope(s, i)
        assert coefficients.A - 12 * coefficients.B0 + coefficients.B1 == 0

    def test_koszul_arguments(self):
        with pytest.raises(ParameterRange):
            koszul_ABB(0, 1)

    @pytest.mark.slow
    @pytest.mark.parametrize("r, s", [(2, 2), (2, 3), (3, 2), (3, 3)])
    def test_gp_chain(self, r, s):
        report = gp_chain_report(r, s)
        assert report.b0_chain == report.b0_closed
        assert report.b1_chain == report.b1_closed
        assert report.agrees
        assert report.b0_chain > 0

    def test_gp_chain_range(self):
        with pytest.raises(ParameterRange):
            gp_chain_report(1, 2)
