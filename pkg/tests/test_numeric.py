"""
Tests for the exact numeric kernel
"""

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings

from conftest import as_fraction, increasing_tuples, rational_matrices
from errors import NonSquare, SingularSystem
from numeric import (
    binomial,
    determinant,
    determinant_bareiss,
    factorial,
    inv_factorial_or_zero,
    isqrt_exact,
    solve_linear,
    vandermonde_reciprocal,
)


class TestFactorials:
    @pytest.mark.parametrize("n, expected", [(0, 1), (5, 120), (20, 2432902008176640000)])
    def test_factorial(self, n, expected):
        assert factorial(n) == expected

    def test_factorial_memo_agrees_with_product(self):
        value = 1
        for k in range(1, 60):
            value *= k
            assert factorial(k) == value

    @pytest.mark.parametrize("n, expected", [(3, Fraction(1, 6)), (-1, Fraction(0)), (0, Fraction(1))])
    def test_inverse_factorial(self, n, expected):
        assert inv_factorial_or_zero(n) == expected

    def test_binomial_outside_range_is_zero(self):
        assert binomial(5, 2) == 10
        assert binomial(3, 5) == 0
        assert binomial(4, -1) == 0
        assert binomial(-1, 0) == 0


class TestDeterminant:
    def test_identity(self):
        assert determinant([[1, 0], [0, 1]]) == 1

    def test_two_by_two(self):
        m = [[Fraction(1, 2), Fraction(1, 3)], [Fraction(1, 4), Fraction(1, 5)]]
        assert determinant(m) == Fraction(1, 60)
        assert determinant_bareiss(m) == Fraction(1, 60)

    def test_non_square(self):
        with pytest.raises(NonSquare):
            determinant([[1, 2, 3], [4, 5, 6]])
        with pytest.raises(NonSquare):
            determinant_bareiss([[1, 2, 3], [4, 5, 6]])

    def test_zero_pivot_needs_a_swap(self):
        assert determinant([[0, 1], [1, 0]]) == -1
        assert determinant_bareiss([[0, 1], [1, 0]]) == -1

    @settings(max_examples=60, deadline=None)
    @given(rational_matrices())
    def test_methods_agree_with_sympy(self, m):
        oracle = as_fraction(sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in m]).det())
        assert determinant(m) == oracle
        assert determinant_bareiss(m) == oracle


class TestVandermonde:
    @staticmethod
    def reciprocal_matrix(a):
        n = len(a)
        return [[inv_factorial_or_zero(x + l) for l in range(n)] for x in a]

    def test_pair(self):
        assert determinant(self.reciprocal_matrix((0, 1))) == Fraction(-1, 2)
        assert vandermonde_reciprocal((0, 1)) == Fraction(-1, 2)

    def test_triple(self):
        assert vandermonde_reciprocal((0, 1, 2)) == Fraction(-1, 144)
        assert determinant(self.reciprocal_matrix((0, 1, 2))) == Fraction(-1, 144)

    @settings(max_examples=80, deadline=None)
    @given(increasing_tuples())
    def test_closed_form(self, a):
        assert determinant(self.reciprocal_matrix(a)) == vandermonde_reciprocal(a)


class TestSolve:
    def test_solve(self):
        assert solve_linear([[2, 1], [1, 3]], [3, 5]) == [Fraction(4, 5), Fraction(7, 5)]

    def test_singular(self):
        with pytest.raises(SingularSystem):
            solve_linear([[1, 2], [2, 4]], [1, 2])

    def test_isqrt_exact(self):
        assert isqrt_exact(49) == 7
        assert isqrt_exact(50) is None
        assert isqrt_exact(-1) is None
