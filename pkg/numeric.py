"""
Exact Numeric Kernel
Factorials, binomials, exact determinants and linear solves over Fraction.

The factorial memo is process-local and guarded by a lock, so threads may share
it; worker processes each build their own copy.
"""

import logging
import threading
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, lcm, prod
from typing import List, Optional, Sequence, Tuple, Union

from errors import NonSquare, ParameterRange, SingularSystem

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]

_factorials: List[int] = [1]
_factorial_lock = threading.Lock()


# Factorials and binomials
def factorial(n: int) -> int:
    """n! from a memo table that grows on demand"""
    if n < 0:
        raise ParameterRange(f"factorial of negative integer {n}", {"n": n})
    if n < len(_factorials):
        return _factorials[n]
    with _factorial_lock:
        value = _factorials[-1]
        for k in range(len(_factorials), n + 1):
            value *= k
            _factorials.append(value)
        return _factorials[n]


def inv_factorial_or_zero(n: int) -> Fraction:
    """1/n! for n >= 0 and 0 for negative n (reciprocal factorial convention)"""
    if n < 0:
        return Fraction(0)
    return Fraction(1, factorial(n))


def binomial(n: int, k: int) -> int:
    """C(n, k) with the value 0 outside 0 <= k <= n"""
    if k < 0 or n < 0 or k > n:
        return 0
    return factorial(n) // (factorial(k) * factorial(n - k))


def isqrt_exact(n: int) -> Optional[int]:
    """Integer square root of a perfect square, else None"""
    if n < 0:
        return None
    root = isqrt(n)
    return root if root * root == n else None


# Matrices
@dataclass(frozen=True)
class RationalMatrix:
    """Row-major matrix of exact rationals"""
    rows: int
    cols: int
    entries: Tuple[Tuple[Fraction, ...], ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]]) -> "RationalMatrix":
        data = tuple(tuple(Fraction(x) for x in row) for row in rows)
        width = len(data[0]) if data else 0
        if any(len(row) != width for row in data):
            raise ParameterRange("ragged matrix rows", {"widths": [len(row) for row in data]})
        return cls(rows=len(data), cols=width, entries=data)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def to_lists(self) -> List[List[Fraction]]:
        return [list(row) for row in self.entries]


MatrixLike = Union[RationalMatrix, Sequence[Sequence[Scalar]]]


def _as_matrix(m: MatrixLike) -> RationalMatrix:
    return m if isinstance(m, RationalMatrix) else RationalMatrix.from_rows(m)


def determinant(m: MatrixLike) -> Fraction:
    """Exact determinant by Gaussian elimination with rational pivots"""
    matrix = _as_matrix(m)
    if not matrix.is_square():
        raise NonSquare(f"determinant of a {matrix.rows}x{matrix.cols} matrix")
    a = matrix.to_lists()
    n = matrix.rows
    det = Fraction(1)
    for col in range(n):
        pivot_row = next((row for row in range(col, n) if a[row][col] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != col:
            a[col], a[pivot_row] = a[pivot_row], a[col]
            det = -det
        pivot = a[col][col]
        det *= pivot
        for row in range(col + 1, n):
            factor = a[row][col] / pivot
            if factor == 0:
                continue
            for c in range(col, n):
                a[row][c] -= factor * a[col][c]
    return det


def determinant_bareiss(m: MatrixLike) -> Fraction:
    """Exact determinant by fraction-free Bareiss elimination on a common-denominator copy"""
    matrix = _as_matrix(m)
    if not matrix.is_square():
        raise NonSquare(f"determinant of a {matrix.rows}x{matrix.cols} matrix")
    n = matrix.rows
    if n == 0:
        return Fraction(1)
    # Clear denominators row by row so Bareiss runs over the integers
    scale = Fraction(1)
    a: List[List[int]] = []
    for row in matrix.entries:
        denominator = lcm(*(x.denominator for x in row))
        a.append([int(x * denominator) for x in row])
        scale /= denominator
    sign = 1
    previous = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((row for row in range(k + 1, n) if a[row][k] != 0), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // previous
        previous = a[k][k]
    return sign * a[n - 1][n - 1] * scale


def solve_linear(m: MatrixLike, rhs: Sequence[Scalar]) -> List[Fraction]:
    """Solve m·x = rhs exactly for a nonsingular square m"""
    matrix = _as_matrix(m)
    if not matrix.is_square():
        raise NonSquare(f"linear system with a {matrix.rows}x{matrix.cols} matrix")
    if len(rhs) != matrix.rows:
        raise ParameterRange("right-hand side length differs from the row count")
    n = matrix.rows
    a = [row + [Fraction(b)] for row, b in zip(matrix.to_lists(), rhs)]
    for col in range(n):
        pivot_row = next((row for row in range(col, n) if a[row][col] != 0), None)
        if pivot_row is None:
            raise SingularSystem(f"no pivot in column {col}", {"column": col})
        a[col], a[pivot_row] = a[pivot_row], a[col]
        pivot = a[col][col]
        for row in range(n):
            if row == col or a[row][col] == 0:
                continue
            factor = a[row][col] / pivot
            for c in range(col, n + 1):
                a[row][c] -= factor * a[col][c]
    return [a[i][n] / a[i][i] for i in range(n)]


def vandermonde_reciprocal(a: Sequence[int]) -> Fraction:
    """Closed form of det(1/(a_j+l-1)!) for an increasing tuple a of length n"""
    n = len(a)
    numerator = prod(a[l] - a[j] for j in range(n) for l in range(j))
    denominator = prod(factorial(x + n - 1) for x in a)
    return Fraction(numerator, denominator)
