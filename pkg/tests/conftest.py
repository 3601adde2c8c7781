"""
Shared fixtures for the slope engine tests
"""

from fractions import Fraction

import pytest
from hypothesis import strategies as st

from config import get_settings
from grassmann import GrassmannianAmbient


@pytest.fixture(autouse=True)
def clean_settings(monkeypatch):
    """Fresh settings per test, independent of the developer's environment"""
    for name in ("SLOPE_LOG_LEVEL", "SLOPE_LOG_FILE", "SLOPE_DEFAULT_GRID", "SLOPE_JOBS",
                 "SLOPE_FLOAT_DIGITS", "SLOPE_OUTPUT_VERSION"):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.setenv("SLOPE_LOG_LEVEL", "WARNING")
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def g13():
    """G(1,3), the lines in P^3"""
    return GrassmannianAmbient(1, 3)


@st.composite
def rational_matrices(draw, max_size: int = 4):
    n = draw(st.integers(min_value=1, max_value=max_size))
    entry = st.fractions(min_value=-5, max_value=5, max_denominator=6)
    return [[draw(entry) for _ in range(n)] for _ in range(n)]


@st.composite
def increasing_tuples(draw, max_size: int = 6, max_value: int = 9):
    values = draw(st.sets(st.integers(min_value=0, max_value=max_value), min_size=1, max_size=max_size))
    return tuple(sorted(values))


def as_fraction(value) -> Fraction:
    """sympy Rational -> Fraction"""
    return Fraction(str(value))
