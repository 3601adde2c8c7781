"""
Tests for exact-number serialization and the report models
"""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st
from pydantic import ValidationError

from config import EngineSettings, get_settings
from errors import ParameterRange
from models import CheckResult, CoefficientStatus, ValueRecord, VerificationReport, format_exact, parse_exact, render_float


class TestExactNumbers:
    @pytest.mark.parametrize(
        "value, text", [(7, "7/1"), (Fraction(17, 2), "17/2"), (Fraction(-13, 2), "-13/2"), (0, "0/1")]
    )
    def test_format(self, value, text):
        assert format_exact(value) == text
        assert parse_exact(text) == value

    def test_parse_integer(self):
        assert parse_exact("-37") == -37

    @pytest.mark.parametrize("text", ["1.5", "1/0", "x", ""])
    def test_parse_rejects(self, text):
        with pytest.raises(ParameterRange):
            parse_exact(text)

    @given(st.fractions(max_denominator=10**6))
    def test_parse_inverts_format(self, value):
        assert parse_exact(format_exact(value)) == value

    def test_render_float_half_even(self):
        assert render_float(Fraction(125, 1000), 2) == 0.12
        assert render_float(Fraction(135, 1000), 2) == 0.14
        assert render_float(Fraction(1, 3), 12) == 0.333333333333


class TestValueRecord:
    def test_of(self):
        record = ValueRecord.of("slope", Fraction(36, 5), digits=3)
        assert (record.exact, record.approx) == ("36/5", 7.2)
        assert record.fraction() == Fraction(36, 5)

    def test_bound_only(self):
        record = ValueRecord.of("b_2:1", None, CoefficientStatus.LOWER_BOUND_ONLY, Fraction(3, 2))
        assert record.exact is None and record.approx is None
        assert record.bound == "3/2"
        assert record.fraction() is None

    def test_rejects_decimal_strings(self):
        with pytest.raises(ValidationError):
            ValueRecord(name="slope", exact="8.5")


class TestVerificationReport:
    def test_counts(self):
        checks = [
            CheckResult(suite="s", name="a", status="pass"),
            CheckResult(suite="s", name="b", status="inconclusive"),
            CheckResult(suite="s", name="c", status="fail"),
            CheckResult(suite="s", name="d", status="informational", mandatory=False),
        ]
        report = VerificationReport.build("1.0.0", "s", "small", checks)
        assert (report.passed, report.failed, report.inconclusive, report.informational) == (1, 1, 1, 1)
        assert not report.ok

    def test_non_mandatory_failures_are_informational(self):
        checks = [CheckResult(suite="s", name="a", status="fail", mandatory=False)]
        report = VerificationReport.build("1.0.0", "s", "small", checks)
        assert report.ok
        assert report.informational == 1


class TestSettings:
    def test_defaults(self):
        settings = EngineSettings(_env_file=None, log_level="warning")
        assert settings.log_level == "WARNING"
        assert settings.jobs == 1
        assert settings.default_grid == "default"
        assert settings.output_version == "1.0.0"

    def test_environment(self, monkeypatch):
        monkeypatch.setenv("SLOPE_JOBS", "4")
        monkeypatch.setenv("SLOPE_DEFAULT_GRID", "large")
        settings = get_settings()
        assert (settings.jobs, settings.default_grid) == (4, "large")
        assert get_settings() is settings

    @pytest.mark.parametrize("name, value", [("SLOPE_LOG_LEVEL", "LOUD"), ("SLOPE_FLOAT_DIGITS", "31"), ("SLOPE_DEFAULT_GRID", "huge")])
    def test_invalid(self, monkeypatch, name, value):
        monkeypatch.setenv(name, value)
        with pytest.raises(ValidationError):
            EngineSettings(_env_file=None)
