"""
End-to-end tests for the slope, table and verify sub-commands
"""

import csv
import io
import json

import pytest

import main
from commands.slope import evaluate_point
from commands.table import parse_range, parse_ranges
from errors import ParameterRange
from models import ErrorResponse, OutputRecord, TableEnvelope, VerificationReport


def run_cli(capsys, *argv):
    code = main.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def error_response(stderr: str) -> ErrorResponse:
    line = next(line for line in stderr.splitlines() if line.startswith("{"))
    return ErrorResponse.model_validate_json(line)


def csv_rows(text: str):
    lines = [line for line in text.splitlines() if not line.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(lines))))


class TestSlopeCommand:
    def test_koszul_json(self, capsys):
        code, out, _ = run_cli(capsys, "slope", "koszul", "--s", "2", "--i", "0", "--format", "json")
        assert code == 0
        record = OutputRecord.model_validate_json(out)
        assert record.value("slope").exact == "7/1"
        assert record.value("slope").approx == 7.0
        assert record.parameters == {"s": 2, "i": 0, "g": 10, "r": 4, "d": 12}
        assert record.flags == {"bound_ok": True, "rank_identity": True}

    @pytest.mark.parametrize(
        "argv, expected",
        [
            (("gp", "--r", "1", "--s", "2"), "17/2"),
            (("koszul", "--s", "1", "--i", "3"), "36/5"),
            (("khosla", "--s", "2"), "7/1"),
        ],
    )
    def test_headline_slopes(self, capsys, argv, expected):
        code, out, _ = run_cli(capsys, "slope", *argv, "--format", "json")
        assert code == 0
        assert OutputRecord.model_validate_json(out).value("slope").exact == expected

    def test_pointed_family(self, capsys):
        code, out, _ = run_cli(capsys, "slope", "wahl", "--g", "5", "--format", "json")
        assert code == 0
        record = OutputRecord.model_validate_json(out)
        assert record.parameters["n"] == 12
        assert record.value("lambda").exact == "-6/1"
        assert record.value("delta_irr").exact == "-1/1"

    def test_lower_bound_rendering(self, capsys):
        code, out, _ = run_cli(capsys, "slope", "lin", "--r", "2", "--s", "2", "--format", "json")
        assert code == 0
        record = OutputRecord.model_validate_json(out)
        bounded = [v for v in record.values if v.status.value == "lower_bound_only"]
        assert bounded
        assert all(v.exact is None and v.bound is not None for v in bounded)
        assert record.parameters["N"] == 5
        assert record.flags == {"bn_w": True, "pointed2": True}

    def test_text_format(self, capsys):
        code, out, _ = run_cli(capsys, "slope", "koszul", "--s", "2", "--i", "0")
        assert code == 0
        assert out.startswith("koszul s=2 i=0")
        assert "7/1" in out
        assert "bound_ok=true" in out

    def test_digits(self, capsys):
        code, out, _ = run_cli(capsys, "slope", "koszul", "--s", "2", "--i", "1", "--format", "json", "--digits", "3")
        assert code == 0
        value = OutputRecord.model_validate_json(out).value("slope")
        assert value.exact == "407/61"
        assert value.approx == 6.67

    @pytest.mark.parametrize(
        "argv, error_code",
        [
            (("koszul", "--s", "2"), "PARAMETER_RANGE"),
            (("koszul", "--s", "2", "--i", "0", "--r", "1"), "PARAMETER_RANGE"),
            (("gp", "--r", "1", "--s", "1"), "DEGENERATE_DENOMINATOR"),
            (("nfold", "--g", "4", "--n", "1"), "NON_INTEGRAL_D"),
            (("wahl", "--g", "3"), "NON_INTEGRAL_N"),
            (("koszul", "--s", "2", "--i", "0", "--digits", "0"), "PARAMETER_RANGE"),
        ],
    )
    def test_parameter_errors(self, capsys, argv, error_code):
        code, out, err = run_cli(capsys, "slope", *argv)
        assert code == 2
        assert out == ""
        response = error_response(err)
        assert response.success is False
        assert response.error_code == error_code

    def test_unknown_family(self, capsys):
        code, _, _ = run_cli(capsys, "slope", "unknown", "--s", "2")
        assert code == 2


class TestTableCommand:
    def test_parse_range(self):
        assert parse_range("s=2..4") == ("s", range(2, 5))
        assert parse_range(" i = 3 ") == ("i", range(3, 4))
        assert parse_range("r=3..1") == ("r", range(3, 2))
        with pytest.raises(ParameterRange):
            parse_range("s:2")

    @pytest.mark.parametrize(
        "texts",
        [["s=2..3"], ["s=2", "i=0", "s=3"], ["s=2", "i=0", "r=1"]],
    )
    def test_parse_ranges_rejects(self, texts):
        with pytest.raises(ParameterRange):
            parse_ranges("koszul", texts)

    def test_koszul_grid(self, capsys):
        code, out, _ = run_cli(capsys, "table", "koszul", "--range", "s=2..4", "--range", "i=0..2")
        assert code == 0
        rows = csv_rows(out)
        assert len(rows) == 9
        assert [(row["s"], row["i"]) for row in rows] == [(str(s), str(i)) for s in range(2, 5) for i in range(3)]
        assert all(row["bound_ok"] == "true" for row in rows)
        assert all(row["error"] == "" for row in rows)

    def test_empty_range(self, capsys):
        code, out, _ = run_cli(capsys, "table", "gp", "--range", "r=3..1", "--range", "s=2")
        assert code == 0
        lines = out.splitlines()
        assert len(lines) == 1
        assert next(csv.reader(lines))[:4] == ["r", "s", "g", "d"]

    def test_gp_grid(self, capsys):
        code, out, _ = run_cli(capsys, "table", "gp", "--range", "r=1..3", "--range", "s=2..3")
        assert code == 0
        rows = csv_rows(out)
        assert len(rows) == 6
        assert all(row["slope_ge_bound"] == "true" and row["slope_identity"] == "true" for row in rows)
        assert rows[0]["slope"] == "17/2"

    def test_errors_become_rows(self, capsys):
        code, out, err = run_cli(capsys, "table", "wahl", "--range", "g=1..5", "--format", "json")
        assert code == 0
        envelope = TableEnvelope.model_validate_json(out)
        assert envelope.family == "wahl"
        assert envelope.version == "1.0.0"
        failed = {r.parameters["g"]: r.error for r in envelope.records if r.error}
        assert set(failed) == {3, 4}
        assert all(message.startswith("NON_INTEGRAL_N") for message in failed.values())
        assert "2 of 5 points were rejected" in err

    def test_version_comment(self, capsys):
        code, out, _ = run_cli(capsys, "table", "syz", "--range", "g=6", "--range", "i=0", "--version-comment")
        assert code == 0
        assert out.splitlines()[0] == "# slope-engine 1.0.0"
        assert csv_rows(out)[0]["n"] == "10"

    def test_parallel_output_is_identical(self, capsys, tmp_path):
        single, double = tmp_path / "one.csv", tmp_path / "two.csv"
        grid = ("--range", "r=1..3", "--range", "s=2..4")
        assert run_cli(capsys, "table", "gp", *grid, "--jobs", "1", "--out", str(single))[0] == 0
        assert run_cli(capsys, "table", "gp", *grid, "--jobs", "2", "--out", str(double))[0] == 0
        assert single.read_bytes() == double.read_bytes()
        assert len(csv_rows(single.read_text())) == 9

    def test_bad_jobs(self, capsys):
        code, _, err = run_cli(capsys, "table", "gp", "--range", "r=1", "--range", "s=2", "--jobs", "0")
        assert code == 2
        assert error_response(err).error_code == "PARAMETER_RANGE"

    def test_missing_range(self, capsys):
        code, _, err = run_cli(capsys, "table", "gp", "--range", "r=1")
        assert code == 2
        assert error_response(err).details["missing"] == ["s"]

    def test_worker_records_errors(self):
        record = evaluate_point("gp", {"r": 1, "s": 1})
        assert record.values == []
        assert record.error.startswith("DEGENERATE_DENOMINATOR")


class TestVerifyCommand:
    @pytest.mark.parametrize("suite", ["vectors", "khosla"])
    def test_small_suites_pass(self, capsys, suite):
        code, out, _ = run_cli(capsys, "verify", suite, "--grid", "small")
        assert code == 0
        summary = json.loads(out.splitlines()[-1])
        assert summary["suite"] == suite
        assert summary["failed"] == 0
        assert summary["passed"] > 0

    def test_json_report(self, capsys, tmp_path):
        target = tmp_path / "report.json"
        code, _, _ = run_cli(capsys, "verify", "vectors", "--grid", "small", "--json", str(target))
        assert code == 0
        report = VerificationReport.model_validate_json(target.read_text())
        assert report.ok
        assert {check.suite for check in report.checks} == {"vectors"}
        assert any(check.name == "mrc_M4_16_pullback" for check in report.checks)

    def test_informational_checks_do_not_fail(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "khosla", "--grid", "small")
        assert code == 0
        assert "INFORMATIONAL" in out or "PASS" in out

    def test_unknown_grid(self, capsys):
        code, _, _ = run_cli(capsys, "verify", "vectors", "--grid", "huge")
        assert code == 2


class TestConfiguration:
    def test_invalid_environment(self, capsys, monkeypatch):
        monkeypatch.setenv("SLOPE_JOBS", "0")
        code, _, err = run_cli(capsys, "slope", "koszul", "--s", "2", "--i", "0")
        assert code == 2
        assert error_response(err).error_code == "CONFIGURATION"

    def test_float_digits_from_environment(self, capsys, monkeypatch):
        monkeypatch.setenv("SLOPE_FLOAT_DIGITS", "2")
        code, out, _ = run_cli(capsys, "slope", "koszul", "--s", "2", "--i", "1", "--format", "json")
        assert code == 0
        assert OutputRecord.model_validate_json(out).value("slope").approx == 6.7

    def test_default_grid_from_environment(self, capsys, monkeypatch):
        monkeypatch.setenv("SLOPE_DEFAULT_GRID", "small")
        code, out, _ = run_cli(capsys, "verify", "vectors")
        assert code == 0
        assert json.loads(out.splitlines()[-1])["grid"] == "small"
