"""Tests for Pydantic models."""

import pytest
from pydantic import ValidationError

from spectral_reduction.exceptions import ConfigError
from spectral_reduction.models import CheckRecord, ReportDoc, RunConfig


def _report(*statuses):
    return ReportDoc(
        tool_version="0.1.0",
        records=[
            CheckRecord(id=f"N2n1/c:{i}", anchor="a", status=status)
            for i, status in enumerate(statuses)
        ],
    )


class TestRunConfig:
    """Tests for RunConfig."""

    def test_defaults(self):
        """Test default ranges and flags."""
        config = RunConfig(suite="ybe")
        assert config.N == [2]
        assert config.n == [1]
        assert config.samples == 100
        assert config.timings is True
        assert config.checks == []

    def test_samples_positive(self):
        """Test that the sample count must be positive."""
        with pytest.raises(ValidationError):
            RunConfig(suite="classical", samples=0)

    def test_invalid_suite(self):
        """Test that unknown suites are rejected."""
        with pytest.raises(ValidationError):
            RunConfig(suite="everything")

    def test_empty_range(self):
        """Test that empty or non-positive ranges are rejected."""
        with pytest.raises(ValidationError):
            RunConfig(suite="ybe", N=[])
        with pytest.raises(ValidationError):
            RunConfig(suite="ybe", n=[0])

    def test_quantum_limits(self):
        """Test that quantum suites refuse N > 4."""
        with pytest.raises(ConfigError):
            RunConfig(suite="quantum-core", N=[2, 5]).check_limits()
        RunConfig(suite="classical", N=[5], n=[6]).check_limits()

    def test_minimum_size(self):
        """Test that N = 1 is refused for every suite."""
        with pytest.raises(ConfigError):
            RunConfig(suite="geometry", N=[1]).check_limits()


class TestReportDoc:
    """Tests for ReportDoc."""

    def test_summary_counts(self):
        """Test status counts in the summary."""
        report = _report("pass", "member", "member", "fail")
        assert report.summary == {"fail": 1, "member": 2, "pass": 1}

    def test_exit_code_success(self):
        """Test that pass and member records succeed."""
        assert _report("pass", "member").exit_code() == 0

    def test_exit_code_inconclusive(self):
        """Test that inconclusive fails unless allowed."""
        report = _report("member", "inconclusive")
        assert report.exit_code() == 1
        assert report.exit_code(allow_inconclusive=True) == 0

    def test_exit_code_fail(self):
        """Test that fail and error records always fail."""
        assert _report("fail").exit_code(allow_inconclusive=True) == 1
        assert _report("error").exit_code(allow_inconclusive=True) == 1

    def test_sort_and_json(self):
        """Test sorting by id and that the summary is serialized."""
        report = ReportDoc(
            tool_version="0.1.0",
            records=[
                CheckRecord(id="b", anchor="", status="pass"),
                CheckRecord(id="a", anchor="", status="pass"),
            ],
        )
        report.sort()
        assert [r.id for r in report.records] == ["a", "b"]
        assert '"summary"' in report.to_json()
