"""Tests for the command line and suite runner."""

import argparse
import json
from fractions import Fraction

import pytest

from spectral_reduction.cli.main import build_parser, config_from_args, main, parse_range
from spectral_reduction.cli.suites import (
    CHECK_SUITE,
    SUITE_CHECKS,
    _differentials_finite,
    operator_identities,
    run_suite,
)
from spectral_reduction.config import get_settings, scoped_settings
from spectral_reduction.exceptions import BranchPointError
from spectral_reduction.geometry.curve import CurveData
from spectral_reduction.models import RunConfig
from spectral_reduction.noncommutative.membership import MembershipChecker
from spectral_reduction.noncommutative.serialization import certificate_doc, write_certificate


class TestParsing:
    """Tests for argument parsing."""

    def test_parse_range(self):
        """Ranges, lists and single values."""
        assert parse_range("2..4") == [2, 3, 4]
        assert parse_range("2,3") == [2, 3]
        assert parse_range("5") == [5]

    def test_parse_range_invalid(self):
        """Non-numeric ranges are argument errors."""
        with pytest.raises(argparse.ArgumentTypeError):
            parse_range("a..b")

    def test_unknown_suite(self):
        """Unknown suite names exit with a usage error."""
        with pytest.raises(SystemExit):
            build_parser().parse_args(["run", "bogus"])

    def test_config_file_and_flags(self, tmp_path):
        """Flags override values from the config file."""
        path = tmp_path / "run.json"
        path.write_text(json.dumps({"seed": 1, "samples": 2}))
        args = build_parser().parse_args(["run", "classical", "--config", str(path), "--seed", "3"])
        config = config_from_args(args, "classical")
        assert config.seed == 3
        assert config.samples == 2

    def test_check_names_are_unique(self):
        """Every check belongs to exactly one suite."""
        assert len(CHECK_SUITE) == sum(len(checks) for checks in SUITE_CHECKS.values())


class TestGeometryCommand:
    """Tests for the geometry subcommand."""

    def test_genus(self, capsys):
        """Genus of N=2, n=3."""
        assert main(["geometry", "genus", "--N", "2", "--n", "3"]) == 0
        assert json.loads(capsys.readouterr().out) == {"N": 2, "n": 3, "genus": 2}

    def test_index_map(self, capsys):
        """Index map of N=2, n=3."""
        assert main(["geometry", "index-map", "--N", "2", "--n", "3"]) == 0
        assert json.loads(capsys.readouterr().out)["index_map"] == [[1, 1], [1, 2]]

    def test_divisor_det_needs_points(self):
        """divisor-det without a points file is a usage error."""
        assert main(["geometry", "divisor-det"]) == 2


class TestRunSuite:
    """Tests for suite execution."""

    def test_classical_dims(self):
        """Dimension identities pass for every size in the grid."""
        report = run_suite(RunConfig(suite="classical", checks=["dims"], N=[2, 3, 4, 5, 6], n=[1, 2, 3]))
        assert len(report.records) == 15
        assert report.summary == {"pass": 15}
        assert report.exit_code() == 0

    def test_records_sorted(self):
        """Records come out sorted by id."""
        report = run_suite(RunConfig(suite="classical", checks=["dims"], N=[3, 2], n=[2, 1]))
        ids = [r.id for r in report.records]
        assert ids == sorted(ids)

    def test_geometry_index_map(self):
        """Only the requested geometry check is recorded."""
        report = run_suite(RunConfig(suite="geometry", checks=["index-map"], N=[2], n=[3]))
        assert [r.id for r in report.records] == ["N2n3/index-map"]
        assert report.records[0].status == "pass"

    def test_geometry_divisor_det_exact(self):
        """The alternation check runs on an exact rational divisor."""
        report = run_suite(RunConfig(suite="geometry", checks=["divisor-det"], N=[3], n=[2]))
        (record,) = report.records
        assert record.id == "N3n2/divisor-det"
        assert record.status == "pass"
        assert record.detail.startswith("det = ")
        assert "j" not in record.detail

    def test_differentials_resample_branch_points(self):
        """A branch point candidate is skipped; all-branch candidates are an error."""
        # w^2 = (z - 2)^2: |d_w r| is 1 over the first candidate and about 2.24 over the second
        curve = CurveData(
            N=2,
            n=3,
            t=((Fraction(1),), (Fraction(0),), (Fraction(-4), Fraction(4), Fraction(-1))),
            index_table=((1, 1), (1, 2)),
        )
        with scoped_settings(float_tolerance=1.5):
            ok, detail = _differentials_finite(curve)
        assert ok
        assert len(detail.split(", ")) == 2
        with scoped_settings(float_tolerance=100.0), pytest.raises(BranchPointError):
            _differentials_finite(curve)

    def test_run_flags_stay_in_the_run(self):
        """Budgets given to one run leave the process settings untouched."""
        before = get_settings()
        run_suite(RunConfig(suite="classical", checks=["dims"], N=[2], n=[1], max_monomials=123))
        assert get_settings() is before
        assert get_settings().max_monomials != 123

    def test_ybe_selected_checks(self):
        """Hecke and projector checks for N = 2, 3."""
        report = run_suite(RunConfig(suite="ybe", checks=["hecke", "projector"], N=[2, 3], timings=False))
        assert report.summary == {"pass": 4}
        assert all(r.wall_time == 0.0 for r in report.records)

    def test_operator_identities(self):
        """Exchange identities hold numerically."""
        assert operator_identities(0.3, 2)

    def test_quantum_limit(self):
        """Quantum suites refuse N = 5 with exit code 2."""
        assert main(["run", "quantum-core", "--N", "5"]) == 2

    def test_run_writes_report(self, tmp_path):
        """The report lands in the output file."""
        output = tmp_path / "out" / "report.json"
        args = ["run", "classical", "--N", "2", "--n", "1..2", "--no-timings", "--samples", "5"]
        code = main([*args, "--output", str(output)])
        # table, reduce and bridge checks run too; only the file is asserted here
        assert code in (0, 1)
        data = json.loads(output.read_text())
        assert data["config"]["suite"] == "classical"
        assert any(r["id"] == "N2n1/dims" for r in data["records"])


class TestReplayCommand:
    """Tests for certificate replay from the command line."""

    def test_replay_member(self, commuting_pair, tmp_path, capsys):
        """A written certificate replays with status pass."""
        _, x, y, rels = commuting_pair
        result = MembershipChecker(rels).check_scalar((x * y - y * x) * y)
        path = write_certificate(certificate_doc("cli:member", result.certificate, rels), tmp_path / "c.json")
        assert main(["replay", str(path)]) == 0
        assert json.loads(capsys.readouterr().out)["status"] == "pass"

    def test_replay_missing(self, tmp_path):
        """Missing certificate files are errors."""
        assert main(["replay", str(tmp_path / "absent.json")]) == 2
