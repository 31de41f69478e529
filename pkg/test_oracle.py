#!/usr/bin/env python3
"""
Tests for the verification suites and their reports.
"""

from dataclasses import replace
from fractions import Fraction

import hypothesis as hyp
import pytest
from hypothesis import strategies as st

from src.cf_core import ContinuedFraction, eval_cf, simplest_between, simplest_between_by_cf
from src.config import Settings
from src.errors import DomainError, ResourceLimitError, UsageError
from src.oracle import (
    SUITES,
    CheckReport,
    Failure,
    brute_simplest,
    count_upto,
    enumerate_strings,
    farey,
    get_suite,
    random_cf_pair,
    run_suite,
)
from src.output_generator import OutputGenerator
from src.string_core import EMPTY, parse_string

SMALL = replace(Settings(), random_pairs=40, pair_depth=4)


def test_table1_suite():
    """Test the parent position table suite at its full depth."""
    report = run_suite("table1", 22)
    assert report.passed
    assert report.cases_checked == 22
    assert "22 cases, 0 failures [PASS]" in report.to_text()


def test_thm21_base_case():
    """Test that depth 0 checks the root alone."""
    report = run_suite("thm21", 0)
    assert report.passed
    assert report.cases_checked == 1


@pytest.mark.parametrize(
    "name, depth",
    [
        ("thm21", 6),
        ("thm22", 7),
        ("cor23", 6),
        ("thm31", 6),
        ("best_approx", 6),
        ("stern_brocot", 7),
        ("simplest", 12),
        ("figures", 3),
    ],
)
def test_suites_pass_at_small_depth(name, depth):
    """Test every suite at a depth that runs in well under a second."""
    report = run_suite(name, depth, SMALL)
    assert report.passed, report.to_text()
    assert report.cases_checked > 0
    assert report.depth == depth


@pytest.mark.parametrize("name", sorted(SUITES))
def test_every_suite_checks_something_at_depth_zero(name):
    """Test that depth 0 is never an empty pass, even without random pairs."""
    report = run_suite(name, 0, replace(Settings(), random_pairs=0))
    assert report.passed, report.to_text()
    assert report.cases_checked > 0


def test_thm22_case_count():
    """Test one case per string plus the children walk."""
    report = run_suite("thm22", 5)
    assert report.cases_checked == count_upto(5) + 1


def test_best_approx_reports_distance_findings():
    """Test that 4/5 is reported: its two nearest lower-level values are 3/4 and 2/3."""
    report = run_suite("best_approx", 4)
    assert report.passed
    assert any(finding.startswith("[0,1,4] = 4/5") for finding in report.findings)


def test_parallel_matches_sequential():
    """Test that the worker count does not change the report."""
    sequential = run_suite("thm22", 6, jobs=1)
    parallel = run_suite("thm22", 6, jobs=2)
    assert parallel.cases_checked == sequential.cases_checked
    assert parallel.failures == sequential.failures
    assert parallel.findings == sequential.findings


def test_run_suite_errors():
    """Test unknown suites, negative depths and depths over the bound."""
    with pytest.raises(UsageError):
        run_suite("thm99")
    with pytest.raises(UsageError):
        get_suite("all")
    with pytest.raises(DomainError):
        run_suite("thm21", -1)
    with pytest.raises(ResourceLimitError):
        run_suite("thm21", 25)
    with pytest.raises(ResourceLimitError):
        run_suite("simplest", 50, replace(Settings(), max_denominator=40))


def test_default_depths_cover_every_suite():
    """Test that every registered suite has a default depth and a time target."""
    settings = Settings()
    for name in SUITES:
        assert settings.depth_for(name) >= 0
        assert name in settings.target_seconds


def test_report_merge_and_serialization():
    """Test report concatenation and the JSON layout."""
    empty = CheckReport("x", 2)
    a = CheckReport("x", 2, 3, [Failure("i", "1", "2")], ["note"], 0.5)
    b = CheckReport("x", 2, 4, [], [], 0.25)
    merged = a.merge(b)
    assert merged.cases_checked == 7
    assert merged.failures == a.failures
    assert not merged.passed
    assert empty.merge(a).to_dict() == a.to_dict()
    assert a.merge(b).merge(a).to_dict() == a.merge(b.merge(a)).to_dict()

    data = merged.to_dict()
    assert set(data) == {"suite", "depth", "cases", "passed", "failures", "findings", "elapsed_seconds"}
    assert data["failures"] == [{"input": "i", "expected": "1", "actual": "2"}]
    text = merged.to_text()
    assert "[FAIL]" in text
    assert "FAIL i: expected 1, got 2" in text
    assert "note: note" in text


def test_enumerate_strings():
    """Test enumeration order and bounds."""
    assert list(enumerate_strings(0)) == [EMPTY]
    assert list(enumerate_strings(1)) == [EMPTY, parse_string("L"), parse_string("R")]
    assert len(list(enumerate_strings(5))) == count_upto(5) == 63
    with pytest.raises(ResourceLimitError):
        list(enumerate_strings(4, bound=3))


def test_farey_and_brute_force():
    """Test the reference generators used by the simplest suite."""
    assert farey(3) == [(0, 1), (1, 3), (1, 2), (2, 3), (1, 1)]
    assert len(farey(5)) == 11
    assert brute_simplest(7, 5, 3, 2) == Fraction(10, 7)
    assert brute_simplest(1, 3, 2, 3) == Fraction(1, 2)


def test_random_cf_pair_is_deterministic():
    """Test that the seeded pairs repeat and differ from each other."""
    assert random_cf_pair(7, 3) == random_cf_pair(7, 3)
    qx, qy = random_cf_pair(7, 3)
    assert qx != qy


@hyp.given(st.integers(min_value=0, max_value=10 ** 6), st.integers(min_value=0, max_value=500))
def test_random_pairs_satisfy_common_prefix_rule(seed, index):
    qx, qy = random_cf_pair(seed, index)
    x, y = sorted((eval_cf(ContinuedFraction(qx)), eval_cf(ContinuedFraction(qy))))
    assert simplest_between_by_cf(x, y) == simplest_between(x, y)


def test_output_generator(tmp_path):
    """Test the verification document, its summary and the CSV exports."""
    reports = [
        run_suite("figures", 3),
        CheckReport("table1", 22, 22, [Failure("a(1)", "-1", "0")], [], 0.1),
    ]
    generator = OutputGenerator()
    output = generator.generate_output(reports, Settings())
    summary = output["summary_statistics"]
    assert summary["total_suites"] == 2
    assert summary["passed_suites"] == 1
    assert summary["total_failures"] == 1
    assert summary["all_passed"] is False
    assert summary["per_suite"] == {"figures": True, "table1": False}

    text = generator.generate_summary_report(output)
    assert "KINSHIP VERIFICATION SUMMARY" in text
    assert "Suites passed: 1/2" in text

    summary_csv, failures_csv = generator.export_to_csv(output, str(tmp_path / "run"))
    assert summary_csv.endswith("run_summary.csv")
    assert "a(1)" in open(failures_csv).read()

    with pytest.raises(ValueError):
        generator._validate_output({"metadata": {}})
