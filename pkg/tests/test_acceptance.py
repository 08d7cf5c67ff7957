"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest -s tests/test_acceptance.py`` to see the lines.
"""

import subprocess
import sys

import pytest

from steiner_moduli import acceptance
from steiner_moduli.tangweights import calibrated_convention


@pytest.fixture(scope="module")
def conv():
    return calibrated_convention()


def report(result):
    print(result.line())
    for w in result.warnings:
        print(f"warning: {w}")
    assert result.ok, result.detail


@pytest.mark.parametrize("n", [3, 5, 7, 9])
def test_criterion_1_reference_rows(conv, n):
    report(acceptance.check_golden_row(n, conv))


def test_criterion_2_euler_triangle(conv):
    report(acceptance.check_euler_triangle(conv))


def test_criterion_3_duality_positivity(conv):
    report(acceptance.check_duality(conv))


def test_criterion_4_unique_minimal_point(conv):
    report(acceptance.check_unique_minimal(conv))


def test_criterion_5_stability_suite():
    report(acceptance.check_stability_suite())


def test_criterion_6_property_suites():
    report(acceptance.check_properties())


def test_criterion_7_discrepancy_report(conv):
    report(acceptance.check_discrepancy_report(conv))


def _selftest(jobs, cache):
    proc = subprocess.run([sys.executable, "-m", "steiner_moduli", "selftest", "--jobs", str(jobs),
                           "--cache-dir", str(cache)], capture_output=True, timeout=900)
    return proc.returncode, proc.stdout


def test_criterion_8_determinism(tmp_path):
    code1, out1 = _selftest(1, tmp_path / "a")
    code8, out8 = _selftest(8, tmp_path / "b")
    ok = out1 == out8 and code1 == code8
    print(f"{'PASS' if ok else 'FAIL'} criterion 8 (selftest byte-identical at --jobs 1 and 8)")
    assert ok
