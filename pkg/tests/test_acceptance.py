"""Acceptance gate: one test and one printed PASS/FAIL line per criterion.

The criteria themselves live in funalg.acceptance; they are run once per
session and the results shared across the per-criterion tests below.
"""

import pytest

from funalg.acceptance import CRITERIA, check_13_cli, run_all


@pytest.fixture(scope="session")
def results():
    return run_all()


def _report(n, name, ok, detail):
    status = "PASS" if ok else "FAIL"
    line = f"criterion {n:2d} {status} {name}: {detail}"
    print(line)
    assert ok, line


@pytest.mark.parametrize("idx", range(len(CRITERIA)),
                         ids=[name for name, _ in CRITERIA])
def test_criterion(results, idx):
    n, name, ok, detail = results[idx]
    _report(n, name, ok, detail)


def test_criterion_13_cli(results):
    ok, detail = check_13_cli(results)
    _report(13, "cli", ok, detail)
