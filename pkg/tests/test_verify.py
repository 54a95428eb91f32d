import math

import jsonschema
import pytest

from rungelenz.verify import (
    REPORT_SCHEMA,
    Case,
    VerificationReport,
    exact,
    numeric,
    run_suite,
    summarize,
)


def test_case_pass_rules():
    assert numeric("a", {}, 1e-12, 1e-10).passed
    assert numeric("a", {}, 1e-10, 1e-10).passed
    assert not numeric("a", {}, 2e-10, 1e-10).passed
    assert not numeric("a", {}, math.nan, 1.0).passed
    assert exact("b", {}, True).passed and not exact("b", {}, False).passed
    assert not Case("c", {}).passed


def test_report_is_sorted_and_consistent():
    report = VerificationReport("demo", [numeric("z", {}, 0.5, 1.0), exact("a", {"k": 1}, False)])
    data = report.to_json()
    jsonschema.validate(data, REPORT_SCHEMA)
    assert [c["id"] for c in data["cases"]] == ["a", "z"]
    assert data["summary"] == {"total": 2, "passed": 1, "max_residual": 0.5}
    assert summarize(data["cases"]) == data["summary"]
    assert not report.ok


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nonsense")


@pytest.mark.parametrize("suite", ["radial", "shell", "coulomb"])
def test_suites_pass(suite):
    report = run_suite(suite, n_max=4)
    assert report.ok, [c.id for c in report.cases if not c.passed]
    jsonschema.validate(report.to_json(), REPORT_SCHEMA)


def test_angular_suite_small():
    report = run_suite("angular", n_max=3)
    assert report.ok
    ids = {c.id.split("/")[1] for c in report.cases}
    assert {"group", "branch", "sum_rule", "master", "cg_oracle", "sixj_oracle", "reduced"} <= ids
