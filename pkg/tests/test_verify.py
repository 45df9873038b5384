import math

import pytest

from walkdist import Assertion, run_suite, suite_names


def test_suite_names():
    assert suite_names() == ("equivalences", "limits", "oracles", "properties")


def test_assertion_check_semantics():
    assert Assertion.check("x", 0.5, 1.0).passed
    assert not Assertion.check("x", 2.0, 1.0).passed
    assert not Assertion.check("x", float("nan"), 1.0).passed
    assert not Assertion.check("x", math.inf, 1.0).passed


def test_every_suite_passes_on_p4(p4):
    for name in suite_names():
        report = run_suite(name, p4)
        assert report.suite == name
        assert report.assertions
        failed = [a.name for a in report.assertions if not a.passed]
        assert report.passed, f"{name}: {failed}"


def test_suites_pass_on_multigraph_except_slow_sweeps(multi5):
    # the oracle/equivalence/property suites must hold on multigraphs;
    # limit sweeps are convergence-rate statements tied to the grid, so
    # they are exercised separately on graphs where the caps apply
    for name in ("oracles", "equivalences", "properties"):
        report = run_suite(name, multi5)
        failed = [a.name for a in report.assertions if not a.passed]
        assert report.passed, f"{name}: {failed}"


def test_as_dict_shape(p4):
    doc = run_suite("equivalences", p4).as_dict()
    assert set(doc) == {"suite", "passed", "assertions"}
    for row in doc["assertions"]:
        assert set(row) == {"name", "deviation", "tolerance", "passed"}


def test_run_suite_rejects_unknown(p4):
    with pytest.raises(ValueError):
        run_suite("nonesuch", p4)
