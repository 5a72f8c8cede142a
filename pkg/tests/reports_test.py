import json
from fractions import Fraction

import pytest

from algebra.groebner import INFINITE
from verify.reports import KERNEL_BUG_LABEL, VERSION, CheckReport, RunReport, to_jsonable


def report(verdict, check_id="00-lech-f", fixture_id="cusp", **kwargs):
    return CheckReport("lech", verdict, check_id=check_id, fixture_id=fixture_id, **kwargs)


def test_to_jsonable():
    """Fractions stay exact, Infinite is a string, sets are sorted."""
    value = {1: Fraction(3, 2), "inf": INFINITE, "set": {"b", "a"}, "pair": (1, Fraction(4, 2))}
    assert to_jsonable(value) == {"1": "3/2", "inf": "Infinite", "set": ["a", "b"], "pair": [1, "2/1"]}


def test_unknown_verdict():
    """Only pass, fail and inconclusive are verdicts."""
    with pytest.raises(ValueError):
        CheckReport("lech", "maybe")


def test_failures_are_labelled():
    """A failed check is flagged as a suspected kernel bug."""
    assert report("fail").label == KERNEL_BUG_LABEL
    assert report("pass").label == ""
    assert report("pass").passed


@pytest.mark.parametrize("verdicts, errors, expected", [
    (["pass", "pass"], 0, 0),
    (["pass", "fail", "inconclusive"], 0, 1),
    (["pass", "inconclusive"], 0, 2),
    (["pass", "fail"], 1, 3),
    ([], 0, 0),
])
def test_exit_code(verdicts, errors, expected):
    """Errors beat failures, failures beat inconclusive results."""
    run = RunReport(seed=0)
    for i, verdict in enumerate(verdicts):
        run.add(report(verdict, check_id=f"{i:02d}-lech-f"))
    for _ in range(errors):
        run.add_error("cusp", "09-lech-g", "CheckPreconditionError: no evidence")
    assert run.exit_code() == expected


def test_json_is_sorted_and_stable():
    """Reports merge by (fixture_id, check_id) whatever the insertion order."""
    first, second = RunReport(seed=4), RunReport(seed=4)
    a = report("pass", check_id="00-lech-f", lhs=1, rhs=Fraction(2))
    b = report("inconclusive", check_id="01-hk_chain-f", cap_hit="E_CAP")
    first.add(a)
    first.add(b)
    second.add(b)
    second.add(a)
    first.timing["total"] = 1.0
    second.timing["total"] = 2.0
    assert first.to_json(include_timing=False) == second.to_json(include_timing=False)
    document = json.loads(first.to_json())
    assert document["version"] == VERSION
    assert document["seed"] == 4
    assert [r["check_id"] for r in document["reports"]] == ["00-lech-f", "01-hk_chain-f"]
    assert document["reports"][0]["rhs"] == "2/1"
    assert document["cap_hits"] == [{"fixture_id": "cusp", "check_id": "01-hk_chain-f", "cap": "E_CAP"}]
    assert document["timing"] == {"total": 1.0}
    assert "timing" not in json.loads(first.to_json(include_timing=False))


def test_summary_lines():
    """One line per check and error, then the totals."""
    run = RunReport(seed=0)
    run.add(report("pass", lhs=1, rhs=2))
    run.add_error("cusp", "01-lech-g", "boom")
    lines = run.summary_lines()
    assert len(lines) == 3
    assert "lhs=1 rhs=2" in lines[0]
    assert "boom" in lines[1]
    assert lines[-1] == "[SUMMARY] 1 passed, 0 failed, 0 inconclusive, 1 errors"
