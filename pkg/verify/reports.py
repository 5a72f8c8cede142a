"""
Check and run reports, serialized as key-sorted JSON with exact rationals.
"""

import json
from dataclasses import dataclass, field, asdict
from fractions import Fraction

from algebra.groebner import is_infinite

VERSION = "1.0.0"
VERDICTS = ("pass", "fail", "inconclusive")
KERNEL_BUG_LABEL = "kernel-bug-suspected"

# Verdict markers for the console summary
MARKERS = {"pass": "✅", "fail": "❌", "inconclusive": "⚠️"}


def to_jsonable(value):
    """Fractions become "num/den" strings, mappings get string keys, tuples become lists."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, float, str)):
        return value
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if is_infinite(value):
        return "Infinite"
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = [to_jsonable(v) for v in value]
        return sorted(items, key=str) if isinstance(value, (set, frozenset)) else items
    return str(value)


@dataclass
class CheckReport:
    """
    Outcome of one check on one fixture.

    A failed check is labelled as a suspected kernel bug: the checked
    statements are theorems, so a failure points at the computation.
    """
    kind: str
    verdict: str
    lhs: object = None
    rhs: object = None
    tolerance: object = 0
    tables: dict = field(default_factory=dict)
    note: str = ""
    assumptions: tuple = ()
    cap_hit: str = ""
    check_id: str = ""
    fixture_id: str = ""
    label: str = ""

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if self.verdict == "fail" and not self.label:
            self.label = KERNEL_BUG_LABEL

    @property
    def passed(self):
        return self.verdict == "pass"

    def to_dict(self):
        return to_jsonable(asdict(self))


@dataclass
class RunReport:
    """All check reports of a run, merged deterministically by (fixture_id, check_id)."""
    seed: int
    version: str = VERSION
    reports: list = field(default_factory=list)
    errors: list = field(default_factory=list)
    timing: dict = field(default_factory=dict)

    def add(self, report):
        self.reports.append(report)

    def add_error(self, fixture_id, check_id, message):
        self.errors.append({"fixture_id": fixture_id, "check_id": check_id, "error": message})

    @property
    def cap_hits(self):
        return [{"fixture_id": r.fixture_id, "check_id": r.check_id, "cap": r.cap_hit}
                for r in self.sorted_reports() if r.cap_hit]

    def sorted_reports(self):
        return sorted(self.reports, key=lambda r: (r.fixture_id, r.check_id))

    def counts(self):
        counts = {v: 0 for v in VERDICTS}
        for r in self.reports:
            counts[r.verdict] += 1
        return counts

    def exit_code(self):
        """0 all pass, 1 any fail, 2 inconclusive without failures, 3 errors."""
        counts = self.counts()
        if self.errors:
            return 3
        if counts["fail"]:
            return 1
        if counts["inconclusive"]:
            return 2
        return 0

    def to_dict(self, include_timing=True):
        document = {
            "version": self.version,
            "seed": self.seed,
            "reports": [r.to_dict() for r in self.sorted_reports()],
            "errors": sorted(self.errors, key=lambda e: (e["fixture_id"], e["check_id"])),
            "cap_hits": self.cap_hits,
        }
        if include_timing:
            document["timing"] = to_jsonable(self.timing)
        return document

    def to_json(self, include_timing=True):
        return json.dumps(self.to_dict(include_timing), sort_keys=True, indent=2, ensure_ascii=False)

    def summary_lines(self):
        """Plain-text table: one line per check plus a totals line."""
        lines = []
        for r in self.sorted_reports():
            marker = MARKERS[r.verdict]
            lhs = to_jsonable(r.lhs)
            rhs = to_jsonable(r.rhs)
            lines.append(f"{marker} {r.fixture_id:<28} {r.check_id:<32} {r.verdict:<12} lhs={lhs} rhs={rhs}")
        for e in self.errors:
            lines.append(f"❌ {e['fixture_id']:<28} {e['check_id']:<32} error        {e['error']}")
        counts = self.counts()
        lines.append(f"[SUMMARY] {counts['pass']} passed, {counts['fail']} failed, "
                     f"{counts['inconclusive']} inconclusive, {len(self.errors)} errors")
        return lines
