"""Shared fixtures: the worked four-document example and acceptance reporting."""

from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from vsmir import InvertedIndex, TextPipeline

# Hand-traceable corpus: eight distinct terms, term frequencies chosen so that
# document 2 dominates every similarity measure and idf takes exactly two
# distinct nonzero values (log10(3/1) and log10(3/2)).
GOLDEN_DOCS = [
    ("D1", "general", "t2 t4 t5 t7"),
    ("D2", "general", "t1 t3 t6 t6 t8"),
    ("D3", "general", "t1 t5 t7 t8"),
]
GOLDEN_QUERY = "t5 t6 t6 t8"

# A fourth document sharing no terms with the query, for retrieval/eval tests
# that need a non-retrieved relevant document.
EXTRA_DOC = ("D4", "general", "t9 t9 t10")


def make_golden_index(extra: bool = False) -> InvertedIndex:
    index = InvertedIndex(pipeline=TextPipeline())
    for name, classification, text in GOLDEN_DOCS:
        index.add_document(name, classification, text)
    if extra:
        index.add_document(*EXTRA_DOC)
    return index


@pytest.fixture
def golden_index() -> InvertedIndex:
    return make_golden_index()


@pytest.fixture
def golden_index_with_extra() -> InvertedIndex:
    return make_golden_index(extra=True)


def _acceptance_reports(terminalreporter) -> list:
    collected = []
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, []):
            if getattr(report, "when", "call") != "call" and outcome != "error":
                continue
            if "test_acceptance.py" in str(getattr(report, "nodeid", "")):
                collected.append(report)
    return collected


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Print one PASS/FAIL line per acceptance criterion after the run."""
    reports = _acceptance_reports(terminalreporter)
    if not reports:
        return
    terminalreporter.section("acceptance criteria")
    for report in sorted(reports, key=lambda r: r.nodeid):
        name = report.nodeid.split("::")[-1]
        verdict = "PASS" if report.passed else "FAIL"
        terminalreporter.write_line(f"{verdict}  {name}")
