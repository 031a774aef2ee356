"""Precision/recall over judged query runs.

Live feedback uses plain set precision: relevant-retrieved / retrieved,
with unjudged documents counting as not relevant.  Recall needs the total
number of relevant documents, which only an external ground truth (qrels
file or caller) can supply — so the interactive path reports precision
only, and recall appears when qrels are in play.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Collection, Mapping

from .errors import EvalFileError
from .search import QueryRun

__all__ = [
    "RelevanceJudgment",
    "EvalMetrics",
    "BatchEvalReport",
    "metrics_for_run",
    "batch_eval",
    "parse_queries",
    "parse_qrels",
]


@dataclass(frozen=True)
class RelevanceJudgment:
    """One human verdict on one retrieved document of one run."""

    run_id: int
    doc_id: int
    relevant: bool
    judged_at: str

    def as_dict(self) -> dict:
        return {
            "run_id": self.run_id,
            "doc_id": self.doc_id,
            "relevant": self.relevant,
            "judged_at": self.judged_at,
        }


@dataclass(frozen=True)
class EvalMetrics:
    precision: float
    recall: float | None
    judged_count: int
    retrieved_count: int
    relevant_retrieved_count: int

    def as_dict(self) -> dict:
        return {
            "precision": self.precision,
            "recall": self.recall,
            "judged_count": self.judged_count,
            "retrieved_count": self.retrieved_count,
            "relevant_retrieved_count": self.relevant_retrieved_count,
        }


@dataclass(frozen=True)
class BatchEvalReport:
    per_query: dict[str, EvalMetrics]
    mean_precision: float
    mean_recall: float | None
    skipped: tuple[tuple[str, str], ...]  # (query_id, reason)


def metrics_for_run(
    run: QueryRun,
    verdicts: Mapping[int, bool],
    total_relevant: int | None = None,
) -> EvalMetrics:
    """Metrics for one run given doc_id -> relevant verdicts.

    precision = relevant_retrieved / retrieved (0 when nothing retrieved).
    recall = relevant_retrieved / total_relevant, only when the caller
    knows total_relevant; 0 is undefined and rejected.
    """
    retrieved_ids = run.doc_ids()
    retrieved = len(run.results)
    relevant_retrieved = sum(
        1 for doc_id, relevant in verdicts.items() if relevant and doc_id in retrieved_ids
    )
    precision = relevant_retrieved / retrieved if retrieved else 0.0
    recall = None
    if total_relevant is not None:
        if total_relevant <= 0:
            raise ValueError(f"total_relevant must be positive, got {total_relevant}")
        if total_relevant < relevant_retrieved:
            raise ValueError(
                f"total_relevant {total_relevant} is less than "
                f"relevant_retrieved {relevant_retrieved}"
            )
        recall = relevant_retrieved / total_relevant
    return EvalMetrics(
        precision=precision,
        recall=recall,
        judged_count=len(verdicts),
        retrieved_count=retrieved,
        relevant_retrieved_count=relevant_retrieved,
    )


def batch_eval(
    qrels: Mapping[str, Mapping[str, bool]],
    runs: Mapping[str, QueryRun],
    known_names: Collection[str],
) -> BatchEvalReport:
    """Judge each run against ground truth and average across queries.

    qrels maps query_id -> (document name -> relevant).  A query whose
    qrels name a document absent from the corpus is skipped and reported,
    as is a run with no qrels entries at all.  Recall per query divides by
    that query's count of relevant names; a query with zero relevant names
    gets precision only.
    """
    if not qrels:
        raise EvalFileError("qrels are empty; nothing to evaluate against")
    per_query: dict[str, EvalMetrics] = {}
    skipped: list[tuple[str, str]] = []
    for query_id in sorted(runs):
        run = runs[query_id]
        entries = qrels.get(query_id)
        if not entries:
            skipped.append((query_id, "no qrels entries for this query"))
            continue
        unresolved = sorted(name for name in entries if name not in known_names)
        if unresolved:
            skipped.append((query_id, "unknown document name(s): " + ", ".join(unresolved)))
            continue
        relevant_names = {name for name, relevant in entries.items() if relevant}
        retrieved = len(run.results)
        relevant_rows = [result for result in run.results if result.name in relevant_names]
        judged_rows = sum(1 for result in run.results if result.name in entries)
        precision = len(relevant_rows) / retrieved if retrieved else 0.0
        recall = None
        if relevant_names:
            recall = len({result.name for result in relevant_rows}) / len(relevant_names)
        per_query[query_id] = EvalMetrics(
            precision=precision,
            recall=recall,
            judged_count=judged_rows,
            retrieved_count=retrieved,
            relevant_retrieved_count=len(relevant_rows),
        )
    mean_precision = (
        sum(m.precision for m in per_query.values()) / len(per_query) if per_query else 0.0
    )
    recalls = [m.recall for m in per_query.values() if m.recall is not None]
    mean_recall = sum(recalls) / len(recalls) if recalls else None
    return BatchEvalReport(
        per_query=per_query,
        mean_precision=mean_precision,
        mean_recall=mean_recall,
        skipped=tuple(skipped),
    )


def parse_queries(path: str | Path) -> list[tuple[str, str]]:
    """Read a queries file: one `query_id<TAB>query text` per line.

    '#' comment lines and blank lines are ignored; duplicate ids are an
    error; order is preserved.
    """
    queries: list[tuple[str, str]] = []
    seen: set[str] = set()
    for number, line in _data_lines(path):
        parts = line.split("\t", 1)
        if len(parts) != 2 or not parts[0] or not parts[1].strip():
            raise EvalFileError(f"{path}: line {number}: expected 'query_id<TAB>query text'")
        query_id, text = parts[0], parts[1].strip()
        if query_id in seen:
            raise EvalFileError(f"{path}: line {number}: duplicate query id {query_id!r}")
        seen.add(query_id)
        queries.append((query_id, text))
    if not queries:
        raise EvalFileError(f"{path}: no queries found")
    return queries


def parse_qrels(path: str | Path) -> dict[str, dict[str, bool]]:
    """Read a qrels file: one `query_id<TAB>doc_name<TAB>0|1` per line.

    '#' comment lines and blank lines are ignored; a repeated
    (query, document) pair keeps the last verdict.
    """
    qrels: dict[str, dict[str, bool]] = {}
    for number, line in _data_lines(path):
        parts = line.split("\t")
        if len(parts) != 3 or not parts[0] or not parts[1]:
            raise EvalFileError(f"{path}: line {number}: expected 'query_id<TAB>doc_name<TAB>0|1'")
        query_id, doc_name, verdict = parts
        if verdict not in ("0", "1"):
            raise EvalFileError(f"{path}: line {number}: verdict must be 0 or 1, got {verdict!r}")
        qrels.setdefault(query_id, {})[doc_name] = verdict == "1"
    if not qrels:
        raise EvalFileError(f"{path}: no qrels found")
    return qrels


def _data_lines(path: str | Path):
    try:
        text = Path(path).read_text("utf-8")
    except OSError as exc:
        raise EvalFileError(f"cannot read {path}: {exc}") from None
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            yield number, line.rstrip("\n")
