"""File-backed repository: index snapshot plus run/judgment journals.

One directory holds the whole engine state:

    index.vsm        versioned JSON-lines snapshot (rewritten atomically)
    runs.jsonl       append-only journal of executed query runs
    judgments.jsonl  append-only journal of relevance judgments
    LOCK             pid of the owning process

The repository is the single source of truth shared by service and CLI: it
owns the inverted index, allocates run ids, journals every run and
judgment, and replays the journals on open.  Within the process it applies
the index's reader-writer contract (many readers or one writer).
"""

from __future__ import annotations

import json
import os
import threading
import warnings
from contextlib import contextmanager
from pathlib import Path

from .errors import (
    DocumentNotInRunError,
    RepositoryLockedError,
    StoreIntegrityError,
    UnknownRunError,
)
from .evaluation import EvalMetrics, RelevanceJudgment, metrics_for_run
from .index import CorpusStats, Document, DocumentId, InvertedIndex
from .search import QueryRun, SearchRequest, score_request, utc_now
from .similarity import CosineMode
from .textpipe import TextPipeline

__all__ = ["Repository"]


class _RWLock:
    """Many concurrent readers or one writer.  Writers wait for readers to drain."""

    def __init__(self):
        self._cond = threading.Condition()
        self._readers = 0
        self._writing = False

    @contextmanager
    def read(self):
        with self._cond:
            while self._writing:
                self._cond.wait()
            self._readers += 1
        try:
            yield
        finally:
            with self._cond:
                self._readers -= 1
                if self._readers == 0:
                    self._cond.notify_all()

    @contextmanager
    def write(self):
        with self._cond:
            while self._writing or self._readers:
                self._cond.wait()
            self._writing = True
        try:
            yield
        finally:
            with self._cond:
                self._writing = False
                self._cond.notify_all()


class Repository:
    """Owns one repository directory.  Use as a context manager or close()."""

    INDEX_FILE = "index.vsm"
    RUNS_FILE = "runs.jsonl"
    JUDGMENTS_FILE = "judgments.jsonl"
    LOCK_FILE = "LOCK"

    def __init__(self, root: str | Path, *, pipeline: TextPipeline | None = None, create: bool = True):
        """Open (or create) the repository at root and acquire its lock.

        `pipeline` only matters when the repository is being created; an
        existing index keeps its stored pipeline config.
        """
        self.root = Path(root)
        if not self.root.is_dir():
            if not create:
                raise FileNotFoundError(f"no repository at {self.root}")
            self.root.mkdir(parents=True, exist_ok=True)
        self._index_path = self.root / self.INDEX_FILE
        self._runs_path = self.root / self.RUNS_FILE
        self._judgments_path = self.root / self.JUDGMENTS_FILE
        self._lock_path = self.root / self.LOCK_FILE

        self._acquire_lock()
        try:
            self.created = not self._index_path.exists()
            if self.created:
                self._index = InvertedIndex(pipeline)
                self._index.save(self._index_path)
            else:
                self._index = InvertedIndex.load(self._index_path)
            self._runs: dict[int, QueryRun] = {}
            self._judgments: dict[tuple[int, int], RelevanceJudgment] = {}
            self._replay_runs()
            self._replay_judgments()
            self._next_run_id = max(self._runs, default=0) + 1
            self._index_lock = _RWLock()
            self._journal_mutex = threading.Lock()
            self._runs_handle = open(self._runs_path, "a", encoding="utf-8")
            self._judgments_handle = open(self._judgments_path, "a", encoding="utf-8")
        except BaseException:
            self._release_lock()
            raise
        self._closed = False

    @classmethod
    def open(cls, root: str | Path, *, pipeline: TextPipeline | None = None, create: bool = True) -> "Repository":
        return cls(root, pipeline=pipeline, create=create)

    def close(self) -> None:
        if getattr(self, "_closed", True):
            return
        self._closed = True
        self._runs_handle.close()
        self._judgments_handle.close()
        self._release_lock()

    def __enter__(self) -> "Repository":
        return self

    def __exit__(self, *exc_info) -> None:
        self.close()

    # -- locking --------------------------------------------------------

    def _acquire_lock(self) -> None:
        for _ in range(2):
            try:
                fd = os.open(self._lock_path, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
            except FileExistsError:
                owner = self._lock_owner()
                if owner is not None and _pid_alive(owner):
                    raise RepositoryLockedError(
                        f"repository {self.root} is locked by running process {owner}"
                    ) from None
                warnings.warn(
                    f"removing stale lock on {self.root} (process {owner} is gone)",
                    RuntimeWarning,
                    stacklevel=3,
                )
                try:
                    self._lock_path.unlink()
                except FileNotFoundError:
                    pass
                continue
            with os.fdopen(fd, "w") as handle:
                handle.write(str(os.getpid()))
            return
        raise RepositoryLockedError(f"repository {self.root} is locked")

    def _lock_owner(self) -> int | None:
        try:
            return int(self._lock_path.read_text().strip())
        except (OSError, ValueError):
            return None

    def _release_lock(self) -> None:
        try:
            self._lock_path.unlink()
        except FileNotFoundError:
            pass

    # -- journal replay ---------------------------------------------------

    def _replay_runs(self) -> None:
        last_id = 0
        for record in _read_journal(self._runs_path):
            try:
                run = QueryRun.from_dict(record)
            except (KeyError, TypeError, ValueError) as exc:
                raise StoreIntegrityError(f"{self._runs_path}: malformed run record: {exc}") from None
            if run.run_id <= last_id:
                raise StoreIntegrityError(
                    f"{self._runs_path}: run ids not strictly increasing at {run.run_id}"
                )
            last_id = run.run_id
            self._runs[run.run_id] = run

    def _replay_judgments(self) -> None:
        for record in _read_journal(self._judgments_path):
            try:
                judgment = RelevanceJudgment(
                    run_id=int(record["run_id"]),
                    doc_id=int(record["doc_id"]),
                    relevant=bool(record["relevant"]),
                    judged_at=str(record["judged_at"]),
                )
            except (KeyError, TypeError, ValueError) as exc:
                raise StoreIntegrityError(
                    f"{self._judgments_path}: malformed judgment record: {exc}"
                ) from None
            run = self._runs.get(judgment.run_id)
            if run is None:
                raise StoreIntegrityError(
                    f"{self._judgments_path}: judgment references unknown run {judgment.run_id}"
                )
            if judgment.doc_id not in run.doc_ids():
                raise StoreIntegrityError(
                    f"{self._judgments_path}: judgment references document {judgment.doc_id} "
                    f"absent from run {judgment.run_id}"
                )
            # Later lines win: re-judging appends, replay keeps the upsert.
            self._judgments[(judgment.run_id, judgment.doc_id)] = judgment

    def _append(self, handle, record: dict) -> None:
        handle.write(json.dumps(record, ensure_ascii=False, sort_keys=True) + "\n")
        handle.flush()

    # -- corpus operations -------------------------------------------------

    def add_document(self, name: str, classification: str, text: str) -> Document:
        with self._index_lock.write():
            doc = self._index.add_document(name, classification, text)
            self._index.save(self._index_path)
            return doc

    def remove_document(self, doc_id: DocumentId) -> Document:
        with self._index_lock.write():
            doc = self._index.remove_document(doc_id)
            self._index.save(self._index_path)
            return doc

    def document(self, doc_id: DocumentId) -> Document:
        with self._index_lock.read():
            return self._index.document(doc_id)

    def documents(self, classifications: set[str] | None = None) -> list[Document]:
        with self._index_lock.read():
            return self._index.documents(classifications)

    def document_names(self) -> set[str]:
        with self._index_lock.read():
            return {doc.name for doc in self._index.documents()}

    def classifications(self) -> set[str]:
        with self._index_lock.read():
            return self._index.classifications()

    def stats(self) -> CorpusStats:
        with self._index_lock.read():
            return self._index.stats

    @property
    def index(self) -> InvertedIndex:
        """The live index.  Reads through this bypass the reader-writer lock;
        prefer the repository's accessors when the service is running."""
        return self._index

    # -- runs and judgments -------------------------------------------------

    def search(self, request: SearchRequest, cosine_mode: CosineMode = CosineMode.CONSISTENT) -> QueryRun:
        """Execute a search and journal it under a fresh run id."""
        with self._index_lock.read():
            results = score_request(self._index, request, cosine_mode)
        with self._journal_mutex:
            run = QueryRun(
                run_id=self._next_run_id,
                request=request,
                cosine_mode=cosine_mode,
                results=results,
                created_at=utc_now(),
            )
            self._next_run_id += 1
            self._runs[run.run_id] = run
            self._append(self._runs_handle, run.as_dict())
        return run

    def run(self, run_id: int) -> QueryRun:
        with self._journal_mutex:
            return self._run_locked(run_id)

    def judge(self, run_id: int, doc_id: DocumentId, relevant: bool) -> EvalMetrics:
        """Upsert one judgment (re-judging flips the verdict) and return
        fresh metrics for the run."""
        with self._journal_mutex:
            run = self._run_locked(run_id)
            if doc_id not in run.doc_ids():
                raise DocumentNotInRunError(
                    f"document {doc_id} is not among the results of run {run_id}"
                )
            judgment = RelevanceJudgment(
                run_id=run_id, doc_id=doc_id, relevant=bool(relevant), judged_at=utc_now()
            )
            self._judgments[(run_id, doc_id)] = judgment
            self._append(self._judgments_handle, judgment.as_dict())
            return self._metrics_locked(run, None)

    def metrics(self, run_id: int, total_relevant: int | None = None) -> EvalMetrics:
        with self._journal_mutex:
            return self._metrics_locked(self._run_locked(run_id), total_relevant)

    def precision(self, run_id: int) -> float:
        return self.metrics(run_id).precision

    def judgments_for(self, run_id: int) -> dict[DocumentId, RelevanceJudgment]:
        with self._journal_mutex:
            self._run_locked(run_id)
            return {
                doc_id: judgment
                for (jr, doc_id), judgment in self._judgments.items()
                if jr == run_id
            }

    def _run_locked(self, run_id: int) -> QueryRun:
        try:
            return self._runs[run_id]
        except KeyError:
            raise UnknownRunError(f"no query run with id {run_id}") from None

    def _metrics_locked(self, run: QueryRun, total_relevant: int | None) -> EvalMetrics:
        verdicts = {
            doc_id: judgment.relevant
            for (run_id, doc_id), judgment in self._judgments.items()
            if run_id == run.run_id
        }
        return metrics_for_run(run, verdicts, total_relevant)


def _read_journal(path: Path):
    """Yield parsed records.  A truncated final line is dropped with a warning;
    corruption anywhere else raises StoreIntegrityError."""
    if not path.exists():
        return
    lines = path.read_text("utf-8").splitlines()
    for position, line in enumerate(lines):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError:
            if position == len(lines) - 1:
                warnings.warn(
                    f"dropping truncated final line of {path.name}",
                    RuntimeWarning,
                    stacklevel=2,
                )
                return
            raise StoreIntegrityError(f"{path}: line {position + 1}: corrupt journal line") from None
        if not isinstance(record, dict):
            raise StoreIntegrityError(f"{path}: line {position + 1}: record is not an object")
        yield record


def _pid_alive(pid: int) -> bool:
    try:
        os.kill(pid, 0)
    except ProcessLookupError:
        return False
    except PermissionError:
        return True
    return True
