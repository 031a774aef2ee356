"""Inverted index over a document corpus, with tf-idf weighting.

The index maps every term to its postings (document id, term frequency).
Weights are never stored: they are derived on demand from (tf, df, N), so
adds and removes can never leave stale weights behind.

idf is log base 10 of N/df, exactly; a term nobody indexed has idf 0 by
convention, and a term appearing in every document also weighs 0.
"""

from __future__ import annotations

import json
import math
import os
import tempfile
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from .errors import EmptyCorpusError, IndexFormatError, UnknownDocumentError
from .textpipe import TextPipeline

__all__ = [
    "INDEX_FORMAT",
    "INDEX_VERSION",
    "DocumentId",
    "WeightedVector",
    "Document",
    "Posting",
    "PostingsList",
    "CorpusStats",
    "InvertedIndex",
]

INDEX_FORMAT = "vsm-index"
INDEX_VERSION = 1

DocumentId = int

# Sparse term -> weight map.  Producers never store zero-weight entries.
WeightedVector = dict[str, float]


@dataclass
class Document:
    """A stored text unit.  `terms` is the pipeline output as a multiset."""

    doc_id: DocumentId
    name: str
    classification: str
    text: str
    terms: Counter = field(default_factory=Counter)


@dataclass(frozen=True)
class Posting:
    doc_id: DocumentId
    tf: int


@dataclass(frozen=True)
class PostingsList:
    """One term's inverted-file entry, postings sorted by ascending doc id."""

    term: str
    postings: tuple[Posting, ...]

    @property
    def df(self) -> int:
        return len(self.postings)


@dataclass(frozen=True)
class CorpusStats:
    n_docs: int
    n_terms: int


class InvertedIndex:
    """Documents, postings, and the tf/df/idf arithmetic over them.

    Not internally synchronized; the repository layer provides the
    many-readers-or-one-writer contract.
    """

    def __init__(self, pipeline: TextPipeline | None = None):
        self.pipeline = pipeline if pipeline is not None else TextPipeline()
        self._docs: dict[DocumentId, Document] = {}
        self._postings: dict[str, dict[DocumentId, int]] = {}
        self._next_doc_id: DocumentId = 1

    # -- corpus shape -------------------------------------------------------

    @property
    def n_docs(self) -> int:
        return len(self._docs)

    @property
    def stats(self) -> CorpusStats:
        return CorpusStats(n_docs=len(self._docs), n_terms=len(self._postings))

    def vocabulary(self) -> list[str]:
        return sorted(self._postings)

    def classifications(self) -> set[str]:
        """Labels in use, derived from current documents (registry on first use)."""
        return {doc.classification for doc in self._docs.values()}

    def documents(self, classifications: set[str] | None = None) -> list[Document]:
        """All documents (optionally only the given labels), ascending id."""
        docs = sorted(self._docs.values(), key=lambda d: d.doc_id)
        if classifications is not None:
            docs = [d for d in docs if d.classification in classifications]
        return docs

    def document(self, doc_id: DocumentId) -> Document:
        try:
            return self._docs[doc_id]
        except KeyError:
            raise UnknownDocumentError(f"no document with id {doc_id}") from None

    # -- mutation -----------------------------------------------------------

    def add_document(self, name: str, classification: str, text: str) -> Document:
        """Index one document.  Ids are never reused, even after removal.

        A document that is empty after the pipeline (only stop words, say)
        is stored and counted in N but contributes no postings; callers can
        see that via `len(doc.terms) == 0`.
        """
        terms = Counter(self.pipeline.terms(text))
        doc = Document(self._next_doc_id, name, classification, text, terms)
        self._next_doc_id += 1
        self._docs[doc.doc_id] = doc
        for term, tf in terms.items():
            self._postings.setdefault(term, {})[doc.doc_id] = tf
        return doc

    def remove_document(self, doc_id: DocumentId) -> Document:
        """Remove a document and all its postings; empty postings lists go too."""
        doc = self.document(doc_id)
        del self._docs[doc_id]
        for term in doc.terms:
            entries = self._postings[term]
            del entries[doc_id]
            if not entries:
                del self._postings[term]
        return doc

    # -- statistics ---------------------------------------------------------

    def tf(self, term: str, doc_id: DocumentId) -> int:
        """Occurrences of term in the document; 0 if absent."""
        return self.document(doc_id).terms.get(term, 0)

    def df(self, term: str) -> int:
        """Number of documents containing the term; 0 for unknown terms."""
        return len(self._postings.get(term, ()))

    def postings_list(self, term: str) -> PostingsList:
        entries = self._postings.get(term, {})
        return PostingsList(
            term,
            tuple(Posting(doc_id, tf) for doc_id, tf in sorted(entries.items())),
        )

    def idf(self, term: str) -> float:
        """log10(N / df).  Unknown terms get 0; an empty corpus is an error."""
        if not self._docs:
            raise EmptyCorpusError("corpus is empty (N = 0)")
        df = self.df(term)
        if df == 0:
            return 0.0
        return math.log10(self.n_docs / df)

    def weight(self, term: str, doc_id: DocumentId) -> float:
        """tf x idf for one (term, document) cell."""
        return self.tf(term, doc_id) * self.idf(term)

    def doc_vector(self, doc_id: DocumentId) -> WeightedVector:
        """The document's sparse tf-idf vector; zero-weight terms omitted."""
        doc = self.document(doc_id)
        vector: WeightedVector = {}
        for term, tf in doc.terms.items():
            weight = tf * self.idf(term)
            if weight > 0.0:
                vector[term] = weight
        return vector

    # -- persistence --------------------------------------------------------

    def save(self, path: str | Path) -> None:
        """Write the versioned JSON-lines snapshot atomically (temp + rename)."""
        path = Path(path)
        header = {
            "format": INDEX_FORMAT,
            "version": INDEX_VERSION,
            "next_doc_id": self._next_doc_id,
            "stats": {"n_docs": self.n_docs, "n_terms": len(self._postings)},
            "pipeline": self.pipeline.as_dict(),
        }
        lines = [header]
        for doc in self.documents():
            lines.append(
                {
                    "record": "document",
                    "doc_id": doc.doc_id,
                    "name": doc.name,
                    "classification": doc.classification,
                    "text": doc.text,
                }
            )
        for term in self.vocabulary():
            lines.append(
                {
                    "record": "postings",
                    "term": term,
                    "postings": [[doc_id, tf] for doc_id, tf in sorted(self._postings[term].items())],
                }
            )
        payload = "".join(json.dumps(line, ensure_ascii=False, sort_keys=True) + "\n" for line in lines)
        fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as handle:
                handle.write(payload)
                handle.flush()
                os.fsync(handle.fileno())
            os.replace(tmp_name, path)
        except BaseException:
            try:
                os.unlink(tmp_name)
            except OSError:
                pass
            raise

    @classmethod
    def load(cls, path: str | Path) -> "InvertedIndex":
        """Read a snapshot written by save().  A bad file raises IndexFormatError
        and leaves nothing half-built (the new index is only returned on success)."""
        path = Path(path)
        text = path.read_text("utf-8")
        lines = text.splitlines()
        if not lines:
            raise IndexFormatError(f"{path}: empty index file")
        header = cls._parse_line(path, 1, lines[0])
        if header.get("format") != INDEX_FORMAT:
            raise IndexFormatError(f"{path}: not a {INDEX_FORMAT} file")
        version = header.get("version")
        if version != INDEX_VERSION:
            raise IndexFormatError(
                f"{path}: format version {version!r} unsupported; this build reads version {INDEX_VERSION}"
            )
        try:
            index = cls(TextPipeline.from_dict(header["pipeline"]))
            next_doc_id = int(header["next_doc_id"])
            stats = header["stats"]
            expected = (int(stats["n_docs"]), int(stats["n_terms"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise IndexFormatError(f"{path}: malformed header: {exc}") from None

        for number, line in enumerate(lines[1:], start=2):
            record = cls._parse_line(path, number, line)
            kind = record.get("record")
            try:
                if kind == "document":
                    doc = Document(
                        int(record["doc_id"]),
                        str(record["name"]),
                        str(record["classification"]),
                        str(record["text"]),
                    )
                    if doc.doc_id in index._docs:
                        raise IndexFormatError(f"{path}: duplicate document id {doc.doc_id}")
                    index._docs[doc.doc_id] = doc
                elif kind == "postings":
                    term = str(record["term"])
                    entries: dict[DocumentId, int] = {}
                    for doc_id, tf in record["postings"]:
                        doc_id, tf = int(doc_id), int(tf)
                        if tf < 1:
                            raise IndexFormatError(f"{path}: line {number}: tf < 1")
                        if doc_id not in index._docs:
                            raise IndexFormatError(
                                f"{path}: line {number}: postings reference unknown document {doc_id}"
                            )
                        entries[doc_id] = tf
                        index._docs[doc_id].terms[term] = tf
                    index._postings[term] = entries
                else:
                    raise IndexFormatError(f"{path}: line {number}: unknown record kind {kind!r}")
            except (KeyError, TypeError, ValueError) as exc:
                raise IndexFormatError(f"{path}: line {number}: malformed record: {exc}") from None

        if (index.n_docs, len(index._postings)) != expected:
            raise IndexFormatError(
                f"{path}: header stats {expected} disagree with records "
                f"({index.n_docs}, {len(index._postings)})"
            )
        if index._docs and next_doc_id <= max(index._docs):
            raise IndexFormatError(f"{path}: id counter {next_doc_id} not past existing ids")
        index._next_doc_id = next_doc_id
        return index

    @staticmethod
    def _parse_line(path: Path, number: int, line: str) -> dict:
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise IndexFormatError(f"{path}: line {number}: invalid JSON: {exc}") from None
        if not isinstance(record, dict):
            raise IndexFormatError(f"{path}: line {number}: record is not an object")
        return record
