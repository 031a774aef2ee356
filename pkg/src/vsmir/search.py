"""Query execution: build the query vector, score candidates, filter, rank.

Candidates come from the union of the query terms' postings lists
(term-at-a-time accumulation of the numerator), never from scanning all N
documents; a dense brute-force scorer exists only in the test suite as an
oracle.  Results keep strictly positive margin over the threshold
(score > threshold), sort by descending score with ties broken by ascending
document id, and are truncated to the requested limit.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from datetime import datetime, timezone

from .errors import EmptyCorpusError, UnknownClassificationError
from .index import DocumentId, InvertedIndex
from .similarity import CosineMode, Measure, QueryVector, norm

__all__ = ["SearchRequest", "SearchResult", "QueryRun", "build_query_vector", "score_request", "execute"]


@dataclass(frozen=True)
class SearchRequest:
    """What to search for and how to cut the ranked list.

    An empty classification set means "all classifications"; a non-empty
    set keeps any document whose label is in the set (union semantics).
    """

    query_text: str
    measure: Measure
    classifications: frozenset[str] = frozenset()
    threshold: float = 0.0
    limit: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "classifications", frozenset(self.classifications))
        if not self.threshold >= 0:  # also rejects NaN, which compares false
            raise ValueError(f"threshold must be >= 0, got {self.threshold}")
        if self.limit is not None and self.limit < 1:
            raise ValueError(f"limit must be >= 1 when present, got {self.limit}")

    def as_dict(self) -> dict:
        return {
            "query_text": self.query_text,
            "measure": self.measure.value,
            "classifications": sorted(self.classifications),
            "threshold": self.threshold,
            "limit": self.limit,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SearchRequest":
        return cls(
            query_text=data["query_text"],
            measure=Measure.parse(data["measure"]),
            classifications=frozenset(data["classifications"]),
            threshold=data["threshold"],
            limit=data["limit"],
        )


@dataclass(frozen=True)
class SearchResult:
    rank: int  # 1-based, consecutive
    doc_id: DocumentId
    name: str
    classification: str
    score: float

    def as_dict(self) -> dict:
        return {
            "rank": self.rank,
            "doc_id": self.doc_id,
            "name": self.name,
            "classification": self.classification,
            "score": self.score,
        }


@dataclass(frozen=True)
class QueryRun:
    """One executed search, frozen so judgments can reference a stable list."""

    run_id: int
    request: SearchRequest
    cosine_mode: CosineMode
    results: tuple[SearchResult, ...]
    created_at: str  # ISO 8601, UTC

    def doc_ids(self) -> set[DocumentId]:
        return {result.doc_id for result in self.results}

    def as_dict(self) -> dict:
        return {
            "run_id": self.run_id,
            "request": self.request.as_dict(),
            "cosine_mode": self.cosine_mode.value,
            "results": [result.as_dict() for result in self.results],
            "created_at": self.created_at,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "QueryRun":
        return cls(
            run_id=data["run_id"],
            request=SearchRequest.from_dict(data["request"]),
            cosine_mode=CosineMode.parse(data["cosine_mode"]),
            results=tuple(SearchResult(**result) for result in data["results"]),
            created_at=data["created_at"],
        )


def utc_now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def build_query_vector(index: InvertedIndex, query_text: str) -> QueryVector:
    """Pipeline the query text and weight its terms.

    raw(t) = idf(t) per distinct term (presence weighting — repeating a
    query term does not raise its raw weight); cosine_normalized(t) =
    (tf/max_tf) x idf(t).  Terms with idf 0 — out of vocabulary or present
    in every document — are dropped from both channels.
    """
    if index.n_docs == 0:
        raise EmptyCorpusError("cannot search an empty corpus")
    counts = Counter(index.pipeline.terms(query_text))
    max_tf = max(counts.values(), default=0)
    raw: dict[str, float] = {}
    cosine_normalized: dict[str, float] = {}
    for term, tf in counts.items():
        idf = index.idf(term)
        if idf > 0.0:
            raw[term] = idf
            cosine_normalized[term] = (tf / max_tf) * idf
    return QueryVector(raw=raw, cosine_normalized=cosine_normalized, max_tf=max_tf)


def score_request(
    index: InvertedIndex,
    request: SearchRequest,
    cosine_mode: CosineMode = CosineMode.CONSISTENT,
) -> tuple[SearchResult, ...]:
    """Score, filter, and rank without minting a run (see `execute`)."""
    if request.classifications:
        unknown = request.classifications - index.classifications()
        if unknown:
            raise UnknownClassificationError(
                "unknown classification label(s): " + ", ".join(sorted(unknown))
            )
    query = build_query_vector(index, request.query_text)

    # Numerators, term at a time over the postings of the measure's query
    # channel.  Jaccard/Dice/InnerProduct pair document weights with raw
    # query weights; consistent-mode cosine pairs them with normalized ones.
    use_normalized = request.measure is Measure.COSINE and cosine_mode is CosineMode.CONSISTENT
    q_channel = query.cosine_normalized if use_normalized else query.raw
    numerators: dict[DocumentId, float] = {}
    for term, q_weight in q_channel.items():
        idf = index.idf(term)
        for posting in index.postings_list(term).postings:
            contribution = (posting.tf * idf) * q_weight
            numerators[posting.doc_id] = numerators.get(posting.doc_id, 0.0) + contribution

    q_norm = norm(query.cosine_normalized)
    q_raw_sq = sum(w * w for w in query.raw.values())
    scored: list[tuple[float, DocumentId]] = []
    for doc_id in sorted(numerators):
        doc = index.document(doc_id)
        if request.classifications and doc.classification not in request.classifications:
            continue
        numerator = numerators[doc_id]
        if request.measure is Measure.INNER_PRODUCT:
            value = numerator
        else:
            d_vector = index.doc_vector(doc_id)
            d_sq = sum(w * w for w in d_vector.values())
            if request.measure is Measure.COSINE:
                d_norm = d_sq**0.5
                value = numerator / (d_norm * q_norm) if d_norm > 0.0 and q_norm > 0.0 else 0.0
            elif request.measure is Measure.JACCARD:
                denominator = d_sq + q_raw_sq - numerator
                value = numerator / denominator if denominator > 0.0 else 0.0
            else:  # Measure.DICE
                denominator = d_sq + q_raw_sq
                value = 2.0 * numerator / denominator if denominator > 0.0 else 0.0
        if value > request.threshold:
            scored.append((value, doc_id))

    scored.sort(key=lambda pair: (-pair[0], pair[1]))
    if request.limit is not None:
        scored = scored[: request.limit]
    return tuple(
        SearchResult(
            rank=position,
            doc_id=doc_id,
            name=index.document(doc_id).name,
            classification=index.document(doc_id).classification,
            score=value,
        )
        for position, (value, doc_id) in enumerate(scored, start=1)
    )


def execute(
    index: InvertedIndex,
    request: SearchRequest,
    *,
    run_id: int,
    cosine_mode: CosineMode = CosineMode.CONSISTENT,
    created_at: str | None = None,
) -> QueryRun:
    """Run a search end-to-end and wrap it as a QueryRun.

    The repository layer allocates run ids and journals the run; callers
    holding a bare index can mint their own ids.
    """
    results = score_request(index, request, cosine_mode)
    return QueryRun(
        run_id=run_id,
        request=request,
        cosine_mode=cosine_mode,
        results=results,
        created_at=created_at if created_at is not None else utc_now(),
    )
