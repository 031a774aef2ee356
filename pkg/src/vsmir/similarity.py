"""The four vector-space similarity measures.

All measures take the document's sparse tf-idf vector and a QueryVector.
Inner product, Jaccard, and Dice score against the query's raw channel;
cosine divides by vector lengths and comes in two modes (see `cosine`).

Degenerate denominators (empty query, empty document) score 0 rather than
raising, so ranking never aborts mid-corpus.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import UnknownMeasureError
from .index import WeightedVector

__all__ = [
    "Measure",
    "CosineMode",
    "QueryVector",
    "inner_product",
    "norm",
    "cosine",
    "jaccard",
    "dice",
    "score",
]


class Measure(Enum):
    """Closed enumeration of similarity measures; values are the wire names."""

    INNER_PRODUCT = "inner_product"
    COSINE = "cosine"
    JACCARD = "jaccard"
    DICE = "dice"

    @classmethod
    def parse(cls, name: str) -> "Measure":
        try:
            return cls(name)
        except ValueError:
            raise UnknownMeasureError(
                f"unknown measure {name!r}; expected one of: "
                + ", ".join(m.value for m in cls)
            ) from None

    def __str__(self) -> str:
        return self.value


class CosineMode(Enum):
    """How cosine pairs numerator and denominator; see `cosine`."""

    PAPER_COMPAT = "paper_compat"
    CONSISTENT = "consistent"

    @classmethod
    def parse(cls, name: str) -> "CosineMode":
        try:
            return cls(name)
        except ValueError:
            raise UnknownMeasureError(
                f"unknown cosine mode {name!r}; expected one of: "
                + ", ".join(m.value for m in cls)
            ) from None

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class QueryVector:
    """A query in both weightings the measures need.

    raw: one weight per distinct query term — the term's idf.  Presence
    weighting: repeating a term in the query does not raise its raw weight.
    Inner product, Jaccard, and Dice consume this channel.

    cosine_normalized: (tf / max_tf) x idf per term, where max_tf is the
    largest term frequency in the query.  Cosine's length normalization
    uses this channel.

    Terms with idf 0 (unknown, or present in every document) are omitted
    from both channels.
    """

    raw: WeightedVector
    cosine_normalized: WeightedVector
    max_tf: int

    @classmethod
    def from_raw(cls, vector: WeightedVector) -> "QueryVector":
        """Wrap a plain vector so both channels are the vector itself.

        Handy for direct vector-vs-vector comparison (self-similarity is
        then exactly 1.0 under cosine/Jaccard/Dice).
        """
        return cls(raw=dict(vector), cosine_normalized=dict(vector), max_tf=1)


def inner_product(d: WeightedVector, q: WeightedVector) -> float:
    """Sum of products over shared terms; 0 when nothing is shared."""
    if len(q) < len(d):
        return sum(w * d[t] for t, w in q.items() if t in d)
    return sum(w * q[t] for t, w in d.items() if t in q)


def norm(v: WeightedVector) -> float:
    """Euclidean length; 0 for the empty vector."""
    return math.sqrt(sum(w * w for w in v.values()))


def cosine(d: WeightedVector, q: QueryVector, mode: CosineMode = CosineMode.CONSISTENT) -> float:
    """inner / (|d| x |q|), with the query length always taken from the
    cosine_normalized channel.

    paper_compat: numerator uses the RAW query channel.  This mixes the two
    query weightings but matches score tables produced under that legacy
    convention.

    consistent (default): numerator uses cosine_normalized too, so the
    measure is a true cosine — self-similarity 1.0, invariant under positive
    scaling of the document vector.
    """
    dn = norm(d)
    qn = norm(q.cosine_normalized)
    if dn == 0.0 or qn == 0.0:
        return 0.0
    q_channel = q.raw if mode is CosineMode.PAPER_COMPAT else q.cosine_normalized
    return inner_product(d, q_channel) / (dn * qn)


def jaccard(d: WeightedVector, q: WeightedVector) -> float:
    """inner / (Σd² + Σq² − inner) over the raw query weights."""
    inner = inner_product(d, q)
    denominator = _sum_sq(d) + _sum_sq(q) - inner
    if denominator <= 0.0:
        return 0.0
    return inner / denominator


def dice(d: WeightedVector, q: WeightedVector) -> float:
    """2·inner / (Σd² + Σq²) over the raw query weights."""
    denominator = _sum_sq(d) + _sum_sq(q)
    if denominator <= 0.0:
        return 0.0
    return 2.0 * inner_product(d, q) / denominator


def score(
    d: WeightedVector,
    q: QueryVector,
    measure: Measure,
    cosine_mode: CosineMode = CosineMode.CONSISTENT,
) -> float:
    """Dispatch to one measure.  InnerProduct/Jaccard/Dice use q.raw."""
    if measure is Measure.INNER_PRODUCT:
        return inner_product(d, q.raw)
    if measure is Measure.COSINE:
        return cosine(d, q, cosine_mode)
    if measure is Measure.JACCARD:
        return jaccard(d, q.raw)
    if measure is Measure.DICE:
        return dice(d, q.raw)
    raise UnknownMeasureError(f"unknown measure {measure!r}")


def _sum_sq(v: WeightedVector) -> float:
    return sum(w * w for w in v.values())
