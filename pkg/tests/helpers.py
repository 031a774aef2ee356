"""Test-only oracles: dense brute-force scoring and random corpus generation.

The engine scores through the inverted index (term-at-a-time over postings);
these helpers recompute everything densely over the full vocabulary so the
two paths can be compared. Kept out of the package on purpose.
"""

from __future__ import annotations

import math
import random

from vsmir import CosineMode, InvertedIndex, Measure, QueryVector

CLASS_POOL = ("alpha", "beta", "gamma")


def dense_scores(
    index: InvertedIndex,
    query: QueryVector,
    measure: Measure,
    cosine_mode: CosineMode = CosineMode.CONSISTENT,
) -> dict[int, float]:
    """Score every document against the query over the full vocabulary."""
    vocabulary = index.vocabulary()
    idf = {term: index.idf(term) for term in vocabulary}
    q_raw = [query.raw.get(term, 0.0) for term in vocabulary]
    q_norm = [query.cosine_normalized.get(term, 0.0) for term in vocabulary]
    q_raw_sq = sum(w * w for w in q_raw)
    q_norm_len = math.sqrt(sum(w * w for w in q_norm))

    scores: dict[int, float] = {}
    for doc in index.documents():
        d = [doc.terms.get(term, 0) * idf[term] for term in vocabulary]
        d_sq = sum(w * w for w in d)
        inner_raw = sum(dw * qw for dw, qw in zip(d, q_raw))
        if measure is Measure.INNER_PRODUCT:
            value = inner_raw
        elif measure is Measure.COSINE:
            d_len = math.sqrt(d_sq)
            if d_len == 0.0 or q_norm_len == 0.0:
                value = 0.0
            elif cosine_mode is CosineMode.PAPER_COMPAT:
                value = inner_raw / (d_len * q_norm_len)
            else:
                inner_norm = sum(dw * qw for dw, qw in zip(d, q_norm))
                value = inner_norm / (d_len * q_norm_len)
        elif measure is Measure.JACCARD:
            denominator = d_sq + q_raw_sq - inner_raw
            value = inner_raw / denominator if denominator > 0.0 else 0.0
        else:
            denominator = d_sq + q_raw_sq
            value = 2.0 * inner_raw / denominator if denominator > 0.0 else 0.0
        scores[doc.doc_id] = value
    return scores


def random_corpus(
    rng: random.Random,
    max_docs: int = 50,
    vocab_size: int = 200,
    force_common_term: bool = False,
) -> InvertedIndex:
    """A corpus of 1..max_docs documents over terms w000..w{vocab_size-1}.

    With force_common_term, one term is appended to every document so the
    df = N (idf 0) case is exercised.
    """
    index = InvertedIndex()
    vocabulary = [f"w{i:03d}" for i in range(vocab_size)]
    n_docs = rng.randint(1, max_docs)
    for i in range(n_docs):
        length = rng.randint(1, 30)
        words = rng.choices(vocabulary, k=length)
        if force_common_term:
            words.append("w000")
        index.add_document(f"doc{i}", rng.choice(CLASS_POOL), " ".join(words))
    return index


def random_query_text(rng: random.Random, vocab_size: int = 200) -> str:
    words = [f"w{rng.randrange(vocab_size):03d}" for _ in range(rng.randint(1, 8))]
    return " ".join(words)


def random_sparse_vector(rng: random.Random, max_terms: int = 12) -> dict[str, float]:
    terms = rng.sample([f"w{i:03d}" for i in range(40)], k=rng.randint(1, max_terms))
    return {term: rng.uniform(0.01, 5.0) for term in terms}


def relative_error(actual: float, expected: float) -> float:
    if expected == 0.0:
        return abs(actual)
    return abs(actual - expected) / abs(expected)
