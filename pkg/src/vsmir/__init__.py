"""vsmir: vector-space-model text retrieval.

Tokenize -> normalize -> stop-word removal -> inverted index with tf-idf
weights -> inner product / cosine / Jaccard / Dice ranking -> interactive
precision/recall feedback, with a file-backed repository, an HTTP service,
and a CLI on top.
"""

from .errors import (
    DocumentNotInRunError,
    EmptyCorpusError,
    EvalFileError,
    IndexFormatError,
    RepositoryLockedError,
    StoreIntegrityError,
    UnknownClassificationError,
    UnknownDocumentError,
    UnknownMeasureError,
    UnknownRunError,
    VsmError,
)
from .evaluation import (
    BatchEvalReport,
    EvalMetrics,
    RelevanceJudgment,
    batch_eval,
    metrics_for_run,
    parse_qrels,
    parse_queries,
)
from .index import (
    CorpusStats,
    Document,
    DocumentId,
    InvertedIndex,
    Posting,
    PostingsList,
    WeightedVector,
)
from .search import QueryRun, SearchRequest, SearchResult, build_query_vector, execute, score_request
from .similarity import (
    CosineMode,
    Measure,
    QueryVector,
    cosine,
    dice,
    inner_product,
    jaccard,
    norm,
    score,
)
from .store import Repository
from .textpipe import (
    NormalizerConfig,
    StopList,
    TextPipeline,
    Token,
    normalize,
    remove_stopwords,
    tokenize,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # errors
    "VsmError",
    "EmptyCorpusError",
    "UnknownDocumentError",
    "UnknownClassificationError",
    "UnknownMeasureError",
    "IndexFormatError",
    "RepositoryLockedError",
    "StoreIntegrityError",
    "UnknownRunError",
    "DocumentNotInRunError",
    "EvalFileError",
    # textpipe
    "Token",
    "NormalizerConfig",
    "StopList",
    "TextPipeline",
    "tokenize",
    "normalize",
    "remove_stopwords",
    # index
    "DocumentId",
    "WeightedVector",
    "Document",
    "Posting",
    "PostingsList",
    "CorpusStats",
    "InvertedIndex",
    # similarity
    "Measure",
    "CosineMode",
    "QueryVector",
    "inner_product",
    "norm",
    "cosine",
    "jaccard",
    "dice",
    "score",
    # search
    "SearchRequest",
    "SearchResult",
    "QueryRun",
    "build_query_vector",
    "score_request",
    "execute",
    # evaluation
    "RelevanceJudgment",
    "EvalMetrics",
    "BatchEvalReport",
    "metrics_for_run",
    "batch_eval",
    "parse_queries",
    "parse_qrels",
    # store / service
    "Repository",
]
