"""Typed errors raised by the engine.

Every domain failure gets its own class so callers (service, CLI) can map
them to stable machine-readable codes without string matching.
"""

from __future__ import annotations


class VsmError(Exception):
    """Base class for all engine errors."""


class EmptyCorpusError(VsmError):
    """An operation needed at least one indexed document (N = 0)."""


class UnknownDocumentError(VsmError):
    """A document id is not (or no longer) present in the corpus."""


class UnknownClassificationError(VsmError):
    """A classification label is not registered by any current document."""


class UnknownMeasureError(VsmError, ValueError):
    """A similarity-measure or cosine-mode name failed to parse."""


class IndexFormatError(VsmError):
    """An index file is corrupt or carries an unsupported format version."""


class RepositoryLockedError(VsmError):
    """Another live process holds the repository lock."""


class StoreIntegrityError(VsmError):
    """A journal is corrupt or references entities that do not exist."""


class UnknownRunError(VsmError):
    """A run id does not match any persisted query run."""


class DocumentNotInRunError(VsmError):
    """A judgment targets a document that the run never retrieved."""


class EvalFileError(VsmError):
    """A queries or qrels file is malformed or unusable."""
