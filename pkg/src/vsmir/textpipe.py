"""Text preparation: tokenization, Arabic-aware normalization, stop-word removal.

Raw text becomes a sequence of index terms in three stages: split into
tokens, normalize each surface form, drop stop words.  Everything here is a
pure function over immutable inputs; ``TextPipeline`` only bundles a
configuration so documents and queries are always prepared identically.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Collection, Iterable, Iterator

__all__ = [
    "Token",
    "NormalizerConfig",
    "StopList",
    "TextPipeline",
    "tokenize",
    "normalize",
    "remove_stopwords",
]

# Arabic combining marks: tashkeel and tanween (0610-061A, 064B-065F),
# superscript alef (0670), Quranic annotation signs (06D6-06ED).  They stay
# attached to their base letter during tokenization — Python's \w excludes
# category Mn, so a bare alphanumeric class would shred vowelled words —
# and are removed only when strip_diacritics is on.
_ARABIC_MARKS = "ؐ-ًؚ-ٰٟۖ-ۭ"

# A token is a maximal run of letters or digits; whitespace, underscore and
# every other punctuation codepoint separate tokens.  Combining marks never
# break a run.  Tatweel (U+0640) is a letter to Unicode and rides along.
_TOKEN_RE = re.compile(rf"(?:[^\W_]|[{_ARABIC_MARKS}])+")

_DIACRITIC_RE = re.compile(f"[{_ARABIC_MARKS}]")
_ALEF_FORM_RE = re.compile("[آأإ]")  # آ أ إ -> ا
_TATWEEL_RE = re.compile("ـ")


@dataclass(frozen=True)
class Token:
    """One index term candidate: surface form plus 0-based ordinal position."""

    surface: str
    position: int


@dataclass(frozen=True)
class NormalizerConfig:
    """Which normalizations to apply.  All off by default: full-word indexing.

    Every step is idempotent, so the composed normalization is too.
    """

    strip_diacritics: bool = False
    unify_alef_forms: bool = False
    strip_tatweel: bool = False
    case_fold: bool = False

    def as_dict(self) -> dict[str, bool]:
        return {
            "strip_diacritics": self.strip_diacritics,
            "unify_alef_forms": self.unify_alef_forms,
            "strip_tatweel": self.strip_tatweel,
            "case_fold": self.case_fold,
        }


def tokenize(text: str) -> list[Token]:
    """Split text into tokens, assigning 0-based positions in reading order."""
    return [
        Token(match.group(), position)
        for position, match in enumerate(_TOKEN_RE.finditer(text))
    ]


def normalize(surface: str, config: NormalizerConfig) -> str:
    """Normalize one surface form.  May return "" (caller drops such tokens)."""
    if config.strip_diacritics:
        surface = _DIACRITIC_RE.sub("", surface)
    if config.unify_alef_forms:
        surface = _ALEF_FORM_RE.sub("ا", surface)
    if config.strip_tatweel:
        surface = _TATWEEL_RE.sub("", surface)
    if config.case_fold:
        surface = surface.casefold()
    return surface


def remove_stopwords(tokens: Iterable[Token], stoplist: Collection[str]) -> list[Token]:
    """Drop tokens whose surface is in the stop list; order and positions kept.

    Membership is exact string equality, so tokens and stop list must have
    been normalized under the same config.
    """
    return [token for token in tokens if token.surface not in stoplist]


class StopList(Collection[str]):
    """An immutable set of stop words plus where it came from."""

    BUILTIN_NAMES = ("arabic", "english", "default")

    def __init__(self, words: Iterable[str], source: str = "custom"):
        self.words = frozenset(words)
        self.source = source

    @classmethod
    def from_file(cls, path: str | Path) -> "StopList":
        """Load a UTF-8 stop list: one word per line, '#' comments, blanks ignored."""
        words = cls._parse(Path(path).read_text("utf-8"))
        if not words:
            raise ValueError(f"stop list {str(path)!r} contains no words")
        return cls(words, source=str(path))

    @classmethod
    def builtin(cls, name: str) -> "StopList":
        """Load a shipped list: "arabic", "english", or "default" (their union)."""
        if name == "default":
            words = cls.builtin("arabic").words | cls.builtin("english").words
        elif name in cls.BUILTIN_NAMES:
            text = resources.files(__package__).joinpath(f"stoplists/{name}.txt").read_text("utf-8")
            words = cls._parse(text)
        else:
            raise ValueError(
                f"unknown built-in stop list {name!r}; expected one of: "
                + ", ".join(cls.BUILTIN_NAMES)
            )
        if not words:
            raise ValueError(f"built-in stop list {name!r} is empty")
        return cls(words, source=name)

    @staticmethod
    def _parse(text: str) -> frozenset[str]:
        words = set()
        for line in text.splitlines():
            word = line.strip()
            if word and not word.startswith("#"):
                words.add(word)
        return frozenset(words)

    def __contains__(self, word: object) -> bool:
        return word in self.words

    def __iter__(self) -> Iterator[str]:
        return iter(self.words)

    def __len__(self) -> int:
        return len(self.words)

    def __repr__(self) -> str:
        return f"StopList({len(self.words)} words from {self.source!r})"


class TextPipeline:
    """tokenize -> normalize -> remove stop words, under one fixed config.

    The stop list is normalized once, up front, with the same config applied
    to tokens, so membership tests compare like with like.
    """

    def __init__(
        self,
        normalizer: NormalizerConfig | None = None,
        stoplist: StopList | None = None,
    ):
        self.normalizer = normalizer if normalizer is not None else NormalizerConfig()
        self.stoplist = stoplist if stoplist is not None else StopList.builtin("default")
        self._stop_terms = frozenset(
            term for word in self.stoplist if (term := normalize(word, self.normalizer))
        )

    def run(self, text: str) -> list[Token]:
        """Full pipeline.  Tokens that normalize to "" are dropped silently."""
        normalized = []
        for token in tokenize(text):
            term = normalize(token.surface, self.normalizer)
            if term:
                normalized.append(Token(term, token.position))
        return remove_stopwords(normalized, self._stop_terms)

    def terms(self, text: str) -> list[str]:
        """Index terms only, in reading order."""
        return [token.surface for token in self.run(text)]

    def as_dict(self) -> dict:
        """JSON-ready config snapshot; round-trips through from_dict."""
        return {
            "normalizer": self.normalizer.as_dict(),
            "stoplist": {
                "source": self.stoplist.source,
                "words": sorted(self.stoplist.words),
            },
        }

    @classmethod
    def from_dict(cls, config: dict) -> "TextPipeline":
        normalizer = NormalizerConfig(**config["normalizer"])
        stoplist = StopList(config["stoplist"]["words"], source=config["stoplist"]["source"])
        return cls(normalizer, stoplist)
