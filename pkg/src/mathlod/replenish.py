"""Terminology alignment: preprocessing, bag-of-tokens cosine and thresholded matching.

Terms are compared as term-frequency bags over normalized tokens.  For each
external term the best ontology term is reported together with a coarse
category that helps a reviewer decide whether the terms really coincide.
"""
from __future__ import annotations

import enum
import math
import os
import unicodedata
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Callable, Iterable, Mapping, Optional, Sequence

from .errors import MathLodError

__all__ = [
    "ReplenishError",
    "DegenerateInputError",
    "MatchConfigError",
    "Source",
    "Category",
    "Lemmatizer",
    "identity_lemmatizer",
    "dictionary_lemmatizer",
    "default_lemmatizer",
    "load_stop_words",
    "default_stop_words",
    "PreprocessConfig",
    "TermRecord",
    "MatchResult",
    "MatchSummary",
    "preprocess",
    "make_record",
    "read_term_list",
    "cosine",
    "match_terms",
    "summarize",
    "format_report",
    "DEFAULT_THRESHOLD",
    "STOPWORDS_ENV",
]

DEFAULT_THRESHOLD = 0.7
STOPWORDS_ENV = "MATHLOD_STOPWORDS"


class ReplenishError(MathLodError, ValueError):
    pass


class DegenerateInputError(ReplenishError):
    """A token bag is empty, so no similarity is defined."""


class MatchConfigError(ReplenishError):
    pass


class Source(str, enum.Enum):
    ONTOLOGY = "ontology"
    EXTERNAL = "external"


class Category(str, enum.Enum):
    EXACT = "exact"
    INCOMPLETE_LABEL = "incomplete_label"
    SPECIFIC_VS_GENERAL = "specific_vs_general"


# --------------------------------------------------------------------------
# normalizers

@dataclass(frozen=True)
class Lemmatizer:
    """A named token normalizer; ``fn`` maps one lowercase token to its lemma."""

    name: str
    fn: Callable[[str], str] = field(compare=False)

    def __call__(self, token: str) -> str:
        return self.fn(token)


identity_lemmatizer = Lemmatizer("identity", lambda tok: tok)


def dictionary_lemmatizer(table: Mapping[str, str], name: str = "dictionary") -> Lemmatizer:
    """Look tokens up in ``table``; unknown tokens are returned unchanged."""
    table = {k.lower(): v.lower() for k, v in table.items()}
    return Lemmatizer(name, lambda tok: table.get(tok, tok))


def _data_lines(text: str) -> list[str]:
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def _read_data(name: str) -> str:
    return resources.files("mathlod").joinpath("data").joinpath(name).read_text(encoding="utf-8")


def default_lemmatizer() -> Lemmatizer:
    table = {}
    for line in _data_lines(_read_data("lemmas-en.tsv")):
        form, lemma = line.split("\t")
        table[form] = lemma
    return dictionary_lemmatizer(table, "lemmas-en")


def load_stop_words(path: str | os.PathLike) -> frozenset:
    """Read a stop-word file: one word per line, ``#`` comments."""
    return frozenset(w.lower() for w in _data_lines(Path(path).read_text(encoding="utf-8")))


def default_stop_words() -> frozenset:
    """The stop words named by ``$MATHLOD_STOPWORDS``, else the bundled English list."""
    override = os.environ.get(STOPWORDS_ENV)
    if override:
        return load_stop_words(override)
    return frozenset(w.lower() for w in _data_lines(_read_data("stopwords-en.txt")))


@dataclass(frozen=True)
class PreprocessConfig:
    stop_words: frozenset = field(default_factory=default_stop_words)
    lemmatizer: Lemmatizer = field(default_factory=default_lemmatizer)
    lowercase: bool = True
    strip_punctuation: bool = True

    def __post_init__(self) -> None:
        words = frozenset(self.stop_words)
        if any(w != w.lower() for w in words):
            raise MatchConfigError("stop words must be lowercase")
        object.__setattr__(self, "stop_words", words)


# Dashes are category Pd already; listed for clarity about what splits tokens.
_SEPARATORS = frozenset("-‐‑‒–—―−")


def _is_punct(ch: str) -> bool:
    return ch in _SEPARATORS or unicodedata.category(ch).startswith("P")


def preprocess(raw: str, cfg: Optional[PreprocessConfig] = None) -> list[str]:
    """Normalize a term into tokens: case, punctuation, stop words, lemmas."""
    cfg = cfg or PreprocessConfig()
    text = raw.lower() if cfg.lowercase else raw
    if cfg.strip_punctuation:
        text = "".join(" " if _is_punct(ch) else ch for ch in text)
    tokens = []
    for tok in text.split():
        if tok.lower() in cfg.stop_words:
            continue
        tokens.append(cfg.lemmatizer(tok))
    return tokens


def cosine(a: Sequence[str], b: Sequence[str]) -> float:
    """Cosine of the term-frequency vectors of two token lists."""
    if not a or not b:
        raise DegenerateInputError("cosine needs two non-empty token lists")
    ca, cb = Counter(a), Counter(b)
    dot = sum(n * cb[t] for t, n in ca.items())
    if dot == 0:
        return 0.0
    norm = math.sqrt(sum(n * n for n in ca.values()) * sum(n * n for n in cb.values()))
    return min(1.0, dot / norm)


# --------------------------------------------------------------------------
# matching

@dataclass(frozen=True)
class TermRecord:
    raw: str
    source: Source
    tokens: tuple

    def __post_init__(self) -> None:
        object.__setattr__(self, "source", Source(self.source))
        object.__setattr__(self, "tokens", tuple(self.tokens))

    @property
    def degenerate(self) -> bool:
        return not self.tokens


def make_record(raw: str, source: Source | str, cfg: Optional[PreprocessConfig] = None) -> TermRecord:
    return TermRecord(raw, Source(source), tuple(preprocess(raw, cfg)))


def read_term_list(text: str, source: Source | str, cfg: Optional[PreprocessConfig] = None) -> list[TermRecord]:
    """One term per line; blank lines and ``#`` comments are skipped."""
    cfg = cfg or PreprocessConfig()
    return [make_record(line, source, cfg) for line in _data_lines(text)]


@dataclass(frozen=True)
class MatchResult:
    ontology_term: TermRecord
    external_term: TermRecord
    similarity: float
    matched: bool
    category: Optional[Category] = None


@dataclass(frozen=True)
class MatchSummary:
    external: int
    matched: int
    unmatched: int
    degenerate: int
    categories: Mapping[str, int]

    def line(self) -> str:
        cats = " ".join(f"{c.value}={self.categories.get(c.value, 0)}" for c in Category)
        return (f"# external={self.external} matched={self.matched} unmatched={self.unmatched} "
                f"degenerate={self.degenerate} {cats}")


def _categorize(a: Sequence[str], b: Sequence[str], similarity: float) -> Category:
    if similarity == 1.0 or Counter(a) == Counter(b):
        return Category.EXACT
    ca, cb = Counter(a), Counter(b)
    if not ca - cb or not cb - ca:
        return Category.INCOMPLETE_LABEL
    return Category.SPECIFIC_VS_GENERAL


def match_terms(
    ontology_terms: Sequence[TermRecord],
    external_terms: Sequence[TermRecord],
    threshold: float = DEFAULT_THRESHOLD,
    cfg: Optional[PreprocessConfig] = None,
) -> list[MatchResult]:
    """Best ontology term for each non-degenerate external term.

    Ties are broken by the ontology term's raw string.  ``cfg``, when given,
    re-tokenizes both lists; otherwise the records' own tokens are used.
    """
    if not 0.0 < threshold <= 1.0:
        raise MatchConfigError(f"threshold {threshold} is outside (0, 1]")
    if cfg is not None:
        ontology_terms = [make_record(t.raw, t.source, cfg) for t in ontology_terms]
        external_terms = [make_record(t.raw, t.source, cfg) for t in external_terms]
    candidates = sorted((t for t in ontology_terms if not t.degenerate), key=lambda t: t.raw)
    if not candidates:
        raise MatchConfigError("no usable ontology terms to match against")

    results = []
    for ext in external_terms:
        if ext.degenerate:
            continue
        best, best_sim = candidates[0], -1.0
        for cand in candidates:
            sim = cosine(ext.tokens, cand.tokens)
            if sim > best_sim:
                best, best_sim = cand, sim
        matched = best_sim >= threshold
        category = _categorize(ext.tokens, best.tokens, best_sim) if matched else None
        results.append(MatchResult(best, ext, best_sim, matched, category))
    return results


def summarize(results: Iterable[MatchResult], external_terms: Sequence[TermRecord] = ()) -> MatchSummary:
    results = list(results)
    matched = [r for r in results if r.matched]
    cats = Counter(r.category.value for r in matched)
    return MatchSummary(
        external=len(results),
        matched=len(matched),
        unmatched=len(results) - len(matched),
        degenerate=sum(1 for t in external_terms if t.degenerate),
        categories=dict(cats),
    )


def format_report(results: Sequence[MatchResult], external_terms: Sequence[TermRecord] = ()) -> str:
    """Tab-separated rows followed by one summary line."""
    lines = []
    for r in results:
        cat = r.category.value if r.category else "-"
        lines.append("\t".join([r.external_term.raw, r.ontology_term.raw, f"{r.similarity:.4f}",
                                "yes" if r.matched else "no", cat]))
    lines.append(summarize(results, external_terms).line())
    return "\n".join(lines) + "\n"
