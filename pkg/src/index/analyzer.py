"""
Language-aware text analysis: tokenizing, casefolding, stopword removal and optional stemming.
"""

import re
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

LANGUAGES = ("de", "en", "neutral")
STOPWORDS_DIR = Path(__file__).resolve().parent / "stopwords"
STOPWORDS_VERSION = "1"

# maximal runs of Unicode letters or digits
TOKEN_PATTERN = re.compile(r"[^\W_]+", re.UNICODE)

_SNOWBALL_LANGUAGES = {"de": "german", "en": "english"}


def tokenize(text: str | None) -> list[str]:
    if not text:
        return []
    return [token.casefold() for token in TOKEN_PATTERN.findall(text)]


@lru_cache(maxsize=None)
def load_stopwords(language: str) -> frozenset[str]:
    if language not in LANGUAGES:
        raise ValueError(f"Unsupported analyzer language '{language}'")
    if language == "neutral":
        return frozenset()
    with open(STOPWORDS_DIR / f"{language}.txt", encoding="utf-8") as f:
        return frozenset(line.strip().casefold() for line in f if line.strip() and not line.startswith("#"))


@dataclass(frozen=True)
class Analyzer:
    language: str = "neutral"
    stopwords: frozenset[str] = field(default_factory=frozenset)
    stem: bool = False

    @classmethod
    def for_language(cls, language: str, stem: bool = False) -> "Analyzer":
        return cls(language=language, stopwords=load_stopwords(language), stem=stem)

    def analyze(self, text: str | None) -> list[str]:
        tokens = [token for token in tokenize(text) if token not in self.stopwords]
        if self.stem and self.language in _SNOWBALL_LANGUAGES:
            stemmer = _stemmer(self.language)
            tokens = [stemmer.stem(token) for token in tokens]
        return tokens


@lru_cache(maxsize=None)
def _stemmer(language: str):
    from nltk.stem.snowball import SnowballStemmer

    return SnowballStemmer(_SNOWBALL_LANGUAGES[language])


@lru_cache(maxsize=None)
def get_analyzer(language: str, stem: bool = False) -> Analyzer:
    return Analyzer.for_language(language, stem=stem)


def analyze(text: str | None, language: str) -> list[str]:
    return get_analyzer(language).analyze(text)
