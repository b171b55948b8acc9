"""
Controlled topic vocabulary and title-match topic expansion.
"""

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from corpus.loader import RecordCollection
from corpus.records import DatasetRecord
from index.analyzer import load_stopwords, tokenize

LANGUAGES = ("de", "en")


@dataclass
class TopicVocabulary:
    de: set[str] = field(default_factory=set)
    en: set[str] = field(default_factory=set)

    def terms(self, language: str) -> set[str]:
        return getattr(self, language)

    def sizes(self) -> tuple[int, int]:
        return len(self.de), len(self.en)

    def to_dict(self) -> dict:
        return {
            "provenance": "collected from assigned topics in the corpus",
            "de": sorted(self.de),
            "en": sorted(self.en),
        }


@dataclass(frozen=True)
class TopicAssignment:
    dataset_id: str
    term: str
    language: str


@dataclass
class ExpansionReport:
    counts: dict[str, int] = field(default_factory=lambda: {language: 0 for language in LANGUAGES})
    assignments: list[TopicAssignment] = field(default_factory=list)

    def add(self, assignment: TopicAssignment) -> None:
        self.assignments.append(assignment)
        self.counts[assignment.language] += 1

    def to_dict(self) -> dict:
        return {
            "counts": dict(self.counts),
            "assignments": [
                {"id": a.dataset_id, "term": a.term, "language": a.language} for a in self.assignments
            ],
        }

    def save(self, path: str | Path) -> None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(self.to_dict(), ensure_ascii=False, indent=2, sort_keys=True) + "\n", "utf-8")


def guess_term_language(term: str, german_stopwords: frozenset[str]) -> str:
    """German when any token of the term is a German stopword, English otherwise."""
    return "de" if german_stopwords.intersection(tokenize(term)) else "en"


def build_topic_vocabulary(publications: Iterable, datasets: Iterable) -> TopicVocabulary:
    vocabulary = TopicVocabulary()
    # words on both lists ("in", "an") say nothing about the language
    german_stopwords = load_stopwords("de") - load_stopwords("en")

    for record in [*publications, *datasets]:
        for term in record.topics:
            term = term.strip()
            if not term:
                continue
            language = record.language if record.language in LANGUAGES else guess_term_language(
                term, german_stopwords
            )
            vocabulary.terms(language).add(term)
        # language variants are already labeled
        for language in LANGUAGES:
            for term in getattr(record, f"topic_{language}", []):
                if term.strip():
                    vocabulary.terms(language).add(term.strip())

    logging.info(f"Built topic vocabulary with {len(vocabulary.de)} German and {len(vocabulary.en)} English terms")
    return vocabulary


def _titles(record: DatasetRecord, language: str) -> list[str]:
    titles = [record.text(f"title_{language}")]
    if record.language in (None, language):
        titles.append(record.title)
    return [title for title in titles if title]


def _ngrams(tokens: list[str], max_n: int) -> set[tuple[str, ...]]:
    grams = set()
    for n in range(1, max_n + 1):
        for start in range(len(tokens) - n + 1):
            grams.add(tuple(tokens[start:start + n]))
    return grams


def expand_topics(
    datasets: RecordCollection[DatasetRecord], vocabulary: TopicVocabulary
) -> tuple[RecordCollection[DatasetRecord], ExpansionReport]:
    """
    Assign vocabulary terms that occur in a dataset's title to ``ext_topic_<lang>``.

    Matching is casefolded and aligned to token boundaries; a multi-word term has to
    appear as a contiguous token sequence. Terms already among the dataset's topics are
    not assigned again.
    """
    report = ExpansionReport()
    lookups: dict[str, dict[tuple[str, ...], set[str]]] = {}
    for language in LANGUAGES:
        lookup: dict[tuple[str, ...], set[str]] = {}
        for term in vocabulary.terms(language):
            key = tuple(tokenize(term))
            if key:
                lookup.setdefault(key, set()).add(term)
        lookups[language] = lookup

    records = {}
    for record in datasets:
        original = {topic.casefold() for topic in record.topics}
        update = {}
        for language in LANGUAGES:
            lookup = lookups[language]
            max_n = max((len(key) for key in lookup), default=0)
            matched: set[str] = set()
            for title in _titles(record, language):
                for gram in _ngrams(tokenize(title), max_n) & lookup.keys():
                    matched |= lookup[gram]

            existing = getattr(record, f"ext_topic_{language}")
            new_terms = sorted(
                term for term in matched if term.casefold() not in original and term not in existing
            )
            for term in new_terms:
                report.add(TopicAssignment(record.id, term, language))
            if new_terms:
                update[f"ext_topic_{language}"] = sorted(set(existing) | set(new_terms))
        records[record.id] = record.model_copy(update=update) if update else record

    logging.info(f"Topic expansion assigned {report.counts['de']} German and {report.counts['en']} English topics")
    return datasets.replace(records), report
