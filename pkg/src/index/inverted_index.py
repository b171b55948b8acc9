"""
Fielded inverted index over dataset records with per-field BM25 scoring.

Each field is treated as its own collection: document counts, document frequencies and
average lengths are all kept per field.
"""

import json
import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from configuration import Bm25Params
from corpus.records import DatasetRecord
from exceptions import DataError
from index.analyzer import get_analyzer
from index.schema import FieldSchema
from query.fielded import FieldedQuery
from query.run import RankedEntry, sort_entries

INDEX_FORMAT = "dataset-recommender-index"
INDEX_FORMAT_VERSION = 1


class UnknownFieldError(KeyError):
    pass


class UnknownDocumentError(KeyError):
    pass


@dataclass
class FieldIndex:
    postings: dict[str, dict[str, int]] = field(default_factory=dict)
    lengths: dict[str, int] = field(default_factory=dict)
    total_length: int = field(init=False, default=0)

    def __post_init__(self):
        self.total_length = sum(self.lengths.values())

    def add(self, doc_id: str, tokens: list[str]) -> None:
        self.lengths[doc_id] = len(tokens)
        self.total_length += len(tokens)
        for term, tf in Counter(tokens).items():
            self.postings.setdefault(term, {})[doc_id] = tf

    @property
    def doc_count(self) -> int:
        return len(self.lengths)

    @property
    def avg_length(self) -> float:
        return self.total_length / len(self.lengths) if self.lengths else 0.0

    def document_frequency(self, term: str) -> int:
        return len(self.postings.get(term, ()))


@dataclass
class InvertedIndex:
    schema: FieldSchema = field(default_factory=FieldSchema)
    params: Bm25Params = field(default_factory=Bm25Params)
    fields: dict[str, FieldIndex] = field(default_factory=dict)
    documents: dict[str, DatasetRecord] = field(default_factory=dict)

    def field_index(self, field_name: str) -> FieldIndex:
        if field_name not in self.schema:
            raise UnknownFieldError(field_name)
        return self.fields.setdefault(field_name, FieldIndex())

    def __len__(self) -> int:
        return len(self.documents)


def build_index(
    datasets: Iterable[DatasetRecord], schema: FieldSchema | None = None, params: Bm25Params | None = None
) -> InvertedIndex:
    schema = schema or FieldSchema()
    index = InvertedIndex(schema=schema, params=params or Bm25Params())
    index.fields = {name: FieldIndex() for name in schema.fields}

    for record in datasets:
        if record.id in index.documents:
            raise DataError(f"Duplicate dataset id '{record.id}' while building the index")
        index.documents[record.id] = record
        for field_name, language in schema.fields.items():
            analyzer = get_analyzer(language, schema.stem)
            tokens = [token for text in schema.field_text(record, field_name) for token in analyzer.analyze(text)]
            if not tokens:
                continue
            index.fields[field_name].add(record.id, tokens)

    logging.info(f"Indexed {len(index.documents)} datasets over {len(schema.fields)} fields")
    return index


def field_statistics(index: InvertedIndex) -> dict[str, dict]:
    return {
        name: {
            "doc_count": field_index.doc_count,
            "avg_length": field_index.avg_length,
            "terms": len(field_index.postings),
        }
        for name, field_index in sorted(index.fields.items())
    }


def idf(field_index: FieldIndex, term: str) -> float:
    n = field_index.doc_count
    df = field_index.document_frequency(term)
    return math.log(1 + (n - df + 0.5) / (df + 0.5))


def bm25_term_score(
    index: InvertedIndex, field_name: str, term: str, doc_id: str, params: Bm25Params | None = None
) -> float:
    params = params or index.params
    field_index = index.field_index(field_name)
    if doc_id not in index.documents:
        raise UnknownDocumentError(doc_id)
    tf = field_index.postings.get(term, {}).get(doc_id, 0)
    if tf == 0:
        return 0.0
    length = field_index.lengths[doc_id]
    norm = params.k1 * (1 - params.b + params.b * length / field_index.avg_length)
    return idf(field_index, term) * tf * (params.k1 + 1) / (tf + norm)


def search(index: InvertedIndex, query: FieldedQuery, top_k: int) -> list[RankedEntry]:
    """Sum of boosted clause scores; only documents scoring above zero are ranked."""
    if top_k < 1:
        raise ValueError("top_k must be positive")
    for clause in query.clauses:
        if clause.field not in index.schema:
            raise UnknownFieldError(clause.field)

    scores: dict[str, float] = {}
    for clause in query.clauses:
        if clause.boost == 0:
            continue
        field_index = index.field_index(clause.field)
        for term in clause.terms:
            for doc_id in field_index.postings.get(term, {}):
                score = clause.boost * bm25_term_score(index, clause.field, term, doc_id)
                scores[doc_id] = scores.get(doc_id, 0.0) + score

    entries = [RankedEntry(doc_id, score) for doc_id, score in scores.items() if score > 0]
    return sort_entries(entries)[:top_k]


def save_index(index: InvertedIndex, path: str | Path) -> None:
    document = {
        "format": INDEX_FORMAT,
        "version": INDEX_FORMAT_VERSION,
        "params": index.params.model_dump(),
        "schema": index.schema.to_dict(),
        "fields": {
            name: {"lengths": field_index.lengths, "postings": field_index.postings}
            for name, field_index in index.fields.items()
        },
        "documents": [
            index.documents[doc_id].model_dump(mode="json", exclude_none=True) for doc_id in sorted(index.documents)
        ],
    }
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(json.dumps(document, ensure_ascii=False, sort_keys=True, separators=(",", ":")) + "\n")


def load_index(path: str | Path) -> InvertedIndex:
    try:
        with open(path, encoding="utf-8") as f:
            document = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise DataError(f"Cannot read index file '{path}': {e}") from e
    if document.get("format") != INDEX_FORMAT or document.get("version") != INDEX_FORMAT_VERSION:
        raise DataError(f"Unsupported index format in '{path}'")

    index = InvertedIndex(
        schema=FieldSchema.from_dict(document["schema"]),
        params=Bm25Params(**document["params"]),
        fields={
            name: FieldIndex(postings=data["postings"], lengths=data["lengths"])
            for name, data in document["fields"].items()
        },
        documents={},
    )
    for payload in document["documents"]:
        record = DatasetRecord.model_validate(payload)
        index.documents[record.id] = record
    return index
