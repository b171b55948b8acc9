import logging
from dataclasses import dataclass
from typing import Iterable

from configuration import QueryConfig
from corpus.records import PublicationRecord
from index.inverted_index import InvertedIndex, search
from query.builder import build_query
from query.run import Run


@dataclass
class PrecomputeSummary:
    queries: int = 0
    empty_queries: int = 0
    empty_rankings: int = 0

    def to_dict(self) -> dict:
        return {"queries": self.queries, "empty_queries": self.empty_queries, "empty_rankings": self.empty_rankings}


def precompute_all(
    index: InvertedIndex,
    publications: Iterable[PublicationRecord],
    config: QueryConfig,
    top_k: int | None = None,
    tag: str = "bm25",
) -> tuple[Run, PrecomputeSummary]:
    """One ranked list per publication; publications without a usable query get an empty list."""
    top_k = top_k or config.top_k
    run = Run(tag=tag)
    summary = PrecomputeSummary()

    for publication in publications:
        summary.queries += 1
        query = build_query(publication, config, index.schema)
        if not query:
            summary.empty_queries += 1
            run.rankings[publication.id] = []
            continue
        ranking = search(index, query, top_k)
        if not ranking:
            summary.empty_rankings += 1
        run.rankings[publication.id] = ranking

    logging.info(f"Precomputed recommendations: {summary.to_dict()}")
    return run, summary
