"""
Base class for boost re-rankers applied on top of baseline rankings.
"""

import logging
from abc import ABC, abstractmethod

from query.run import RankedEntry, sort_entries


class BaseReranker(ABC):
    """
    Adds a static boost to every matched document of a ranking and re-sorts it.

    Documents are never added or removed; only their scores and order change.
    """

    name = "base"

    def __init__(self, boost: float):
        if boost <= 0:
            raise ValueError("Re-ranking boost must be positive.")
        self.boost = boost
        self.warnings = 0
        self.boosted = 0

    @abstractmethod
    def _matches(self, ranking: list[RankedEntry], query_id: str) -> set[str]:
        """Doc ids of the ranking that receive the boost."""

    def rerank(self, ranking: list[RankedEntry], query_id: str) -> list[RankedEntry]:
        matches = self._matches(ranking, query_id)
        if not matches:
            return list(ranking)
        self.boosted += len(matches)
        logging.debug(f"{self.name}: boosting {sorted(matches)} for query {query_id}")
        return sort_entries(
            [
                RankedEntry(entry.doc_id, entry.score + self.boost) if entry.doc_id in matches else entry
                for entry in ranking
            ]
        )

    def summary(self) -> dict:
        return {"boosted": self.boosted, "warnings": self.warnings}
