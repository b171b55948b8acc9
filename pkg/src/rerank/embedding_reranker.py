import logging

from configuration import RerankConfig
from query.run import RankedEntry
from rerank.base_reranker import BaseReranker
from rerank.embeddings import EmbeddingStore, knn_neighbors


class EmbeddingBoostReranker(BaseReranker):
    """Boosts the ranked datasets nearest to the seed publication's embedding."""

    name = "embedding_boost"

    def __init__(self, store: EmbeddingStore, config: RerankConfig):
        super().__init__(config.embedding_boost)
        self.store = store
        self.neighbors = config.neighbors

    def _matches(self, ranking: list[RankedEntry], query_id: str) -> set[str]:
        if not ranking:
            return set()
        if query_id not in self.store:
            self.warnings += 1
            logging.debug(f"No embedding for seed publication {query_id}")
            return set()
        return set(knn_neighbors(self.store, query_id, self.neighbors, [entry.doc_id for entry in ranking]))


def embedding_boost(
    ranking: list[RankedEntry], store: EmbeddingStore, seed_id: str, config: RerankConfig
) -> list[RankedEntry]:
    return EmbeddingBoostReranker(store, config).rerank(ranking, seed_id)
