from configuration import RerankConfig
from query.run import RankedEntry
from rerank.base_reranker import BaseReranker
from rerank.clicks import ClickLog


class ClickBoostReranker(BaseReranker):
    """
    Boosts datasets clicked for the same seed publication in an earlier round.

    Clicked datasets missing from the ranking are not injected.
    """

    name = "click_boost"

    def __init__(self, click_log: ClickLog, config: RerankConfig):
        super().__init__(config.click_boost)
        self.clicked = click_log.by_query()

    def _matches(self, ranking: list[RankedEntry], query_id: str) -> set[str]:
        clicked = self.clicked.get(query_id, set())
        return {entry.doc_id for entry in ranking if entry.doc_id in clicked}


def click_boost(
    ranking: list[RankedEntry], click_log: ClickLog, query_id: str, config: RerankConfig
) -> list[RankedEntry]:
    return ClickBoostReranker(click_log, config).rerank(ranking, query_id)
