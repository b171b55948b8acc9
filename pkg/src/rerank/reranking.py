"""
Two-stage re-ranking: round-one click feedback first, embedding similarity on top.
"""

import logging
from dataclasses import dataclass, field

from configuration import RerankConfig
from query.run import Run
from rerank.base_reranker import BaseReranker
from rerank.click_reranker import ClickBoostReranker
from rerank.clicks import ClickLog
from rerank.embedding_reranker import EmbeddingBoostReranker
from rerank.embeddings import EmbeddingStore


@dataclass
class RerankSummary:
    queries: int = 0
    stages: dict[str, dict] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"queries": self.queries, "stages": self.stages}


def build_stages(click_log: ClickLog | None, store: EmbeddingStore | None, config: RerankConfig) -> list[BaseReranker]:
    stages: list[BaseReranker] = []
    if click_log is not None and len(click_log):
        stages.append(ClickBoostReranker(click_log, config))
    if store is not None and len(store):
        stages.append(EmbeddingBoostReranker(store, config))
    return stages


def rerank_pipeline(
    run: Run, click_log: ClickLog | None, store: EmbeddingStore | None, config: RerankConfig
) -> tuple[Run, RerankSummary]:
    """Apply each stage exactly once per query; ranks are implicit in list order."""
    summary = RerankSummary(queries=len(run))
    stages = build_stages(click_log, store, config) if config.enabled else []
    if not stages:
        return Run(tag=run.tag, rankings={qid: list(entries) for qid, entries in run.rankings.items()}), summary

    reranked = Run(tag=run.tag)
    for query_id, ranking in run.rankings.items():
        for stage in stages:
            ranking = stage.rerank(ranking, query_id)
        reranked.rankings[query_id] = ranking

    summary.stages = {stage.name: stage.summary() for stage in stages}
    for stage in stages:
        if stage.warnings:
            logging.warning(f"{stage.name}: {stage.warnings} queries could not be re-ranked")
    logging.info(f"Re-ranking finished: {summary.to_dict()}")
    return reranked, summary
