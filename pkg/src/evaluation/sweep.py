"""
Pre-testing sweep: evaluate boost variants of the recommender on a pseudo test collection.
"""

import logging
from dataclasses import replace
from typing import Iterable

from configuration import PretestVariant, QueryConfig, RerankConfig
from corpus.records import PublicationRecord
from evaluation.qrels import Qrels
from evaluation.report import ComparisonRow, evaluate_run
from index.inverted_index import InvertedIndex
from query.precompute import precompute_all
from rerank.clicks import ClickLog
from rerank.embeddings import EmbeddingStore
from rerank.reranking import rerank_pipeline


def sweep(
    index: InvertedIndex,
    publications: Iterable[PublicationRecord],
    qrels: Qrels,
    variants: list[PretestVariant],
    query_config: QueryConfig,
    rerank_config: RerankConfig,
    click_log: ClickLog | None = None,
    store: EmbeddingStore | None = None,
) -> list[ComparisonRow]:
    """Evaluate each variant; re-ranked variants reuse the baseline run of the same boosts."""
    seeds = [publication for publication in publications if publication.id in qrels]
    baselines = {}
    rows = []
    for number, variant in enumerate(variants, start=1):
        key = (variant.topic_boost, variant.abstract_boost)
        if key not in baselines:
            config = query_config.with_boosts(topic=variant.topic_boost, abstract=variant.abstract_boost)
            baselines[key], _ = precompute_all(index, seeds, config, tag=f"run{number}")
        run = baselines[key]
        if variant.reranked:
            run, _ = rerank_pipeline(run, click_log, store, rerank_config)
        run = replace(run, tag=f"run{number}")
        report = evaluate_run(run, qrels)
        rows.append(ComparisonRow(str(number), variant.reranked, variant.topic_boost, variant.abstract_boost, report))
        logging.info(f"Variant {number} {variant.model_dump()}: nDCG {report.means['ndcg']}")
    return rows
