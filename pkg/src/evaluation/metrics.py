"""
Ranking metrics with trec_eval semantics.

Binary metrics treat a gain above zero as relevant; nDCG uses the raw gains with a
log2(rank + 1) discount.
"""

import math
from typing import Sequence

from evaluation.qrels import Qrels


class UnknownQueryError(KeyError):
    pass


def _relevant(qrels: Qrels, query_id: str) -> set[str]:
    if query_id not in qrels:
        raise UnknownQueryError(query_id)
    return qrels.relevant(query_id)


def precision_at_k(ranking: Sequence[str], qrels: Qrels, query_id: str, k: int) -> float:
    if k < 1:
        raise ValueError("k must be at least 1")
    relevant = _relevant(qrels, query_id)
    return sum(1 for doc_id in ranking[:k] if doc_id in relevant) / k


def recall_at_k(ranking: Sequence[str], qrels: Qrels, query_id: str, k: int) -> float | None:
    """None when the query has no relevant documents."""
    relevant = _relevant(qrels, query_id)
    if not relevant:
        return None
    return sum(1 for doc_id in ranking[:k] if doc_id in relevant) / len(relevant)


def average_precision(ranking: Sequence[str], qrels: Qrels, query_id: str) -> float:
    relevant = _relevant(qrels, query_id)
    if not relevant:
        return 0.0
    hits = 0
    total = 0.0
    for rank, doc_id in enumerate(ranking, start=1):
        if doc_id in relevant:
            hits += 1
            total += hits / rank
    return total / len(relevant)


def ndcg(ranking: Sequence[str], qrels: Qrels, query_id: str) -> float:
    if query_id not in qrels:
        raise UnknownQueryError(query_id)
    gains = qrels.gains(query_id)
    dcg = sum(gains.get(doc_id, 0.0) / math.log2(rank + 1) for rank, doc_id in enumerate(ranking, start=1))
    ideal = sorted((gain for gain in gains.values() if gain > 0), reverse=True)
    idcg = sum(gain / math.log2(rank + 1) for rank, gain in enumerate(ideal, start=1))
    return dcg / idcg if idcg > 0 else 0.0


def rel_ret(ranking: Sequence[str], qrels: Qrels, query_id: str) -> tuple[int, float | None]:
    """Relevant documents retrieved anywhere in the ranking, as count and as fraction of all relevant."""
    relevant = _relevant(qrels, query_id)
    count = len(relevant.intersection(ranking))
    return count, (count / len(relevant) if relevant else None)
