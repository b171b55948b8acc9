from dataclasses import asdict, dataclass

from query.run import Run
from rerank.clicks import ClickLog


@dataclass
class ClickedRankAnalysis:
    clicked: int = 0
    not_ranked: int = 0
    same_position: int = 0
    different_position: int = 0

    def to_dict(self) -> dict:
        return asdict(self)


def clicked_rank_analysis(run: Run, reference_run: Run, click_log: ClickLog) -> ClickedRankAnalysis:
    """Where did ``run`` place the datasets users clicked, compared with ``reference_run``?"""
    analysis = ClickedRankAnalysis()
    for query_id, clicked in sorted(click_log.by_query().items()):
        positions = {doc_id: rank for rank, doc_id in enumerate(run.doc_ids(query_id), start=1)}
        reference = {doc_id: rank for rank, doc_id in enumerate(reference_run.doc_ids(query_id), start=1)}
        for doc_id in sorted(clicked):
            analysis.clicked += 1
            if doc_id not in positions:
                analysis.not_ranked += 1
            elif positions[doc_id] == reference.get(doc_id):
                analysis.same_position += 1
            else:
                analysis.different_position += 1
    return analysis
