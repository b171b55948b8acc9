"""
Run evaluation against qrels and Table-style rendering of the results.
"""

import io
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

from rich.console import Console
from rich.table import Table

from evaluation.metrics import average_precision, ndcg, precision_at_k, recall_at_k, rel_ret
from evaluation.qrels import Qrels
from exceptions import DataError
from query.run import Run

METRICS = ("map", "ndcg", "P@5", "P@10", "R@10", "rel_ret", "rel_ret_frac")
COLUMN_LABELS = {"map": "map", "ndcg": "nDCG", "P@5": "P@5", "P@10": "P@10", "R@10": "R@10",
                 "rel_ret": "rel_ret", "rel_ret_frac": "rel_ret (frac)"}


@dataclass
class MetricReport:
    run_tag: str
    per_query: dict[str, dict[str, float | None]] = field(default_factory=dict)
    means: dict[str, float | None] = field(default_factory=dict)

    @property
    def query_count(self) -> int:
        return len(self.per_query)

    def to_dict(self) -> dict:
        return {
            "run": self.run_tag,
            "query_count": self.query_count,
            "means": self.means,
            "per_query": {query_id: self.per_query[query_id] for query_id in sorted(self.per_query)},
        }

    @classmethod
    def from_dict(cls, data: dict) -> "MetricReport":
        return cls(run_tag=data["run"], per_query=dict(data["per_query"]), means=dict(data["means"]))

    def save(self, path: str | Path) -> None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n", "utf-8")


def _mean(values: list[float | None]) -> float | None:
    defined = [value for value in values if value is not None]
    return sum(defined) / len(defined) if defined else None


def evaluate_query(ranking: list[str], qrels: Qrels, query_id: str) -> dict[str, float | None]:
    count, fraction = rel_ret(ranking, qrels, query_id)
    return {
        "map": average_precision(ranking, qrels, query_id),
        "ndcg": ndcg(ranking, qrels, query_id),
        "P@5": precision_at_k(ranking, qrels, query_id, 5),
        "P@10": precision_at_k(ranking, qrels, query_id, 10),
        "R@10": recall_at_k(ranking, qrels, query_id, 10),
        "rel_ret": float(count),
        "rel_ret_frac": fraction,
    }


def evaluate_run(run: Run, qrels: Qrels) -> MetricReport:
    """Per-query metrics and arithmetic means over the run's queries that have qrels."""
    query_ids = sorted(query_id for query_id in run.rankings if query_id in qrels)
    if not query_ids:
        raise DataError(f"Run '{run.tag}' shares no queries with the qrels")

    report = MetricReport(run_tag=run.tag)
    for query_id in query_ids:
        report.per_query[query_id] = evaluate_query(run.doc_ids(query_id), qrels, query_id)
    report.means = {metric: _mean([row[metric] for row in report.per_query.values()]) for metric in METRICS}
    logging.info(f"Evaluated run '{run.tag}' on {report.query_count} queries")
    return report


def _number(value: float | None) -> str:
    return "undefined" if value is None else f"{value:.3f}"


def render_table(table: Table) -> str:
    buffer = io.StringIO()
    console = Console(file=buffer, width=160, color_system=None, force_terminal=False, legacy_windows=False)
    console.print(table)
    return buffer.getvalue()


def format_metric_report(report: MetricReport) -> str:
    table = Table(title=f"Evaluation of {report.run_tag} ({report.query_count} queries)")
    table.add_column("query")
    for metric in METRICS:
        table.add_column(COLUMN_LABELS[metric], justify="right")
    for query_id in sorted(report.per_query):
        table.add_row(query_id, *(_number(report.per_query[query_id][metric]) for metric in METRICS))
    table.add_row("all", *(_number(report.means[metric]) for metric in METRICS), style="bold")
    return render_table(table)


@dataclass
class ComparisonRow:
    run: str
    reranked: bool | None
    topic_boost: float | None
    abstract_boost: float | None
    report: MetricReport


def compare_runs(rows: list[ComparisonRow]) -> str:
    """Side-by-side table of system settings and their mean metrics."""
    table = Table(title="Evaluation results for different system settings")
    for column in ("Run", "re-ranked", "topic boost", "abstract boost"):
        table.add_column(column, justify="right" if "boost" in column else "left")
    for metric in ("map", "ndcg", "P@5", "P@10", "R@10", "rel_ret_frac"):
        table.add_column(COLUMN_LABELS[metric] if metric != "rel_ret_frac" else "rel_ret", justify="right")
    for row in rows:
        means = row.report.means
        table.add_row(
            row.run,
            "-" if row.reranked is None else str(row.reranked),
            "-" if row.topic_boost is None else f"{row.topic_boost:g}",
            "-" if row.abstract_boost is None else f"{row.abstract_boost:g}",
            *(_number(means[metric]) for metric in ("map", "ndcg", "P@5", "P@10", "R@10", "rel_ret_frac")),
        )
    return render_table(table)
