"""
Batch pipeline commands shared by the command line and the Keboola component.

Each command is a thin composition of library calls: it reads its inputs from the
configured paths, runs the library function and writes the resulting artifact.
Normalized corpus files in ``out_dir`` take precedence over the raw inputs once
``ingest`` has produced them, unless the raw path was given on the command line.
"""

import json
import logging
from pathlib import Path
from typing import Iterable

from keboola.component.exceptions import UserException

from configuration import PipelineConfig
from corpus.loader import load_datasets, load_publications, save_records
from corpus.topics import build_topic_vocabulary, expand_topics
from corpus.translation import apply_translations, load_translations
from evaluation.qrels import build_pseudo_qrels, load_candidates, write_qrels
from evaluation.report import ComparisonRow, MetricReport, compare_runs, evaluate_run, format_metric_report
from evaluation.sweep import sweep
from exceptions import DataError
from index.inverted_index import build_index, field_statistics, load_index, save_index
from index.schema import FieldSchema
from lab.analysis import clicked_rank_analysis
from lab.report import LabReport, aggregate, format_lab_report, position_click_histogram
from lab.session import read_sessions, write_sessions
from lab.simulator import simulate_lab
from query.precompute import precompute_all
from query.run import read_run, write_run
from rerank.clicks import click_log_from_sessions, load_click_log, save_click_log
from rerank.embeddings import load_embeddings
from rerank.reranking import rerank_pipeline
from serving import RecommendationStore

PUBLICATIONS_FILE = "publications.jsonl"
DATASETS_FILE = "datasets.jsonl"

BATCH_COMMANDS = {
    "ingest": "ingest",
    "expand-topics": "expand_topics",
    "index": "index",
    "recommend": "recommend",
    "pretest": "pretest",
    "sweep": "sweep",
    "simulate": "simulate",
    "report": "report",
}


def _read_json(path: Path) -> dict:
    try:
        with open(path, encoding="utf-8") as f:
            return json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise DataError(f"Cannot read report '{path}': {e}") from e


def _write_json(data: dict, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(data, ensure_ascii=False, indent=2, sort_keys=True) + "\n", "utf-8")


class Pipeline:
    def __init__(self, config: PipelineConfig, explicit_paths: Iterable[str] = ()):
        self.config = config
        # path keys given on the command line; these win over normalized artifacts
        self.explicit_paths = frozenset(explicit_paths)

    def execute(self, command: str, **options) -> str:
        """Run a batch command by its command-line name and render its result as text."""
        if command not in BATCH_COMMANDS:
            raise UserException(f"Unknown command '{command}', expected one of {sorted(BATCH_COMMANDS)}")
        logging.info(f"Running command '{command}'")
        result = getattr(self, BATCH_COMMANDS[command])(**options)
        return result if isinstance(result, str) else json.dumps(result, indent=2, sort_keys=True)

    def _required(self, key: str) -> str:
        value = getattr(self.config.paths, key)
        if not value:
            raise UserException(f"Path '{key}' is not configured.")
        return value

    def _corpus_path(self, key: str, filename: str) -> Path:
        normalized = self.config.artifact(filename)
        if key in self.explicit_paths or not normalized.exists():
            return Path(self._required(key))
        configured = getattr(self.config.paths, key)
        if configured and Path(configured).resolve() != normalized.resolve():
            logging.info(f"Reading normalized {key} from '{normalized}' instead of '{configured}'")
        return normalized

    def _reranking_inputs(self):
        paths = self.config.paths
        click_log = load_click_log(paths.click_log) if paths.click_log else None
        store = load_embeddings(paths.embeddings) if paths.embeddings else None
        return click_log, store

    def _qrels(self):
        qrels, summary = build_pseudo_qrels(load_candidates(self._required("candidates")))
        write_qrels(qrels, self.config.artifact("pseudo.qrels"))
        logging.info(f"Pseudo qrels: {summary.to_dict()}")
        return qrels

    def ingest(self) -> dict:
        publications = load_publications(self._required("publications"))
        datasets = load_datasets(self._required("datasets"))
        translations = {}
        if self.config.paths.translations:
            table = load_translations(self.config.paths.translations)
            publications, pub_summary = apply_translations(publications, table)
            datasets, ds_summary = apply_translations(datasets, table)
            translations = {
                "publications": pub_summary.to_dict(),
                "datasets": ds_summary.to_dict(),
                "rejected": len(table.rejections),
            }

        save_records(publications, self.config.artifact(PUBLICATIONS_FILE))
        save_records(datasets, self.config.artifact(DATASETS_FILE))
        rejections = {"publications": publications.rejection_report(), "datasets": datasets.rejection_report()}
        _write_json(rejections, self.config.artifact("rejections.json"))

        summary = {
            "publications": len(publications),
            "datasets": len(datasets),
            "rejected": len(publications.rejections) + len(datasets.rejections),
            "translations": translations,
        }
        logging.info(f"Ingest finished: {summary}")
        return summary

    def expand_topics(self) -> dict:
        publications = load_publications(self._corpus_path("publications", PUBLICATIONS_FILE))
        datasets = load_datasets(self._corpus_path("datasets", DATASETS_FILE))
        vocabulary = build_topic_vocabulary(publications, datasets)
        expanded, report = expand_topics(datasets, vocabulary)

        save_records(expanded, self.config.artifact(DATASETS_FILE))
        _write_json(vocabulary.to_dict(), self.config.artifact("vocabulary.json"))
        report.save(self.config.artifact("expansion_report.json"))
        german, english = vocabulary.sizes()
        summary = {"vocabulary": {"de": german, "en": english}, "assigned": dict(report.counts)}
        logging.info(f"Topic expansion finished: {summary}")
        return summary

    def index(self) -> dict:
        datasets = load_datasets(self._corpus_path("datasets", DATASETS_FILE))
        index = build_index(datasets, FieldSchema(stem=self.config.stem), self.config.bm25)
        save_index(index, self.config.index_path)
        statistics = field_statistics(index)
        logging.debug(f"Field statistics: {statistics}")
        return {"documents": len(index), "index": str(self.config.index_path), "fields": statistics}

    def recommend(self, no_rerank: bool = False) -> dict:
        index = load_index(self.config.index_path)
        publications = load_publications(self._corpus_path("publications", PUBLICATIONS_FILE))
        run, precompute_summary = precompute_all(index, publications, self.config.query, tag=self.config.run_tag)
        summary = {"precompute": precompute_summary.to_dict()}
        if not no_rerank:
            click_log, store = self._reranking_inputs()
            run, rerank_summary = rerank_pipeline(run, click_log, store, self.config.rerank)
            summary["rerank"] = rerank_summary.to_dict()
        write_run(run, self.config.run_path)
        summary["run"] = str(self.config.run_path)
        return summary

    def recommendation_store(self) -> RecommendationStore:
        """The configured run, with every known publication looked up even when its ranking is empty."""
        run = read_run(self.config.run_path)
        publication_ids = []
        if self.config.paths.publications or self.config.artifact(PUBLICATIONS_FILE).exists():
            publications = load_publications(self._corpus_path("publications", PUBLICATIONS_FILE))
            publication_ids = [record.id for record in publications]
        return RecommendationStore.from_run(run, publication_ids)

    def pretest(self, run_paths: list[str] | None = None) -> str:
        run_paths = run_paths or [str(self.config.run_path)]
        qrels = self._qrels()
        reports = []
        for path in run_paths:
            report = evaluate_run(read_run(path), qrels)
            if self.config.paths.metric_report and len(run_paths) == 1:
                report.save(self.config.paths.metric_report)
            else:
                report.save(self.config.artifact(f"metrics-{report.run_tag}.json"))
            reports.append(report)

        text = "\n".join(format_metric_report(report) for report in reports)
        if len(reports) > 1:
            rows = [ComparisonRow(report.run_tag, None, None, None, report) for report in reports]
            text += "\n" + compare_runs(rows)
        return text

    def sweep(self) -> str:
        index = load_index(self.config.index_path)
        publications = load_publications(self._corpus_path("publications", PUBLICATIONS_FILE))
        click_log, store = self._reranking_inputs()
        rows = sweep(
            index,
            publications,
            self._qrels(),
            self.config.pretest.variants,
            self.config.query,
            self.config.rerank,
            click_log,
            store,
        )
        table = compare_runs(rows)
        _write_json(
            {row.run: {**row.report.to_dict(), "reranked": row.reranked, "topic_boost": row.topic_boost,
                       "abstract_boost": row.abstract_boost} for row in rows},
            self.config.artifact("pretest.json"),
        )
        self.config.artifact("pretest.txt").write_text(table, "utf-8")
        return table

    def simulate(self) -> str:
        baseline = read_run(self._required("baseline_run"))
        if not self.config.paths.experimental_runs:
            raise UserException("Path 'experimental_runs' is not configured.")
        experimental = [read_run(path) for path in self.config.paths.experimental_runs]

        outcomes = simulate_lab(baseline, experimental, self.config.lab)
        sessions_path = Path(self.config.paths.sessions or self.config.artifact("sessions.jsonl"))
        write_sessions(outcomes, sessions_path)
        save_click_log(click_log_from_sessions(outcomes), self.config.artifact("clicks.jsonl"))

        report = aggregate(outcomes, self.config.lab.impressions_per_session)
        report.save(self.config.paths.lab_report or self.config.artifact("lab_report.json"))
        histogram = position_click_histogram(outcomes, self.config.lab.page_size)
        logging.info(f"Clicks per position: {histogram}")
        return format_lab_report(report)

    def report(self) -> str:
        paths = self.config.paths
        sections = []
        metric_path = paths.metric_report
        if metric_path:
            sections.append(format_metric_report(MetricReport.from_dict(_read_json(Path(metric_path)))))

        lab_path = Path(paths.lab_report) if paths.lab_report else self.config.artifact("lab_report.json")
        if paths.lab_report or lab_path.exists():
            sections.append(format_lab_report(LabReport.from_dict(_read_json(lab_path))))

        sessions_path = Path(paths.sessions) if paths.sessions else self.config.artifact("sessions.jsonl")
        if paths.sessions or sessions_path.exists():
            outcomes = read_sessions(sessions_path)
            histogram = position_click_histogram(outcomes, self.config.lab.page_size)
            sections.append("Clicks per position: " + " ".join(str(count) for count in histogram))
            if paths.run and paths.baseline_run:
                analysis = clicked_rank_analysis(
                    read_run(paths.run), read_run(paths.baseline_run), click_log_from_sessions(outcomes)
                )
                sections.append(
                    f"Clicked datasets: {analysis.clicked}, not ranked: {analysis.not_ranked}, "
                    f"same position: {analysis.same_position}, different position: {analysis.different_position}"
                )

        if not sections:
            raise UserException("Nothing to report: configure a metric report, lab report or session log.")
        return "\n".join(sections)
