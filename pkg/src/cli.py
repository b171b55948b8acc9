"""
Command-line entry point for the dataset recommender pipeline.

Usage: ``python src/cli.py <command> [--config config.json] [flags]``. Every flag
overrides the matching key of the configuration file; relative paths from the file
resolve against the file's directory, relative flag paths against the working
directory.
"""

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from keboola.component.exceptions import UserException
from rich.console import Console

from configuration import PipelineConfig, load_config
from exceptions import EXIT_OK, EXIT_USAGE, exit_code_for
from pipeline import Pipeline
from serving import serve

PATH_FLAGS = {
    "publications": "publications",
    "datasets": "datasets",
    "translations": "translations",
    "embeddings": "embeddings",
    "click_log": "click_log",
    "candidates": "candidates",
    "out_dir": "out_dir",
    "index": "index",
    "run": "run",
    "baseline": "baseline_run",
    "experimental": "experimental_runs",
    "sessions": "sessions",
    "metric_report": "metric_report",
    "lab_report": "lab_report",
}
# flag dest -> (section, key); section None means a top-level key
VALUE_FLAGS = {
    "top_k": ("query", "top_k"),
    "sessions_count": ("lab", "sessions"),
    "page_size": ("lab", "page_size"),
    "host": ("serve", "host"),
    "port": ("serve", "port"),
    "tag": (None, "run_tag"),
    "stem": (None, "stem"),
}


class ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _seed(value: str) -> int:
    seed = int(value)
    if seed < 0:
        raise argparse.ArgumentTypeError("seed must be a non-negative integer")
    return seed


def build_parser() -> ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="config.json with a 'parameters' block or bare parameters")
    common.add_argument("--seed", type=_seed, help="seed for every random decision")
    common.add_argument("--debug", action="store_true", default=None, help="verbose logging")
    common.add_argument("--out-dir", dest="out_dir", help="directory for produced artifacts")

    parser = ArgumentParser(prog="dataset-recommender", description="Research dataset recommendations")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=ArgumentParser)

    ingest = commands.add_parser("ingest", parents=[common], help="load and normalize the corpus")
    ingest.add_argument("--publications")
    ingest.add_argument("--datasets")
    ingest.add_argument("--translations")

    expand = commands.add_parser("expand-topics", parents=[common], help="assign vocabulary topics by title")
    expand.add_argument("--publications")
    expand.add_argument("--datasets")

    index = commands.add_parser("index", parents=[common], help="build the BM25 index")
    index.add_argument("--datasets")
    index.add_argument("--index")
    index.add_argument("--stem", action="store_true", default=None)

    recommend = commands.add_parser("recommend", parents=[common], help="precompute recommendation runs")
    recommend.add_argument("--publications")
    recommend.add_argument("--index")
    recommend.add_argument("--run")
    recommend.add_argument("--click-log", dest="click_log")
    recommend.add_argument("--embeddings")
    recommend.add_argument("--top-k", dest="top_k", type=int)
    recommend.add_argument("--tag")
    recommend.add_argument("--no-rerank", dest="no_rerank", action="store_true")

    pretest = commands.add_parser("pretest", parents=[common], help="evaluate runs on pseudo qrels")
    pretest.add_argument("runs", nargs="*", help="run files; defaults to the configured run")
    pretest.add_argument("--candidates")
    pretest.add_argument("--metric-report", dest="metric_report")

    sweep = commands.add_parser("sweep", parents=[common], help="evaluate the configured boost variants")
    sweep.add_argument("--publications")
    sweep.add_argument("--index")
    sweep.add_argument("--candidates")
    sweep.add_argument("--click-log", dest="click_log")
    sweep.add_argument("--embeddings")

    simulate = commands.add_parser("simulate", parents=[common], help="simulate interleaved lab sessions")
    simulate.add_argument("--baseline")
    simulate.add_argument("--experimental", nargs="+")
    simulate.add_argument("--sessions", help="session log output")
    simulate.add_argument("--lab-report", dest="lab_report")
    simulate.add_argument("--sessions-count", dest="sessions_count", type=int)
    simulate.add_argument("--page-size", dest="page_size", type=int)

    report = commands.add_parser("report", parents=[common], help="render saved reports")
    report.add_argument("--metric-report", dest="metric_report")
    report.add_argument("--lab-report", dest="lab_report")
    report.add_argument("--sessions")
    report.add_argument("--run")
    report.add_argument("--baseline")

    serve_parser = commands.add_parser("serve", parents=[common], help="serve a precomputed run over HTTP")
    serve_parser.add_argument("--run")
    serve_parser.add_argument("--host")
    serve_parser.add_argument("--port", type=int)
    return parser


def _read_parameters(config_path: str) -> dict:
    try:
        with open(config_path, encoding="utf-8") as f:
            document = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise UserException(f"Cannot read config file '{config_path}': {e}") from e
    if not isinstance(document, dict):
        raise UserException(f"Config file '{config_path}' must hold a JSON object")
    return dict(document.get("parameters", document))


def _absolute(value):
    if isinstance(value, list):
        return [os.path.abspath(item) for item in value]
    return os.path.abspath(value)


def config_from_args(args: argparse.Namespace) -> PipelineConfig:
    """Config file values, overridden by every flag that was given."""
    parameters = _read_parameters(args.config) if args.config else {}
    base_dir = Path(args.config).resolve().parent if args.config else Path.cwd()
    parameters["command"] = args.command

    paths = dict(parameters.get("paths") or {})
    for dest, key in PATH_FLAGS.items():
        value = getattr(args, dest, None)
        if value is not None:
            paths[key] = _absolute(value)
    parameters["paths"] = paths

    for dest, (section, key) in VALUE_FLAGS.items():
        value = getattr(args, dest, None)
        if value is None:
            continue
        if section is None:
            parameters[key] = value
        else:
            parameters[section] = {**(parameters.get(section) or {}), key: value}
    if args.debug:
        parameters["debug"] = True

    config = load_config(parameters).resolve(base_dir)
    if args.seed is not None:
        config = config.model_copy(update={"lab": config.lab.model_copy(update={"seed": args.seed})})
    return config


def flag_paths(args: argparse.Namespace) -> set[str]:
    return {key for dest, key in PATH_FLAGS.items() if getattr(args, dest, None) is not None}


def run_command(config: PipelineConfig, args: argparse.Namespace) -> str:
    if args.command == "serve":
        serve(Pipeline(config, explicit_paths=flag_paths(args)).recommendation_store(), config.serve)
        return ""
    options = {}
    if args.command == "recommend":
        options["no_rerank"] = args.no_rerank
    elif args.command == "pretest":
        options["run_paths"] = [_absolute(path) for path in args.runs] or None
    return Pipeline(config, explicit_paths=flag_paths(args)).execute(args.command, **options)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.debug else logging.INFO,
        format="%(asctime)s %(levelname)s %(message)s",
        stream=sys.stderr,
    )
    try:
        config = config_from_args(args)
        if config.debug:
            logging.getLogger().setLevel(logging.DEBUG)
        output = run_command(config, args)
    except UserException as exc:
        logging.error(str(exc))
        return exit_code_for(exc)
    except Exception as exc:
        logging.exception(exc)
        return exit_code_for(exc)
    if output:
        Console(soft_wrap=True).print(output, markup=False, highlight=False)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
