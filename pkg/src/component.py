"""
Dataset Recommender component main class.
"""

import json
import logging
from pathlib import Path

from keboola.component.base import ComponentBase, sync_action
from keboola.component.exceptions import UserException

from configuration import load_config
from exceptions import EXIT_INTERNAL, exit_code_for
from pipeline import Pipeline


class Component(ComponentBase):
    """
    Dataset Recommender.

    Runs one pipeline command (``parameters.command``) over the files in the data
    folder: ingest, expand-topics, index, recommend, pretest, sweep, simulate or report.
    Relative paths in the configuration resolve against the data folder.

    For easier debugging the data folder is picked up by default from `../data` path,
    relative to working directory.

    If `debug` parameter is present in the `config.json`, the default logger is set to verbose DEBUG mode.
    """

    def __init__(self):
        super().__init__()
        self.config = load_config(self.configuration.parameters).resolve(Path(self.data_folder_path))
        self.pipeline = Pipeline(self.config)

    def run(self):
        """Main entry point for the recommender component."""
        if not self.config.command:
            raise UserException("Command not set.")
        output = self.pipeline.execute(self.config.command)
        logging.info(output)

    @sync_action("recommendation")
    def get_recommendation(self) -> dict:
        """Look up the precomputed recommendations of one publication."""
        publication_id = self.config.publication_id
        if not publication_id:
            raise UserException("Publication ID not set.")
        store = self.pipeline.recommendation_store()
        results = store.lookup(publication_id, self.config.serve.max_results)
        return {"publication_id": publication_id, "known": results is not None, "results": results or []}

    @sync_action("lab-report")
    def get_lab_report(self) -> dict:
        """Saved interleaving results per system."""
        path = Path(self.config.paths.lab_report or self.config.artifact("lab_report.json"))
        try:
            return json.loads(path.read_text("utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            raise UserException(f"Lab report '{path}' is not available: {e}") from e


"""
        Main entrypoint
"""
if __name__ == "__main__":
    try:
        comp = Component()
        # this triggers the run method by default and is controlled by the configuration.action parameter
        comp.execute_action()
    except UserException as exc:
        logging.error(exc)
        exit(exit_code_for(exc))
    except Exception as exc:
        logging.exception(exc)
        exit(EXIT_INTERNAL)
