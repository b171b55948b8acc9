import os
import unittest
from pathlib import Path

from keboola.component.exceptions import UserException
from mock import patch

from configuration import PipelineConfig, load_config


class TestLoadConfig(unittest.TestCase):
    """Test cases for pipeline configuration loading."""

    def test_defaults(self):
        """Test an empty parameter block gives the documented defaults."""
        config = load_config({})

        self.assertEqual(config.lab.page_size, 6)
        self.assertEqual(config.lab.seed, 0)
        self.assertEqual(config.rerank.click_boost, 1000.0)
        self.assertEqual(config.rerank.embedding_boost, 500.0)
        self.assertEqual(config.bm25.k1, 1.2)
        self.assertEqual(config.bm25.b, 0.75)
        self.assertEqual(config.query.boosts["topic"], 0.3)
        self.assertEqual(len(config.pretest.variants), 10)

    def test_validation_error_is_user_error(self):
        """Test invalid values surface as a user exception naming the problem."""
        with self.assertRaisesRegex(UserException, "Invalid configuration"):
            load_config({"bm25": {"b": 2.0}})
        with self.assertRaises(UserException):
            load_config({"rerank": {"click_boost": 10, "embedding_boost": 20}})

    @patch.dict(os.environ, {"RECSYS_SEED": "17"})
    def test_environment_seed(self):
        """Test RECSYS_SEED overrides the configured lab seed."""
        config = load_config({"lab": {"seed": 3, "sessions": 5}})

        self.assertEqual(config.lab.seed, 17)
        self.assertEqual(config.lab.sessions, 5)

    @patch.dict(os.environ, {"RECSYS_SEED": "not-a-number"})
    def test_invalid_environment_seed(self):
        """Test a malformed RECSYS_SEED is a user error."""
        with self.assertRaises(UserException):
            load_config({})

    def test_resolve_anchors_relative_paths(self):
        """Test relative paths are anchored at the base directory and absolute ones kept."""
        config = load_config(
            {"paths": {"publications": "in/pubs.jsonl", "run": "/abs/x.run", "experimental_runs": ["a.run"]}}
        )

        resolved = config.resolve(Path("/data"))

        self.assertEqual(resolved.paths.publications, str(Path("/data") / "in/pubs.jsonl"))
        self.assertEqual(resolved.paths.run, "/abs/x.run")
        self.assertEqual(resolved.paths.experimental_runs, [str(Path("/data") / "a.run")])
        self.assertEqual(resolved.index_path, Path("/data") / "out" / "index.json")
        self.assertEqual(config.paths.publications, "in/pubs.jsonl")

    def test_run_path_follows_tag(self):
        """Test the default run file is named after the run tag."""
        self.assertEqual(PipelineConfig(run_tag="exp").run_path, Path("out") / "exp.run")


if __name__ == "__main__":
    unittest.main()
