import unittest

import numpy as np

from lab.interleaving import InterleavedRanking, Team, team_draft_interleave
from lab.session import Credit, credit_session


class FixedCoin:
    """Coin that always returns the same draw."""

    def __init__(self, value: float):
        self.value = value

    def random(self) -> float:
        return self.value


class TestTeamDraft(unittest.TestCase):
    """Test cases for team-draft interleaving."""

    def test_alternating_drafts(self):
        """Test A drafting first every round takes its top document, then B its best unselected one."""
        result = team_draft_interleave(["a1", "a2", "a3"], ["a1", "b2", "b3"], 4, FixedCoin(0.1))

        self.assertEqual(result.entries, [("a1", Team.A), ("b2", Team.B), ("a2", Team.A), ("b3", Team.B)])

    def test_identical_inputs_keep_the_ranking(self):
        """Test interleaving a ranking with itself reproduces it."""
        rng = np.random.default_rng(3)
        ranking = [f"d{n}" for n in range(10)]

        for _ in range(20):
            result = team_draft_interleave(ranking, ranking, 6, rng)

            self.assertEqual(result.doc_ids, ranking[:6])
            self.assertEqual(result.shared, frozenset(ranking[:6]))

    def test_random_trials(self):
        """Test 10,000 random pairs: balanced teams, no duplicates, source order kept."""
        rng = np.random.default_rng(10_000)
        universe = [f"d{n}" for n in range(15)]
        for _ in range(10_000):
            rank_a = [str(doc) for doc in rng.permutation(universe)[: int(rng.integers(0, 10))]]
            rank_b = [str(doc) for doc in rng.permutation(universe)[: int(rng.integers(0, 10))]]
            page_size = int(rng.integers(1, 9))

            result = team_draft_interleave(rank_a, rank_b, page_size, rng)

            counts = result.team_counts()
            self.assertLessEqual(abs(counts[Team.A] - counts[Team.B]), 1)
            self.assertEqual(len(result.doc_ids), len(set(result.doc_ids)))
            self.assertLessEqual(len(result), page_size)
            for team, source in ((Team.A, rank_a), (Team.B, rank_b)):
                drafted = [doc_id for doc_id, owner in result.entries if owner is team]
                self.assertEqual(drafted, sorted(drafted, key=source.index))

    def test_first_pick_is_fair(self):
        """Test the top slot goes to team A about half of the time."""
        rng = np.random.default_rng(42)
        rank_a, rank_b = ["a1", "a2", "a3"], ["b1", "b2", "b3"]

        first_a = sum(
            team_draft_interleave(rank_a, rank_b, 6, rng).entries[0][1] is Team.A for _ in range(10_000)
        )

        self.assertAlmostEqual(first_a / 10_000, 0.5, delta=0.02)

    def test_stops_when_drafting_team_is_exhausted(self):
        """Test interleaving ends once the drafting team has nothing left."""
        result = team_draft_interleave(["a1"], ["b1", "b2", "b3"], 6, FixedCoin(0.1))

        self.assertEqual(result.doc_ids, ["a1", "b1"])

    def test_duplicates_refused(self):
        """Test rankings with repeated documents cannot be interleaved."""
        with self.assertRaises(ValueError):
            team_draft_interleave(["a1", "a1"], ["b1"], 6, FixedCoin(0.1))


class TestCredit(unittest.TestCase):
    """Test cases for session credit assignment."""

    def setUp(self):
        self.ranking = InterleavedRanking(entries=[("d1", Team.A), ("d2", Team.B), ("d3", Team.A)])

    def test_credit_by_click_counts(self):
        """Test wins, ties and click-free sessions."""
        self.assertEqual(credit_session(self.ranking, ["d1", "d3"]), Credit.WIN_A)
        self.assertEqual(credit_session(self.ranking, ["d2"]), Credit.WIN_B)
        self.assertEqual(credit_session(self.ranking, ["d1", "d2"]), Credit.TIE)
        self.assertEqual(credit_session(self.ranking, []), Credit.NO_CLICKS)

    def test_shared_document_counts_for_both(self):
        """Test a click on a document held at the same rank by both systems is a tie."""
        self.ranking.shared = frozenset({"d1"})

        self.assertEqual(credit_session(self.ranking, ["d1"]), Credit.TIE)
        self.assertEqual(credit_session(self.ranking, ["d1", "d2"]), Credit.WIN_B)

    def test_swapping_teams_mirrors_credit(self):
        """Test relabelling the teams turns WinA into WinB and keeps ties and click-free sessions."""
        mirrored = {Credit.WIN_A: Credit.WIN_B, Credit.WIN_B: Credit.WIN_A, Credit.TIE: Credit.TIE,
                    Credit.NO_CLICKS: Credit.NO_CLICKS}
        rng = np.random.default_rng(8)
        universe = [f"d{n}" for n in range(12)]
        for _ in range(500):
            ranking = team_draft_interleave(
                list(rng.permutation(universe)[:8]), list(rng.permutation(universe)[:8]), 6, rng
            )
            swapped = InterleavedRanking(
                entries=[(doc_id, team.other) for doc_id, team in ranking.entries], shared=ranking.shared
            )
            clicked = [doc_id for doc_id in ranking.doc_ids if rng.random() < 0.4]

            self.assertEqual(credit_session(swapped, clicked), mirrored[credit_session(ranking, clicked)])

    def test_click_outside_the_page(self):
        """Test a clicked document that was never shown is an error."""
        with self.assertRaises(KeyError):
            credit_session(self.ranking, ["d1", "d9"])


if __name__ == "__main__":
    unittest.main()
