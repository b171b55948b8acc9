"""
Simulated user sessions on interleaved pages and their win/loss/tie credit.
"""

import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from exceptions import DataError
from lab.click_model import ClickModel
from lab.interleaving import InterleavedRanking, Team


class Credit(str, Enum):
    WIN_A = "WinA"
    WIN_B = "WinB"
    TIE = "Tie"
    NO_CLICKS = "NoClicks"


@dataclass(frozen=True)
class Click:
    position: int
    doc_id: str
    team: Team


@dataclass
class SessionOutcome:
    session_id: str
    query_id: str
    ranking: InterleavedRanking
    clicks: list[Click] = field(default_factory=list)
    credit: Credit = Credit.NO_CLICKS

    @property
    def impressions(self) -> int:
        return len(self.ranking)

    def to_dict(self) -> dict:
        return {
            "session": self.session_id,
            "qid": self.query_id,
            "system_a": self.ranking.system_a,
            "system_b": self.ranking.system_b,
            "ranking": [[doc_id, team.value] for doc_id, team in self.ranking.entries],
            "shared": sorted(self.ranking.shared),
            "clicks": [{"position": c.position, "docid": c.doc_id, "team": c.team.value} for c in self.clicks],
            "credit": self.credit.value,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SessionOutcome":
        ranking = InterleavedRanking(
            entries=[(doc_id, Team(team)) for doc_id, team in data["ranking"]],
            system_a=data["system_a"],
            system_b=data["system_b"],
            shared=frozenset(data.get("shared", [])),
        )
        clicks = [Click(int(c["position"]), c["docid"], Team(c["team"])) for c in data["clicks"]]
        return cls(str(data["session"]), str(data["qid"]), ranking, clicks, Credit(data["credit"]))


def credit_session(interleaved: InterleavedRanking, clicked_ids: Sequence[str]) -> Credit:
    """
    More clicks on a team's documents wins the session for that team. A click on a
    document both rankings hold at the same rank counts for both teams.
    """
    counts = {Team.A: 0, Team.B: 0}
    for doc_id in clicked_ids:
        team = interleaved.team_of(doc_id)
        if doc_id in interleaved.shared:
            counts[Team.A] += 1
            counts[Team.B] += 1
        else:
            counts[team] += 1
    if counts[Team.A] == counts[Team.B]:
        return Credit.TIE if counts[Team.A] else Credit.NO_CLICKS
    return Credit.WIN_A if counts[Team.A] > counts[Team.B] else Credit.WIN_B


def simulate_session(
    interleaved: InterleavedRanking,
    model: ClickModel,
    rng: np.random.Generator,
    session_id: str = "s0",
    query_id: str = "",
) -> SessionOutcome:
    positions = model.sample(len(interleaved), rng)
    clicks = [Click(position, *interleaved.entries[position - 1]) for position in positions]
    credit = credit_session(interleaved, [click.doc_id for click in clicks])
    return SessionOutcome(session_id, query_id, interleaved, clicks, credit)


def write_sessions(outcomes: Iterable[SessionOutcome], path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for outcome in outcomes:
            f.write(json.dumps(outcome.to_dict(), sort_keys=True) + "\n")


def read_sessions(path: str | Path) -> list[SessionOutcome]:
    try:
        with open(path, encoding="utf-8") as f:
            lines = f.read().splitlines()
    except OSError as e:
        raise DataError(f"Cannot read session log '{path}': {e}") from e
    try:
        return [SessionOutcome.from_dict(json.loads(line)) for line in lines if line.strip()]
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
        raise DataError(f"Malformed session log '{path}': {e}") from e
