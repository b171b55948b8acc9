"""
Team-draft interleaving of two rankings.

Each round a fair coin decides which team drafts first; a team drafts its highest-ranked
document not selected yet. Interleaving stops at the page size or as soon as the
drafting team has nothing left, so team contributions never differ by more than one.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Protocol, Sequence


class Team(str, Enum):
    A = "A"
    B = "B"

    @property
    def other(self) -> "Team":
        return Team.B if self is Team.A else Team.A


class CoinSource(Protocol):
    def random(self) -> float: ...


@dataclass
class InterleavedRanking:
    entries: list[tuple[str, Team]] = field(default_factory=list)
    system_a: str = "A"
    system_b: str = "B"
    # documents both source rankings hold at the same rank
    shared: frozenset[str] = frozenset()

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def doc_ids(self) -> list[str]:
        return [doc_id for doc_id, _ in self.entries]

    def team_of(self, doc_id: str) -> Team:
        for entry_id, team in self.entries:
            if entry_id == doc_id:
                return team
        raise KeyError(doc_id)

    def team_counts(self) -> dict[Team, int]:
        counts = {Team.A: 0, Team.B: 0}
        for _, team in self.entries:
            counts[team] += 1
        return counts

    def system(self, team: Team) -> str:
        return self.system_a if team is Team.A else self.system_b


def team_draft_interleave(
    rank_a: Sequence[str],
    rank_b: Sequence[str],
    page_size: int,
    rng: CoinSource,
    system_a: str = "A",
    system_b: str = "B",
) -> InterleavedRanking:
    for ranking in (rank_a, rank_b):
        if len(set(ranking)) != len(ranking):
            raise ValueError("Rankings to interleave must not contain duplicates")

    result = InterleavedRanking(system_a=system_a, system_b=system_b)
    sources = {Team.A: list(rank_a), Team.B: list(rank_b)}
    cursors = {Team.A: 0, Team.B: 0}
    selected: set[str] = set()
    positions_a = {doc_id: rank for rank, doc_id in enumerate(rank_a)}
    positions_b = {doc_id: rank for rank, doc_id in enumerate(rank_b)}

    def draft(team: Team) -> str | None:
        source = sources[team]
        cursor = cursors[team]
        while cursor < len(source) and source[cursor] in selected:
            cursor += 1
        cursors[team] = cursor + 1
        return source[cursor] if cursor < len(source) else None

    while len(result) < page_size:
        first = Team.A if rng.random() < 0.5 else Team.B
        for team in (first, first.other):
            if len(result) >= page_size:
                break
            doc_id = draft(team)
            if doc_id is None:
                return result
            selected.add(doc_id)
            result.entries.append((doc_id, team))
            if positions_a.get(doc_id) == positions_b.get(doc_id):
                result.shared = result.shared | {doc_id}
    return result
