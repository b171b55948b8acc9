"""
Aggregation of session credit into per-system win/loss/tie, outcome and CTR figures.
"""

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterable

from rich.table import Table

from evaluation.report import render_table
from lab.interleaving import Team
from lab.session import Credit, SessionOutcome

UNDEFINED = "undefined"


@dataclass
class SystemStats:
    wins: int = 0
    losses: int = 0
    ties: int = 0
    sessions: int = 0
    impressions: int = 0
    clicks: int = 0
    first_picks: int = 0
    first_picks_clicked: int = 0

    @property
    def outcome(self) -> float | None:
        decided = self.wins + self.losses
        return self.wins / decided if decided else None

    @property
    def ctr(self) -> float | None:
        return self.clicks / self.impressions if self.impressions else None

    def to_dict(self) -> dict:
        return {**asdict(self), "outcome": self.outcome, "ctr": self.ctr}


@dataclass
class LabReport:
    systems: dict[str, SystemStats] = field(default_factory=dict)
    sessions: int = 0

    def stats(self, system: str) -> SystemStats:
        return self.systems.setdefault(system, SystemStats())

    def to_dict(self) -> dict:
        return {
            "sessions": self.sessions,
            "systems": {name: self.systems[name].to_dict() for name in sorted(self.systems)},
        }

    @classmethod
    def from_dict(cls, data: dict) -> "LabReport":
        fields = SystemStats.__dataclass_fields__
        systems = {
            name: SystemStats(**{key: value for key, value in stats.items() if key in fields})
            for name, stats in data["systems"].items()
        }
        return cls(systems=systems, sessions=int(data["sessions"]))

    def save(self, path: str | Path) -> None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n", "utf-8")


def aggregate(outcomes: Iterable[SessionOutcome], impressions_per_session: int | None = None) -> LabReport:
    """
    Tally credit per system. Sessions without clicks count towards sessions and
    impressions only. ``impressions_per_session`` overrides the displayed row count.
    """
    report = LabReport()
    for outcome in outcomes:
        report.sessions += 1
        ranking = outcome.ranking
        impressions = outcome.impressions if impressions_per_session is None else impressions_per_session
        for team in (Team.A, Team.B):
            stats = report.stats(ranking.system(team))
            stats.sessions += 1
            stats.impressions += impressions
        for click in outcome.clicks:
            teams = (Team.A, Team.B) if click.doc_id in ranking.shared else (click.team,)
            for team in teams:
                report.stats(ranking.system(team)).clicks += 1
        if ranking.entries:
            first = report.stats(ranking.system(ranking.entries[0][1]))
            first.first_picks += 1
            if outcome.clicks:
                first.first_picks_clicked += 1

        stats_a = report.stats(ranking.system_a)
        stats_b = report.stats(ranking.system_b)
        if outcome.credit is Credit.WIN_A:
            stats_a.wins += 1
            stats_b.losses += 1
        elif outcome.credit is Credit.WIN_B:
            stats_b.wins += 1
            stats_a.losses += 1
        elif outcome.credit is Credit.TIE:
            stats_a.ties += 1
            stats_b.ties += 1
    return report


def position_click_histogram(outcomes: Iterable[SessionOutcome], page_size: int = 6) -> list[int]:
    histogram = [0] * page_size
    for outcome in outcomes:
        for click in outcome.clicks:
            if not 1 <= click.position <= page_size:
                raise ValueError(f"Click position {click.position} outside a page of {page_size}")
            histogram[click.position - 1] += 1
    return histogram


def _fmt(value: float | None, digits: int) -> str:
    return UNDEFINED if value is None else f"{value:.{digits}f}"


def format_lab_report(report: LabReport) -> str:
    table = Table(title=f"Interleaving results ({report.sessions} sessions)")
    for column in ("System", "Win", "Loss", "Tie", "Outcome", "Session", "Impression", "Clicks", "CTR", "First"):
        table.add_column(column, justify="left" if column == "System" else "right")
    for name in sorted(report.systems):
        stats = report.systems[name]
        table.add_row(
            name,
            str(stats.wins),
            str(stats.losses),
            str(stats.ties),
            _fmt(stats.outcome, 2),
            str(stats.sessions),
            str(stats.impressions),
            str(stats.clicks),
            _fmt(stats.ctr, 4),
            f"{stats.first_picks} ({stats.first_picks_clicked} clicked)",
        )
    return render_table(table)
