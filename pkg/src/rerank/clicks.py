"""
Click feedback collected from earlier evaluation rounds.
"""

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from exceptions import DataError


@dataclass(frozen=True)
class ClickEvent:
    session: str
    qid: str
    docid: str
    position: int
    ts: int | float | str | None = None

    def __post_init__(self):
        if self.position < 1:
            raise ValueError(f"Click position must be at least 1, got {self.position}")
        if not (self.session and self.qid and self.docid):
            raise ValueError("Click events need session, qid and docid")

    def to_dict(self) -> dict:
        return {"session": self.session, "qid": self.qid, "docid": self.docid, "position": self.position, "ts": self.ts}


@dataclass
class ClickLog:
    events: list[ClickEvent] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.events)

    def clicked(self, query_id: str) -> set[str]:
        return {event.docid for event in self.events if event.qid == query_id}

    def by_query(self) -> dict[str, set[str]]:
        clicked: dict[str, set[str]] = {}
        for event in self.events:
            clicked.setdefault(event.qid, set()).add(event.docid)
        return clicked


def load_click_log(path: str | Path) -> ClickLog:
    try:
        with open(path, encoding="utf-8") as f:
            lines = f.read().splitlines()
    except OSError as e:
        raise DataError(f"Cannot read click log '{path}': {e}") from e

    log = ClickLog()
    skipped = 0
    for line_number, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            payload = json.loads(line)
            log.events.append(
                ClickEvent(
                    session=str(payload["session"]),
                    qid=str(payload["qid"]),
                    docid=str(payload["docid"]),
                    position=int(payload["position"]),
                    ts=payload.get("ts"),
                )
            )
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
            skipped += 1
            logging.warning(f"Skipping click log line {line_number}: {e}")
    logging.info(f"Loaded {len(log)} click events from {path} ({skipped} skipped)")
    return log


def save_click_log(log: ClickLog, path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        for event in log.events:
            f.write(json.dumps(event.to_dict(), sort_keys=True) + "\n")


def click_log_from_sessions(outcomes: Iterable) -> ClickLog:
    """Turn simulated or recorded lab sessions into click feedback for the next round."""
    log = ClickLog()
    for index, outcome in enumerate(outcomes):
        for click in outcome.clicks:
            log.events.append(
                ClickEvent(
                    session=outcome.session_id,
                    qid=outcome.query_id,
                    docid=click.doc_id,
                    position=click.position,
                    ts=index,
                )
            )
    return log
