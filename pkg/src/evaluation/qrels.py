"""
Pseudo test collections: live-system candidate scores used directly as graded relevance.
"""

import json
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path

from exceptions import DataError


@dataclass
class CandidateList:
    query_id: str
    candidates: list[tuple[str, float]] = field(default_factory=list)


@dataclass
class Qrels:
    judgments: dict[str, dict[str, float]] = field(default_factory=dict)

    def __len__(self) -> int:
        return sum(len(docs) for docs in self.judgments.values())

    def __contains__(self, query_id: str) -> bool:
        return query_id in self.judgments

    def queries(self) -> list[str]:
        return sorted(self.judgments)

    def gains(self, query_id: str) -> dict[str, float]:
        return self.judgments.get(query_id, {})

    def gain(self, query_id: str, doc_id: str) -> float:
        return self.gains(query_id).get(doc_id, 0.0)

    def relevant(self, query_id: str) -> set[str]:
        return {doc_id for doc_id, gain in self.gains(query_id).items() if gain > 0}

    def set(self, query_id: str, doc_id: str, gain: float) -> None:
        if not math.isfinite(gain) or gain < 0:
            raise ValueError(f"Gain must be finite and non-negative, got {gain}")
        self.judgments.setdefault(query_id, {})[doc_id] = gain


@dataclass
class QrelsSummary:
    queries: int = 0
    judgments: int = 0
    rejected: int = 0

    def to_dict(self) -> dict:
        return {"queries": self.queries, "judgments": self.judgments, "rejected": self.rejected}


def build_pseudo_qrels(candidates: list[CandidateList]) -> tuple[Qrels, QrelsSummary]:
    """Gain = live score; duplicates keep the maximum, negative scores are rejected."""
    qrels = Qrels()
    summary = QrelsSummary()
    for candidate_list in candidates:
        for doc_id, score in candidate_list.candidates:
            if not math.isfinite(score) or score < 0:
                summary.rejected += 1
                logging.warning(f"Rejected candidate {doc_id} for {candidate_list.query_id}: score {score}")
                continue
            previous = qrels.gains(candidate_list.query_id).get(doc_id)
            if previous is None or score > previous:
                qrels.set(candidate_list.query_id, doc_id, score)

    summary.queries = len(qrels.judgments)
    summary.judgments = len(qrels)
    logging.info(f"Built pseudo qrels: {summary.to_dict()}")
    return qrels, summary


def load_candidates(path: str | Path) -> list[CandidateList]:
    """Read ``{"qid": ..., "candidates": [{"id": ..., "score": ...}]}`` lines."""
    try:
        with open(path, encoding="utf-8") as f:
            lines = f.read().splitlines()
    except OSError as e:
        raise DataError(f"Cannot read candidates '{path}': {e}") from e

    lists = []
    for line_number, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            payload = json.loads(line)
            lists.append(
                CandidateList(
                    query_id=str(payload["qid"]),
                    candidates=[(str(item["id"]), float(item["score"])) for item in payload["candidates"]],
                )
            )
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
            raise DataError(f"Malformed candidate list on line {line_number} of '{path}': {e}") from e
    return lists


def format_qrels(qrels: Qrels) -> str:
    lines = []
    for query_id in qrels.queries():
        for doc_id in sorted(qrels.gains(query_id)):
            lines.append(f"{query_id} 0 {doc_id} {qrels.gain(query_id, doc_id)!r}")
    return "".join(line + "\n" for line in lines)


def write_qrels(qrels: Qrels, path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(format_qrels(qrels))


def read_qrels(path: str | Path) -> Qrels:
    try:
        with open(path, encoding="utf-8") as f:
            lines = f.read().splitlines()
    except OSError as e:
        raise DataError(f"Cannot read qrels '{path}': {e}") from e

    qrels = Qrels()
    for line_number, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) != 4:
            raise DataError(f"Malformed qrels line {line_number} in '{path}': {line!r}")
        query_id, _, doc_id, gain = parts
        if doc_id in qrels.gains(query_id):
            raise DataError(f"Duplicate judgment ({query_id}, {doc_id}) in '{path}'")
        try:
            qrels.set(query_id, doc_id, float(gain))
        except ValueError as e:
            raise DataError(f"Invalid gain on line {line_number} in '{path}': {e}") from e
    return qrels
