"""
TREC-style runs: ranked dataset lists keyed by seed publication id.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path

from exceptions import DataError


@dataclass(frozen=True)
class RankedEntry:
    doc_id: str
    score: float


def sort_entries(entries: list[RankedEntry]) -> list[RankedEntry]:
    """Order by score descending, ties by doc id ascending."""
    return sorted(entries, key=lambda entry: (-entry.score, entry.doc_id))


@dataclass
class Run:
    tag: str = "run"
    rankings: dict[str, list[RankedEntry]] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.rankings)

    def ranking(self, query_id: str) -> list[RankedEntry]:
        return self.rankings.get(query_id, [])

    def doc_ids(self, query_id: str) -> list[str]:
        return [entry.doc_id for entry in self.ranking(query_id)]

    def validate(self) -> None:
        for query_id, entries in self.rankings.items():
            doc_ids = [entry.doc_id for entry in entries]
            if len(doc_ids) != len(set(doc_ids)):
                raise DataError(f"Duplicate dataset ids in ranking of query '{query_id}'")
            if any(a.score < b.score for a, b in zip(entries, entries[1:])):
                raise DataError(f"Scores increase with rank in ranking of query '{query_id}'")


def format_run(run: Run) -> str:
    lines = []
    for query_id in sorted(run.rankings):
        for rank, entry in enumerate(run.rankings[query_id], start=1):
            lines.append(f"{query_id} Q0 {entry.doc_id} {rank} {entry.score:.6f} {run.tag}")
    return "".join(line + "\n" for line in lines)


def write_run(run: Run, path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(format_run(run))
    logging.info(f"Wrote run '{run.tag}' with {len(run)} queries to {path}")


def read_run(path: str | Path) -> Run:
    """Parse ``qid Q0 docid rank score tag`` lines; entries are ordered by their rank column."""
    try:
        with open(path, encoding="utf-8") as f:
            lines = f.read().splitlines()
    except OSError as e:
        raise DataError(f"Cannot read run file '{path}': {e}") from e

    ranked: dict[str, list[tuple[int, RankedEntry]]] = {}
    tag = None
    for line_number, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) != 6:
            raise DataError(f"Malformed run line {line_number} in '{path}': {line!r}")
        query_id, _, doc_id, rank, score, tag = parts
        try:
            ranked.setdefault(query_id, []).append((int(rank), RankedEntry(doc_id, float(score))))
        except ValueError as e:
            raise DataError(f"Malformed run line {line_number} in '{path}': {e}") from e

    run = Run(tag=tag or Path(path).stem)
    for query_id, entries in ranked.items():
        run.rankings[query_id] = [entry for _, entry in sorted(entries, key=lambda item: item[0])]
    run.validate()
    return run
