"""
JSONL ingestion of publication and dataset metadata.

Every input line yields either a record or a line-addressed rejection; nothing is
dropped silently.
"""

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Generic, TypeVar

from pydantic import BaseModel, ValidationError

from corpus.records import DatasetRecord, PublicationRecord
from exceptions import DataError

RecordT = TypeVar("RecordT", bound=BaseModel)


@dataclass(frozen=True)
class Rejection:
    line: int
    reason: str
    record_id: str | None = None

    def to_dict(self) -> dict:
        return {"line": self.line, "reason": self.reason, "id": self.record_id}


@dataclass(frozen=True)
class RecordCollection(Generic[RecordT]):
    records: dict[str, RecordT] = field(default_factory=dict)
    rejections: list[Rejection] = field(default_factory=list)
    source: str | None = None

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records.values())

    def __contains__(self, record_id: str) -> bool:
        return record_id in self.records

    def get(self, record_id: str) -> RecordT | None:
        return self.records.get(record_id)

    def replace(self, records: dict[str, RecordT]) -> "RecordCollection[RecordT]":
        return RecordCollection(records=records, rejections=list(self.rejections), source=self.source)

    def rejection_report(self) -> dict:
        return {
            "source": self.source,
            "accepted": len(self.records),
            "rejected": len(self.rejections),
            "rejections": [rejection.to_dict() for rejection in self.rejections],
        }


def _read_lines(path: Path) -> list[str]:
    try:
        with open(path, encoding="utf-8") as f:
            return f.read().splitlines()
    except (OSError, UnicodeDecodeError) as e:
        raise DataError(f"Cannot read corpus file '{path}': {e}") from e


def _load(path: str | Path, model: type[RecordT]) -> RecordCollection[RecordT]:
    path = Path(path)
    records: dict[str, RecordT] = {}
    rejections: list[Rejection] = []

    for line_number, line in enumerate(_read_lines(path), start=1):
        if not line.strip():
            continue
        try:
            payload = json.loads(line)
        except json.JSONDecodeError as e:
            rejections.append(Rejection(line_number, f"malformed JSON: {e.msg}"))
            continue
        if not isinstance(payload, dict):
            rejections.append(Rejection(line_number, "line is not a JSON object"))
            continue

        raw_id = payload.get("id") if isinstance(payload.get("id"), str) else None
        try:
            record = model.model_validate(payload)
        except ValidationError as e:
            reason = "; ".join(f"{'.'.join(map(str, err['loc'])) or 'record'}: {err['msg']}" for err in e.errors())
            rejections.append(Rejection(line_number, reason, raw_id))
            continue

        if record.id in records:
            rejections.append(Rejection(line_number, "duplicate id", record.id))
            continue
        records[record.id] = record

    for rejection in rejections:
        logging.warning(f"Rejected line {rejection.line} of {path.name}: {rejection.reason}")
    logging.info(f"Loaded {len(records)} records from {path} ({len(rejections)} rejected)")
    return RecordCollection(records=records, rejections=rejections, source=str(path))


def load_publications(path: str | Path) -> RecordCollection[PublicationRecord]:
    return _load(path, PublicationRecord)


def load_datasets(path: str | Path) -> RecordCollection[DatasetRecord]:
    return _load(path, DatasetRecord)


def save_records(collection: RecordCollection, path: str | Path) -> None:
    """Write the collection as normalized JSONL, one record per line in collection order."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        for record in collection:
            payload = record.model_dump(mode="json", exclude_none=True)
            f.write(json.dumps(payload, ensure_ascii=False, sort_keys=True) + "\n")
