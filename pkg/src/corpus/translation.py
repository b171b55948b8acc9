"""
Merging of externally produced machine translations into the corpus.
"""

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

from corpus.loader import RecordCollection, Rejection
from exceptions import DataError

TRANSLATABLE_FIELDS = ("title", "abstract")
TARGET_LANGUAGES = ("de", "en")


@dataclass(frozen=True)
class TranslationEntry:
    record_id: str
    field: str
    lang: str
    text: str

    @property
    def target_field(self) -> str:
        return f"{self.field}_{self.lang}"


@dataclass
class TranslationTable:
    entries: list[TranslationEntry] = field(default_factory=list)
    rejections: list[Rejection] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.entries)


@dataclass
class TranslationSummary:
    applied: int = 0
    kept_existing: int = 0
    unknown_ids: int = 0

    def to_dict(self) -> dict:
        return {"applied": self.applied, "kept_existing": self.kept_existing, "unknown_ids": self.unknown_ids}


def load_translations(path: str | Path) -> TranslationTable:
    """Parse ``{"id","field","lang","text"}`` lines; unknown fields or languages are rejected."""
    path = Path(path)
    try:
        with open(path, encoding="utf-8") as f:
            lines = f.read().splitlines()
    except (OSError, UnicodeDecodeError) as e:
        raise DataError(f"Cannot read translation table '{path}': {e}") from e

    table = TranslationTable()
    for line_number, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            payload = json.loads(line)
            entry = TranslationEntry(
                record_id=str(payload["id"]),
                field=str(payload["field"]),
                lang=str(payload["lang"]),
                text=str(payload["text"]),
            )
        except (json.JSONDecodeError, KeyError, TypeError) as e:
            table.rejections.append(Rejection(line_number, f"malformed translation entry: {e}"))
            continue
        if entry.field not in TRANSLATABLE_FIELDS:
            table.rejections.append(Rejection(line_number, f"unknown field '{entry.field}'", entry.record_id))
            continue
        if entry.lang not in TARGET_LANGUAGES:
            table.rejections.append(Rejection(line_number, f"unknown language '{entry.lang}'", entry.record_id))
            continue
        table.entries.append(entry)

    logging.info(f"Loaded {len(table)} translations from {path} ({len(table.rejections)} rejected)")
    return table


def apply_translations(
    collection: RecordCollection, table: TranslationTable
) -> tuple[RecordCollection, TranslationSummary]:
    """
    Fill missing language-suffixed fields from the table.

    Existing values are never overwritten, so applying the same table twice gives the
    same collection as applying it once.
    """
    summary = TranslationSummary()
    records = dict(collection.records)

    for entry in table.entries:
        if entry.field not in TRANSLATABLE_FIELDS:
            raise ValueError(f"Field '{entry.field}' is not translatable.")
        record = records.get(entry.record_id)
        if record is None:
            summary.unknown_ids += 1
            continue
        if record.text(entry.target_field):
            summary.kept_existing += 1
            continue
        records[entry.record_id] = record.model_copy(update={entry.target_field: entry.text})
        summary.applied += 1

    if summary.unknown_ids:
        logging.warning(f"Skipped {summary.unknown_ids} translations for unknown record ids")
    return collection.replace(records), summary
