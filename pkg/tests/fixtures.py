"""Synthetic corpora and file helpers shared by the test packages."""

import json
from pathlib import Path

import numpy as np

GERMAN_WORDS = ["wahl", "familie", "arbeit", "bildung", "politische", "einstellungen", "gesundheit", "umwelt"]
ENGLISH_WORDS = ["election", "family", "labour", "education", "political", "attitudes", "health", "survey"]
TOPICS = ["Familie", "Wahlen", "Bildung", "Gesundheit", "family", "elections", "education", "health survey"]


def write_jsonl(path: str | Path, rows: list) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        for row in rows:
            f.write((row if isinstance(row, str) else json.dumps(row, ensure_ascii=False)) + "\n")
    return path


def _phrase(rng: np.random.Generator, words: list[str], low: int, high: int) -> str:
    return " ".join(words[i] for i in rng.integers(len(words), size=int(rng.integers(low, high))))


def synthetic_corpus(seed: int = 7, publications: int = 100, datasets: int = 200) -> tuple[list[dict], list[dict]]:
    """Random bilingual publication and dataset rows drawn from small word lists."""
    rng = np.random.default_rng(seed)
    dataset_rows = []
    for n in range(datasets):
        row = {
            "id": f"d{n:03d}",
            "title": _phrase(rng, GERMAN_WORDS + ENGLISH_WORDS, 2, 6),
            "title_en": _phrase(rng, ENGLISH_WORDS, 2, 5),
            "abstract_de": _phrase(rng, GERMAN_WORDS, 5, 15),
            "topics": sorted({TOPICS[i] for i in rng.integers(len(TOPICS), size=2)}),
        }
        if n % 3 == 0:
            row["abstract_en"] = _phrase(rng, ENGLISH_WORDS, 5, 15)
        dataset_rows.append(row)

    publication_rows = []
    for n in range(publications):
        row = {
            "id": f"p{n:03d}",
            "title": _phrase(rng, GERMAN_WORDS, 2, 6),
            "title_en": _phrase(rng, ENGLISH_WORDS, 2, 6),
            "abstract": _phrase(rng, GERMAN_WORDS + ENGLISH_WORDS, 5, 20),
            "persons": ["Doe, J."],
        }
        if n % 2 == 0:
            row["topics"] = [TOPICS[int(rng.integers(len(TOPICS)))]]
        publication_rows.append(row)
    return publication_rows, dataset_rows


def write_corpus(directory: str | Path, seed: int = 7, publications: int = 100, datasets: int = 200):
    publication_rows, dataset_rows = synthetic_corpus(seed, publications, datasets)
    directory = Path(directory)
    return (
        write_jsonl(directory / "publications.jsonl", publication_rows),
        write_jsonl(directory / "datasets.jsonl", dataset_rows),
    )


def write_candidates(path: str | Path, candidates: dict[str, list[tuple[str, float]]]) -> Path:
    rows = [
        {"qid": qid, "candidates": [{"id": doc_id, "score": score} for doc_id, score in items]}
        for qid, items in candidates.items()
    ]
    return write_jsonl(path, rows)
