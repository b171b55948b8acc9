"""
Document embedding vectors and Euclidean nearest-neighbour lookup.

Vectors are produced outside this package; ``hash_embedding`` is a deterministic
stand-in for fixtures and smoke runs.
"""

import hashlib
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from exceptions import DataError


class DimensionMismatchError(ValueError):
    pass


@dataclass
class EmbeddingStore:
    dimension: int | None = None
    vectors: dict[str, np.ndarray] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.vectors)

    def __contains__(self, item_id: str) -> bool:
        return item_id in self.vectors

    def add(self, item_id: str, vector: Sequence[float]) -> None:
        vector = np.asarray(vector, dtype=np.float64)
        if vector.ndim != 1 or vector.size == 0:
            raise DimensionMismatchError(f"Vector for '{item_id}' must be a non-empty 1-d array")
        if self.dimension is None:
            self.dimension = int(vector.size)
        elif vector.size != self.dimension:
            raise DimensionMismatchError(
                f"Vector for '{item_id}' has {vector.size} dimensions, expected {self.dimension}"
            )
        if item_id in self.vectors:
            raise ValueError(f"Duplicate embedding id '{item_id}'")
        self.vectors[item_id] = vector


def euclidean_distance(a: Sequence[float], b: Sequence[float]) -> float:
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise DimensionMismatchError(f"Cannot compare vectors of shape {a.shape} and {b.shape}")
    return float(np.sqrt(np.sum((a - b) ** 2)))


def knn_neighbors(store: EmbeddingStore, seed_id: str, k: int, candidate_ids: Iterable[str]) -> list[str]:
    """The ``k`` candidates closest to the seed, ties broken by id; unknown candidates are skipped."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if seed_id not in store:
        raise KeyError(seed_id)
    seed = store.vectors[seed_id]
    candidates = sorted({candidate for candidate in candidate_ids if candidate in store})
    if not candidates:
        return []
    matrix = np.stack([store.vectors[candidate] for candidate in candidates])
    distances = np.sqrt(np.sum((matrix - seed) ** 2, axis=1))
    # candidates are id-sorted, so a stable sort on distance breaks ties by id
    order = np.argsort(distances, kind="stable")[:k]
    return [candidates[i] for i in order]


def hash_embedding(item_id: str, dimension: int = 8) -> np.ndarray:
    seed = int.from_bytes(hashlib.sha256(item_id.encode("utf-8")).digest()[:8], "big")
    return np.random.default_rng(seed).standard_normal(dimension)


def build_hash_store(item_ids: Iterable[str], dimension: int = 8) -> EmbeddingStore:
    store = EmbeddingStore()
    for item_id in item_ids:
        store.add(item_id, hash_embedding(item_id, dimension))
    return store


def load_embeddings(path: str | Path) -> EmbeddingStore:
    """Read ``dim<TAB>d`` followed by ``id<TAB>v1,v2,...`` lines."""
    try:
        with open(path, encoding="utf-8") as f:
            lines = [line for line in f.read().splitlines() if line.strip()]
    except OSError as e:
        raise DataError(f"Cannot read embeddings '{path}': {e}") from e
    if not lines:
        return EmbeddingStore()

    header = lines[0].split("\t")
    if len(header) != 2 or header[0] != "dim":
        raise DataError(f"Embedding file '{path}' lacks the 'dim<TAB>d' header line")
    store = EmbeddingStore(dimension=int(header[1]))
    try:
        for line in lines[1:]:
            item_id, values = line.split("\t", 1)
            store.add(item_id, [float(value) for value in values.split(",")])
    except ValueError as e:
        raise DataError(f"Malformed embedding file '{path}': {e}") from e
    logging.info(f"Loaded {len(store)} embeddings of dimension {store.dimension} from {path}")
    return store


def save_embeddings(store: EmbeddingStore, path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(f"dim\t{store.dimension or 0}\n")
        for item_id in sorted(store.vectors):
            f.write(item_id + "\t" + ",".join(repr(float(value)) for value in store.vectors[item_id]) + "\n")
