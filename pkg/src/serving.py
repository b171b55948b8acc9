"""
Read-only HTTP endpoint over a precomputed recommendation run.
"""

import logging
from dataclasses import dataclass, field
from datetime import datetime, timezone
from types import MappingProxyType
from typing import Iterable, Mapping

from fastapi import APIRouter, FastAPI, HTTPException, Query

from configuration import ServeSettings
from query.run import RankedEntry, Run

SERVICE_NAME = "dataset-recommender"
SERVICE_VERSION = "1.0.0"
API_VERSION = "1"


@dataclass(frozen=True)
class RecommendationStore:
    rankings: Mapping[str, tuple[RankedEntry, ...]] = field(default_factory=dict)
    tag: str = ""

    @classmethod
    def from_run(cls, run: Run, publication_ids: Iterable[str] = ()) -> "RecommendationStore":
        """Rankings of ``run``; processed publications absent from it get an empty ranking."""
        rankings = {publication_id: () for publication_id in publication_ids}
        rankings.update({query_id: tuple(entries) for query_id, entries in run.rankings.items()})
        return cls(rankings=MappingProxyType(rankings), tag=run.tag)

    def __len__(self) -> int:
        return len(self.rankings)

    def lookup(self, publication_id: str, count: int) -> list[dict] | None:
        entries = self.rankings.get(publication_id)
        if entries is None:
            return None
        return [
            {"id": entry.doc_id, "rank": rank, "score": entry.score}
            for rank, entry in enumerate(entries[:count], start=1)
        ]


def parse_count(raw: str | None, default: int) -> int:
    if raw is None:
        return default
    try:
        count = int(raw)
    except ValueError:
        raise HTTPException(status_code=400, detail=f"count must be a positive integer, got {raw!r}")
    if count < 1:
        raise HTTPException(status_code=400, detail=f"count must be a positive integer, got {raw!r}")
    return count


def create_app(store: RecommendationStore | None, settings: ServeSettings | None = None) -> FastAPI:
    settings = settings or ServeSettings()
    started_at = datetime.now(timezone.utc).isoformat()
    router = APIRouter(tags=["Recommendations"])

    @router.get("/recommendation/{publication_id}")
    def recommendation(publication_id: str, count: str | None = Query(default=None)) -> dict:
        limit = min(parse_count(count, settings.max_results), settings.max_results)
        if store is None:
            raise HTTPException(status_code=503, detail="Recommendations are not loaded")
        results = store.lookup(publication_id, limit)
        return {
            "api_version": API_VERSION,
            "publication_id": publication_id,
            "known": results is not None,
            "results": results or [],
        }

    @router.get("/health")
    def health() -> dict:
        return {
            "service": SERVICE_NAME,
            "version": SERVICE_VERSION,
            "api_version": API_VERSION,
            "status": "ok" if store is not None else "not loaded",
            "queries": len(store) if store is not None else 0,
            "run": store.tag if store is not None else None,
            "started_at": started_at,
        }

    app = FastAPI(title=SERVICE_NAME, version=SERVICE_VERSION)
    app.include_router(router)
    return app


def serve(store: RecommendationStore, settings: ServeSettings) -> None:
    import uvicorn

    logging.info(f"Serving {len(store)} precomputed rankings on {settings.host}:{settings.port}")
    uvicorn.run(create_app(store, settings), host=settings.host, port=settings.port)
