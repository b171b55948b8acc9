import logging
import os
from pathlib import Path

from keboola.component.exceptions import UserException
from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

TITLE_FIELDS = ("title", "title_en", "title_de")
ABSTRACT_FIELDS = ("abstract", "abstract_en", "abstract_de")
TOPIC_FIELDS = ("topic", "topic_en", "topic_de", "ext_topic_de", "ext_topic_en")
TARGET_FIELDS = TITLE_FIELDS + ABSTRACT_FIELDS + TOPIC_FIELDS
SOURCE_FIELDS = TITLE_FIELDS + ABSTRACT_FIELDS + ("topic",)

# clicks per ranking position observed over a six-slot recommendation page
POSITION_CLICK_COUNTS = (21, 8, 6, 5, 2, 5)
DEFAULT_CLICK_THROUGH_RATE = 0.0145


def default_boosts(topic: float = 0.3, abstract: float = 1.0, title: float = 1.0) -> dict[str, float]:
    boosts = {field: title for field in TITLE_FIELDS}
    boosts.update({field: abstract for field in ABSTRACT_FIELDS})
    boosts.update({field: topic for field in TOPIC_FIELDS})
    return boosts


class Bm25Params(BaseModel):
    k1: float = Field(default=1.2, ge=0)
    b: float = Field(default=0.75, ge=0, le=1)


class QueryConfig(BaseModel):
    source_fields: list[str] = Field(default_factory=lambda: ["title", "title_en", "topic"])
    boosts: dict[str, float] = Field(default_factory=default_boosts)
    # topic-family clauses take title + abstract + topics as their text
    topic_concatenation: bool = True
    top_k: int = Field(default=1000, ge=1)

    @field_validator("source_fields")
    @classmethod
    def validate_source_fields(cls, value: list[str]) -> list[str]:
        unknown = [field for field in value if field not in SOURCE_FIELDS]
        if unknown:
            raise ValueError(f"Unknown query source fields: {unknown}")
        return value

    @field_validator("boosts")
    @classmethod
    def validate_boosts(cls, value: dict[str, float]) -> dict[str, float]:
        unknown = [field for field in value if field not in TARGET_FIELDS]
        if unknown:
            raise ValueError(f"Unknown boosted fields: {unknown}")
        out_of_range = {field: boost for field, boost in value.items() if not 0.0 <= boost <= 1.0}
        if out_of_range:
            raise ValueError(f"Boosts must be between 0 and 1: {out_of_range}")
        if not any(boost > 0 for boost in value.values()):
            raise ValueError("At least one target field needs a boost above 0.")
        return value

    def with_boosts(self, **overrides: float) -> "QueryConfig":
        """Copy with family-level boost overrides, e.g. ``with_boosts(topic=0.7)``."""
        families = {"title": TITLE_FIELDS, "abstract": ABSTRACT_FIELDS, "topic": TOPIC_FIELDS}
        boosts = dict(self.boosts)
        for family, boost in overrides.items():
            for field in families[family]:
                boosts[field] = boost
        return QueryConfig(
            source_fields=self.source_fields,
            boosts=boosts,
            topic_concatenation=self.topic_concatenation,
            top_k=self.top_k,
        )


class RerankConfig(BaseModel):
    enabled: bool = True
    click_boost: float = Field(default=1000.0, gt=0)
    embedding_boost: float = Field(default=500.0, gt=0)
    neighbors: int = Field(default=1, ge=1)

    @model_validator(mode="after")
    def validate_boost_order(self):
        if self.click_boost <= self.embedding_boost:
            raise ValueError("click_boost must be larger than embedding_boost.")
        return self


class LabSettings(BaseModel):
    page_size: int = Field(default=6, ge=1)
    seed: int = Field(default=0, ge=0)
    sessions: int = Field(default=1000, ge=0)
    click_counts: list[int] = Field(default_factory=lambda: list(POSITION_CLICK_COUNTS))
    click_through_rate: float = Field(default=DEFAULT_CLICK_THROUGH_RATE, gt=0, le=1)
    click_probabilities: list[float] | None = None
    impressions_per_session: int | None = Field(default=None, ge=0)

    @model_validator(mode="after")
    def validate_click_model(self):
        if self.click_probabilities is not None:
            if len(self.click_probabilities) != self.page_size:
                raise ValueError("click_probabilities must have one entry per page position.")
            if any(not 0.0 <= p <= 1.0 for p in self.click_probabilities):
                raise ValueError("click_probabilities must be between 0 and 1.")
        elif len(self.click_counts) != self.page_size:
            raise ValueError("click_counts must have one entry per page position.")
        return self


class PretestVariant(BaseModel):
    topic_boost: float = Field(ge=0, le=1)
    abstract_boost: float = Field(default=1.0, ge=0, le=1)
    reranked: bool = False


def default_variants() -> list[PretestVariant]:
    settings = [(0.5, 1.0), (0.7, 1.0), (0.3, 1.0), (0.3, 0.3), (0.3, 0.5)]
    return [
        PretestVariant(topic_boost=topic, abstract_boost=abstract, reranked=reranked)
        for topic, abstract in settings
        for reranked in (False, True)
    ]


class PretestSettings(BaseModel):
    variants: list[PretestVariant] = Field(default_factory=default_variants)


class ServeSettings(BaseModel):
    host: str = "127.0.0.1"
    port: int = Field(default=8000, ge=1, le=65535)
    max_results: int = Field(default=6, ge=1)


class PathsConfig(BaseModel):
    publications: str | None = None
    datasets: str | None = None
    translations: str | None = None
    embeddings: str | None = None
    click_log: str | None = None
    candidates: str | None = None
    out_dir: str = "out"
    index: str | None = None
    run: str | None = None
    baseline_run: str | None = None
    experimental_runs: list[str] = Field(default_factory=list)
    sessions: str | None = None
    metric_report: str | None = None
    lab_report: str | None = None


class PipelineConfig(BaseModel):
    command: str | None = None
    debug: bool = False
    stem: bool = False
    paths: PathsConfig = Field(default_factory=PathsConfig)
    query: QueryConfig = Field(default_factory=QueryConfig)
    bm25: Bm25Params = Field(default_factory=Bm25Params)
    rerank: RerankConfig = Field(default_factory=RerankConfig)
    lab: LabSettings = Field(default_factory=LabSettings)
    pretest: PretestSettings = Field(default_factory=PretestSettings)
    serve: ServeSettings = Field(default_factory=ServeSettings)
    run_tag: str = "bm25"
    # sync action "recommendation"
    publication_id: str | None = None

    @model_validator(mode="before")
    def apply_environment(cls, data):
        env_seed = os.environ.get("RECSYS_SEED")
        if env_seed is not None and isinstance(data, dict):
            logging.info("Using RECSYS_SEED from environment.")
            data = dict(data)
            lab = dict(data.get("lab") or {})
            lab["seed"] = int(env_seed)
            data["lab"] = lab
        return data

    def resolve(self, base_dir: Path) -> "PipelineConfig":
        """Return a copy where every relative path is anchored at ``base_dir``."""
        paths = self.paths.model_dump()
        for key, value in paths.items():
            if isinstance(value, str) and not Path(value).is_absolute():
                paths[key] = str(base_dir / value)
            elif isinstance(value, list):
                paths[key] = [item if Path(item).is_absolute() else str(base_dir / item) for item in value]
        return self.model_copy(update={"paths": PathsConfig(**paths)})

    def artifact(self, name: str) -> Path:
        return Path(self.paths.out_dir) / name

    @property
    def index_path(self) -> Path:
        return Path(self.paths.index) if self.paths.index else self.artifact("index.json")

    @property
    def run_path(self) -> Path:
        return Path(self.paths.run) if self.paths.run else self.artifact(f"{self.run_tag}.run")


def load_config(parameters: dict) -> PipelineConfig:
    """Validate raw parameters, reporting problems as user errors."""
    try:
        return PipelineConfig(**parameters)
    except ValidationError as e:
        raise UserException(f"Invalid configuration: {e}") from e
