"""
Metadata records for seed publications and recommendable research datasets.
"""

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class _Record(BaseModel):
    model_config = ConfigDict(frozen=True, extra="ignore")

    id: str = Field(min_length=1)
    title: str | None = None
    title_en: str | None = None
    title_de: str | None = None
    abstract: str | None = None
    abstract_en: str | None = None
    abstract_de: str | None = None
    topics: list[str] = Field(default_factory=list)
    language: str | None = None

    @field_validator("id")
    @classmethod
    def validate_id(cls, value: str) -> str:
        if not value.strip():
            raise ValueError("id must not be blank")
        return value

    def text(self, field: str) -> str | None:
        return getattr(self, field, None)


class PublicationRecord(_Record):
    persons: list[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def validate_title(self):
        if not (self.title or self.title_en or self.title_de):
            raise ValueError("publication needs at least one title variant")
        return self


class DatasetRecord(_Record):
    topic_en: list[str] = Field(default_factory=list)
    topic_de: list[str] = Field(default_factory=list)
    ext_topic_de: list[str] = Field(default_factory=list)
    ext_topic_en: list[str] = Field(default_factory=list)
    data_type: str | None = None
    collection_method: str | None = None
    temporal_coverage: str | None = None
    geographical_coverage: str | None = None
    investigators: list[str] = Field(default_factory=list)
    contributors: list[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def validate_extended_topics(self):
        original = {topic.casefold() for topic in self.topics}
        overlap = [t for t in self.ext_topic_de + self.ext_topic_en if t.casefold() in original]
        if overlap:
            raise ValueError(f"extended topics repeat original topics: {overlap}")
        return self
