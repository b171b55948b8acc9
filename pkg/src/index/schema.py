from dataclasses import dataclass, field

from configuration import TARGET_FIELDS

LIST_FIELDS = {
    "topic": "topics",
    "topic_en": "topic_en",
    "topic_de": "topic_de",
    "ext_topic_de": "ext_topic_de",
    "ext_topic_en": "ext_topic_en",
}


def _language_of(field_name: str) -> str:
    if field_name.endswith("_de"):
        return "de"
    if field_name.endswith("_en"):
        return "en"
    return "neutral"


@dataclass(frozen=True)
class FieldSchema:
    """Indexed dataset field -> analyzer language."""

    fields: dict[str, str] = field(default_factory=lambda: {name: _language_of(name) for name in TARGET_FIELDS})
    stem: bool = False

    def __post_init__(self):
        for name, language in self.fields.items():
            if language != _language_of(name):
                raise ValueError(f"Field '{name}' must use the '{_language_of(name)}' analyzer, not '{language}'")

    def __contains__(self, field_name: str) -> bool:
        return field_name in self.fields

    def language(self, field_name: str) -> str:
        return self.fields[field_name]

    def field_text(self, record, field_name: str) -> list[str]:
        """Raw text pieces of a record field; list fields yield one piece per term."""
        if field_name in LIST_FIELDS:
            return list(getattr(record, LIST_FIELDS[field_name], []) or [])
        value = getattr(record, field_name, None)
        return [value] if value else []

    def to_dict(self) -> dict:
        return {"fields": dict(sorted(self.fields.items())), "stem": self.stem}

    @classmethod
    def from_dict(cls, data: dict) -> "FieldSchema":
        return cls(fields=dict(data["fields"]), stem=bool(data.get("stem", False)))
