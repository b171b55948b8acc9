from dataclasses import dataclass, field


@dataclass(frozen=True)
class QueryClause:
    field: str
    boost: float
    terms: tuple[str, ...]

    def __post_init__(self):
        if not self.terms:
            raise ValueError(f"Clause on '{self.field}' has no terms")


@dataclass(frozen=True)
class FieldedQuery:
    publication_id: str | None = None
    clauses: tuple[QueryClause, ...] = field(default_factory=tuple)

    def __bool__(self) -> bool:
        return bool(self.clauses)

    def fields(self) -> list[str]:
        return [clause.field for clause in self.clauses]
