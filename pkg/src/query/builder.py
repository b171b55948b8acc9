"""
Dynamic fielded queries generated from a seed publication.

Each available source field of the publication queries the matching dataset fields;
topic-family fields are queried with the publication's title, abstract and topics
concatenated.
"""

from configuration import ABSTRACT_FIELDS, TITLE_FIELDS, TOPIC_FIELDS, QueryConfig
from corpus.records import PublicationRecord
from index.analyzer import get_analyzer
from index.schema import FieldSchema
from query.fielded import FieldedQuery, QueryClause


def target_fields(source_field: str) -> tuple[str, ...]:
    if source_field == "topic":
        return TOPIC_FIELDS
    if source_field in ("title", "abstract"):
        return TITLE_FIELDS if source_field == "title" else ABSTRACT_FIELDS
    return (source_field,)


def _first_text(publication: PublicationRecord, fields: tuple[str, ...]) -> str:
    for field in fields:
        if publication.text(field):
            return publication.text(field)
    return ""


def source_text(publication: PublicationRecord, source_field: str, config: QueryConfig) -> str | None:
    if source_field != "topic":
        return publication.text(source_field) or None
    if not publication.topics:
        return None
    topics = " ".join(publication.topics)
    if not config.topic_concatenation:
        return topics
    return " ".join([_first_text(publication, TITLE_FIELDS), _first_text(publication, ABSTRACT_FIELDS), topics])


def build_query(
    publication: PublicationRecord, config: QueryConfig, schema: FieldSchema | None = None
) -> FieldedQuery:
    schema = schema or FieldSchema()
    clauses = []
    for source_field in config.source_fields:
        text = source_text(publication, source_field, config)
        if not text:
            continue
        for target in target_fields(source_field):
            boost = config.boosts.get(target, 0.0)
            if boost <= 0 or target not in schema:
                continue
            analyzer = get_analyzer(schema.language(target), schema.stem)
            terms = tuple(dict.fromkeys(analyzer.analyze(text)))
            if terms:
                clauses.append(QueryClause(field=target, boost=boost, terms=terms))
    return FieldedQuery(publication_id=publication.id, clauses=tuple(clauses))
