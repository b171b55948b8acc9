import math
import tempfile
import unittest
from pathlib import Path

import numpy as np

from configuration import Bm25Params
from corpus.records import DatasetRecord
from exceptions import DataError
from index.analyzer import analyze
from index.inverted_index import (
    UnknownDocumentError,
    UnknownFieldError,
    bm25_term_score,
    build_index,
    field_statistics,
    load_index,
    save_index,
    search,
)
from index.schema import LIST_FIELDS, FieldSchema
from query.fielded import FieldedQuery, QueryClause

WORDS = ["alpha", "beta", "gamma", "delta", "epsilon", "zeta", "theta", "kappa", "lambda", "sigma"]
TEXT_FIELDS = ["title", "title_en", "title_de", "abstract", "abstract_en", "abstract_de"]


def random_corpus(rng: np.random.Generator, max_docs: int = 20) -> list[DatasetRecord]:
    records = []
    for n in range(int(rng.integers(1, max_docs + 1))):
        payload = {"id": f"d{int(rng.integers(1000)):03d}-{n}"}
        for name in TEXT_FIELDS:
            if rng.random() < 0.6:
                payload[name] = " ".join(WORDS[i] for i in rng.integers(len(WORDS), size=int(rng.integers(1, 8))))
        for name, attribute in LIST_FIELDS.items():
            if rng.random() < 0.4:
                payload[attribute] = [WORDS[i] for i in rng.integers(len(WORDS), size=int(rng.integers(1, 4)))]
        topics = payload.get("topics", [])
        for attribute in ("ext_topic_de", "ext_topic_en"):
            payload[attribute] = [term for term in payload.get(attribute, []) if term not in topics]
        records.append(DatasetRecord(**payload))
    return records


def random_query(rng: np.random.Generator, schema: FieldSchema) -> FieldedQuery:
    names = sorted(schema.fields)
    chosen = rng.choice(len(names), size=int(rng.integers(1, 9)), replace=False)
    clauses = []
    for i in sorted(chosen):
        terms = tuple(dict.fromkeys(WORDS[j] for j in rng.integers(len(WORDS), size=int(rng.integers(1, 4)))))
        boost = float(rng.choice([0.0, 0.3, 0.5, 1.0]))
        clauses.append(QueryClause(names[i], boost, terms))
    return FieldedQuery("q", tuple(clauses))


def brute_force(records, schema: FieldSchema, query: FieldedQuery, params: Bm25Params) -> list[tuple[str, float]]:
    """Score every document against every clause term from scratch."""
    tokens = {
        name: {
            record.id: [t for text in schema.field_text(record, name) for t in analyze(text, schema.language(name))]
            for record in records
        }
        for name in schema.fields
    }
    scores = {}
    for record in records:
        total = 0.0
        for clause in query.clauses:
            if clause.boost == 0:
                continue
            field_tokens = {doc_id: toks for doc_id, toks in tokens[clause.field].items() if toks}
            if record.id not in field_tokens:
                continue
            n = len(field_tokens)
            avg = sum(len(toks) for toks in field_tokens.values()) / n
            length = len(field_tokens[record.id])
            for term in clause.terms:
                tf = field_tokens[record.id].count(term)
                if tf == 0:
                    continue
                df = sum(1 for toks in field_tokens.values() if term in toks)
                idf = math.log(1 + (n - df + 0.5) / (df + 0.5))
                norm = params.k1 * (1 - params.b + params.b * length / avg)
                total += clause.boost * (idf * tf * (params.k1 + 1) / (tf + norm))
        if total > 0:
            scores[record.id] = total
    return sorted(scores.items(), key=lambda item: (-item[1], item[0]))


class TestBuildIndex(unittest.TestCase):
    """Test cases for index construction."""

    def test_single_document_counts(self):
        """Test a repeated title term is counted in postings and field length."""
        index = build_index([DatasetRecord(id="d1", title="wahl wahl")])

        title = index.field_index("title")
        self.assertEqual(title.postings["wahl"], {"d1": 2})
        self.assertEqual(title.lengths["d1"], 2)
        self.assertEqual(title.avg_length, 2.0)

    def test_empty_corpus(self):
        """Test an empty index returns empty rankings."""
        index = build_index([])
        query = FieldedQuery("p", (QueryClause("title", 1.0, ("wahl",)),))

        self.assertEqual(len(index), 0)
        self.assertEqual(search(index, query, 10), [])

    def test_duplicate_id_is_fatal(self):
        """Test indexing two records with the same id fails."""
        with self.assertRaises(DataError):
            build_index([DatasetRecord(id="d1", title="a"), DatasetRecord(id="d1", title="b")])

    def test_statistics_match_recount(self):
        """Test per-field doc counts, lengths and postings agree with a recount of the records."""
        rng = np.random.default_rng(3)
        records = random_corpus(rng, 20)
        schema = FieldSchema()

        index = build_index(records, schema)
        statistics = field_statistics(index)

        for name in schema.fields:
            lengths = {
                record.id: len(
                    [t for text in schema.field_text(record, name) for t in analyze(text, schema.language(name))]
                )
                for record in records
            }
            lengths = {doc_id: length for doc_id, length in lengths.items() if length}
            field_index = index.field_index(name)
            self.assertEqual(field_index.lengths, lengths)
            self.assertEqual(statistics[name]["doc_count"], len(lengths))
            expected_avg = sum(lengths.values()) / len(lengths) if lengths else 0.0
            self.assertAlmostEqual(statistics[name]["avg_length"], expected_avg, places=12)
            for doc_id, length in lengths.items():
                self.assertEqual(sum(p.get(doc_id, 0) for p in field_index.postings.values()), length)

    def test_insertion_order_independent(self):
        """Test the same corpus in reverse order gives identical postings and statistics."""
        records = random_corpus(np.random.default_rng(5), 20)

        forward = build_index(records)
        backward = build_index(list(reversed(records)))

        self.assertEqual(field_statistics(forward), field_statistics(backward))
        for name in forward.fields:
            self.assertEqual(forward.fields[name].postings, backward.fields[name].postings)


class LengthsWithoutScan(dict):
    def values(self):
        raise AssertionError("field lengths summed during scoring")


class TestBm25(unittest.TestCase):
    """Test cases for BM25 term scoring and fielded search."""

    def setUp(self):
        self.index = build_index([DatasetRecord(id="d1", title="wahl")])

    def test_single_document_score(self):
        """Test the hand-evaluated score ln(4/3) for a one-document corpus."""
        score = bm25_term_score(self.index, "title", "wahl", "d1")

        self.assertAlmostEqual(score, math.log(4 / 3), places=12)
        self.assertAlmostEqual(score, 0.2877, places=4)

    def test_absent_term_scores_zero(self):
        """Test a term missing from the document's field scores 0."""
        self.assertEqual(bm25_term_score(self.index, "title", "studie", "d1"), 0.0)
        self.assertEqual(bm25_term_score(self.index, "abstract", "wahl", "d1"), 0.0)

    def test_unknown_field_and_document(self):
        """Test unknown fields and documents are errors."""
        with self.assertRaises(UnknownFieldError):
            bm25_term_score(self.index, "persons", "wahl", "d1")
        with self.assertRaises(UnknownDocumentError):
            bm25_term_score(self.index, "title", "wahl", "d9")
        with self.assertRaises(UnknownFieldError):
            search(self.index, FieldedQuery("p", (QueryClause("persons", 1.0, ("wahl",)),)), 5)

    def test_single_clause_search(self):
        """Test one clause with boost 1 ranks the single document with its term score."""
        ranking = search(self.index, FieldedQuery("p", (QueryClause("title", 1.0, ("wahl",)),)), 10)

        self.assertEqual([entry.doc_id for entry in ranking], ["d1"])
        self.assertAlmostEqual(ranking[0].score, 0.2877, places=4)

    def test_zero_boosts_give_empty_ranking(self):
        """Test clauses boosted with 0 contribute nothing."""
        query = FieldedQuery("p", (QueryClause("title", 0.0, ("wahl",)),))

        self.assertEqual(search(self.index, query, 10), [])

    def test_tf_monotonic(self):
        """Test a higher term frequency at equal length, df and N never lowers the score."""
        index = build_index(
            [
                DatasetRecord(id="a", title="wahl studie panel welle"),
                DatasetRecord(id="b", title="wahl wahl panel welle"),
                DatasetRecord(id="c", title="umfrage"),
            ]
        )

        self.assertGreater(
            bm25_term_score(index, "title", "wahl", "b"), bm25_term_score(index, "title", "wahl", "a")
        )

    def test_brute_force_equivalence(self):
        """Test search equals an exhaustive scorer on 200 random corpora, tie-breaks included."""
        rng = np.random.default_rng(2024)
        schema = FieldSchema()
        params = Bm25Params()
        for _ in range(200):
            records = random_corpus(rng)
            index = build_index(records, schema, params)
            query = random_query(rng, schema)

            ranking = search(index, query, 1000)
            expected = brute_force(records, schema, query, params)

            self.assertEqual([entry.doc_id for entry in ranking], [doc_id for doc_id, _ in expected])
            for entry, (_, score) in zip(ranking, expected):
                self.assertAlmostEqual(entry.score, score, delta=1e-9)

    def test_scale_property(self):
        """Test multiplying every boost by c scales scores by c and keeps the order."""
        rng = np.random.default_rng(9)
        records = random_corpus(rng, 20)
        index = build_index(records)
        query = random_query(rng, index.schema)
        scaled = FieldedQuery("q", tuple(QueryClause(c.field, c.boost * 0.5, c.terms) for c in query.clauses))

        base = search(index, query, 100)
        half = search(index, scaled, 100)

        self.assertEqual([e.doc_id for e in base], [e.doc_id for e in half])
        for a, b in zip(base, half):
            self.assertAlmostEqual(a.score * 0.5, b.score, delta=1e-12)

    def test_adding_a_term_never_lowers_scores(self):
        """Test OR semantics: an extra clause term only adds score."""
        records = random_corpus(np.random.default_rng(13), 20)
        index = build_index(records)
        narrow = FieldedQuery("q", (QueryClause("title", 1.0, ("alpha",)),))
        wide = FieldedQuery("q", (QueryClause("title", 1.0, ("alpha", "beta")),))

        narrow_scores = {e.doc_id: e.score for e in search(index, narrow, 100)}
        wide_scores = {e.doc_id: e.score for e in search(index, wide, 100)}

        for doc_id, score in narrow_scores.items():
            self.assertGreaterEqual(wide_scores[doc_id], score)

    def test_top_k_truncates(self):
        """Test rankings are cut after top_k entries and ties break by doc id."""
        index = build_index([DatasetRecord(id=f"d{n}", title="wahl") for n in (3, 1, 2)])

        ranking = search(index, FieldedQuery("p", (QueryClause("title", 1.0, ("wahl",)),)), 2)

        self.assertEqual([entry.doc_id for entry in ranking], ["d1", "d2"])

    def test_search_does_not_rescan_field_lengths(self):
        """Test scoring many postings reads the kept length total instead of summing every field length."""
        index = build_index([DatasetRecord(id=f"d{n:04d}", title="wahl" + " jahr" * (n % 3)) for n in range(2000)])
        query = FieldedQuery("p", (QueryClause("title", 1.0, ("wahl",)),))
        expected = search(index, query, 2000)
        title = index.field_index("title")
        title.lengths = LengthsWithoutScan(title.lengths)

        self.assertEqual(search(index, query, 2000), expected)
        self.assertEqual(title.total_length, 2000 + 1999)


class TestPersistence(unittest.TestCase):
    """Test cases for saving and loading the index."""

    def test_save_load_round_trip(self):
        """Test a loaded index searches exactly like the saved one and rebuilds are byte-identical."""
        records = random_corpus(np.random.default_rng(21), 20)
        index = build_index(records)
        query = random_query(np.random.default_rng(22), index.schema)
        with tempfile.TemporaryDirectory() as tmp:
            first, second = Path(tmp) / "a.json", Path(tmp) / "b.json"
            save_index(index, first)
            save_index(build_index(list(reversed(records))), second)
            loaded = load_index(first)

            self.assertEqual(first.read_bytes(), second.read_bytes())
        self.assertEqual(search(loaded, query, 100), search(index, query, 100))
        self.assertEqual(loaded.schema, index.schema)
        self.assertEqual(loaded.params, index.params)
        self.assertEqual(field_statistics(loaded), field_statistics(index))

    def test_load_rejects_foreign_files(self):
        """Test unreadable or foreign index files are data errors."""
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "index.json"
            path.write_text('{"format": "other"}', "utf-8")

            with self.assertRaises(DataError):
                load_index(path)
            with self.assertRaises(DataError):
                load_index(Path(tmp) / "missing.json")


if __name__ == "__main__":
    unittest.main()
