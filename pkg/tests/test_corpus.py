"""Parsing, filtering and statistics, checked against naive recount oracles."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import make_corpus, make_pub, random_corpus
from termscape.corpus import (
    Corpus,
    corpus_stats,
    filter_corpus,
    parse_csv,
    parse_jsonl,
    write_csv,
    write_jsonl,
)
from termscape.errors import InputError


class TestParseJsonl:
    def test_empty_stream(self):
        assert parse_jsonl(b"").publications == []

    def test_single_record_without_abstract(self):
        line = b'{"id":"p1","title":"Atrial ablation","year":2008,"citations":4,"doc_type":"article"}'
        result = parse_jsonl(line)
        assert len(result.publications) == 1
        pub = result.publications[0]
        assert pub.id == "p1"
        assert pub.title == "Atrial ablation"
        assert pub.abstract is None
        assert pub.year == 2008
        assert pub.citations == 4
        assert not result.diagnostics

    def test_duplicate_id_keeps_first_and_reports(self):
        lines = (
            b'{"id":"p1","title":"First","year":2008,"citations":1,"doc_type":"article"}\n'
            b'{"id":"p1","title":"Second","year":2009,"citations":2,"doc_type":"article"}\n'
        )
        result = parse_jsonl(lines)
        assert len(result.publications) == 1
        assert result.publications[0].title == "First"
        assert len(result.diagnostics) == 1
        assert "duplicate id" in result.diagnostics[0].message
        assert result.diagnostics[0].line == 2

    def test_malformed_line_reported_with_line_number(self):
        data = b'{"id":"p1","title":"Ok","year":2008,"citations":0,"doc_type":"article"}\nnot json\n'
        result = parse_jsonl(data)
        assert len(result.publications) == 1
        assert result.diagnostics[0].line == 2

    def test_non_object_line(self):
        result = parse_jsonl(b"[1, 2]\n")
        assert not result.publications
        assert "not a JSON object" in result.diagnostics[0].message

    def test_missing_field_and_negative_citations(self):
        data = (
            b'{"id":"p1","year":2008,"citations":0,"doc_type":"article"}\n'
            b'{"id":"p2","title":"T","year":2008,"citations":-3,"doc_type":"article"}\n'
        )
        result = parse_jsonl(data)
        assert not result.publications
        assert "missing mandatory field" in result.diagnostics[0].message
        assert "negative citations" in result.diagnostics[1].message

    def test_empty_title_rejected(self):
        result = parse_jsonl(b'{"id":"p1","title":"  ","year":2008,"citations":0,"doc_type":"article"}')
        assert not result.publications

    def test_bad_utf8_is_input_error(self):
        with pytest.raises(InputError):
            parse_jsonl(b"\xff\xfe{}")


class TestParseCsv:
    def test_header_only(self):
        assert parse_csv(b"id,title,abstract,year,citations,doc_type\n").publications == []

    def test_quoted_comma_preserved(self):
        data = b'id,title,abstract,year,citations,doc_type\np2,"Stent, drug-eluting",,2007,10,review\n'
        result = parse_csv(data)
        pub = result.publications[0]
        assert pub.title == "Stent, drug-eluting"
        assert pub.abstract is None
        assert pub.year == 2007
        assert pub.citations == 10

    def test_negative_citations_is_row_diagnostic(self):
        data = b"id,title,abstract,year,citations,doc_type\np1,T,,2007,-1,review\n"
        result = parse_csv(data)
        assert not result.publications
        assert "negative citations" in result.diagnostics[0].message

    def test_missing_mapped_column_raises(self):
        data = b"identifier,title,year,citations,doc_type\n"
        with pytest.raises(InputError, match="mapped column"):
            parse_csv(data, {"id": "record_id"})

    def test_column_map_renames(self):
        data = b"RecordID,Name,Year,Cites,Type\nx1,Hello world,2006,3,article\n"
        result = parse_csv(
            data,
            {"id": "RecordID", "title": "Name", "year": "Year", "citations": "Cites", "doc_type": "Type"},
        )
        assert result.publications[0].id == "x1"

    def test_arity_mismatch_is_diagnostic(self):
        data = b"id,title,abstract,year,citations,doc_type\np1,T,,2007,3\n"
        result = parse_csv(data)
        assert not result.publications
        assert "expected 6 fields" in result.diagnostics[0].message

    def test_no_header_is_input_error(self):
        with pytest.raises(InputError):
            parse_csv(b"")


_pub_strategy = st.builds(
    make_pub,
    pub_id=st.uuids().map(str),
    title=st.text(
        alphabet=st.characters(blacklist_categories=("Cs", "Cc")), min_size=1, max_size=40
    ).filter(lambda s: s.strip()),
    abstract=st.one_of(
        st.none(),
        st.text(alphabet=st.characters(blacklist_categories=("Cs", "Cc")), min_size=1, max_size=60).filter(
            lambda s: s.strip()
        ),
    ),
    year=st.integers(min_value=1900, max_value=2030),
    citations=st.integers(min_value=0, max_value=10_000),
    doc_type=st.sampled_from(["article", "review", "editorial", "letter"]),
)


class TestRoundTrips:
    @settings(max_examples=60, deadline=None)
    @given(st.lists(_pub_strategy, max_size=12, unique_by=lambda p: p.id))
    def test_jsonl_round_trip(self, pubs):
        result = parse_jsonl(write_jsonl(pubs))
        assert result.publications == pubs
        assert not result.diagnostics

    @settings(max_examples=60, deadline=None)
    @given(
        st.lists(
            _pub_strategy.filter(
                # the CSV writer maps empty/None abstracts to the same cell
                lambda p: p.abstract is None or p.abstract.strip()
            ),
            max_size=12,
            unique_by=lambda p: p.id,
        )
    )
    def test_csv_round_trip(self, pubs):
        result = parse_csv(write_csv(pubs))
        assert result.publications == pubs
        assert not result.diagnostics

    def test_jsonl_write_is_byte_stable(self):
        pubs = [make_pub("p1", citations=3), make_pub("p2", abstract="Some text")]
        assert write_jsonl(pubs) == write_jsonl(pubs)


class TestFilterCorpus:
    def test_editorial_excluded(self):
        pubs = [
            make_pub("p1", doc_type="article"),
            make_pub("p2", doc_type="Review"),
            make_pub("p3", doc_type="editorial"),
        ]
        corpus = filter_corpus(pubs, {"article", "review"}, (2006, 2010))
        assert [p.id for p in corpus] == ["p1", "p2"]

    def test_year_out_of_range_excluded(self):
        pubs = [make_pub("p1", year=2010), make_pub("p2", year=2011)]
        corpus = filter_corpus(pubs, {"article"}, (2006, 2010))
        assert [p.id for p in corpus] == ["p1"]

    def test_empty_doc_types_gives_empty_corpus(self):
        corpus = filter_corpus([make_pub("p1")], set(), (2006, 2010))
        assert len(corpus) == 0

    def test_inverted_range_rejected(self):
        with pytest.raises(ValueError):
            filter_corpus([], {"article"}, (2010, 2006))

    def test_idempotent(self):
        rng = random.Random(4)
        corpus = random_corpus(rng)
        again = filter_corpus(
            corpus.publications, corpus.doc_types_kept, corpus.year_range, corpus.census_note
        )
        assert again == corpus


class TestCorpusStats:
    def test_single_year_mean(self):
        corpus = make_corpus(
            [make_pub("p1", citations=0), make_pub("p2", citations=2), make_pub("p3", citations=4)]
        )
        stats = corpus_stats(corpus)
        assert stats.per_year_mean_citations[2008] == Fraction(2)
        assert stats.per_year_count == {2008: 3}
        assert stats.total == 3

    def test_empty_corpus(self):
        stats = corpus_stats(make_corpus([]))
        assert stats.per_year_count == {}
        assert stats.per_year_mean_citations == {}
        assert stats.total == 0

    def test_two_years(self):
        corpus = make_corpus(
            [
                make_pub("p1", year=2006, citations=1),
                make_pub("p2", year=2006, citations=1),
                make_pub("p3", year=2007, citations=5),
            ]
        )
        stats = corpus_stats(corpus)
        assert stats.per_year_mean_citations == {2006: Fraction(1), 2007: Fraction(5)}

    def test_matches_bruteforce_recount(self):
        # exact integer equality against a naive loop, on many random corpora
        rng = random.Random(11)
        for _ in range(25):
            corpus = random_corpus(rng, max_pubs=200)
            stats = corpus_stats(corpus)
            years = {p.year for p in corpus}
            assert set(stats.per_year_count) == years
            for year in years:
                members = [p for p in corpus if p.year == year]
                assert stats.per_year_count[year] == len(members)
                total = sum(p.citations for p in members)
                assert stats.per_year_mean_citations[year] * len(members) == total
            assert sum(stats.per_year_count.values()) == stats.total == len(corpus)
