"""Bibliographic records: parsing, validation, filtering, statistics.

A corpus is an immutable, ordered, id-deduplicated collection of
publications together with the filters that produced it.  Citation counts
are a snapshot taken at some census date; that date is provenance metadata
(``census_note``), never something this package recomputes.

Parsers are lenient row-by-row: malformed rows become diagnostics with line
numbers and parsing continues.  Duplicate ids keep the first record and
report the rest.  All functions here are pure with respect to their inputs
and safe to call concurrently on distinct streams.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import IO, Iterable, Union

from .errors import InputError

ByteSource = Union[bytes, IO[bytes]]

#: Publication fields, in canonical column order.
FIELDS = ("id", "title", "abstract", "year", "citations", "doc_type")


@dataclass(frozen=True)
class Publication:
    """One bibliographic record.

    ``citations`` is the count accrued up to the corpus census date.
    ``abstract`` may be None; downstream text processing then uses the
    title alone.
    """

    id: str
    title: str
    abstract: str | None
    year: int
    citations: int
    doc_type: str


@dataclass(frozen=True)
class Corpus:
    """Filtered publication collection; iteration order is input order."""

    publications: tuple[Publication, ...]
    year_range: tuple[int, int]
    doc_types_kept: tuple[str, ...]  # lowercased, sorted
    census_note: str = ""

    def __len__(self) -> int:
        return len(self.publications)

    def __iter__(self):
        return iter(self.publications)

    def ids(self) -> frozenset[str]:
        return frozenset(p.id for p in self.publications)


@dataclass(frozen=True)
class CorpusStats:
    """Per-year counts and exact per-year mean citations.

    Means are kept as rationals so that mean * count recovers the integer
    citation sum exactly; years with no publications are absent.
    """

    per_year_count: dict[int, int]
    per_year_mean_citations: dict[int, Fraction]
    total: int


@dataclass
class ParseDiagnostic:
    line: int
    message: str

    def __str__(self) -> str:
        return f"line {self.line}: {self.message}"


@dataclass
class ParseResult:
    publications: list[Publication]
    diagnostics: list[ParseDiagnostic] = field(default_factory=list)


def _decode(stream: ByteSource) -> str:
    if isinstance(stream, bytes):
        data = stream
    else:
        data = stream.read()
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise InputError(f"input is not valid UTF-8: {exc}") from exc


def _validate_record(raw: dict, line: int, diagnostics: list[ParseDiagnostic]) -> Publication | None:
    for name in ("id", "title", "year", "citations", "doc_type"):
        if raw.get(name) in (None, ""):
            diagnostics.append(ParseDiagnostic(line, f"missing mandatory field {name!r}"))
            return None
    pub_id = str(raw["id"])
    title = str(raw["title"]).strip()
    if not title:
        diagnostics.append(ParseDiagnostic(line, f"record {pub_id!r} has an empty title"))
        return None
    try:
        year = int(raw["year"])
        citations = int(raw["citations"])
    except (TypeError, ValueError):
        diagnostics.append(ParseDiagnostic(line, f"record {pub_id!r}: year/citations not integers"))
        return None
    if citations < 0:
        diagnostics.append(ParseDiagnostic(line, f"record {pub_id!r}: negative citations ({citations})"))
        return None
    if not 1000 <= year <= 9999:
        diagnostics.append(ParseDiagnostic(line, f"record {pub_id!r}: year {year} is not a 4-digit year"))
        return None
    abstract = raw.get("abstract")
    if abstract is not None:
        abstract = str(abstract)
        if not abstract.strip():
            abstract = None
    return Publication(
        id=pub_id,
        title=title,
        abstract=abstract,
        year=year,
        citations=citations,
        doc_type=str(raw["doc_type"]),
    )


def _dedupe(pubs_with_lines: list[tuple[int, Publication]], diagnostics: list[ParseDiagnostic]) -> list[Publication]:
    # First record wins; duplicates are reported, loudly and deterministically.
    seen: set[str] = set()
    out: list[Publication] = []
    for line, pub in pubs_with_lines:
        if pub.id in seen:
            diagnostics.append(ParseDiagnostic(line, f"duplicate id {pub.id!r}; keeping the first occurrence"))
            continue
        seen.add(pub.id)
        out.append(pub)
    return out


def parse_jsonl(stream: ByteSource) -> ParseResult:
    """Parse one JSON object per line into publications.

    Keys: id, title, abstract (optional), year, citations, doc_type.
    Malformed lines are reported with their 1-based line numbers and
    skipped; blank lines are ignored.
    """
    text = _decode(stream)
    diagnostics: list[ParseDiagnostic] = []
    parsed: list[tuple[int, Publication]] = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            raw = json.loads(line)
        except json.JSONDecodeError as exc:
            diagnostics.append(ParseDiagnostic(line_no, f"invalid JSON: {exc.msg}"))
            continue
        if not isinstance(raw, dict):
            diagnostics.append(ParseDiagnostic(line_no, "line is not a JSON object"))
            continue
        pub = _validate_record(raw, line_no, diagnostics)
        if pub is not None:
            parsed.append((line_no, pub))
    return ParseResult(_dedupe(parsed, diagnostics), diagnostics)


def parse_csv(stream: ByteSource, column_map: dict[str, str] | None = None) -> ParseResult:
    """Parse RFC-4180 CSV with a mandatory header row.

    ``column_map`` maps publication field names to header names; by default
    headers are expected to equal the field names.  A mapped column that is
    absent from the header is a hard error; row-level problems (arity
    mismatch, bad values) become diagnostics.
    """
    text = _decode(stream)
    column_map = dict(column_map) if column_map else {name: name for name in FIELDS}
    for name in FIELDS:
        column_map.setdefault(name, name)
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise InputError("CSV input has no header row")
    positions: dict[str, int] = {}
    for name in FIELDS:
        col = column_map[name]
        if col in header:
            positions[name] = header.index(col)
        elif name == "abstract":
            continue  # abstract column is optional
        else:
            raise InputError(f"mapped column {col!r} for field {name!r} not in header")
    diagnostics: list[ParseDiagnostic] = []
    parsed: list[tuple[int, Publication]] = []
    for line_no, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(header):
            diagnostics.append(
                ParseDiagnostic(line_no, f"expected {len(header)} fields, got {len(row)}")
            )
            continue
        raw = {name: row[idx] for name, idx in positions.items()}
        pub = _validate_record(raw, line_no, diagnostics)
        if pub is not None:
            parsed.append((line_no, pub))
    return ParseResult(_dedupe(parsed, diagnostics), diagnostics)


def write_jsonl(pubs: Iterable[Publication]) -> bytes:
    """Serialize publications as canonical JSONL; round-trips via parse_jsonl."""
    from . import jsonio

    rows = []
    for p in pubs:
        row = {
            "id": p.id,
            "title": p.title,
            "year": p.year,
            "citations": p.citations,
            "doc_type": p.doc_type,
        }
        if p.abstract is not None:
            row["abstract"] = p.abstract
        rows.append(row)
    return jsonio.dump_jsonl(rows)


def write_csv(pubs: Iterable[Publication], column_map: dict[str, str] | None = None) -> bytes:
    """Serialize publications as CSV (LF line endings); round-trips via parse_csv."""
    column_map = column_map or {}
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow([column_map.get(name, name) for name in FIELDS])
    for p in pubs:
        writer.writerow([p.id, p.title, p.abstract or "", p.year, p.citations, p.doc_type])
    return out.getvalue().encode("utf-8")


def filter_corpus(
    pubs: Iterable[Publication],
    doc_types: Iterable[str],
    year_range: tuple[int, int],
    census_note: str = "",
) -> Corpus:
    """Keep publications whose doc_type (case-insensitive) and year match.

    The applied filters are recorded on the corpus, which makes filtering
    idempotent.  Duplicate ids keep the first occurrence.
    """
    lo, hi = year_range
    if lo > hi:
        raise ValueError(f"year_range min {lo} exceeds max {hi}")
    kept_types = tuple(sorted({d.lower() for d in doc_types}))
    seen: set[str] = set()
    kept: list[Publication] = []
    for pub in pubs:
        if pub.id in seen:
            continue
        seen.add(pub.id)
        if pub.doc_type.lower() in kept_types and lo <= pub.year <= hi:
            kept.append(pub)
    return Corpus(
        publications=tuple(kept),
        year_range=(lo, hi),
        doc_types_kept=kept_types,
        census_note=census_note,
    )


def corpus_stats(corpus: Corpus) -> CorpusStats:
    """Per-year publication counts and exact mean citation counts."""
    counts: dict[int, int] = {}
    sums: dict[int, int] = {}
    for pub in corpus:
        counts[pub.year] = counts.get(pub.year, 0) + 1
        sums[pub.year] = sums.get(pub.year, 0) + pub.citations
    means = {year: Fraction(sums[year], counts[year]) for year in counts}
    return CorpusStats(
        per_year_count=dict(sorted(counts.items())),
        per_year_mean_citations=dict(sorted(means.items())),
        total=len(corpus),
    )


def corpus_to_artifact(corpus: Corpus) -> dict:
    pubs = []
    for p in corpus:
        row = {
            "id": p.id,
            "title": p.title,
            "year": p.year,
            "citations": p.citations,
            "doc_type": p.doc_type,
        }
        if p.abstract is not None:
            row["abstract"] = p.abstract
        pubs.append(row)
    return {
        "publications": pubs,
        "year_range": list(corpus.year_range),
        "doc_types_kept": list(corpus.doc_types_kept),
        "census_note": corpus.census_note,
    }


def corpus_from_artifact(payload: dict) -> Corpus:
    pubs = tuple(
        Publication(
            id=row["id"],
            title=row["title"],
            abstract=row.get("abstract"),
            year=row["year"],
            citations=row["citations"],
            doc_type=row["doc_type"],
        )
        for row in payload["publications"]
    )
    return Corpus(
        publications=pubs,
        year_range=tuple(payload["year_range"]),
        doc_types_kept=tuple(payload["doc_types_kept"]),
        census_note=payload.get("census_note", ""),
    )
