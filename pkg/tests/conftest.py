"""Shared test helpers: tiny corpus builders and deterministic random corpora."""

from __future__ import annotations

import random
from pathlib import Path

import pytest

from termscape.corpus import Corpus, Publication

DATA_DIR = Path(__file__).parent / "data"
GOLDEN_DIR = Path(__file__).parent / "golden"


def make_pub(
    pub_id: str,
    title: str = "Atrial fibrillation",
    abstract: str | None = None,
    year: int = 2008,
    citations: int = 0,
    doc_type: str = "article",
) -> Publication:
    return Publication(
        id=pub_id, title=title, abstract=abstract, year=year, citations=citations, doc_type=doc_type
    )


def make_corpus(pubs, year_range=(2006, 2010), doc_types=("article", "review")) -> Corpus:
    return Corpus(
        publications=tuple(pubs),
        year_range=year_range,
        doc_types_kept=tuple(sorted(doc_types)),
        census_note="test corpus",
    )


def random_corpus(rng: random.Random, max_pubs: int = 50) -> Corpus:
    """Random small corpus; every year gets at least one cited publication
    so that no year is citation-degenerate."""
    n = rng.randint(2, max_pubs)
    years = list(range(2006, 2011))
    pubs = []
    seen_years: dict[int, int] = {}
    for i in range(n):
        year = rng.choice(years)
        citations = rng.randint(0, 40)
        pubs.append(make_pub(f"p{i:03d}", year=year, citations=citations))
        seen_years[year] = seen_years.get(year, 0) + citations
    fixed = []
    for pub in pubs:
        if seen_years[pub.year] == 0:
            fixed.append(
                Publication(
                    id=pub.id,
                    title=pub.title,
                    abstract=pub.abstract,
                    year=pub.year,
                    citations=1,
                    doc_type=pub.doc_type,
                )
            )
            seen_years[pub.year] = 1
        else:
            fixed.append(pub)
    return make_corpus(fixed)


@pytest.fixture
def tiny_corpus() -> Corpus:
    return make_corpus(
        [
            make_pub("p1", title="Atrial fibrillation ablation", year=2008, citations=0),
            make_pub("p2", title="Catheter ablation outcome", year=2008, citations=2),
            make_pub("p3", title="Stent thrombosis", year=2008, citations=4),
        ]
    )
