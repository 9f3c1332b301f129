"""Publication-level term co-occurrence counts and association-strength
similarities.

Counts are binary per publication: c_ij is the number of publications whose
title-or-abstract contains both term i and term j at least once, stored as
sparse upper-triangle triplets (i < j, sorted).  Rows follow the terms in
alphabetical order.  Similarity divides each count by the product of the two
terms' occurrence counts; the layout objective is invariant to a global
scale, so no constant factor is applied.

Terms that co-occur with nothing keep their all-zero rows (the layout module
places them on a surrounding ring); dropping them here would desynchronize
term indices across artifacts.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .corpus import Corpus
from .nlp import TermSet


@dataclass(frozen=True)
class CooccurrenceMatrix:
    """Symmetric sparse co-occurrence counts; diagonal is unused (zero)."""

    n: int
    terms: tuple[str, ...]  # alphabetical
    occ: np.ndarray  # int64, per-term occurrence counts
    i_idx: np.ndarray  # int64, i < j
    j_idx: np.ndarray
    counts: np.ndarray  # int64

    @property
    def term_index(self) -> dict[str, int]:
        return {t: i for i, t in enumerate(self.terms)}


@dataclass(frozen=True)
class SimilarityMatrix:
    n: int
    terms: tuple[str, ...]
    i_idx: np.ndarray
    j_idx: np.ndarray
    values: np.ndarray  # float64, > 0 exactly where counts are > 0


def build_matrix(corpus: Corpus, term_set: TermSet) -> CooccurrenceMatrix:
    """Count, for every term pair, the publications containing both.

    Raises if any term references a publication id absent from the corpus.
    """
    corpus_ids = corpus.ids()
    for term in term_set.terms:
        dangling = term.pubs - corpus_ids
        if dangling:
            raise ValueError(
                f"term {term.canonical!r} references unknown publication id "
                f"{sorted(dangling)[0]!r}"
            )
    ordered = sorted(term_set.terms, key=lambda t: t.canonical)
    terms = tuple(t.canonical for t in ordered)
    occ = np.array([t.occ_count for t in ordered], dtype=np.int64)
    members_by_pub: dict[str, list[int]] = {}
    for idx, term in enumerate(ordered):
        for pub_id in term.pubs:
            members_by_pub.setdefault(pub_id, []).append(idx)
    pair_counts: dict[tuple[int, int], int] = {}
    for members in members_by_pub.values():
        for pair in combinations(sorted(members), 2):
            pair_counts[pair] = pair_counts.get(pair, 0) + 1
    pairs = sorted(pair_counts)
    i_idx = np.array([p[0] for p in pairs], dtype=np.int64)
    j_idx = np.array([p[1] for p in pairs], dtype=np.int64)
    counts = np.array([pair_counts[p] for p in pairs], dtype=np.int64)
    return CooccurrenceMatrix(
        n=len(terms), terms=terms, occ=occ, i_idx=i_idx, j_idx=j_idx, counts=counts
    )


def association_strength(matrix: CooccurrenceMatrix) -> SimilarityMatrix:
    """s_ij = c_ij / (n_i * n_j); requires every occurrence count >= 1."""
    if matrix.n and int(matrix.occ.min(initial=1)) < 1:
        bad = int(np.argmin(matrix.occ))
        raise ValueError(f"term {matrix.terms[bad]!r} has zero occurrence count")
    denom = matrix.occ[matrix.i_idx].astype(np.float64) * matrix.occ[matrix.j_idx]
    values = matrix.counts.astype(np.float64) / denom
    return SimilarityMatrix(
        n=matrix.n,
        terms=matrix.terms,
        i_idx=matrix.i_idx.copy(),
        j_idx=matrix.j_idx.copy(),
        values=values,
    )


def isolated_indices(matrix: CooccurrenceMatrix) -> set[int]:
    """Indices of terms with no co-occurrence at all (all-zero rows)."""
    connected = set(matrix.i_idx.tolist()) | set(matrix.j_idx.tolist())
    return set(range(matrix.n)) - connected


def write_matrix_txt(matrix: CooccurrenceMatrix) -> bytes:
    """Plain-text dump: header ``n <n>``, then sorted ``i j c_ij`` triplets."""
    lines = [f"n {matrix.n}"]
    for i, j, c in zip(matrix.i_idx, matrix.j_idx, matrix.counts):
        lines.append(f"{i} {j} {c}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def matrix_to_artifact(matrix: CooccurrenceMatrix) -> dict:
    return {
        "n": matrix.n,
        "terms": list(matrix.terms),
        "occ": matrix.occ.tolist(),
        "triplets": [
            [int(i), int(j), int(c)]
            for i, j, c in zip(matrix.i_idx, matrix.j_idx, matrix.counts)
        ],
    }


def matrix_from_artifact(payload: dict) -> CooccurrenceMatrix:
    triplets = payload["triplets"]
    return CooccurrenceMatrix(
        n=payload["n"],
        terms=tuple(payload["terms"]),
        occ=np.array(payload["occ"], dtype=np.int64),
        i_idx=np.array([t[0] for t in triplets], dtype=np.int64),
        j_idx=np.array([t[1] for t in triplets], dtype=np.int64),
        counts=np.array([t[2] for t in triplets], dtype=np.int64),
    )
