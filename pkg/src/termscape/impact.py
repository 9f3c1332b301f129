"""Year-normalized citation scores, per-term impact, and the color scale.

A publication's score is its citation count divided by the mean citation
count of all same-year publications in the corpus, so a score of 1 means
"cited exactly as much as the average publication of its year".  A term's
score is the plain average over the publications containing it.  Scores are
computed on exact rationals (integer sums and counts) with a single final
conversion to float, which removes any summation-order effects.

Years whose mean citation count is zero would divide by zero; every
publication of such a year scores 0 and the year is flagged, preserving
auditability.

Colors interpolate linearly per RGB channel between anchors; the default
anchors put blue at 0, green at 1, yellow at 1.25, orange at 1.5 and red at
2, with scores clamped to [0, 2].
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .corpus import Corpus, corpus_stats
from .nlp import TermSet

RGB = tuple[int, int, int]

DEFAULT_ANCHORS: tuple[tuple[float, RGB], ...] = (
    (0.0, (0, 0, 255)),
    (1.0, (0, 200, 0)),
    (1.25, (255, 255, 0)),
    (1.5, (255, 165, 0)),
    (2.0, (255, 0, 0)),
)


@dataclass(frozen=True)
class ColorScale:
    anchors: tuple[tuple[float, RGB], ...] = DEFAULT_ANCHORS

    def __post_init__(self) -> None:
        if len(self.anchors) < 2:
            raise ValueError("color scale needs at least two anchors")
        scores = [a[0] for a in self.anchors]
        if any(b <= a for a, b in zip(scores, scores[1:])):
            raise ValueError("anchor scores must be strictly increasing")
        if scores[0] != 0.0 or scores[-1] != 2.0:
            raise ValueError("anchors must start at score 0 and end at score 2")


DEFAULT_SCALE = ColorScale()


def color_for(score: float, scale: ColorScale = DEFAULT_SCALE) -> RGB:
    """Clamp the score to [0, 2] and interpolate between bracketing anchors."""
    if score < 0:
        raise ValueError(f"score must be >= 0, got {score}")
    score = min(score, 2.0)
    anchors = scale.anchors
    for (s0, c0), (s1, c1) in zip(anchors, anchors[1:]):
        if score <= s1:
            t = (score - s0) / (s1 - s0)
            return tuple(int(round(a + (b - a) * t)) for a, b in zip(c0, c1))
    return anchors[-1][1]


def color_hex(rgb: RGB) -> str:
    return "#{:02X}{:02X}{:02X}".format(*rgb)


@dataclass(frozen=True)
class ImpactScores:
    pub_score: dict[str, Fraction]
    term_score: dict[str, float]
    zero_mean_years: frozenset[int] = field(default_factory=frozenset)


def normalize_citations(corpus: Corpus) -> tuple[dict[str, Fraction], frozenset[int]]:
    """Exact per-publication scores and the set of zero-mean years."""
    stats = corpus_stats(corpus)
    zero_years = frozenset(
        year for year, mean in stats.per_year_mean_citations.items() if mean == 0
    )
    scores: dict[str, Fraction] = {}
    for pub in corpus:
        if pub.year in zero_years:
            scores[pub.id] = Fraction(0)
        else:
            scores[pub.id] = Fraction(pub.citations) / stats.per_year_mean_citations[pub.year]
    return scores, zero_years


def term_scores(term_set: TermSet, pub_score: dict[str, Fraction]) -> dict[str, float]:
    """Mean normalized score over each term's publications, exact until the end."""
    out: dict[str, float] = {}
    for term in term_set.terms:
        if not term.pubs:
            raise ValueError(f"term {term.canonical!r} has an empty publication set")
        total = sum((pub_score[p] for p in sorted(term.pubs)), Fraction(0))
        out[term.canonical] = float(total / len(term.pubs))
    return out


def compute_impact(corpus: Corpus, term_set: TermSet) -> ImpactScores:
    pub_score, zero_years = normalize_citations(corpus)
    return ImpactScores(
        pub_score=pub_score,
        term_score=term_scores(term_set, pub_score),
        zero_mean_years=zero_years,
    )


def scores_rows(impact: ImpactScores, scale: ColorScale = DEFAULT_SCALE) -> list[dict]:
    """Rows for the scores dump: term, score, color; alphabetical."""
    return [
        {"term": term, "score": score, "color": color_hex(color_for(score, scale))}
        for term, score in sorted(impact.term_score.items())
    ]


def heterogeneity_report(
    term_score: dict[str, float], positions, k_extremes: int
) -> dict:
    """Summarize how unevenly impact is distributed across the map.

    Reports the ``k_extremes`` highest- and lowest-scoring terms, the ratio
    of the 90th to the 10th percentile of term scores (linear-interpolation
    percentiles; None if the 10th percentile is zero), and the distance
    between the score-weighted centroids of the top and bottom score deciles
    in map space.  Positions rows must follow the terms in alphabetical
    order.  Decile size is max(1, n // 10); a decile with zero total weight
    falls back to its unweighted centroid.
    """
    if k_extremes < 1:
        raise ValueError("k_extremes must be >= 1")
    n = len(term_score)
    if 2 * k_extremes > n:
        raise ValueError(f"k_extremes {k_extremes} too large for {n} terms")
    terms = sorted(term_score)
    coords = np.asarray(getattr(positions, "coords", positions), dtype=np.float64)
    if coords.shape != (n, 2):
        raise ValueError(f"positions cover {coords.shape[0]} rows, expected {n}")
    scores = np.array([term_score[t] for t in terms], dtype=np.float64)

    by_score = sorted(range(n), key=lambda i: (-scores[i], terms[i]))
    top = [{"term": terms[i], "score": float(scores[i])} for i in by_score[:k_extremes]]
    bottom = [
        {"term": terms[i], "score": float(scores[i])} for i in reversed(by_score[-k_extremes:])
    ]

    p10 = float(np.percentile(scores, 10))
    p90 = float(np.percentile(scores, 90))
    ratio = p90 / p10 if p10 > 0 else None

    m = max(1, n // 10)
    top_idx = np.array(by_score[:m], dtype=np.int64)
    bot_idx = np.array(by_score[-m:], dtype=np.int64)

    def weighted_centroid(idx: np.ndarray) -> np.ndarray:
        weights = scores[idx]
        total = float(weights.sum())
        if total <= 0:
            return coords[idx].mean(axis=0)
        return (coords[idx] * weights[:, None]).sum(axis=0) / total

    distance = float(np.linalg.norm(weighted_centroid(top_idx) - weighted_centroid(bot_idx)))
    return {
        "n_terms": n,
        "k_extremes": k_extremes,
        "top": top,
        "bottom": bottom,
        "p10": p10,
        "p90": p90,
        "p90_p10_ratio": ratio,
        "decile_size": m,
        "decile_centroid_distance": distance,
    }
