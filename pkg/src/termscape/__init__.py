"""termscape: impact-colored term maps from bibliographic corpora.

Turns a corpus of titles/abstracts into a two-dimensional term map where
distance reflects co-occurrence relatedness and color reflects the
year-normalized citation impact of the publications behind each term.
"""

__version__ = "0.1.0"

from .corpus import Corpus, Publication, corpus_stats, filter_corpus, parse_csv, parse_jsonl
from .impact import ColorScale, color_for, compute_impact, heterogeneity_report
from .layout import LayoutParams, Positions, canonicalize, optimize_layout, vos_objective
from .nlp import TermSet, extract_candidates, relevance_scores, select_terms
from .synth import SynthSpec, synth_corpus

__all__ = [
    "Corpus",
    "Publication",
    "parse_jsonl",
    "parse_csv",
    "filter_corpus",
    "corpus_stats",
    "SynthSpec",
    "synth_corpus",
    "TermSet",
    "extract_candidates",
    "relevance_scores",
    "select_terms",
    "optimize_layout",
    "canonicalize",
    "vos_objective",
    "LayoutParams",
    "Positions",
    "ColorScale",
    "color_for",
    "compute_impact",
    "heterogeneity_report",
]
