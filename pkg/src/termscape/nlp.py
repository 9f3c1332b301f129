"""Noun-phrase term extraction, relevance scoring, and selection.

The pipeline per publication is tokenize -> pos_tag -> chunk -> canonicalize;
occurrence is binary at the publication level (a phrase repeated ten times in
one abstract counts that publication once).  Selection drops infrequent
candidates, scores the survivors by how far their co-occurrence profile
deviates from the global occurrence profile (general phrases have flat
profiles and score near zero), and keeps the top k.

Per-publication extraction is independent and may run in parallel; merging
candidate sets is a commutative set union, so any reduction order gives the
same result.  Scoring and selection are pure transformations.
"""

from __future__ import annotations

import math
import os
import re
from collections import Counter, defaultdict
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Iterable, NamedTuple

from .corpus import Corpus
from .errors import InputError

#: Sentinel emitted between sentences; phrases never cross it.
BOUNDARY = "<boundary>"

NOUN = "NOUN"
ADJ = "ADJ"
OTHER = "OTHER"
_TAGS = (NOUN, ADJ, OTHER)


class TaggedToken(NamedTuple):
    text: str
    tag: str


@dataclass(frozen=True)
class TermCandidate:
    """A canonicalized phrase with the set of publications containing it."""

    canonical: str
    pubs: frozenset[str]

    @property
    def occ_count(self) -> int:
        return len(self.pubs)


@dataclass(frozen=True)
class Term:
    canonical: str
    pubs: frozenset[str]
    occ_count: int
    relevance: float


@dataclass(frozen=True)
class TermSet:
    """Selected terms ordered by descending relevance (ties: occurrence
    count descending, then canonical string ascending)."""

    terms: tuple[Term, ...]
    min_occ: int
    k: int


# Words and boundary marks.  Sentence punctuation plus commas and colons
# emit boundary tokens; bracket characters and the rest of the punctuation
# just separate tokens.  Hyphens stay inside tokens ("drug-eluting").
_TOKEN_RE = re.compile(r"[^\W_]+(?:[-'][^\W_]+)*|[.!?;,:]", re.UNICODE)
_SENTENCE_MARKS = frozenset(".!?;,:")


def tokenize(text: str) -> list[str]:
    """Lowercased word tokens with BOUNDARY markers at sentence breaks.

    Consecutive boundaries collapse to one; a leading boundary is dropped.
    Possessive "'s" and stray apostrophes are removed.
    """
    tokens: list[str] = []
    for match in _TOKEN_RE.finditer(text.lower()):
        tok = match.group()
        if tok in _SENTENCE_MARKS:
            if tokens and tokens[-1] != BOUNDARY:
                tokens.append(BOUNDARY)
            continue
        if tok.endswith("'s"):
            tok = tok[:-2]
        tok = tok.replace("'", "")
        if tok:
            tokens.append(tok)
    return tokens


_ADJ_SUFFIXES = ("al", "ic", "ous", "ive")
_NOUN_SUFFIXES = ("tion", "ment", "itis", "oma", "emia")

_BUNDLED_LEXICON = Path(__file__).parent / "data" / "lexicon.tsv"
_lexicon_cache: dict[str, dict[str, str]] = {}


def load_lexicon(path: str | Path | None = None) -> dict[str, str]:
    """Load a word->tag table (one ``word<TAB>TAG`` per line).

    Resolution order: explicit ``path`` argument, the TERMSCAPE_LEXICON
    environment variable, then the bundled resource.  Results are cached.
    """
    if path is None:
        path = os.environ.get("TERMSCAPE_LEXICON") or _BUNDLED_LEXICON
    key = str(path)
    cached = _lexicon_cache.get(key)
    if cached is not None:
        return cached
    lexicon: dict[str, str] = {}
    try:
        with open(path, encoding="utf-8") as fh:
            for line_no, line in enumerate(fh, start=1):
                line = line.rstrip("\n")
                if not line or line.startswith("#"):
                    continue
                try:
                    word, tag = line.split("\t")
                except ValueError:
                    raise InputError(f"{path}:{line_no}: expected 'word<TAB>TAG'")
                if tag not in _TAGS:
                    raise InputError(f"{path}:{line_no}: unknown tag {tag!r}")
                lexicon[word] = tag
    except OSError as exc:
        raise InputError(f"cannot read lexicon {path}: {exc}") from exc
    _lexicon_cache[key] = lexicon
    return lexicon


def pos_tag(tokens: Iterable[str], lexicon: dict[str, str]) -> list[TaggedToken]:
    """Tag tokens: lexicon lookup, then suffix heuristics, then default NOUN.

    Boundary markers and tokens without letters (numbers, stray symbols)
    are OTHER so they can never join a noun phrase.
    """
    tagged: list[TaggedToken] = []
    for tok in tokens:
        if tok == BOUNDARY or not any(ch.isalpha() for ch in tok):
            tagged.append(TaggedToken(tok, OTHER))
            continue
        tag = lexicon.get(tok)
        if tag is None:
            if tok.endswith("ly") and len(tok) > 4:
                tag = OTHER  # adverbs; -ly nouns are protected in the lexicon
            elif tok.endswith(_ADJ_SUFFIXES) and len(tok) > 4:
                tag = ADJ
            elif tok.endswith(_NOUN_SUFFIXES):
                tag = NOUN
            else:
                tag = NOUN
        tagged.append(TaggedToken(tok, tag))
    return tagged


#: Phrases longer than this many words are discarded as noise.
MAX_PHRASE_WORDS = 6


def chunk_noun_phrases(tagged: list[TaggedToken]) -> list[str]:
    """Emit every adjective*-noun+ block and all of its suffix sub-phrases.

    A block is a maximal run of adjectives followed by nouns, ending at a
    noun; any OTHER tag breaks runs.  Every suffix of a block still matches
    the pattern (it always ends at the block's final noun), so "acute
    myocardial infarction" also yields "myocardial infarction" and
    "infarction".  Suffixes longer than MAX_PHRASE_WORDS are dropped.
    """
    phrases: list[str] = []

    def flush(run: list[TaggedToken]) -> None:
        i = 0
        while i < len(run):
            j = i
            while j < len(run) and run[j].tag == ADJ:
                j += 1
            k = j
            while k < len(run) and run[k].tag == NOUN:
                k += 1
            if k == j:  # adjectives with no following noun
                i = j + 1 if j > i else i + 1
                continue
            words = [t.text for t in run[i:k]]
            for start in range(len(words)):
                if len(words) - start <= MAX_PHRASE_WORDS:
                    phrases.append(" ".join(words[start:]))
            i = k
        run.clear()

    run: list[TaggedToken] = []
    for token in tagged:
        if token.tag in (ADJ, NOUN):
            run.append(token)
        else:
            flush(run)
    flush(run)
    return phrases


# Head-noun singularization.  Keys are full head words; values must be
# fixed points of canonicalize_phrase (idempotence is property-tested).
_IRREGULAR = {
    # invariant forms
    "data": "data", "media": "media", "series": "series", "species": "species",
    "diabetes": "diabetes", "caries": "caries", "herpes": "herpes",
    "measles": "measles", "rabies": "rabies", "scabies": "scabies",
    "news": "news", "aids": "aids", "pancreas": "pancreas", "atlas": "atlas",
    "lens": "lens", "mumps": "mumps", "forceps": "forceps", "biceps": "biceps",
    # Greek/Latin plurals the rule table cannot reach
    "criteria": "criterion", "phenomena": "phenomenon", "bacteria": "bacterium",
    "mitochondria": "mitochondrion", "fungi": "fungus", "nuclei": "nucleus",
    "stimuli": "stimulus", "thrombi": "thrombus", "emboli": "embolus",
    "bronchi": "bronchus", "vertebrae": "vertebra", "indices": "index",
    "matrices": "matrix", "appendices": "appendix",
    "women": "woman", "men": "man", "children": "child", "teeth": "tooth",
    "feet": "foot", "mice": "mouse",
    # regular -se nouns the -ses rule would mangle
    "diseases": "disease", "cases": "case", "doses": "dose", "causes": "cause",
    "responses": "response", "nurses": "nurse", "courses": "course",
    "purposes": "purpose", "databases": "database", "increases": "increase",
    "decreases": "decrease", "releases": "release", "kinases": "kinase",
    "proteases": "protease", "caspases": "caspase", "phases": "phase",
    "phrases": "phrase", "bases": "base", "senses": "sense", "uses": "use",
    "pulses": "pulse", "impulses": "impulse", "houses": "house",
    "noses": "nose", "enterprises": "enterprise", "exercises": "exercise",
    # -uses words the -ses rule would mangle
    "viruses": "virus", "statuses": "status", "bonuses": "bonus",
    "censuses": "census", "fetuses": "fetus", "sinuses": "sinus",
    "abuses": "abuse",
}


def _singularize(word: str) -> str:
    irregular = _IRREGULAR.get(word)
    if irregular is not None:
        return irregular
    if len(word) < 4 or not word.endswith("s"):
        return word
    if word.endswith("sses"):
        return word[:-2]  # processes -> process, masses -> mass
    if word.endswith("ies"):
        return word[:-3] + "y"
    if word.endswith("ses"):
        return word[:-3] + "sis"  # analyses -> analysis, stenoses -> stenosis
    if word.endswith("es"):
        stem = word[:-2]
        if stem.endswith(("x", "z", "ch", "sh")):
            return stem  # boxes -> box, branches -> branch
        return word[:-1]  # stones -> stone
    if word.endswith(("ss", "us", "is")):
        return word  # bypass, status, arthritis: not plurals
    return word[:-1]


def canonicalize_phrase(phrase: str) -> str:
    """Normal form: collapsed single spaces, head (final) noun singularized."""
    words = phrase.split()
    if not words:
        return ""
    words[-1] = _singularize(words[-1])
    return " ".join(words)


def extract_candidates(corpus: Corpus, lexicon: dict[str, str] | None = None) -> list[TermCandidate]:
    """Run the extraction pipeline over every publication.

    Title and abstract are concatenated with a boundary between them.  The
    result is sorted alphabetically and is identical regardless of
    publication processing order.
    """
    if lexicon is None:
        lexicon = load_lexicon()
    pubs_by_phrase: dict[str, set[str]] = defaultdict(set)
    for pub in corpus:
        tokens = tokenize(pub.title)
        if pub.abstract is not None:
            if tokens and tokens[-1] != BOUNDARY:
                tokens.append(BOUNDARY)
            tokens.extend(tokenize(pub.abstract))
        for phrase in chunk_noun_phrases(pos_tag(tokens, lexicon)):
            canonical = canonicalize_phrase(phrase)
            if canonical:
                pubs_by_phrase[canonical].add(pub.id)
    return [
        TermCandidate(canonical=phrase, pubs=frozenset(ids))
        for phrase, ids in sorted(pubs_by_phrase.items())
    ]


def default_min_occ(n_pubs: int) -> int:
    """Occurrence threshold scaling with corpus size (floor of 10)."""
    return max(10, round(n_pubs / 1000))


def _pair_counts(pubs_sets: list[frozenset[str]]) -> Counter:
    """Publication-level binary co-occurrence counts for every index pair."""
    by_pub: dict[str, list[int]] = defaultdict(list)
    for idx, pubs in enumerate(pubs_sets):
        for pub_id in pubs:
            by_pub[pub_id].append(idx)
    counts: Counter = Counter()
    for members in by_pub.values():
        counts.update(combinations(sorted(members), 2))
    return counts


def relevance_scores(candidates: list[TermCandidate], min_occ: int) -> list[Term]:
    """Drop candidates below ``min_occ`` and score the rest.

    The score is the KL divergence (natural log) between a candidate's
    co-occurrence distribution over the other survivors and the survivors'
    occurrence distribution renormalized over the same support.  A candidate
    whose co-occurrences simply mirror global frequencies (it appears in
    every publication, say) scores exactly 0; so does a candidate that
    co-occurs with nothing.
    """
    if min_occ < 1:
        raise ValueError(f"min_occ must be >= 1, got {min_occ}")
    survivors = [c for c in candidates if c.occ_count >= min_occ]
    survivors.sort(key=lambda c: c.canonical)
    occ = [c.occ_count for c in survivors]
    occ_total = sum(occ)
    pair_counts = _pair_counts([c.pubs for c in survivors])
    neighbors: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for (i, j), count in pair_counts.items():
        neighbors[i].append((j, count))
        neighbors[j].append((i, count))
    terms: list[Term] = []
    for idx, cand in enumerate(survivors):
        pairs = sorted(neighbors.get(idx, ()))
        cooc_total = sum(count for _, count in pairs)
        if cooc_total == 0:
            relevance = 0.0
        else:
            occ_rest = occ_total - occ[idx]
            relevance = 0.0
            for other, count in pairs:
                p = count / cooc_total
                q = occ[other] / occ_rest
                relevance += p * math.log(p / q)
        terms.append(
            Term(
                canonical=cand.canonical,
                pubs=cand.pubs,
                occ_count=cand.occ_count,
                relevance=relevance,
            )
        )
    return terms


def _is_word_suffix(shorter: tuple[str, ...], longer: tuple[str, ...]) -> bool:
    return len(shorter) < len(longer) and longer[len(longer) - len(shorter):] == shorter


def select_terms(scored: list[Term], k: int, min_occ: int = 1) -> TermSet:
    """Keep the top-k terms by relevance after subsumption filtering.

    A term whose publication set is identical to that of a longer term
    containing it as a word suffix never occurs independently and is
    removed first ("infarction" vs "myocardial infarction").  The ordering
    is a total order, so shuffled input yields an identical TermSet.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    by_pubs: dict[frozenset[str], list[Term]] = defaultdict(list)
    for term in scored:
        by_pubs[term.pubs].append(term)
    removed: set[str] = set()
    for group in by_pubs.values():
        if len(group) < 2:
            continue
        words = {t.canonical: tuple(t.canonical.split()) for t in group}
        for a in group:
            for b in group:
                if a is not b and _is_word_suffix(words[b.canonical], words[a.canonical]):
                    removed.add(b.canonical)
    survivors = [t for t in scored if t.canonical not in removed]
    survivors.sort(key=lambda t: (-t.relevance, -t.occ_count, t.canonical))
    return TermSet(terms=tuple(survivors[:k]), min_occ=min_occ, k=k)


def terms_to_artifact(term_set: TermSet) -> dict:
    return {
        "min_occ": term_set.min_occ,
        "k": term_set.k,
        "terms": [
            {
                "term": t.canonical,
                "occ_count": t.occ_count,
                "relevance": t.relevance,
                "pubs": sorted(t.pubs),
            }
            for t in term_set.terms
        ],
    }


def terms_from_artifact(payload: dict) -> TermSet:
    terms = tuple(
        Term(
            canonical=row["term"],
            pubs=frozenset(row["pubs"]),
            occ_count=row["occ_count"],
            relevance=row["relevance"],
        )
        for row in payload["terms"]
    )
    return TermSet(terms=terms, min_occ=payload["min_occ"], k=payload["k"])


def candidates_to_artifact(candidates: list[TermCandidate]) -> dict:
    return {
        "candidates": [
            {"term": c.canonical, "pubs": sorted(c.pubs)} for c in candidates
        ]
    }


def candidates_from_artifact(payload: dict) -> list[TermCandidate]:
    return [
        TermCandidate(canonical=row["term"], pubs=frozenset(row["pubs"]))
        for row in payload["candidates"]
    ]


def audit_rows(scored: list[Term], selected: TermSet) -> list[dict]:
    """Audit dump rows: every scored candidate with its selection flag."""
    chosen = {t.canonical for t in selected.terms}
    return [
        {
            "term": t.canonical,
            "occ_count": t.occ_count,
            "relevance": t.relevance,
            "selected": t.canonical in chosen,
        }
        for t in sorted(scored, key=lambda t: t.canonical)
    ]
