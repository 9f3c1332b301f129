"""Synthetic corpora for testing: vocabulary clusters with tunable citation
rates and a fraction of "bridge" publications mixing two clusters.

Generation is bit-reproducible: a single splitmix64 stream seeded with the
caller's seed is consumed in a documented order (see docs/determinism.md),
so the same (spec, seed) pair always yields a byte-identical corpus.

Draw order, per cluster in spec order, per publication index:
  1. year            -- uniform integer in [years.min, years.max]
  2. citations       -- Poisson(rate); bridge publications use the mean of
                        their two clusters' rates
  3. phrase count    -- 5 + u64 mod 11  (range 5..15)
  4. phrase indices  -- u64 mod len(pool), one per slot, with replacement

Within each cluster the last round(bridge_fraction * n_pubs) publications
(round half to even) are bridges; their phrase pool is the cluster's
vocabulary concatenated with the next cluster's (cyclically).  The first
phrase becomes the title; the rest become one sentence each in the
abstract.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .corpus import Corpus, Publication
from .errors import ConfigError
from .rng import SplitMix64


@dataclass(frozen=True)
class ClusterSpec:
    name: str
    vocabulary: tuple[str, ...]
    n_pubs: int
    citation_rate: float


@dataclass(frozen=True)
class SynthSpec:
    clusters: tuple[ClusterSpec, ...]
    bridge_fraction: float
    years: tuple[int, int]

    def validate(self) -> None:
        if not self.clusters:
            raise ConfigError("synthetic spec needs at least one cluster")
        seen: dict[str, str] = {}
        for cluster in self.clusters:
            if cluster.n_pubs <= 0:
                raise ConfigError(f"cluster {cluster.name!r}: n_pubs must be positive")
            if cluster.citation_rate < 0:
                raise ConfigError(f"cluster {cluster.name!r}: citation_rate must be >= 0")
            if not cluster.vocabulary:
                raise ConfigError(f"cluster {cluster.name!r}: empty vocabulary")
            for phrase in cluster.vocabulary:
                key = phrase.lower()
                if key in seen and seen[key] != cluster.name:
                    raise ConfigError(
                        f"phrase {phrase!r} appears in clusters "
                        f"{seen[key]!r} and {cluster.name!r}; vocabularies must be disjoint"
                    )
                seen[key] = cluster.name
        if not 0.0 <= self.bridge_fraction <= 1.0:
            raise ConfigError("bridge_fraction must be in [0, 1]")
        if self.bridge_fraction > 0 and len(self.clusters) < 2:
            raise ConfigError("bridge publications need at least two clusters")
        if self.years[0] > self.years[1]:
            raise ConfigError(f"years range {self.years} is inverted")


def load_synth_spec(source: dict | str | Path) -> SynthSpec:
    """Build a SynthSpec from a dict or a JSON file path and validate it."""
    if isinstance(source, (str, Path)):
        with open(source, "rb") as fh:
            raw = json.load(fh)
    else:
        raw = source
    try:
        clusters = tuple(
            ClusterSpec(
                name=str(c["name"]),
                vocabulary=tuple(str(v) for v in c["vocabulary"]),
                n_pubs=int(c["n_pubs"]),
                citation_rate=float(c["citation_rate"]),
            )
            for c in raw["clusters"]
        )
        spec = SynthSpec(
            clusters=clusters,
            bridge_fraction=float(raw["bridge_fraction"]),
            years=(int(raw["years"][0]), int(raw["years"][1])),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"malformed synthetic spec: {exc}") from exc
    spec.validate()
    return spec


def _sentence(phrase: str) -> str:
    return phrase[:1].upper() + phrase[1:] + "."


def synth_corpus(spec: SynthSpec, seed: int) -> Corpus:
    """Generate the corpus described by ``spec``, reproducibly for ``seed``."""
    spec.validate()
    rng = SplitMix64(seed)
    y_lo, y_hi = spec.years
    span = y_hi - y_lo + 1
    pubs: list[Publication] = []
    for ci, cluster in enumerate(spec.clusters):
        n_bridge = round(spec.bridge_fraction * cluster.n_pubs)
        partner = spec.clusters[(ci + 1) % len(spec.clusters)]
        for pi in range(cluster.n_pubs):
            is_bridge = pi >= cluster.n_pubs - n_bridge
            if is_bridge:
                pool = cluster.vocabulary + partner.vocabulary
                rate = (cluster.citation_rate + partner.citation_rate) / 2.0
            else:
                pool = cluster.vocabulary
                rate = cluster.citation_rate
            year = y_lo + rng.next_below(span)
            citations = rng.poisson(rate)
            n_phrases = 5 + rng.next_below(11)
            phrases = [pool[rng.next_below(len(pool))] for _ in range(n_phrases)]
            title = _sentence(phrases[0])
            abstract = " ".join(_sentence(p) for p in phrases[1:]) or None
            pubs.append(
                Publication(
                    id=f"{cluster.name}-{pi:04d}",
                    title=title,
                    abstract=abstract,
                    year=year,
                    citations=citations,
                    doc_type="article",
                )
            )
    return Corpus(
        publications=tuple(pubs),
        year_range=(y_lo, y_hi),
        doc_types_kept=("article",),
        census_note=f"synthetic corpus (seed={seed})",
    )
