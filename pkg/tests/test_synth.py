"""Synthetic corpus generator: determinism, realized citation rates, validation."""

import pytest

from termscape.corpus import write_jsonl
from termscape.errors import ConfigError
from termscape.synth import ClusterSpec, SynthSpec, load_synth_spec, synth_corpus


def two_cluster_spec(bridge=0.0):
    return SynthSpec(
        clusters=(
            ClusterSpec("alpha", ("atrial fibrillation", "catheter ablation", "sinus rhythm"), 100, 6.0),
            ClusterSpec("beta", ("gene expression", "ion channel", "cell membrane"), 100, 2.0),
        ),
        bridge_fraction=bridge,
        years=(2006, 2010),
    )


def test_corpus_size_and_fields():
    corpus = synth_corpus(two_cluster_spec(), seed=1)
    assert len(corpus) == 200
    assert len({p.id for p in corpus}) == 200
    assert all(2006 <= p.year <= 2010 for p in corpus)
    assert all(p.doc_type == "article" for p in corpus)
    assert all(p.citations >= 0 for p in corpus)


def test_realized_citation_ratio_near_nominal():
    # rates 6.0 vs 2.0 with no bridges: the realized ratio stays near 3
    corpus = synth_corpus(two_cluster_spec(), seed=7)
    mean_a = sum(p.citations for p in corpus if p.id.startswith("alpha")) / 100
    mean_b = sum(p.citations for p in corpus if p.id.startswith("beta")) / 100
    assert 2.0 <= mean_a / mean_b <= 4.5


def test_phrase_bag_sizes():
    corpus = synth_corpus(two_cluster_spec(), seed=3)
    for pub in corpus:
        sentences = 1 + (pub.abstract.count(".") if pub.abstract else 0)
        assert 5 <= sentences <= 15


def test_byte_identical_for_same_seed():
    a = synth_corpus(two_cluster_spec(0.1), seed=42)
    b = synth_corpus(two_cluster_spec(0.1), seed=42)
    assert write_jsonl(a.publications) == write_jsonl(b.publications)


def test_different_seed_differs():
    a = synth_corpus(two_cluster_spec(), seed=1)
    b = synth_corpus(two_cluster_spec(), seed=2)
    assert write_jsonl(a.publications) != write_jsonl(b.publications)


def test_overlapping_vocabularies_rejected():
    spec = SynthSpec(
        clusters=(
            ClusterSpec("a", ("shared phrase", "one"), 5, 1.0),
            ClusterSpec("b", ("shared phrase", "two"), 5, 1.0),
        ),
        bridge_fraction=0.0,
        years=(2006, 2010),
    )
    with pytest.raises(ConfigError, match="disjoint"):
        spec.validate()


def test_non_positive_counts_rejected():
    spec = SynthSpec(
        clusters=(ClusterSpec("a", ("x",), 0, 1.0),),
        bridge_fraction=0.0,
        years=(2006, 2010),
    )
    with pytest.raises(ConfigError, match="positive"):
        spec.validate()


def test_bridge_needs_two_clusters():
    spec = SynthSpec(
        clusters=(ClusterSpec("a", ("x",), 5, 1.0),),
        bridge_fraction=0.5,
        years=(2006, 2010),
    )
    with pytest.raises(ConfigError, match="two clusters"):
        spec.validate()


def test_bridge_pubs_mix_vocabularies():
    corpus = synth_corpus(two_cluster_spec(0.2), seed=9)
    alpha_words = {"atrial", "fibrillation", "catheter", "ablation", "sinus", "rhythm"}
    beta_words = {"gene", "expression", "ion", "channel", "cell", "membrane"}
    mixed = 0
    for pub in corpus:
        text = (pub.title + " " + (pub.abstract or "")).lower()
        words = set(text.replace(".", " ").split())
        if words & alpha_words and words & beta_words:
            mixed += 1
    # 20 bridge pubs per cluster were requested; most draw from both pools
    assert 20 <= mixed <= 40


def test_load_synth_spec_from_json(tmp_path):
    path = tmp_path / "spec.json"
    path.write_text(
        '{"clusters": [{"name": "a", "vocabulary": ["x y"], "n_pubs": 3, "citation_rate": 1.5}],'
        ' "bridge_fraction": 0, "years": [2006, 2007]}'
    )
    spec = load_synth_spec(path)
    assert spec.clusters[0].vocabulary == ("x y",)
    assert spec.years == (2006, 2007)


def test_load_synth_spec_rejects_garbage(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"clusters": "nope"}')
    with pytest.raises(ConfigError):
        load_synth_spec(path)
