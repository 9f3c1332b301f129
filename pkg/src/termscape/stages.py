"""File-level pipeline stages.

Each stage reads and writes the documented interchange artifacts so any
stage can be rerun or substituted independently; the pipeline command runs
exactly these functions in sequence, which is what makes "stage composition
equals the monolith" true by construction.  Every JSON artifact carries a
``schema`` field that is checked on read.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from . import cooccur as cooccur_mod
from . import corpus as corpus_mod
from . import impact as impact_mod
from . import jsonio, nlp, render, report, synth
from .errors import InputError, StageError
from .impact import ColorScale, ImpactScores
from .layout import (
    LayoutParams,
    canonicalize,
    layout_from_artifact,
    layout_to_artifact,
    optimize_layout,
    place_isolated,
)

CORPUS_SCHEMA = "corpus/1"
CANDIDATES_SCHEMA = "candidates/1"
TERMS_SCHEMA = "terms/1"
COOCCUR_SCHEMA = "cooccur/1"
LAYOUT_SCHEMA = "layout/1"
MAP_SCHEMA = "termmap/1"


def _read_bytes(path: str | Path) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read input {path}: {exc}") from exc


def parse_anchor_list(raw: list) -> ColorScale:
    anchors = []
    for score, color in raw:
        color = str(color).lstrip("#")
        rgb = tuple(int(color[i : i + 2], 16) for i in (0, 2, 4))
        anchors.append((float(score), rgb))
    return ColorScale(anchors=tuple(anchors))


def stage_synth(spec_path: str | Path, seed: int, out_path: str | Path) -> corpus_mod.Corpus:
    spec = synth.load_synth_spec(spec_path)
    generated = synth.synth_corpus(spec, seed)
    Path(out_path).write_bytes(corpus_mod.write_jsonl(generated.publications))
    return generated


def stage_ingest(
    input_path: str | Path,
    fmt: str,
    doc_types: list[str],
    year_range: tuple[int, int],
    out_path: str | Path,
    census_note: str = "",
    column_map: dict[str, str] | None = None,
) -> tuple[corpus_mod.Corpus, list[corpus_mod.ParseDiagnostic]]:
    data = _read_bytes(input_path)
    if fmt == "jsonl":
        result = corpus_mod.parse_jsonl(data)
    elif fmt == "csv":
        result = corpus_mod.parse_csv(data, column_map)
    else:
        raise InputError(f"unknown input format {fmt!r} (expected jsonl or csv)")
    filtered = corpus_mod.filter_corpus(result.publications, doc_types, year_range, census_note)
    jsonio.write_artifact(out_path, CORPUS_SCHEMA, corpus_mod.corpus_to_artifact(filtered))
    return filtered, result.diagnostics


def load_corpus(path: str | Path) -> corpus_mod.Corpus:
    return corpus_mod.corpus_from_artifact(jsonio.read_artifact(path, CORPUS_SCHEMA))


def stage_extract(
    corpus_path: str | Path, out_path: str | Path, lexicon_path: str | Path | None = None
) -> list[nlp.TermCandidate]:
    loaded = load_corpus(corpus_path)
    lexicon = nlp.load_lexicon(lexicon_path)
    candidates = nlp.extract_candidates(loaded, lexicon)
    jsonio.write_artifact(out_path, CANDIDATES_SCHEMA, nlp.candidates_to_artifact(candidates))
    return candidates


def resolve_min_occ(min_occ: int | str, corpus_size: int | None) -> int:
    if min_occ == "auto":
        if corpus_size is None:
            raise InputError("min_occ 'auto' needs the corpus (pass --corpus)")
        return nlp.default_min_occ(corpus_size)
    return int(min_occ)


def stage_select(
    candidates_path: str | Path,
    min_occ: int,
    k: int,
    out_path: str | Path,
    audit_path: str | Path | None = None,
) -> nlp.TermSet:
    candidates = nlp.candidates_from_artifact(
        jsonio.read_artifact(candidates_path, CANDIDATES_SCHEMA)
    )
    scored = nlp.relevance_scores(candidates, min_occ)
    selected = nlp.select_terms(scored, k, min_occ=min_occ)
    jsonio.write_artifact(out_path, TERMS_SCHEMA, nlp.terms_to_artifact(selected))
    if audit_path is not None:
        Path(audit_path).write_bytes(jsonio.dump_jsonl(nlp.audit_rows(scored, selected)))
    return selected


def load_terms(path: str | Path) -> nlp.TermSet:
    return nlp.terms_from_artifact(jsonio.read_artifact(path, TERMS_SCHEMA))


def stage_cooccur(
    terms_path: str | Path,
    corpus_path: str | Path,
    out_path: str | Path,
    matrix_txt_path: str | Path | None = None,
) -> cooccur_mod.CooccurrenceMatrix:
    term_set = load_terms(terms_path)
    loaded = load_corpus(corpus_path)
    matrix = cooccur_mod.build_matrix(loaded, term_set)
    jsonio.write_artifact(out_path, COOCCUR_SCHEMA, cooccur_mod.matrix_to_artifact(matrix))
    if matrix_txt_path is not None:
        Path(matrix_txt_path).write_bytes(cooccur_mod.write_matrix_txt(matrix))
    return matrix


def stage_layout(
    cooccur_path: str | Path, params: LayoutParams, out_path: str | Path
):
    matrix = cooccur_mod.matrix_from_artifact(jsonio.read_artifact(cooccur_path, COOCCUR_SCHEMA))
    sim = cooccur_mod.association_strength(matrix)
    positions = optimize_layout(sim, params)
    isolated = cooccur_mod.isolated_indices(matrix)
    if isolated:
        positions = place_isolated(positions, isolated)
    positions = canonicalize(positions, matrix.occ)
    jsonio.write_artifact(out_path, LAYOUT_SCHEMA, layout_to_artifact(positions, matrix.terms, params))
    return positions


def stage_score(
    corpus_path: str | Path,
    terms_path: str | Path,
    out_path: str | Path,
    scale: ColorScale | None = None,
) -> ImpactScores:
    loaded = load_corpus(corpus_path)
    term_set = load_terms(terms_path)
    impact = impact_mod.compute_impact(loaded, term_set)
    rows = impact_mod.scores_rows(impact, scale or impact_mod.DEFAULT_SCALE)
    Path(out_path).write_bytes(jsonio.dump_jsonl(rows))
    return impact


def load_scores(path: str | Path) -> tuple[dict[str, float], dict[str, str]]:
    """Read the scores JSONL dump into (term -> score, term -> color)."""
    scores: dict[str, float] = {}
    colors: dict[str, str] = {}
    for line_no, line in enumerate(_read_bytes(path).decode("utf-8").splitlines(), start=1):
        if not line.strip():
            continue
        try:
            row = json.loads(line)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}:{line_no}: invalid JSON: {exc.msg}") from exc
        scores[row["term"]] = float(row["score"])
        colors[row["term"]] = row["color"]
    return scores, colors


def stage_render(
    layout_path: str | Path,
    terms_path: str | Path,
    scores_path: str | Path,
    corpus_path: str | Path,
    out_map: str | Path,
    out_svg: str | Path | None = None,
    scale: ColorScale | None = None,
    options: render.RenderOptions | None = None,
) -> render.TermMap:
    positions, layout_terms = layout_from_artifact(jsonio.read_artifact(layout_path, LAYOUT_SCHEMA))
    term_set = load_terms(terms_path)
    loaded = load_corpus(corpus_path)
    scores, dump_colors = load_scores(scores_path)
    layout_payload = jsonio.read_artifact(layout_path, LAYOUT_SCHEMA)
    scale = scale or impact_mod.DEFAULT_SCALE

    expected = tuple(sorted(t.canonical for t in term_set.terms))
    if layout_terms != expected:
        raise StageError("render", "layout terms do not match the term set")
    impact = ImpactScores(pub_score={}, term_score=scores, zero_mean_years=frozenset())
    metadata = {
        "corpus_size": len(loaded),
        "year_range": list(loaded.year_range),
        "k": term_set.k,
        "min_occ": term_set.min_occ,
        "seed": layout_payload["seed"],
        "census_note": loaded.census_note,
    }
    term_map = render.assemble_map(positions, term_set, impact, scale, metadata)
    for entry in term_map.entries:
        if entry.term in dump_colors and dump_colors[entry.term] != entry.color:
            raise StageError(
                "render",
                f"color mismatch for {entry.term!r}: scores dump has "
                f"{dump_colors[entry.term]}, scale gives {entry.color} "
                "(different color anchors?)",
            )
    Path(out_map).write_bytes(render.export_map_json(term_map))
    if out_svg is not None:
        Path(out_svg).write_bytes(render.render_svg(term_map, options or render.RenderOptions()))
    return term_map


def load_map(path: str | Path) -> render.TermMap:
    return render.map_from_payload(jsonio.read_artifact(path, MAP_SCHEMA))


def stage_report(
    map_path: str | Path,
    out_dir: str | Path,
    k_extremes: int = 10,
    figures: bool = True,
) -> dict:
    """Report files for a finished map.  ``k_extremes`` is clamped to the
    largest value the map supports so the default works on small maps."""
    term_map = load_map(map_path)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    term_score = {e.term: e.score for e in term_map.entries}
    coords = np.array([[e.x, e.y] for e in term_map.entries], dtype=np.float64)
    k_extremes = max(1, min(k_extremes, len(term_map.entries) // 2))
    summary = impact_mod.heterogeneity_report(term_score, coords, k_extremes)
    (out_dir / "report.json").write_bytes(report.report_bytes(summary))
    (out_dir / "report.txt").write_text(report.render_report_text(summary), encoding="utf-8")
    (out_dir / "terms.tsv").write_bytes(report.terms_tsv(term_map))
    if figures:
        report.render_report_figures(term_map, summary, out_dir)
    return summary
