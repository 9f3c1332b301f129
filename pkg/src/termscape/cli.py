"""termscape command line: the full pipeline plus one subcommand per stage.

    termscape pipeline --config cfg.json [--svg out.svg] [--seed N]
    termscape <stage>  --in <file> --out <file> [stage flags]
    termscape synth    --spec spec.json --seed N --out corpus.jsonl
    termscape report   --map map.json --out-dir dir

Exit codes: 0 success, 2 config error, 3 input/parse error, 4 stage failure.
Every flag has a config-file counterpart; flags override the config.  All
intermediate artifacts are written to disk so individual stages can be
rerun or substituted while tuning parameters.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import resource
import sys
import time
from datetime import datetime, timezone
from pathlib import Path

from . import jsonio, stages
from .errors import ConfigError, InputError, TermscapeError
from .impact import DEFAULT_SCALE, ColorScale
from .layout import LayoutParams
from .render import RenderOptions

_ARTIFACT_NAMES = {
    "corpus": "corpus.json",
    "candidates": "candidates.json",
    "terms": "terms.json",
    "audit": "terms_audit.jsonl",
    "cooccur": "cooccur.json",
    "matrix_txt": "matrix.txt",
    "layout": "layout.json",
    "scores": "scores.jsonl",
    "map": "map.json",
    "svg": "map.svg",
}


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


class PipelineConfig:
    """Validated pipeline configuration; see docs/file_formats.md."""

    def __init__(self, raw: dict, base_dir: Path):
        self.raw = raw
        try:
            self.input = (base_dir / raw["input"]).resolve()
            self.format = raw.get("format", "jsonl")
            self.doc_types = list(raw.get("doc_types", ["article", "review"]))
            self.year_range = tuple(int(y) for y in raw["year_range"])
            self.census_note = raw.get("census_note", "")
            self.column_map = raw.get("column_map")
            self.min_occ = raw.get("min_occ", "auto")
            self.k = int(raw.get("k", 2000))
            layout_raw = raw.get("layout", {})
            self.layout = LayoutParams(
                seed=int(layout_raw.get("seed", 42)),
                restarts=int(layout_raw.get("restarts", 10)),
                max_iters=int(layout_raw.get("max_iters", 1000)),
                tol=float(layout_raw.get("tol", 1e-7)),
            )
            self.out_dir = (base_dir / raw.get("out_dir", "out")).resolve()
            self.svg = raw.get("svg", True)
            self.lexicon = raw.get("lexicon")
            if raw.get("color_anchors") is not None:
                self.scale = stages.parse_anchor_list(raw["color_anchors"])
            else:
                self.scale = DEFAULT_SCALE
            render_raw = raw.get("render", {})
            self.render_options = RenderOptions(**render_raw)
            report_raw = raw.get("report", {})
            self.report_k = int(report_raw.get("k_extremes", 10))
            self.report_figures = bool(report_raw.get("figures", True))
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"bad pipeline config: {exc}") from exc
        if self.format not in ("jsonl", "csv"):
            raise ConfigError(f"format must be jsonl or csv, got {self.format!r}")
        if self.k < 1:
            raise ConfigError(f"k must be >= 1, got {self.k}")
        if self.min_occ != "auto" and int(self.min_occ) < 1:
            raise ConfigError(f"min_occ must be 'auto' or >= 1, got {self.min_occ!r}")
        if len(self.year_range) != 2 or self.year_range[0] > self.year_range[1]:
            raise ConfigError(f"bad year_range {self.year_range}")
        try:
            self.layout.validate()
        except ValueError as exc:
            raise ConfigError(f"bad layout params: {exc}") from exc
        for name in _ARTIFACT_NAMES.values():
            if self.input == self.out_dir / name:
                raise ConfigError(f"input path collides with output artifact {name}")


def load_config(path: str) -> PipelineConfig:
    cfg_path = Path(path)
    try:
        raw = json.loads(cfg_path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"config {path} must be a JSON object")
    return PipelineConfig(raw, cfg_path.resolve().parent)


def cmd_pipeline(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    if args.seed is not None:
        config.layout.seed = args.seed
    out_dir = config.out_dir
    out_dir.mkdir(parents=True, exist_ok=True)
    svg_path = Path(args.svg).resolve() if args.svg else (
        out_dir / _ARTIFACT_NAMES["svg"] if config.svg else None
    )

    paths = {name: out_dir / fname for name, fname in _ARTIFACT_NAMES.items()}
    timings: dict[str, float] = {}
    rss: dict[str, int] = {}
    started = _now()

    def timed(name: str, fn, *fn_args, **fn_kwargs):
        t0 = time.perf_counter()
        result = fn(*fn_args, **fn_kwargs)
        timings[name] = time.perf_counter() - t0
        rss[name] = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
        return result

    corpus, diagnostics = timed(
        "ingest",
        stages.stage_ingest,
        config.input,
        config.format,
        config.doc_types,
        config.year_range,
        paths["corpus"],
        census_note=config.census_note,
        column_map=config.column_map,
    )
    for diag in diagnostics:
        print(f"ingest: {diag}", file=sys.stderr)

    timed("extract", stages.stage_extract, paths["corpus"], paths["candidates"], config.lexicon)
    min_occ = stages.resolve_min_occ(config.min_occ, len(corpus))
    timed(
        "select",
        stages.stage_select,
        paths["candidates"],
        min_occ,
        config.k,
        paths["terms"],
        audit_path=paths["audit"],
    )
    timed(
        "cooccur",
        stages.stage_cooccur,
        paths["terms"],
        paths["corpus"],
        paths["cooccur"],
        matrix_txt_path=paths["matrix_txt"],
    )
    positions = timed("layout", stages.stage_layout, paths["cooccur"], config.layout, paths["layout"])
    timed("score", stages.stage_score, paths["corpus"], paths["terms"], paths["scores"], config.scale)
    timed(
        "render",
        stages.stage_render,
        paths["layout"],
        paths["terms"],
        paths["scores"],
        paths["corpus"],
        paths["map"],
        out_svg=svg_path,
        scale=config.scale,
        options=config.render_options,
    )
    report_dir = out_dir / "report"
    timed(
        "report",
        stages.stage_report,
        paths["map"],
        report_dir,
        k_extremes=config.report_k,
        figures=config.report_figures,
    )

    artifacts = {}
    for name, path in paths.items():
        if name == "svg":
            path = svg_path
        if path is not None and Path(path).exists():
            artifacts[name] = {
                "path": str(Path(path).relative_to(out_dir) if Path(path).is_relative_to(out_dir) else path),
                "sha256": _sha256(Path(path)),
            }
    for fname in ("report.json", "report.txt", "terms.tsv"):
        path = report_dir / fname
        if path.exists():
            artifacts[f"report/{fname}"] = {
                "path": f"report/{fname}",
                "sha256": _sha256(path),
            }

    run_record = {
        "config": config.raw,
        "resolved": {
            "min_occ": min_occ,
            "k": config.k,
            "seed": config.layout.seed,
            "restarts": config.layout.restarts,
            "max_iters": config.layout.max_iters,
            "tol": config.layout.tol,
            "layout_converged": positions.converged,
            "layout_iterations": positions.iterations_used,
            "constraint_residual": positions.constraint_residual,
        },
        "artifacts": artifacts,
        "timings_s": {k: round(v, 6) for k, v in timings.items()},
        "max_rss_kb": rss,
        "started": started,
        "finished": _now(),
    }
    jsonio.write_artifact(out_dir / "run.json", "run/1", run_record)
    print(f"pipeline finished; artifacts in {out_dir}")
    return 0


def cmd_synth(args: argparse.Namespace) -> int:
    generated = stages.stage_synth(args.spec, args.seed, args.out)
    print(f"wrote {len(generated)} publications to {args.out}")
    return 0


def cmd_ingest(args: argparse.Namespace) -> int:
    column_map = None
    if args.column_map:
        column_map = dict(pair.split("=", 1) for pair in args.column_map.split(","))
    year_range = _parse_years(args.years)
    corpus, diagnostics = stages.stage_ingest(
        args.input,
        args.format,
        args.doc_types.split(","),
        year_range,
        args.out,
        census_note=args.census_note,
        column_map=column_map,
    )
    for diag in diagnostics:
        print(f"ingest: {diag}", file=sys.stderr)
    print(f"kept {len(corpus)} publications -> {args.out}")
    return 0


def _parse_years(spec: str) -> tuple[int, int]:
    try:
        lo, hi = spec.split(":")
        return int(lo), int(hi)
    except ValueError:
        raise ConfigError(f"bad year range {spec!r}; expected MIN:MAX")


def cmd_extract(args: argparse.Namespace) -> int:
    candidates = stages.stage_extract(args.input, args.out, args.lexicon)
    print(f"extracted {len(candidates)} candidate phrases -> {args.out}")
    return 0


def cmd_select(args: argparse.Namespace) -> int:
    corpus_size = None
    if args.corpus:
        corpus_size = len(stages.load_corpus(args.corpus))
    if args.k < 1:
        raise ConfigError(f"k must be >= 1, got {args.k}")
    min_occ = stages.resolve_min_occ(args.min_occ, corpus_size)
    if min_occ < 1:
        raise ConfigError(f"min_occ must be >= 1, got {min_occ}")
    selected = stages.stage_select(args.input, min_occ, args.k, args.out, audit_path=args.audit)
    print(f"selected {len(selected.terms)} terms (min_occ={min_occ}, k={args.k}) -> {args.out}")
    return 0


def cmd_cooccur(args: argparse.Namespace) -> int:
    matrix = stages.stage_cooccur(args.input, args.corpus, args.out, matrix_txt_path=args.matrix_txt)
    print(f"{matrix.n} terms, {len(matrix.counts)} co-occurring pairs -> {args.out}")
    return 0


def cmd_layout(args: argparse.Namespace) -> int:
    params = LayoutParams(
        seed=args.seed, restarts=args.restarts, max_iters=args.max_iters, tol=args.tol
    )
    try:
        params.validate()
    except ValueError as exc:
        raise ConfigError(str(exc))
    positions = stages.stage_layout(args.input, params, args.out)
    status = "converged" if positions.converged else "max iterations reached"
    print(
        f"layout {status}: objective={positions.objective:.6g}, "
        f"residual={positions.constraint_residual:.2e} -> {args.out}"
    )
    return 0


def cmd_score(args: argparse.Namespace) -> int:
    scale = _scale_from_arg(args.anchors)
    stages.stage_score(args.corpus, args.terms, args.out, scale)
    print(f"scores -> {args.out}")
    return 0


def _scale_from_arg(anchors: str | None) -> ColorScale:
    if not anchors:
        return DEFAULT_SCALE
    try:
        return stages.parse_anchor_list(json.loads(anchors))
    except (json.JSONDecodeError, ValueError, IndexError) as exc:
        raise ConfigError(f"bad --anchors value: {exc}") from exc


def cmd_render(args: argparse.Namespace) -> int:
    options = RenderOptions(width=args.width, height=args.height)
    stages.stage_render(
        args.layout,
        args.terms,
        args.scores,
        args.corpus,
        args.out_map,
        out_svg=args.out_svg,
        scale=_scale_from_arg(args.anchors),
        options=options,
    )
    print(f"map -> {args.out_map}" + (f", svg -> {args.out_svg}" if args.out_svg else ""))
    return 0


def cmd_report(args: argparse.Namespace) -> int:
    summary = stages.stage_report(
        args.map, args.out_dir, k_extremes=args.k_extremes, figures=not args.no_figures
    )
    ratio = summary["p90_p10_ratio"]
    print(
        f"report -> {args.out_dir} "
        f"(P90/P10 = {'undefined' if ratio is None else format(ratio, '.3f')})"
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="termscape", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pipeline", help="run every stage from a config file")
    p.add_argument("--config", required=True)
    p.add_argument("--svg", help="write the SVG map to this path")
    p.add_argument("--seed", type=int, help="override the layout seed")
    p.set_defaults(fn=cmd_pipeline)

    p = sub.add_parser("synth", help="generate a synthetic corpus")
    p.add_argument("--spec", required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_synth)

    p = sub.add_parser("ingest", help="parse, validate and filter records")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    p.add_argument("--doc-types", default="article,review")
    p.add_argument("--years", required=True, help="inclusive range MIN:MAX")
    p.add_argument("--census-note", default="")
    p.add_argument("--column-map", help="CSV only: field=Header,... overrides")
    p.set_defaults(fn=cmd_ingest)

    p = sub.add_parser("extract", help="extract candidate noun phrases")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--lexicon", help="override the bundled POS lexicon")
    p.set_defaults(fn=cmd_extract)

    p = sub.add_parser("select", help="score and select characteristic terms")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--k", type=int, default=2000)
    p.add_argument("--min-occ", default="auto")
    p.add_argument("--corpus", help="corpus artifact (needed for --min-occ auto)")
    p.add_argument("--audit", help="write the per-candidate audit JSONL here")
    p.set_defaults(fn=cmd_select)

    p = sub.add_parser("cooccur", help="build the co-occurrence matrix")
    p.add_argument("--in", dest="input", required=True, help="terms artifact")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--matrix-txt", help="also write the plain-text triplet dump")
    p.set_defaults(fn=cmd_cooccur)

    p = sub.add_parser("layout", help="compute the 2-D map layout")
    p.add_argument("--in", dest="input", required=True, help="cooccur artifact")
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--restarts", type=int, default=10)
    p.add_argument("--max-iters", type=int, default=1000)
    p.add_argument("--tol", type=float, default=1e-7)
    p.set_defaults(fn=cmd_layout)

    p = sub.add_parser("score", help="normalized citation scores per term")
    p.add_argument("--corpus", required=True)
    p.add_argument("--terms", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--anchors", help="JSON [[score, \"#RRGGBB\"], ...] color anchors")
    p.set_defaults(fn=cmd_score)

    p = sub.add_parser("render", help="assemble and export the term map")
    p.add_argument("--layout", required=True)
    p.add_argument("--terms", required=True)
    p.add_argument("--scores", required=True)
    p.add_argument("--corpus", required=True)
    p.add_argument("--out-map", required=True)
    p.add_argument("--out-svg")
    p.add_argument("--anchors", help="JSON color anchors (must match the score stage)")
    p.add_argument("--width", type=int, default=1000)
    p.add_argument("--height", type=int, default=800)
    p.set_defaults(fn=cmd_render)

    p = sub.add_parser("report", help="impact heterogeneity report and figures")
    p.add_argument("--map", required=True)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--k-extremes", type=int, default=10)
    p.add_argument("--no-figures", action="store_true")
    p.set_defaults(fn=cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 3
    except TermscapeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (ValueError, OSError) as exc:
        print(f"error ({args.command}): {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
