"""Final term-map artifact: canonical JSON and a deterministic SVG picture.

The SVG is assembled by hand (no plotting library) so that identical inputs
give byte-identical output: fixed float formatting, fixed element order,
no timestamps, no generator metadata.  Terms are drawn as filled circles
(area proportional to occurrence count) with labels in the term's impact
color; labels are placed in descending occurrence order and suppressed
greedily when their estimated boxes collide, so prominent terms always keep
their labels.  A color-scale legend with the anchor colors sits in the
lower right.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .impact import ColorScale, ImpactScores, color_for, color_hex
from .jsonio import dump_bytes, format_float
from .layout import Positions
from .nlp import TermSet

#: Circle radius bounds in pixels (radius scales with sqrt of occurrences).
RADIUS_MIN = 2.5
RADIUS_MAX = 14.0

#: Fraction of the canvas kept free on every side.
MARGIN_FRACTION = 0.05

#: Estimated glyph width as a fraction of the font size, for label boxes.
GLYPH_ASPECT = 0.60

_LEGEND_W = 180.0
_LEGEND_H = 12.0
_LEGEND_PAD = 18.0


@dataclass(frozen=True)
class MapEntry:
    term: str
    x: float
    y: float
    occ_count: int
    score: float
    color: str


@dataclass(frozen=True)
class TermMap:
    entries: tuple[MapEntry, ...]  # alphabetical by term
    metadata: dict


@dataclass(frozen=True)
class RenderOptions:
    width: int = 1000
    height: int = 800
    font_exponent: float = 0.5
    font_min: float = 9.0
    font_max: float = 26.0
    label_density: float = 1.0  # max fraction of terms that get labels
    background: str = "#FFFFFF"

    def __post_init__(self) -> None:
        if self.width < 256 or self.height < 256:
            raise ValueError("canvas must be at least 256x256")
        if not self.font_min < self.font_max:
            raise ValueError("font_min must be below font_max")
        if not 0.0 < self.label_density <= 1.0:
            raise ValueError("label_density must be in (0, 1]")
        if self.font_exponent <= 0:
            raise ValueError("font_exponent must be positive")


def assemble_map(
    positions: Positions,
    term_set: TermSet,
    scores: ImpactScores,
    scale: ColorScale,
    metadata: dict,
) -> TermMap:
    """Join positions, occurrence counts and scores by term; fail loudly on
    any mismatch.  Position rows must follow the terms in alphabetical
    order (the layout stage's convention)."""
    terms = sorted(t.canonical for t in term_set.terms)
    if len(terms) < 2:
        raise ValueError("a map needs at least 2 terms")
    coords = np.asarray(positions.coords, dtype=np.float64)
    if coords.shape[0] != len(terms):
        raise ValueError(
            f"positions cover {coords.shape[0]} terms, term set has {len(terms)}"
        )
    score_terms = set(scores.term_score)
    for term in terms:
        if term not in score_terms:
            raise ValueError(f"no score for term {term!r}")
    for term in sorted(score_terms - set(terms)):
        raise ValueError(f"score for unknown term {term!r}")
    occ = {t.canonical: t.occ_count for t in term_set.terms}
    entries = tuple(
        MapEntry(
            term=term,
            x=float(coords[row, 0]),
            y=float(coords[row, 1]),
            occ_count=occ[term],
            score=scores.term_score[term],
            color=color_hex(color_for(scores.term_score[term], scale)),
        )
        for row, term in enumerate(terms)
    )
    meta = dict(metadata)
    meta["color_anchors"] = [[s, color_hex(rgb)] for s, rgb in scale.anchors]
    return TermMap(entries=entries, metadata=meta)


def export_map_json(term_map: TermMap) -> bytes:
    payload = {
        "schema": "termmap/1",
        "entries": [
            {
                "term": e.term,
                "x": e.x,
                "y": e.y,
                "occ_count": e.occ_count,
                "score": e.score,
                "color": e.color,
            }
            for e in term_map.entries
        ],
        "metadata": term_map.metadata,
    }
    return dump_bytes(payload)


def map_from_payload(payload: dict) -> TermMap:
    entries = tuple(
        MapEntry(
            term=row["term"],
            x=row["x"],
            y=row["y"],
            occ_count=row["occ_count"],
            score=row["score"],
            color=row["color"],
        )
        for row in payload["entries"]
    )
    return TermMap(entries=entries, metadata=payload["metadata"])


def screen_projection(
    term_map: TermMap, opts: RenderOptions
) -> tuple[np.ndarray, float]:
    """Affine map into the canvas: 5% margin, aspect ratio preserved.

    Returns (screen coordinates, scale factor).  One global scale, so screen
    distance ratios equal map distance ratios exactly.
    """
    xs = np.array([e.x for e in term_map.entries])
    ys = np.array([e.y for e in term_map.entries])
    ext_x = float(xs.max() - xs.min())
    ext_y = float(ys.max() - ys.min())
    if ext_x == 0.0 and ext_y == 0.0:
        raise ValueError("degenerate extent: all points coincident")
    usable_w = opts.width * (1 - 2 * MARGIN_FRACTION)
    usable_h = opts.height * (1 - 2 * MARGIN_FRACTION)
    candidates = []
    if ext_x > 0:
        candidates.append(usable_w / ext_x)
    if ext_y > 0:
        candidates.append(usable_h / ext_y)
    scale = min(candidates)
    mid_x = (xs.max() + xs.min()) / 2.0
    mid_y = (ys.max() + ys.min()) / 2.0
    screen = np.empty((len(term_map.entries), 2))
    screen[:, 0] = opts.width / 2.0 + (xs - mid_x) * scale
    screen[:, 1] = opts.height / 2.0 - (ys - mid_y) * scale  # y grows downward
    return screen, scale


def _fmt(v: float) -> str:
    return f"{v:.6f}"


def _esc(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _boxes_overlap(a: tuple, b: tuple) -> bool:
    return not (a[2] <= b[0] or b[2] <= a[0] or a[3] <= b[1] or b[3] <= a[1])


def render_svg(term_map: TermMap, opts: RenderOptions = RenderOptions()) -> bytes:
    if len(term_map.entries) < 2:
        raise ValueError("a map needs at least 2 entries")
    screen, _ = screen_projection(term_map, opts)
    entries = term_map.entries
    occ_max = max(e.occ_count for e in entries)

    def radius(occ: int) -> float:
        return max(RADIUS_MIN, RADIUS_MAX * math.sqrt(occ / occ_max))

    def font_size(occ: int) -> float:
        raw = opts.font_max * (occ / occ_max) ** opts.font_exponent
        return min(opts.font_max, max(opts.font_min, raw))

    anchors = term_map.metadata.get(
        "color_anchors", [[s, color_hex(rgb)] for s, rgb in ColorScale().anchors]
    )

    out: list[str] = []
    out.append('<?xml version="1.0" encoding="UTF-8"?>\n')
    out.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{opts.width}" height="{opts.height}" '
        f'viewBox="0 0 {opts.width} {opts.height}">\n'
    )
    out.append(f'<rect width="{opts.width}" height="{opts.height}" fill="{opts.background}"/>\n')
    out.append('<defs>\n<linearGradient id="impact-scale" x1="0" y1="0" x2="1" y2="0">\n')
    for score, color in anchors:
        out.append(f'<stop offset="{_fmt(score / 2.0)}" stop-color="{color}"/>\n')
    out.append("</linearGradient>\n</defs>\n")

    draw_order = sorted(range(len(entries)), key=lambda i: (-entries[i].occ_count, entries[i].term))

    out.append('<g stroke="none">\n')
    for i in draw_order:
        e = entries[i]
        out.append(
            f'<circle cx="{_fmt(screen[i, 0])}" cy="{_fmt(screen[i, 1])}" '
            f'r="{_fmt(radius(e.occ_count))}" fill="{e.color}" fill-opacity="0.85"/>\n'
        )
    out.append("</g>\n")

    max_labels = max(1, math.ceil(opts.label_density * len(entries)))
    taken: list[tuple[float, float, float, float]] = []
    out.append(f'<g font-family="sans-serif" text-anchor="middle">\n')
    for i in draw_order:
        if len(taken) >= max_labels:
            break
        e = entries[i]
        fs = font_size(e.occ_count)
        w = GLYPH_ASPECT * fs * len(e.term)
        baseline = screen[i, 1] - radius(e.occ_count) - 3.0
        box = (screen[i, 0] - w / 2.0, baseline - fs, screen[i, 0] + w / 2.0, baseline)
        if any(_boxes_overlap(box, other) for other in taken):
            continue  # circle stays, label is suppressed
        taken.append(box)
        out.append(
            f'<text x="{_fmt(screen[i, 0])}" y="{_fmt(baseline)}" '
            f'font-size="{_fmt(fs)}" fill="{e.color}">{_esc(e.term)}</text>\n'
        )
    out.append("</g>\n")

    lx = opts.width - _LEGEND_PAD - _LEGEND_W
    ly = opts.height - _LEGEND_PAD - _LEGEND_H
    out.append(
        f'<rect x="{_fmt(lx)}" y="{_fmt(ly)}" width="{_fmt(_LEGEND_W)}" '
        f'height="{_fmt(_LEGEND_H)}" fill="url(#impact-scale)" stroke="#000000" '
        f'stroke-width="0.5"/>\n'
    )
    out.append('<g font-family="sans-serif" font-size="10" text-anchor="middle" fill="#000000">\n')
    for tick in (0.0, 1.0, 2.0):
        tx = lx + _LEGEND_W * tick / 2.0
        out.append(f'<text x="{_fmt(tx)}" y="{_fmt(ly - 3.0)}">{tick:g}</text>\n')
    out.append("</g>\n")
    out.append("</svg>\n")
    return "".join(out).encode("utf-8")


def map_entry_payload(e: MapEntry) -> dict:
    return {
        "term": e.term,
        "x": e.x,
        "y": e.y,
        "occ_count": e.occ_count,
        "score": e.score,
        "color": e.color,
    }
