"""Heterogeneity report output: plain text, JSON, a TSV of per-term values,
and two matplotlib figures (score distribution, impact-colored map).

The report quantifies how unevenly citation impact spreads over the map:
research areas within one corpus routinely differ by a factor of two or
three, which is exactly what the P90/P10 ratio and the decile-centroid
distance surface.  Figures are rendered with the Agg backend; unlike the
map JSON/SVG they are presentation aids and are not covered by the
byte-determinism guarantees.
"""

from __future__ import annotations

import io
from pathlib import Path

from .jsonio import dump_bytes, format_float
from .render import TermMap

REPORT_SCHEMA = "report/1"


def report_payload(report: dict) -> dict:
    payload = dict(report)
    payload["schema"] = REPORT_SCHEMA
    return payload


def report_bytes(report: dict) -> bytes:
    return dump_bytes(report_payload(report))


def render_report_text(report: dict) -> str:
    lines = [
        "Impact heterogeneity report",
        "===========================",
        f"terms: {report['n_terms']}",
        f"score P10:  {format_float(report['p10'])}",
        f"score P90:  {format_float(report['p90'])}",
    ]
    ratio = report["p90_p10_ratio"]
    lines.append(
        "P90/P10:    " + (format_float(ratio) if ratio is not None else "undefined (P10 = 0)")
    )
    lines.append(
        f"distance between top/bottom decile centroids "
        f"(decile size {report['decile_size']}): "
        f"{format_float(report['decile_centroid_distance'])}"
    )
    lines.append("")
    lines.append(f"top {report['k_extremes']} terms by impact score:")
    for row in report["top"]:
        lines.append(f"  {row['score']:8.4f}  {row['term']}")
    lines.append(f"bottom {report['k_extremes']} terms by impact score:")
    for row in report["bottom"]:
        lines.append(f"  {row['score']:8.4f}  {row['term']}")
    return "\n".join(lines) + "\n"


def terms_tsv(term_map: TermMap) -> bytes:
    """Delimited per-term table matching the map entries (alphabetical)."""
    out = io.StringIO()
    out.write("term\tx\ty\tocc_count\tscore\tcolor\n")
    for e in term_map.entries:
        out.write(
            f"{e.term}\t{format_float(e.x)}\t{format_float(e.y)}\t"
            f"{e.occ_count}\t{format_float(e.score)}\t{e.color}\n"
        )
    return out.getvalue().encode("utf-8")


def render_report_figures(term_map: TermMap, report: dict, out_dir: Path) -> list[Path]:
    """Write score_distribution.png and impact_map.png into ``out_dir``."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    scores = [e.score for e in term_map.entries]

    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.hist(scores, bins=30, color="#4878a8", edgecolor="white")
    ax.axvline(report["p10"], color="#888888", linestyle="--", label="P10")
    ax.axvline(report["p90"], color="#333333", linestyle="--", label="P90")
    ax.set_xlabel("term impact score (1 = field average)")
    ax.set_ylabel("terms")
    ratio = report["p90_p10_ratio"]
    title = "Term impact score distribution"
    if ratio is not None:
        title += f"  (P90/P10 = {ratio:.2f})"
    ax.set_title(title)
    ax.legend()
    fig.tight_layout()
    path = out_dir / "score_distribution.png"
    fig.savefig(path, dpi=150)
    plt.close(fig)
    written.append(path)

    xs = [e.x for e in term_map.entries]
    ys = [e.y for e in term_map.entries]
    sizes = [12 + 3 * e.occ_count for e in term_map.entries]
    colors = [e.color for e in term_map.entries]
    fig, ax = plt.subplots(figsize=(7, 6))
    ax.scatter(xs, ys, s=sizes, c=colors, alpha=0.85, linewidths=0)
    ax.set_aspect("equal")
    ax.set_title("Term map colored by citation impact")
    ax.set_xticks([])
    ax.set_yticks([])
    fig.tight_layout()
    path = out_dir / "impact_map.png"
    fig.savefig(path, dpi=150)
    plt.close(fig)
    written.append(path)
    return written
