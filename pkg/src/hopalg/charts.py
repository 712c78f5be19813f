"""Rendering of Ext charts: ASCII grid, standalone SVG and JSON documents.

Coordinates are (stem t - s, filtration s) with the origin at the bottom left.
"""

from __future__ import annotations

import json

from .resolution import ExtChart

CELL = 16
FORMATS = ("ascii", "svg", "json")


def chart_to_document(chart: ExtChart) -> dict:
    return {
        "schema": 1,
        "prime": chart.prime,
        "max_s": chart.max_s,
        "max_t": chart.max_t,
        "classes": [{"s": s, "t": t, "index": i} for s, t, i in chart.classes],
    }


def chart_from_document(doc: dict) -> ExtChart:
    from .formats import validate_chart

    validate_chart(doc)
    classes = [(c["s"], c["t"], c["index"]) for c in doc["classes"]]
    if classes != sorted(classes):
        raise ValueError("classes must be sorted by (s, t, index)")
    return ExtChart(doc["prime"], doc["max_s"], doc["max_t"], tuple(classes))


def _cells(chart: ExtChart) -> dict[tuple[int, int], int]:
    return {(t - s, s): n for (s, t), n in chart.dims().items()}


def _render_ascii(chart: ExtChart) -> str:
    cells = _cells(chart)
    width = chart.max_t + 1
    label_w = len(str(chart.max_s))
    lines = []
    for s in range(chart.max_s, -1, -1):
        row = []
        for x in range(width):
            n = cells.get((x, s), 0)
            row.append(" " if n == 0 else "o" if n == 1 else str(n) if n < 10 else "+")
        lines.append(f"{s:>{label_w}} |" + " ".join(row).rstrip())
    lines.append(" " * label_w + " +" + "-" * (2 * width - 1))
    ticks = "".join(f"{x:<2}" if x % 2 == 0 else "  " for x in range(width)).rstrip()
    lines.append(" " * (label_w + 2) + ticks)
    return "\n".join(lines) + "\n"


def _render_svg(chart: ExtChart) -> str:
    cells = _cells(chart)
    cols, rows = chart.max_t + 1, chart.max_s + 1
    w, h = (cols + 1) * CELL, (rows + 1) * CELL
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
        f'viewBox="0 0 {w} {h}">',
        f'<rect width="{w}" height="{h}" fill="white"/>',
    ]
    for x in range(cols + 1):
        px = (x + 1) * CELL
        out.append(f'<line x1="{px}" y1="0" x2="{px}" y2="{rows * CELL}" stroke="#ddd"/>')
    for y in range(rows + 1):
        py = y * CELL
        out.append(f'<line x1="{CELL}" y1="{py}" x2="{w}" y2="{py}" stroke="#ddd"/>')
    for (x, s), n in sorted(cells.items()):
        cx = (x + 1) * CELL + CELL // 2
        cy = (rows - 1 - s) * CELL + CELL // 2
        for k in range(n):
            off = (k - (n - 1) / 2) * 4
            out.append(
                f'<circle class="class" cx="{cx + off:g}" cy="{cy}" r="3" fill="black"/>'
            )
    for x in range(0, cols, 2):
        out.append(
            f'<text x="{(x + 1) * CELL + 4}" y="{h - 4}" font-size="9">{x}</text>'
        )
    for s in range(rows):
        out.append(f'<text x="2" y="{(rows - s) * CELL - 4}" font-size="9">{s}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def chart_render(chart: ExtChart, fmt: str) -> str:
    if fmt == "ascii":
        return _render_ascii(chart)
    if fmt == "svg":
        return _render_svg(chart)
    if fmt == "json":
        return json.dumps(chart_to_document(chart), indent=2, sort_keys=True) + "\n"
    raise ValueError(f"unknown chart format {fmt!r}; expected one of {', '.join(FORMATS)}")


__all__ = ["CELL", "FORMATS", "chart_from_document", "chart_render", "chart_to_document"]
