"""Board rendering: deterministic ASCII and SVG, plus report figures.

The SVG document is assembled by hand so its element count is exactly
``width*height`` tile rects + one circle per token + the 10 fixed legend
elements (3 swatch rects, 3 swatch labels, 2 axis lines, 2 axis labels).
Report figures for the verify harness go through matplotlib with hash salt
and date metadata pinned, so repeated runs stay byte-identical.
"""

from __future__ import annotations

import os
from typing import TYPE_CHECKING

from geo2tiles.tiles import Board, TileColor, format_board

if TYPE_CHECKING:
    from geo2tiles.reduction import EquivalenceReport

CELL = 12
LEGEND_H = 40
_FILL = {
    TileColor.BLACK: "#1f1f1f",
    TileColor.BLUE: "#2e62c9",
    TileColor.RED: "#c93a2e",
}
LEGEND_ELEMENTS = 10


def render_ascii(board: Board) -> str:
    return format_board(board)


def render_svg(board: Board) -> str:
    w = board.width * CELL
    h = board.height * CELL
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" '
        f'height="{h + LEGEND_H}" viewBox="0 0 {w} {h + LEGEND_H}">'
    ]
    for y in range(board.height):
        for x in range(board.width):
            fill = _FILL[board.tile_at(x, y)]
            parts.append(
                f'<rect x="{x * CELL}" y="{y * CELL}" width="{CELL}" '
                f'height="{CELL}" fill="{fill}" stroke="#000" '
                'stroke-width="0.5"/>')
    r = CELL * 0.32
    for x, y in board.tokens:
        cx = x * CELL + CELL / 2
        cy = y * CELL + CELL / 2
        parts.append(f'<circle cx="{cx}" cy="{cy}" r="{r}" fill="#f5f5f5" '
                     'stroke="#000" stroke-width="1.2"/>')
    ly = h + 8
    labels = [("blue", _FILL[TileColor.BLUE]), ("red", _FILL[TileColor.RED]),
              ("black", _FILL[TileColor.BLACK])]
    for i, (name, fill) in enumerate(labels):
        lx = 4 + i * 64
        parts.append(f'<rect x="{lx}" y="{ly}" width="10" height="10" '
                     f'fill="{fill}"/>')
        parts.append(f'<text x="{lx + 14}" y="{ly + 9}" font-size="10" '
                     f'font-family="monospace">{name}</text>')
    ax = 4 + 3 * 64
    parts.append(f'<line x1="{ax}" y1="{ly + 10}" x2="{ax + 18}" '
                 f'y2="{ly + 10}" stroke="#000" stroke-width="1"/>')
    parts.append(f'<line x1="{ax}" y1="{ly + 10}" x2="{ax}" '
                 f'y2="{ly - 8}" stroke="#000" stroke-width="1"/>')
    parts.append(f'<text x="{ax + 21}" y="{ly + 13}" font-size="10" '
                 'font-family="monospace">x east</text>')
    parts.append(f'<text x="{ax + 3}" y="{ly - 1}" font-size="10" '
                 'font-family="monospace">y south</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write_verify_figures(report: "EquivalenceReport", outdir: str) -> list[str]:
    """Render harness figures next to the delimited report output."""
    import matplotlib

    matplotlib.use("Agg")
    matplotlib.rcParams["svg.hashsalt"] = "geo2tiles"
    import matplotlib.pyplot as plt

    from geo2tiles.layout import AREA_COEFF

    os.makedirs(outdir, exist_ok=True)
    written = []

    rows = sorted(report.rows, key=lambda r: r.instance_id)
    solved = [r for r in rows if not r.exhausted]

    fig, ax = plt.subplots(figsize=(5.2, 4.2))
    good = [r for r in solved if r.match]
    bad = [r for r in solved if not r.match]
    if good:
        ax.scatter([r.gg_nodes for r in good], [r.tt_nodes for r in good],
                   s=16, c="#2e62c9", label=f"match ({len(good)})")
    if bad:
        ax.scatter([r.gg_nodes for r in bad], [r.tt_nodes for r in bad],
                   s=24, c="#c93a2e", marker="x",
                   label=f"mismatch ({len(bad)})")
    ax.set_xlabel("graph-game solver nodes")
    ax.set_ylabel("tile-game solver nodes")
    ax.set_title("solver effort per instance")
    ax.legend(loc="best")
    fig.tight_layout()
    path = os.path.join(outdir, "verify_nodes.svg")
    fig.savefig(path, metadata={"Date": None})
    plt.close(fig)
    written.append(path)

    sized = [r for r in rows if r.vertices and r.area]
    fig, ax = plt.subplots(figsize=(5.2, 4.2))
    if sized:
        ax.scatter([r.vertices for r in sized], [r.area for r in sized],
                   s=16, c="#2e62c9", label="board area")
        lo = min(r.vertices for r in sized)
        hi = max(r.vertices for r in sized)
        ns = list(range(lo, hi + 1))
        ax.plot(ns, [AREA_COEFF * n * n for n in ns], c="#888", ls="--",
                label=f"budget {AREA_COEFF}*n^2")
    ax.set_xlabel("vertices (normalized)")
    ax.set_ylabel("board area (tiles)")
    ax.set_title("output size vs. instance size")
    ax.legend(loc="best")
    fig.tight_layout()
    path = os.path.join(outdir, "verify_area.svg")
    fig.savefig(path, metadata={"Date": None})
    plt.close(fig)
    written.append(path)
    return written
