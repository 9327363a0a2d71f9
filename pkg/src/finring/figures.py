"""Matplotlib renderings written next to report files.

Two figures: a verdict grid (catalog expressions x verifiers, colored by
PASS/FAIL/SKIPPED) for suite reports, and a layered Hasse drawing for
subring lattices. Uses the Agg backend; nothing ever opens a window.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
from matplotlib.colors import ListedColormap
from matplotlib.patches import Patch

from .extensions import Extension
from .lattice import covering_edges, lattice_nodes, node_label

__all__ = ["render_lattice_figure", "render_verdict_grid"]

_VERDICT_LEVEL = {"PASS": 0, "FAIL": 1, "SKIPPED": 2}
_VERDICT_COLORS = ["#2e8b57", "#c0392b", "#b8b8b8"]


def render_verdict_grid(report: dict, out: str | Path) -> Path:
    """One cell per (catalog expression, verifier), colored by verdict."""
    exprs: list[str] = []
    theorems: list[str] = []
    for entry in report["entries"]:
        if entry["expr"] not in exprs:
            exprs.append(entry["expr"])
        if entry["theorem"] not in theorems:
            theorems.append(entry["theorem"])
    grid = np.full((len(exprs), len(theorems)), _VERDICT_LEVEL["SKIPPED"], dtype=np.int8)
    for entry in report["entries"]:
        grid[exprs.index(entry["expr"]), theorems.index(entry["theorem"])] = _VERDICT_LEVEL[
            entry["verdict"]
        ]
    height = max(2.5, 0.22 * len(exprs) + 1.2)
    fig, ax = plt.subplots(figsize=(max(6.0, 1.1 * len(theorems)), height))
    ax.imshow(grid, cmap=ListedColormap(_VERDICT_COLORS), vmin=0, vmax=2, aspect="auto")
    ax.set_xticks(range(len(theorems)))
    ax.set_xticklabels(theorems, rotation=35, ha="right", fontsize=7)
    ax.set_yticks(range(len(exprs)))
    ax.set_yticklabels(exprs, fontsize=6, family="monospace")
    ax.set_title(f"verification verdicts (engine {report['engine_version']})", fontsize=9)
    ax.legend(
        handles=[
            Patch(color=_VERDICT_COLORS[0], label="PASS"),
            Patch(color=_VERDICT_COLORS[1], label="FAIL"),
            Patch(color=_VERDICT_COLORS[2], label="SKIPPED"),
        ],
        loc="upper left",
        bbox_to_anchor=(1.01, 1.0),
        fontsize=7,
        frameon=False,
    )
    fig.tight_layout()
    out = Path(out)
    fig.savefig(out, dpi=150)
    plt.close(fig)
    return out


def render_lattice_figure(ext: Extension, out: str | Path) -> Path:
    """Layered Hasse drawing: one layer per subring order, covering edges."""
    nodes = lattice_nodes(ext)
    edges = covering_edges(nodes)
    sizes = sorted({node.size for node in nodes})
    layer_of = {size: k for k, size in enumerate(sizes)}
    by_layer: dict[int, list[int]] = {}
    for i, node in enumerate(nodes):
        by_layer.setdefault(layer_of[node.size], []).append(i)
    pos: dict[int, tuple[float, float]] = {}
    for layer, members in by_layer.items():
        for slot, i in enumerate(members):
            pos[i] = (slot - (len(members) - 1) / 2.0, layer)
    width = max(4.0, 2.2 * max(len(m) for m in by_layer.values()))
    fig, ax = plt.subplots(figsize=(width, max(3.0, 1.4 * len(sizes))))
    for i, j in edges:
        (x1, y1), (x2, y2) = pos[i], pos[j]
        ax.plot([x1, x2], [y1, y2], color="#555555", lw=1.0, zorder=1)
    for i, node in enumerate(nodes):
        x, y = pos[i]
        ax.scatter([x], [y], s=420, color="#dfe8f5", edgecolor="#30507a", zorder=2)
        ax.annotate(
            node_label(node, i, len(nodes)),
            (x, y),
            textcoords="offset points",
            xytext=(0, 14),
            ha="center",
            fontsize=7,
            family="monospace",
        )
    ax.set_title(f"subrings between {ext.small.tag} and {ext.big.tag}", fontsize=9)
    ax.set_axis_off()
    ax.margins(0.2)
    fig.tight_layout()
    out = Path(out)
    fig.savefig(out, dpi=150)
    plt.close(fig)
    return out
