"""Containment lattice of intermediate subrings, exported as a DOT digraph.

One node per subring between the embedded image and the whole big ring,
labeled with its order and the elements whose adjunction produced it; edges
are covering relations only (no transitive arrows). Minimal extensions give
exactly two nodes. Guarded by the exhaustive-enumeration order cap.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .extensions import Extension, SubringMask, intermediate_subrings

__all__ = ["covering_edges", "export_lattice", "lattice_nodes", "node_label"]


def lattice_nodes(ext: Extension) -> list[SubringMask]:
    """All intermediate subrings, sorted by (order, member tuple)."""
    return intermediate_subrings(ext)


def covering_edges(nodes: list[SubringMask]) -> list[tuple[int, int]]:
    """Pairs (i, j) where node i is covered by node j: strict containment
    with nothing in between."""
    masks = [node.mask for node in nodes]
    below = [
        [
            i
            for i, small in enumerate(masks)
            if i != j and (small <= masks[j]).all() and small.sum() < masks[j].sum()
        ]
        for j in range(len(masks))
    ]
    edges: list[tuple[int, int]] = []
    for j, belows in enumerate(below):
        for i in belows:
            if not any(i in below[k] for k in belows):
                edges.append((i, j))
    return edges


def node_label(node: SubringMask, index: int, total: int) -> str:
    if index == 0:
        origin = "base image"
    elif index == total - 1 and node.is_whole:
        origin = "whole ring"
    elif node.gens:
        origin = "adjoin " + ",".join(map(str, node.gens))
    else:
        origin = "members " + ",".join(map(str, node.members()))
    return f"order {node.size} ({origin})"


def export_lattice(ext: Extension, out: str | Path | None = None) -> str:
    """DOT text of the intermediate-subring Hasse diagram; optionally written
    to a file. Raises CapExceeded above the enumeration limit."""
    nodes = lattice_nodes(ext)
    edges = covering_edges(nodes)
    lines = [
        "digraph subrings {",
        "  rankdir=BT;",
        '  node [shape=box, fontname="monospace"];',
    ]
    for i, node in enumerate(nodes):
        label = node_label(node, i, len(nodes)).replace('"', "'")
        lines.append(f'  n{i} [label="{label}"];')
    for i, j in edges:
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    text = "\n".join(lines) + "\n"
    if out is not None:
        Path(out).write_text(text)
    return text
