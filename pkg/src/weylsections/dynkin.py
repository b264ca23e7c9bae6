"""Plain-text Dynkin diagrams with per-node labels, Bourbaki numbering."""
from __future__ import annotations

from typing import Sequence


def layout(type_tag: str, rank: int) -> tuple[list[int], list[str], tuple[int, int] | None]:
    """``(chain, bonds, branch)``: nodes along the main line, the bond between
    consecutive chain nodes, and an optional ``(node, attached_to)`` hanging below.

    Arrows point from the long root to the short one.
    """
    n = rank
    if type_tag == "A":
        return list(range(1, n + 1)), ["-"] * (n - 1), None
    if type_tag == "B":
        return list(range(1, n + 1)), ["-"] * (n - 2) + ["=>"], None
    if type_tag == "C":
        return list(range(1, n + 1)), ["-"] * (n - 2) + ["<="], None
    if type_tag == "D":
        return list(range(1, n)), ["-"] * (n - 2), (n, n - 2)
    if type_tag == "E":
        chain = [1] + list(range(3, n + 1))
        return chain, ["-"] * (len(chain) - 1), (2, 4)
    if type_tag == "F":
        return [1, 2, 3, 4], ["-", "=>", "-"], None
    if type_tag == "G":
        return [1, 2], ["<≡"], None
    raise ValueError(f"unknown type {type_tag!r}")


def render(type_tag: str, rank: int, labels: Sequence | None = None) -> str:
    """Two lines (node numbers, labels) plus a hanging branch for D and E."""
    chain, bonds, branch = layout(type_tag, rank)
    labels = [str(i) for i in range(1, rank + 1)] if labels is None else [str(x) for x in labels]
    if len(labels) != rank:
        raise ValueError(f"expected {rank} labels, got {len(labels)}")
    width = max(max(len(lab) for lab in labels), len(str(rank)))
    gap = max(len(b) for b in bonds) + 2 if bonds else 3
    top, mid, col = [], [], {}
    pos = 0
    for k, node in enumerate(chain):
        col[node] = pos
        top.append(str(node).ljust(width))
        mid.append(labels[node - 1].ljust(width))
        pos += width
        if k < len(bonds):
            top.append(" " * gap)
            b = bonds[k] if bonds[k] != "-" else "-" * (gap - 2)
            mid.append(f" {b} ")
            pos += gap
    lines = ["".join(top).rstrip(), "".join(mid).rstrip()]
    if branch:
        node, at = branch
        pad = " " * col[at]
        lines.append(pad + "|")
        lines.append(pad + labels[node - 1] + f"  ({node})")
    return "\n".join(lines)
