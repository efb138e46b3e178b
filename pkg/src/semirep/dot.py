"""Graphviz DOT text for Hasse diagrams and Bratteli diagrams."""

from __future__ import annotations

from .bergman import BratteliTower
from .order import FinitePoset
from .semilattice import FiniteSemilattice

# more parallel copies than this collapse into one labeled edge
MAX_PARALLEL = 3


def _quote(s: str) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def hasse_dot(labels, covers, name: str = "hasse") -> str:
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    lines += [f"  n{i} [label={_quote(l)}];" for i, l in enumerate(labels)]
    lines += [f"  n{x} -> n{y};" for x, y in covers]
    lines.append("}")
    return "\n".join(lines) + "\n"


def bratteli_dot(tower: BratteliTower, name: str = "bratteli") -> str:
    if not tower.levels:
        return f"digraph {name} {{\n}}\n"
    lines = [f"digraph {name} {{", "  rankdir=TB;", f"  label={_quote(tower.mode)};"]
    for i, shape in enumerate(tower.levels):
        nodes = " ".join(f"L{i}_{j} [label={_quote(t)}];" for j, t in enumerate(shape.block_sizes))
        lines.append(f"  {{ rank=same; {nodes} }}")
    for i, s in enumerate(tower.maps):
        for a, row in enumerate(s.entries):
            for b, m in enumerate(row):
                edge = f"  L{i}_{a} -> L{i + 1}_{b}"
                if m > MAX_PARALLEL:
                    lines.append(f"{edge} [label={_quote(m)}];")
                else:
                    lines += [f"{edge};"] * m
    lines.append("}")
    return "\n".join(lines) + "\n"


def emit_dot(obj) -> str:
    """DOT text for a poset, semilattice (Hasse diagram) or tower (Bratteli diagram)."""
    if isinstance(obj, FinitePoset):
        return hasse_dot(obj.labels, obj.covers())
    if isinstance(obj, FiniteSemilattice):
        covers = [(x, y) for x in obj for y in obj.upper_covers[x]]
        return hasse_dot(obj.labels, covers)
    if isinstance(obj, BratteliTower):
        return bratteli_dot(obj)
    raise TypeError(f"cannot draw a {type(obj).__name__}")
