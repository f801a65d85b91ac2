"""Human-readable rendering of graphs, cospans, conditions and reports."""
from __future__ import annotations

from .conditions import Condition
from .cospan import Cospan
from .graph import Graph, GraphMorphism


def format_graph(G: Graph) -> str:
    ns = ", ".join(f"{n}:{lab}" if lab else n for n, lab in sorted(G.nodes.items()))
    es = ", ".join(f"{e}: {s} -{lab}-> {t}" if lab else f"{e}: {s} -> {t}"
                   for e, (s, t, lab) in sorted(G.edges.items()))
    return "{" + ns + (" | " + es if es else "") + "}"


def _is_inclusion(f: GraphMorphism) -> bool:
    return all(k == v for k, v in f.node_map.items()) and all(k == v for k, v in f.edge_map.items())


def _maps(f: GraphMorphism) -> str:
    items = sorted(f.node_map.items()) + sorted(f.edge_map.items())
    return ", ".join(f"{k}->{v}" for k, v in items)


def format_cospan(c: Cospan) -> str:
    s = f"[{format_graph(c.inner)}] -> {format_graph(c.middle)} <- [{format_graph(c.outer)}]"
    legs = []
    if not _is_inclusion(c.left_leg):
        legs.append("left: " + _maps(c.left_leg))
    if not _is_inclusion(c.right_leg):
        legs.append("right: " + _maps(c.right_leg))
    return s + (" with " + "; ".join(legs) if legs else "")


def format_condition(A: Condition, indent: int = 0) -> str:
    pad = "  " * indent
    if A.is_true:
        return pad + "true"
    if A.is_false:
        return pad + "false"
    lines = [pad + A.quantifier + " over " + format_graph(A.root)]
    for h, X in A.children:
        lines.append(pad + "  via " + format_cospan(h))
        lines.append(format_condition(X, indent + 2))
    return "\n".join(lines)
