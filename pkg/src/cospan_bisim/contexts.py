"""Bounded enumeration of cospans leaving a given interface."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator

from .cospan import Cospan
from .graph import Graph, GraphMorphism

__all__ = ["Alphabet", "enumerate_contexts", "extensions", "subgraphs"]


@dataclass(frozen=True)
class Alphabet:
    """Node and edge label sets."""

    nodes: frozenset = frozenset({""})
    edges: frozenset = frozenset({""})

    @classmethod
    def of(cls, nodes: Iterable[str] = ("",), edges: Iterable[str] = ("",)) -> "Alphabet":
        return cls(frozenset(nodes) or frozenset({""}), frozenset(edges))

    def union(self, other: "Alphabet") -> "Alphabet":
        return Alphabet(self.nodes | other.nodes, self.edges | other.edges)


def _fresh_ids(prefix: str, k: int, taken: set) -> list[str]:
    out, i = [], 0
    while len(out) < k:
        name = f"{prefix}{i}"
        if name not in taken:
            out.append(name)
            taken.add(name)
        i += 1
    return out


def extensions(root: Graph, alphabet: Alphabet, max_nodes: int, max_edges: int,
               max_total: int | None = None) -> Iterator[Graph]:
    """Graphs containing ``root`` (same ids) plus at most ``max_nodes`` new
    nodes and ``max_edges`` new edges, smallest first."""
    taken = set(root.nodes) | set(root.edges)
    new_nodes = _fresh_ids("v", max_nodes, set(taken))
    new_edges = _fresh_ids("d", max_edges, taken | set(new_nodes))
    nlabs = sorted(alphabet.nodes)
    elabs = sorted(alphabet.edges)
    sizes = sorted(((k, m) for k in range(max_nodes + 1) for m in range(max_edges + 1)
                    if max_total is None or k + m <= max_total), key=lambda p: (p[0] + p[1], p[1]))
    for k, m in sizes:
        ids = new_nodes[:k]
        for labs in itertools.combinations_with_replacement(nlabs, k):
            nodes = dict(root.nodes)
            nodes.update(zip(ids, labs))
            ends = sorted(nodes)
            if m and not elabs:
                continue
            options = [(s, t, lab) for s in ends for t in ends for lab in elabs]
            for combo in itertools.combinations_with_replacement(options, m):
                edges = dict(root.edges)
                edges.update(zip(new_edges[:m], combo))
                yield Graph(nodes, edges)


def subgraphs(G: Graph) -> Iterator[Graph]:
    """Every subgraph of ``G`` (same ids)."""
    nodes = sorted(G.nodes)
    for r in range(len(nodes) + 1):
        for ns in itertools.combinations(nodes, r):
            nset = set(ns)
            es = sorted(e for e, (s, t, _) in G.edges.items() if s in nset and t in nset)
            for q in range(len(es) + 1):
                for chosen in itertools.combinations(es, q):
                    yield G.subgraph(ns, chosen)


def enumerate_contexts(root: Graph, alphabet: Alphabet, max_nodes: int = 2, max_edges: int = 2,
                       outers: str | tuple = ("root", "full", "empty"),
                       max_total: int | None = None) -> Iterator[Cospan]:
    """Cospans ``root >-> M <- Y`` with ``M`` an extension of ``root``.

    ``outers`` selects the outer interfaces: ``"root"`` (``Y = root``),
    ``"full"`` (``Y = M``), ``"empty"`` and ``"all"`` (every subgraph of
    ``M``).  Right legs are inclusions."""
    if isinstance(outers, str):
        outers = (outers,)
    empty = Graph()
    for M in extensions(root, alphabet, max_nodes, max_edges, max_total):
        left = GraphMorphism.inclusion(root, M)
        seen = set()
        ys = []
        for o in outers:
            if o == "root":
                ys.append(root)
            elif o == "full":
                ys.append(M)
            elif o == "empty":
                ys.append(empty)
            elif o == "all":
                ys.extend(subgraphs(M))
            else:
                raise ValueError(f"unknown outer interface kind {o!r}")
        for Y in ys:
            if Y in seen:
                continue
            seen.add(Y)
            yield Cospan(left, GraphMorphism.inclusion(Y, M))
