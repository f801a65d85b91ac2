"""Finite labelled directed multigraphs and graph morphisms.

Nodes and edges carry string ids and string labels; the empty label means
unlabelled.  Graphs are immutable values compared structurally, so two graphs
are equal only when they use the same ids with the same labels and incidences.
"""
from __future__ import annotations

import itertools
from collections import Counter, defaultdict
from typing import Iterable, Iterator, Mapping

__all__ = [
    "Graph",
    "GraphMorphism",
    "compose_morphisms",
    "enumerate_morphisms",
    "iter_morphisms",
    "is_isomorphic",
    "graph_invariant",
]

Edge = tuple  # (src, tgt, label)


class Graph:
    """An immutable labelled multigraph.

    ``nodes`` maps node id to label (an iterable of ids means unlabelled);
    ``edges`` maps edge id to ``(src, tgt, label)``.
    """

    __slots__ = ("_nodes", "_edges", "_hash")

    def __init__(self, nodes: Mapping[str, str] | Iterable[str] = (),
                 edges: Mapping[str, tuple] | None = None):
        if isinstance(nodes, Mapping):
            nd = {str(k): str(v) for k, v in nodes.items()}
        else:
            nd = {str(k): "" for k in nodes}
        ed = {}
        for e, desc in (edges or {}).items():
            if len(desc) == 2:
                s, t, lab = desc[0], desc[1], ""
            else:
                s, t, lab = desc
            if s not in nd or t not in nd:
                raise ValueError(f"edge {e!r} has an endpoint outside the node set")
            if e in nd:
                raise ValueError(f"id {e!r} used for both a node and an edge")
            ed[str(e)] = (s, t, str(lab))
        self._nodes = nd
        self._edges = ed
        self._hash = None

    @property
    def nodes(self) -> Mapping[str, str]:
        return self._nodes

    @property
    def edges(self) -> Mapping[str, tuple]:
        return self._edges

    def src(self, e: str) -> str:
        return self._edges[e][0]

    def tgt(self, e: str) -> str:
        return self._edges[e][1]

    def label(self, x: str) -> str:
        if x in self._nodes:
            return self._nodes[x]
        return self._edges[x][2]

    def size(self) -> int:
        return len(self._nodes) + len(self._edges)

    def is_empty(self) -> bool:
        return not self._nodes

    def labels(self) -> tuple[frozenset, frozenset]:
        return (frozenset(self._nodes.values()),
                frozenset(lab for _, _, lab in self._edges.values()))

    def subgraph(self, nodes: Iterable[str], edges: Iterable[str] = ()) -> "Graph":
        nodes = set(nodes)
        return Graph({n: self._nodes[n] for n in sorted(nodes)},
                     {e: self._edges[e] for e in sorted(edges)})

    def key(self) -> tuple:
        return (tuple(sorted(self._nodes.items())), tuple(sorted(self._edges.items())))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Graph):
            return NotImplemented
        return self._nodes == other._nodes and self._edges == other._edges

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def __repr__(self):
        ns = ", ".join(f"{n}:{lab}" if lab else n for n, lab in sorted(self._nodes.items()))
        es = ", ".join(f"{e}:{s}-{lab}->{t}" for e, (s, t, lab) in sorted(self._edges.items()))
        return f"Graph({ns} | {es})" if es else f"Graph({ns})"


class GraphMorphism:
    """A structure and label preserving map between two graphs."""

    __slots__ = ("dom", "cod", "node_map", "edge_map", "_hash")

    def __init__(self, dom: Graph, cod: Graph, node_map: Mapping[str, str],
                 edge_map: Mapping[str, str] | None = None, check: bool = True):
        self.dom = dom
        self.cod = cod
        self.node_map = dict(node_map)
        self.edge_map = dict(edge_map or {})
        self._hash = None
        if check:
            self._validate()

    def _validate(self):
        D, C = self.dom, self.cod
        if set(self.node_map) != set(D.nodes) or set(self.edge_map) != set(D.edges):
            raise ValueError("morphism is not total on its domain")
        for n, m in self.node_map.items():
            if m not in C.nodes:
                raise ValueError(f"node {n!r} mapped outside the codomain")
            if D.nodes[n] != C.nodes[m]:
                raise ValueError(f"node {n!r} label not preserved")
        for e, d in self.edge_map.items():
            if d not in C.edges:
                raise ValueError(f"edge {e!r} mapped outside the codomain")
            s, t, lab = D.edges[e]
            s2, t2, lab2 = C.edges[d]
            if lab != lab2:
                raise ValueError(f"edge {e!r} label not preserved")
            if self.node_map[s] != s2 or self.node_map[t] != t2:
                raise ValueError(f"edge {e!r} incidence not preserved")

    @classmethod
    def identity(cls, G: Graph) -> "GraphMorphism":
        return cls(G, G, {n: n for n in G.nodes}, {e: e for e in G.edges}, check=False)

    @classmethod
    def inclusion(cls, G: Graph, H: Graph) -> "GraphMorphism":
        """The id-preserving inclusion of ``G`` into ``H``."""
        return cls(G, H, {n: n for n in G.nodes}, {e: e for e in G.edges})

    def __call__(self, x: str) -> str:
        if x in self.node_map:
            return self.node_map[x]
        return self.edge_map[x]

    def then(self, g: "GraphMorphism") -> "GraphMorphism":
        return compose_morphisms(self, g)

    def is_injective(self) -> bool:
        return (len(set(self.node_map.values())) == len(self.node_map)
                and len(set(self.edge_map.values())) == len(self.edge_map))

    def is_surjective(self) -> bool:
        return (set(self.node_map.values()) == set(self.cod.nodes)
                and set(self.edge_map.values()) == set(self.cod.edges))

    def is_iso(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def inverse(self) -> "GraphMorphism":
        if not self.is_iso():
            raise ValueError("morphism is not an isomorphism")
        return GraphMorphism(self.cod, self.dom,
                             {v: k for k, v in self.node_map.items()},
                             {v: k for k, v in self.edge_map.items()}, check=False)

    def node_image(self) -> set:
        return set(self.node_map.values())

    def edge_image(self) -> set:
        return set(self.edge_map.values())

    def key(self) -> tuple:
        return (tuple(sorted(self.node_map.items())), tuple(sorted(self.edge_map.items())))

    def __eq__(self, other):
        if not isinstance(other, GraphMorphism):
            return NotImplemented
        return (self.dom == other.dom and self.cod == other.cod
                and self.node_map == other.node_map and self.edge_map == other.edge_map)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.dom, self.cod, self.key()))
        return self._hash

    def __repr__(self):
        parts = [f"{k}->{v}" for k, v in sorted(self.node_map.items())]
        parts += [f"{k}->{v}" for k, v in sorted(self.edge_map.items())]
        return "GraphMorphism(" + ", ".join(parts) + ")"


def compose_morphisms(f: GraphMorphism, g: GraphMorphism) -> GraphMorphism:
    """Diagrammatic composition: first ``f``, then ``g``."""
    if f.cod != g.dom:
        raise ValueError("morphisms are not composable")
    return GraphMorphism(f.dom, g.cod,
                         {n: g.node_map[m] for n, m in f.node_map.items()},
                         {e: g.edge_map[d] for e, d in f.edge_map.items()}, check=False)


def _pair_counts(G: Graph) -> dict:
    pc = defaultdict(Counter)
    for s, t, lab in G.edges.values():
        pc[(s, t)][lab] += 1
    return pc


def _node_signature(G: Graph) -> dict:
    sig = {n: [lab, Counter(), Counter(), Counter()] for n, lab in G.nodes.items()}
    for s, t, lab in G.edges.values():
        if s == t:
            sig[s][3][lab] += 1
        else:
            sig[s][1][lab] += 1
            sig[t][2][lab] += 1
    return {n: (v[0], tuple(sorted(v[1].items())), tuple(sorted(v[2].items())),
                tuple(sorted(v[3].items()))) for n, v in sig.items()}


def graph_invariant(G: Graph) -> tuple:
    """An isomorphism invariant, usable as a bucketing key."""
    sig = _node_signature(G)
    return (tuple(sorted(sig.values())),
            tuple(sorted((lab, s == t) for s, t, lab in G.edges.values())))


def _search_order(G: Graph, fixed: set) -> list:
    adj = defaultdict(set)
    for s, t, _ in G.edges.values():
        adj[s].add(t)
        adj[t].add(s)
    order, seen = [], set(fixed)
    rest = sorted(n for n in G.nodes if n not in fixed)
    frontier = sorted({m for n in fixed for m in adj[n]} - seen)
    while rest:
        nxt = frontier[0] if frontier else min(rest, key=lambda n: (-len(adj[n]), n))
        order.append(nxt)
        seen.add(nxt)
        rest.remove(nxt)
        frontier = sorted(({m for n in order for m in adj[n]} | {m for n in fixed for m in adj[n]}) - seen)
    return order


def iter_morphisms(G: Graph, H: Graph, node_anchor: Mapping[str, str] | None = None,
                   edge_anchor: Mapping[str, str] | None = None, mono: bool = False,
                   iso: bool = False) -> Iterator[GraphMorphism]:
    """Lazily enumerate morphisms ``G -> H`` extending the given partial maps."""
    if iso:
        mono = True
        if len(G.nodes) != len(H.nodes) or len(G.edges) != len(H.edges):
            return
    elif mono and (len(G.nodes) > len(H.nodes) or len(G.edges) > len(H.edges)):
        return
    nmap = dict(node_anchor or {})
    eanchor = dict(edge_anchor or {})
    for e, d in eanchor.items():
        if e not in G.edges or d not in H.edges:
            return
        s, t, lab = G.edges[e]
        s2, t2, lab2 = H.edges[d]
        if lab != lab2:
            return
        for x, y in ((s, s2), (t, t2)):
            if nmap.setdefault(x, y) != y:
                return
    for n, m in nmap.items():
        if n not in G.nodes or m not in H.nodes or G.nodes[n] != H.nodes[m]:
            return
    if mono and (len(set(nmap.values())) != len(nmap)
                 or len(set(eanchor.values())) != len(eanchor)):
        return

    gpc, hpc = _pair_counts(G), _pair_counts(H)
    gadj = defaultdict(set)
    for s, t in gpc:
        gadj[s].add(t)
        gadj[t].add(s)

    if iso:
        gsig, hsig = _node_signature(G), _node_signature(H)
        if sorted(gsig.values()) != sorted(hsig.values()):
            return
        cands = {n: sorted(m for m in H.nodes if hsig[m] == gsig[n]) for n in G.nodes}
    else:
        by_label = defaultdict(list)
        for m in sorted(H.nodes):
            by_label[H.nodes[m]].append(m)
        cands = {n: by_label[G.nodes[n]] for n in G.nodes}

    def ok_pair(x, y, hx, hy):
        need = gpc.get((x, y))
        if not need:
            return True
        have = hpc.get((hx, hy))
        if not have:
            return False
        for lab, k in need.items():
            h = have.get(lab, 0)
            if h == 0 or (mono and h < k) or (iso and h != k):
                return False
        return True

    def consistent(n, m):
        if not ok_pair(n, n, m, m):
            return False
        for v in gadj[n]:
            if v in nmap and v != n:
                hv = nmap[v]
                if not ok_pair(n, v, m, hv) or not ok_pair(v, n, hv, m):
                    return False
        return True

    for n in list(nmap):
        if not consistent(n, nmap[n]):
            return
    order = _search_order(G, set(nmap))
    used = set(nmap.values())

    def edge_maps():
        groups = defaultdict(list)
        for e in sorted(G.edges):
            if e in eanchor:
                continue
            s, t, lab = G.edges[e]
            groups[(nmap[s], nmap[t], lab)].append(e)
        taken = set(eanchor.values())
        hby = defaultdict(list)
        for d in sorted(H.edges):
            s, t, lab = H.edges[d]
            if mono and d in taken:
                continue
            hby[(s, t, lab)].append(d)
        keys = sorted(groups)
        options = []
        for k in keys:
            es, ds = groups[k], hby.get(k, [])
            if mono:
                if len(ds) < len(es):
                    return
                options.append(list(itertools.permutations(ds, len(es))))
            else:
                if not ds:
                    return
                options.append(list(itertools.product(ds, repeat=len(es))))
        for choice in itertools.product(*options):
            em = dict(eanchor)
            for k, img in zip(keys, choice):
                em.update(zip(groups[k], img))
            yield em

    def rec(i):
        if i == len(order):
            for em in edge_maps():
                yield GraphMorphism(G, H, dict(nmap), em, check=False)
            return
        n = order[i]
        for m in cands[n]:
            if mono and m in used:
                continue
            if not consistent(n, m):
                continue
            nmap[n] = m
            if mono:
                used.add(m)
            yield from rec(i + 1)
            del nmap[n]
            if mono:
                used.discard(m)

    yield from rec(0)


def enumerate_morphisms(G: Graph, H: Graph, anchor=None, mono_only: bool = False) -> list:
    """All morphisms ``G -> H`` extending ``anchor``, sorted by their encoding.

    ``anchor`` is ``None`` or a pair ``(node_map, edge_map)`` of partial maps.
    """
    na, ea = anchor if anchor is not None else (None, None)
    out = list(iter_morphisms(G, H, na, ea, mono=mono_only))
    out.sort(key=GraphMorphism.key)
    return out


def is_isomorphic(G: Graph, H: Graph) -> GraphMorphism | None:
    """An isomorphism ``G -> H`` if one exists, else ``None``."""
    if len(G.nodes) != len(H.nodes) or len(G.edges) != len(H.edges):
        return None
    return next(iter_morphisms(G, H, iso=True), None)
