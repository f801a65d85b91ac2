"""Pushouts, pullbacks, pushout complements and jointly epi squares of graphs."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .graph import Graph, GraphMorphism

__all__ = [
    "SpanResult",
    "JointlyEpiSquare",
    "pushout",
    "pullback",
    "pushout_complement",
    "pushout_complements",
    "jointly_epi_squares",
]


@dataclass(frozen=True)
class SpanResult:
    """A constructed object with two legs.

    For a pushout of ``B <- A -> C`` the legs are ``B -> object`` and
    ``C -> object``; for a pullback of ``B -> D <- C`` they are ``object -> B``
    and ``object -> C``; for a pushout complement of ``A -> B -> D`` they are
    ``A -> object`` and ``object -> D``.
    """

    object: Graph
    left_leg: GraphMorphism
    right_leg: GraphMorphism


@dataclass(frozen=True)
class JointlyEpiSquare:
    """A commuting square ``top; right = left; bottom`` with jointly surjective
    ``right: L -> P`` and ``bottom: G -> P``."""

    top: GraphMorphism
    left: GraphMorphism
    right: GraphMorphism
    bottom: GraphMorphism

    @property
    def object(self) -> Graph:
        return self.right.cod


def _fresh(name: str, taken: set) -> str:
    while name in taken:
        name += "'"
    taken.add(name)
    return name


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def pushout(f: GraphMorphism, g: GraphMorphism) -> SpanResult:
    """Pushout of ``B <-f- A -g-> C``.

    Ids of ``B`` are kept; ids of ``C``-only classes are kept when free.
    """
    if f.dom != g.dom:
        raise ValueError("pushout legs must share a domain")
    B, C = f.cod, g.cod
    nodes = [(0, n) for n in B.nodes] + [(1, n) for n in C.nodes]
    edges = [(0, e) for e in B.edges] + [(1, e) for e in C.edges]
    un, ue = _UnionFind(nodes), _UnionFind(edges)
    for a in f.dom.nodes:
        un.union((0, f.node_map[a]), (1, g.node_map[a]))
    for a in f.dom.edges:
        ue.union((0, f.edge_map[a]), (1, g.edge_map[a]))

    taken: set = set()
    nname, ename = {}, {}
    for uf, items, names in ((un, nodes, nname), (ue, edges, ename)):
        classes: dict = {}
        for x in items:
            classes.setdefault(uf.find(x), []).append(x)
        for members in sorted(classes.values(), key=lambda ms: min(ms)):
            rep = min(members)
            name = _fresh(rep[1], taken)
            for x in members:
                names[x] = name

    def lab(x):
        return (B if x[0] == 0 else C).label(x[1])

    pn = {nname[x]: lab(x) for x in nodes}
    pe = {}
    for x in edges:
        G = B if x[0] == 0 else C
        s, t, lb = G.edges[x[1]]
        pe[ename[x]] = (nname[(x[0], s)], nname[(x[0], t)], lb)
    P = Graph(pn, pe)
    inB = GraphMorphism(B, P, {n: nname[(0, n)] for n in B.nodes},
                        {e: ename[(0, e)] for e in B.edges}, check=False)
    inC = GraphMorphism(C, P, {n: nname[(1, n)] for n in C.nodes},
                        {e: ename[(1, e)] for e in C.edges}, check=False)
    return SpanResult(P, inB, inC)


def pullback(f: GraphMorphism, g: GraphMorphism) -> SpanResult:
    """Pullback of ``B -f-> D <-g- C``."""
    if f.cod != g.cod:
        raise ValueError("pullback legs must share a codomain")
    B, C = f.dom, g.dom
    taken: set = set()
    npair, epair = {}, {}
    for b in sorted(B.nodes):
        for c in sorted(C.nodes):
            if f.node_map[b] == g.node_map[c]:
                npair[(b, c)] = _fresh(b if b == c else f"{b}~{c}", taken)
    for b in sorted(B.edges):
        for c in sorted(C.edges):
            if f.edge_map[b] == g.edge_map[c]:
                epair[(b, c)] = _fresh(b if b == c else f"{b}~{c}", taken)
    kn = {name: B.nodes[b] for (b, _), name in npair.items()}
    ke = {}
    for (b, c), name in epair.items():
        s1, t1, lab = B.edges[b]
        s2, t2, _ = C.edges[c]
        ke[name] = (npair[(s1, s2)], npair[(t1, t2)], lab)
    K = Graph(kn, ke)
    toB = GraphMorphism(K, B, {v: k[0] for k, v in npair.items()},
                        {v: k[0] for k, v in epair.items()}, check=False)
    toC = GraphMorphism(K, C, {v: k[1] for k, v in npair.items()},
                        {v: k[1] for k, v in epair.items()}, check=False)
    return SpanResult(K, toB, toC)


def pushout_complements(m: GraphMorphism, n: GraphMorphism) -> list[SpanResult]:
    """All pushout complements of ``A -m-> B -n-> D`` with ``n`` mono.

    Each result is ``(C, A >-> C, C -> D)``.  ``m`` may be non-injective, in
    which case edges of ``D`` outside ``n(B)`` attached to a glued node may
    choose among its preimages, giving several non-isomorphic complements.
    """
    if m.cod != n.dom:
        raise ValueError("morphisms are not composable")
    if not n.is_injective():
        raise ValueError("pushout complement requires an injective second morphism")
    A, B, D = m.dom, m.cod, n.cod
    nb_nodes, nb_edges = n.node_image(), n.edge_image()
    pre: dict = {}
    for a in sorted(A.nodes):
        pre.setdefault(n.node_map[m.node_map[a]], []).append(a)

    taken = set(A.nodes) | set(A.edges)
    rest_nodes = {}
    for v in sorted(D.nodes):
        if v not in nb_nodes:
            rest_nodes[v] = _fresh(v, taken)
    rest_edges = {}
    choices = []
    for e in sorted(D.edges):
        if e in nb_edges:
            continue
        rest_edges[e] = _fresh(e, taken)
        s, t, _ = D.edges[e]
        for end in (s, t):
            if end not in nb_nodes:
                choices.append([rest_nodes[end]])
            elif end in pre:
                choices.append(pre[end])
            else:
                return []

    out = []
    for pick in itertools.product(*choices):
        cn = dict(A.nodes)
        for v, name in rest_nodes.items():
            cn[name] = D.nodes[v]
        ce = dict(A.edges)
        it = iter(pick)
        for e, name in rest_edges.items():
            ce[name] = (next(it), next(it), D.edges[e][2])
        Cg = Graph(cn, ce)
        inj = GraphMorphism(A, Cg, {a: a for a in A.nodes}, {a: a for a in A.edges}, check=False)
        to_d_n = {a: n.node_map[m.node_map[a]] for a in A.nodes}
        to_d_n.update({name: v for v, name in rest_nodes.items()})
        to_d_e = {a: n.edge_map[m.edge_map[a]] for a in A.edges}
        to_d_e.update({name: e for e, name in rest_edges.items()})
        out.append(SpanResult(Cg, inj, GraphMorphism(Cg, D, to_d_n, to_d_e, check=False)))
    return out


def pushout_complement(m: GraphMorphism, n: GraphMorphism) -> SpanResult | None:
    """The pushout complement of ``A >-m-> B >-n-> D``, or ``None`` when the
    gluing condition fails.  Both morphisms must be injective."""
    if not m.is_injective():
        raise ValueError("pushout complement requires an injective first morphism")
    res = pushout_complements(m, n)
    return res[0] if res else None


def _partial_injections(left: list, right: list, compatible):
    """Yield dicts pairing some of ``left`` with distinct ``right`` items."""
    def rec(i, used, acc):
        if i == len(left):
            yield dict(acc)
            return
        x = left[i]
        yield from rec(i + 1, used, acc)
        for y in right:
            if y not in used and compatible(x, y, acc):
                used.add(y)
                acc[x] = y
                yield from rec(i + 1, used, acc)
                del acc[x]
                used.discard(y)
    yield from rec(0, set(), {})


def jointly_epi_squares(top: GraphMorphism, left: GraphMorphism) -> list[JointlyEpiSquare]:
    """All jointly epi commuting squares over the span ``L <-top- D -left-> G``
    of monos, with both new legs mono, one per overlap of ``L`` and ``G``."""
    if top.dom != left.dom:
        raise ValueError("span legs must share a domain")
    if not (top.is_injective() and left.is_injective()):
        raise ValueError("jointly epi squares require injective span legs")
    D, L, G = top.dom, top.cod, left.cod
    # L elements in the image of D are identified with the matching G element
    shared_n = {top.node_map[d]: left.node_map[d] for d in D.nodes}
    shared_e = {top.edge_map[d]: left.edge_map[d] for d in D.edges}
    l_only_n = sorted(x for x in L.nodes if x not in shared_n)
    g_only_n = sorted(x for x in G.nodes if x not in set(shared_n.values()))
    l_only_e = sorted(x for x in L.edges if x not in shared_e)
    g_only_e = sorted(x for x in G.edges if x not in set(shared_e.values()))

    out = []
    for sn in _partial_injections(l_only_n, g_only_n,
                                  lambda x, y, _: L.nodes[x] == G.nodes[y]):
        def node_img(x, sn=sn):
            return shared_n[x] if x in shared_n else sn.get(x)

        def edge_ok(x, y, _acc, node_img=node_img):
            s, t, lab = L.edges[x]
            s2, t2, lab2 = G.edges[y]
            return lab == lab2 and node_img(s) == s2 and node_img(t) == t2

        for se in _partial_injections(l_only_e, g_only_e, edge_ok):
            taken = set(G.nodes) | set(G.edges)
            nmap = dict(shared_n)
            nmap.update(sn)
            pn = dict(G.nodes)
            for x in l_only_n:
                if x not in sn:
                    nmap[x] = _fresh(x, taken)
                    pn[nmap[x]] = L.nodes[x]
            emap = dict(shared_e)
            emap.update(se)
            pe = dict(G.edges)
            for x in l_only_e:
                if x not in se:
                    emap[x] = _fresh(x, taken)
                    s, t, lab = L.edges[x]
                    pe[emap[x]] = (nmap[s], nmap[t], lab)
            P = Graph(pn, pe)
            right = GraphMorphism(L, P, nmap, emap, check=False)
            bottom = GraphMorphism(G, P, {x: x for x in G.nodes}, {x: x for x in G.edges}, check=False)
            out.append(JointlyEpiSquare(top, left, right, bottom))
    return out
