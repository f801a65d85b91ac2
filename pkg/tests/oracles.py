"""Brute-force reference implementations used by the test-suite.

Nothing here calls the search code under test: morphisms are enumerated by
plain products over all maps, quotients by set partitions, and rewriting
by deleting and gluing dictionaries directly.
"""
from __future__ import annotations

import itertools

from cospan_bisim.contexts import Alphabet, enumerate_contexts
from cospan_bisim.cospan import Cospan, compose_cospans, cospan_iso
from cospan_bisim.conditions import satisfies
from cospan_bisim.graph import Graph, GraphMorphism


def brute_morphisms(G: Graph, H: Graph, mono: bool = False) -> list[tuple[dict, dict]]:
    """Every structure- and label-preserving ``(node_map, edge_map)``."""
    gn, ge = sorted(G.nodes), sorted(G.edges)
    hn, he = sorted(H.nodes), sorted(H.edges)
    out = []
    for nimg in itertools.product(hn, repeat=len(gn)):
        nm = dict(zip(gn, nimg))
        if any(G.nodes[x] != H.nodes[nm[x]] for x in gn):
            continue
        if mono and len(set(nimg)) < len(nimg):
            continue
        for eimg in itertools.product(he, repeat=len(ge)):
            em = dict(zip(ge, eimg))
            if mono and len(set(eimg)) < len(eimg):
                continue
            if all(H.edges[em[e]] == (nm[G.edges[e][0]], nm[G.edges[e][1]], G.edges[e][2])
                   for e in ge):
                out.append((nm, em))
    return out


def brute_isomorphic(G: Graph, H: Graph) -> bool:
    if len(G.nodes) != len(H.nodes) or len(G.edges) != len(H.edges):
        return False
    return bool(brute_morphisms(G, H, mono=True))


def as_morphism(G: Graph, H: Graph, maps) -> GraphMorphism:
    return GraphMorphism(G, H, maps[0], maps[1])


def _commutes(f: GraphMorphism, g: GraphMorphism, f2: GraphMorphism, g2: GraphMorphism) -> bool:
    """``f ; g == f2 ; g2`` as raw maps."""
    return (all(g.node_map[f.node_map[x]] == g2.node_map[f2.node_map[x]] for x in f.dom.nodes)
            and all(g.edge_map[f.edge_map[x]] == g2.edge_map[f2.edge_map[x]] for x in f.dom.edges))


def _agree(f, g, h) -> bool:
    """``f ; g == h`` as raw maps."""
    return (all(g.node_map[f.node_map[x]] == h.node_map[x] for x in f.dom.nodes)
            and all(g.edge_map[f.edge_map[x]] == h.edge_map[x] for x in f.dom.edges))


def pushout_mediators(f, g, pb_leg, pc_leg, E: Graph) -> list[int]:
    """For each cocone ``B -> E <- C`` over ``B <-f- A -g-> C``, the number of
    mediating morphisms out of the candidate pushout object."""
    D = pb_leg.cod
    counts = []
    for qb in brute_morphisms(f.cod, E):
        qB = as_morphism(f.cod, E, qb)
        for qc in brute_morphisms(g.cod, E):
            qC = as_morphism(g.cod, E, qc)
            if not _commutes(f, qB, g, qC):
                continue
            n = 0
            for u in brute_morphisms(D, E):
                U = as_morphism(D, E, u)
                if _agree(pb_leg, U, qB) and _agree(pc_leg, U, qC):
                    n += 1
            counts.append(n)
    return counts


def pullback_mediators(f, g, pb_leg, pc_leg, E: Graph) -> list[int]:
    """For each cone ``B <- E -> C`` over ``B -f-> D <-g- C``, the number of
    mediating morphisms into the candidate pullback object."""
    P = pb_leg.dom
    counts = []
    for qb in brute_morphisms(E, f.dom):
        qB = as_morphism(E, f.dom, qb)
        for qc in brute_morphisms(E, g.dom):
            qC = as_morphism(E, g.dom, qc)
            if not _commutes(qB, f, qC, g):
                continue
            n = 0
            for u in brute_morphisms(E, P):
                U = as_morphism(E, P, u)
                if _agree(U, pb_leg, qB) and _agree(U, pc_leg, qC):
                    n += 1
            counts.append(n)
    return counts


def set_partitions(items: list):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for p in set_partitions(rest):
        yield [[first]] + p
        for i in range(len(p)):
            yield p[:i] + [[first] + p[i]] + p[i + 1:]


def jointly_epi_quotients(top: GraphMorphism, left: GraphMorphism) -> set[frozenset]:
    """All jointly surjective squares over ``L <-top- D -left-> G`` with
    injective legs, each given as the kernel partition of ``L + G``.

    Distinct partitions are exactly the non-isomorphic squares."""
    L, G = top.cod, left.cod
    nodes = [("L", x) for x in sorted(L.nodes)] + [("G", x) for x in sorted(G.nodes)]
    edges = [("L", x) for x in sorted(L.edges)] + [("G", x) for x in sorted(G.edges)]

    def lab(side, x, kind):
        g = L if side == "L" else G
        return g.nodes[x] if kind == "n" else g.edges[x][2]

    def ends(side, x):
        g = L if side == "L" else G
        s, t, _ = g.edges[x]
        return (side, s), (side, t)

    forced_n = [(("L", top.node_map[d]), ("G", left.node_map[d])) for d in top.dom.nodes]
    forced_e = [(("L", top.edge_map[d]), ("G", left.edge_map[d])) for d in top.dom.edges]
    out = set()
    for pn in set_partitions(nodes):
        cls = {x: i for i, block in enumerate(pn) for x in block}
        if any(cls[a] != cls[b] for a, b in forced_n):
            continue
        if any(len({s for s, _ in block}) < len(block) for block in pn):
            continue  # both legs injective
        if any(len({lab(s, x, "n") for s, x in block}) > 1 for block in pn):
            continue
        for pe in set_partitions(edges):
            ecls = {x: i for i, block in enumerate(pe) for x in block}
            if any(ecls[a] != ecls[b] for a, b in forced_e):
                continue
            ok = True
            for block in pe:
                if len({s for s, _ in block}) < len(block):
                    ok = False
                    break
                if len({lab(s, x, "e") for s, x in block}) > 1:
                    ok = False
                    break
                if len({(cls[ends(*x)[0]], cls[ends(*x)[1]]) for x in block}) > 1:
                    ok = False
                    break
            if ok:
                out.add(frozenset(frozenset(b) for b in pn) | frozenset(frozenset(b) for b in pe))
    return out


def square_partition(sq) -> frozenset:
    """Kernel of ``[right, bottom]: L + G -> G+`` as a partition."""
    blocks: dict = {}
    for x in sq.right.dom.nodes:
        blocks.setdefault(("n", sq.right.node_map[x]), set()).add(("L", x))
    for x in sq.bottom.dom.nodes:
        blocks.setdefault(("n", sq.bottom.node_map[x]), set()).add(("G", x))
    for x in sq.right.dom.edges:
        blocks.setdefault(("e", sq.right.edge_map[x]), set()).add(("L", x))
    for x in sq.bottom.dom.edges:
        blocks.setdefault(("e", sq.bottom.edge_map[x]), set()).add(("G", x))
    return frozenset(frozenset(b) for b in blocks.values())


def subgraphs_containing(G: Graph, nodes: set, edges: set):
    free_n = sorted(set(G.nodes) - nodes)
    for r in range(len(free_n) + 1):
        for ns in itertools.combinations(free_n, r):
            nset = nodes | set(ns)
            free_e = sorted(e for e, (s, t, _) in G.edges.items()
                            if e not in edges and s in nset and t in nset)
            for q in range(len(free_e) + 1):
                for es in itertools.combinations(free_e, q):
                    yield G.subgraph(nset, edges | set(es))


def brute_factorizations(a: Cospan, h: Cospan) -> list[Cospan]:
    """Every ``g`` with ``h ; g`` isomorphic to ``a``, up to isomorphism,
    searched among cospans whose middle is a subgraph of ``a``'s middle.

    Complete when ``h``'s right leg is injective."""
    M = a.middle
    out: list[Cospan] = []
    img_n = {a.right_leg.node_map[x] for x in a.outer.nodes}
    img_e = {a.right_leg.edge_map[x] for x in a.outer.edges}
    img_n |= {M.edges[e][0] for e in img_e} | {M.edges[e][1] for e in img_e}
    for S in subgraphs_containing(M, img_n, img_e):
        right = GraphMorphism(a.outer, S, a.right_leg.node_map, a.right_leg.edge_map)
        for k in brute_morphisms(h.outer, S, mono=True):
            g = Cospan(as_morphism(h.outer, S, k), right)
            if cospan_iso(compose_cospans(h, g), a) is None:
                continue
            if not any(cospan_iso(g, o) is not None for o in out):
                out.append(g)
    return out


def dpo_rewrites(a: Cospan, lhs: Cospan, rhs: Cospan) -> list[Cospan]:
    """Direct double-pushout rewriting of the agent ``0 -> G <- J`` with the
    rule ``L <- I -> R`` read off two ground cospans.

    Matches are injective, satisfy the dangling condition and keep the
    interface ``J`` out of the deleted part."""
    G, L, R, I = a.middle, lhs.middle, rhs.middle, lhs.outer
    il, ir = lhs.right_leg, rhs.right_leg
    kept_l_nodes = {il.node_map[x] for x in I.nodes}
    kept_l_edges = {il.edge_map[x] for x in I.edges}
    j_nodes = {a.right_leg.node_map[x] for x in a.outer.nodes}
    j_edges = {a.right_leg.edge_map[x] for x in a.outer.edges}
    out = []
    for nm, em in brute_morphisms(L, G, mono=True):
        del_n = {nm[x] for x in L.nodes if x not in kept_l_nodes}
        del_e = {em[x] for x in L.edges if x not in kept_l_edges}
        if del_n & j_nodes or del_e & j_edges:
            continue
        if any((s in del_n or t in del_n) and e not in del_e for e, (s, t, _) in G.edges.items()):
            continue
        nodes = {("g", v): lab for v, lab in G.nodes.items() if v not in del_n}
        edges = {("g", e): (("g", s), ("g", t), lab) for e, (s, t, lab) in G.edges.items()
                 if e not in del_e}
        i_of_r_n = {ir.node_map[x]: x for x in I.nodes}
        i_of_r_e = {ir.edge_map[x]: x for x in I.edges}

        def rnode(v):
            return ("g", nm[il.node_map[i_of_r_n[v]]]) if v in i_of_r_n else ("r", v)

        for v, lab in R.nodes.items():
            if v not in i_of_r_n:
                nodes[("r", v)] = lab
        for e, (s, t, lab) in R.edges.items():
            if e not in i_of_r_e:
                edges[("r", e)] = (rnode(s), rnode(t), lab)
        name = {k: f"{k[0]}_{k[1]}" for k in list(nodes) + list(edges)}
        H = Graph({name[k]: lab for k, lab in nodes.items()},
                  {name[k]: (name[s], name[t], lab) for k, (s, t, lab) in edges.items()})
        right = GraphMorphism(a.outer, H, {x: name[("g", a.right_leg.node_map[x])] for x in a.outer.nodes},
                              {x: name[("g", a.right_leg.edge_map[x])] for x in a.outer.edges})
        out.append(Cospan(GraphMorphism.inclusion(Graph(), H), right))
    return out


def iso_classes(cs) -> list[Cospan]:
    reps: list[Cospan] = []
    for c in cs:
        if not any(c.inner == r.inner and c.outer == r.outer and cospan_iso(c, r) is not None
                   for r in reps):
            reps.append(c)
    return reps


def sample_contexts(root: Graph, alphabet: Alphabet, nodes: int = 1, edges: int = 1) -> list[Cospan]:
    return list(enumerate_contexts(root, alphabet, nodes, edges, outers=("root", "full", "empty")))


def semantically_equal(A, B, contexts) -> bool:
    return all(satisfies(d, A) == satisfies(d, B) for d in contexts)


def semantically_entails(A, B, contexts) -> bool:
    return all(satisfies(d, B) for d in contexts if satisfies(d, A))
