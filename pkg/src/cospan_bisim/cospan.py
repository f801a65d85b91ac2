"""Input-linear cospans of graphs: the arrows of the reactive category."""
from __future__ import annotations

import itertools

from .adhesive import pushout, pushout_complements
from .graph import Graph, GraphMorphism, compose_morphisms, iter_morphisms

__all__ = [
    "Cospan",
    "NotInputLinear",
    "compose_cospans",
    "identity_cospan",
    "cospan_iso",
    "cospan_iso_up_to_outer",
    "factorizations",
    "iso_transport",
]


class NotInputLinear(ValueError):
    """Raised when a cospan's left leg is not injective."""


class Cospan:
    """A cospan ``inner >-left-> middle <-right- outer`` with injective left leg."""

    __slots__ = ("left_leg", "right_leg", "_hash")

    def __init__(self, left_leg: GraphMorphism, right_leg: GraphMorphism):
        if left_leg.cod != right_leg.cod:
            raise ValueError("cospan legs must share their codomain")
        if not left_leg.is_injective():
            raise NotInputLinear("left leg of a cospan must be injective (input-linearity)")
        self.left_leg = left_leg
        self.right_leg = right_leg
        self._hash = None

    @classmethod
    def inclusion(cls, inner: Graph, middle: Graph, outer: Graph) -> "Cospan":
        """Both legs are the id-preserving inclusions into ``middle``."""
        return cls(GraphMorphism.inclusion(inner, middle), GraphMorphism.inclusion(outer, middle))

    @classmethod
    def build(cls, inner: Graph, middle: Graph, outer: Graph, left=None, right=None) -> "Cospan":
        """Legs given as ``{id: id}`` dicts covering nodes and edges; omitted
        legs default to id-preserving inclusions."""
        def leg(dom, m):
            if m is None:
                return GraphMorphism.inclusion(dom, middle)
            return GraphMorphism(dom, middle, {k: m[k] for k in dom.nodes},
                                 {k: m[k] for k in dom.edges})
        return cls(leg(inner, left), leg(outer, right))

    @property
    def inner(self) -> Graph:
        return self.left_leg.dom

    @property
    def outer(self) -> Graph:
        return self.right_leg.dom

    @property
    def middle(self) -> Graph:
        return self.left_leg.cod

    def then(self, g: "Cospan") -> "Cospan":
        return compose_cospans(self, g)

    def __eq__(self, other):
        if not isinstance(other, Cospan):
            return NotImplemented
        return self.left_leg == other.left_leg and self.right_leg == other.right_leg

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.left_leg, self.right_leg))
        return self._hash

    def __repr__(self):
        return f"Cospan({self.inner!r} -> {self.middle!r} <- {self.outer!r})"


def identity_cospan(A: Graph) -> Cospan:
    idA = GraphMorphism.identity(A)
    return Cospan(idA, idA)


def compose_cospans(f: Cospan, g: Cospan) -> Cospan:
    """``f ; g`` via the pushout of ``f``'s right leg and ``g``'s left leg."""
    if f.outer != g.inner:
        raise ValueError("cospans are not composable: interfaces differ")
    po = pushout(f.right_leg, g.left_leg)
    return Cospan(compose_morphisms(f.left_leg, po.left_leg),
                  compose_morphisms(g.right_leg, po.right_leg))


def _anchor_from_legs(pairs) -> tuple[dict, dict] | None:
    """Combine ``(f, g)`` leg pairs into a partial map ``cod f -> cod g``."""
    na, ea = {}, {}
    for f, g in pairs:
        for x, y in f.node_map.items():
            if na.setdefault(y, g.node_map[x]) != g.node_map[x]:
                return None
        for x, y in f.edge_map.items():
            if ea.setdefault(y, g.edge_map[x]) != g.edge_map[x]:
                return None
    return na, ea


def cospan_iso(f: Cospan, g: Cospan) -> GraphMorphism | None:
    """An isomorphism of middles commuting with both legs, if any.

    Both cospans must have identical inner and outer interfaces."""
    if f.inner != g.inner or f.outer != g.outer:
        return None
    if len(f.middle.nodes) != len(g.middle.nodes) or len(f.middle.edges) != len(g.middle.edges):
        return None
    anchor = _anchor_from_legs([(f.left_leg, g.left_leg), (f.right_leg, g.right_leg)])
    if anchor is None:
        return None
    return next(iter_morphisms(f.middle, g.middle, anchor[0], anchor[1], iso=True), None)


def cospan_iso_up_to_outer(f: Cospan, g: Cospan):
    """Yield pairs ``(psi, phi)`` where ``psi: outer f -> outer g`` and
    ``phi: middle f -> middle g`` are isomorphisms with ``phi`` fixing the
    inner interface and ``right f; phi = psi; right g``."""
    if f.inner != g.inner:
        return
    if len(f.middle.nodes) != len(g.middle.nodes) or len(f.middle.edges) != len(g.middle.edges):
        return
    if len(f.outer.nodes) != len(g.outer.nodes) or len(f.outer.edges) != len(g.outer.edges):
        return
    anchor = _anchor_from_legs([(f.left_leg, g.left_leg)])
    if anchor is None:
        return
    for phi in iter_morphisms(f.middle, g.middle, anchor[0], anchor[1], iso=True):
        for psi in _lifts(compose_morphisms(f.right_leg, phi), g.right_leg):
            if psi.is_iso():
                yield psi, phi


def _lifts(target: GraphMorphism, through: GraphMorphism):
    """Morphisms ``beta`` with ``beta ; through = target``."""
    B, M = target.dom, through.dom
    inv_n, inv_e = {}, {}
    for x, y in through.node_map.items():
        inv_n.setdefault(y, []).append(x)
    for x, y in through.edge_map.items():
        inv_e.setdefault(y, []).append(x)
    nodes = sorted(B.nodes)
    nchoices = []
    for x in nodes:
        c = inv_n.get(target.node_map[x])
        if not c:
            return
        nchoices.append(sorted(c))
    edges = sorted(B.edges)
    for npick in itertools.product(*nchoices):
        nm = dict(zip(nodes, npick))
        echoices = []
        for e in edges:
            s, t, _ = B.edges[e]
            c = [d for d in inv_e.get(target.edge_map[e], ())
                 if M.edges[d][0] == nm[s] and M.edges[d][1] == nm[t]]
            if not c:
                break
            echoices.append(sorted(c))
        else:
            for epick in itertools.product(*echoices):
                yield GraphMorphism(B, M, nm, dict(zip(edges, epick)), check=False)


def iso_transport(h: Cospan) -> GraphMorphism | None:
    """For a cospan whose legs are both isomorphisms, the graph isomorphism
    ``outer -> inner`` it induces; otherwise ``None``."""
    if not h.left_leg.is_iso() or not h.right_leg.is_iso():
        return None
    return compose_morphisms(h.right_leg, h.left_leg.inverse())


def iter_factorizations(a: Cospan, h: Cospan):
    """Lazily yield every ``g`` with ``h ; g`` isomorphic to ``a`` (possibly
    with repetitions up to isomorphism)."""
    if a.inner != h.inner:
        raise ValueError("factorization requires a common inner interface")
    anchor = _anchor_from_legs([(h.left_leg, a.left_leg)])
    if anchor is None:
        return
    for phi in iter_morphisms(h.middle, a.middle, anchor[0], anchor[1], mono=True):
        for pc in pushout_complements(h.right_leg, phi):
            for beta in _lifts(a.right_leg, pc.right_leg):
                yield Cospan(pc.left_leg, beta)


def factorizations(a: Cospan, h: Cospan) -> list[Cospan]:
    """All ``g: outer(h) -> outer(a)`` with ``h ; g`` isomorphic to ``a``,
    one per isomorphism class."""
    out: list[Cospan] = []
    for g in iter_factorizations(a, h):
        if not any(cospan_iso(g, k) is not None for k in out):
            out.append(g)
    return out
