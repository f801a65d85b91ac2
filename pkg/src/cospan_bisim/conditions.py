"""Nested application conditions over cospans.

A condition over an interface ``A`` is ``(A, Q, S)`` with ``Q`` a quantifier
and ``S`` a set of pairs ``(h, C)`` where ``h: A -> A'`` is a cospan and ``C``
a condition over ``A'``.  An arrow ``a: A -> B`` satisfies ``(A, forall, S)``
when for every ``(h, C)`` in ``S`` and every ``g`` with ``a = h ; g`` we have
``g |= C``; the existential case is dual.
"""
from __future__ import annotations

from dataclasses import dataclass

from .borrowed import borrowed_context_diagrams
from .contexts import Alphabet, enumerate_contexts
from .cospan import (Cospan, cospan_iso_up_to_outer, factorizations, identity_cospan,
                     iso_transport, iter_factorizations)
from .graph import Graph, GraphMorphism, compose_morphisms

__all__ = [
    "FORALL",
    "EXISTS",
    "Condition",
    "true_",
    "false_",
    "satisfies",
    "negate",
    "conj",
    "disj",
    "shift",
    "normalize",
    "equivalent",
    "implies",
    "rename_root",
    "condition_labels",
    "Verdict",
    "Holds",
    "Fails",
    "Unknown",
    "DEFAULT_REFUTE_BOUND",
]

FORALL = "forall"
EXISTS = "exists"
DEFAULT_REFUTE_BOUND = 2


class Condition:
    """An immutable condition tree rooted at the interface ``root``."""

    __slots__ = ("root", "quantifier", "children", "_hash")

    def __init__(self, root: Graph, quantifier: str, children=()):
        if quantifier not in (FORALL, EXISTS):
            raise ValueError(f"unknown quantifier {quantifier!r}")
        children = tuple((h, c) for h, c in children)
        for h, c in children:
            if h.inner != root:
                raise ValueError("child cospan does not start at the condition root")
            if c.root != h.outer:
                raise ValueError("child condition is not rooted at the cospan's outer interface")
        self.root = root
        self.quantifier = quantifier
        self.children = children
        self._hash = None

    @property
    def is_true(self) -> bool:
        return self.quantifier == FORALL and not self.children

    @property
    def is_false(self) -> bool:
        return self.quantifier == EXISTS and not self.children

    def size(self) -> int:
        return 1 + sum(c.size() for _, c in self.children)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Condition):
            return NotImplemented
        return (self.quantifier == other.quantifier and self.root == other.root
                and self.children == other.children)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.root, self.quantifier, self.children))
        return self._hash

    def __repr__(self):
        if self.is_true:
            return "true"
        if self.is_false:
            return "false"
        inner = ", ".join(f"({h.middle!r} => {c!r})" for h, c in self.children)
        return f"{self.quantifier}({inner})"


def true_(A: Graph) -> Condition:
    return Condition(A, FORALL)


def false_(A: Graph) -> Condition:
    return Condition(A, EXISTS)


def _flip(q: str) -> str:
    return EXISTS if q == FORALL else FORALL


def satisfies(a: Cospan, A: Condition) -> bool:
    """Whether the arrow ``a`` satisfies ``A``."""
    if a.inner != A.root:
        raise ValueError("arrow does not start at the condition root")
    if A.quantifier == FORALL:
        for h, X in A.children:
            if X.is_true:
                continue
            for g in iter_factorizations(a, h):
                if not satisfies(g, X):
                    return False
        return True
    for h, X in A.children:
        if X.is_false:
            continue
        for g in iter_factorizations(a, h):
            if satisfies(g, X):
                return True
    return False


def negate(A: Condition) -> Condition:
    return Condition(A.root, _flip(A.quantifier), [(h, negate(X)) for h, X in A.children])


def _junction(q: str, conds) -> Condition:
    conds = list(conds)
    if not conds:
        raise ValueError("at least one condition is required")
    root = conds[0].root
    if any(c.root != root for c in conds):
        raise ValueError("conditions have different roots")
    idc = identity_cospan(root)
    return Condition(root, q, [(idc, c) for c in conds])


def conj(*conds: Condition) -> Condition:
    return _junction(FORALL, conds)


def disj(*conds: Condition) -> Condition:
    return _junction(EXISTS, conds)


def shift(A: Condition, c: Cospan) -> Condition:
    """Shift ``A`` along ``c`` so that ``c ; d |= A`` iff ``d |= shift(A, c)``."""
    if c.inner != A.root:
        raise ValueError("shift context does not start at the condition root")
    children = []
    for h, X in A.children:
        for diagram in borrowed_context_diagrams(h, c):
            children.append((diagram.context, shift(X, diagram.borrowed)))
    return Condition(c.outer, A.quantifier, children)


def rename_root(A: Condition, psi: GraphMorphism) -> Condition:
    """Transport ``A`` along a graph isomorphism ``psi: root -> R``."""
    if psi.dom != A.root:
        raise ValueError("isomorphism does not start at the condition root")
    if psi.dom == psi.cod and all(k == v for k, v in psi.node_map.items()) \
            and all(k == v for k, v in psi.edge_map.items()):
        return A
    inv = psi.inverse()
    return Condition(psi.cod, A.quantifier,
                     [(Cospan(compose_morphisms(inv, h.left_leg), h.right_leg), X)
                      for h, X in A.children])


def condition_labels(A: Condition) -> tuple[set, set]:
    """Node and edge labels occurring anywhere in ``A``."""
    ns, es = set(A.root.nodes.values()), {lab for _, _, lab in A.root.edges.values()}
    for h, X in A.children:
        ns |= set(h.middle.nodes.values())
        es |= {lab for _, _, lab in h.middle.edges.values()}
        n2, e2 = condition_labels(X)
        ns |= n2
        es |= e2
    return ns, es


# -- structural equivalence -------------------------------------------------

def _child_equiv(c1, c2) -> bool:
    h1, X1 = c1
    h2, X2 = c2
    if h1 == h2:
        return equivalent(X1, X2)
    t1, t2 = iso_transport(h1), iso_transport(h2)
    if (t1 is None) != (t2 is None):
        return False
    if t1 is not None:
        return equivalent(rename_root(X1, t1), rename_root(X2, t2))
    if X1.size() != X2.size():
        return False
    for psi, _ in cospan_iso_up_to_outer(h1, h2):
        if equivalent(rename_root(X1, psi), X2):
            return True
    return False


def equivalent(A: Condition, B: Condition) -> bool:
    """Syntactic equality up to isomorphism of child cospans and permutation
    of children (sound, not complete, for semantic equivalence)."""
    if A is B:
        return True
    if A.root != B.root or A.quantifier != B.quantifier or len(A.children) != len(B.children):
        return False
    used = [False] * len(B.children)

    def rec(i):
        if i == len(A.children):
            return True
        for j, cb in enumerate(B.children):
            if not used[j] and _child_equiv(A.children[i], cb):
                used[j] = True
                if rec(i + 1):
                    return True
                used[j] = False
        return False

    return rec(0)


# -- normalization ------------------------------------------------------------

def _literal(root: Graph, q: str, child) -> Condition:
    h, X = child
    if h == identity_cospan(root):
        return X
    return Condition(root, q, [child])


def normalize(A: Condition) -> Condition:
    """Semantics-preserving simplification.

    Drops vacuous children, splices children reached through isomorphisms
    into their parent when the quantifiers agree, collapses to ``true`` or
    ``false`` where a child forces the result, removes duplicate children and
    detects complementary pairs."""
    Q, root = A.quantifier, A.root
    idc = identity_cospan(root)
    stack = [(h, normalize(X)) for h, X in A.children]
    items = []
    while stack:
        h, X = stack.pop(0)
        psi = iso_transport(h)
        if psi is not None:
            X = rename_root(X, psi)
            if X.quantifier == Q:
                stack[0:0] = list(X.children)
                continue
            if Q == FORALL and X.is_false:
                return false_(root)
            if Q == EXISTS and X.is_true:
                return true_(root)
            items.append((idc, X))
            continue
        if (Q == FORALL and X.is_true) or (Q == EXISTS and X.is_false):
            continue
        items.append((h, X))

    unique = []
    for it in items:
        if not any(_child_equiv(it, u) for u in unique):
            unique.append(it)

    if len(unique) > 1:
        lits = [_literal(root, Q, it) for it in unique]
        negs = [normalize(negate(lit)) for lit in lits]
        for i in range(len(lits)):
            for j in range(i + 1, len(lits)):
                if equivalent(negs[i], lits[j]):
                    return false_(root) if Q == FORALL else true_(root)

    if len(unique) == 1 and unique[0][0] == idc:
        return unique[0][1]
    return Condition(root, Q, unique)


# -- implication ----------------------------------------------------------------

@dataclass(frozen=True)
class Verdict:
    """Outcome of an implication check."""

    @property
    def holds(self) -> bool:
        return isinstance(self, Holds)


@dataclass(frozen=True)
class Holds(Verdict):
    reason: str = "structural"


@dataclass(frozen=True)
class Fails(Verdict):
    witness: Cospan


@dataclass(frozen=True)
class Unknown(Verdict):
    bound: int


def _items(A: Condition) -> list[Condition]:
    return [_literal(A.root, A.quantifier, c) for c in A.children]


def _entails(P: Condition, Q: Condition, depth: int) -> bool:
    """Sound structural entailment between normalized conditions."""
    if Q.is_true or P.is_false or equivalent(P, Q):
        return True
    if depth <= 0:
        return False
    d = depth - 1
    if P.quantifier == EXISTS and len(P.children) > 1:
        return all(_entails(p, Q, d) for p in _items(P))
    if Q.quantifier == FORALL and len(Q.children) > 1:
        return all(_entails(P, q, d) for q in _items(Q))
    if P.quantifier == FORALL and len(P.children) > 1:
        if any(_entails(p, Q, d) for p in _items(P)):
            return True
    if Q.quantifier == EXISTS and len(Q.children) > 1:
        if any(_entails(P, q, d) for q in _items(Q)):
            return True
    if len(P.children) == 1 and len(Q.children) == 1 and P.quantifier == Q.quantifier:
        (hp, Xp), (hq, Xq) = P.children[0], Q.children[0]
        if P.quantifier == EXISTS:
            # exists(hp, Xp) |= exists(hq, Xq) if hp = hq ; k and Xp |= Xq shifted by k
            for k in factorizations(hp, hq):
                if _entails(Xp, normalize(shift(Xq, k)), d):
                    return True
        else:
            # forall(hp, Xp) |= forall(hq, Xq) if hq = hp ; k and Xp shifted by k |= Xq
            for k in factorizations(hq, hp):
                if _entails(normalize(shift(Xp, k)), Xq, d):
                    return True
    return False


def _refutation_alphabet(A: Condition, B: Condition, alphabet: Alphabet | None) -> Alphabet:
    na, ea = condition_labels(A)
    nb, eb = condition_labels(B)
    ns, es = na | nb, ea | eb
    if alphabet is None:
        extra_n, extra_e = set(), {"_"}
    else:
        extra_n = set(sorted(alphabet.nodes - ns)[:1])
        extra_e = set(sorted(alphabet.edges - es)[:1])
    return Alphabet(frozenset(ns | extra_n), frozenset(es | extra_e))


def refute(A: Condition, B: Condition, bound: int = DEFAULT_REFUTE_BOUND,
           alphabet: Alphabet | None = None) -> Cospan | None:
    """Search for a context ``d`` with ``d |= A`` and not ``d |= B`` among
    extensions of the root by at most ``bound`` nodes and ``bound`` edges.

    Labels absent from both conditions cannot be told apart by them, so one
    representative unmentioned label stands for all of them."""
    alpha = _refutation_alphabet(A, B, alphabet)
    for d in enumerate_contexts(A.root, alpha, bound, bound):
        if satisfies(d, A) and not satisfies(d, B):
            return d
    return None


def implies(A: Condition, B: Condition, bound: int = DEFAULT_REFUTE_BOUND,
            alphabet: Alphabet | None = None) -> Verdict:
    """Three-valued check of ``A |= B``.

    Normalization and structural rules prove; a bounded search for a
    distinguishing context refutes; otherwise the result is ``Unknown``."""
    if A.root != B.root:
        raise ValueError("implication between conditions over different roots")
    nA, nB = normalize(A), normalize(B)
    if nB.is_true or nA.is_false or equivalent(nA, nB):
        return Holds("normal form")
    if normalize(conj(nA, negate(nB))).is_false:
        return Holds("contradiction")
    if _entails(nA, nB, 6):
        return Holds("structural")
    w = refute(nA, nB, bound, alphabet)
    if w is not None:
        return Fails(w)
    return Unknown(bound)
