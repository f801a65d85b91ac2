"""Reactive systems with application conditions over input-linear cospans.

A rule is ``(l, r, R)`` with ``l, r: 0 -> I`` and ``R`` a condition over
``I``.  An agent ``a`` reacts to ``r ; c`` when ``a = l ; c`` and ``c |= R``.
Labelled steps add a borrowed context ``f`` and a condition on the
environment: ``a -f,A-> a'`` when ``a ; f = l ; c``, ``a' = r ; c`` and
``A |= R`` shifted along ``c``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from .borrowed import BCDiagram, borrowed_context_diagrams
from .conditions import Condition, normalize, satisfies, shift, condition_labels, true_
from .contexts import Alphabet, extensions, subgraphs
from .cospan import (Cospan, compose_cospans, cospan_iso, cospan_iso_up_to_outer,
                     iter_factorizations, factorizations)
from .graph import GraphMorphism, compose_morphisms, graph_invariant

__all__ = [
    "Rule",
    "System",
    "Reaction",
    "StepLabel",
    "BCDiagram",
    "reactions",
    "borrowed_context_diagrams",
    "representative_steps",
    "context_steps_for",
    "context_steps_bounded",
    "reduce_to_representative",
    "environment_steps",
    "same_step",
]


@dataclass(frozen=True)
class Rule:
    name: str
    lhs: Cospan
    rhs: Cospan
    cond: Condition

    def __post_init__(self):
        if self.lhs.outer != self.rhs.outer or self.lhs.inner != self.rhs.inner:
            raise ValueError(f"rule {self.name}: sides must share their interfaces")
        if self.cond.root != self.lhs.outer:
            raise ValueError(f"rule {self.name}: condition must be rooted at the rule interface")

    @classmethod
    def unconditional(cls, name: str, lhs: Cospan, rhs: Cospan) -> "Rule":
        return cls(name, lhs, rhs, true_(lhs.outer))

    def labels(self) -> Alphabet:
        ns, es = condition_labels(self.cond)
        for g in (self.lhs.middle, self.rhs.middle):
            n2, e2 = g.labels()
            ns |= n2
            es |= e2
        return Alphabet(frozenset(ns), frozenset(es))


@dataclass(frozen=True)
class System:
    rules: tuple
    label_alphabet: Alphabet = field(default_factory=Alphabet)

    @classmethod
    def of(cls, rules: Iterable[Rule], extra: Alphabet | None = None) -> "System":
        rules = tuple(rules)
        alpha = Alphabet(frozenset(), frozenset())
        for r in rules:
            alpha = alpha.union(r.labels())
        if extra is not None:
            alpha = alpha.union(extra)
        if not alpha.nodes:
            alpha = Alphabet(frozenset({""}), alpha.edges)
        return cls(rules, alpha)

    def rule(self, name: str) -> Rule:
        for r in self.rules:
            if r.name == name:
                return r
        raise KeyError(name)


class Reaction(NamedTuple):
    rule: str
    context: Cospan
    target: Cospan


@dataclass(frozen=True, eq=False)
class StepLabel:
    """A labelled step ``source -borrowed, env_cond-> target``."""

    source: Cospan
    borrowed: Cospan
    env_cond: Condition
    target: Cospan
    rule: str
    reactive_context: Cospan
    kind: str
    vacuous: bool = False
    diagram: BCDiagram | None = None


def reactions(a: Cospan, system: System) -> list[Reaction]:
    """Every ``(rule, c, r ; c)`` with ``a = l ; c`` and ``c |= R``."""
    out = []
    for rule in system.rules:
        if rule.lhs.inner != a.inner:
            continue
        for c in factorizations(a, rule.lhs):
            if satisfies(c, rule.cond):
                out.append(Reaction(rule.name, c, compose_cospans(rule.rhs, c)))
    return out


def _reindex_outer(f: Cospan, psi: GraphMorphism) -> Cospan:
    return Cospan(f.left_leg, compose_morphisms(psi.inverse(), f.right_leg))


def same_step(s1: StepLabel, s2: StepLabel) -> bool:
    """Same rule, and borrowed and reactive contexts isomorphic through a
    common isomorphism of their outer interfaces."""
    if s1.rule != s2.rule or s1.borrowed.inner != s2.borrowed.inner:
        return False
    for psi, _ in cospan_iso_up_to_outer(s1.borrowed, s2.borrowed):
        if cospan_iso(_reindex_outer(s1.reactive_context, psi), s2.reactive_context) is not None:
            return True
    return False


def _dedup(steps: list[StepLabel]) -> list[StepLabel]:
    buckets: dict = {}
    out = []
    for s in steps:
        key = (s.rule, graph_invariant(s.borrowed.middle), graph_invariant(s.borrowed.outer),
               graph_invariant(s.reactive_context.middle))
        bucket = buckets.setdefault(key, [])
        if any(same_step(s, t) for t in bucket):
            continue
        bucket.append(s)
        out.append(s)
    return out


def _step(a: Cospan, rule: Rule, f: Cospan, c: Cospan, kind: str, diagram=None) -> StepLabel:
    env = normalize(shift(rule.cond, c))
    return StepLabel(a, f, env, compose_cospans(rule.rhs, c), rule.name, c, kind,
                     vacuous=env.is_false, diagram=diagram)


def representative_steps(a: Cospan, system: System) -> list[StepLabel]:
    """Steps obtained from borrowed context diagrams, one per isomorphism
    class; steps with an unsatisfiable environment are flagged vacuous."""
    out = []
    for rule in system.rules:
        if rule.lhs.inner != a.inner:
            continue
        for d in borrowed_context_diagrams(a, rule.lhs):
            out.append(_step(a, rule, d.borrowed, d.context, "rep", d))
    return _dedup(out)


def context_steps_for(a: Cospan, f: Cospan, system: System) -> list[StepLabel]:
    """All context steps of ``a`` with borrowed context exactly ``f``, each
    with its weakest environment condition."""
    af = compose_cospans(a, f)
    out = []
    for rule in system.rules:
        if rule.lhs.inner != af.inner:
            continue
        for c in factorizations(af, rule.lhs):
            out.append(_step(a, rule, f, c, "ctx"))
    return out


def context_steps_bounded(a: Cospan, system: System, bound: int) -> list[StepLabel]:
    """Context steps whose borrowed context adds at most ``bound`` elements
    (nodes plus edges) to the interface of ``a`` and exposes any subgraph of
    the result as its new interface."""
    J = a.outer
    out = []
    for F in extensions(J, system.label_alphabet, bound, bound, max_total=bound):
        for K in subgraphs(F):
            out.extend(context_steps_for(a, Cospan.inclusion(J, F, K), system))
    return _dedup(out)


def reduce_to_representative(step: StepLabel, system: System) -> tuple[StepLabel, Cospan]:
    """A representative step ``(f', c')`` and ``g`` with ``f' ; g = f`` and
    ``c' ; g = c`` for the given context step."""
    rule = system.rule(step.rule)
    for d in borrowed_context_diagrams(step.source, rule.lhs):
        for g in iter_factorizations(step.borrowed, d.borrowed):
            if cospan_iso(compose_cospans(d.context, g), step.reactive_context) is not None:
                return _step(step.source, rule, d.borrowed, d.context, "rep", d), g
    raise ValueError("no representative step factors this context step")


def environment_steps(a: Cospan, d: Cospan, system: System) -> list[Reaction]:
    """Steps ``a ~d~> r ; c`` with ``a = l ; c`` and ``c ; d |= R``."""
    out = []
    for rule in system.rules:
        if rule.lhs.inner != a.inner:
            continue
        for c in factorizations(a, rule.lhs):
            if satisfies(compose_cospans(c, d), rule.cond):
                out.append(Reaction(rule.name, c, compose_cospans(rule.rhs, c)))
    return out
