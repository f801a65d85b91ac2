"""Proof-obligation checkers for conditional bisimulations.

A triple ``(a, b, C)`` states that ``a`` and ``b`` behave alike in every
context satisfying ``C``.  Each representative step of one side becomes an
obligation: the other side must answer with context steps under the same
borrowed context, the successors must be related again (possibly after
peeling a common context), and the step's environment condition together
with the shifted ``C`` must imply the disjunction of the answers'
conditions.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .conditions import (DEFAULT_REFUTE_BOUND, Condition, Fails, Holds, Unknown, Verdict,
                         conj, disj, equivalent, false_, implies, negate, normalize, rename_root,
                         shift, true_)
from .contexts import Alphabet
from .cospan import Cospan, compose_cospans, cospan_iso, factorizations, iso_transport
from .graph import graph_invariant, is_isomorphic, iter_morphisms
from .reactive import StepLabel, System, context_steps_for, reactions, representative_steps

__all__ = [
    "ConditionalTriple",
    "ConditionalRelation",
    "Candidate",
    "Obligation",
    "CheckReport",
    "GroundResult",
    "in_contextual_closure",
    "check_conditional_bisim_rep",
    "check_cbuc_rep",
    "check_semi_saturated",
    "ground_bisim_oracle",
    "derive_condition_candidates",
    "worker_count",
]


@dataclass(frozen=True)
class ConditionalTriple:
    a: Cospan
    b: Cospan
    cond: Condition
    name: str = ""

    def __post_init__(self):
        if self.a.inner != self.b.inner or self.a.outer != self.b.outer:
            raise ValueError("related agents must share both interfaces")
        if self.cond.root != self.a.outer:
            raise ValueError("triple condition must be rooted at the agents' interface")


@dataclass(frozen=True)
class ConditionalRelation:
    triples: tuple

    @classmethod
    def of(cls, triples) -> "ConditionalRelation":
        return cls(tuple(triples))

    @classmethod
    def pairs(cls, pairs) -> "ConditionalRelation":
        """A plain binary relation, every pair under ``true``."""
        return cls(tuple(ConditionalTriple(a, b, true_(a.outer)) for a, b in pairs))

    def __iter__(self):
        return iter(self.triples)

    def __len__(self):
        return len(self.triples)

    def __getitem__(self, i):
        return self.triples[i]

    def label(self, i: int) -> str:
        return self.triples[i].name or f"t{i}"


@dataclass
class Candidate:
    """An answering step whose successors are related through ``peel``."""

    answer: StepLabel
    base: int
    peel: Cospan
    cond: Condition


@dataclass
class Obligation:
    id: str
    triple: int
    side: str
    step: StepLabel
    candidates: list
    missing: list
    lhs: Condition
    rhs: Condition
    verdict: Verdict
    assumed: bool = False

    @property
    def status(self) -> str:
        if isinstance(self.verdict, Holds):
            return "holds"
        if isinstance(self.verdict, Fails):
            return "fails"
        return "assumed" if self.assumed else "unknown"


@dataclass
class CheckReport:
    mode: str
    verdict: str
    obligations: list = field(default_factory=list)
    failures: list = field(default_factory=list)
    assumptions: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"


def worker_count(workers: int | None = None) -> int:
    if workers is not None:
        return max(1, workers)
    env = os.environ.get("COSPAN_BISIM_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def _peels(sa: Cospan, sb: Cospan, R: ConditionalRelation, iso_only: bool):
    """``(k, j)`` with ``R[k].a ; j = sa`` and ``R[k].b ; j = sb``."""
    for k, t in enumerate(R.triples):
        if t.a.inner != sa.inner:
            continue
        for j in factorizations(sa, t.a):
            if iso_only and iso_transport(j) is None:
                continue
            if cospan_iso(compose_cospans(t.b, j), sb) is not None:
                yield k, j


def in_contextual_closure(t: ConditionalTriple, R: ConditionalRelation,
                          bound: int = DEFAULT_REFUTE_BOUND, alphabet: Alphabet | None = None):
    """``(base, j)`` with ``base`` in ``R``, ``t.a = base.a ; j``,
    ``t.b = base.b ; j`` and ``t.cond |= base.cond`` shifted by ``j``;
    ``None`` if no witness is found."""
    for k, j in _peels(t.a, t.b, R, iso_only=False):
        if implies(t.cond, shift(R[k].cond, j), bound, alphabet).holds:
            return R[k], j
    return None


def _unit(args) -> list[Obligation]:
    R, k, side, system, mode, bound, assumed = args
    t = R[k]
    this, other = (t.a, t.b) if side == "left" else (t.b, t.a)
    use_conds = mode != "semi-sat"
    iso_only = mode in ("bisim-rep", "semi-sat")
    up_to = mode == "semi-sat-ctx"
    if up_to:
        iso_only = False
    out = []
    counters: dict = {}
    for step in representative_steps(this, system):
        i = counters.get(step.rule, 0)
        counters[step.rule] = i + 1
        oid = f"{R.label(k)}:{side}:{step.rule}:{i}"
        f = step.borrowed
        lhs = conj(step.env_cond, shift(t.cond, f)) if use_conds else step.env_cond
        cands, missing = [], []
        for ans in context_steps_for(other, f, system):
            sa, sb = (step.target, ans.target) if side == "left" else (ans.target, step.target)
            found = False
            for k2, j in _peels(sa, sb, R, iso_only):
                cond = conj(shift(R[k2].cond, j), ans.env_cond) if use_conds else ans.env_cond
                cands.append(Candidate(ans, k2, j, cond))
                found = True
            if not found:
                missing.append((ans, sa, sb))
        rhs = disj(*[c.cond for c in cands]) if cands else false_(f.outer)
        if step.vacuous:
            verdict: Verdict = Holds("vacuous step")
        else:
            verdict = implies(lhs, rhs, bound, system.label_alphabet)
        out.append(Obligation(oid, k, side, step, cands, missing, lhs, rhs, verdict,
                              assumed=isinstance(verdict, Unknown) and oid in assumed))
    return out


def _run(R: ConditionalRelation, system: System, mode: str, bound: int, assume,
         workers: int | None) -> CheckReport:
    assumed = frozenset(assume or ())
    units = [(R, k, side, system, mode, bound, assumed)
             for k in range(len(R)) for side in ("left", "right")]
    n = worker_count(workers)
    if n > 1 and len(units) > 1:
        with ProcessPoolExecutor(max_workers=min(n, len(units))) as ex:
            results = list(ex.map(_unit, units))
    else:
        results = [_unit(u) for u in units]
    obligations = [o for r in results for o in r]
    failures = [o for o in obligations if o.status in ("fails", "unknown")]
    used = sorted(o.id for o in obligations if o.assumed)
    if any(o.status == "fails" for o in obligations):
        verdict = "fail"
    elif any(o.status == "unknown" for o in obligations):
        verdict = "inconclusive"
    else:
        verdict = "pass"
    return CheckReport(mode, verdict, obligations, failures, used)


def check_conditional_bisim_rep(R: ConditionalRelation, system: System,
                                bound: int = DEFAULT_REFUTE_BOUND, assume=(),
                                workers: int | None = None) -> CheckReport:
    """Successors must be related by ``R`` itself (up to renaming of the
    interface)."""
    return _run(R, system, "bisim-rep", bound, assume, workers)


def check_cbuc_rep(R: ConditionalRelation, system: System, bound: int = DEFAULT_REFUTE_BOUND,
                   assume=(), workers: int | None = None) -> CheckReport:
    """Successors may be related by ``R`` after peeling a common context,
    whose shift of the base condition then enters the implication."""
    return _run(R, system, "cbuc-rep", bound, assume, workers)


def check_semi_saturated(Rb, system: System, bound: int = DEFAULT_REFUTE_BOUND, assume=(),
                         workers: int | None = None, up_to_context: bool = False) -> CheckReport:
    """Plain relation check: each representative step ``a -f,A-> a'`` needs
    answers ``b -f,B_i-> b_i'`` with related successors and ``A |= OR B_i``.

    ``Rb`` is a relation whose conditions are ignored, or an iterable of
    agent pairs.  With ``up_to_context`` successors may be related after
    peeling a common context."""
    if not isinstance(Rb, ConditionalRelation):
        Rb = ConditionalRelation.pairs(Rb)
    mode = "semi-sat-ctx" if up_to_context else "semi-sat"
    report = _run(Rb, system, mode, bound, assume, workers)
    report.mode = "semi-sat"
    return report


# -- ground oracle ---------------------------------------------------------------

@dataclass
class GroundResult:
    verdict: str
    states: int
    distinguishing: tuple | None = None

    @property
    def bisimilar(self) -> bool | None:
        return {"bisimilar": True, "distinguished": False}.get(self.verdict)


def ground_bisim_oracle(a: Cospan, b: Cospan, system: System, state_bound: int = 2000) -> GroundResult:
    """Decide bisimilarity of ``a`` and ``b`` for the unlabelled reaction
    relation by exploring their reachable agents and refining partitions.

    Returns ``inconclusive`` when more than ``state_bound`` agents are
    reachable."""
    states: list[Cospan] = []
    buckets: dict = {}

    def intern(s: Cospan) -> int | None:
        key = (graph_invariant(s.middle), s.inner, s.outer)
        for i in buckets.get(key, ()):
            if cospan_iso(states[i], s) is not None:
                return i
        states.append(s)
        buckets.setdefault(key, []).append(len(states) - 1)
        return len(states) - 1

    start = [intern(a), intern(b)]
    succ: dict = {}
    todo = list(dict.fromkeys(start))
    while todo:
        i = todo.pop()
        if i in succ:
            continue
        nxt = set()
        for r in reactions(states[i], system):
            j = intern(r.target)
            nxt.add(j)
            if j not in succ:
                todo.append(j)
            if len(states) > state_bound:
                return GroundResult("inconclusive", len(states))
        succ[i] = nxt

    block = {i: 0 for i in succ}
    while True:
        sig = {i: (block[i], frozenset(block[j] for j in succ[i])) for i in succ}
        ids: dict = {}
        new = {i: ids.setdefault(sig[i], len(ids)) for i in sorted(succ)}
        if len(ids) == len(set(block.values())):
            break
        block = new
    ia, ib = start
    if block[ia] == block[ib]:
        return GroundResult("bisimilar", len(states))
    witness = (states[ia], states[ib],
               sorted({block[j] for j in succ[ia]} ^ {block[j] for j in succ[ib]}))
    return GroundResult("distinguished", len(states), witness)


# -- candidate conditions ----------------------------------------------------------

def derive_condition_candidates(a: Cospan, b: Cospan, system: System,
                                bound: int = DEFAULT_REFUTE_BOUND, workers: int | None = 1):
    """Heuristic conditions ``C`` for which ``{(a, b, C)}`` passes the
    up-to-context check.  Candidates are ``true`` and the environment
    conditions of both agents' steps transported onto their interface, with
    their negations.  Only verified candidates are returned, each with its
    passing report."""
    J = a.outer
    pool = [true_(J)]
    for agent in (a, b):
        for step in representative_steps(agent, system):
            env = step.env_cond
            if env.is_true or env.is_false:
                continue
            if is_isomorphic(env.root, J) is None:
                continue
            for psi in iter_morphisms(env.root, J, iso=True):
                c = normalize(rename_root(env, psi))
                for cand in (c, normalize(negate(c))):
                    if not any(equivalent(cand, p) for p in pool):
                        pool.append(cand)
    out = []
    for cand in pool:
        report = check_cbuc_rep(ConditionalRelation.of([ConditionalTriple(a, b, cand)]), system,
                                bound, workers=workers)
        if report.passed:
            out.append((cand, report))
    return out
