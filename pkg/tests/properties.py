"""Property suites checked against brute-force oracles."""
import pytest
from hypothesis import assume, given, strategies as st

from cospan_bisim.adhesive import jointly_epi_squares, pullback, pushout
from cospan_bisim.bisim import ConditionalRelation, ConditionalTriple, in_contextual_closure
from cospan_bisim.conditions import (Fails, Holds, conj, disj, equivalent, false_, implies, negate,
                                     normalize, satisfies, shift, true_)
from cospan_bisim.contexts import Alphabet
from cospan_bisim.cospan import Cospan, compose_cospans, cospan_iso, factorizations, identity_cospan
from cospan_bisim.graph import Graph, GraphMorphism
from cospan_bisim.reactive import (context_steps_bounded, context_steps_for, reduce_to_representative,
                                   representative_steps, same_step)
from oracles import (as_morphism, brute_factorizations, brute_morphisms, iso_classes,
                     jointly_epi_quotients, pullback_mediators, pushout_mediators, sample_contexts,
                     semantically_entails, semantically_equal, square_partition)
from strategies import agents, conditions, cospans_from, extension, graphs, systems

pytestmark = pytest.mark.criterion(6)

ALPHA = Alphabet(frozenset({""}), frozenset({"x", "y"}))
UNLABELLED = ("",)


def contexts(root):
    return sample_contexts(root, ALPHA)


roots = graphs(2, 1, prefix="r", node_labels=UNLABELLED)


@st.composite
def condition_setup(draw, n=1, with_second_shift=False):
    root = draw(roots)
    conds = [draw(conditions(root, 2, f"c{i}")) for i in range(n)]
    c = draw(cospans_from(root, 1, 1, "s", node_labels=UNLABELLED))
    if with_second_shift:
        c2 = draw(cospans_from(c.outer, 1, 1, "t", node_labels=UNLABELLED, glue_outer=False))
        return conds, c, c2
    return conds, c


@st.composite
def morphism_into(draw, G, H):
    ms = brute_morphisms(G, H)
    assume(ms)
    return as_morphism(G, H, draw(st.sampled_from(ms)))


# shift laws

@given(condition_setup(2))
def test_shift_preserves_disjunction(setup):
    (A, B), c = setup
    assert semantically_equal(shift(disj(A, B), c), disj(shift(A, c), shift(B, c)), contexts(c.outer))


@given(condition_setup(2))
def test_shift_preserves_conjunction(setup):
    (A, B), c = setup
    assert semantically_equal(shift(conj(A, B), c), conj(shift(A, c), shift(B, c)), contexts(c.outer))


@given(condition_setup(1))
def test_shift_preserves_negation(setup):
    (A,), c = setup
    assert semantically_equal(shift(negate(A), c), negate(shift(A, c)), contexts(c.outer))


@given(condition_setup(1))
def test_shift_along_identity(setup):
    (A,), _ = setup
    assert semantically_equal(shift(A, identity_cospan(A.root)), A, contexts(A.root))


@given(condition_setup(0))
def test_shift_of_constants(setup):
    _, c = setup
    assert normalize(shift(true_(c.inner), c)).is_true
    assert normalize(shift(false_(c.inner), c)).is_false


@given(condition_setup(1, with_second_shift=True))
def test_shift_along_composite(setup):
    (A,), c, c2 = setup
    assert semantically_equal(shift(A, compose_cospans(c, c2)), shift(shift(A, c), c2),
                              contexts(c2.outer))


@given(condition_setup(2))
def test_shift_preserves_entailment(setup):
    (A, B), c = setup
    ctxs = contexts(c.outer)
    assert semantically_entails(shift(A, c), shift(disj(A, B), c), ctxs)
    assert semantically_entails(shift(conj(A, B), c), shift(B, c), ctxs)


@given(condition_setup(1))
def test_satisfaction_shift_duality(setup):
    (A,), c = setup
    shifted = shift(A, c)
    for d in contexts(c.outer):
        assert satisfies(d, shifted) == satisfies(compose_cospans(c, d), A)


# condition helpers

@given(condition_setup(1))
def test_normalize_preserves_satisfaction(setup):
    (A,), _ = setup
    assert semantically_equal(normalize(A), A, contexts(A.root))


@given(condition_setup(2))
def test_implies_is_sound(setup):
    (A, B), _ = setup
    v = implies(A, B, bound=1, alphabet=ALPHA)
    if isinstance(v, Holds):
        assert semantically_entails(A, B, contexts(A.root))
    elif isinstance(v, Fails):
        assert satisfies(v.witness, A) and not satisfies(v.witness, B)


# adhesive constructions

small = graphs(2, 1, prefix="a")


@st.composite
def spans(draw):
    A = draw(small)
    B = draw(extension(A, 1, 1, "b"))
    C = draw(extension(A, 1, 1, "c"))
    return draw(morphism_into(A, B)), draw(morphism_into(A, C))


@given(spans(), graphs(2, 2, prefix="e"))
def test_pushout_universal_property(span, E):
    f, g = span
    po = pushout(f, g)
    assert po.left_leg.dom == f.cod and po.right_leg.dom == g.cod
    for target in (po.object, E):
        assert all(n == 1 for n in pushout_mediators(f, g, po.left_leg, po.right_leg, target))


@st.composite
def cospans_of_morphisms(draw):
    D = draw(graphs(3, 2, prefix="d"))
    B = draw(graphs(2, 1, prefix="b"))
    C = draw(graphs(2, 1, prefix="c"))
    return draw(morphism_into(B, D)), draw(morphism_into(C, D))


@given(cospans_of_morphisms(), graphs(2, 1, prefix="e"))
def test_pullback_universal_property(cosp, E):
    f, g = cosp
    pb = pullback(f, g)
    assert pb.left_leg.cod == f.dom and pb.right_leg.cod == g.dom
    for source in (pb.object, E):
        assert all(n == 1 for n in pullback_mediators(f, g, pb.left_leg, pb.right_leg, source))


@given(small.flatmap(lambda D: st.tuples(st.just(D), extension(D, 1, 1, "l"), extension(D, 1, 1, "g"))))
def test_jointly_epi_squares_match_quotients(setup):
    D, L, G = setup
    top, left = GraphMorphism.inclusion(D, L), GraphMorphism.inclusion(D, G)
    squares = jointly_epi_squares(top, left)
    parts = [square_partition(sq) for sq in squares]
    assert len(parts) == len(set(parts))
    assert set(parts) == jointly_epi_quotients(top, left)
    for sq in squares:
        assert sq.right.is_injective() and sq.bottom.is_injective()


# factorizations

@given(agents(2, 2, "a"), cospans_from(Graph(), 1, 1, "h", glue_outer=False))
def test_factorizations_match_brute_force(a, h):
    got = factorizations(a, h)
    for g in got:
        assert cospan_iso(compose_cospans(h, g), a) is not None
    assert len(got) == len(brute_factorizations(a, h))


@given(cospans_from(Graph(), 2, 1, "h").flatmap(
    lambda h: st.tuples(st.just(h), cospans_from(h.outer, 1, 2, "g"))))
def test_factorization_round_trip(hg):
    h, g = hg
    a = compose_cospans(h, g)
    got = factorizations(a, h)
    assert any(cospan_iso(k, g) is not None for k in got)
    assert all(cospan_iso(compose_cospans(h, k), a) is not None for k in got)
    assert len(iso_classes(got)) == len(got)


# steps

def _matching(xs, ys):
    def same(s, t):
        return (s.rule == t.rule and cospan_iso(s.reactive_context, t.reactive_context) is not None
                and equivalent(s.env_cond, t.env_cond))
    return all(any(same(s, t) for t in ys) for s in xs) and all(any(same(t, s) for s in xs) for t in ys)


@given(st.data(), agents(2, 2, "a"), systems(conditional=True))
def test_step_rewriting_lemma(data, a, system):
    d = data.draw(cospans_from(a.outer, 1, 1, "d"))
    f = data.draw(cospans_from(d.outer, 1, 1, "f"))
    via_context = context_steps_for(compose_cospans(a, d), f, system)
    via_borrowed = context_steps_for(a, compose_cospans(d, f), system)
    assert len(via_context) == len(via_borrowed)
    assert _matching(via_context, via_borrowed)


@given(agents(2, 2, "a"), systems(conditional=True))
def test_representative_reduction_round_trip(a, system):
    reps = representative_steps(a, system)
    for s in context_steps_bounded(a, system, 1):
        rep, g = reduce_to_representative(s, system)
        assert any(same_step(rep, r) for r in reps)
        assert cospan_iso(compose_cospans(rep.borrowed, g), s.borrowed) is not None
        assert cospan_iso(compose_cospans(rep.reactive_context, g), s.reactive_context) is not None


@given(agents(2, 1, "a"), st.data())
def test_peeling_is_sound(a, data):
    b = Cospan.inclusion(Graph(), data.draw(extension(a.outer, 1, 1, "b")), a.outer)
    j = data.draw(cospans_from(a.outer, 1, 1, "j"))
    R = ConditionalRelation.of([ConditionalTriple(a, b, true_(a.outer))])
    t = ConditionalTriple(compose_cospans(a, j), compose_cospans(b, j), true_(j.outer))
    found = in_contextual_closure(t, R)
    assert found is not None
    base, peel = found
    assert cospan_iso(compose_cospans(base.a, peel), t.a) is not None
    assert cospan_iso(compose_cospans(base.b, peel), t.b) is not None
