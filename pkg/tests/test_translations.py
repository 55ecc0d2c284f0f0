import random

import pytest
from hypothesis import given, settings, strategies as st

from ppml.comonad import unravel
from ppml.core import PointedStructure, Signature, StructureError, as_pp_tree
from ppml.generators import (all_structures, random_datagl_formula, random_datagl_model,
                             random_formula, random_pp_tree)
from ppml.semantics import DataKripkeModel, eval_cdxp, eval_datagl, eval_fol, eval_ppml
from ppml.syntax import (BOT, TOP, And, Atom, CdxpPath, Diamond, DiamondEq, DiamondNeq, Exists,
                         GradedDiamond, Not, modal_depth, parse_path, to_text)
from ppml.translations import (REQ, ConditionStarViolated, TranslationError, cdxp_signature,
                               datagl_signature, datagl_to_structure, fol_variables, k_inverse,
                               k_translate, phi_k, standard_translation, structure_to_datagl,
                               substitute, tilde_signature, tr1, tr1_cdxp, tr2, underline_k)

from conftest import SIG_EPS, SIG_S, structures

p, q, S, EQ = Atom("p"), Atom("q"), Atom("S"), Atom(REQ)
SIG_R3 = Signature({"E": 2, "p": 1, "S": 2, "R": 3})
DGL = datagl_signature(["p", "q"])


def quantifier_rank(f):
    if isinstance(f, Exists):
        return 1 + quantifier_rank(f.child)
    if isinstance(f, Not):
        return quantifier_rank(f.child)
    if isinstance(f, And):
        return max(quantifier_rank(f.left), quantifier_rank(f.right))
    return 0


def test_standard_translation_examples():
    assert to_text(standard_translation(Diamond(p), SIG_EPS)) == "exists x1 (E(x0,x1) & p(x1))"
    assert standard_translation(S, SIG_EPS) == BOT
    assert to_text(standard_translation(Diamond(S), SIG_EPS)) == \
        "exists x1 (E(x0,x1) & S(x0,x1))"
    assert to_text(standard_translation(Diamond(Diamond(S)), SIG_EPS)) == \
        "exists x1 (E(x0,x1) & exists x0 (E(x1,x0) & S(x1,x0)))"
    with pytest.raises(TranslationError):
        standard_translation(GradedDiamond(2, p), SIG_EPS)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10 ** 6), structures(SIG_R3, max_n=5))
def test_standard_translation_agrees(seed, a):
    f = random_formula(random.Random(seed), ["p", "S", "R"], 3, 9)
    g = standard_translation(f, SIG_R3)
    assert fol_variables(g) <= {0, 1, 2}
    assert quantifier_rank(g) == modal_depth(f)
    for x in range(a.universe_size):
        assert eval_ppml(a, [x], f) == eval_fol(a, {0: x}, g)


def test_tr1_examples():
    assert tr1(DiamondEq(p)) == Diamond(And(EQ, p))
    assert tr1(p) == p
    assert tr1(DiamondNeq(Not(p))) == Diamond(And(Not(EQ), Not(p)))


def test_tr2_examples():
    assert tr2(EQ) == BOT
    assert tr2(Diamond(p)) == Not(And(Not(DiamondEq(p)), Not(DiamondNeq(p))))
    assert tr2(And(p, Not(q))) == And(p, Not(q))
    assert tr2(Diamond(And(EQ, p))) == \
        Not(And(Not(DiamondEq(And(TOP, p))), Not(DiamondNeq(And(BOT, p)))))
    with pytest.raises(TranslationError):
        tr2(GradedDiamond(2, p))


def test_substitute_leaves_guarded_occurrences():
    f = And(EQ, Diamond(EQ))
    assert substitute(f, TOP) == And(TOP, Diamond(EQ))


def test_datagl_to_structure_examples():
    m = DataKripkeModel(2, {(0, 1)}, (5, 5), (frozenset({"p"}), frozenset()), frozenset({"p"}))
    a = datagl_to_structure(m, 0)
    assert a.relations[REQ] == {(0, 0), (0, 1), (1, 0), (1, 1)}
    assert a.relations["p"] == {(0,)}
    one = datagl_to_structure(DataKripkeModel(1, set(), (0,), (frozenset(),)), 0)
    assert one.relations[REQ] == {(0, 0)} and one.relations["E"] == frozenset()


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 6))
def test_datagl_round_trip(seed, n):
    rng = random.Random(seed)
    m = random_datagl_model(rng, n, data_values=3)
    w = rng.randrange(n)
    a = datagl_to_structure(m, w)
    m2, w2 = structure_to_datagl(a)
    assert w2 == w and datagl_to_structure(m2, w2) == a


def test_inverse_uses_fresh_data_values():
    # classes {0, 2} and {1}; the second class must not reuse a taken value
    eq = [(0, 0), (1, 1), (2, 2), (0, 2), (2, 0)]
    a = PointedStructure(DGL, 3, {"E": [(0, 1)], REQ: eq}, 0)
    m, _ = structure_to_datagl(a)
    assert m.data_of == (0, 1, 0)


@pytest.mark.parametrize("rels, message", [
    ({"E": [(0, 1)], REQ: [(0, 0), (1, 1), (0, 1)]}, "symmetric"),
    ({"E": [(0, 0)], REQ: [(0, 0), (1, 1)]}, "reflexive"),
    ({"E": [(0, 1), (1, 0)], REQ: [(0, 0), (1, 1)]}, "transitive"),
    ({"E": [(0, 1)], REQ: [(0, 0)]}, "R_= is not reflexive"),
])
def test_structure_to_datagl_rejections(rels, message):
    with pytest.raises(StructureError, match=message):
        structure_to_datagl(PointedStructure(DGL, 2, rels, 0))


def test_structure_to_datagl_rejects_intransitive_e():
    a = PointedStructure(DGL, 3, {"E": [(0, 1), (1, 2)], REQ: [(x, x) for x in range(3)]}, 0)
    with pytest.raises(StructureError, match="transitive"):
        structure_to_datagl(a)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 6))
def test_tr1_and_tr2_preserve_truth(seed, n):
    rng = random.Random(seed)
    m = random_datagl_model(rng, n)
    f = random_datagl_formula(rng, ["p", "q"], 3, 8)
    g = random_formula(rng, ["p", "q", REQ], 3, 8)
    assert modal_depth(tr1(f)) == modal_depth(f)
    assert modal_depth(tr2(g)) == modal_depth(g)
    for w in range(n):
        a = datagl_to_structure(m, w)
        assert eval_datagl(m, w, f) == eval_ppml(a, [w], tr1(f))
        assert eval_ppml(a, [w], g) == eval_datagl(m, w, tr2(g))


SIG_DGL_P = datagl_signature(["p"])


def test_substitution_lemma_on_small_structures():
    rng = random.Random(21)
    corpus = [a for n in (1, 2) for a in all_structures(SIG_DGL_P, n)
              if a.relations["E"]]
    formulas = [random_formula(rng, ["p", REQ], 2, rng.randint(1, 7)) for _ in range(60)]
    checked = 0
    for a in corpus[::3]:
        for f in formulas:
            top, bot = substitute(f, TOP), substitute(f, BOT)
            for x, y in a.relations["E"]:
                want = eval_ppml(a, [y], top) if (x, y) in a.relations[REQ] \
                    else eval_ppml(a, [y], bot)
                assert eval_ppml(a, [x, y], f) == want
                checked += 1
    assert checked > 1000


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10 ** 6), structures(SIG_DGL_P, max_n=4))
def test_substitution_lemma_random(seed, a):
    f = random_formula(random.Random(seed), ["p", REQ], 2, 8)
    for x, y in a.relations["E"]:
        value = TOP if (x, y) in a.relations[REQ] else BOT
        assert eval_ppml(a, [x, y], f) == eval_ppml(a, [y], substitute(f, value))


def test_tr1_cdxp_examples():
    assert tr1_cdxp(parse_path("<eps= [p]>")) == Diamond(And(p, EQ))
    assert tr1_cdxp(parse_path("<eps= [p] [q]>")) == Diamond(And(p, Diamond(And(q, Atom("R_3")))))
    assert tr1_cdxp(parse_path("<eps!= [p]>")) == Diamond(And(p, Not(EQ)))
    with pytest.raises(TranslationError):
        tr1_cdxp(parse_path("<eps= [p] [q]>"), DGL)
    assert tr1_cdxp(parse_path("<eps= [p] [q]>"), cdxp_signature(["p", "q"], 2))


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 6), st.integers(1, 3), st.booleans())
def test_tr1_cdxp_agrees_with_path_semantics(seed, n, length, equal):
    rng = random.Random(seed)
    m = random_datagl_model(rng, n, data_values=2)
    path = CdxpPath(equal, tuple(random_datagl_formula(rng, ["p", "q"], 1, 3)
                                 for _ in range(length)))
    f = tr1_cdxp(path)
    for w in range(n):
        a = datagl_to_structure(m, w, cdxp_arity=length + 1)
        assert eval_cdxp(m, w, path) == eval_ppml(a, [w], f)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 5))
def test_single_step_path_is_diamond_eq(seed, n):
    rng = random.Random(seed)
    m = random_datagl_model(rng, n)
    test = random_datagl_formula(rng, ["p", "q"], 1, 4)
    f, g = tr1_cdxp(CdxpPath(True, (test,))), tr1(DiamondEq(test))
    for w in range(n):
        a = datagl_to_structure(m, w)
        assert eval_ppml(a, [w], f) == eval_ppml(a, [w], g)


def test_k_translate_examples(A):
    u = unravel(A, 2)
    kt = k_translate(u.tree)
    assert {u.node_chain[v] for (v,) in kt.underlying.relations["S"]} == {(0, 3), (0, 4)}
    assert kt.underlying.signature == tilde_signature(SIG_S)
    single = as_pp_tree(PointedStructure(SIG_EPS, 1, {"p": [(0,)]}, 0))
    assert k_translate(single).underlying.relations == single.underlying.relations
    assert k_inverse(kt, SIG_S).underlying == u.underlying


def test_k_inverse_examples():
    bad = as_pp_tree(PointedStructure(tilde_signature(SIG_S), 1, {"S": [(0,)]}, 0))
    with pytest.raises(ConditionStarViolated) as info:
        k_inverse(bad, SIG_S)
    assert (info.value.node, info.value.symbol) == (0, "S")
    uni = Signature({"E": 2})
    t = as_pp_tree(PointedStructure(uni, 2, {"E": [(0, 1)]}, 0))
    assert k_inverse(t, uni).underlying == t.underlying


def test_underline_k_examples(A):
    u = underline_k(A)
    assert u.relations["S"] == {(3,), (4,)}
    flat = PointedStructure(SIG_EPS, 2, {"S": [(0, 1), (1, 1)], "p": [(1,)]}, 0)
    assert underline_k(flat).relations["S"] == frozenset()
    assert underline_k(flat).relations["p"] == frozenset()


def test_phi_k_examples():
    assert phi_k(SIG_S) == Not(S)
    t = Atom("T")
    assert phi_k(Signature({"E": 2, "T": 3})) == And(Not(t), Not(Diamond(t)))
    assert phi_k(Signature({"E": 2})) == TOP


def test_k_round_trip_and_underline():
    rng = random.Random(31)
    for _ in range(200):
        t = random_pp_tree(rng, SIG_R3, 8)
        kt = k_translate(t)
        assert k_inverse(kt, SIG_R3).underlying == t.underlying
        assert underline_k(t.underlying) == kt.underlying


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_k_preserves_truth(seed):
    rng = random.Random(seed)
    t = random_pp_tree(rng, SIG_R3, 8)
    kt = k_translate(t).underlying
    f = random_formula(rng, ["p", "S", "R"], 3, 9)
    for v in range(t.size):
        chain = t.root_chain(v)
        assert eval_ppml(t.underlying, chain, f) == eval_ppml(kt, [v], f)


def test_phi_k_characterizes_the_image():
    rng = random.Random(41)
    flat = tilde_signature(SIG_R3)
    phi = phi_k(SIG_R3)
    seen = set()
    for _ in range(400):
        t = random_pp_tree(rng, flat, 8, max_height=3, density=0.25)
        try:
            k_inverse(t, SIG_R3)
            accepted = True
        except ConditionStarViolated:
            accepted = False
        assert eval_ppml(t.underlying, [t.root], phi) == accepted
        seen.add(accepted)
    assert seen == {True, False}
