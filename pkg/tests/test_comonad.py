import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from ppml.comonad import (NotAChain, check_comonad_laws, comultiplication, ef_unravel,
                          lift_morphism, to_dot, unravel, unravel_at_chain, unravelling_to_dict)
from ppml.core import (Homomorphism, PpTree, canonical_code, find_homomorphism,
                       identity, validate_pp_tree)
from ppml.games import decide_graded_bisim
from ppml.generators import random_pp_tree, random_structure

from conftest import SIG_EPS, structures
from oracles import chains_from


def test_unravel_examples(A, B):
    u0 = unravel(A, 0)
    assert len(u0) == 1 and u0.underlying.relations["S"] == frozenset()
    u = unravel(A, 2)
    assert len(u) == 5
    s_chains = {(u.node_chain[x], u.node_chain[y]) for x, y in u.underlying.relations["S"]}
    assert s_chains == {((0,), (0, 3)), ((0,), (0, 4))}
    v = unravel(B, 2)
    assert len(v) == 4
    assert {(v.node_chain[x], v.node_chain[y]) for x, y in v.underlying.relations["S"]} == \
        {((0,), (0, 2))}


@settings(max_examples=100, deadline=None)
@given(structures(max_n=4), st.integers(0, 3))
def test_unravel_nodes_are_the_chains(a, k):
    u = unravel(a, k)
    assert sorted(u.node_chain) == sorted(chains_from(a, k + 1))
    assert u.node_chain[0] == (a.basepoint,)
    assert [len(c) for c in u.node_chain] == sorted(len(c) for c in u.node_chain)
    assert isinstance(validate_pp_tree(u.underlying), PpTree)
    assert u.tree.tree_height <= k
    for v in range(1, len(u)):
        assert u.node_chain[u.tree.parent[v]] == u.node_chain[v][:-1]


def test_unravel_at_chain_examples(A):
    assert unravel_at_chain(A, [0], 2).node_chain == unravel(A, 2).node_chain
    assert unravel_at_chain(A, [0], 2).underlying == unravel(A, 2).underlying
    u = unravel_at_chain(A, [0, 3], 1)
    assert u.node_chain == ((0,), (0, 3))
    with pytest.raises(NotAChain):
        unravel_at_chain(A, [3, 0], 1)


@settings(max_examples=80, deadline=None)
@given(structures(max_n=4), st.integers(0, 2), st.integers(0, 10 ** 6))
def test_unravel_at_chain_is_a_substructure(a, k, seed):
    chains = chains_from(a, 3)
    s = random.Random(seed).choice(chains)
    u = unravel_at_chain(a, s, k)
    big = unravel(a, k + len(s) - 1)
    assert set(u.node_chain) <= set(big.node_chain)
    for c in u.node_chain:
        n = min(len(c), len(s))
        assert c[:n] == s[:n]
    emb = Homomorphism(u.underlying, big.underlying, tuple(big.node_of[c] for c in u.node_chain))
    assert emb.is_embedding


@settings(max_examples=60, deadline=None)
@given(structures(max_n=4), structures(max_n=3), st.integers(0, 2))
def test_lift_morphism(a, b, k):
    assert lift_morphism(identity(a), k).mapping == tuple(range(len(unravel(a, k))))
    h = find_homomorphism(a, b)
    if h is None:
        return
    lifted = lift_morphism(h, k)
    assert lifted(0) == 0
    u, v = unravel(a, k), unravel(b, k)
    for x, c in enumerate(u.node_chain):
        assert v.node_chain[lifted(x)][-1] == h(c[-1])  # naturality of the counit


def test_comultiplication_and_counit(A):
    u = unravel(A, 2)
    uu, delta = comultiplication(u)
    x = u.node_of[(0, 3)]
    assert uu.node_chain[delta(x)] == (u.node_of[(0,)], x)
    assert u.counit()(x) == 3


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_laws_on_fixtures(A, B, k):
    assert check_comonad_laws(A, k).ok
    assert check_comonad_laws(B, k).ok


@settings(max_examples=60, deadline=None)
@given(structures(max_n=4), st.integers(0, 3))
def test_idempotence_by_codes(a, k):
    u = unravel(a, k)
    assert canonical_code(unravel(u.underlying, k).tree) == canonical_code(u.tree)


def test_coalgebras_are_pp_trees():
    """A structure is a pp-tree of height <= k iff the counit of its
    k-unravelling is an isomorphism."""
    rng = random.Random(3)
    cases = [random_pp_tree(rng, SIG_EPS, 10).underlying for _ in range(150)]
    cases += [random_structure(rng, SIG_EPS, rng.randint(1, 4)) for _ in range(150)]
    seen = {True: 0, False: 0}
    for a in cases:
        t = validate_pp_tree(a)
        for k in range(4):
            tree_ok = isinstance(t, PpTree) and t.tree_height <= k
            u = unravel(a, k)
            assert u.counit().is_isomorphism == tree_ok
            if tree_ok:
                assert canonical_code(u.tree) == canonical_code(t)
            seen[tree_ok] += 1
    assert min(seen.values()) > 50


@settings(max_examples=60, deadline=None)
@given(structures(max_n=4), st.integers(0, 3))
def test_bisimilar_companion(a, k):
    assert decide_graded_bisim(a, unravel(a, k).underlying, k)


def test_ef_examples(A):
    ef, inc = ef_unravel(A, 2)
    assert ef.universe_size == 30
    assert inc.is_injective
    s_pairs = [(x, y) for x, y in unravel(A, 1).underlying.relations["S"]]
    assert len(s_pairs) == 2
    for x, y in s_pairs:
        assert (inc(x), inc(y)) in ef.relations["S"]
    ef1, inc1 = ef_unravel(A, 1)
    assert ef1.universe_size == 5
    assert inc1.mapping == (0,) and inc1.is_injective


def test_ef_inclusion_not_strong(A):
    ef, inc = ef_unravel(A, 2)
    # ([a,a3], [a]) is S-related in E_2 (comparable, (a3, a) in S) but not in C_1
    assert not inc.is_strong


@settings(max_examples=40, deadline=None)
@given(structures(max_n=3), st.integers(1, 3))
def test_ef_relations_match_definition(a, k):
    ef, inc = ef_unravel(a, k)
    seqs = [s for length in range(1, k + 1)
            for s in itertools.product(range(a.universe_size), repeat=length)]
    assert ef.universe_size == len(seqs)

    def comparable(x, y):
        n = min(len(x), len(y))
        return x[:n] == y[:n]

    for name, r in a.signature.items():
        expected = {t for t in itertools.product(range(len(seqs)), repeat=r)
                    if tuple(seqs[i][-1] for i in t) in a.relations[name]
                    and all(comparable(seqs[i], seqs[j]) for i in t for j in t)}
        assert ef.relations[name] == expected


def test_export(A):
    u = unravel(A, 2)
    doc = unravelling_to_dict(u)
    assert doc["chains"]["3"] == [0, 3]
    dot = to_dot(u.tree, u.node_chain)
    assert dot.startswith("digraph") and "S" in dot
