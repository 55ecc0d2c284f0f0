import random

import pytest
from hypothesis import given, settings, strategies as st

from ppml.core import Signature, UnknownSymbol
from ppml.generators import random_datagl_formula, random_formula
from ppml.semantics import eval_ppml
from ppml.syntax import (BOT, TOP, And, Atom, Diamond, DiamondEq, DiamondNeq, GradedDiamond,
                         Not, ParseError, conj, modal_debt, modal_depth, parse, parse_path,
                         path_to_text, rewrite_well_nested, to_text)

from conftest import structures

S, p = Atom("S"), Atom("p")


@pytest.mark.parametrize("text, ast", [
    ("<>(S & <>S)", Diamond(And(S, Diamond(S)))),
    ("T", TOP),
    ("F", BOT),
    ("!<3>p", Not(GradedDiamond(3, p))),
    ("p & S & p", And(And(p, S), p)),
    ("p & (S & p)", And(p, And(S, p))),
    ("!p & S", And(Not(p), S)),
    ("<> <>  p", Diamond(Diamond(p))),
])
def test_parse_examples(text, ast):
    assert parse(text) == ast


def test_parse_datagl():
    assert parse("<=>p & <!=>!q", "datagl") == And(DiamondEq(p), DiamondNeq(Not(Atom("q"))))
    with pytest.raises(ParseError):
        parse("<>p", "datagl")
    with pytest.raises(ParseError):
        parse("<=>p", "ppml")


@pytest.mark.parametrize("text, pos", [("p &", 3), ("(p", 2), ("p q", 2), ("<0>p", 0),
                                       ("p $ q", 2), ("E", 0)])
def test_parse_errors_report_position(text, pos):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.position == pos


def test_print_canonical_spacing():
    assert to_text(parse("<>( S&<>S )")) == "<>(S & <>S)"
    assert to_text(parse("!  <3> p")) == "!<3>p"


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(0, 3), st.integers(1, 12))
def test_parse_print_round_trip(seed, depth, size):
    rng = random.Random(seed)
    f = random_formula(rng, ["p", "S", "R_="], depth, size, graded=True)
    assert parse(to_text(f)) == f
    g = random_datagl_formula(rng, ["p", "q"], depth, size)
    assert parse(to_text(g), "datagl") == g


def test_path_syntax():
    path = parse_path("<eps= [p] [q & <=>p]>")
    assert path.equal and path.tests == (p, And(Atom("q"), DiamondEq(p)))
    assert parse_path(path_to_text(path)) == path
    assert not parse_path("<eps!= [p]>").equal
    with pytest.raises(ParseError):
        parse_path("<eps= >")


def test_modal_depth_examples():
    assert modal_depth(TOP) == 0
    assert modal_depth(Diamond(And(S, Diamond(S)))) == 2
    assert modal_depth(Not(GradedDiamond(5, p))) == 1


def test_modal_debt_examples():
    sig = Signature({"E": 2, "R": 3, "S": 2})
    assert modal_debt(Atom("R"), sig) == 2
    assert modal_debt(Diamond(Diamond(S)), sig) == 0
    assert modal_debt(TOP, sig) == 0
    assert modal_debt(Diamond(Atom("R")), sig) == 1
    with pytest.raises(UnknownSymbol):
        modal_debt(Atom("q"), sig)


def test_rewrite_examples():
    sig = Signature({"E": 2, "S": 2})
    assert rewrite_well_nested(S, sig) == BOT
    assert rewrite_well_nested(And(S, Diamond(S)), sig) == And(BOT, Diamond(S))
    assert rewrite_well_nested(TOP, sig) == TOP


SIG_R3 = Signature({"E": 2, "p": 1, "S": 2, "R": 3})


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10 ** 6), structures(SIG_R3, max_n=4))
def test_rewrite_is_well_nested_and_equivalent(seed, a):
    rng = random.Random(seed)
    f = random_formula(rng, ["p", "S", "R"], 3, 8, graded=True)
    g = rewrite_well_nested(f, SIG_R3)
    assert modal_debt(g, SIG_R3) == 0
    for x in range(a.universe_size):
        assert eval_ppml(a, (x,), f) == eval_ppml(a, (x,), g)


def test_conj_is_right_folded():
    assert conj([]) == TOP
    assert conj([p]) == p
    assert conj([p, S, TOP]) == And(p, And(S, TOP))
