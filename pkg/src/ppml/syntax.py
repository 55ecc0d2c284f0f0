"""Formula ASTs, the text grammar, and syntactic measures.

PPML, graded PPML and DataGL share the propositional node classes; FOL adds
``Rel`` and ``Exists``.  Conjunction is binary; lists are right-folded.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Union

from .core import PPMLError, Signature, UnknownSymbol


class ParseError(PPMLError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bot:
    pass


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Not:
    child: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Diamond:
    child: "Formula"


@dataclass(frozen=True)
class GradedDiamond:
    count: int
    child: "Formula"

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("graded diamond count must be at least 1")


@dataclass(frozen=True)
class DiamondEq:
    child: "Formula"


@dataclass(frozen=True)
class DiamondNeq:
    child: "Formula"


@dataclass(frozen=True)
class Rel:
    """FOL atom ``name(x_i, ...)``."""
    name: str
    args: tuple[int, ...]


@dataclass(frozen=True)
class Exists:
    var: int
    child: "Formula"


Formula = Union[Top, Bot, Atom, Not, And, Diamond, GradedDiamond, DiamondEq, DiamondNeq, Rel, Exists]
_MODAL = (Diamond, GradedDiamond, DiamondEq, DiamondNeq)

TOP = Top()
BOT = Bot()


@dataclass(frozen=True)
class CdxpPath:
    """``<eps = [phi_1] ... [phi_n]>`` (or ``!=``) over DataGL tests."""
    equal: bool
    tests: tuple

    def __post_init__(self):
        if not self.tests:
            raise ValueError("a path needs at least one test")


def conj(parts: Iterable[Formula]) -> Formula:
    """Right-folded conjunction; Top when empty."""
    parts = list(parts)
    if not parts:
        return TOP
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = And(p, out)
    return out


def disj(a: Formula, b: Formula) -> Formula:
    return Not(And(Not(a), Not(b)))


def diamond_power(j: int, f: Formula) -> Formula:
    for _ in range(j):
        f = Diamond(f)
    return f


# -- printing ----------------------------------------------------------------

def _wrap(f: Formula) -> str:
    s = to_text(f)
    return f"({s})" if isinstance(f, And) else s


def to_text(f: Formula) -> str:
    """Canonical text; ``parse(to_text(f)) == f``."""
    if isinstance(f, Top):
        return "T"
    if isinstance(f, Bot):
        return "F"
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Not):
        return "!" + _wrap(f.child)
    if isinstance(f, And):
        return f"{to_text(f.left)} & {_wrap(f.right)}"
    if isinstance(f, Diamond):
        return "<>" + _wrap(f.child)
    if isinstance(f, GradedDiamond):
        return f"<{f.count}>" + _wrap(f.child)
    if isinstance(f, DiamondEq):
        return "<=>" + _wrap(f.child)
    if isinstance(f, DiamondNeq):
        return "<!=>" + _wrap(f.child)
    if isinstance(f, Rel):
        return f"{f.name}({','.join(f'x{i}' for i in f.args)})"
    if isinstance(f, Exists):
        return f"exists x{f.var} ({to_text(f.child)})"
    raise TypeError(f"not a formula: {f!r}")


def path_to_text(p: CdxpPath) -> str:
    op = "=" if p.equal else "!="
    return f"<eps{op} " + " ".join(f"[{to_text(t)}]" for t in p.tests) + ">"


# -- parsing -----------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<graded><\d+>)|(?P<op><!=>|<=>|<>|!|&|\(|\)|\[|\])|(?P<ident>[A-Za-z_][A-Za-z0-9_]*=?))")


def _tokens(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastgroup)
        out.append((m.lastgroup, m.group(m.lastgroup), start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, dialect: str):
        if dialect not in ("ppml", "datagl"):
            raise ValueError(f"unknown dialect {dialect!r}")
        self.toks = _tokens(text)
        self.i = 0
        self.dialect = dialect

    def peek(self) -> tuple[str, str, int]:
        return self.toks[self.i]

    def take(self) -> tuple[str, str, int]:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value: str) -> None:
        kind, v, pos = self.take()
        if v != value:
            raise ParseError(f"expected {value!r}, found {v or 'end of input'!r}", pos)

    def formula(self) -> Formula:
        f = self.unary()
        while self.peek()[1] == "&":
            self.take()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        kind, v, pos = self.take()
        ppml = self.dialect == "ppml"
        if v == "!":
            return Not(self.unary())
        if v == "<>" and ppml:
            return Diamond(self.unary())
        if kind == "graded" and ppml:
            n = int(v[1:-1])
            if n < 1:
                raise ParseError("graded diamond count must be at least 1", pos)
            return GradedDiamond(n, self.unary())
        if v == "<=>" and not ppml:
            return DiamondEq(self.unary())
        if v == "<!=>" and not ppml:
            return DiamondNeq(self.unary())
        if v == "(":
            f = self.formula()
            self.expect(")")
            return f
        if kind == "ident":
            if v == "T":
                return TOP
            if v == "F":
                return BOT
            if v == "E":
                raise ParseError("E is not an atom", pos)
            return Atom(v)
        found = v or "end of input"
        raise ParseError(f"unexpected {found!r} in {self.dialect} formula", pos)


def parse(text: str, dialect: str = "ppml") -> Formula:
    p = _Parser(text, dialect)
    f = p.formula()
    kind, v, pos = p.peek()
    if kind != "end":
        raise ParseError(f"trailing input {v!r}", pos)
    return f


def parse_path(text: str) -> CdxpPath:
    """Parse ``<eps= [p] [q]>`` / ``<eps!= [p]>``; tests are DataGL formulas."""
    m = re.fullmatch(r"\s*<\s*eps\s*(=|!=)(.*)>\s*", text, re.S)
    if not m:
        raise ParseError("expected <eps= [..] ...> or <eps!= [..] ...>", 0)
    body = m.group(2)
    offset = m.start(2)
    tests = []
    pos = 0
    while True:
        while pos < len(body) and body[pos].isspace():
            pos += 1
        if pos == len(body):
            break
        if body[pos] != "[":
            raise ParseError("expected '['", offset + pos)
        depth, end = 0, pos
        while end < len(body):
            if body[end] == "[":
                depth += 1
            elif body[end] == "]":
                depth -= 1
                if depth == 0:
                    break
            end += 1
        if end == len(body):
            raise ParseError("unclosed '['", offset + pos)
        tests.append(parse(body[pos + 1:end], "datagl"))
        pos = end + 1
    if not tests:
        raise ParseError("a path needs at least one test", offset)
    return CdxpPath(m.group(1) == "=", tuple(tests))


# -- measures ----------------------------------------------------------------

def subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    for c in children(f):
        yield from subformulas(c)


def children(f: Formula) -> tuple:
    if isinstance(f, And):
        return (f.left, f.right)
    if isinstance(f, (Not, Diamond, GradedDiamond, DiamondEq, DiamondNeq, Exists)):
        return (f.child,)
    return ()


def atoms(f: Formula) -> list[str]:
    """Atom names in first-occurrence order."""
    seen: dict[str, None] = {}
    for g in subformulas(f):
        if isinstance(g, Atom):
            seen.setdefault(g.name)
    return list(seen)


def modal_depth(f: Formula) -> int:
    if isinstance(f, _MODAL):
        return 1 + modal_depth(f.child)
    if isinstance(f, Exists):
        return 1 + modal_depth(f.child)
    return max((modal_depth(c) for c in children(f)), default=0)


quantifier_rank = modal_depth


def size(f: Formula) -> int:
    return 1 + sum(size(c) for c in children(f))


def modal_debt(f: Formula, sig: Signature) -> int:
    """How many enclosing diamonds the atoms of ``f`` still need."""
    if isinstance(f, Atom):
        if f.name == "E":
            raise UnknownSymbol("E")
        return sig.arity(f.name) - 1
    if isinstance(f, (Diamond, GradedDiamond)):
        return max(0, modal_debt(f.child, sig) - 1)
    return max((modal_debt(c, sig) for c in children(f)), default=0)


def rewrite_well_nested(f: Formula, sig: Signature, nesting: int = 0) -> Formula:
    """Replace atoms guarded by fewer than arity-1 diamonds with Bot."""
    if isinstance(f, Atom):
        if f.name == "E":
            raise UnknownSymbol("E")
        return BOT if nesting < sig.arity(f.name) - 1 else f
    if isinstance(f, Not):
        return Not(rewrite_well_nested(f.child, sig, nesting))
    if isinstance(f, And):
        return And(rewrite_well_nested(f.left, sig, nesting),
                   rewrite_well_nested(f.right, sig, nesting))
    if isinstance(f, Diamond):
        return Diamond(rewrite_well_nested(f.child, sig, nesting + 1))
    if isinstance(f, GradedDiamond):
        return GradedDiamond(f.count, rewrite_well_nested(f.child, sig, nesting + 1))
    return f


def is_positive(f: Formula) -> bool:
    return all(isinstance(g, (Top, Atom, And, Diamond)) for g in subformulas(f))


def signature_for(f: Formula, arities: dict[str, int] | None = None) -> Signature:
    """E plus the atoms of ``f``; undeclared atoms default to arity 1."""
    arities = dict(arities or {})
    sym = {"E": 2}
    for name, r in arities.items():
        sym[name] = r
    for name in atoms(f):
        sym.setdefault(name, 1)
    return Signature(sym)
