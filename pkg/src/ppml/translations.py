"""Maps between logics and between model classes.

* ``standard_translation``: PPML into FOL with ``N`` variables reused cyclically.
* ``tr1`` / ``tr2``: DataGL into PPML over ``{E, R_=} + PROP`` and back.
* ``datagl_to_structure`` / ``structure_to_datagl``: the functor ``t`` and its inverse.
* ``k_translate`` / ``k_inverse`` / ``underline_k`` / ``phi_k``: flattening
  every non-E symbol to a unary one.
"""

from __future__ import annotations

import itertools

from .core import (PPMLError, PointedStructure, PpTree, Signature, StructureError, UnknownSymbol,
                   as_pp_tree)
from .semantics import DataKripkeModel, InvalidModel
from .syntax import (BOT, TOP, And, Atom, Bot, CdxpPath, Diamond, DiamondEq, DiamondNeq, Exists,
                     Formula, GradedDiamond, Not, Rel, Top, conj, diamond_power, disj)

REQ = "R_="


class TranslationError(PPMLError):
    pass


# -- standard translation -----------------------------------------------------

def standard_translation(f: Formula, sig: Signature) -> Formula:
    n = sig.max_arity

    def st(xs: tuple, g: Formula) -> Formula:
        if isinstance(g, (Top, Bot)):
            return g
        if isinstance(g, Atom):
            if g.name == "E":
                raise UnknownSymbol("E")
            r = sig.arity(g.name)
            return Rel(g.name, xs[len(xs) - r:]) if r <= len(xs) else BOT
        if isinstance(g, Not):
            return Not(st(xs, g.child))
        if isinstance(g, And):
            return And(st(xs, g.left), st(xs, g.right))
        if isinstance(g, Diamond):
            x = xs[-1]
            y = (x + 1) % n
            return Exists(y, And(Rel("E", (x, y)), st(xs[len(xs) - (n - 1):] + (y,), g.child)))
        if isinstance(g, GradedDiamond):
            raise TranslationError("graded diamonds have no standard translation here")
        raise TranslationError(f"not a PPML formula: {g!r}")

    return st((0,), f)


def fol_variables(f: Formula) -> set[int]:
    if isinstance(f, Rel):
        return set(f.args)
    if isinstance(f, Exists):
        return {f.var} | fol_variables(f.child)
    if isinstance(f, Not):
        return fol_variables(f.child)
    if isinstance(f, And):
        return fol_variables(f.left) | fol_variables(f.right)
    return set()


# -- DataGL ---------------------------------------------------------------------

def datagl_signature(props) -> Signature:
    return Signature([("E", 2), (REQ, 2)] + [(p, 1) for p in sorted(props)])


def tr1(f: Formula) -> Formula:
    if isinstance(f, (Top, Bot, Atom)):
        return f
    if isinstance(f, Not):
        return Not(tr1(f.child))
    if isinstance(f, And):
        return And(tr1(f.left), tr1(f.right))
    if isinstance(f, DiamondEq):
        return Diamond(And(Atom(REQ), tr1(f.child)))
    if isinstance(f, DiamondNeq):
        return Diamond(And(Not(Atom(REQ)), tr1(f.child)))
    raise TranslationError(f"not a DataGL formula: {f!r}")


def substitute(f: Formula, value: Formula) -> Formula:
    """``f[value]``: replace R_= occurrences not under a diamond."""
    if isinstance(f, Atom):
        return value if f.name == REQ else f
    if isinstance(f, Not):
        return Not(substitute(f.child, value))
    if isinstance(f, And):
        return And(substitute(f.left, value), substitute(f.right, value))
    return f


def tr2(f: Formula) -> Formula:
    if isinstance(f, (Top, Bot)):
        return f
    if isinstance(f, Atom):
        if f.name == "E":
            raise TranslationError("E is not an atom")
        return BOT if f.name == REQ else f
    if isinstance(f, Not):
        return Not(tr2(f.child))
    if isinstance(f, And):
        return And(tr2(f.left), tr2(f.right))
    if isinstance(f, Diamond):
        return disj(DiamondEq(tr2(substitute(f.child, TOP))),
                    DiamondNeq(tr2(substitute(f.child, BOT))))
    raise TranslationError(f"not a PPML formula over the DataGL signature: {f!r}")


def cdxp_relation(n: int) -> str:
    """Name of the arity-``n`` data-comparison relation (R_2 is R_=)."""
    return REQ if n == 2 else f"R_{n}"


def cdxp_signature(props, max_tests: int) -> Signature:
    syms = [("E", 2), (REQ, 2)] + [(cdxp_relation(j), j) for j in range(3, max_tests + 2)]
    return Signature(syms + [(p, 1) for p in sorted(props)])


def tr1_cdxp(p: CdxpPath, sig: Signature | None = None) -> Formula:
    n = len(p.tests)
    last = cdxp_relation(n + 1)
    if sig is not None and (last not in sig or sig.arity(last) != n + 1):
        raise TranslationError(f"signature lacks {last} of arity {n + 1}")
    tail = Atom(last) if p.equal else Not(Atom(last))
    body = Diamond(And(tr1(p.tests[-1]), tail))
    for test in reversed(p.tests[:-1]):
        body = Diamond(And(tr1(test), body))
    return body


def datagl_to_structure(m: DataKripkeModel, w: int, cdxp_arity: int = 2) -> PointedStructure:
    """``t(M, w)``; with ``cdxp_arity > 2`` also adds ``R_3 .. R_n``."""
    m.validate()
    if not 0 <= w < m.world_count:
        raise InvalidModel(f"world {w} out of range")
    n = m.world_count
    d = m.data_of
    rels: dict[str, list] = {"E": sorted(m.edges)}
    rels[REQ] = [(x, y) for x in range(n) for y in range(n) if d[x] == d[y]]
    for p in m.propositions:
        rels[p] = [(v,) for v in range(n) if p in m.props_of[v]]
    extra = {}
    for r in range(3, cdxp_arity + 1):
        name = cdxp_relation(r)
        extra[name] = r
        rels[name] = [t for t in itertools.product(range(n), repeat=r) if d[t[0]] == d[t[-1]]]
    sig = datagl_signature(m.propositions).extend(extra)
    return PointedStructure(sig, n, rels, w)


def structure_to_datagl(a: PointedStructure) -> tuple[DataKripkeModel, int]:
    sig = a.signature
    if REQ not in sig or sig.arity(REQ) != 2:
        raise StructureError("signature lacks R_= of arity 2")
    props = [name for name in sig.sigma_bar if name != REQ]
    for p in props:
        if sig.arity(p) != 1:
            raise StructureError(f"{p} is not a proposition")
    n = a.universe_size
    e = a.relations["E"]
    for x, y in sorted(e):
        if x == y:
            raise StructureError(f"E is reflexive at {(x, y)}")
    for x, y in sorted(e):
        for z in a.successors[y]:
            if (x, z) not in e:
                raise StructureError(f"E is not transitive: {(x, y)}, {(y, z)}")
    eq = a.relations[REQ]
    for x in range(n):
        if (x, x) not in eq:
            raise StructureError(f"R_= is not reflexive at {(x, x)}")
    for x, y in sorted(eq):
        if (y, x) not in eq:
            raise StructureError(f"R_= is not symmetric: {(x, y)}")
        for z in range(n):
            if (y, z) in eq and (x, z) not in eq:
                raise StructureError(f"R_= is not transitive: {(x, y)}, {(y, z)}")
    data = []
    for j in range(n):
        earlier = [data[i] for i in range(j) if (i, j) in eq]
        data.append(earlier[0] if earlier else (max(data) + 1 if data else 0))
    labels = tuple(frozenset(p for p in props if (v,) in a.relations[p]) for v in range(n))
    return DataKripkeModel(n, e, tuple(data), labels, frozenset(props)), a.basepoint


# -- flattening to unary symbols ---------------------------------------------

def tilde_signature(sig: Signature) -> Signature:
    return Signature([(n, 2 if n == "E" else 1) for n, _ in sig.items()])


def k_translate(t: PpTree) -> PpTree:
    a = t.underlying
    rels = {"E": a.relations["E"]}
    for name in a.signature.sigma_bar:
        rels[name] = {(tup[-1],) for tup in a.relations[name]}
    return as_pp_tree(PointedStructure(tilde_signature(a.signature), a.universe_size, rels,
                                       a.basepoint))


class ConditionStarViolated(PPMLError):
    def __init__(self, node: int, symbol: str):
        super().__init__(f"{symbol} holds at node {node} of height below its arity minus one")
        self.node, self.symbol = node, symbol


def k_inverse(t: PpTree, sig: Signature) -> PpTree:
    a = t.underlying
    if tilde_signature(sig) != a.signature:
        raise TranslationError("tree is not over the flattened signature")
    rels = {"E": a.relations["E"]}
    for name in sig.sigma_bar:
        r = sig.arity(name)
        tuples = []
        for (v,) in sorted(a.relations[name]):
            if t.height_of[v] < r - 1:
                raise ConditionStarViolated(v, name)
            tuples.append(t.root_chain(v)[-r:])
        rels[name] = tuples
    return as_pp_tree(PointedStructure(sig, a.universe_size, rels, a.basepoint))


def underline_k(a: PointedStructure) -> PointedStructure:
    n = a.universe_size
    reach = {a.basepoint}
    stack = [a.basepoint]
    while stack:
        x = stack.pop()
        for y in a.successors[x]:
            if y not in reach:
                reach.add(y)
                stack.append(y)
    e = a.relations["E"]
    rels = {"E": e}
    for name in a.signature.sigma_bar:
        rels[name] = {(tup[-1],) for tup in a.relations[name]
                      if tup[0] in reach and all((tup[i], tup[i + 1]) in e
                                                 for i in range(len(tup) - 1))}
    return PointedStructure(tilde_signature(a.signature), n, rels, a.basepoint)


def phi_k(sig: Signature) -> Formula:
    parts = []
    for name in sorted(sig.sigma_bar):
        r = sig.arity(name)
        parts += [Not(diamond_power(j, Atom(name))) for j in range(r - 1)]
    return conj(parts)
