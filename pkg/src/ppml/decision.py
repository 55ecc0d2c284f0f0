"""Satisfiability, model checking and k-bisimilarity, each with a reference route."""

from __future__ import annotations

from dataclasses import dataclass

from .comonad import unravel
from .core import (PPMLError, PointedStructure, PpTree, Signature, SignatureMismatch, as_pp_tree,
                   canonical_code)
from .games import game_verdict
from .generators import enumerate_pp_trees
from .semantics import eval_ppml
from .syntax import (And, Atom, Bot, Diamond, Formula, GradedDiamond, Not, Top, atoms,
                     modal_depth, signature_for)
from .translations import k_inverse, k_translate, phi_k, tilde_signature


class NotUnimodal(PPMLError):
    pass


@dataclass(frozen=True)
class SatResult:
    verdict: bool
    model: PpTree | None = None

    def __bool__(self) -> bool:
        return self.verdict


# -- BML tableau ------------------------------------------------------------------

def _saturations(todo: list, literals: frozenset):
    """Yield each open boolean saturation of ``todo`` as a set of literals
    (atoms, negated atoms, diamonds and negated diamonds)."""
    if not todo:
        yield literals
        return
    f, rest = todo[0], todo[1:]
    if isinstance(f, Top):
        yield from _saturations(rest, literals)
    elif isinstance(f, Bot):
        return
    elif isinstance(f, And):
        yield from _saturations([f.left, f.right] + rest, literals)
    elif isinstance(f, Not):
        g = f.child
        if isinstance(g, Top):
            return
        if isinstance(g, Bot):
            yield from _saturations(rest, literals)
        elif isinstance(g, Not):
            yield from _saturations([g.child] + rest, literals)
        elif isinstance(g, And):
            yield from _saturations([Not(g.left)] + rest, literals)
            yield from _saturations([Not(g.right)] + rest, literals)
        elif isinstance(g, (Atom, Diamond)):
            if g in literals:
                return
            yield from _saturations(rest, literals | {f})
        else:
            raise NotUnimodal(f"unsupported subformula {g!r}")
    elif isinstance(f, (Atom, Diamond)):
        if Not(f) in literals:
            return
        yield from _saturations(rest, literals | {f})
    else:
        raise NotUnimodal(f"unsupported subformula {f!r}")


def _tableau(formulas: frozenset, memo: dict):
    """A satisfying Kripke tree as ``(labels, children)`` or None."""
    if formulas in memo:
        return memo[formulas]
    memo[formulas] = None
    result = None
    for lits in _saturations(sorted(formulas, key=repr), frozenset()):
        boxes = [f.child.child for f in lits if isinstance(f, Not) and isinstance(f.child, Diamond)]
        kids = []
        for f in sorted((f for f in lits if isinstance(f, Diamond)), key=repr):
            child = _tableau(frozenset([f.child] + [Not(b) for b in boxes]), memo)
            if child is None:
                break
            kids.append(child)
        else:
            labels = sorted(f.name for f in lits if isinstance(f, Atom))
            result = (labels, kids)
            break
    memo[formulas] = result
    return result


def _tree_model(node, sig: Signature) -> PpTree:
    rels: dict[str, list] = {"E": []}
    count = 0

    def build(nd) -> int:
        nonlocal count
        v = count
        count += 1
        labels, kids = nd
        for name in labels:
            rels.setdefault(name, []).append((v,))
        for kid in kids:
            rels["E"].append((v, build(kid)))
        return v

    build(node)
    return as_pp_tree(PointedStructure(sig, count, rels, 0))


def bml_sat(f: Formula, sig: Signature | None = None) -> SatResult:
    sig = sig or signature_for(f)
    if not sig.is_unimodal():
        raise NotUnimodal("basic modal satisfiability needs unary atoms only")
    for name in atoms(f):
        if name == "E" or sig.arity(name) != 1:
            raise NotUnimodal(f"atom {name} is not unary")
    root = _tableau(frozenset([f]), {})
    if root is None:
        return SatResult(False)
    model = _tree_model(root, sig)
    if not eval_ppml(model.underlying, (0,), f):
        raise AssertionError("tableau model does not satisfy the formula")
    return SatResult(True, model)


def ppml_sat(f: Formula, sig: Signature | None = None) -> SatResult:
    sig = sig or signature_for(f)
    for name in atoms(f):
        sig.arity(name)
    if any(isinstance(g, GradedDiamond) for g in _walk(f)):
        raise NotUnimodal("graded diamonds are not supported by the tableau")
    flat = tilde_signature(sig)
    res = bml_sat(And(f, phi_k(sig)), flat)
    if not res.verdict:
        return SatResult(False)
    model = k_inverse(res.model, sig)
    if not eval_ppml(model.underlying, (model.root,), f):
        raise AssertionError("reduced model does not satisfy the formula")
    return SatResult(True, model)


def _walk(f):
    yield f
    for name in ("child", "left", "right"):
        g = getattr(f, name, None)
        if g is not None:
            yield from _walk(g)


def brute_force_ppml_sat(f: Formula, sig: Signature | None = None, max_nodes: int = 5,
                         max_branching: int = 3) -> SatResult:
    sig = sig or signature_for(f)
    for t in enumerate_pp_trees(sig, max_nodes, modal_depth(f), max_branching):
        if eval_ppml(t.underlying, (0,), f):
            return SatResult(True, t)
    return SatResult(False)


# -- model checking and bisimilarity -------------------------------------------------

def model_check(a: PointedStructure, f: Formula, method: str = "direct") -> bool:
    if method == "direct":
        return eval_ppml(a, (a.basepoint,), f)
    if method == "reduction":
        for name in atoms(f):
            a.signature.arity(name)
        kt = k_translate(unravel(a, modal_depth(f)).tree)
        return eval_ppml(kt.underlying, (kt.root,), f)
    raise ValueError(f"unknown method {method!r}")


def decide_k_bisim(a: PointedStructure, b: PointedStructure, k: int, method: str = "game") -> bool:
    if a.signature != b.signature:
        raise SignatureMismatch("structures over different signatures")
    if method == "game":
        return game_verdict(a, b, k)
    if method == "reduction":
        ka = k_translate(unravel(a, k).tree).underlying
        kb = k_translate(unravel(b, k).tree).underlying
        return game_verdict(ka, kb, k)
    if method == "graded_iso":
        return canonical_code(unravel(a, k).tree) == canonical_code(unravel(b, k).tree)
    raise ValueError(f"unknown method {method!r}")
