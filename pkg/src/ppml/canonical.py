"""Formulas from pp-trees and pp-trees from positive formulas.

``nu_formula(T)`` is satisfied at ``(A, a)`` exactly when ``T`` maps
homomorphically into ``(A, a)``; ``canonical_model(phi)`` is the least
pp-tree satisfying a well-nested positive ``phi``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import PPMLError, PointedStructure, PpTree, Signature, as_pp_tree
from .syntax import And, Atom, Diamond, Formula, Top, conj, is_positive, modal_debt


class NotWellNested(PPMLError):
    pass


def nu_formula(t: PpTree) -> Formula:
    a = t.underlying
    names = sorted(a.signature.sigma_bar)

    def nu(v: int, chain: tuple) -> Formula:
        parts: list[Formula] = [Atom(n) for n in names if a.holds(n, chain)]
        parts += [Diamond(nu(w, chain + (w,))) for w in t.children(v)]
        return conj(parts)

    return nu(t.root, (t.root,))


@dataclass
class _Tree:
    """Mutable pp-tree under construction: parent links plus tuple sets."""
    parent: list[int]
    rels: dict[str, set]

    def copy(self) -> "_Tree":
        return _Tree(list(self.parent), {n: set(ts) for n, ts in self.rels.items()})

    def root_chain(self, v: int) -> tuple:
        out = []
        while v != -1:
            out.append(v)
            v = self.parent[v]
        return tuple(reversed(out))


def pushout(base_size: int, t1: _Tree, t2: _Tree) -> _Tree:
    """Glue two extensions of a common tree on nodes ``0..base_size-1``."""
    out = t1.copy()
    rename = {v: v for v in range(base_size)}
    for v in range(base_size, len(t2.parent)):
        rename[v] = len(out.parent)
        out.parent.append(rename[t2.parent[v]])
    for name, ts in t2.rels.items():
        out.rels.setdefault(name, set()).update(tuple(rename[x] for x in tup) for tup in ts)
    return out


def _model(f: Formula, t: _Tree, v: int, sig: Signature) -> _Tree:
    if isinstance(f, Top):
        return t
    if isinstance(f, Atom):
        r = sig.arity(f.name)
        chain = t.root_chain(v)
        if r > len(chain):
            raise NotWellNested(f"atom {f.name} is not guarded by {r - 1} diamonds")
        out = t.copy()
        out.rels[f.name].add(chain[len(chain) - r:])
        return out
    if isinstance(f, And):
        return pushout(len(t.parent), _model(f.left, t, v, sig), _model(f.right, t, v, sig))
    if isinstance(f, Diamond):
        out = t.copy()
        w = len(out.parent)
        out.parent.append(v)
        return _model(f.child, out, w, sig)
    raise NotWellNested(f"not a positive formula: {f!r}")


def canonical_model(f: Formula, sig: Signature) -> PpTree:
    if not is_positive(f):
        raise NotWellNested("canonical models exist only for negation-free formulas")
    if modal_debt(f, sig) != 0:
        raise NotWellNested("formula is not well nested")
    base = _Tree([-1], {name: set() for name in sig.sigma_bar})
    t = _model(f, base, 0, sig)
    rels = {name: sorted(ts) for name, ts in t.rels.items()}
    rels["E"] = [(p, v) for v, p in enumerate(t.parent) if p != -1]
    return as_pp_tree(PointedStructure(sig, len(t.parent), rels, 0))
