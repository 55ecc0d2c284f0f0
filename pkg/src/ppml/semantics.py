"""Reference evaluators for PPML, DataGL, CoreDataXPath paths and FOL."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Sequence

from .core import PPMLError, PointedStructure, StructureError, UnknownSymbol
from .syntax import (And, Atom, Bot, CdxpPath, DiamondEq, DiamondNeq, Diamond, Exists,
                     Formula, GradedDiamond, Not, Rel, Top)


class EvaluationError(PPMLError):
    pass


class InvalidModel(PPMLError):
    pass


def eval_ppml(a: PointedStructure, s: Sequence[int], f: Formula) -> bool:
    """Truth of ``f`` at valuation ``s``.

    Results are memoised on the last ``W`` entries of the valuation, where
    ``W`` is the largest arity in sigma_bar: no atom can look further back.
    """
    s = tuple(s)
    if not s:
        raise EvaluationError("valuation must be non-empty")
    for x in s:
        if not isinstance(x, int) or not 0 <= x < a.universe_size:
            raise EvaluationError(f"valuation entry {x!r} out of range")
    sig = a.signature
    w = sig.window
    succ = a.successors
    rels = a.relations
    memo: dict[tuple[int, tuple], bool] = {}

    def ev(g: Formula, v: tuple) -> bool:
        key = (id(g), v)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if isinstance(g, Top):
            out = True
        elif isinstance(g, Bot):
            out = False
        elif isinstance(g, Atom):
            if g.name == "E":
                raise UnknownSymbol("E")
            r = sig.arity(g.name)
            out = r <= len(v) and v[len(v) - r:] in rels[g.name]
        elif isinstance(g, Not):
            out = not ev(g.child, v)
        elif isinstance(g, And):
            out = ev(g.left, v) and ev(g.right, v)
        elif isinstance(g, Diamond):
            out = any(ev(g.child, (v + (y,))[-w:]) for y in succ[v[-1]])
        elif isinstance(g, GradedDiamond):
            need = g.count
            for y in succ[v[-1]]:
                if ev(g.child, (v + (y,))[-w:]):
                    need -= 1
                    if need == 0:
                        break
            out = need == 0
        else:
            raise EvaluationError(f"not a PPML formula: {g!r}")
        memo[key] = out
        return out

    return ev(f, s[-w:])


def eval_ppml_unmemoised(a: PointedStructure, s: Sequence[int], f: Formula) -> bool:
    """Direct recursion on full valuations, used to cross-check truncation."""
    s = tuple(s)
    if isinstance(f, Top):
        return True
    if isinstance(f, Bot):
        return False
    if isinstance(f, Atom):
        return a.holds(f.name, s)
    if isinstance(f, Not):
        return not eval_ppml_unmemoised(a, s, f.child)
    if isinstance(f, And):
        return eval_ppml_unmemoised(a, s, f.left) and eval_ppml_unmemoised(a, s, f.right)
    if isinstance(f, Diamond):
        return any(eval_ppml_unmemoised(a, s + (y,), f.child) for y in a.successors[s[-1]])
    if isinstance(f, GradedDiamond):
        hits = sum(eval_ppml_unmemoised(a, s + (y,), f.child) for y in a.successors[s[-1]])
        return hits >= f.count
    raise EvaluationError(f"not a PPML formula: {f!r}")


# -- data Kripke models ------------------------------------------------------

@dataclass(frozen=True)
class DataKripkeModel:
    world_count: int
    edges: frozenset
    data_of: tuple[int, ...]
    props_of: tuple[frozenset, ...]
    propositions: frozenset = field(default=None)  # declared PROP; defaults to used labels

    def __post_init__(self):
        n = self.world_count
        object.__setattr__(self, "edges", frozenset(tuple(e) for e in self.edges))
        object.__setattr__(self, "data_of", tuple(self.data_of))
        object.__setattr__(self, "props_of", tuple(frozenset(p) for p in self.props_of))
        if len(self.data_of) != n or len(self.props_of) != n:
            raise InvalidModel("data and props must be given for every world")
        for x, y in self.edges:
            if not (0 <= x < n and 0 <= y < n):
                raise InvalidModel(f"edge {(x, y)} out of range")
        used = frozenset().union(*self.props_of) if n else frozenset()
        if self.propositions is None:
            object.__setattr__(self, "propositions", used)
        else:
            object.__setattr__(self, "propositions", frozenset(self.propositions))
            if not used <= self.propositions:
                raise InvalidModel(f"undeclared propositions {sorted(used - self.propositions)}")

    @cached_property
    def successors(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.world_count)]
        for x, y in self.edges:
            out[x].append(y)
        return tuple(tuple(sorted(s)) for s in out)

    def violation(self) -> tuple[str, tuple] | None:
        """First reason the relation is not transitive and irreflexive."""
        for x, y in sorted(self.edges):
            if x == y:
                return ("reflexive", (x, y))
        for x, y in sorted(self.edges):
            for z in self.successors[y]:
                if (x, z) not in self.edges:
                    return ("not transitive", (x, y, z))
        return None

    def validate(self) -> "DataKripkeModel":
        bad = self.violation()
        if bad:
            raise InvalidModel(f"{bad[0]}: {bad[1]}")
        return self


def eval_datagl(m: DataKripkeModel, w: int, f: Formula) -> bool:
    m.validate()
    if not 0 <= w < m.world_count:
        raise EvaluationError(f"world {w} out of range")
    memo: dict[tuple[int, int], bool] = {}

    def ev(g: Formula, v: int) -> bool:
        key = (id(g), v)
        if key in memo:
            return memo[key]
        if isinstance(g, Top):
            out = True
        elif isinstance(g, Bot):
            out = False
        elif isinstance(g, Atom):
            if g.name not in m.propositions:
                raise UnknownSymbol(g.name)
            out = g.name in m.props_of[v]
        elif isinstance(g, Not):
            out = not ev(g.child, v)
        elif isinstance(g, And):
            out = ev(g.left, v) and ev(g.right, v)
        elif isinstance(g, DiamondEq):
            out = any(m.data_of[u] == m.data_of[v] and ev(g.child, u) for u in m.successors[v])
        elif isinstance(g, DiamondNeq):
            out = any(m.data_of[u] != m.data_of[v] and ev(g.child, u) for u in m.successors[v])
        else:
            raise EvaluationError(f"not a DataGL formula: {g!r}")
        memo[key] = out
        return out

    return ev(f, w)


def eval_cdxp(m: DataKripkeModel, w: int, p: CdxpPath) -> bool:
    """``<eps op down+[phi_1] ... down+[phi_n]>`` at ``w``: some R-chain
    ``w, w_1, ..., w_n`` with ``w_i |= phi_i`` and ``d(w) op d(w_n)``."""
    m.validate()
    frontier = {w}
    for test in p.tests:
        frontier = {u for v in frontier for u in m.successors[v] if eval_datagl(m, u, test)}
    d = m.data_of[w]
    return any((m.data_of[u] == d) == p.equal for u in frontier)


def model_from_dict(doc: Mapping) -> DataKripkeModel:
    if not isinstance(doc, Mapping) or "universe" not in doc:
        raise StructureError("model document needs a universe")
    universe = doc["universe"]
    names = [str(u) for u in universe] if isinstance(universe, list) else None
    n = len(names) if names is not None else universe
    if not isinstance(n, int) or n < 1:
        raise StructureError("universe must be non-empty")

    def idx(v):
        if isinstance(v, int) and not isinstance(v, bool) and 0 <= v < n:
            return v
        if names is not None and v in names:
            return names.index(v)
        raise StructureError(f"bad world reference {v!r}")

    edges = [(idx(x), idx(y)) for x, y in doc.get("edges", [])]
    data = list(doc.get("data", [0] * n))
    if len(data) != n:
        raise StructureError("data must list a value per world")
    props: list[set] = [set() for _ in range(n)]
    for p, worlds in doc.get("props", {}).items():
        for v in worlds:
            props[idx(v)].add(p)
    declared = doc.get("propositions")
    if declared is None:
        declared = list(doc.get("props", {}).keys())
    return DataKripkeModel(n, frozenset(edges), tuple(data), tuple(frozenset(p) for p in props),
                           frozenset(declared))


def load_model(document: str) -> DataKripkeModel:
    try:
        return model_from_dict(json.loads(document))
    except json.JSONDecodeError as exc:
        raise StructureError(f"malformed document: {exc}") from None


def model_to_dict(m: DataKripkeModel) -> dict:
    return {
        "universe": m.world_count,
        "edges": [list(e) for e in sorted(m.edges)],
        "data": list(m.data_of),
        "props": {p: [v for v in range(m.world_count) if p in m.props_of[v]]
                  for p in sorted(m.propositions)},
    }


# -- first-order logic -------------------------------------------------------

def eval_fol(a: PointedStructure, assignment: Mapping[int, int], f: Formula) -> bool:
    env = dict(assignment)

    def ev(g: Formula) -> bool:
        if isinstance(g, Top):
            return True
        if isinstance(g, Bot):
            return False
        if isinstance(g, Rel):
            if g.name not in a.signature:
                raise UnknownSymbol(g.name)
            try:
                return tuple(env[i] for i in g.args) in a.relations[g.name]
            except KeyError as exc:
                raise EvaluationError(f"unassigned variable x{exc.args[0]}") from None
        if isinstance(g, Not):
            return not ev(g.child)
        if isinstance(g, And):
            return ev(g.left) and ev(g.right)
        if isinstance(g, Exists):
            saved = env.get(g.var)
            try:
                for x in range(a.universe_size):
                    env[g.var] = x
                    if ev(g.child):
                        return True
                return False
            finally:
                if saved is None:
                    env.pop(g.var, None)
                else:
                    env[g.var] = saved
        raise EvaluationError(f"not a FOL formula: {g!r}")

    return ev(f)
