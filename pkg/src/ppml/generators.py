"""Enumeration and random sampling of structures, pp-trees, formulas and models."""

from __future__ import annotations

import itertools
import random
from typing import Iterator, Sequence

from .core import PointedStructure, PpTree, Signature, as_pp_tree, canonical_code
from .semantics import DataKripkeModel
from .syntax import (BOT, TOP, And, Atom, Diamond, DiamondEq, DiamondNeq, Formula, GradedDiamond,
                     Not)

SIG_EPS = Signature({"E": 2, "p": 1, "S": 2})


# -- tree shapes --------------------------------------------------------------

def tree_shapes(n: int, max_height: int | None = None,
                max_branching: int | None = None) -> list[tuple[int, ...]]:
    """Non-isomorphic rooted trees on ``n`` nodes as BFS-ordered parent arrays."""
    seen: dict[bytes, tuple[int, ...]] = {}
    sig = Signature({"E": 2})
    for parents in itertools.product(*[range(i) for i in range(1, n)]):
        parent = (-1,) + tuple(parents)
        height = [0] * n
        for v in range(1, n):
            height[v] = height[parent[v]] + 1
        if max_height is not None and max(height) > max_height:
            continue
        if max_branching is not None and n > 1 and \
                max(parent.count(v) for v in range(n)) > max_branching:
            continue
        t = as_pp_tree(PointedStructure(sig, n, {"E": [(parent[v], v) for v in range(1, n)]}, 0))
        code = canonical_code(t)
        if code not in seen:
            order = t.bfs_order()
            pos = {v: i for i, v in enumerate(order)}
            seen[code] = (-1,) + tuple(pos[parent[v]] for v in order[1:])
    return sorted(seen.values())


def _heights(parent: Sequence[int]) -> list[int]:
    h = [0] * len(parent)
    for v in range(1, len(parent)):
        h[v] = h[parent[v]] + 1
    return h


def _chain(parent: Sequence[int], v: int) -> tuple[int, ...]:
    out = []
    while v != -1:
        out.append(v)
        v = parent[v]
    return tuple(reversed(out))


def _slots(sig: Signature, parent: Sequence[int]) -> list[tuple[str, tuple[int, ...]]]:
    """Every (symbol, root-chain window) that a labelling may switch on."""
    h = _heights(parent)
    out = []
    for v in range(len(parent)):
        chain = _chain(parent, v)
        for name in sig.sigma_bar:
            r = sig.arity(name)
            if r <= h[v] + 1:
                out.append((name, chain[len(chain) - r:]))
    return out


def tree_from_labels(sig: Signature, parent: Sequence[int],
                     labels: Sequence[tuple[str, tuple[int, ...]]]) -> PpTree:
    rels: dict[str, list] = {"E": [(parent[v], v) for v in range(1, len(parent))]}
    for name, tup in labels:
        rels.setdefault(name, []).append(tup)
    return as_pp_tree(PointedStructure(sig, len(parent), rels, 0))


def enumerate_pp_trees(sig: Signature, max_nodes: int, max_height: int | None = None,
                       max_branching: int | None = None, min_nodes: int = 1) -> Iterator[PpTree]:
    """All pp-trees within the bounds (shapes up to isomorphism, every labelling)."""
    for n in range(min_nodes, max_nodes + 1):
        for parent in tree_shapes(n, max_height, max_branching):
            slots = _slots(sig, parent)
            for mask in range(1 << len(slots)):
                yield tree_from_labels(sig, parent, [s for i, s in enumerate(slots) if mask >> i & 1])


def random_pp_tree(rng: random.Random, sig: Signature, max_nodes: int,
                   max_height: int | None = None, density: float = 0.4) -> PpTree:
    n = rng.randint(1, max_nodes)
    parent = [-1]
    h = [0]
    for v in range(1, n):
        options = [u for u in range(v) if max_height is None or h[u] < max_height]
        if not options:
            break
        u = rng.choice(options)
        parent.append(u)
        h.append(h[u] + 1)
    slots = _slots(sig, parent)
    return tree_from_labels(sig, parent, [s for s in slots if rng.random() < density])


# -- structures -----------------------------------------------------------------

def random_structure(rng: random.Random, sig: Signature, n: int, edge_p: float = 0.35,
                     rel_p: float = 0.3) -> PointedStructure:
    rels: dict[str, list] = {}
    for name, r in sig.items():
        p = edge_p if name == "E" else rel_p
        if r == 1:
            rels[name] = [(x,) for x in range(n) if rng.random() < p]
        elif r == 2:
            rels[name] = [(x, y) for x in range(n) for y in range(n) if rng.random() < p]
        else:
            count = rng.randint(0, n ** r // 4 + 1)
            rels[name] = [tuple(rng.randrange(n) for _ in range(r)) for _ in range(count)]
    return PointedStructure(sig, n, rels, 0)


def random_chainy_structure(rng: random.Random, sig: Signature, n: int,
                            edge_p: float = 0.35, rel_p: float = 0.5) -> PointedStructure:
    """Like ``random_structure`` but non-E tuples are placed on E-chains, so
    they are visible to PPML."""
    base = random_structure(rng, Signature({"E": 2}), n, edge_p)
    e = sorted(base.relations["E"])
    succ = base.successors
    rels: dict[str, list] = {"E": e}
    for name, r in sig.items():
        if name == "E":
            continue
        chains = [(x,) for x in range(n)]
        for _ in range(r - 1):
            chains = [c + (y,) for c in chains for y in succ[c[-1]]]
        rels[name] = [c for c in chains if rng.random() < rel_p]
    return PointedStructure(sig, n, rels, 0)


def all_structures(sig: Signature, n: int, basepoint: int = 0) -> Iterator[PointedStructure]:
    """Every structure on exactly ``n`` elements (feasible only for tiny ``n``)."""
    slots = []
    for name, r in sig.items():
        slots += [(name, t) for t in itertools.product(range(n), repeat=r)]
    for mask in range(1 << len(slots)):
        rels: dict[str, list] = {}
        for i, (name, t) in enumerate(slots):
            if mask >> i & 1:
                rels.setdefault(name, []).append(t)
        yield PointedStructure(sig, n, rels, basepoint)


def clone_element(a: PointedStructure, x: int) -> PointedStructure:
    """Add a twin of ``x`` that copies every tuple ``x`` occurs in."""
    n = a.universe_size
    rels = {}
    for name in a.signature:
        out = set(a.relations[name])
        for t in a.relations[name]:
            positions = [i for i, y in enumerate(t) if y == x]
            for k in range(1, len(positions) + 1):
                for chosen in itertools.combinations(positions, k):
                    out.add(tuple(n if i in chosen else y for i, y in enumerate(t)))
        rels[name] = out
    return PointedStructure(a.signature, n + 1, rels, a.basepoint)


def permute(rng: random.Random, a: PointedStructure) -> PointedStructure:
    perm = list(range(a.universe_size))
    rng.shuffle(perm)
    rels = {name: [tuple(perm[x] for x in t) for t in a.relations[name]] for name in a.signature}
    return PointedStructure(a.signature, a.universe_size, rels, perm[a.basepoint])


# -- formulas -----------------------------------------------------------------

def random_formula(rng: random.Random, props: Sequence[str], depth: int, size: int = 6,
                   graded: bool = False, negation: bool = True) -> Formula:
    """Random PPML formula of modal depth at most ``depth``."""
    def go(d: int, budget: int) -> Formula:
        if budget <= 1:
            roll = rng.random()
            if roll < 0.1:
                return TOP
            if roll < 0.15 and negation:
                return BOT
            return Atom(rng.choice(list(props)))
        choices = ["and", "not"] if negation else ["and"]
        if d > 0:
            choices += ["dia", "dia"] + (["graded"] if graded else [])
        op = rng.choice(choices)
        if op == "not":
            return Not(go(d, budget - 1))
        if op == "and":
            k = rng.randint(1, budget - 1)
            return And(go(d, k), go(d, budget - k))
        if op == "graded":
            return GradedDiamond(rng.randint(1, 3), go(d - 1, budget - 1))
        return Diamond(go(d - 1, budget - 1))

    return go(depth, size)


def random_datagl_formula(rng: random.Random, props: Sequence[str], depth: int,
                          size: int = 6) -> Formula:
    def go(d: int, budget: int) -> Formula:
        if budget <= 1:
            return TOP if rng.random() < 0.1 else Atom(rng.choice(list(props)))
        choices = ["and", "not"] + (["eq", "neq"] if d > 0 else [])
        op = rng.choice(choices)
        if op == "not":
            return Not(go(d, budget - 1))
        if op == "and":
            k = rng.randint(1, budget - 1)
            return And(go(d, k), go(d, budget - k))
        wrap = DiamondEq if op == "eq" else DiamondNeq
        return wrap(go(d - 1, budget - 1))

    return go(depth, size)


def random_well_nested_positive(rng: random.Random, sig: Signature, depth: int,
                                size: int = 6) -> Formula:
    """Negation-free formula whose atoms sit under enough diamonds."""
    def go(d: int, budget: int, nesting: int) -> Formula:
        if budget <= 1:
            ok = [n for n in sig.sigma_bar if sig.arity(n) - 1 <= nesting]
            if not ok or rng.random() < 0.1:
                return TOP
            return Atom(rng.choice(ok))
        choices = ["and"] + (["dia", "dia"] if d > 0 else [])
        if rng.choice(choices) == "and":
            k = rng.randint(1, budget - 1)
            return And(go(d, k, nesting), go(d, budget - k, nesting))
        return Diamond(go(d - 1, budget - 1, nesting + 1))

    return go(depth, size, 0)


def formulas_up_to(atoms: Sequence[Formula], connectives: int) -> Iterator[Formula]:
    """Every formula over ``atoms`` with ``!``, ``&``, ``<>`` and at most
    ``connectives`` connectives."""
    layers: list[list[Formula]] = [list(atoms)]
    for c in range(1, connectives + 1):
        layer: list[Formula] = []
        for f in layers[c - 1]:
            layer += [Not(f), Diamond(f)]
        for i in range(c):
            for f in layers[i]:
                for g in layers[c - 1 - i]:
                    layer.append(And(f, g))
        layers.append(layer)
    for layer in layers:
        yield from layer


# -- data models ----------------------------------------------------------------

def random_datagl_model(rng: random.Random, n: int, props: Sequence[str] = ("p", "q"),
                        edge_p: float = 0.4, data_values: int = 2) -> DataKripkeModel:
    """Random model whose relation is a strict partial order (transitive closure
    of a random DAG on a shuffled order)."""
    order = list(range(n))
    rng.shuffle(order)
    edges = {(order[i], order[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < edge_p}
    changed = True
    while changed:
        changed = False
        for x, y in list(edges):
            for y2, z in list(edges):
                if y == y2 and (x, z) not in edges:
                    edges.add((x, z))
                    changed = True
    data = tuple(rng.randrange(data_values) for _ in range(n))
    labels = tuple(frozenset(p for p in props if rng.random() < 0.5) for _ in range(n))
    return DataKripkeModel(n, frozenset(edges), data, labels, frozenset(props))
