"""Bisimulation, simulation and graded games; strategies; bounded morphisms; spans."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .comonad import NotAChain, unravel
from .core import (Chain, Homomorphism, InvalidMorphism, PPMLError, PointedStructure, PpTree,
                   SignatureMismatch, as_pp_tree, e_chains)


class IncompleteStrategy(PPMLError):
    pass


def _same_signature(a: PointedStructure, b: PointedStructure) -> None:
    if a.signature != b.signature:
        raise SignatureMismatch("game between structures over different signatures")


def _harmony(a: PointedStructure, b: PointedStructure, mode: str):
    names = [(n, a.signature.arity(n)) for n in a.signature.sigma_bar]
    ra, rb = a.relations, b.relations

    def check(s: tuple, t: tuple) -> bool:
        for name, r in names:
            if r > len(s):
                continue
            x = s[len(s) - r:] in ra[name]
            y = t[len(t) - r:] in rb[name]
            if x != y and (mode == "bisim" or x):
                return False
        return True

    return check


class _Solver:
    """Memoised ``win(s, t, j)`` on last-W windows."""

    def __init__(self, a: PointedStructure, b: PointedStructure, mode: str):
        if mode not in ("bisim", "sim"):
            raise ValueError(f"unknown mode {mode!r}")
        _same_signature(a, b)
        self.a, self.b, self.mode = a, b, mode
        self.w = a.signature.window
        self.harmony = _harmony(a, b, mode)
        self.memo: dict = {}

    def win(self, s: tuple, t: tuple, j: int) -> bool:
        w = self.w
        s, t = s[-w:], t[-w:]
        key = (s, t, j)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        out = self.harmony(s, t)
        if out and j > 0:
            sa, sb = self.a.successors[s[-1]], self.b.successors[t[-1]]
            out = all(any(self.win(s + (x,), t + (y,), j - 1) for y in sb) for x in sa)
            if out and self.mode == "bisim":
                out = all(any(self.win(s + (x,), t + (y,), j - 1) for x in sa) for y in sb)
        self.memo[key] = out
        return out


@dataclass
class Strategy:
    """Duplicator's answers, keyed by full chain pairs.

    ``responses[(s, t)][(side, x)] = y``: when Spoiler extends side ``side``
    (``"left"`` or ``"right"``) by ``x`` at position ``(s, t)``, Duplicator
    answers ``y`` on the other side.
    """
    a: PointedStructure
    b: PointedStructure
    k: int
    mode: str
    responses: dict = field(default_factory=dict)

    def answer(self, s: Chain, t: Chain, side: str, x: int) -> int:
        try:
            return self.responses[(tuple(s), tuple(t))][(side, x)]
        except KeyError:
            raise IncompleteStrategy(f"no answer to {side} move {x} at {(s, t)}") from None

    def records(self) -> list[tuple[Chain, Chain, str, int, int]]:
        out = []
        for (s, t), moves in sorted(self.responses.items(), key=lambda kv: (len(kv[0][0]), kv[0])):
            for (side, x), y in sorted(moves.items()):
                out.append((s, t, side, x, y))
        return out

    def is_winning(self) -> bool:
        """Every recorded line stays in harmony and covers every Spoiler move."""
        harmony = _harmony(self.a, self.b, self.mode)
        root = ((self.a.basepoint,), (self.b.basepoint,))
        stack = [root]
        while stack:
            s, t = stack.pop()
            if not harmony(s, t):
                return False
            if len(s) - 1 >= self.k:
                continue
            moves = self.responses.get((s, t), {})
            sides = [("left", self.a, s)] + ([("right", self.b, t)] if self.mode == "bisim" else [])
            for side, struct, chain in sides:
                for x in struct.successors[chain[-1]]:
                    y = moves.get((side, x))
                    if y is None:
                        return False
                    if side == "left":
                        if y not in self.b.successors[t[-1]]:
                            return False
                        stack.append((s + (x,), t + (y,)))
                    else:
                        if y not in self.a.successors[s[-1]]:
                            return False
                        stack.append((s + (y,), t + (x,)))
        return True


def _extract(solver: _Solver, k: int) -> Strategy:
    a, b = solver.a, solver.b
    st = Strategy(a, b, k, solver.mode)
    stack = [((a.basepoint,), (b.basepoint,))]
    while stack:
        s, t = stack.pop()
        j = k - (len(s) - 1)
        if j <= 0:
            continue
        moves = {}
        for x in a.successors[s[-1]]:
            y = next(y for y in b.successors[t[-1]] if solver.win(s + (x,), t + (y,), j - 1))
            moves[("left", x)] = y
            stack.append((s + (x,), t + (y,)))
        if solver.mode == "bisim":
            for y in b.successors[t[-1]]:
                x = next(x for x in a.successors[s[-1]] if solver.win(s + (x,), t + (y,), j - 1))
                moves[("right", y)] = x
                stack.append((s + (x,), t + (y,)))
        st.responses[(s, t)] = moves
    return st


def decide_bisim_game(a: PointedStructure, b: PointedStructure, k: int,
                      mode: str = "bisim") -> tuple[bool, Strategy | None]:
    solver = _Solver(a, b, mode)
    if not solver.win((a.basepoint,), (b.basepoint,), k):
        return False, None
    return True, _extract(solver, k)


def game_verdict(a: PointedStructure, b: PointedStructure, k: int, mode: str = "bisim") -> bool:
    """The verdict alone, without building a strategy."""
    return _Solver(a, b, mode).win((a.basepoint,), (b.basepoint,), k)


def strategy_to_kleisli(st: Strategy, a: PointedStructure, b: PointedStructure,
                        k: int) -> Homomorphism:
    """Map each chain of ``C_k a`` to the last element of Duplicator's reply."""
    u = unravel(a, k)
    image: dict[Chain, Chain] = {(a.basepoint,): (b.basepoint,)}
    for c in u.node_chain[1:]:
        t = image[c[:-1]]
        image[c] = t + (st.answer(c[:-1], t, "left", c[-1]),)
    return Homomorphism(u.underlying, b, tuple(image[c][-1] for c in u.node_chain))


def kleisli_to_strategy(h: Homomorphism, a: PointedStructure, b: PointedStructure,
                        k: int) -> Strategy:
    """The simulation strategy read off a homomorphism ``C_k a -> b``."""
    u = unravel(a, k)
    if h.dom != u.underlying or h.cod != b:
        raise InvalidMorphism("expected a homomorphism from the unravelling")
    st = Strategy(a, b, k, "sim")
    for i, c in enumerate(u.node_chain):
        if len(c) - 1 >= k:
            continue
        t = tuple(h(u.node_of[c[:j]]) for j in range(1, len(c) + 1))
        st.responses[(c, t)] = {("left", x): h(u.node_of[c + (x,)]) for x in a.successors[c[-1]]}
    return st


# -- graded game --------------------------------------------------------------

def _perfect_matching(left: Sequence[int], right: Sequence[int],
                      edge: Callable[[int, int], bool]) -> bool:
    if len(left) != len(right):
        return False
    adj = {x: [y for y in right if edge(x, y)] for x in left}
    match: dict[int, int] = {}

    def augment(x: int, seen: set) -> bool:
        for y in adj[x]:
            if y in seen:
                continue
            seen.add(y)
            if y not in match or augment(match[y], seen):
                match[y] = x
                return True
        return False

    return all(augment(x, set()) for x in left)


def decide_graded_bisim(a: PointedStructure, b: PointedStructure, k: int,
                        stems: tuple[Sequence[int], Sequence[int]] | None = None) -> bool:
    _same_signature(a, b)
    if stems is None:
        s0, t0 = (a.basepoint,), (b.basepoint,)
    else:
        s0, t0 = tuple(stems[0]), tuple(stems[1])
        if len(s0) != len(t0) or not s0:
            raise NotAChain("stems must be non-empty and of equal length")
        for struct, c in ((a, s0), (b, t0)):
            if not all(isinstance(x, int) and 0 <= x < struct.universe_size for x in c) \
                    or not struct.is_chain(c):
                raise NotAChain(f"{c} is not an E-chain")
    harmony = _harmony(a, b, "bisim")
    w = a.signature.window
    memo: dict = {}

    def win(s: tuple, t: tuple, j: int) -> bool:
        s, t = s[-w:], t[-w:]
        key = (s, t, j)
        hit = memo.get(key)
        if hit is not None:
            return hit
        out = harmony(s, t)
        if out and j > 0:
            out = _perfect_matching(a.successors[s[-1]], b.successors[t[-1]],
                                    lambda x, y: win(s + (x,), t + (y,), j - 1))
        memo[key] = out
        return out

    return win(s0, t0, k)


# -- bounded morphisms and spans ---------------------------------------------

def is_bounded_morphism(f: Homomorphism) -> bool:
    dom, cod = f.dom, f.cod
    arities = sorted({dom.signature.arity(n) for n in dom.signature.sigma_bar})
    names = dom.signature.sigma_bar
    for r in arities:
        for c in e_chains(dom, r):
            if len(c) != r:
                continue
            img = f.image(c)
            for name in names:
                if dom.signature.arity(name) == r and \
                        (c in dom.relations[name]) != (img in cod.relations[name]):
                    return False
    for x in range(dom.universe_size):
        reached = {f(y) for y in dom.successors[x]}
        if any(y not in reached for y in cod.successors[f(x)]):
            return False
    return True


@dataclass(frozen=True)
class Span:
    apex: PpTree
    pairs: tuple[tuple[Chain, Chain], ...]
    left: Homomorphism
    right: Homomorphism


def build_bisim_span(a: PointedStructure, b: PointedStructure, k: int) -> Span | None:
    """Apex = every winning position reachable through winning positions."""
    solver = _Solver(a, b, "bisim")
    root = ((a.basepoint,), (b.basepoint,))
    if not solver.win(root[0], root[1], k):
        return None
    pairs = [root]
    i = 0
    while i < len(pairs):
        s, t = pairs[i]
        i += 1
        j = k - (len(s) - 1)
        if j <= 0:
            continue
        for x in a.successors[s[-1]]:
            for y in b.successors[t[-1]]:
                if solver.win(s + (x,), t + (y,), j - 1):
                    pairs.append((s + (x,), t + (y,)))
    index = {p: n for n, p in enumerate(pairs)}
    rels = {}
    for name, r in a.signature.items():
        tuples = []
        for (s, t) in pairs:
            if len(s) >= r and s[len(s) - r:] in a.relations[name]:
                tuples.append(tuple(index[(s[:m], t[:m])]
                                    for m in range(len(s) - r + 1, len(s) + 1)))
        rels[name] = tuples
    apex = as_pp_tree(PointedStructure(a.signature, len(pairs), rels, 0))
    ua, ub = unravel(a, k), unravel(b, k)
    left = Homomorphism(apex.underlying, ua.underlying, tuple(ua.node_of[s] for s, _ in pairs))
    right = Homomorphism(apex.underlying, ub.underlying, tuple(ub.node_of[t] for _, t in pairs))
    if not (is_bounded_morphism(left) and is_bounded_morphism(right)):
        raise AssertionError("span legs failed the bounded-morphism check")
    return Span(apex, tuple(pairs), left, right)
