"""The k-unravelling comonad and the Ehrenfeucht-Fraisse comonad.

``unravel(A, k)`` is the pp-tree of E-chains from the basepoint of length at
most ``k + 1``; the counit takes a chain to its last element and the
comultiplication takes it to its sequence of prefixes.
"""

from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .core import (Chain, Homomorphism, InvalidMorphism, PPMLError, PointedStructure, PpTree,
                   as_pp_tree, structure_to_dict)


class NotAChain(PPMLError):
    pass


@dataclass(frozen=True)
class Unravelling:
    tree: PpTree
    node_chain: tuple[Chain, ...]
    source: PointedStructure
    k: int
    stem: Chain | None = None
    node_of: dict = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "node_of", {c: i for i, c in enumerate(self.node_chain)})

    @property
    def underlying(self) -> PointedStructure:
        return self.tree.underlying

    def __len__(self) -> int:
        return len(self.node_chain)

    def counit(self) -> Homomorphism:
        return Homomorphism(self.underlying, self.source.with_basepoint(self.node_chain[0][0]),
                            tuple(c[-1] for c in self.node_chain))


def _unravelling_from_chains(a: PointedStructure, chains: Sequence[Chain], k: int,
                             stem: Chain | None = None) -> Unravelling:
    """Build the tree on a prefix-closed, BFS-ordered list of chains."""
    node_of = {c: i for i, c in enumerate(chains)}
    rels = {}
    for name, r in a.signature.items():
        src = a.relations[name]
        tuples = []
        for c in chains:
            if len(c) >= r and c[len(c) - r:] in src:
                tuples.append(tuple(node_of[c[:len(c) - r + j + 1]] for j in range(r)))
        rels[name] = tuples
    tree_struct = PointedStructure(a.signature, len(chains), rels, 0)
    return Unravelling(as_pp_tree(tree_struct), tuple(chains), a, k, stem)


def _bfs_chains(a: PointedStructure, roots: Iterable[Chain], max_len: int) -> list[Chain]:
    out = []
    queue = deque(roots)
    while queue:
        c = queue.popleft()
        out.append(c)
        if len(c) < max_len:
            queue.extend(c + (y,) for y in a.successors[c[-1]])
    return out


def unravel(a: PointedStructure, k: int) -> Unravelling:
    if k < 0:
        raise ValueError("k must be non-negative")
    return _unravelling_from_chains(a, _bfs_chains(a, [(a.basepoint,)], k + 1), k)


def unravel_at_chain(a: PointedStructure, s: Sequence[int], k: int) -> Unravelling:
    """Chains comparable with ``s`` inside the unravelling at ``s[0]`` with
    budget ``k + |s| - 1``: the prefixes of ``s`` and its extensions by up to
    ``k`` further steps."""
    s = tuple(s)
    if not s or not all(isinstance(x, int) and 0 <= x < a.universe_size for x in s):
        raise NotAChain(f"{s} is not a valuation of the structure")
    if not a.is_chain(s):
        raise NotAChain(f"{s} is not an E-chain")
    prefixes = [s[:i] for i in range(1, len(s))]
    chains = prefixes + _bfs_chains(a, [s], len(s) + k)
    return _unravelling_from_chains(a, chains, k, stem=s)


def lift_morphism(f: Homomorphism, k: int) -> Homomorphism:
    """``C_k f``: apply ``f`` elementwise to chains."""
    u = unravel(f.dom, k)
    v = unravel(f.cod, k)
    try:
        m = tuple(v.node_of[f.image(c)] for c in u.node_chain)
    except KeyError as exc:
        raise InvalidMorphism(f"image of chain is not a chain: {exc}") from None
    return Homomorphism(u.underlying, v.underlying, m)


# -- law checks --------------------------------------------------------------

@dataclass
class LawReport:
    k: int
    failures: dict[str, list] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not any(self.failures.values())

    def lines(self) -> list[str]:
        out = []
        for law, bad in self.failures.items():
            out.append(f"{law}: {'ok' if not bad else 'FAIL ' + repr(bad[:5])}")
        return out


def comultiplication(u: Unravelling) -> tuple[Unravelling, Homomorphism]:
    """``delta``: each chain goes to the chain of its prefixes in ``C_k C_k``."""
    uu = unravel(u.underlying, u.k)
    m = []
    for c in u.node_chain:
        prefixes = tuple(u.node_of[c[:i]] for i in range(1, len(c) + 1))
        m.append(uu.node_of[prefixes])
    return uu, Homomorphism(u.underlying, uu.underlying, tuple(m))


def check_comonad_laws(a: PointedStructure, k: int) -> LawReport:
    report = LawReport(k)
    law = report.failures
    for name in ("homomorphisms", "counit-left", "counit-right", "coassociativity",
                 "idempotence", "naturality"):
        law[name] = []
    u = unravel(a, k)
    try:
        eps = u.counit()
        uu, delta = comultiplication(u)
        eps_c = uu.counit()  # epsilon at C_k A
        uuu, delta_c = comultiplication(uu)  # delta at C_k A
        # C_k eps : C_k C_k A -> C_k A
        ck_eps = Homomorphism(uu.underlying, u.underlying,
                              tuple(u.node_of[tuple(u.node_chain[x][-1] for x in c)]
                                    for c in uu.node_chain))
        # C_k delta : C_k C_k A -> C_k C_k C_k A
        ck_delta = Homomorphism(uu.underlying, uuu.underlying,
                                tuple(uuu.node_of[tuple(delta(x) for x in c)]
                                      for c in uu.node_chain))
    except InvalidMorphism as exc:
        law["homomorphisms"].append(str(exc))
        return report
    n = len(u)
    for x in range(n):
        if eps_c(delta(x)) != x:
            law["counit-left"].append(u.node_chain[x])
        if ck_eps(delta(x)) != x:
            law["counit-right"].append(u.node_chain[x])
        if ck_delta(delta(x)) != delta_c(delta(x)):
            law["coassociativity"].append(u.node_chain[x])
    for y in range(len(uu)):
        if delta(ck_eps(y)) != y:
            law["idempotence"].append(uu.node_chain[y])
    # naturality of the counit along the counit itself: eps . C_k eps = eps . eps_c
    for y in range(len(uu)):
        if eps(ck_eps(y)) != eps(eps_c(y)):
            law["naturality"].append(uu.node_chain[y])
    return report


# -- Ehrenfeucht-Fraisse comonad --------------------------------------------

def _comparable(s: tuple, t: tuple) -> bool:
    n = min(len(s), len(t))
    return s[:n] == t[:n]


def ef_unravel(a: PointedStructure, k: int, cap: int = 10 ** 6) -> tuple[PointedStructure, Homomorphism]:
    """``E_k A`` pointed at ``[a]``, with the inclusion of ``C_{k-1}(A, a)``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    n = a.universe_size
    total = sum(n ** i for i in range(1, k + 1))
    if total > cap:
        raise ValueError(f"E_{k} would have {total} elements (cap {cap})")
    seqs: list[tuple] = []
    for length in range(1, k + 1):
        seqs.extend(itertools.product(range(n), repeat=length))
    index = {s: i for i, s in enumerate(seqs)}
    rels = {}
    for name, r in a.signature.items():
        tuples = set()
        src = a.relations[name]
        for m in seqs:  # m is the longest member of the tuple
            for t in src:
                options = []
                for x in t:
                    options.append([m[:i + 1] for i in range(len(m)) if m[i] == x])
                for choice in itertools.product(*options):
                    if max(len(c) for c in choice) == len(m):
                        tuples.add(tuple(index[c] for c in choice))
        rels[name] = tuples
    ef = PointedStructure(a.signature, len(seqs), rels, index[(a.basepoint,)])
    u = unravel(a, k - 1)
    inclusion = Homomorphism(u.underlying, ef, tuple(index[c] for c in u.node_chain))
    return ef, inclusion


# -- export ------------------------------------------------------------------

def unravelling_to_dict(u: Unravelling) -> dict:
    doc = structure_to_dict(u.underlying)
    doc["chains"] = {str(i): list(c) for i, c in enumerate(u.node_chain)}
    return doc


def dump_unravelling(u: Unravelling) -> str:
    return json.dumps(unravelling_to_dict(u), separators=(",", ":"))


def to_dot(t: PpTree, chains: Sequence[Chain] | None = None) -> str:
    a = t.underlying
    lines = ["digraph pptree {"]
    for v in range(a.universe_size):
        chain = t.root_chain(v)
        labels = [name for name in sorted(a.signature.sigma_bar) if a.holds(name, chain)]
        text = str(list(chains[v])) if chains else str(v)
        if labels:
            text += "\\n" + ",".join(labels)
        lines.append(f'  n{v} [label="{text}"];')
    for x, y in sorted(a.relations["E"]):
        lines.append(f"  n{x} -> n{y};")
    lines.append("}")
    return "\n".join(lines) + "\n"
