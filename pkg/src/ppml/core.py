"""Signatures, pointed relational structures, pp-trees and homomorphisms.

Elements of a structure are the dense indices ``0..n-1``.  Every signature
carries the reserved binary symbol ``E`` (the accessibility relation); the
remaining symbols form ``sigma_bar``.
"""

from __future__ import annotations

import itertools
import json
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence, Union

Tuple = tuple  # alias used in annotations for relation tuples
Chain = tuple  # a valuation / E-chain as a tuple of element indices

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*=?\Z")


class PPMLError(Exception):
    """Base class for all library errors."""


class StructureError(PPMLError):
    """Malformed or inconsistent structure."""


class SignatureMismatch(PPMLError):
    pass


class InvalidMorphism(PPMLError):
    pass


class Signature:
    """Ordered map from symbol name to arity, always containing ``E/2``."""

    __slots__ = ("_items", "_arity")

    def __init__(self, symbols: Union[Mapping[str, int], Iterable[tuple[str, int]]]):
        items = list(symbols.items()) if isinstance(symbols, Mapping) else list(symbols)
        arity: dict[str, int] = {}
        for name, r in items:
            if not isinstance(name, str) or not _NAME.match(name):
                raise StructureError(f"bad symbol name {name!r}")
            if name in arity:
                raise StructureError(f"duplicate symbol {name!r}")
            if not isinstance(r, int) or isinstance(r, bool) or r < 1:
                raise StructureError(f"arity of {name!r} must be a positive integer")
            arity[name] = r
        if arity.get("E") != 2:
            raise StructureError("signature must contain E with arity 2")
        self._items = tuple(arity.items())
        self._arity = arity

    @classmethod
    def unimodal(cls, props: Iterable[str] = ()) -> "Signature":
        return cls([("E", 2)] + [(p, 1) for p in props])

    def arity(self, name: str) -> int:
        try:
            return self._arity[name]
        except KeyError:
            raise UnknownSymbol(name) from None

    def __contains__(self, name: object) -> bool:
        return name in self._arity

    def __iter__(self) -> Iterator[str]:
        return (n for n, _ in self._items)

    def __len__(self) -> int:
        return len(self._items)

    def items(self) -> tuple[tuple[str, int], ...]:
        return self._items

    @property
    def sigma_bar(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self._items if n != "E")

    @property
    def max_arity(self) -> int:
        """N: the largest arity over the whole signature (at least 2)."""
        return max(r for _, r in self._items)

    @property
    def window(self) -> int:
        """W: the largest arity over sigma_bar, floored at 1."""
        return max([1] + [r for n, r in self._items if n != "E"])

    def is_unimodal(self) -> bool:
        return all(r == 1 for n, r in self._items if n != "E")

    def extend(self, extra: Mapping[str, int]) -> "Signature":
        merged = dict(self._items)
        for n, r in extra.items():
            if n in merged and merged[n] != r:
                raise SignatureMismatch(f"{n} declared with arities {merged[n]} and {r}")
            merged[n] = r
        return Signature(merged)

    def to_dict(self) -> dict[str, int]:
        return dict(self._items)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Signature) and self._arity == other._arity

    def __hash__(self) -> int:
        return hash(frozenset(self._items))

    def __repr__(self) -> str:
        return f"Signature({dict(self._items)!r})"


class UnknownSymbol(PPMLError, KeyError):
    def __str__(self) -> str:
        return f"unknown symbol {self.args[0]!r}"


@dataclass(frozen=True)
class PointedStructure:
    signature: Signature
    universe_size: int
    relations: Mapping[str, frozenset]
    basepoint: int = 0
    names: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        n = self.universe_size
        if not isinstance(n, int) or n < 1:
            raise StructureError("universe must be non-empty")
        if not 0 <= self.basepoint < n:
            raise StructureError(f"basepoint {self.basepoint} out of range")
        rels = {}
        for name in self.relations:
            if name not in self.signature:
                raise UnknownSymbol(name)
        for name, r in self.signature.items():
            tuples = frozenset(tuple(t) for t in self.relations.get(name, ()))
            for t in tuples:
                if len(t) != r:
                    raise StructureError(f"{name}-tuple {t} does not have arity {r}")
                for x in t:
                    if not isinstance(x, int) or not 0 <= x < n:
                        raise StructureError(f"{name}-tuple {t}: index {x} out of range")
            rels[name] = tuples
        object.__setattr__(self, "relations", rels)
        if self.names is not None and len(self.names) != n:
            raise StructureError("names must list every element")

    def rel(self, name: str) -> frozenset:
        try:
            return self.relations[name]
        except KeyError:
            raise UnknownSymbol(name) from None

    @cached_property
    def successors(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.universe_size)]
        for x, y in self.relations["E"]:
            out[x].append(y)
        return tuple(tuple(sorted(s)) for s in out)

    @cached_property
    def predecessors(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.universe_size)]
        for x, y in self.relations["E"]:
            out[y].append(x)
        return tuple(tuple(sorted(s)) for s in out)

    def holds(self, name: str, s: Sequence[int]) -> bool:
        """``A, s |= R``: the last arity(R) entries of ``s`` form an R-tuple."""
        r = self.signature.arity(name)
        return r <= len(s) and tuple(s[len(s) - r:]) in self.relations[name]

    def is_chain(self, s: Sequence[int]) -> bool:
        e = self.relations["E"]
        return len(s) > 0 and all((s[i], s[i + 1]) in e for i in range(len(s) - 1))

    def with_basepoint(self, b: int) -> "PointedStructure":
        return PointedStructure(self.signature, self.universe_size, self.relations, b, self.names)

    def name_of(self, x: int) -> str:
        return self.names[x] if self.names else str(x)


def structure(sig: Mapping[str, int] | Signature, n: int, basepoint: int = 0, **rels) -> PointedStructure:
    """Convenience constructor: ``structure({"E": 2, "p": 1}, 3, E=[(0, 1)], p=[(1,)])``."""
    if not isinstance(sig, Signature):
        sig = Signature(sig)
    fixed = {}
    for name, ts in rels.items():
        fixed[name] = [t if isinstance(t, tuple) or isinstance(t, list) else (t,) for t in ts]
    return PointedStructure(sig, n, fixed, basepoint)


# -- serialization -----------------------------------------------------------

def _element_index(value, names: list[str] | None, n: int) -> int:
    if isinstance(value, bool):
        raise StructureError(f"bad element reference {value!r}")
    if isinstance(value, int):
        if not 0 <= value < n:
            raise StructureError(f"index {value} out of range")
        return value
    if isinstance(value, str) and names is not None:
        try:
            return names.index(value)
        except ValueError:
            raise StructureError(f"unknown element {value!r}") from None
    raise StructureError(f"bad element reference {value!r}")


def structure_from_dict(doc: Mapping) -> PointedStructure:
    if not isinstance(doc, Mapping):
        raise StructureError("structure document must be an object")
    for key in ("signature", "universe", "basepoint"):
        if key not in doc:
            raise StructureError(f"missing key {key!r}")
    sig_doc = doc["signature"]
    if not isinstance(sig_doc, Mapping):
        raise StructureError("signature must be an object")
    sig = Signature(sig_doc)
    universe = doc["universe"]
    names: list[str] | None = None
    if isinstance(universe, list):
        names = [str(u) for u in universe]
        if len(set(names)) != len(names):
            raise StructureError("duplicate element names")
        n = len(names)
    elif isinstance(universe, int) and not isinstance(universe, bool):
        n = universe
    else:
        raise StructureError("universe must be a count or a list of names")
    if n < 1:
        raise StructureError("universe must be non-empty")
    rel_doc = doc.get("relations", {})
    if not isinstance(rel_doc, Mapping):
        raise StructureError("relations must be an object")
    rels = {}
    for name, tuples in rel_doc.items():
        if name not in sig:
            raise UnknownSymbol(name)
        r = sig.arity(name)
        conv = []
        for t in tuples:
            if not isinstance(t, list):
                t = [t]
            if len(t) != r:
                raise StructureError(f"{name}-tuple {t} does not have arity {r}")
            conv.append(tuple(_element_index(x, names, n) for x in t))
        rels[name] = conv
    base = _element_index(doc["basepoint"], names, n)
    return PointedStructure(sig, n, rels, base, tuple(names) if names else None)


def load_structure(document: str) -> PointedStructure:
    """Parse a JSON structure document."""
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as exc:
        raise StructureError(f"malformed document: {exc}") from None
    return structure_from_dict(doc)


def structure_to_dict(a: PointedStructure) -> dict:
    return {
        "signature": a.signature.to_dict(),
        "universe": list(a.names) if a.names else a.universe_size,
        "basepoint": a.basepoint,
        "relations": {name: [list(t) for t in sorted(a.relations[name])] for name in a.signature},
    }


def dump_structure(a: PointedStructure) -> str:
    return json.dumps(structure_to_dict(a), separators=(",", ":"))


# -- pp-trees ----------------------------------------------------------------

@dataclass(frozen=True)
class PpTreeRejection:
    condition: str
    witness: object
    message: str

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class PpTree:
    underlying: PointedStructure
    parent: tuple[int, ...]  # parent[root] == -1
    height_of: tuple[int, ...]
    tree_height: int

    @property
    def root(self) -> int:
        return self.underlying.basepoint

    @property
    def signature(self) -> Signature:
        return self.underlying.signature

    @property
    def size(self) -> int:
        return self.underlying.universe_size

    def children(self, v: int) -> tuple[int, ...]:
        return self.underlying.successors[v]

    def root_chain(self, v: int) -> Chain:
        """T_v: the nodes from the root down to ``v``."""
        out = []
        while v != -1:
            out.append(v)
            v = self.parent[v]
        return tuple(reversed(out))

    def bfs_order(self) -> list[int]:
        order, queue = [], deque([self.root])
        while queue:
            v = queue.popleft()
            order.append(v)
            queue.extend(self.children(v))
        return order


class NotAPpTree(PPMLError):
    def __init__(self, rejection: PpTreeRejection):
        super().__init__(rejection.message)
        self.rejection = rejection


def validate_pp_tree(s: PointedStructure) -> PpTree | PpTreeRejection:
    """Check the two pp-tree conditions, reporting the first violation."""
    n = s.universe_size
    root = s.basepoint
    preds = s.predecessors
    if preds[root]:
        return PpTreeRejection("rooted-tree", root, f"root {root} has an E-predecessor")
    parent = [-1] * n
    for v in range(n):
        if v == root:
            continue
        if len(preds[v]) != 1:
            return PpTreeRejection(
                "rooted-tree", v, f"node {v} has {len(preds[v])} E-predecessors")
        parent[v] = preds[v][0]
    height = [-1] * n
    height[root] = 0
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for w in s.successors[v]:
            height[w] = height[v] + 1
            queue.append(w)
    for v in range(n):
        if height[v] < 0:
            return PpTreeRejection("rooted-tree", v, f"node {v} is not reachable from the root")
    edges = s.relations["E"]
    for name in sorted(s.signature.sigma_bar):
        for t in sorted(s.relations[name]):
            if not all((t[i], t[i + 1]) in edges for i in range(len(t) - 1)):
                return PpTreeRejection(
                    "root-chain", (name, t), f"{name}-tuple {t} is not an E-chain")
    return PpTree(s, tuple(parent), tuple(height), max(height))


def as_pp_tree(s: PointedStructure | PpTree) -> PpTree:
    if isinstance(s, PpTree):
        return s
    t = validate_pp_tree(s)
    if isinstance(t, PpTreeRejection):
        raise NotAPpTree(t)
    return t


def canonical_code(t: PpTree) -> bytes:
    """AHU-style code; equal codes iff the pp-trees are isomorphic."""
    a = t.underlying
    sig = a.signature
    order = t.bfs_order()
    code: dict[int, bytes] = {}
    for v in reversed(order):
        chain = t.root_chain(v)
        label = b",".join(
            name.encode() for name in sorted(sig.sigma_bar) if a.holds(name, chain))
        kids = sorted(code[w] for w in t.children(v))
        code[v] = b"(" + label + b":" + b"".join(kids) + b")"
    return code[t.root]


# -- homomorphisms -----------------------------------------------------------

@dataclass(frozen=True)
class Homomorphism:
    dom: PointedStructure
    cod: PointedStructure
    mapping: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.dom.signature != self.cod.signature:
            raise SignatureMismatch("homomorphism between different signatures")
        m = tuple(self.mapping)
        object.__setattr__(self, "mapping", m)
        if len(m) != self.dom.universe_size:
            raise InvalidMorphism("map must be total on the domain")
        if any(not 0 <= y < self.cod.universe_size for y in m):
            raise InvalidMorphism("map leaves the codomain")
        if m[self.dom.basepoint] != self.cod.basepoint:
            raise InvalidMorphism("basepoint not preserved")
        for name in self.dom.signature:
            target = self.cod.relations[name]
            for tup in self.dom.relations[name]:
                if tuple(m[x] for x in tup) not in target:
                    raise InvalidMorphism(f"{name}-tuple {tup} is not preserved")

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    def image(self, s: Sequence[int]) -> Chain:
        return tuple(self.mapping[x] for x in s)

    @property
    def is_injective(self) -> bool:
        return len(set(self.mapping)) == len(self.mapping)

    @property
    def is_surjective(self) -> bool:
        return len(set(self.mapping)) == self.cod.universe_size

    @property
    def is_strong(self) -> bool:
        """Relations are reflected: f(t) in R implies t in R."""
        pre: dict[int, list[int]] = {}
        for x, y in enumerate(self.mapping):
            pre.setdefault(y, []).append(x)
        for name in self.dom.signature:
            src = self.dom.relations[name]
            for tup in self.cod.relations[name]:
                if all(y in pre for y in tup):
                    for cand in itertools.product(*(pre[y] for y in tup)):
                        if cand not in src:
                            return False
        return True

    @property
    def is_embedding(self) -> bool:
        return self.is_injective and self.is_strong

    @property
    def is_isomorphism(self) -> bool:
        return self.is_injective and self.is_surjective and self.is_strong

    def compose(self, g: "Homomorphism") -> "Homomorphism":
        """``g after self``."""
        return Homomorphism(self.dom, g.cod, tuple(g.mapping[y] for y in self.mapping))


def identity(a: PointedStructure) -> Homomorphism:
    return Homomorphism(a, a, tuple(range(a.universe_size)))


def _search_order(dom: PointedStructure) -> list[int]:
    t = validate_pp_tree(dom)
    if isinstance(t, PpTree):
        return t.bfs_order()
    rest = [x for x in range(dom.universe_size) if x != dom.basepoint]
    return [dom.basepoint] + rest


def _homomorphisms(dom: PointedStructure, cod: PointedStructure) -> Iterator[tuple[int, ...]]:
    if dom.signature != cod.signature:
        raise SignatureMismatch("structures over different signatures")
    order = _search_order(dom)
    pos = {x: i for i, x in enumerate(order)}
    # constraints[i]: tuples whose last-assigned entry is order[i]
    constraints: list[list[tuple[frozenset, tuple]]] = [[] for _ in order]
    for name in dom.signature:
        target = cod.relations[name]
        for tup in dom.relations[name]:
            constraints[max(pos[x] for x in tup)].append((target, tup))
    # candidate generator: an E-edge to an earlier element narrows the domain
    anchor: list[tuple[int, int] | None] = [None] * len(order)
    for x, y in dom.relations["E"]:
        if pos[x] < pos[y] and anchor[pos[y]] is None:
            anchor[pos[y]] = (x, 0)
        elif pos[y] < pos[x] and anchor[pos[x]] is None:
            anchor[pos[x]] = (y, 1)
    everything = tuple(range(cod.universe_size))
    f = [-1] * dom.universe_size

    def extend(i: int) -> Iterator[tuple[int, ...]]:
        if i == len(order):
            yield tuple(f)
            return
        x = order[i]
        if i == 0:
            cands: Sequence[int] = (cod.basepoint,) if x == dom.basepoint else everything
        elif anchor[i] is not None:
            y, direction = anchor[i]
            cands = cod.successors[f[y]] if direction == 0 else cod.predecessors[f[y]]
        else:
            cands = everything
        if x == dom.basepoint:
            cands = [c for c in cands if c == cod.basepoint]
        for c in cands:
            f[x] = c
            if all(tuple(f[z] for z in tup) in target for target, tup in constraints[i]):
                yield from extend(i + 1)
        f[x] = -1

    yield from extend(0)


def find_homomorphism(dom: PointedStructure, cod: PointedStructure) -> Homomorphism | None:
    for m in _homomorphisms(dom, cod):
        return Homomorphism(dom, cod, m)
    return None


def count_homomorphisms(dom: PointedStructure, cod: PointedStructure) -> int:
    return sum(1 for _ in _homomorphisms(dom, cod))


def product(x: PointedStructure, y: PointedStructure) -> PointedStructure:
    """Categorical product; the pair ``(i, j)`` has index ``i * |y| + j``."""
    if x.signature != y.signature:
        raise SignatureMismatch("product of structures over different signatures")
    m = y.universe_size
    rels = {}
    for name in x.signature:
        rels[name] = [
            tuple(i * m + j for i, j in zip(s, t))
            for s in x.relations[name] for t in y.relations[name]
        ]
    return PointedStructure(x.signature, x.universe_size * m, rels, x.basepoint * m + y.basepoint)


def terminal(sig: Signature) -> PointedStructure:
    """The one-point structure with every relation full."""
    return PointedStructure(sig, 1, {name: [(0,) * r] for name, r in sig.items()}, 0)


def relabel(a: PointedStructure, perm: Sequence[int]) -> PointedStructure:
    """Rename element ``x`` to ``perm[x]``."""
    rels = {name: [tuple(perm[x] for x in t) for t in a.relations[name]] for name in a.signature}
    return PointedStructure(a.signature, a.universe_size, rels, perm[a.basepoint])


def e_chains(a: PointedStructure, max_len: int, start: int | None = None) -> Iterator[Chain]:
    """All E-chains of length 1..max_len (from ``start`` when given), in BFS order."""
    level = [(x,) for x in ([start] if start is not None else range(a.universe_size))]
    length = 1
    while level and length <= max_len:
        yield from level
        level = [c + (y,) for c in level for y in a.successors[c[-1]]]
        length += 1
