"""G-symmetric partitions: canonical encoding, order, Dowling lattices Q_n(G) and Q_n^0(G).

An element of the base set {0} ∪ ([n]×G) is either the integer 0 or a pair
(i, g). The group acts by g·(i, h) = (i, gh) and fixes 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations, product as cartesian
from math import comb
from typing import Hashable, Iterable, Iterator, Sequence

from sympy import bell
from sympy.functions.combinatorial.numbers import stirling
from sympy.utilities.iterables import multiset_partitions

from dowling_nested.errors import (
    DomainError, IncompatibilityError, ResourceCapError, StructureError, SymmetryError,
)
from dowling_nested.groups import GroupTable
from dowling_nested.posets import Poset, PosetIsoWitness, lower_interval, product_all
from dowling_nested.state import config
from dowling_nested.ui import dbg

BaseElement = Hashable  # 0 or (i, g)


# ── Set partitions ──────────────────────────────────────────────────────────

@dataclass(frozen=True, order=True)
class SetPartition:
    """Partition of a finite set of integers; blocks sorted, ordered by minimum."""

    blocks: tuple[tuple[int, ...], ...]

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]]) -> SetPartition:
        bs = [tuple(sorted(b)) for b in blocks]
        if any(not b for b in bs):
            raise StructureError("empty block in set partition")
        seen = [x for b in bs for x in b]
        if len(seen) != len(set(seen)):
            raise StructureError("set partition blocks overlap")
        return cls(tuple(sorted(bs)))

    @cached_property
    def ground(self) -> frozenset[int]:
        return frozenset(x for b in self.blocks for x in b)

    @cached_property
    def block_of(self) -> dict[int, tuple[int, ...]]:
        return {x: b for b in self.blocks for x in b}

    def refines(self, other: SetPartition) -> bool:
        return all(set(b) <= set(other.block_of[b[0]]) for b in self.blocks)

    @property
    def nonsingleton_blocks(self) -> tuple[tuple[int, ...], ...]:
        return tuple(b for b in self.blocks if len(b) > 1)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(sorted((len(b) for b in self.blocks), reverse=True))

    @property
    def rank(self) -> int:
        return len(self.ground) - len(self.blocks)

    def without_zero(self) -> SetPartition:
        """Drop the singleton block {0} (the Π_n view of a Π_{n,0} element)."""
        if self.blocks and self.blocks[0] == (0,):
            return SetPartition(self.blocks[1:])
        return self

    def __str__(self) -> str:
        return "|".join(" ".join(map(str, b)) for b in self.blocks)


AssociatedPartition = SetPartition


def set_partitions(ground: Sequence[int]) -> Iterator[SetPartition]:
    ground = sorted(ground)
    if not ground:
        yield SetPartition(())
        return
    for blocks in multiset_partitions(ground):
        yield SetPartition.from_blocks(blocks)


# ── Dowling elements ────────────────────────────────────────────────────────

@dataclass(frozen=True)
class DowlingElement:
    """Canonical encoding of a G-symmetric partition.

    ``zero`` lists the indices absorbed by the zero block. ``simple`` has one
    (indices, labels) pair per block orbit, labels[0] being the identity and
    orbits sorted by their smallest index.
    """

    n: int
    zero: tuple[int, ...]
    simple: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    group: GroupTable = field(compare=False, repr=False)

    @property
    def rank(self) -> int:
        return self.n - len(self.simple)

    @property
    def assoc(self) -> SetPartition:
        return SetPartition(((0,) + self.zero,) + tuple(idx for idx, _ in self.simple))

    @property
    def tuples(self) -> tuple[tuple[int, ...], ...]:
        return tuple(lab for _, lab in self.simple)

    @property
    def zero_block(self) -> tuple[int, ...]:
        return (0,) + self.zero

    @property
    def has_trivial_zero(self) -> bool:
        return not self.zero

    @property
    def nonsingleton_simple(self) -> tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]:
        return tuple(s for s in self.simple if len(s[0]) > 1)

    @property
    def is_type_one(self) -> bool:
        return not self.zero and len(self.nonsingleton_simple) == 1

    @property
    def is_type_zero(self) -> bool:
        return bool(self.zero) and not self.nonsingleton_simple

    @property
    def is_top(self) -> bool:
        return len(self.zero) == self.n

    def nonsingleton_assoc_blocks(self) -> list[frozenset[int]]:
        """Nonsingleton blocks of the associated partition of {0,...,n}."""
        blocks = [frozenset(idx) for idx, _ in self.nonsingleton_simple]
        if self.zero:
            blocks.insert(0, frozenset(self.zero_block))
        return blocks

    def sort_key(self) -> tuple:
        return (self.rank, str(self))

    def __str__(self) -> str:
        parts = [" ".join(map(str, self.zero_block))]
        for idx, lab in self.simple:
            parts.append(" ".join(str(i) if g == 0 else f"{i}~{g}" for i, g in zip(idx, lab)))
        return "|".join(parts)

    def decode(self) -> frozenset[frozenset[BaseElement]]:
        """The partition of {0} ∪ ([n]×G) this element encodes."""
        G = self.group
        blocks = [frozenset([0, *((i, g) for i in self.zero for g in G.elements())])]
        for idx, lab in self.simple:
            for h in G.elements():
                blocks.append(frozenset((i, G.mul[h][t]) for i, t in zip(idx, lab)))
        return frozenset(blocks)


def _act(G: GroupTable, g: int, x: BaseElement) -> BaseElement:
    return 0 if x == 0 else (x[0], G.mul[g][x[1]])


def normalize(raw_blocks: Iterable[Iterable[BaseElement]], G: GroupTable, n: int | None = None) -> DowlingElement:
    """Canonical encoding of a G-symmetric partition given by its blocks."""
    blocks = [frozenset(b) for b in raw_blocks]
    where: dict[BaseElement, int] = {}
    for bi, b in enumerate(blocks):
        if not b:
            raise StructureError("empty block")
        for x in b:
            if x != 0 and not (isinstance(x, tuple) and len(x) == 2 and x[0] >= 1 and 0 <= x[1] < G.order):
                raise StructureError(f"{x!r} is not an element of the base set")
            if x in where:
                raise StructureError(f"{x!r} lies in two blocks")
            where[x] = bi
    if 0 not in where:
        raise StructureError("0 is not covered by any block")
    if n is None:
        n = max((x[0] for x in where if x != 0), default=0)
    expected = 1 + n * G.order
    if len(where) != expected or any(x != 0 and x[0] > n for x in where):
        raise StructureError(f"blocks do not partition the base set for n={n}")

    for b in blocks:
        for g in G.elements():
            images = {where[_act(G, g, x)] for x in b}
            if len(images) != 1 or len(blocks[next(iter(images))]) != len(b):
                raise SymmetryError(f"block {sorted(map(str, b))} is not carried to a block by {g}")

    zero = tuple(sorted({x[0] for x in blocks[where[0]] if x != 0}))
    orbits: dict[tuple[int, ...], tuple[int, ...]] = {}
    for b in blocks:
        if 0 in b:
            continue
        members = sorted(b)
        idx = tuple(i for i, _ in members)
        if len(set(idx)) != len(idx):
            raise StructureError(f"block {members} is not simple (orbit shorter than |G|)")
        if idx in orbits:
            continue
        h_inv = G.inv[members[0][1]]
        orbits[idx] = tuple(G.mul[h_inv][g] for _, g in members)
    simple = tuple(sorted(orbits.items()))
    return DowlingElement(n=n, zero=zero, simple=simple, group=G)


def make_element(n: int, G: GroupTable, zero: Iterable[int] = (),
                 blocks: Iterable[Sequence] = ()) -> DowlingElement:
    """Element with the given zero indices and orbit representatives.

    A representative is a sequence of indices (all labels identity) or of
    (i, g) pairs. Indices not mentioned become singletons.
    """
    zero = tuple(sorted(set(zero)))
    raw: list[set] = [{0, *((i, g) for i in zero for g in G.elements())}]
    used = set(zero)
    for rep in blocks:
        pairs = [(x, 0) if isinstance(x, int) else tuple(x) for x in rep]
        used.update(i for i, _ in pairs)
        for h in G.elements():
            raw.append({(i, G.mul[h][g]) for i, g in pairs})
    for i in range(1, n + 1):
        if i not in used:
            raw.extend({(i, g)} for g in G.elements())
    return normalize(raw, G, n)


def parse_element(text: str, G: GroupTable, n: int | None = None) -> DowlingElement:
    """Inverse of ``str(element)``: ``0 3|1 2~1`` etc. Missing indices become singletons when n is given."""
    parts = [p.strip() for p in text.split("|")]
    zero_entries = parts[0].split()
    if not zero_entries or zero_entries[0] != "0":
        raise StructureError(f"first block of {text!r} must be the zero block")
    zero = [int(x) for x in zero_entries[1:]]
    blocks = []
    for part in parts[1:]:
        rep = []
        for entry in part.split():
            i, _, g = entry.partition("~")
            rep.append((int(i), int(g) if g else 0))
        blocks.append(rep)
    if n is None:
        n = max([*zero, *(i for rep in blocks for i, _ in rep)], default=0)
    return make_element(n, G, zero, blocks)


def forgetful(omega: DowlingElement) -> AssociatedPartition:
    return omega.assoc


# ── Order, meet and join ────────────────────────────────────────────────────

def _check_compatible(a: DowlingElement, b: DowlingElement):
    if a.n != b.n or (a.group is not b.group and a.group.mul != b.group.mul):
        raise IncompatibilityError(f"elements {a} and {b} live in different Dowling lattices")


def leq(a: DowlingElement, b: DowlingElement) -> bool:
    """a <= b: refinement of associated partitions with block-wise translating labels."""
    _check_compatible(a, b)
    bz = set(b.zero)
    if not set(a.zero) <= bz:
        return False
    where: dict[int, tuple[int, int]] = {}
    for j, (idx, lab) in enumerate(b.simple):
        for i, g in zip(idx, lab):
            where[i] = (j, g)
    mul = a.group.mul
    for idx, lab in a.simple:
        if idx[0] in bz:
            if not bz.issuperset(idx):
                return False
            continue
        if any(i in bz for i in idx):
            return False
        j, h = where[idx[0]]
        # labels of b on this block are h times the labels of a
        if any(where[i] != (j, mul[h][g]) for i, g in zip(idx, lab)):
            return False
    return True


def meet(a: DowlingElement, b: DowlingElement) -> DowlingElement:
    _check_compatible(a, b)
    blocks = [x & y for x in a.decode() for y in b.decode() if x & y]
    return normalize(blocks, a.group, a.n)


def join(a: DowlingElement, b: DowlingElement) -> DowlingElement:
    _check_compatible(a, b)
    parent: dict[BaseElement, BaseElement] = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for block in (*a.decode(), *b.decode()):
        first, *rest = list(block)
        for x in rest:
            parent[find(x)] = find(first)

    merged: dict[BaseElement, set] = {}
    for x in [0, *((i, g) for i in range(1, a.n + 1) for g in a.group.elements())]:
        merged.setdefault(find(x), set()).add(x)

    zero_block: set = set()
    others = []
    for block in merged.values():
        idx = [x[0] for x in block if x != 0]
        if 0 in block or len(idx) != len(set(idx)):
            zero_block |= block
        else:
            others.append(block)
    zero_block.add(0)
    return normalize([zero_block, *others], a.group, a.n)


# ── Enumeration ─────────────────────────────────────────────────────────────

def lattice_size(n: int, k: int) -> int:
    """|Q_n(G)| for |G| = k."""
    return sum(
        comb(n, j) * sum(int(stirling(n - j, b)) * k ** (n - j - b) for b in range(n - j + 1))
        for j in range(n + 1)
    )


def q0_size(n: int, k: int) -> int:
    return sum(int(stirling(n, b)) * k ** (n - b) for b in range(n + 1))


def atom_count(n: int, k: int) -> int:
    return n + k * comb(n, 2)


def _elements(n: int, G: GroupTable, trivial_zero: bool) -> Iterator[DowlingElement]:
    indices = range(1, n + 1)
    zero_choices = [()] if trivial_zero else [
        z for r in range(n + 1) for z in combinations(indices, r)
    ]
    for zero in zero_choices:
        rest = [i for i in indices if i not in zero]
        for partition in set_partitions(rest):
            label_choices = [
                [(0,) + t for t in cartesian(G.elements(), repeat=len(b) - 1)]
                for b in partition.blocks
            ]
            for labels in cartesian(*label_choices):
                yield DowlingElement(n=n, zero=zero, simple=tuple(zip(partition.blocks, labels)), group=G)


def _poset_of(elements: Iterable[DowlingElement], name: str) -> Poset:
    elements = sorted(elements, key=DowlingElement.sort_key)
    up = []
    for i, a in enumerate(elements):
        up.append(frozenset(
            j for j in range(i, len(elements))
            if j == i or (elements[j].rank > a.rank and leq(a, elements[j]))
        ))
    return Poset(elements=tuple(elements), up=tuple(up), name=name)


def _guard(what: str, projected: int, cap: int | None):
    cap = cap or config.size_cap
    if projected > cap:
        raise ResourceCapError(what, projected, cap)


@lru_cache(maxsize=None)
def _dowling_poset(n: int, G: GroupTable) -> Poset:
    dbg(f"enumerating Q_{n}({G}): {lattice_size(n, G.order)} elements")
    return _poset_of(_elements(n, G, trivial_zero=False), name=f"Q{n}({G})")


@lru_cache(maxsize=None)
def _q0_poset(n: int, G: GroupTable) -> Poset:
    return _poset_of(_elements(n, G, trivial_zero=True), name=f"Q0_{n}({G})")


def build_dowling_lattice(n: int, G: GroupTable, cap: int | None = None) -> Poset:
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    _guard(f"Q_{n}({G})", lattice_size(n, G.order), cap)
    return _dowling_poset(n, G)


def build_q0(n: int, G: GroupTable, cap: int | None = None) -> Poset:
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    _guard(f"Q0_{n}({G})", q0_size(n, G.order), cap)
    return _q0_poset(n, G)


@lru_cache(maxsize=None)
def _partition_poset(ground: tuple[int, ...]) -> Poset:
    elements = sorted(set_partitions(ground), key=lambda p: (p.rank, str(p)))
    return Poset.from_leq(elements, SetPartition.refines, name=f"Pi{len(ground)}")


def build_partition_lattice(n: int, with_zero: bool = False, cap: int | None = None) -> Poset:
    """Π_n over {1..n}, or Π_{n,0} over {0..n} when ``with_zero``."""
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    ground = tuple(range(0 if with_zero else 1, n + 1))
    _guard(f"Pi_{len(ground)}", int(bell(len(ground))), cap)
    return _partition_poset(ground)


def join_in_q0(a: DowlingElement, b: DowlingElement) -> DowlingElement | None:
    _check_compatible(a, b)
    if a.zero or b.zero:
        raise DomainError("join_in_q0 needs elements with trivial zero block")
    Q0 = build_q0(a.n, a.group)
    j = Q0.join(Q0.index_of(a), Q0.index_of(b))
    return None if j is None else Q0.elements[j]


# ── Interval isomorphisms ───────────────────────────────────────────────────

def _force_labels(sigma: DowlingElement, pi: SetPartition) -> DowlingElement:
    """The unique element below sigma with associated partition pi (trivial zero)."""
    label = {i: g for idx, lab in sigma.simple for i, g in zip(idx, lab)}
    G = sigma.group
    simple = []
    for block in pi.blocks:
        first = G.inv[label[block[0]]]
        simple.append((block, tuple(G.mul[first][label[i]] for i in block)))
    return DowlingElement(n=sigma.n, zero=(), simple=tuple(simple), group=G)


def lower_interval_iso_q0(sigma: DowlingElement) -> PosetIsoWitness:
    """(Q_n^0(G))_{<=sigma} ≅ (Π_n)_{<=forgetful(sigma)}, built by forcing labels."""
    if sigma.zero:
        raise DomainError(f"{sigma} does not lie in Q_n^0(G)")
    Q0 = build_q0(sigma.n, sigma.group)
    Pi = build_partition_lattice(sigma.n)
    source = lower_interval(Q0, Q0.index_of(sigma))
    target = lower_interval(Pi, Pi.index_of(sigma.assoc.without_zero()))
    mapping = [-1] * len(source)
    for t, pi in enumerate(target.elements):
        mapping[source.index_of(_force_labels(sigma, pi))] = t
    witness = PosetIsoWitness(source=source, target=target, mapping=tuple(mapping))
    if not witness.verify():
        raise StructureError(f"label forcing below {sigma} is not an order isomorphism")
    return witness


@dataclass(frozen=True)
class IntervalDecomposition:
    m: int
    sizes: tuple[int, ...]
    witness: PosetIsoWitness


def _decompose(eta: DowlingElement, omega: DowlingElement) -> tuple:
    zero_pos = {i: p + 1 for p, i in enumerate(omega.zero)}
    q_simple = tuple(
        (tuple(zero_pos[i] for i in idx), lab)
        for idx, lab in eta.simple if idx[0] in zero_pos
    )
    q = DowlingElement(
        n=len(omega.zero), zero=tuple(zero_pos[i] for i in eta.zero), simple=q_simple, group=eta.group,
    )
    factors = [q]
    for idx, _ in omega.nonsingleton_simple:
        pos = {i: p + 1 for p, i in enumerate(idx)}
        factors.append(SetPartition.from_blocks(
            [pos[i] for i in e_idx] for e_idx, _ in eta.simple if e_idx[0] in pos
        ))
    return tuple(factors)


def interval_decomposition(omega: DowlingElement) -> IntervalDecomposition:
    """[0̂, ω] ≅ Q_m(G) × Π_{s_1} × ... over the nonsingleton simple blocks of ω."""
    L = build_dowling_lattice(omega.n, omega.group)
    source = lower_interval(L, L.index_of(omega))
    m = len(omega.zero)
    sizes = tuple(len(idx) for idx, _ in omega.nonsingleton_simple)
    target = product_all([_dowling_poset(m, omega.group), *(build_partition_lattice(s) for s in sizes)])
    mapping = tuple(target.index_of(_decompose(eta, omega)) for eta in source.elements)
    witness = PosetIsoWitness(source=source, target=target, mapping=mapping)
    if not witness.verify():
        raise StructureError(f"interval decomposition below {omega} is not an order isomorphism")
    return IntervalDecomposition(m=m, sizes=sizes, witness=witness)
