"""Finite posets: order relation, intervals, products, order complexes, isomorphism."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product as cartesian
from typing import Callable, Hashable, Iterable, Mapping, Sequence

import networkx as nx
from networkx.algorithms.isomorphism import DiGraphMatcher

from dowling_nested.errors import DomainError, LabelError
from dowling_nested.simplicial import SimplicialComplex


@dataclass(frozen=True, eq=False)
class Poset:
    """Elements are opaque payloads; ``up[i]`` is the set of indices j with i <= j."""

    elements: tuple
    up: tuple[frozenset[int], ...]
    name: str = ""

    @classmethod
    def from_leq(cls, elements: Sequence[Hashable], leq: Callable[[object, object], bool],
                 name: str = "") -> Poset:
        elements = tuple(elements)
        up = tuple(
            frozenset(j for j, b in enumerate(elements) if i == j or leq(a, b))
            for i, a in enumerate(elements)
        )
        return cls(elements=elements, up=up, name=name)

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"Poset({self.name or 'P'}, {len(self)} elements)"

    # ── Order relation ──────────────────────────────────────────────────────

    def leq(self, i: int, j: int) -> bool:
        return j in self.up[i]

    def lt(self, i: int, j: int) -> bool:
        return i != j and j in self.up[i]

    def comparable(self, i: int, j: int) -> bool:
        return j in self.up[i] or i in self.up[j]

    @cached_property
    def down(self) -> tuple[frozenset[int], ...]:
        down: list[set[int]] = [set() for _ in self.elements]
        for i, ups in enumerate(self.up):
            for j in ups:
                down[j].add(i)
        return tuple(frozenset(d) for d in down)

    @cached_property
    def index(self) -> dict:
        return {e: i for i, e in enumerate(self.elements)}

    def index_of(self, element) -> int:
        try:
            return self.index[element]
        except KeyError:
            raise LabelError(f"{element} is not an element of {self!r}") from None

    @cached_property
    def linear_extension(self) -> tuple[int, ...]:
        return tuple(sorted(range(len(self)), key=lambda i: (len(self.down[i]), i)))

    @cached_property
    def upper_covers(self) -> tuple[tuple[int, ...], ...]:
        covers = []
        for i in range(len(self)):
            covers.append(tuple(sorted(
                j for j in self.up[i] if j != i and len(self.up[i] & self.down[j]) == 2
            )))
        return tuple(covers)

    @cached_property
    def hasse(self) -> tuple[tuple[int, int], ...]:
        return tuple((i, j) for i, cs in enumerate(self.upper_covers) for j in cs)

    @cached_property
    def heights(self) -> tuple[int, ...]:
        """Length of the longest chain ending at each element."""
        h = [0] * len(self)
        for j in self.linear_extension:
            for i in self.down[j]:
                if i != j:
                    h[j] = max(h[j], h[i] + 1)
        return tuple(h)

    @cached_property
    def minimal(self) -> tuple[int, ...]:
        return tuple(i for i in range(len(self)) if len(self.down[i]) == 1)

    @cached_property
    def maximal(self) -> tuple[int, ...]:
        return tuple(i for i in range(len(self)) if len(self.up[i]) == 1)

    @cached_property
    def bottom(self) -> int | None:
        return self.minimal[0] if len(self.minimal) == 1 and len(self.up[self.minimal[0]]) == len(self) else None

    @cached_property
    def top(self) -> int | None:
        return self.maximal[0] if len(self.maximal) == 1 and len(self.down[self.maximal[0]]) == len(self) else None

    @property
    def atoms(self) -> tuple[int, ...]:
        if self.bottom is None:
            return ()
        return self.upper_covers[self.bottom]

    # ── Bounds ──────────────────────────────────────────────────────────────

    def supremum(self, indices: Iterable[int]) -> int | None:
        """Least upper bound of ``indices`` or None."""
        indices = list(indices)
        common = frozenset(range(len(self)))
        for i in indices:
            common &= self.up[i]
        if not common:
            return None
        best = max(common, key=lambda c: len(self.up[c]))
        return best if common <= self.up[best] else None

    def infimum(self, indices: Iterable[int]) -> int | None:
        indices = list(indices)
        common = frozenset(range(len(self)))
        for i in indices:
            common &= self.down[i]
        if not common:
            return None
        best = max(common, key=lambda c: len(self.down[c]))
        return best if common <= self.down[best] else None

    def join(self, i: int, j: int) -> int | None:
        return self.supremum((i, j))

    def meet(self, i: int, j: int) -> int | None:
        return self.infimum((i, j))

    @cached_property
    def is_meet_semilattice(self) -> bool:
        return all(self.meet(i, j) is not None for i, j in combinations(range(len(self)), 2))

    @cached_property
    def is_lattice(self) -> bool:
        return self.is_meet_semilattice and all(
            self.join(i, j) is not None for i, j in combinations(range(len(self)), 2)
        )

    # ── Subposets ───────────────────────────────────────────────────────────

    def subposet(self, indices: Iterable[int], name: str = "") -> Poset:
        keep = sorted(set(indices))
        pos = {old: new for new, old in enumerate(keep)}
        up = tuple(frozenset(pos[j] for j in self.up[i] if j in pos) for i in keep)
        return Poset(elements=tuple(self.elements[i] for i in keep), up=up, name=name)

    def interval_indices(self, a: int, b: int) -> list[int]:
        if not self.leq(a, b):
            raise DomainError(f"{self.elements[a]} is not below {self.elements[b]}")
        return sorted(self.up[a] & self.down[b])

    def proper_part(self) -> Poset:
        drop = {x for x in (self.bottom, self.top) if x is not None}
        return self.subposet((i for i in range(len(self)) if i not in drop), name=f"proper({self.name})")

    def to_json(self) -> dict:
        return {
            "elements": [str(e) for e in self.elements],
            "leq_pairs": [[i, j] for i in range(len(self)) for j in sorted(self.up[i])],
            "hasse": [list(e) for e in self.hasse],
            "bottom": self.bottom,
            "top": self.top,
        }


# ── Constructions ───────────────────────────────────────────────────────────

def interval(P: Poset, a: int, b: int) -> Poset:
    return P.subposet(P.interval_indices(a, b), name=f"[{P.elements[a]},{P.elements[b]}]")


def lower_interval(P: Poset, x: int) -> Poset:
    if P.bottom is None:
        raise DomainError(f"{P!r} has no bottom element")
    return interval(P, P.bottom, x)


def product(P: Poset, Q: Poset) -> Poset:
    return product_all([P, Q])


def product_all(posets: Sequence[Poset]) -> Poset:
    """Componentwise order on tuples; the empty product is a single point."""
    shape = [range(len(P)) for P in posets]
    tuples = list(cartesian(*shape))
    pos = {t: k for k, t in enumerate(tuples)}
    up = tuple(
        frozenset(pos[u] for u in cartesian(*(sorted(P.up[i]) for P, i in zip(posets, t))))
        for t in tuples
    )
    elements = tuple(tuple(P.elements[i] for P, i in zip(posets, t)) for t in tuples)
    return Poset(elements=elements, up=up, name=" x ".join(P.name or "P" for P in posets))


def chain(k: int) -> Poset:
    """Totally ordered set 0 < 1 < ... < k-1."""
    return Poset.from_leq(range(k), lambda a, b: a <= b, name=f"C{k}")


def antichain(k: int) -> Poset:
    return Poset.from_leq(range(k), lambda a, b: a == b, name=f"A{k}")


def boolean_lattice(m: int) -> Poset:
    """Subsets of {1..m} ordered by inclusion."""
    subsets = [frozenset(c) for r in range(m + 1) for c in combinations(range(1, m + 1), r)]
    return Poset.from_leq(subsets, lambda a, b: a <= b, name=f"B{m}")


def order_complex(P: Poset, reduced: bool = False) -> SimplicialComplex:
    """Chains of P (of its proper part when ``reduced``) as a simplicial complex."""
    Q = P.proper_part() if reduced else P
    faces: set[tuple[int, ...]] = {()}

    def extend(chain_: tuple[int, ...]):
        faces.add(tuple(sorted(chain_)))
        for j in sorted(Q.up[chain_[-1]]):
            if j != chain_[-1]:
                extend(chain_ + (j,))

    for v in range(len(Q)):
        extend((v,))
    return SimplicialComplex(vertices=Q.elements, faces=frozenset(faces))


# ── Isomorphism ─────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class PosetIsoWitness:
    source: Poset
    target: Poset
    mapping: tuple[int, ...]

    def __call__(self, i: int) -> int:
        return self.mapping[i]

    def verify(self) -> bool:
        """The mapping is a bijection and preserves <= in both directions."""
        P, Q, f = self.source, self.target, self.mapping
        if len(P) != len(Q) or sorted(f) != list(range(len(Q))):
            return False
        return all(
            P.leq(i, j) == Q.leq(f[i], f[j])
            for i in range(len(P)) for j in range(len(P))
        )


def _hasse_digraph(P: Poset, pins: Mapping[int, int]) -> nx.DiGraph:
    graph = nx.DiGraph()
    for i in range(len(P)):
        graph.add_node(i, sig=(P.heights[i], len(P.up[i]), len(P.down[i])), pin=pins.get(i))
    graph.add_edges_from(P.hasse)
    return graph


def _signature(P: Poset) -> list:
    return sorted((P.heights[i], len(P.up[i]), len(P.down[i])) for i in range(len(P)))


def is_isomorphic(P: Poset, Q: Poset, fixed: Mapping[int, int] | None = None) -> PosetIsoWitness | None:
    """Order isomorphism P -> Q, optionally forced to send ``fixed`` keys to their values."""
    if len(P) != len(Q) or len(P.hasse) != len(Q.hasse) or _signature(P) != _signature(Q):
        return None
    fixed = dict(fixed or {})
    pins_p = {p: k for k, p in enumerate(fixed)}
    pins_q = {q: pins_p[p] for p, q in fixed.items()}
    matcher = DiGraphMatcher(
        _hasse_digraph(P, pins_p), _hasse_digraph(Q, pins_q),
        node_match=lambda a, b: a["sig"] == b["sig"] and a["pin"] == b["pin"],
    )
    if not matcher.is_isomorphic():
        return None
    mapping = tuple(matcher.mapping[i] for i in range(len(P)))
    return PosetIsoWitness(source=P, target=Q, mapping=mapping)
