"""Type-0 chains, the filtration T_n^G = K_0 ⊆ K_1 ⊆ ... ⊆ K_{n-1} = T_n(G), and sphere counts."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import factorial, prod
from typing import Iterable, Iterator

from sympy.utilities.iterables import multiset_permutations, partitions

from dowling_nested.dowling import DowlingElement, make_element, set_partitions
from dowling_nested.errors import DomainError, NotNestedError, NotPureError
from dowling_nested.groups import GroupTable
from dowling_nested.homology import HomologyResult, reduced_homology
from dowling_nested.nested import compute_IG, condition_n, nested_complex
from dowling_nested.simplicial import (
    SimplicialComplex, boundary_complex, is_isomorphic_complexes, join, join_all, link,
)
from dowling_nested.trees import build_dowling_tree_complex, build_tree_complex
from dowling_nested.ui import dbg


def q_factor(p: int, k: int) -> int:
    """Π_{j=1}^{p-1} (jk - 1)."""
    return prod(j * k - 1 for j in range(1, p))


@dataclass(frozen=True)
class TypeZeroChain:
    """A chain {0} ⊊ w_1 ⊊ ... ⊊ w_l ⊊ {0,...,n} of zero blocks."""

    n: int
    k: int
    zero_blocks: tuple[frozenset[int], ...]

    def __post_init__(self):
        full = frozenset(range(self.n + 1))
        previous = frozenset({0})
        for w in self.zero_blocks:
            if 0 not in w or not w <= full:
                raise DomainError(f"{sorted(w)} is not a zero block over {{0..{self.n}}}")
            if not previous < w or w == full:
                raise DomainError("zero blocks must increase strictly between {0} and {0..n}")
            previous = w

    @classmethod
    def from_elements(cls, X: Iterable[DowlingElement]) -> TypeZeroChain:
        X = sorted(X, key=lambda e: len(e.zero))
        if not X:
            raise DomainError("a type-0 chain needs at least one element")
        if not all(e.is_type_zero for e in X):
            raise DomainError("every member of a type-0 chain has type 0")
        return cls(n=X[0].n, k=X[0].group.order, zero_blocks=tuple(frozenset(e.zero_block) for e in X))

    @property
    def length(self) -> int:
        return len(self.zero_blocks)

    @cached_property
    def gaps(self) -> tuple[frozenset[int], ...]:
        """w_{i+1} ∖ w_i with the sentinels w_0 = {0} and w_{l+1} = {0..n}."""
        walls = [frozenset({0}), *self.zero_blocks, frozenset(range(self.n + 1))]
        return tuple(b - a for a, b in zip(walls, walls[1:]))

    @property
    def p(self) -> tuple[int, ...]:
        return tuple(len(g) for g in self.gaps)

    @property
    def q(self) -> tuple[int, ...]:
        return tuple(q_factor(p, self.k) for p in self.p)

    @property
    def Q(self) -> int:
        return prod(self.q)

    def elements(self, G: GroupTable) -> tuple[DowlingElement, ...]:
        return chain_elements(self, G)

    def __str__(self) -> str:
        return " < ".join("".join(map(str, sorted(w))) for w in self.zero_blocks)

    def to_json(self) -> dict:
        return {"chain": [sorted(w) for w in self.zero_blocks], "p": list(self.p), "q": list(self.q), "Q": self.Q}


def q_values(omega: TypeZeroChain) -> tuple[tuple[int, ...], tuple[int, ...], int]:
    return omega.p, omega.q, omega.Q


def chain_elements(omega: TypeZeroChain, G: GroupTable) -> tuple[DowlingElement, ...]:
    if G.order != omega.k:
        raise DomainError(f"chain built for |G| = {omega.k}, got {G}")
    return tuple(make_element(omega.n, G, zero=w - {0}) for w in omega.zero_blocks)


def type_zero_chains(n: int, k: int) -> Iterator[TypeZeroChain]:
    """Every nonempty chain of nonempty proper subsets of [n], as zero-block chains."""
    ground = range(1, n + 1)
    proper = [frozenset(c) for r in range(1, n) for c in combinations(ground, r)]

    def extend(chain: list[frozenset[int]]) -> Iterator[list[frozenset[int]]]:
        yield chain
        for s in proper:
            if chain[-1] < s:
                yield from extend(chain + [s])

    for s in proper:
        for chain in extend([s]):
            yield TypeZeroChain(n=n, k=k, zero_blocks=tuple(frozenset({0}) | w for w in chain))


# ── Simplex types ───────────────────────────────────────────────────────────

@dataclass(frozen=True)
class Classification:
    kind: str  # "type0" | "type1" | "mixed"
    type_zero: tuple[DowlingElement, ...]

    @property
    def chain(self) -> TypeZeroChain | None:
        return TypeZeroChain.from_elements(self.type_zero) if self.type_zero else None


def classify(X: Iterable[DowlingElement]) -> Classification:
    """Split a nested set of J^G into its type-0 part; the empty set counts as type 1."""
    X = list(X)
    if not all(e.is_type_one or e.is_type_zero for e in X):
        raise DomainError("classification applies to subsets of J^G")
    if not condition_n(X):
        raise NotNestedError("the simplex is not nested")
    zero = tuple(sorted((e for e in X if e.is_type_zero), key=lambda e: len(e.zero)))
    if not zero:
        kind = "type1"
    elif len(zero) == len(X):
        kind = "type0"
    else:
        kind = "mixed"
    return Classification(kind=kind, type_zero=zero)


def type_zero_count(face: Iterable[DowlingElement]) -> int:
    return sum(not e.is_type_one for e in face)


# ── The filtration ──────────────────────────────────────────────────────────

def build_Km(n: int, G: GroupTable, m: int) -> SimplicialComplex:
    """Faces of T_n(G) with at most m type-0 members."""
    if not 0 <= m <= max(n - 1, 0):
        raise DomainError(f"m must lie in [0, {n - 1}], got {m}")
    return build_dowling_tree_complex(n, G).subcomplex(lambda face: type_zero_count(face) <= m)


def _as_type_zero_simplex(X, G: GroupTable) -> tuple[TypeZeroChain, tuple[DowlingElement, ...]]:
    if isinstance(X, TypeZeroChain):
        return X, chain_elements(X, G)
    elements = tuple(X)
    omega = TypeZeroChain.from_elements(elements)
    return omega, tuple(sorted(elements, key=lambda e: len(e.zero)))


def simplicial_link_in_Km(X, G: GroupTable) -> SimplicialComplex:
    """The plain link lk_{K_m}(X) with m = l(X)."""
    omega, elements = _as_type_zero_simplex(X, G)
    return link(build_Km(omega.n, G, omega.length), elements)


def link_in_Km(X, G: GroupTable) -> SimplicialComplex:
    """Faces Z of K_m with X ⊄ Z and Z ∪ X in K_m, i.e. ∂X * lk_{K_m}(X).

    This is the complex along which the star of X is attached when passing
    from K_{m-1} to K_m. For a single vertex it is the plain link.
    """
    omega, elements = _as_type_zero_simplex(X, G)
    K = build_Km(omega.n, G, omega.length)
    return join(boundary_complex(elements), link(K, elements))


def link_decomposition(omega: TypeZeroChain, G: GroupTable) -> SimplicialComplex:
    """∂Δ^{m-1} * Ñ(I^G, Q_{p_0}^0) * ... * Ñ(I^G, Q_{p_m}^0), with tagged factors."""
    factors = [boundary_complex(omega.length).tagged("B")]
    for i, p in enumerate(omega.p):
        if p == 1:
            factors.append(SimplicialComplex.empty())
            continue
        B = compute_IG(p, G)
        factors.append(nested_complex(B.base, B, reduced=True).tagged(("Q", i)))
    return join_all(factors)


def join_decomposition_check(X, G: GroupTable) -> bool:
    omega, _ = _as_type_zero_simplex(X, G)
    found = is_isomorphic_complexes(link_in_Km(omega, G), link_decomposition(omega, G)) is not None
    if not found:
        dbg(f"link of {omega} is not isomorphic to its join decomposition")
    return found


@dataclass(frozen=True)
class LinkRecord:
    chain: TypeZeroChain
    homology: HomologyResult
    join_iso: bool
    in_previous: bool

    @property
    def spheres_ok(self) -> bool:
        d = self.chain.n - 3
        return self.homology.concentrated_in(d) and self.homology.betti(d) == self.chain.Q \
            and self.homology.is_torsion_free

    def to_json(self) -> dict:
        return {
            **self.chain.to_json(),
            "betti_of_link": list(self.homology.reduced_betti),
            "betti_minus_one": self.homology.betti_minus_one,
            "join_iso": self.join_iso,
            "in_previous": self.in_previous,
        }


def link_record(omega: TypeZeroChain, G: GroupTable) -> LinkRecord:
    lk = link_in_Km(omega, G)
    previous = build_Km(omega.n, G, omega.length - 1)
    return LinkRecord(
        chain=omega,
        homology=reduced_homology(lk),
        join_iso=join_decomposition_check(omega, G),
        in_previous=lk.is_subcomplex_of(previous),
    )


# ── Cohen-Macaulay check ────────────────────────────────────────────────────

def cm_link_check(K: SimplicialComplex) -> bool:
    """Every face link has reduced homology only in degree dim K - |F|."""
    if not K.is_pure:
        raise NotPureError(f"{K!r} is not pure")
    for face in sorted(K.faces, key=lambda f: (len(f), f)):
        labels = [K.vertices[i] for i in face]
        H = reduced_homology(link(K, labels))
        if not H.concentrated_in(K.dim - len(face)):
            dbg(f"link of {[str(v) for v in labels]} has homology outside degree {K.dim - len(face)}")
            return False
    return True


# ── Counting identities ─────────────────────────────────────────────────────

def _products(n: int, k: int) -> tuple[int, int]:
    return prod(j * k + 1 for j in range(1, n)), prod(j * k - 1 for j in range(1, n))


def _compositions(n: int) -> Iterator[tuple[int, ...]]:
    for mult in partitions(n):
        parts = [size for size, count in mult.items() for _ in range(count)]
        for perm in multiset_permutations(parts):
            yield tuple(perm)


def chain_sum(n: int, k: int) -> tuple[int, int]:
    """(Π_{j<n}(jk+1) - Π_{j<n}(jk-1), Σ_ω Q(ω)); the sum runs over compositions of n."""
    if n < 2 or k < 1:
        raise DomainError(f"chain_sum needs n >= 2 and k >= 1, got ({n}, {k})")
    plus, minus = _products(n, k)
    rhs = 0
    for comp in _compositions(n):
        if len(comp) < 2:
            continue
        rhs += factorial(n) // prod(factorial(p) for p in comp) * prod(q_factor(p, k) for p in comp)
    return plus - minus, rhs


def chain_sum_brute(n: int, k: int) -> int:
    return sum(omega.Q for omega in type_zero_chains(n, k))


def sphere_count_difference(n: int, G: GroupTable) -> tuple[int, int]:
    """β̃_{n-2}(T_n(G)) - β̃_{n-2}(T_n^G), against the chain sum."""
    d = n - 2
    full = reduced_homology(build_dowling_tree_complex(n, G)).betti(d)
    part = reduced_homology(build_tree_complex(n, G)).betti(d)
    return full - part, chain_sum(n, G.order)[1]


@dataclass(frozen=True)
class NumerologyReport:
    n: int
    k: int
    lhs: int
    rhs_literal: int
    per_partition_terms: dict[tuple[int, ...], int]
    shifted_chain_sum: tuple[int, int]

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs_literal

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "lhs": self.lhs,
            "rhs_literal": self.rhs_literal,
            "equal": self.equal,
            "per_partition_terms": {" ".join(map(str, s)): t for s, t in sorted(self.per_partition_terms.items())},
            "shifted_chain_sum": {"lhs": self.shifted_chain_sum[0], "rhs": self.shifted_chain_sum[1]},
        }


def _column_heights(shape: Iterable[int], n: int) -> list[int]:
    shape = list(shape)
    return [sum(s >= j for s in shape) for j in range(1, n + 1)]


def _shape_term(shape: Iterable[int], n: int, k: int) -> int:
    return prod((j * k - 1) ** h for j, h in enumerate(_column_heights(shape, n), start=1))


def numerology_report(n: int, k: int) -> NumerologyReport:
    """Both sides of Π_{j<=n}(jk+1) - Π_{j<=n}(jk-1) = Σ_σ Π_j (jk-1)^{h(σ,j)}, read literally."""
    if n < 2 or k < 1:
        raise DomainError(f"numerology needs n >= 2 and k >= 1, got ({n}, {k})")
    plus, minus = _products(n + 1, k)
    terms: dict[tuple[int, ...], int] = {}
    rhs = 0
    for sigma in set_partitions(range(1, n + 1)):
        shape = tuple(sorted((len(b) for b in sigma.blocks), reverse=True))
        term = terms.setdefault(shape, _shape_term(shape, n, k))
        rhs += term
    return NumerologyReport(
        n=n, k=k, lhs=plus - minus, rhs_literal=rhs,
        per_partition_terms=terms, shifted_chain_sum=chain_sum(n + 1, k),
    )


def numerology_by_shapes(n: int, k: int) -> tuple[int, int]:
    """The same two sides from integer partitions and shape multiplicities."""
    plus, minus = _products(n + 1, k)
    rhs = 0
    for mult in partitions(n):
        mult = dict(mult)
        shape = [size for size, count in mult.items() for _ in range(count)]
        count = factorial(n) // (
            prod(factorial(s) for s in shape) * prod(factorial(c) for c in Counter(shape).values())
        )
        rhs += count * _shape_term(shape, n, k)
    return plus - minus, rhs
