"""Building sets and nested set complexes over finite meet-semilattices."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product as cartesian
from math import prod
from typing import Iterable, Mapping

from dowling_nested.dowling import DowlingElement, build_dowling_lattice, build_q0, leq
from dowling_nested.errors import DomainError
from dowling_nested.groups import GroupTable
from dowling_nested.posets import Poset, is_isomorphic, lower_interval, product_all
from dowling_nested.simplicial import SimplicialComplex
from dowling_nested.ui import dbg


@dataclass(frozen=True, eq=False)
class BuildingSet:
    base: Poset
    members: frozenset[int]
    types: Mapping[int, int] = field(default_factory=dict)
    name: str = ""

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, i: int) -> bool:
        return i in self.members

    def elements(self) -> list:
        return [self.base.elements[i] for i in sorted(self.members)]

    def verify(self) -> bool:
        return is_building_set(self.base, self.members)

    def to_json(self) -> dict:
        data = self.base.to_json()
        data["members"] = sorted(self.members)
        if self.types:
            data["type"] = {str(i): t for i, t in sorted(self.types.items())}
        return data


def _require_semilattice(L: Poset):
    if L.bottom is None or not L.is_meet_semilattice:
        raise DomainError(f"{L!r} is not a meet-semilattice with a bottom element")


# ── Building set axiom ──────────────────────────────────────────────────────

def _join_map_is_iso(L: Poset, factors: list[int], x: int) -> bool:
    """The join map ∏ [0̂, z] -> [0̂, x] is an order isomorphism."""
    target = L.down[x]
    if prod(len(L.down[z]) for z in factors) != len(target):
        return False
    images: dict[tuple[int, ...], int] = {}
    for combo in cartesian(*(sorted(L.down[z]) for z in factors)):
        s = L.supremum(combo)
        if s is None or s not in target:
            return False
        images[combo] = s
    if len(set(images.values())) != len(target):
        return False
    for y, fy in images.items():
        for y2, fy2 in images.items():
            if L.leq(fy, fy2) and not all(L.leq(a, b) for a, b in zip(y, y2)):
                return False
    return True


def _pinned_product_iso(L: Poset, factors: list[int], x: int) -> bool:
    intervals = [lower_interval(L, z) for z in factors]
    prod_poset = product_all(intervals)
    target = lower_interval(L, x)
    bottoms = [P.bottom for P in intervals]
    fixed = {}
    for k, (P, z) in enumerate(zip(intervals, factors)):
        axis = list(bottoms)
        axis[k] = P.top
        fixed[prod_poset.index_of(tuple(P.elements[i] for P, i in zip(intervals, axis)))] = \
            target.index_of(L.elements[z])
    return is_isomorphic(prod_poset, target, fixed=fixed) is not None


def maximal_members_below(L: Poset, members: frozenset[int], x: int) -> list[int]:
    below = [z for z in L.down[x] if z in members]
    return [z for z in below if not any(L.lt(z, w) for w in below)]


def is_building_set(L: Poset, members: Iterable[int]) -> bool:
    _require_semilattice(L)
    members = frozenset(members)
    if L.bottom in members:
        raise DomainError("a building set does not contain the bottom element")
    for x in range(len(L)):
        if x == L.bottom or x in members:
            continue
        factors = maximal_members_below(L, members, x)
        if not factors:
            dbg(f"building set fails at {L.elements[x]}: no member below")
            return False
        if prod(len(L.down[z]) for z in factors) != len(L.down[x]):
            dbg(f"building set fails at {L.elements[x]}: size mismatch")
            return False
        if not _join_map_is_iso(L, factors, x):
            if _pinned_product_iso(L, factors, x):
                dbg(f"join map at {L.elements[x]} fails but a pinned isomorphism exists")
                continue
            return False
    return True


def _decomposable(L: Poset, x: int) -> bool:
    size = len(L.down[x])
    inner = sorted(L.down[x] - {x, L.bottom})
    for y, z in combinations(inner, 2):
        if len(L.down[y]) * len(L.down[z]) != size:
            continue
        if L.meet(y, z) != L.bottom or L.join(y, z) != x:
            continue
        if _join_map_is_iso(L, [y, z], x):
            return True
    return False


def minimal_building_set(L: Poset) -> frozenset[int]:
    """Elements whose lower interval is not a product of two proper lower intervals."""
    _require_semilattice(L)
    return frozenset(x for x in range(len(L)) if x != L.bottom and not _decomposable(L, x))


def is_minimal_building_set(L: Poset, members: Iterable[int]) -> bool:
    members = frozenset(members)
    return is_building_set(L, members) and not any(
        is_building_set(L, members - {m}) for m in members
    )


def maximal_building_set(L: Poset) -> frozenset[int]:
    return frozenset(i for i in range(len(L)) if i != L.bottom)


def compute_IG(n: int, G: GroupTable) -> BuildingSet:
    Q0 = build_q0(n, G)
    members = frozenset(i for i, e in enumerate(Q0.elements) if e.is_type_one)
    return BuildingSet(base=Q0, members=members, types={i: 1 for i in members}, name=f"I^G({n},{G})")


def compute_JG(n: int, G: GroupTable) -> BuildingSet:
    L = build_dowling_lattice(n, G)
    types = {}
    for i, e in enumerate(L.elements):
        if e.is_type_one:
            types[i] = 1
        elif e.is_type_zero:
            types[i] = 0
    return BuildingSet(base=L, members=frozenset(types), types=types, name=f"J^G({n},{G})")


# ── Nested sets ─────────────────────────────────────────────────────────────

def _is_antichain(L: Poset, xs: Iterable[int]) -> bool:
    return not any(L.comparable(a, b) for a, b in combinations(xs, 2))


def _pair_ok(L: Poset, members: frozenset[int], a: int, b: int) -> bool:
    if L.comparable(a, b):
        return True
    s = L.join(a, b)
    return s is not None and s not in members


def is_nested(L: Poset, B: BuildingSet, X: Iterable[int]) -> bool:
    """Every antichain of size >= 2 in X has a join in L that is not in B."""
    X = sorted(set(X))
    if not set(X) <= B.members:
        raise DomainError("nested set candidates must be members of the building set")
    for r in range(2, len(X) + 1):
        for A in combinations(X, r):
            if _is_antichain(L, A):
                s = L.supremum(A)
                if s is None or s in B.members:
                    return False
    return True


def is_pairwise_nested(L: Poset, B: BuildingSet, X: Iterable[int]) -> bool:
    X = sorted(set(X))
    if not set(X) <= B.members:
        raise DomainError("nested set candidates must be members of the building set")
    return all(_pair_ok(L, B.members, a, b) for a, b in combinations(X, 2))


def condition_n(X: Iterable[DowlingElement]) -> bool:
    """Incomparable members have disjoint nonsingleton associated blocks."""
    X = list(X)
    for a, b in combinations(X, 2):
        if leq(a, b) or leq(b, a):
            continue
        blocks_a = a.nonsingleton_assoc_blocks()
        if any(u & v for u in blocks_a for v in b.nonsingleton_assoc_blocks()):
            return False
    return True


def nested_sets(L: Poset, B: BuildingSet, reduced: bool = False) -> list[tuple[int, ...]]:
    """All nested sets (as sorted L-index tuples), found by DFS with pairwise pruning."""
    members = sorted(B.members)
    if reduced and L.top is not None:
        members = [m for m in members if m != L.top]
    compatible = {
        a: {b for b in members if b != a and _pair_ok(L, B.members, a, b)} for a in members
    }
    found: list[tuple[int, ...]] = [()]
    discrepancies = 0

    def full_ok(face: list[int], y: int) -> bool:
        loose = [x for x in face if not L.comparable(x, y)]
        for r in range(2, len(loose) + 1):
            for A in combinations(loose, r):
                if _is_antichain(L, A):
                    s = L.supremum((*A, y))
                    if s is None or s in B.members:
                        return False
        return True

    def extend(face: list[int], start: int):
        nonlocal discrepancies
        for pos in range(start, len(members)):
            y = members[pos]
            if not all(x in compatible[y] for x in face):
                continue
            if not full_ok(face, y):
                discrepancies += 1
                continue
            face.append(y)
            found.append(tuple(face))
            extend(face, pos + 1)
            face.pop()

    extend([], 0)
    if discrepancies:
        dbg(f"{discrepancies} candidate sets pass the pairwise test but fail the full nested test")
    return found


def nested_complex(L: Poset, B: BuildingSet, reduced: bool = False) -> SimplicialComplex:
    """N(L, B); the reduced form drops the top element when it is a member."""
    faces = nested_sets(L, B, reduced=reduced)
    return SimplicialComplex.from_label_faces(
        [L.elements[i] for i in sorted(B.members)],
        ([L.elements[i] for i in f] for f in faces),
    )
