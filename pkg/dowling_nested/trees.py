"""G-symmetric phylogenetic trees and Dowling trees.

Leaves carry labels (i, g) in [n]×G. A tree is stored in canonical form:
vertices numbered in preorder with children sorted by the smallest leaf label
below them, root 0. The G-action is kept explicitly and re-derived by
``validate``. A G-symmetric tree is a Dowling tree whose only zero vertex is
the root.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from dowling_nested.dowling import DowlingElement, make_element
from dowling_nested.errors import DomainError, NotNestedError, TreeValidationError
from dowling_nested.groups import GroupTable
from dowling_nested.nested import compute_IG, compute_JG, condition_n, nested_complex
from dowling_nested.simplicial import SimplicialComplex
from dowling_nested.ui import dbg

Leaf = tuple[int, int]


@dataclass(frozen=True)
class GTree:
    n: int
    group: GroupTable = field(compare=False, repr=False)
    parent: tuple[int, ...]                     # -1 for the root
    labels: tuple[Leaf | None, ...]             # None on internal vertices
    action: tuple[tuple[int, ...], ...] = field(compare=False, repr=False)
    zero_vertices: frozenset[int] = frozenset({0})

    @property
    def size(self) -> int:
        return len(self.parent)

    @cached_property
    def root(self) -> int:
        return self.parent.index(-1)

    @cached_property
    def children(self) -> tuple[tuple[int, ...], ...]:
        kids: list[list[int]] = [[] for _ in self.parent]
        for v, p in enumerate(self.parent):
            if p >= 0:
                kids[p].append(v)
        return tuple(tuple(k) for k in kids)

    def is_leaf(self, v: int) -> bool:
        return not self.children[v]

    def degree(self, v: int) -> int:
        return len(self.children[v]) + (self.parent[v] >= 0)

    @cached_property
    def leaf_sets(self) -> tuple[frozenset[Leaf], ...]:
        """λ_v: the leaf labels below each vertex."""
        lam: list[frozenset] = [frozenset()] * self.size
        for v in reversed(self._preorder):
            if self.labels[v] is not None:
                lam[v] = frozenset({self.labels[v]})
            else:
                lam[v] = frozenset().union(*(lam[c] for c in self.children[v]))
        return tuple(lam)

    @cached_property
    def _preorder(self) -> tuple[int, ...]:
        order, stack = [], [self.root]
        while stack:
            v = stack.pop()
            order.append(v)
            stack.extend(reversed(self.children[v]))
        return tuple(order)

    @cached_property
    def leaf_of(self) -> dict[Leaf, int]:
        return {lab: v for v, lab in enumerate(self.labels) if lab is not None}

    def ancestors(self, v: int) -> list[int]:
        """v and its ancestors up to the root."""
        path = [v]
        while self.parent[path[-1]] >= 0:
            path.append(self.parent[path[-1]])
        return path

    def path(self, a: int, b: int) -> list[int]:
        up_a, up_b = self.ancestors(a), self.ancestors(b)
        common = set(up_b)
        top = next(v for v in up_a if v in common)
        return up_a[:up_a.index(top) + 1] + list(reversed(up_b[:up_b.index(top)]))

    @cached_property
    def inner_vertices(self) -> tuple[int, ...]:
        """Lower endpoints of inner edges: internal non-root vertices."""
        return tuple(v for v in range(self.size) if v != self.root and not self.is_leaf(v))

    def to_json(self) -> dict:
        return {
            "parent": list(self.parent),
            "leaf_labels": {str(v): f"{i}~{g}" for (i, g), v in sorted(self.leaf_of.items(), key=lambda kv: kv[1])},
            "zero_vertices": sorted(self.zero_vertices),
            "action": [list(row) for row in self.action],
        }


class DowlingTree(GTree):
    """Tree whose zero vertices form a path from the root."""


@dataclass(frozen=True)
class Violation:
    condition: str
    message: str


@dataclass(frozen=True)
class InnerOrbit:
    rep: tuple[int, int]
    members: tuple[tuple[int, int], ...]

    @property
    def lower(self) -> int:
        return self.rep[1]


def _require_nontrivial(G: GroupTable):
    if G.order < 2:
        raise DomainError("tree constructions need a group of order >= 2")


def _induced_action(parent: tuple[int, ...], labels: tuple, G: GroupTable) -> tuple[tuple[int, ...], ...]:
    size = len(parent)
    kids: list[list[int]] = [[] for _ in range(size)]
    for v, p in enumerate(parent):
        if p >= 0:
            kids[p].append(v)
    lam: dict[int, frozenset] = {}

    def collect(v: int) -> frozenset:
        if labels[v] is not None:
            lam[v] = frozenset({labels[v]})
        else:
            lam[v] = frozenset().union(*(collect(c) for c in kids[v]))
        return lam[v]

    root = parent.index(-1)
    collect(root)
    by_set: dict[frozenset, int] = {}
    for v in range(size):
        if v != root:
            by_set.setdefault(lam[v], v)
    action = []
    for g in G.elements():
        row = []
        for v in range(size):
            if v == root:
                row.append(root)
            else:
                moved = frozenset((i, G.mul[g][h]) for i, h in lam[v])
                row.append(by_set.get(moved, -1))
        action.append(tuple(row))
    return tuple(action)


# ── Mutable builder ─────────────────────────────────────────────────────────

class _TreeBuilder:
    def __init__(self, n: int, G: GroupTable):
        self.n, self.G = n, G
        self.parent: dict[int, int | None] = {0: None}
        self.label: dict[int, Leaf] = {}
        self.zero: set[int] = {0}
        self._next = 1
        for i in range(1, n + 1):
            for g in G.elements():
                self.label[self._new(0)] = (i, g)

    @classmethod
    def from_tree(cls, T: GTree) -> _TreeBuilder:
        b = cls.__new__(cls)
        b.n, b.G = T.n, T.group
        b.parent = {v: (None if p < 0 else p) for v, p in enumerate(T.parent)}
        b.label = dict((v, lab) for v, lab in enumerate(T.labels) if lab is not None)
        b.zero = set(T.zero_vertices)
        b._next = T.size
        return b

    def _new(self, parent: int) -> int:
        v = self._next
        self._next += 1
        self.parent[v] = parent
        return v

    def _children(self) -> dict[int, list[int]]:
        kids: dict[int, list[int]] = {v: [] for v in self.parent}
        for v, p in self.parent.items():
            if p is not None:
                kids[p].append(v)
        return kids

    def _leaf_sets(self, kids: dict[int, list[int]]) -> dict[int, frozenset]:
        lam: dict[int, frozenset] = {}

        def collect(v: int) -> frozenset:
            lam[v] = frozenset({self.label[v]}) if v in self.label else \
                frozenset().union(*(collect(c) for c in kids[v]))
            return lam[v]

        collect(0)
        return lam

    def extend(self, blocks: list[frozenset], zero: bool):
        """Grow one new vertex for every block of an orbit (inner orbit extension)."""
        kids = self._children()
        lam = self._leaf_sets(kids)
        leaf_vertex = {lab: v for v, lab in self.label.items()}
        plans = []
        for S in blocks:
            v = leaf_vertex[next(iter(S))]
            while not S <= lam[v]:
                v = self.parent[v]
            F = [c for c in kids[v] if lam[c] <= S]
            covered = frozenset().union(*(lam[c] for c in F))
            if covered != S:
                raise NotNestedError(f"block {sorted(S)} crosses an existing edge")
            if len(F) < 2 or (len(F) == len(kids[v]) and v != 0):
                raise NotNestedError(f"block {sorted(S)} is already an edge of the tree")
            if zero and v not in self.zero:
                raise NotNestedError(f"zero block {sorted(S)} does not hang below a zero vertex")
            plans.append((v, F))
        for v, F in plans:
            u = self._new(v)
            for c in F:
                self.parent[c] = u
            if zero:
                self.zero.add(u)

    def contract(self, u: int):
        p = self.parent[u]
        for c, q in list(self.parent.items()):
            if q == u:
                self.parent[c] = p
        del self.parent[u]
        self.zero.discard(u)

    def freeze(self, dowling: bool) -> GTree:
        kids = self._children()
        lam = self._leaf_sets(kids)
        order: list[int] = []
        stack = [0]
        while stack:
            v = stack.pop()
            order.append(v)
            stack.extend(sorted(kids[v], key=lambda c: min(lam[c]), reverse=True))
        new = {old: k for k, old in enumerate(order)}
        parent = tuple(-1 if self.parent[old] is None else new[self.parent[old]] for old in order)
        labels = tuple(self.label.get(old) for old in order)
        zero = frozenset(new[z] for z in self.zero)
        cls = DowlingTree if dowling else GTree
        return cls(
            n=self.n, group=self.G, parent=parent, labels=labels,
            action=_induced_action(parent, labels, self.G), zero_vertices=zero,
        )


def star_tree(n: int, G: GroupTable, dowling: bool = False) -> GTree:
    _require_nontrivial(G)
    return _TreeBuilder(n, G).freeze(dowling)


# ── Validation ──────────────────────────────────────────────────────────────

def _structure_violations(T: GTree) -> list[Violation]:
    roots = [v for v, p in enumerate(T.parent) if p < 0]
    if len(roots) != 1:
        return [Violation("tree", f"expected one root, found {len(roots)}")]
    for v in range(T.size):
        seen, w = set(), v
        while w >= 0:
            if w in seen or w >= T.size:
                return [Violation("tree", f"parent pointers from {v} do not reach the root")]
            seen.add(w)
            w = T.parent[w]
    out = []
    for v in range(T.size):
        if T.is_leaf(v) != (T.labels[v] is not None):
            out.append(Violation("tree", f"vertex {v}: leaves and labelled vertices differ"))
    expected = {(i, g) for i in range(1, T.n + 1) for g in T.group.elements()}
    found = [lab for lab in T.labels if lab is not None]
    if len(found) != len(set(found)) or set(found) != expected:
        out.append(Violation("tree", "leaf labels are not a bijection onto [n]×G"))
    return out


def _action_violations(T: GTree) -> list[Violation]:
    G, out = T.group, []
    if len(T.action) != G.order or any(sorted(row) != list(range(T.size)) for row in T.action):
        return [Violation("2", "action rows are not permutations of the vertices")]
    if T.action != _induced_action(T.parent, T.labels, G):
        out.append(Violation("2", "stored action differs from the action induced on leaf sets"))
    if any(T.action[0][v] != v for v in range(T.size)):
        out.append(Violation("2", "identity does not act trivially"))
    for g in G.elements():
        row = T.action[g]
        if row[T.root] != T.root:
            out.append(Violation("2", f"{g} moves the root"))
        for h in G.elements():
            if any(row[T.action[h][v]] != T.action[G.mul[g][h]][v] for v in range(T.size)):
                out.append(Violation("2", f"action of {g} after {h} is not the action of their product"))
        for v in range(T.size):
            p = T.parent[v]
            if p >= 0 and T.parent[row[v]] != row[p]:
                out.append(Violation("2", f"{g} does not preserve the edge above {v}"))
            if T.labels[v] is not None:
                i, h = T.labels[v]
                if T.labels[row[v]] != (i, G.mul[g][h]):
                    out.append(Violation("2", f"{g} does not relabel leaf {v} correctly"))
        if isinstance(T, DowlingTree) and any(row[z] != z for z in T.zero_vertices):
            out.append(Violation("2", f"{g} moves a zero vertex"))
    return out


def validate(T: GTree) -> list[Violation]:
    """Violated conditions, by number; an empty list means the tree is valid."""
    out = _structure_violations(T)
    if out:
        return out
    dowling = isinstance(T, DowlingTree)
    if dowling:
        if T.root not in T.zero_vertices:
            out.append(Violation("0", "the root is not a zero vertex"))
    elif T.zero_vertices != frozenset({T.root}):
        out.append(Violation("0", "a G-symmetric tree has the root as its only zero vertex"))

    for v in T.inner_vertices:
        if T.degree(v) < 3:
            out.append(Violation("1", f"internal vertex {v} has degree {T.degree(v)}"))

    out.extend(_action_violations(T))

    G = T.group
    for i in range(1, T.n + 1):
        for g in G.elements():
            for h in range(g + 1, G.order):
                path = T.path(T.leaf_of[(i, g)], T.leaf_of[(i, h)])
                if dowling:
                    crossings = sum(v in T.zero_vertices for v in path)
                    if crossings != 1:
                        out.append(Violation("3", f"path {i}~{g} - {i}~{h} meets {crossings} zero vertices"))
                elif T.root not in path:
                    out.append(Violation("3", f"path {i}~{g} - {i}~{h} avoids the root"))

    if dowling:
        zeros = sorted(T.zero_vertices, key=lambda z: len(T.ancestors(z)))
        depths = [len(T.ancestors(z)) - 1 for z in zeros]
        chained = all(T.parent[b] == a for a, b in zip(zeros, zeros[1:]))
        if depths != list(range(len(zeros))) or not chained:
            out.append(Violation("4", "zero vertices do not form a path from the root"))
    return out


def _require_valid(T: GTree):
    violations = validate(T)
    if violations:
        raise TreeValidationError(violations)


# ── Edges, orbits and σ(t) ──────────────────────────────────────────────────

def _lower_endpoint(T: GTree, t) -> int:
    u = t[1] if isinstance(t, tuple) else t
    if isinstance(t, tuple) and T.parent[u] != t[0]:
        raise DomainError(f"{t} is not an edge")
    if u not in T.inner_vertices:
        raise DomainError(f"edge above {u} is not an inner edge")
    return u


def sigma_of_edge(T: GTree, t) -> DowlingElement:
    """σ(t) for an inner edge given as (parent, child) or by its lower vertex.

    Edges between zero vertices give the type-0 element with that zero block.
    """
    u = _lower_endpoint(T, t)
    lam = T.leaf_sets[u]
    if u in T.zero_vertices:
        return make_element(T.n, T.group, zero={i for i, _ in lam})
    return make_element(T.n, T.group, blocks=[sorted(lam)])


def inner_orbits(T: GTree) -> list[InnerOrbit]:
    seen: set[int] = set()
    orbits = []
    for u in T.inner_vertices:
        if u in seen:
            continue
        members = sorted({T.action[g][u] for g in T.group.elements()})
        seen.update(members)
        rep = min(members, key=lambda v: min(T.leaf_sets[v]))
        orbits.append(InnerOrbit(
            rep=(T.parent[rep], rep),
            members=tuple((T.parent[v], v) for v in members),
        ))
    return sorted(orbits, key=lambda o: min(T.leaf_sets[o.lower]))


def tree_to_nested(T: GTree) -> frozenset[DowlingElement]:
    _require_valid(T)
    return frozenset(sigma_of_edge(T, o.rep) for o in inner_orbits(T))


def contract_orbit(T: GTree, o: InnerOrbit | tuple[int, int] | int) -> GTree:
    u = _lower_endpoint(T, o.rep if isinstance(o, InnerOrbit) else o)
    builder = _TreeBuilder.from_tree(T)
    for v in sorted({T.action[g][u] for g in T.group.elements()}):
        builder.contract(v)
    return builder.freeze(isinstance(T, DowlingTree))


def _orbit_blocks(sigma: DowlingElement) -> tuple[list[frozenset], bool]:
    G = sigma.group
    if sigma.is_type_zero:
        return [frozenset((i, g) for i in sigma.zero for g in G.elements())], True
    if sigma.is_type_one:
        (idx, lab), = sigma.nonsingleton_simple
        return [frozenset((i, G.mul[h][t]) for i, t in zip(idx, lab)) for h in G.elements()], False
    raise DomainError(f"{sigma} is neither of type 0 nor of type 1")


def extend_orbit(T: GTree, sigma: DowlingElement) -> GTree:
    """Grow the inner orbit of σ; raises NotNestedError when σ crosses an edge."""
    if sigma.is_top:
        raise DomainError("the top element has no tree edge")
    blocks, zero = _orbit_blocks(sigma)
    builder = _TreeBuilder.from_tree(T)
    builder.extend(blocks, zero)
    return builder.freeze(zero or isinstance(T, DowlingTree))


def _check_members(X: list[DowlingElement], n: int, G: GroupTable):
    for sigma in X:
        if sigma.n != n or (sigma.group is not G and sigma.group.mul != G.mul):
            raise DomainError(f"{sigma} does not belong to Q_{n}({G})")


def nested_to_tree(X: Iterable[DowlingElement], n: int, G: GroupTable) -> GTree:
    _require_nontrivial(G)
    X = list(X)
    _check_members(X, n, G)
    if not all(s.is_type_one for s in X):
        raise DomainError("G-symmetric trees correspond to subsets of I^G")
    if not condition_n(X):
        raise NotNestedError("incomparable members share indices")
    builder = _TreeBuilder(n, G)
    for sigma in sorted(X, key=DowlingElement.sort_key):
        builder.extend(*_orbit_blocks(sigma))
    return builder.freeze(dowling=False)


def nested_to_dowling_tree(X: Iterable[DowlingElement], n: int, G: GroupTable) -> DowlingTree:
    """Type-1 members first, then type-0 members by increasing zero block."""
    _require_nontrivial(G)
    X = list(X)
    _check_members(X, n, G)
    if any(s.is_top for s in X):
        raise DomainError("the top element cannot be part of a Dowling tree nested set")
    if not all(s.is_type_one or s.is_type_zero for s in X):
        raise DomainError("Dowling trees correspond to subsets of J^G")
    if not condition_n(X):
        raise NotNestedError("incomparable members have overlapping blocks")
    builder = _TreeBuilder(n, G)
    for sigma in sorted((s for s in X if s.is_type_one), key=DowlingElement.sort_key):
        builder.extend(*_orbit_blocks(sigma))
    for sigma in sorted((s for s in X if s.is_type_zero), key=lambda s: len(s.zero)):
        builder.extend(*_orbit_blocks(sigma))
    return builder.freeze(dowling=True)


# ── Complexes ───────────────────────────────────────────────────────────────

def build_tree_complex(n: int, G: GroupTable) -> SimplicialComplex:
    """T_n^G as the nested set complex of I^G in Q_n^0(G)."""
    B = compute_IG(n, G)
    return nested_complex(B.base, B, reduced=False)


def build_dowling_tree_complex(n: int, G: GroupTable) -> SimplicialComplex:
    """T_n(G) as the reduced nested set complex of J^G in Q_n(G)."""
    B = compute_JG(n, G)
    return nested_complex(B.base, B, reduced=True)


def enumerate_trees(n: int, G: GroupTable, dowling: bool = False) -> list[GTree]:
    """All valid trees, reached from the star tree by repeated orbit extension."""
    B = compute_JG(n, G) if dowling else compute_IG(n, G)
    candidates = [e for e in B.elements() if not e.is_top]
    start = star_tree(n, G, dowling)
    seen = {start: tree_to_nested(start)}
    queue = deque([start])
    while queue:
        T = queue.popleft()
        present = seen[T]
        for sigma in candidates:
            if sigma in present:
                continue
            try:
                T2 = extend_orbit(T, sigma)
            except NotNestedError:
                continue
            if T2 in seen or validate(T2):
                continue
            seen[T2] = tree_to_nested(T2)
            queue.append(T2)
    dbg(f"enumerated {len(seen)} {'Dowling' if dowling else 'G-symmetric'} trees for n={n}, |G|={G.order}")
    return sorted(seen, key=lambda T: (len(seen[T]), T.parent, T.labels))


def tree_complex_from_trees(n: int, G: GroupTable, dowling: bool = False) -> SimplicialComplex:
    B = compute_JG(n, G) if dowling else compute_IG(n, G)
    order = [e for e in B.elements() if not e.is_top]
    return SimplicialComplex.from_label_faces(order, (tree_to_nested(T) for T in enumerate_trees(n, G, dowling)))
