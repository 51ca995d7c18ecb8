"""Finite groups as validated multiplication tables."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from dowling_nested.errors import AxiomViolationError, InvalidOrderError

# A group element is its row index in the owning table.
GElem = int


@dataclass(frozen=True)
class GroupTable:
    order: int
    mul: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]
    name: str = field(default="", compare=False)

    identity = 0

    def __post_init__(self):
        if self.order < 1:
            raise InvalidOrderError(f"group order must be positive, got {self.order}")

    def __str__(self) -> str:
        return self.name or f"G{self.order}"

    def __len__(self) -> int:
        return self.order

    def elements(self) -> range:
        return range(self.order)

    @cached_property
    def is_abelian(self) -> bool:
        return all(self.mul[a][b] == self.mul[b][a] for a in self.elements() for b in self.elements())

    def to_json(self) -> dict:
        return {"kind": "table", "name": self.name, "mul": [list(row) for row in self.mul]}


# ── Constructors ────────────────────────────────────────────────────────────

def cyclic_group(m: int) -> GroupTable:
    """Z_m with mul(a, b) = (a + b) mod m."""
    if m < 1:
        raise InvalidOrderError(f"cyclic group order must be >= 1, got {m}")
    mul = tuple(tuple((a + b) % m for b in range(m)) for a in range(m))
    inv = tuple((-a) % m for a in range(m))
    return GroupTable(order=m, mul=mul, inv=inv, name=f"Z{m}")


def dihedral_group(m: int) -> GroupTable:
    """Symmetries of the m-gon, order 2m.

    Element r^a is encoded as a, and s·r^a as m + a.
    """
    if m < 1:
        raise InvalidOrderError(f"dihedral group parameter must be >= 1, got {m}")

    def compose(x: int, y: int) -> int:
        xs, xa = divmod(x, m)
        ys, ya = divmod(y, m)
        # (s^xs r^xa)(s^ys r^ya) = s^(xs+ys) r^((-1)^ys xa + ya)
        a = (ya + (-xa if ys else xa)) % m
        return ((xs + ys) % 2) * m + a

    raw = [[compose(x, y) for y in range(2 * m)] for x in range(2 * m)]
    table = group_from_table(raw)
    return GroupTable(order=table.order, mul=table.mul, inv=table.inv, name=f"D{m}")


def group_from_table(raw: Sequence[Sequence[int]], name: str = "") -> GroupTable:
    """Validate a raw table and relabel it so that the identity is element 0."""
    k = len(raw)
    if k == 0:
        raise InvalidOrderError("empty multiplication table")
    for a, row in enumerate(raw):
        if len(row) != k:
            raise AxiomViolationError("square", (a,))
        for b, c in enumerate(row):
            if not isinstance(c, int) or isinstance(c, bool) or not 0 <= c < k:
                raise AxiomViolationError("closure", (a, b, c))

    identity = next(
        (e for e in range(k)
         if all(raw[e][x] == x and raw[x][e] == x for x in range(k))),
        None,
    )
    if identity is None:
        raise AxiomViolationError("identity", ())

    inv: list[int] = []
    for x in range(k):
        y = next((y for y in range(k) if raw[x][y] == identity and raw[y][x] == identity), None)
        if y is None:
            raise AxiomViolationError("inverse", (x,))
        inv.append(y)

    for x in range(k):
        for y in range(k):
            xy = raw[x][y]
            for z in range(k):
                if raw[xy][z] != raw[x][raw[y][z]]:
                    raise AxiomViolationError("associativity", (x, y, z))

    # swap identity <-> 0; the permutation is its own inverse
    perm = list(range(k))
    perm[0], perm[identity] = identity, 0
    mul = tuple(tuple(perm[raw[perm[a]][perm[b]]] for b in range(k)) for a in range(k))
    inv_t = tuple(perm[inv[perm[a]]] for a in range(k))
    return GroupTable(order=k, mul=mul, inv=inv_t, name=name)


def group_from_json(spec: dict) -> GroupTable:
    """Build a group from a config mapping ``{kind: cyclic|dihedral|table, ...}``."""
    kind = spec.get("kind", "cyclic")
    if kind == "cyclic":
        return cyclic_group(int(spec["m"]))
    if kind == "dihedral":
        return dihedral_group(int(spec["m"]))
    if kind == "table":
        return group_from_table(spec["mul"], name=spec.get("name", ""))
    raise InvalidOrderError(f"unknown group kind: {kind}")
