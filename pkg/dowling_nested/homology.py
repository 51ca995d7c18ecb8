"""Exact reduced integer homology via sparse Smith normal form."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from math import prod
from typing import Iterable, Mapping

from sympy import QQ, ZZ, factorint
from sympy.polys.matrices import DomainMatrix

from dowling_nested.simplicial import SimplicialComplex
from dowling_nested.ui import dbg


@dataclass(frozen=True)
class HomologyResult:
    reduced_betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]
    betti_minus_one: int = 0

    def betti(self, d: int) -> int:
        if d == -1:
            return self.betti_minus_one
        if 0 <= d < len(self.reduced_betti):
            return self.reduced_betti[d]
        return 0

    @property
    def is_torsion_free(self) -> bool:
        return not any(self.torsion)

    def concentrated_in(self, d: int) -> bool:
        """All reduced Betti numbers outside degree ``d`` vanish."""
        return all(self.betti(i) == 0 for i in range(-1, len(self.reduced_betti)) if i != d)

    def to_json(self) -> dict:
        return {
            "reduced_betti": list(self.reduced_betti),
            "betti_minus_one": self.betti_minus_one,
            "torsion": [list(t) for t in self.torsion],
        }


# ── Smith normal form ───────────────────────────────────────────────────────

def _add_row(mat: dict, cols: dict, dst: int, src: int, q: int) -> None:
    row = mat[dst]
    for c, v in mat[src].items():
        nv = row.get(c, 0) + q * v
        if nv:
            if c not in row:
                cols[c].add(dst)
            row[c] = nv
        elif c in row:
            del row[c]
            cols[c].discard(dst)
    if not row:
        del mat[dst]


def _add_col(mat: dict, cols: dict, dst: int, src: int, q: int) -> None:
    for r in list(cols[src]):
        row = mat[r]
        nv = row.get(dst, 0) + q * row[src]
        if nv:
            if dst not in row:
                cols[dst].add(r)
            row[dst] = nv
        elif dst in row:
            del row[dst]
            cols[dst].discard(r)


def _drop_row(mat: dict, cols: dict, r: int) -> None:
    for c in mat.pop(r):
        cols[c].discard(r)


def _choose_pivot(mat: dict) -> tuple[int, int]:
    best = None
    for r, row in mat.items():
        for c, v in row.items():
            if v in (1, -1):
                return r, c
            if best is None or abs(v) < best[0]:
                best = (abs(v), r, c)
    return best[1], best[2]


def smith_diagonal(rows: Iterable[Mapping[int, int]]) -> list[int]:
    """Nonzero diagonal of the Smith form (up to reordering) of a sparse integer matrix.

    Each row is a mapping column -> entry. Pivots are taken of minimal absolute
    value; unit pivots short-circuit the row clearing.
    """
    mat: dict[int, dict[int, int]] = {}
    cols: dict[int, set[int]] = defaultdict(set)
    for r, row in enumerate(rows):
        entries = {c: v for c, v in row.items() if v}
        if entries:
            mat[r] = entries
            for c in entries:
                cols[c].add(r)

    diagonal: list[int] = []
    while mat:
        r, c = _choose_pivot(mat)
        p = mat[r][c]
        if p in (1, -1):
            for r2 in sorted(cols[c] - {r}):
                _add_row(mat, cols, r2, r, -mat[r2][c] * p)
            _drop_row(mat, cols, r)
            diagonal.append(1)
            continue
        for r2 in sorted(cols[c] - {r}):
            q = mat[r2][c] // p
            if q:
                _add_row(mat, cols, r2, r, -q)
        for c2 in sorted(set(mat[r]) - {c}):
            q = mat[r][c2] // p
            if q:
                _add_col(mat, cols, c2, c, -q)
        if cols[c] == {r} and len(mat[r]) == 1:
            _drop_row(mat, cols, r)
            diagonal.append(abs(p))
    return diagonal


def invariant_factors(diagonal: Iterable[int]) -> tuple[int, ...]:
    """Invariant factors d_1 | d_2 | ... (all > 1) of the group presented by a diagonal."""
    powers: dict[int, list[int]] = defaultdict(list)
    for d in diagonal:
        for p, e in factorint(abs(d)).items():
            powers[p].append(p ** e)
    if not powers:
        return ()
    for v in powers.values():
        v.sort(reverse=True)
    length = max(len(v) for v in powers.values())
    factors = [prod(v[i] for v in powers.values() if i < len(v)) for i in range(length)]
    return tuple(sorted(factors))


# ── Boundary maps ───────────────────────────────────────────────────────────

def boundary_rows(K: SimplicialComplex, d: int) -> list[dict[int, int]]:
    """Rows of the transposed boundary map C_d -> C_{d-1}, one per d-face."""
    faces = K.faces_by_dim.get(d, [])
    if d == 0:
        return [{0: 1} for _ in faces]
    position = {f: i for i, f in enumerate(K.faces_by_dim.get(d - 1, []))}
    return [
        {position[f[:i] + f[i + 1:]]: (-1) ** i for i in range(len(f))}
        for f in faces
    ]


def reduced_homology(K: SimplicialComplex) -> HomologyResult:
    if K.is_void:
        return HomologyResult(reduced_betti=(), torsion=())
    top = K.dim
    counts = {d: len(K.faces_by_dim.get(d, [])) for d in range(-1, top + 1)}
    rank = defaultdict(int)
    torsion: dict[int, tuple[int, ...]] = {}
    for d in range(0, top + 1):
        diagonal = smith_diagonal(boundary_rows(K, d))
        rank[d] = len(diagonal)
        torsion[d - 1] = invariant_factors(x for x in diagonal if x > 1)
        dbg(f"boundary d={d}: {counts[d]} faces, rank {rank[d]}")
    betti = [counts[d] - rank[d] - rank[d + 1] for d in range(-1, top + 1)]
    return HomologyResult(
        reduced_betti=tuple(betti[1:]),
        torsion=tuple(torsion.get(d, ()) for d in range(0, top + 1)),
        betti_minus_one=betti[0],
    )


# ── Rational oracle ─────────────────────────────────────────────────────────

def _rational_rank(rows: list[dict[int, int]], ncols: int) -> int:
    if not rows or ncols == 0:
        return 0
    dense = [[row.get(c, 0) for c in range(ncols)] for row in rows]
    return DomainMatrix.from_list(dense, ZZ).convert_to(QQ).rank()


def rational_betti(K: SimplicialComplex) -> tuple[int, ...]:
    """Reduced Betti numbers for degrees -1..dim from ranks over the rationals."""
    if K.is_void:
        return ()
    top = K.dim
    counts = {d: len(K.faces_by_dim.get(d, [])) for d in range(-1, top + 1)}
    rank = defaultdict(int)
    for d in range(0, top + 1):
        rank[d] = _rational_rank(boundary_rows(K, d), counts[d - 1])
    return tuple(counts[d] - rank[d] - rank[d + 1] for d in range(-1, top + 1))
