"""Abstract simplicial complexes stored as explicit downward-closed face sets.

Faces are sorted tuples of vertex indices; ``vertices`` holds the labels.
The *void* complex has no faces at all, the *empty* complex has only the
empty face and is the neutral element for joins.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Any, Callable, Hashable, Iterable, Sequence

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

from dowling_nested.errors import FaceError, LabelError

Label = Hashable


@dataclass(frozen=True, eq=False)
class SimplicialComplex:
    vertices: tuple
    faces: frozenset

    # ── Constructors ────────────────────────────────────────────────────────

    @classmethod
    def void(cls) -> SimplicialComplex:
        return cls(vertices=(), faces=frozenset())

    @classmethod
    def empty(cls) -> SimplicialComplex:
        return cls(vertices=(), faces=frozenset({()}))

    @classmethod
    def from_facets(cls, labels: Sequence[Label], facets: Iterable[Iterable[Label]]) -> SimplicialComplex:
        """Downward closure of ``facets`` over the declared ``labels``."""
        labels = tuple(labels)
        index = {v: i for i, v in enumerate(labels)}
        if len(index) != len(labels):
            raise LabelError("duplicate vertex labels")
        faces: set[tuple[int, ...]] = {()}
        for facet in facets:
            try:
                idx = tuple(sorted({index[v] for v in facet}))
            except KeyError as exc:
                raise LabelError(f"facet references unknown label {exc.args[0]!r}") from None
            if idx in faces:
                continue
            for size in range(1, len(idx) + 1):
                faces.update(combinations(idx, size))
        used = {i for f in faces for i in f}
        if len(used) != len(labels):
            # keep isolated declared labels as vertices
            faces.update((i,) for i in range(len(labels)))
        return cls(vertices=labels, faces=frozenset(faces))

    @classmethod
    def from_label_faces(cls, order: Sequence[Label], faces: Iterable[Iterable[Label]]) -> SimplicialComplex:
        """Build from an already downward-closed family of label sets.

        Vertex order follows ``order``; labels not used by any face are dropped.
        """
        faces = [frozenset(f) for f in faces]
        used = set().union(*faces) if faces else set()
        vertices = tuple(v for v in order if v in used)
        if len(vertices) != len(used):
            raise LabelError("face uses a label missing from the vertex order")
        index = {v: i for i, v in enumerate(vertices)}
        return cls(vertices=vertices, faces=frozenset(tuple(sorted(index[v] for v in f)) for f in faces))

    # ── Basic structure ─────────────────────────────────────────────────────

    @cached_property
    def index(self) -> dict[Label, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @property
    def is_void(self) -> bool:
        return not self.faces

    @cached_property
    def dim(self) -> int:
        return max((len(f) for f in self.faces), default=0) - 1

    @cached_property
    def faces_by_dim(self) -> dict[int, list[tuple[int, ...]]]:
        by_dim: dict[int, list[tuple[int, ...]]] = defaultdict(list)
        for f in self.faces:
            by_dim[len(f) - 1].append(f)
        return {d: sorted(fs) for d, fs in sorted(by_dim.items())}

    @cached_property
    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(self.faces_by_dim.get(d, ())) for d in range(self.dim + 1))

    @cached_property
    def facets(self) -> tuple[tuple[int, ...], ...]:
        maximal = []
        for f in sorted(self.faces, key=lambda f: (-len(f), f)):
            s = set(f)
            if not any(s < set(g) for g in maximal):
                maximal.append(f)
        return tuple(sorted(maximal))

    def facet_labels(self) -> list[tuple]:
        return [tuple(self.vertices[i] for i in f) for f in self.facets]

    @cached_property
    def labelled_faces(self) -> frozenset[frozenset]:
        return frozenset(frozenset(self.vertices[i] for i in f) for f in self.faces)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.labelled_faces == other.labelled_faces

    def __hash__(self) -> int:
        return hash(self.labelled_faces)

    def __repr__(self) -> str:
        return f"SimplicialComplex(f={self.f_vector}, dim={self.dim})"

    def face_indices(self, face: Iterable[Label]) -> tuple[int, ...]:
        try:
            return tuple(sorted({self.index[v] for v in face}))
        except KeyError as exc:
            raise LabelError(f"unknown vertex label {exc.args[0]!r}") from None

    def __contains__(self, face: Iterable[Label]) -> bool:
        try:
            return self.face_indices(face) in self.faces
        except LabelError:
            return False

    def is_subcomplex_of(self, other: SimplicialComplex) -> bool:
        return self.labelled_faces <= other.labelled_faces

    @cached_property
    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) <= 1

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * c for d, c in enumerate(self.f_vector))

    # ── Derived complexes ───────────────────────────────────────────────────

    def _derived(self, label_faces: Iterable[frozenset]) -> SimplicialComplex:
        return SimplicialComplex.from_label_faces(self.vertices, label_faces)

    def subcomplex(self, keep: Callable[[frozenset], bool]) -> SimplicialComplex:
        """Faces accepted by ``keep``; the predicate must be closed under subsets."""
        return self._derived(f for f in self.labelled_faces if keep(f))

    def skeleton(self, d: int) -> SimplicialComplex:
        return self._derived(f for f in self.labelled_faces if len(f) <= d + 1)

    def relabel(self, fn: Callable[[Label], Label]) -> SimplicialComplex:
        vertices = tuple(fn(v) for v in self.vertices)
        if len(set(vertices)) != len(vertices):
            raise LabelError("relabeling is not injective")
        return SimplicialComplex(vertices=vertices, faces=self.faces)

    def tagged(self, tag: Any) -> SimplicialComplex:
        return self.relabel(lambda v: (tag, v))

    def one_skeleton(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(len(self.vertices)))
        graph.add_edges_from(f for f in self.faces if len(f) == 2)
        return graph


# ── Standard complexes ──────────────────────────────────────────────────────

def simplex(labels: Sequence[Label]) -> SimplicialComplex:
    return SimplicialComplex.from_facets(labels, [labels])


def boundary_complex(labels: Sequence[Label] | int) -> SimplicialComplex:
    """Boundary of the simplex on ``labels``; its face poset is the proper part of a boolean lattice.

    An integer m stands for the labels 1..m. One label gives the empty complex.
    """
    if isinstance(labels, int):
        labels = tuple(range(1, labels + 1))
    labels = tuple(labels)
    if not labels:
        return SimplicialComplex.void()
    if len(labels) == 1:
        return SimplicialComplex.empty()
    return SimplicialComplex.from_facets(labels, combinations(labels, len(labels) - 1))


# ── Operations ──────────────────────────────────────────────────────────────

def join(K: SimplicialComplex, L: SimplicialComplex) -> SimplicialComplex:
    """Faces are unions of a face of K and a face of L."""
    clash = set(K.vertices) & set(L.vertices)
    if clash:
        raise LabelError(f"join of complexes sharing labels {sorted(map(repr, clash))}")
    shift = len(K.vertices)
    faces = frozenset(a + tuple(shift + j for j in b) for a in K.faces for b in L.faces)
    return SimplicialComplex(vertices=K.vertices + L.vertices, faces=faces)


def join_all(complexes: Iterable[SimplicialComplex]) -> SimplicialComplex:
    result = SimplicialComplex.empty()
    for K in complexes:
        result = join(result, K)
    return result


def _require_face(K: SimplicialComplex, face: Iterable[Label]) -> tuple[int, ...]:
    idx = K.face_indices(face)
    if idx not in K.faces:
        raise FaceError(f"{sorted(map(str, face))} is not a face")
    return idx


def link(K: SimplicialComplex, face: Iterable[Label]) -> SimplicialComplex:
    F = set(_require_face(K, face))
    faces = [frozenset(K.vertices[i] for i in H if i not in F) for H in K.faces if F <= set(H)]
    return K._derived(faces)


def star(K: SimplicialComplex, face: Iterable[Label]) -> SimplicialComplex:
    """Closed star: every face whose union with ``face`` is a face."""
    F = set(_require_face(K, face))
    faces = [
        frozenset(K.vertices[i] for i in H)
        for H in K.faces
        if tuple(sorted(F | set(H))) in K.faces
    ]
    return K._derived(faces)


def cone(K: SimplicialComplex, apex: Label) -> SimplicialComplex:
    if apex in K.index:
        raise LabelError(f"cone apex {apex!r} already a vertex")
    a = len(K.vertices)
    faces = K.faces | {f + (a,) for f in K.faces}
    return SimplicialComplex(vertices=K.vertices + (apex,), faces=frozenset(faces))


def stellar_subdivide(K: SimplicialComplex, face: Iterable[Label], apex: Label | None = None) -> SimplicialComplex:
    """Replace the star of ``face`` by the cone over boundary(face) * link(face)."""
    F = set(_require_face(K, face))
    if not F:
        raise FaceError("cannot subdivide the empty face")
    if apex is None:
        apex = ("star", tuple(K.vertices[i] for i in sorted(F)))
    if apex in K.index:
        raise LabelError(f"subdivision apex {apex!r} already a vertex")
    a = len(K.vertices)
    kept = {H for H in K.faces if not F <= set(H)}
    coned = {H + (a,) for H in kept if tuple(sorted(F | set(H))) in K.faces}
    return SimplicialComplex(vertices=K.vertices + (apex,), faces=frozenset(kept | coned))


def is_flag(K: SimplicialComplex) -> bool:
    """Every set of pairwise adjacent vertices spans a face."""
    if K.is_void:
        return True
    return all(tuple(sorted(clique)) in K.faces for clique in nx.find_cliques(K.one_skeleton()))


def _incidence_graph(K: SimplicialComplex) -> nx.Graph:
    graph = nx.Graph()
    for i in range(len(K.vertices)):
        graph.add_node(("v", i), kind=("v", 0))
    for j, facet in enumerate(K.facets):
        graph.add_node(("f", j), kind=("f", len(facet)))
        graph.add_edges_from((("f", j), ("v", i)) for i in facet)
    return graph


def is_isomorphic_complexes(K: SimplicialComplex, L: SimplicialComplex) -> dict | None:
    """Vertex bijection K -> L carrying faces onto faces, or None."""
    if K.is_void != L.is_void or K.f_vector != L.f_vector:
        return None
    if sorted(map(len, K.facets)) != sorted(map(len, L.facets)):
        return None
    matcher = GraphMatcher(
        _incidence_graph(K), _incidence_graph(L),
        node_match=lambda a, b: a["kind"] == b["kind"],
    )
    if not matcher.is_isomorphic():
        return None
    return {
        K.vertices[src[1]]: L.vertices[dst[1]]
        for src, dst in matcher.mapping.items()
        if src[0] == "v"
    }
