import pytest
from hypothesis import given, strategies as st

from dowling_nested.errors import FaceError, LabelError
from dowling_nested.homology import reduced_homology
from dowling_nested.simplicial import (
    SimplicialComplex, boundary_complex, cone, is_flag, is_isomorphic_complexes, join, join_all, link,
    simplex, star, stellar_subdivide,
)


def test_void_and_empty_differ():
    void, empty = SimplicialComplex.void(), SimplicialComplex.empty()
    assert void != empty
    assert void.is_void and not empty.is_void
    assert void.dim == empty.dim == -1
    assert reduced_homology(empty).betti(-1) == 1
    assert reduced_homology(void).betti(-1) == 0


def test_from_facets_closes_downward():
    K = SimplicialComplex.from_facets("abcd", ["abc", "cd"])
    assert K.f_vector == (4, 4, 1)
    assert K.facet_labels() == [("a", "b", "c"), ("c", "d")]
    assert "ab" in K and "bd" not in K
    assert not K.is_pure


def test_unknown_label():
    with pytest.raises(LabelError):
        SimplicialComplex.from_facets("ab", ["ac"])


def test_isolated_labels_kept():
    K = SimplicialComplex.from_facets("abc", ["ab"])
    assert K.f_vector == (3, 1)


def test_equality_ignores_vertex_order():
    K = SimplicialComplex.from_facets("abc", ["ab", "bc"])
    L = SimplicialComplex.from_facets("cba", ["cb", "ba"])
    assert K == L and hash(K) == hash(L)


def test_boundary_complex():
    assert boundary_complex(0).is_void
    assert boundary_complex(1) == SimplicialComplex.empty()
    assert boundary_complex(2).f_vector == (2,)
    assert boundary_complex(4).f_vector == (4, 6, 4)
    assert reduced_homology(boundary_complex(4)).reduced_betti == (0, 0, 1)


def test_join_of_two_point_sets_is_square():
    S0 = boundary_complex(["a", "b"])
    T0 = boundary_complex(["c", "d"])
    C4 = join(S0, T0)
    assert C4.f_vector == (4, 4)
    assert reduced_homology(C4).reduced_betti == (0, 1)
    with pytest.raises(LabelError):
        join(S0, S0)


def test_empty_complex_is_join_unit():
    K = simplex("abc")
    assert join(K, SimplicialComplex.empty()) == K
    assert join_all([]) == SimplicialComplex.empty()
    assert join(K, SimplicialComplex.void()).is_void


def test_link_and_star():
    K = SimplicialComplex.from_facets("abcd", ["abc", "acd"])
    assert link(K, "a") == SimplicialComplex.from_facets("bcd", ["bc", "cd"])
    assert link(K, "ac") == SimplicialComplex.from_facets("bd", ["b", "d"])
    assert link(K, "abc") == SimplicialComplex.empty()
    assert star(K, "b") == simplex("abc")
    with pytest.raises(FaceError):
        link(K, "bd")


def test_cone_is_contractible():
    K = cone(boundary_complex(3), "apex")
    assert reduced_homology(K).reduced_betti == (0, 0, 0)
    with pytest.raises(LabelError):
        cone(K, "apex")


def test_stellar_subdivision_of_edge():
    K = simplex("ab")
    S = stellar_subdivide(K, "ab", apex="m")
    assert S == SimplicialComplex.from_facets("abm", ["am", "bm"])
    with pytest.raises(FaceError):
        stellar_subdivide(K, "")


def test_flag():
    assert is_flag(simplex("abc"))
    assert not is_flag(boundary_complex(3))
    assert is_flag(join(boundary_complex(["a", "b"]), boundary_complex(["c", "d"])))


def test_isomorphism_of_complexes():
    hexagon = SimplicialComplex.from_facets(range(6), [(i, (i + 1) % 6) for i in range(6)])
    triangle = boundary_complex(3)
    assert is_isomorphic_complexes(hexagon, triangle) is None
    relabelled = hexagon.relabel(lambda v: f"v{v}")
    mapping = is_isomorphic_complexes(hexagon, relabelled)
    assert mapping is not None
    assert {frozenset(mapping[v] for v in f) for f in hexagon.labelled_faces} == relabelled.labelled_faces


# ── Random complexes ────────────────────────────────────────────────────────

@st.composite
def complexes(draw, max_vertices=7):
    n = draw(st.integers(1, max_vertices))
    facets = draw(st.lists(
        st.frozensets(st.integers(0, n - 1), min_size=1, max_size=4), min_size=1, max_size=8,
    ))
    return SimplicialComplex.from_facets(range(n), facets)


@given(complexes(), st.data())
def test_stellar_subdivision_preserves_homology(K, data):
    faces = sorted(f for f in K.faces if f)
    face = data.draw(st.sampled_from(faces))
    S = stellar_subdivide(K, [K.vertices[i] for i in face])
    assert reduced_homology(S) == reduced_homology(K)
    assert S.euler_characteristic() == K.euler_characteristic()


@given(complexes())
def test_link_of_vertex_is_subcomplex_of_star(K):
    v = K.vertices[0]
    assert link(K, [v]).is_subcomplex_of(star(K, [v]))
