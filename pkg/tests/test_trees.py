import pytest

from dowling_nested.dowling import build_dowling_lattice, build_q0, leq, parse_element
from dowling_nested.errors import DomainError, NotNestedError, TreeValidationError
from dowling_nested.homology import reduced_homology
from dowling_nested.posets import order_complex
from dowling_nested.trees import (
    DowlingTree, GTree, build_dowling_tree_complex, build_tree_complex, contract_orbit, enumerate_trees,
    extend_orbit, inner_orbits, nested_to_dowling_tree, nested_to_tree, sigma_of_edge, star_tree,
    tree_complex_from_trees, tree_to_nested, validate,
)


def test_star_tree_is_valid(z2):
    T = star_tree(3, z2)
    assert validate(T) == []
    assert T.size == 7
    assert tree_to_nested(T) == frozenset()
    assert inner_orbits(T) == []


def test_degree_two_vertex_is_flagged(z2):
    # root -> v -> leaf (1,0), root -> leaf (1,1)
    T = GTree(
        n=1, group=z2, parent=(-1, 0, 1, 0), labels=(None, None, (1, 0), (1, 1)),
        action=((0, 1, 2, 3), (0, 1, 2, 3)),
    )
    conditions = {v.condition for v in validate(T)}
    assert "1" in conditions
    assert "2" in conditions
    with pytest.raises(TreeValidationError):
        tree_to_nested(T)


def test_bad_leaf_labels(z2):
    T = GTree(n=1, group=z2, parent=(-1, 0, 0), labels=(None, (1, 0), (1, 0)), action=((0, 1, 2),) * 2)
    assert {v.condition for v in validate(T)} == {"tree"}


def test_single_orbit_tree(z2):
    sigma = parse_element("0|1 2~1|3", z2)
    T = nested_to_tree([sigma], 3, z2)
    assert validate(T) == []
    assert tree_to_nested(T) == {sigma}
    (orbit,) = inner_orbits(T)
    assert len(orbit.members) == 2
    assert sigma_of_edge(T, orbit.rep) == sigma
    assert contract_orbit(T, orbit) == star_tree(3, z2)


def test_caterpillar_edge(z2):
    T = nested_to_tree([parse_element("0|1 2", z2)], 2, z2)
    (orbit,) = inner_orbits(T)
    assert str(sigma_of_edge(T, orbit.lower)) == "0|1 2"
    with pytest.raises(DomainError):
        sigma_of_edge(T, T.leaf_of[(1, 0)])


def test_dowling_tree_with_zero_path(z2):
    X = {parse_element("0|1 2~1|3", z2), parse_element("0 1 2|3", z2)}
    T = nested_to_dowling_tree(X, 3, z2)
    assert isinstance(T, DowlingTree)
    assert validate(T) == []
    assert T.parent == (-1, 0, 1, 2, 2, 1, 5, 5, 0, 0)
    assert T.zero_vertices == frozenset({0, 1})
    assert [T.labels[v] for v in (3, 4, 6, 7, 8, 9)] == [(1, 0), (2, 1), (1, 1), (2, 0), (3, 0), (3, 1)]
    assert tree_to_nested(T) == X
    # the zero-path edge is its own orbit
    sizes = sorted(len(o.members) for o in inner_orbits(T))
    assert sizes == [1, 2]


def test_contract_zero_path_edge(z2):
    X = {parse_element("0|1 2~1|3", z2), parse_element("0 1 2|3", z2)}
    T = nested_to_dowling_tree(X, 3, z2)
    zero_orbit = next(o for o in inner_orbits(T) if len(o.members) == 1)
    contracted = contract_orbit(T, zero_orbit)
    assert tree_to_nested(contracted) == {parse_element("0|1 2~1|3", z2)}


def test_extend_orbit_rejects_crossing(z2):
    T = nested_to_tree([parse_element("0|1 2|3", z2)], 3, z2)
    with pytest.raises(NotNestedError):
        extend_orbit(T, parse_element("0|1|2 3", z2))
    with pytest.raises(NotNestedError):
        extend_orbit(T, parse_element("0|1 2|3", z2))
    T2 = extend_orbit(T, parse_element("0|1 2 3", z2))
    assert validate(T2) == []


def test_nested_to_tree_errors(z2, z1):
    a, b = parse_element("0|1 2|3", z2), parse_element("0|1 2~1|3", z2)
    with pytest.raises(NotNestedError):
        nested_to_tree([a, b], 3, z2)
    with pytest.raises(DomainError):
        nested_to_tree([parse_element("0 1|2|3", z2)], 3, z2)
    with pytest.raises(DomainError):
        nested_to_dowling_tree([parse_element("0 1 2 3", z2)], 3, z2)
    with pytest.raises(DomainError):
        star_tree(2, z1)


def test_tree_complexes(z2):
    TG = build_tree_complex(3, z2)
    TD = build_dowling_tree_complex(3, z2)
    assert TG.f_vector == (10, 12)
    assert TD.f_vector == (16, 30)
    assert reduced_homology(TG).reduced_betti == (0, 3)
    assert reduced_homology(TD).reduced_betti == (0, 15)
    assert TG.is_subcomplex_of(TD)
    assert TG.is_pure and TD.is_pure


def test_small_tree_complex(z2):
    K = build_tree_complex(2, z2)
    assert K.f_vector == (2,)
    assert reduced_homology(K).reduced_betti == (1,)


def test_enumeration_matches_nested_sets(z2):
    trees = enumerate_trees(3, z2)
    assert len(trees) == 1 + 10 + 12
    assert tree_complex_from_trees(3, z2) == build_tree_complex(3, z2)
    dtrees = enumerate_trees(3, z2, dowling=True)
    assert len(dtrees) == 1 + 16 + 30
    assert tree_complex_from_trees(3, z2, dowling=True) == build_dowling_tree_complex(3, z2)


@pytest.mark.parametrize("dowling", [False, True])
def test_roundtrip_n3(z2, dowling):
    K = build_dowling_tree_complex(3, z2) if dowling else build_tree_complex(3, z2)
    to_tree = nested_to_dowling_tree if dowling else nested_to_tree
    for face in K.labelled_faces:
        T = to_tree(face, 3, z2)
        assert validate(T) == []
        assert tree_to_nested(T) == face


def test_roundtrip_z3(z3):
    K = build_tree_complex(3, z3)
    assert reduced_homology(K).reduced_betti == (0, 10)
    for face in K.labelled_faces:
        assert tree_to_nested(nested_to_tree(face, 3, z3)) == face


def test_nonabelian_group_trees(s3):
    K = build_tree_complex(2, s3)
    assert K.f_vector == (6,)
    for face in K.labelled_faces:
        assert validate(nested_to_tree(face, 2, s3)) == []


def test_contraction_deletes_one_element(z2):
    for T in enumerate_trees(3, z2, dowling=True):
        X = tree_to_nested(T)
        for o in inner_orbits(T):
            assert tree_to_nested(contract_orbit(T, o)) == X - {sigma_of_edge(T, o.rep)}


def test_incomparable_edges_have_disjoint_orbits(z2):
    for T in enumerate_trees(3, z2):
        orbits = inner_orbits(T)
        for i, o in enumerate(orbits):
            for p in orbits[i + 1:]:
                s, t = sigma_of_edge(T, o.rep), sigma_of_edge(T, p.rep)
                if leq(s, t) or leq(t, s):
                    continue
                left = set().union(*(T.leaf_sets[v] for _, v in o.members))
                right = set().union(*(T.leaf_sets[v] for _, v in p.members))
                assert not left & right


@pytest.mark.slow
@pytest.mark.parametrize("dowling", [False, True])
def test_roundtrip_n4(z2, dowling):
    K = build_dowling_tree_complex(4, z2) if dowling else build_tree_complex(4, z2)
    to_tree = nested_to_dowling_tree if dowling else nested_to_tree
    for face in K.labelled_faces:
        assert tree_to_nested(to_tree(face, 4, z2)) == face
    assert K.is_pure and K.dim == 2
    assert tree_complex_from_trees(4, z2, dowling=dowling) == K


def test_tree_json_labels_leaves(z2):
    T = star_tree(2, z2)
    data = T.to_json()
    assert sorted(data["leaf_labels"].values()) == ["1~0", "1~1", "2~0", "2~1"]
    for v, label in data["leaf_labels"].items():
        i, g = map(int, label.split("~"))
        assert T.leaf_of[(i, g)] == int(v)
        assert T.is_leaf(int(v))
    assert data["parent"] == list(T.parent)


def test_tree_complexes_z3(z3):
    assert reduced_homology(build_tree_complex(3, z3)).reduced_betti == (0, 10)
    TD = build_dowling_tree_complex(3, z3)
    assert reduced_homology(TD) == reduced_homology(order_complex(build_dowling_lattice(3, z3), reduced=True))
    assert reduced_homology(build_tree_complex(3, z3)) == \
        reduced_homology(order_complex(build_q0(3, z3), reduced=True))


@pytest.mark.slow
def test_tree_complexes_n4(z2):
    TG = build_tree_complex(4, z2)
    assert reduced_homology(TG).reduced_betti == (0, 0, 15)
    assert reduced_homology(TG) == reduced_homology(order_complex(build_q0(4, z2), reduced=True))
    TD = build_dowling_tree_complex(4, z2)
    assert reduced_homology(TD).reduced_betti == (0, 0, 105)
    assert reduced_homology(TD) == reduced_homology(order_complex(build_dowling_lattice(4, z2), reduced=True))
