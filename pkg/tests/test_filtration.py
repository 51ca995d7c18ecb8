import pytest
from hypothesis import given, strategies as st

from dowling_nested.dowling import parse_element
from dowling_nested.errors import DomainError, NotNestedError, NotPureError
from dowling_nested.filtration import (
    TypeZeroChain, build_Km, chain_elements, chain_sum, chain_sum_brute, classify, cm_link_check,
    join_decomposition_check, link_decomposition, link_in_Km, link_record, numerology_by_shapes,
    numerology_report, q_factor, q_values, simplicial_link_in_Km, sphere_count_difference, type_zero_chains,
    type_zero_count,
)
from dowling_nested.homology import reduced_homology
from dowling_nested.simplicial import SimplicialComplex, boundary_complex
from dowling_nested.trees import build_dowling_tree_complex, build_tree_complex


def _chain(n, k, *blocks):
    return TypeZeroChain(n=n, k=k, zero_blocks=tuple(frozenset(b) for b in blocks))


def test_q_factor():
    assert q_factor(1, 2) == 1
    assert q_factor(2, 2) == 1
    assert q_factor(3, 2) == 3
    assert q_factor(3, 3) == 2 * 5


@pytest.mark.parametrize("n, blocks, p, q, Q", [
    (3, [{0, 1}], (1, 2), (1, 1), 1),
    (4, [{0, 1}], (1, 3), (1, 3), 3),
    (4, [{0, 1}, {0, 1, 2}], (1, 1, 2), (1, 1, 1), 1),
])
def test_q_values(n, blocks, p, q, Q):
    assert q_values(_chain(n, 2, *blocks)) == (p, q, Q)


def test_chain_validation():
    with pytest.raises(DomainError):
        _chain(3, 2, {0, 1, 2, 3})
    with pytest.raises(DomainError):
        _chain(3, 2, {0, 1, 2}, {0, 1})
    with pytest.raises(DomainError):
        _chain(3, 2, {1, 2})


def test_chain_elements(z2, z3):
    omega = _chain(3, 2, {0, 1}, {0, 1, 2})
    assert [str(e) for e in chain_elements(omega, z2)] == ["0 1|2|3", "0 1 2|3"]
    assert str(omega) == "01 < 012"
    assert omega.to_json() == {"chain": [[0, 1], [0, 1, 2]], "p": [1, 1, 1], "q": [1, 1, 1], "Q": 1}
    with pytest.raises(DomainError):
        chain_elements(omega, z3)


def test_from_elements(z2):
    X = [parse_element("0 1 2|3", z2), parse_element("0 1|2|3", z2)]
    assert TypeZeroChain.from_elements(X) == _chain(3, 2, {0, 1}, {0, 1, 2})
    with pytest.raises(DomainError):
        TypeZeroChain.from_elements([])
    with pytest.raises(DomainError):
        TypeZeroChain.from_elements([parse_element("0|1 2|3", z2)])


def test_type_zero_chains_count():
    # ordered set partitions of [3] into at least two blocks
    assert len(list(type_zero_chains(3, 2))) == 12
    assert len(list(type_zero_chains(1, 2))) == 0


def test_classify(z2):
    type1 = parse_element("0|1 2~1|3", z2)
    zero = parse_element("0 1 2|3", z2)
    assert classify([]).kind == "type1"
    assert classify([type1]).kind == "type1"
    assert classify([zero]).kind == "type0"
    mixed = classify([type1, zero])
    assert mixed.kind == "mixed"
    assert mixed.chain == _chain(3, 2, {0, 1, 2})
    with pytest.raises(NotNestedError):
        classify([parse_element("0|1 2|3", z2), type1])
    with pytest.raises(DomainError):
        classify([parse_element("0 1|2 3", z2)])


def test_filtration_ends(z2):
    K0, K1, K2 = (build_Km(3, z2, m) for m in range(3))
    assert K0 == build_tree_complex(3, z2)
    assert K2 == build_dowling_tree_complex(3, z2)
    assert K2.f_vector == (16, 30)
    assert K0.is_subcomplex_of(K1) and K1.is_subcomplex_of(K2)
    for face in K1.labelled_faces:
        assert type_zero_count(face) <= 1
    with pytest.raises(DomainError):
        build_Km(3, z2, 3)


def test_vertex_link_is_two_points(z2):
    X = [parse_element("0 1|2|3", z2)]
    lk = link_in_Km(X, z2)
    assert lk == simplicial_link_in_Km(X, z2)
    assert lk.f_vector == (2,)
    assert all(e.is_type_one for face in lk.labelled_faces for e in face)


def test_edge_link_is_its_boundary(z2):
    omega = _chain(3, 2, {0, 1}, {0, 1, 2})
    lk = link_in_Km(omega, z2)
    assert lk == boundary_complex(list(chain_elements(omega, z2)))
    assert simplicial_link_in_Km(omega, z2) == SimplicialComplex.empty()
    assert join_decomposition_check(omega, z2)


def test_link_decomposition_factors(z2):
    D = link_decomposition(_chain(3, 2, {0, 1}), z2)
    assert D.f_vector == (2,)
    assert reduced_homology(D).reduced_betti == (1,)
    assert join_decomposition_check(_chain(3, 2, {0, 1}), z2)


def test_link_record(z2):
    record = link_record(_chain(3, 2, {0, 1}), z2)
    assert record.spheres_ok
    assert record.join_iso
    assert record.in_previous
    data = record.to_json()
    assert data["Q"] == 1 and data["betti_of_link"] == [1]


@pytest.mark.slow
def test_square_link_n4(z2):
    omega = _chain(4, 2, {0, 1, 2})
    lk = link_in_Km(omega, z2)
    assert lk.f_vector == (4, 4)
    assert reduced_homology(lk).reduced_betti == (0, 1)
    assert join_decomposition_check(omega, z2)


@pytest.mark.slow
def test_all_links_n4(z2):
    for omega in type_zero_chains(4, 2):
        record = link_record(omega, z2)
        assert record.spheres_ok, str(omega)
        assert record.join_iso, str(omega)
        assert record.in_previous, str(omega)


def test_cm_link_check(z2):
    assert cm_link_check(boundary_complex(4))
    for m in range(3):
        assert cm_link_check(build_Km(3, z2, m))
    with pytest.raises(NotPureError):
        cm_link_check(SimplicialComplex.from_facets("abcd", ["ab", "bcd"]))
    bowtie = SimplicialComplex.from_facets("abcde", ["abc", "cde"])
    assert not cm_link_check(bowtie)


@pytest.mark.parametrize("n, k, expected", [(2, 2, 2), (3, 2, 12), (4, 2, 90), (3, 3, 18), (4, 3, 200)])
def test_chain_sum_values(n, k, expected):
    assert chain_sum(n, k) == (expected, expected)


def test_chain_sum_rejects_small_n():
    with pytest.raises(DomainError):
        chain_sum(1, 2)
    with pytest.raises(DomainError):
        chain_sum(3, 0)


@given(st.integers(2, 5), st.integers(1, 4))
def test_chain_sum_identity(n, k):
    lhs, rhs = chain_sum(n, k)
    assert lhs == rhs == chain_sum_brute(n, k)


def test_sphere_count_difference(z2, z3):
    assert sphere_count_difference(3, z2) == (12, 12)
    assert sphere_count_difference(3, z3) == (18, 18)


@pytest.mark.parametrize("n, k, lhs, rhs", [(2, 2, 12, 4), (2, 1, 6, 0), (3, 2, 90, 25)])
def test_numerology_literal_reading(n, k, lhs, rhs):
    report = numerology_report(n, k)
    assert (report.lhs, report.rhs_literal) == (lhs, rhs)
    assert report.equal == (lhs == rhs)
    assert numerology_by_shapes(n, k) == (lhs, rhs)


def test_numerology_terms():
    report = numerology_report(3, 2)
    assert report.per_partition_terms == {(3,): 15, (2, 1): 3, (1, 1, 1): 1}
    assert report.shifted_chain_sum == (90, 90)
    assert report.to_json()["per_partition_terms"] == {"1 1 1": 1, "2 1": 3, "3": 15}


@given(st.integers(2, 6), st.integers(1, 4))
def test_numerology_shape_oracle(n, k):
    report = numerology_report(n, k)
    assert numerology_by_shapes(n, k) == (report.lhs, report.rhs_literal)


def test_all_links_z3(z3):
    chains = list(type_zero_chains(3, 3))
    assert chains
    for omega in chains:
        record = link_record(omega, z3)
        assert record.spheres_ok, str(omega)
        assert record.join_iso, str(omega)
        assert record.in_previous, str(omega)


@pytest.mark.slow
def test_cm_link_check_n4(z2):
    for m in range(4):
        assert cm_link_check(build_Km(4, z2, m)), m
