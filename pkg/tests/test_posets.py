from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from dowling_nested.dowling import build_dowling_lattice, build_partition_lattice
from dowling_nested.errors import DomainError, LabelError
from dowling_nested.homology import reduced_homology
from dowling_nested.posets import (
    Poset, antichain, boolean_lattice, chain, interval, is_isomorphic, lower_interval, order_complex,
    product, product_all,
)


def test_chain_basics():
    C = chain(4)
    assert C.bottom == 0 and C.top == 3
    assert C.hasse == ((0, 1), (1, 2), (2, 3))
    assert C.heights == (0, 1, 2, 3)
    assert C.is_lattice


def test_antichain_has_no_bounds():
    A = antichain(3)
    assert A.bottom is None and A.top is None
    assert A.supremum([0, 1]) is None
    assert not A.is_meet_semilattice


def test_boolean_lattice():
    B = boolean_lattice(3)
    assert len(B) == 8
    assert len(B.atoms) == 3
    x = B.index_of(frozenset({1}))
    y = B.index_of(frozenset({2, 3}))
    assert B.elements[B.join(x, y)] == frozenset({1, 2, 3})
    assert B.elements[B.meet(x, y)] == frozenset()


def test_index_of_unknown():
    with pytest.raises(LabelError):
        chain(2).index_of(7)


def test_interval_needs_order():
    C = chain(3)
    assert len(interval(C, 0, 2)) == 3
    with pytest.raises(DomainError):
        C.interval_indices(2, 0)
    with pytest.raises(DomainError):
        lower_interval(antichain(2), 0)


def test_product_of_chains_is_grid():
    P = product(chain(2), chain(3))
    assert len(P) == 6
    assert len(P.hasse) == 7
    assert P.elements[P.top] == (1, 2)


def test_empty_product_is_point():
    P = product_all([])
    assert len(P) == 1 and P.bottom == 0 == P.top


def test_proper_part_and_order_complex():
    B = boolean_lattice(3)
    K = order_complex(B, reduced=True)
    # barycentric subdivision of a triangle boundary: a hexagon
    assert K.f_vector == (6, 6)
    H = reduced_homology(K)
    assert H.reduced_betti == (0, 1)


def test_order_complex_unreduced_is_cone():
    K = order_complex(chain(3))
    assert K.f_vector == (3, 3, 1)
    assert reduced_homology(K).reduced_betti == (0, 0, 0)


def test_isomorphism_with_pins():
    B = boolean_lattice(2)
    w = is_isomorphic(B, product(chain(2), chain(2)))
    assert w is not None and w.verify()
    a = B.index_of(frozenset({1}))
    target = product(chain(2), chain(2))
    pinned = is_isomorphic(B, target, fixed={a: target.index_of((1, 0))})
    assert pinned is not None and pinned(a) == target.index_of((1, 0))
    assert is_isomorphic(chain(4), boolean_lattice(2)) is None


@st.composite
def small_posets(draw):
    """Random posets as subsets of a boolean lattice ordered by inclusion."""
    n = draw(st.integers(1, 4))
    subsets = draw(st.lists(st.frozensets(st.integers(1, n)), min_size=1, max_size=6, unique=True))
    return Poset.from_leq(subsets, lambda a, b: a <= b)


@given(small_posets(), st.randoms(use_true_random=False))
def test_isomorphism_matches_relabelling(P, rnd):
    order = list(range(len(P)))
    rnd.shuffle(order)
    Q = Poset(elements=tuple(P.elements[i] for i in order),
              up=tuple(frozenset(order.index(j) for j in P.up[i]) for i in order))
    w = is_isomorphic(P, Q)
    assert w is not None and w.verify()


@given(small_posets(), small_posets())
def test_isomorphism_agrees_with_brute_force(P, Q):
    brute = len(P) == len(Q) and any(
        all(P.leq(i, j) == Q.leq(f[i], f[j]) for i in range(len(P)) for j in range(len(P)))
        for f in permutations(range(len(Q)))
    )
    assert (is_isomorphic(P, Q) is not None) == brute


def test_join_and_meet_on_chain():
    C = chain(4)
    assert C.join(0, 1) == 1
    assert C.join(3, 1) == 3
    assert C.meet(2, 3) == 2
    assert C.meet(0, 2) == 0
    assert C.supremum([0, 1, 2]) == 2
    assert C.infimum([1, 2, 3]) == 1


def test_join_of_atoms_in_partition_lattice():
    Pi = build_partition_lattice(3)
    a, b = Pi.atoms[:2]
    assert Pi.join(a, b) == Pi.top
    assert Pi.meet(a, b) == Pi.bottom
    assert Pi.join(a, Pi.bottom) == a
    assert Pi.meet(a, Pi.top) == a
    assert Pi.is_lattice


def test_dowling_lattice_is_lattice(z2):
    assert build_dowling_lattice(3, z2).is_lattice
