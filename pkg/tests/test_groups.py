import pytest

from dowling_nested.errors import AxiomViolationError, InvalidOrderError
from dowling_nested.groups import cyclic_group, dihedral_group, group_from_json, group_from_table


def test_cyclic_table():
    G = cyclic_group(3)
    assert G.order == 3
    assert G.mul[1][2] == 0
    assert G.inv == (0, 2, 1)
    assert G.is_abelian
    assert str(G) == "Z3"


def test_trivial_group():
    G = cyclic_group(1)
    assert G.mul == ((0,),)
    assert G.inv == (0,)


def test_dihedral_is_nonabelian_group():
    G = dihedral_group(3)
    assert G.order == 6
    assert not G.is_abelian
    for a in G.elements():
        assert G.mul[a][G.inv[a]] == 0
        assert G.mul[0][a] == a


def test_identity_moved_to_zero():
    # identity is element 1 in the raw table
    raw = [[0, 0], [0, 1]]
    with pytest.raises(AxiomViolationError) as exc:
        group_from_table(raw)
    assert exc.value.axiom == "inverse"

    raw = [[1, 0], [0, 1]]
    G = group_from_table(raw)
    assert G.mul == ((0, 1), (1, 0))
    assert G == cyclic_group(2)


def test_bad_tables():
    with pytest.raises(InvalidOrderError):
        group_from_table([])
    with pytest.raises(AxiomViolationError) as exc:
        group_from_table([[0, 1], [1]])
    assert exc.value.axiom == "square"
    with pytest.raises(AxiomViolationError) as exc:
        group_from_table([[0, 2], [1, 0]])
    assert exc.value.axiom == "closure"
    with pytest.raises(AxiomViolationError) as exc:
        group_from_table([[1, 1], [1, 1]])
    assert exc.value.axiom == "identity"


def test_non_associative_table():
    # a Latin square with identity 0 that is not a group (order 5 loop)
    raw = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(AxiomViolationError) as exc:
        group_from_table(raw)
    assert exc.value.axiom == "associativity"


def test_group_from_json():
    assert group_from_json({"kind": "cyclic", "m": 4}) == cyclic_group(4)
    assert group_from_json({"kind": "dihedral", "m": 2}).order == 4
    assert group_from_json({"kind": "table", "mul": [[0, 1], [1, 0]]}) == cyclic_group(2)
    with pytest.raises(InvalidOrderError):
        group_from_json({"kind": "free"})
