import json

import pytest

from dowling_nested.dowling import build_dowling_lattice, parse_element
from dowling_nested.export import complex_to_json, dumps, to_dot, to_json, write_output
from dowling_nested.nested import compute_IG
from dowling_nested.simplicial import boundary_complex
from dowling_nested.trees import nested_to_dowling_tree


def test_complex_json():
    data = complex_to_json(boundary_complex(["a", "b", "c"]))
    assert data == {
        "vertices": ["a", "b", "c"],
        "faces": [[], [0], [1], [2], [0, 1], [0, 2], [1, 2]],
        "facets": [[0, 1], [0, 2], [1, 2]],
        "f_vector": [3, 3],
        "dim": 1,
    }


def test_dumps_is_stable():
    text = dumps({"b": 1, "a": [1, 2]})
    assert text.endswith("}\n")
    assert list(json.loads(text)) == ["b", "a"]


def test_building_set_dot_boxes_members(z2):
    IG = compute_IG(2, z2)
    dot = to_dot(IG)
    assert dot.startswith('digraph "Q0_2(Z2)" {')
    assert dot.count("shape=box") == len(IG)


def test_tree_json_and_dot(z2):
    T = nested_to_dowling_tree([parse_element("0 1|2", z2)], 2, z2)
    data = to_json(T)
    assert data["zero_vertices"] == [0, 1]
    assert sorted(data["leaf_labels"].values()) == ["1~0", "1~1", "2~0", "2~1"]
    dot = to_dot(T)
    assert dot.count("fillcolor=black") == 2
    assert dot.count(" -- ") == T.size - 1


def test_lattice_dot_edges(z2):
    L = build_dowling_lattice(2, z2)
    assert to_dot(L).count(" -> ") == len(L.hasse)


def test_unknown_objects():
    with pytest.raises(TypeError):
        to_json(object())
    with pytest.raises(TypeError):
        to_dot(3)


def test_write_output(tmp_path, capsys):
    write_output("hello\n")
    assert capsys.readouterr().out == "hello\n"
    target = tmp_path / "x.txt"
    write_output("hello\n", str(target))
    assert target.read_text(encoding="utf-8") == "hello\n"
    assert capsys.readouterr().out == ""
