"""JSON and DOT renderings of posets, building sets, complexes, homology and trees."""

from __future__ import annotations

import json
import sys

from dowling_nested.homology import HomologyResult
from dowling_nested.nested import BuildingSet
from dowling_nested.posets import Poset
from dowling_nested.simplicial import SimplicialComplex
from dowling_nested.trees import GTree


def complex_to_json(K: SimplicialComplex) -> dict:
    return {
        "vertices": [str(v) for v in K.vertices],
        "faces": [list(f) for f in sorted(K.faces, key=lambda f: (len(f), f))],
        "facets": [list(f) for f in K.facets],
        "f_vector": list(K.f_vector),
        "dim": K.dim,
    }


def homology_to_json(K: SimplicialComplex, H: HomologyResult) -> dict:
    return {"f_vector": list(K.f_vector), "dim": K.dim, **H.to_json()}


def to_json(obj) -> dict:
    if isinstance(obj, SimplicialComplex):
        return complex_to_json(obj)
    if isinstance(obj, (Poset, BuildingSet, GTree)):
        return obj.to_json()
    raise TypeError(f"no JSON rendering for {type(obj).__name__}")


def dumps(data: dict) -> str:
    """Stable text: insertion key order, two-space indent, trailing newline."""
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


# ── DOT ─────────────────────────────────────────────────────────────────────

def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def poset_to_dot(P: Poset, members: frozenset[int] = frozenset()) -> str:
    """Hasse diagram, bottom to top; building set members drawn boxed."""
    lines = [f"digraph {_quote(P.name or 'poset')} {{", "  rankdir=BT;"]
    for i, e in enumerate(P.elements):
        shape = "box" if i in members else "ellipse"
        lines.append(f"  n{i} [label={_quote(str(e))}, shape={shape}];")
    lines.extend(f"  n{i} -> n{j};" for i, j in P.hasse)
    lines.append("}")
    return "\n".join(lines) + "\n"


def complex_to_dot(K: SimplicialComplex) -> str:
    """The 1-skeleton of K."""
    lines = ["graph complex {"]
    for i, v in enumerate(K.vertices):
        lines.append(f"  v{i} [label={_quote(str(v))}];")
    lines.extend(f"  v{a} -- v{b};" for a, b in sorted(f for f in K.faces if len(f) == 2))
    lines.append("}")
    return "\n".join(lines) + "\n"


def tree_to_dot(T: GTree) -> str:
    """Leaves labelled ``i~g``; zero vertices filled."""
    lines = ["graph tree {"]
    for v in range(T.size):
        if T.labels[v] is not None:
            i, g = T.labels[v]
            lines.append(f"  t{v} [label={_quote(f'{i}~{g}')}, shape=plaintext];")
        elif v in T.zero_vertices:
            lines.append(f"  t{v} [label=\"\", shape=circle, style=filled, fillcolor=black];")
        else:
            lines.append(f"  t{v} [label=\"\", shape=circle];")
    lines.extend(f"  t{p} -- t{v};" for v, p in enumerate(T.parent) if p >= 0)
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_dot(obj) -> str:
    if isinstance(obj, SimplicialComplex):
        return complex_to_dot(obj)
    if isinstance(obj, BuildingSet):
        return poset_to_dot(obj.base, obj.members)
    if isinstance(obj, Poset):
        return poset_to_dot(obj)
    if isinstance(obj, GTree):
        return tree_to_dot(obj)
    raise TypeError(f"no DOT rendering for {type(obj).__name__}")


def write_output(text: str, out: str = "") -> None:
    """Write to ``out`` or, when empty, to stdout."""
    if out:
        with open(out, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
        sys.stdout.flush()
