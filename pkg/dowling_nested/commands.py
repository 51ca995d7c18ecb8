"""Command handlers for build, homology and verify, and the command registry."""

from __future__ import annotations

from rich.table import Table

from dowling_nested.dowling import build_dowling_lattice, build_partition_lattice, build_q0
from dowling_nested.errors import UsageError
from dowling_nested.export import dumps, homology_to_json, to_dot, to_json, write_output
from dowling_nested.groups import GroupTable
from dowling_nested.homology import reduced_homology
from dowling_nested.nested import BuildingSet, compute_IG, compute_JG, maximal_building_set, minimal_building_set, nested_complex
from dowling_nested.posets import Poset, order_complex
from dowling_nested.simplicial import SimplicialComplex
from dowling_nested.state import RunConfig
from dowling_nested.suites import run_suites
from dowling_nested.trees import build_dowling_tree_complex, build_tree_complex
from dowling_nested.ui import SpinnerContext, console, dbg_block, dim, error, print_report_table, success, warn

OBJECTS = (
    "lattice", "q0", "order-complex", "q0-order-complex",
    "tree-complex", "dowling-tree-complex", "building-set", "nested-complex",
)
BASES = ("lattice", "q0", "partition")
BUILDINGS = ("minimal", "maximal")


# ── Object construction ─────────────────────────────────────────────────────

def _base_poset(run: RunConfig, G: GroupTable) -> Poset:
    if run.base == "lattice":
        return build_dowling_lattice(run.n, G)
    if run.base == "q0":
        return build_q0(run.n, G)
    if run.base == "partition":
        return build_partition_lattice(run.n)
    raise UsageError(f"unknown base {run.base!r} (expected one of {', '.join(BASES)})")


def _building_set(run: RunConfig, G: GroupTable) -> BuildingSet:
    if run.building == "minimal" and run.base == "lattice":
        return compute_JG(run.n, G)
    if run.building == "minimal" and run.base == "q0":
        return compute_IG(run.n, G)
    L = _base_poset(run, G)
    if run.building == "minimal":
        return BuildingSet(base=L, members=minimal_building_set(L), name="minimal")
    if run.building == "maximal":
        return BuildingSet(base=L, members=maximal_building_set(L), name="maximal")
    raise UsageError(f"unknown building set {run.building!r} (expected one of {', '.join(BUILDINGS)})")


def build_object(run: RunConfig, G: GroupTable):
    """The object named by ``run.object``."""
    obj = run.object
    if obj == "lattice":
        return build_dowling_lattice(run.n, G)
    if obj == "q0":
        return build_q0(run.n, G)
    if obj == "order-complex":
        return order_complex(build_dowling_lattice(run.n, G), reduced=True)
    if obj == "q0-order-complex":
        return order_complex(build_q0(run.n, G), reduced=True)
    if obj == "tree-complex":
        return build_tree_complex(run.n, G)
    if obj == "dowling-tree-complex":
        return build_dowling_tree_complex(run.n, G)
    if obj == "building-set":
        return _building_set(run, G)
    if obj == "nested-complex":
        B = _building_set(run, G)
        return nested_complex(B.base, B, reduced=B.base.top is not None)
    raise UsageError(f"unknown object {obj!r} (expected one of {', '.join(OBJECTS)})")


def _header(run: RunConfig) -> dict:
    return {"object": run.object, "n": run.n, "group": run.group}


# ── Commands ────────────────────────────────────────────────────────────────

def cmd_build(run: RunConfig) -> int:
    G = run.resolve_group()
    with SpinnerContext(f"Building {run.object} for n={run.n}, G={G}..."):
        obj = build_object(run, G)
    if run.format == "dot":
        write_output(to_dot(obj), run.out)
    else:
        write_output(dumps({**_header(run), "data": to_json(obj)}), run.out)
    if run.out:
        success(f"Wrote {run.object} to {run.out}")
    return 0


def cmd_homology(run: RunConfig) -> int:
    G = run.resolve_group()
    with SpinnerContext(f"Building {run.object} for n={run.n}, G={G}...") as spinner:
        obj = build_object(run, G)
        if isinstance(obj, Poset):
            obj = order_complex(obj, reduced=True)
        if not isinstance(obj, SimplicialComplex):
            raise UsageError(f"{run.object} has no homology; choose a complex or a poset")
        spinner.update("Reducing boundary matrices...")
        H = reduced_homology(obj)

    table = Table(show_header=True, header_style="bold", box=None, pad_edge=False)
    table.add_column("degree", justify="right")
    table.add_column("betti", justify="right")
    table.add_column("torsion", style="dim")
    if H.betti_minus_one:
        table.add_row("-1", str(H.betti_minus_one), "")
    for d, b in enumerate(H.reduced_betti):
        torsion = " ".join(f"Z/{t}" for t in H.torsion[d]) if d < len(H.torsion) else ""
        table.add_row(str(d), str(b), torsion)
    dim(f"f-vector {tuple(obj.f_vector)}")
    console.print(table)

    write_output(dumps({**_header(run), **homology_to_json(obj, H)}), run.out)
    return 0


def cmd_verify(run: RunConfig) -> int:
    G = run.resolve_group()
    with SpinnerContext(f"Running {', '.join(run.suites)} for n={run.n}, G={G}..."):
        results = run_suites(run, G)
    print_report_table(results)
    failures = [r for r in results if not r.passed and not r.informational]
    verdict = {
        "config": run.to_json(),
        "passed": not failures,
        "results": [r.to_json() for r in results],
    }
    text = dumps(verdict)
    dbg_block("verdict", text)
    write_output(text, run.out)
    differing = [r for r in results if not r.passed and r.informational]
    if differing:
        warn(f"{len(differing)} informational check(s) differ; they do not affect the verdict")
    if failures:
        error(f"{len(failures)} of {len(results)} checks failed")
        return 1
    success(f"All {len(results)} checks passed")
    return 0


COMMAND_REGISTRY: dict[str, tuple] = {
    "build":    (cmd_build,    {"b"}),
    "homology": (cmd_homology, {"h", "betti"}),
    "verify":   (cmd_verify,   {"v", "check"}),
}


def dispatch(run: RunConfig) -> int:
    """Run the handler registered for ``run.command`` and return its exit code."""
    for key, (handler, aliases) in COMMAND_REGISTRY.items():
        if run.command == key or run.command in aliases:
            return handler(run)
    raise UsageError(f"unknown command {run.command!r}")
