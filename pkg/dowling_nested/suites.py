"""Verification suites run by ``dowling-nested verify``.

Each suite takes the run configuration and the group and returns CheckResult
records. Library errors inside a check are recorded as failures of that check.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from math import prod
from typing import Callable

from dowling_nested.dowling import (
    atom_count, build_dowling_lattice, build_partition_lattice, build_q0, interval_decomposition,
    lattice_size, lower_interval_iso_q0, q0_size,
)
from dowling_nested.errors import DowlingError, ResourceCapError
from dowling_nested.filtration import (
    build_Km, chain_sum, chain_sum_brute, classify, cm_link_check, link_record, numerology_by_shapes,
    numerology_report, sphere_count_difference, type_zero_chains,
)
from dowling_nested.groups import GroupTable
from dowling_nested.homology import rational_betti, reduced_homology
from dowling_nested.nested import (
    BuildingSet, compute_IG, compute_JG, condition_n, is_building_set, is_nested, minimal_building_set,
)
from dowling_nested.posets import order_complex
from dowling_nested.simplicial import SimplicialComplex, stellar_subdivide
from dowling_nested.state import SUITES, RunConfig, config
from dowling_nested.trees import (
    build_dowling_tree_complex, build_tree_complex, contract_orbit, enumerate_trees, inner_orbits,
    nested_to_dowling_tree, nested_to_tree, sigma_of_edge, tree_complex_from_trees, tree_to_nested,
)
from dowling_nested.ui import dbg


@dataclass(frozen=True)
class CheckResult:
    suite: str
    case: str
    anchor: str
    passed: bool
    detail: dict = field(default_factory=dict)
    informational: bool = False

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "case": self.case,
            "anchor": self.anchor,
            "passed": self.passed,
            "informational": self.informational,
            "detail": self.detail,
        }


class _Recorder:
    def __init__(self, suite: str):
        self.suite = suite
        self.results: list[CheckResult] = []

    def check(self, case: str, anchor: str, passed: bool, informational: bool = False, **detail):
        self.results.append(CheckResult(self.suite, case, anchor, bool(passed), detail, informational))

    def guarded(self, case: str, anchor: str, fn: Callable[[], tuple[bool, dict]]):
        """Run ``fn`` and record its verdict; a library error fails the check."""
        try:
            passed, detail = fn()
        except ResourceCapError:
            raise
        except DowlingError as exc:
            dbg(f"{self.suite}/{case}: {exc}")
            passed, detail = False, {"error": str(exc)}
        self.check(case, anchor, passed, **detail)


def _sphere_product(n: int, k: int, sign: int) -> int:
    return prod(j * k + sign for j in range(1, n))


def _same_homology(K: SimplicialComplex, L: SimplicialComplex) -> tuple[bool, dict]:
    a, b = reduced_homology(K), reduced_homology(L)
    return a == b, {"left": a.to_json(), "right": b.to_json()}


# ── lattice ─────────────────────────────────────────────────────────────────

def suite_lattice(run: RunConfig, G: GroupTable) -> list[CheckResult]:
    rec, n, k = _Recorder("lattice"), run.n, G.order
    L = build_dowling_lattice(n, G)
    Q0 = build_q0(n, G)
    rec.check("size", "lattice cardinality", len(L) == lattice_size(n, k), found=len(L), expected=lattice_size(n, k))
    rec.check("q0-size", "trivial-zero subposet cardinality", len(Q0) == q0_size(n, k), found=len(Q0))
    rec.check("is-lattice", "Dowling lattice is a lattice", L.is_lattice)
    rec.check("q0-semilattice", "trivial-zero subposet is a meet-semilattice", Q0.is_meet_semilattice)
    rec.check("atoms", "atom count", len(L.atoms) == atom_count(n, k), found=len(L.atoms))
    ranks = [e.rank for e in L.elements]
    rec.check("graded", "rank function matches chain heights", list(L.heights) == ranks)
    if (n, k) == (3, 2):
        corank_one = sum(r == n - 1 for r in ranks)
        rec.check(
            "hasse-picture", "small Dowling lattice picture counts",
            (len(L), len(L.atoms), corank_one, len(Q0)) == (24, 9, 13, 11),
            elements=len(L), atoms=len(L.atoms), corank_one=corank_one, q0=len(Q0),
        )

    def intervals() -> tuple[bool, dict]:
        for omega in L.elements:
            dec = interval_decomposition(omega)
            if dec.m != len(omega.zero):
                return False, {"element": str(omega)}
        for sigma in Q0.elements:
            lower_interval_iso_q0(sigma)
        return True, {"checked": len(L) + len(Q0)}

    rec.guarded("intervals", "lower intervals factor as Dowling times partition lattices", intervals)

    if n >= 2:
        def homotopy() -> tuple[bool, dict]:
            H = reduced_homology(order_complex(L, reduced=True))
            expected = _sphere_product(n, k, 1)
            ok = H.concentrated_in(n - 2) and H.betti(n - 2) == expected and H.is_torsion_free
            return ok, {"expected": expected, **H.to_json()}

        rec.guarded("homotopy", "order complex of the Dowling lattice is a wedge of spheres", homotopy)
    return rec.results


# ── building ────────────────────────────────────────────────────────────────

def _nested_agrees_with_condition(B: BuildingSet) -> tuple[bool, dict]:
    L = B.base
    members = sorted(B.members)
    for a, b in combinations(members, 2):
        if is_nested(L, B, (a, b)) != condition_n((L.elements[a], L.elements[b])):
            return False, {"pair": [str(L.elements[a]), str(L.elements[b])]}
    return True, {"pairs": len(members) * (len(members) - 1) // 2}


def suite_building(run: RunConfig, G: GroupTable) -> list[CheckResult]:
    rec, n = _Recorder("building"), run.n
    IG, JG = compute_IG(n, G), compute_JG(n, G)
    rec.guarded("IG", "type-1 elements form a building set of Q_n^0", lambda: (IG.verify(), {"size": len(IG)}))
    rec.guarded("JG", "J^G is a building set of the Dowling lattice", lambda: (JG.verify(), {"size": len(JG)}))
    rec.guarded(
        "IG-minimal", "I^G is the minimal building set of Q_n^0",
        lambda: (minimal_building_set(IG.base) == IG.members, {}),
    )
    rec.guarded(
        "JG-minimal", "J^G is the minimal building set of the Dowling lattice",
        lambda: (minimal_building_set(JG.base) == JG.members, {}),
    )
    for m in (3, 4):
        def partitions_minimal(m=m) -> tuple[bool, dict]:
            Pi = build_partition_lattice(m)
            expected = {i for i, p in enumerate(Pi.elements) if len(p.nonsingleton_blocks) == 1}
            ok = minimal_building_set(Pi) == expected and is_building_set(Pi, expected)
            return ok, {"size": len(expected)}

        rec.guarded(f"partition-{m}", "minimal building set of the partition lattice", partitions_minimal)
    rec.guarded("condition-IG", "pairwise nestedness equals disjoint blocks (I^G)", lambda: _nested_agrees_with_condition(IG))
    rec.guarded("condition-JG", "pairwise nestedness equals disjoint blocks (J^G)", lambda: _nested_agrees_with_condition(JG))
    return rec.results


# ── trees ───────────────────────────────────────────────────────────────────

def _roundtrip(K: SimplicialComplex, n: int, G: GroupTable, dowling: bool) -> tuple[bool, dict]:
    to_tree = nested_to_dowling_tree if dowling else nested_to_tree
    for face in K.labelled_faces:
        if tree_to_nested(to_tree(face, n, G)) != face:
            return False, {"face": sorted(map(str, face))}
    return True, {"faces": len(K.faces)}


def _contraction(n: int, G: GroupTable, dowling: bool) -> tuple[bool, dict]:
    checked = 0
    for T in enumerate_trees(n, G, dowling):
        X = tree_to_nested(T)
        for o in inner_orbits(T):
            if tree_to_nested(contract_orbit(T, o)) != X - {sigma_of_edge(T, o.rep)}:
                return False, {"tree": T.to_json()}
            checked += 1
    return True, {"contractions": checked}


def suite_trees(run: RunConfig, G: GroupTable) -> list[CheckResult]:
    rec, n, k = _Recorder("trees"), run.n, G.order
    if n < 2 or k < 2:
        rec.check("scope", "tree complexes need n >= 2 and |G| >= 2", True, informational=True)
        return rec.results
    TG = build_tree_complex(n, G)
    TD = build_dowling_tree_complex(n, G)

    def spheres() -> tuple[bool, dict]:
        H = reduced_homology(TG)
        expected = _sphere_product(n, k, -1)
        ok = H.concentrated_in(n - 2) and H.betti(n - 2) == expected and H.is_torsion_free
        return ok, {"expected": expected, **H.to_json()}

    rec.guarded("TG-homotopy", "G-tree complex is a wedge of spheres", spheres)
    rec.check("TG-pure", "G-tree complex is pure of dimension n-2", TG.is_pure and TG.dim == n - 2, dim=TG.dim)
    rec.check("TD-pure", "Dowling tree complex is pure of dimension n-2", TD.is_pure and TD.dim == n - 2, dim=TD.dim)
    rec.check(
        "type-one-subcomplex", "type-1 faces of the Dowling tree complex form the G-tree complex",
        TD.subcomplex(lambda f: all(e.is_type_one for e in f)) == TG,
    )
    rec.guarded("TG-roundtrip", "nested sets and G-trees correspond", lambda: _roundtrip(TG, n, G, False))
    rec.guarded("TD-roundtrip", "nested sets and Dowling trees correspond", lambda: _roundtrip(TD, n, G, True))
    rec.guarded(
        "TG-enumeration", "tree enumeration gives the nested set complex",
        lambda: (tree_complex_from_trees(n, G) == TG, {"facets": len(TG.facets)}),
    )
    rec.guarded(
        "TD-enumeration", "Dowling tree enumeration gives the reduced nested set complex",
        lambda: (tree_complex_from_trees(n, G, dowling=True) == TD, {"facets": len(TD.facets)}),
    )
    if n <= 3:
        rec.guarded("TG-contraction", "orbit contraction deletes one nested element", lambda: _contraction(n, G, False))
        rec.guarded("TD-contraction", "zero-path contraction deletes one nested element", lambda: _contraction(n, G, True))
    return rec.results


# ── subdivision ─────────────────────────────────────────────────────────────

def _stellar_trials(K: SimplicialComplex, trials: int, seed: int) -> tuple[bool, dict]:
    rng = random.Random(seed)
    expected = reduced_homology(K)
    current = K
    for step in range(trials):
        faces = sorted(f for f in current.faces if f)
        face = faces[rng.randrange(len(faces))]
        current = stellar_subdivide(current, [current.vertices[i] for i in face], apex=("s", step))
        if reduced_homology(current) != expected:
            return False, {"step": step}
        if len(current.faces) > 4 * len(K.faces) + 200:
            current = K
    return True, {"trials": trials}


def suite_subdivision(run: RunConfig, G: GroupTable) -> list[CheckResult]:
    rec, n = _Recorder("subdivision"), run.n
    if n < 2 or G.order < 2:
        rec.check("scope", "tree complexes need n >= 2 and |G| >= 2", True, informational=True)
        return rec.results
    TG, TD = build_tree_complex(n, G), build_dowling_tree_complex(n, G)
    dq0 = order_complex(build_q0(n, G), reduced=True)
    dq = order_complex(build_dowling_lattice(n, G), reduced=True)
    rec.guarded("q0-vs-TG", "Q_n^0 order complex and G-tree complex share homology", lambda: _same_homology(dq0, TG))
    rec.guarded("q-vs-TD", "Dowling order complex and Dowling tree complex share homology", lambda: _same_homology(dq, TD))
    trials = min(config.trials, 40) if n >= 4 else config.trials
    rec.guarded("stellar", "stellar subdivision preserves homology", lambda: _stellar_trials(TG, trials, config.seed))

    def oracle() -> tuple[bool, dict]:
        for K in (TG, TD, dq0):
            H = reduced_homology(K)
            rational = rational_betti(K)
            if tuple(H.betti(d) for d in range(-1, len(rational) - 1)) != rational:
                return False, {"complex": repr(K)}
        return True, {}

    rec.guarded("rational-oracle", "integer homology agrees with the rational rank oracle", oracle)
    return rec.results


# ── filtration ──────────────────────────────────────────────────────────────

def suite_filtration(run: RunConfig, G: GroupTable) -> list[CheckResult]:
    rec, n, k = _Recorder("filtration"), run.n, G.order
    if n < 2 or k < 2:
        rec.check("scope", "the filtration needs n >= 2 and |G| >= 2", True, informational=True)
        return rec.results
    TG, TD = build_tree_complex(n, G), build_dowling_tree_complex(n, G)
    Ks = [build_Km(n, G, m) for m in range(n)]
    rec.check("K0", "K_0 is the G-tree complex", Ks[0] == TG)
    rec.check("Klast", "K_{n-1} is the Dowling tree complex", Ks[-1] == TD)
    rec.check("monotone", "K_m grows with m", all(a.is_subcomplex_of(b) for a, b in zip(Ks, Ks[1:])))

    def classified() -> tuple[bool, dict]:
        counts = {"type0": 0, "type1": 0, "mixed": 0}
        for face in TD.labelled_faces:
            c = classify(face)
            counts[c.kind] += 1
            if c.chain is not None and sum(c.chain.p) != n:
                return False, {"face": sorted(map(str, face))}
        return True, counts

    rec.guarded("classify", "every simplex splits into a type-0 chain and type-1 part", classified)

    for omega in type_zero_chains(n, k):
        def sphere_link(omega=omega) -> tuple[bool, dict]:
            record = link_record(omega, G)
            return record.spheres_ok and record.join_iso and record.in_previous, record.to_json()

        rec.guarded(f"link {omega}", "attaching link is a wedge of Q spheres and a join", sphere_link)

    for m, K in enumerate(Ks):
        rec.guarded(f"cm K{m}", "K_m is Cohen-Macaulay", lambda K=K: (cm_link_check(K), {"dim": K.dim}))

    def difference() -> tuple[bool, dict]:
        diff, expected = sphere_count_difference(n, G)
        return diff == expected, {"difference": diff, "chain_sum": expected}

    rec.guarded("sphere-difference", "new spheres are counted by type-0 chains", difference)
    return rec.results


# ── identities ──────────────────────────────────────────────────────────────

def suite_identities(run: RunConfig, G: GroupTable) -> list[CheckResult]:
    rec = _Recorder("identities")
    for n in range(2, run.nmax + 1):
        for k in range(1, run.kmax + 1):
            lhs, rhs = chain_sum(n, k)
            detail = {"n": n, "k": k, "lhs": lhs, "rhs": rhs}
            if n <= 5:
                detail["brute"] = chain_sum_brute(n, k)
            rec.check(
                f"chain-sum n={n} k={k}", "sphere product difference equals the sum over chains",
                lhs == rhs and detail.get("brute", rhs) == rhs, **detail,
            )
    for n in range(2, min(run.nmax, 5) + 1):
        for k in range(1, min(run.kmax, 3) + 1):
            report = numerology_report(n, k)
            oracle = numerology_by_shapes(n, k)
            rec.check(
                f"numerology-oracle n={n} k={k}", "column-height sum agrees with the shape oracle",
                (report.lhs, report.rhs_literal) == oracle, lhs=report.lhs, rhs=report.rhs_literal,
            )
            rec.check(
                f"numerology n={n} k={k}", "column-height identity under the literal reading",
                report.equal, informational=True, **report.to_json(),
            )
    return rec.results


SUITE_REGISTRY: dict[str, Callable[[RunConfig, GroupTable], list[CheckResult]]] = {
    "lattice":     suite_lattice,
    "building":    suite_building,
    "trees":       suite_trees,
    "subdivision": suite_subdivision,
    "filtration":  suite_filtration,
    "identities":  suite_identities,
}


def run_suites(run: RunConfig, G: GroupTable) -> list[CheckResult]:
    results: list[CheckResult] = []
    for name in dict.fromkeys(run.suites):
        results.extend(SUITE_REGISTRY[name](run, G))
    order = {s: i for i, s in enumerate(SUITES)}
    return sorted(results, key=lambda r: (order[r.suite], r.case))
