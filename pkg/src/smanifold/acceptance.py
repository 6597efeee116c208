"""End-to-end acceptance suite.

Each check returns a :class:`CriterionResult`; :func:`run_all` runs them in
order.  The expected torus values below are the reference fixed-point sets
at the origin for the eight catalog structures, kept as literal strings so
they never pass through the code under test.
"""
from __future__ import annotations

import random
from fractions import Fraction
import time
from dataclasses import dataclass, field
from itertools import product
from typing import Callable

import networkx as nx

from . import finite_model as fm
from . import torus as tr
from . import weyl as wy
from .exact_linalg import IntMatrix

EXPECTED_FIXED_SETS = {
    "torus-1": {"(0,0)", "(0,1/2)", "(1/2,0)", "(1/2,1/2)"},
    "torus-2": {"(0,0)", "(0,1/2)", "(1/2,0)", "(1/2,1/2)"},
    "torus-3": {"(0,0)", "(1/2,1/2)"},
    "torus-4": {"(0,0)", "(1/2,1/2)"},
    "torus-5": {"(0,0)", "(1/3,1/3)", "(2/3,2/3)"},
    "torus-6": {"(0,0)", "(1/2,1/2)"},
    "torus-7": {"(0,0)"},
    "torus-8": {"(0,0)"},
}
EXPECTED_ANTIPODAL = {"torus-1": 4, "torus-2": 4, "torus-3": 2, "torus-4": 2,
                      "torus-5": 3, "torus-6": 2, "torus-7": 1, "torus-8": 1}


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)
    elapsed: float = 0.0
    budget: float = 0.0

    @property
    def within_budget(self) -> bool:
        return self.elapsed < self.budget

    def line(self) -> str:
        status = "PASS" if self.passed and self.within_budget else "FAIL"
        return f"[{status}] criterion {self.number}: {self.name} ({self.elapsed:.2f}s / budget {self.budget:g}s)"

    def to_json(self, timing: bool = False) -> dict:
        out = {"criterion": self.number, "name": self.name, "passed": self.passed, "detail": self.detail}
        if timing:
            out["elapsed_s"] = round(self.elapsed, 4)
            out["within_budget"] = self.within_budget
        return out


def _timed(number: int, name: str, budget: float, fn: Callable[[], tuple[bool, dict]]) -> CriterionResult:
    t0 = time.perf_counter()
    ok, detail = fn()
    return CriterionResult(number, name, ok, detail, time.perf_counter() - t0, budget)


# --- 1 ---------------------------------------------------------------------

def torus_regression() -> CriterionResult:
    def run():
        rows, ok = {}, True
        for cid, s in tr.CATALOG.items():
            origin = tr.TorusPoint.origin(2)
            pts = {str(p) for p in tr.polars(s, origin).points()}
            num = tr.antipodal_number(s)
            good = pts == EXPECTED_FIXED_SETS[cid] and num == EXPECTED_ANTIPODAL[cid]
            ok &= good
            rows[cid] = {"fixed_set": sorted(pts), "antipodal_number": num, "match": good}
        return ok, rows
    return _timed(1, "torus fixed sets and antipodal numbers", 1.0, run)


# --- 2 ---------------------------------------------------------------------

def random_unimodular(rng: random.Random, n: int, lo: int = -3, hi: int = 3) -> IntMatrix:
    while True:
        m = IntMatrix.from_rows([[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)], n)
        if m.is_unimodular():
            return m


def condition3_identity(random_sets: int = 50, seed: int = 20240601) -> CriterionResult:
    def run():
        bad = []
        for cid, s in tr.CATALOG.items():
            for g, d in product(s.generators, repeat=2):
                if not tr.condition3_symbolic(g, d):
                    bad.append({"case": cid, "gamma": g.to_list(), "delta": d.to_list()})
        rng = random.Random(seed)
        pairs = 0
        for _ in range(random_sets):
            n = rng.choice((2, 3))
            gens = [random_unimodular(rng, n) for _ in range(rng.randint(1, 3))]
            for g, d in product(gens, repeat=2):
                pairs += 1
                if not tr.condition3_symbolic(g, d):
                    bad.append({"gamma": g.to_list(), "delta": d.to_list()})
        return not bad, {"catalog_cases": len(tr.CATALOG), "random_sets": random_sets,
                         "random_pairs": pairs, "counterexamples": bad[:5]}
    return _timed(2, "conjugation law, symbolic identity", 5.0, run)


# --- 3 and 6: finite suite -------------------------------------------------

def preset_groups() -> list[tuple[str, fm.FiniteGroup]]:
    groups = [(f"Z{n}", fm.cyclic_group(n)) for n in range(2, 25)]
    groups += [(f"D{n}", fm.dihedral_group(n)) for n in range(3, 13)]
    groups += [("S3", fm.symmetric_group(3)), ("S4", fm.symmetric_group(4))]
    return groups


def finite_suite_triples():
    """Every (G, ⟨σ⟩, K) with σ of order 2 or 3 and K any subgroup of F(σ, G)."""
    for gname, G in preset_groups():
        for sigma in fm.all_automorphisms(G):
            if sigma.order() not in (2, 3):
                continue
            F = fm.fixed_subgroup(G, (sigma,))
            for K in G.subgroups(within=F):
                yield fm.GammaTriple(G, (sigma,), tuple(K), f"{gname}/{sigma.order()}")


def _finite_suite(word_bound: int, checks: tuple[str, ...], max_cosets: int | None = None) -> list[dict]:
    runners = {
        "gq": lambda f: fm.verify_gq(f, word_bound).passed,
        "condition3": lambda f: fm.condition3_check(f, word_bound).passed,
        "equivariance": lambda f: fm.equivariance_check(f, word_bound).passed,
        "derivation": lambda f: fm.derivation_check(f).passed,
    }
    out = []
    for triple in finite_suite_triples():
        if max_cosets is not None and triple.group.order // len(triple.K) > max_cosets:
            continue
        rec = {"name": triple.name, "sigma": list(triple.gamma_gens[0].perm), "K": list(triple.K)}
        try:
            fam = fm.build_family(triple)
        except fm.IllDefined as exc:
            rec.update(well_defined=False, error=str(exc))
            out.append(rec)
            continue
        rec["well_defined"] = True
        rec["cosets"] = fam.size
        for c in checks:
            rec[c] = runners[c](fam)
        out.append(rec)
    return out


def _failures(records, keys):
    return [r for r in records if not r.get("well_defined") or not all(r[k] for k in keys)]


def gq_family(word_bound: int = 3, seed: int = 7, triples_per_case: int = 60) -> CriterionResult:
    def run():
        torus_rows, ok = {}, True
        pts = tr.rational_grid(2, 6)
        rng = random.Random(seed)
        for cid, s in tr.CATALOG.items():
            triples = [tuple(rng.choice(pts) for _ in range(3)) for _ in range(triples_per_case)]
            rep = tr.verify_gq(s, pts, triples, word_bound)
            ok &= rep.passed
            torus_rows[cid] = {"passed": rep.passed, "checks": rep.checks}
        small = _finite_suite(word_bound, ("gq", "derivation"), max_cosets=12)
        bad = _failures(small, ("gq", "derivation"))
        ok &= not bad
        return ok, {"torus": torus_rows, "torus_points": len(pts),
                    "finite_instances": len(small), "finite_failures": bad[:5]}
    return _timed(3, "GQ1-GQ3 on torus samples and finite families", 30.0, run)


def finite_model_suite(word_bound: int = 3) -> CriterionResult:
    def run():
        checks = ("gq", "condition3", "equivariance", "derivation")
        recs = _finite_suite(word_bound, checks)
        bad = _failures(recs, checks)
        return not bad, {"instances": len(recs), "groups": len(preset_groups()),
                         "max_cosets": max(r.get("cosets", 0) for r in recs), "failures": bad[:5]}
    return _timed(6, "finite Γ-symmetric triples", 60.0, run)


# --- 4 ---------------------------------------------------------------------

def _grid_graph(structure: tr.TorusSStructure, N: int) -> nx.Graph:
    """Antipodality on (1/N)Z^n by direct substitution into γ(y - x) + x."""
    n = structure.dimension
    gens = [g.to_list() for g in structure.generators]
    verts = list(product(range(N), repeat=n))
    graph = nx.Graph()
    graph.add_nodes_from(verts)

    def fixes(x, y):
        d = [b - a for a, b in zip(x, y)]
        for g in gens:
            img = [sum(g[i][j] * d[j] for j in range(n)) + x[i] for i in range(n)]
            if any((u - v) % N for u, v in zip(img, y)):
                return False
        return True

    for i, x in enumerate(verts):
        for y in verts[i + 1:]:
            if fixes(x, y) and fixes(y, x):
                graph.add_edge(x, y)
    return graph


def coset_oracle(denominator_bound: int = 12) -> CriterionResult:
    def run():
        rows, ok = {}, True
        for cid, s in tr.CATALOG.items():
            D = tr.antipodal_subgroup(s)
            Dset = {p.coords for p in D}
            largest = 0
            case_ok = True
            for N in range(1, denominator_bound + 1):
                sub = [d for d in Dset if all((c * N).denominator == 1 for c in d)]
                for clique in nx.find_cliques(_grid_graph(s, N)):
                    pts = {tr.TorusPoint.of(*(Fraction(c, N) for c in v)).coords for v in clique}
                    base = tr.TorusPoint(next(iter(pts)))
                    coset = {(base + tr.TorusPoint(d)).coords for d in sub}
                    case_ok &= pts == coset
                    largest = max(largest, len(clique))
            case_ok &= largest == len(D)
            ok &= case_ok
            rows[cid] = {"D_size": len(D), "largest_clique": largest, "match": case_ok}
        return ok, {"denominator_bound": denominator_bound, "cases": rows}
    return _timed(4, "maximal-clique oracle vs cosets of D", 30.0, run)


# --- 5 ---------------------------------------------------------------------

def inequality() -> CriterionResult:
    def run():
        rows, ok = {}, True
        for cid in ("torus-1", "torus-3", "torus-5", "torus-6"):
            rep = tr.verify_inequality(tr.CATALOG[cid], gamma_words=[])
            ok &= rep.polar_holds
            rows[cid] = {"antipodal_number": rep.antipodal_number, "polar_sum": rep.polar_sum,
                         "holds": rep.polar_holds}
        s2 = tr.CATALOG["torus-2"]
        idx = next(i for i, g in enumerate(s2.generators) if g.to_list() == [[-1, 0], [0, 1]])
        var = tr.verify_inequality(s2, gamma_words=[[idx]]).gamma_variants[0]
        terms = [t["antipodal_number"] for t in var["terms"]]
        ok &= var["holds"] and terms == [2, 2]
        rows["torus-2 (gamma = diag(-1,1))"] = {"antipodal_number": tr.antipodal_number(s2),
                                                "gamma_polar_terms": terms, "holds": var["holds"]}
        return ok, rows
    return _timed(5, "antipodal-number inequality", 5.0, run)


# --- 7, 8 ------------------------------------------------------------------

WEYL_CASES = [("A", 1), ("A", 2), ("A", 3), ("A", 4), ("B", 2), ("B", 3), ("C", 3), ("D", 4), ("G", 2)]


def regular_point(rs: wy.RootSystem) -> wy.Vec:
    """A point off every root hyperplane: the sum of positive roots (2ρ)."""
    return tuple(sum(cs) for cs in zip(*wy.positive_roots(rs)))


def singular_point(rs: wy.RootSystem) -> wy.Vec:
    """The first fundamental weight: on every wall except one."""
    return wy.fundamental_weight(rs, 0)


def weyl_orbits() -> CriterionResult:
    def run():
        rows, ok = {}, True
        for kind, rank in WEYL_CASES:
            rs = wy.root_system(kind, rank)
            W = wy.weyl_group_order(kind, rank)
            for tag, X in (("regular", regular_point(rs)), ("singular", singular_point(rs))):
                orbit = len(wy.weyl_orbit(rs, X))
                wx = wy.stabilizer_subsystem(rs, X).weyl_order
                good = orbit * wx == W and (tag == "singular" or wx == 1)
                ok &= good
                rows[f"{rs.label} {tag}"] = {"orbit": orbit, "W_X": wx, "W": W, "match": good}
        a2 = wy.root_system("A", 2)
        n_reg = wy.flag_antipodal_number(a2, (2, 0, -2))
        classes = wy.polar_classes(a2, (2, -1, -1))
        sizes = [len(c.points) for c in classes]
        good = n_reg == 6 and sizes == [1, 2] and classes[0].points == ((2, -1, -1),)
        ok &= good
        rows["A2 regular antipodal number"] = n_reg
        rows["A2 fundamental weight polar class sizes"] = sizes
        return ok, rows
    return _timed(7, "Weyl orbits and polar classes", 5.0, run)


def typeA_commutation() -> CriterionResult:
    def run():
        rows, ok = {}, True
        for X in ((1, 0, -1), (2, -1, -1), (3, 1, -1, -3), (1, 1, -1, -1), (3, -1, -1, -1)):
            rep = wy.typeA_commutation_check(len(X), X)
            ok &= rep.passed
            rows[",".join(map(str, X))] = {"regular": rep.regular, "permutations": rep.permuted_diagonals,
                                           "conjugates": rep.conjugates_tested,
                                           "noncommuting": rep.conjugates_failing_to_commute,
                                           "passed": rep.passed}
        return ok, rows
    return _timed(8, "type-A matrix commutation", 2.0, run)


def run_all(denominator_bound: int = 12, word_bound: int = 3) -> list[CriterionResult]:
    return [
        torus_regression(),
        condition3_identity(),
        gq_family(word_bound),
        coset_oracle(denominator_bound),
        inequality(),
        finite_model_suite(word_bound),
        weyl_orbits(),
        typeA_commutation(),
    ]
