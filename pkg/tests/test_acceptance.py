"""
The ten acceptance criteria.  Each test prints one pass/fail line (also
collected in the terminal summary).  Tolerances are pinned here:

    points per identity      3 random points over F_p, p = 2^61 - 1
    seed                     20240917
    runtime limits           table 10 s, single dimers 60 s, double dimers
                             300 s, web enumeration 120 s, mutation class 600 s
    property weightings      20 random edge weightings per graph
"""

import time
from itertools import combinations

from conftest import record
from grasstwist.harness import (PASS, load_graph, run_suite, verify_appendix_expansions,
                                verify_appendix_translation, verify_cubic,
                                verify_cubic_orbit, verify_dimer_properties,
                                verify_double_dimer_multiplicity, verify_lam_law,
                                verify_lemma_catalogs, verify_thm_3_2, verify_thm_4_1,
                                verify_twist_table_gr37, verify_web_enumeration)
from grasstwist.plabic import build_top_cell

SEED = 20240917
PRIME = (1 << 61) - 1
POINTS = 3
LIMIT_TABLE = 10.0
LIMIT_THM32 = 60.0
LIMIT_THM41 = 300.0
LIMIT_WEBS = 120.0
LIMIT_QUIVER = 600.0
WEIGHTINGS = 20


def _all_pass(rep):
    return all(c.verdict == PASS for c in rep.checks)


def test_criterion_01_twist_table():
    t = time.perf_counter()
    rep = verify_twist_table_gr37(SEED, PRIME, points=POINTS)
    dt = time.perf_counter() - t
    c = rep.checks[0]
    ok = c.verdict == PASS and c.inputs["rows"] == 49 and dt < LIMIT_TABLE
    record(1, ok, "%d rows at %d points, %s, %.2fs (< %gs)" % (c.inputs["rows"], POINTS, c.verdict, dt, LIMIT_TABLE))
    assert ok


def test_criterion_02_single_dimers():
    t = time.perf_counter()
    reps = [verify_thm_3_2(3, n, seed=SEED, prime=PRIME, points=POINTS) for n in (6, 7, 8)]
    dt = time.perf_counter() - t
    subsets = [r.checks[0].detail for r in reps]
    ok = all(_all_pass(r) for r in reps) and dt < LIMIT_THM32
    record(2, ok, "Gr(3,6/7/8): %s, %.2fs (< %gs)" % ("; ".join(subsets), dt, LIMIT_THM32))
    assert ok


def test_criterion_03_double_dimers():
    t = time.perf_counter()
    checks = []
    for n in (6, 7):
        G = build_top_cell(3, n)
        for S in combinations(range(1, n + 1), 6):
            checks += verify_thm_4_1(n, S, graph=G, seed=SEED, prime=PRIME, points=POINTS).checks
    rep8 = run_suite("thm4.1", seed=SEED, prime=PRIME, n=8)
    sampled = [c for c in rep8.checks if c.check == "thm4.1"]
    checks += sampled
    mult = verify_double_dimer_multiplicity(build_top_cell(3, 6), SEED, PRIME)
    dt = time.perf_counter() - t
    ok = all(c.verdict == PASS for c in checks) and len(sampled) == 40 and _all_pass(mult) \
        and dt < LIMIT_THM41
    record(3, ok, "%d X/Y identities (n=6,7 all S; n=8 20 sampled S), multiplicity oracle %s, %.1fs (< %gs)"
           % (len(checks), mult.checks[0].verdict, dt, LIMIT_THM41))
    assert ok


def test_criterion_04_cubics():
    sizes = {}
    ok = True
    for kind in "ABCZ":
        rep = verify_cubic_orbit(kind, seed=SEED, prime=PRIME, points=POINTS)
        sizes[kind] = len(rep.checks)
        ok &= _all_pass(rep)
    ok &= sizes == {"A": 8, "B": 16, "C": 9, "Z": 3}
    rep = verify_cubic("A", 2, False, graph=load_graph("gr38_appendix"), seed=SEED, prime=PRIME)
    rows = rep.checks[0].contributions
    twos = sum(1 for _, c, _ in rows if c == 2)
    ok &= _all_pass(rep) and len(rows) == 10 and twos == 1
    tables = verify_appendix_expansions(seed=SEED, prime=PRIME)
    table_checks = [c for c in tables.checks if c.check == "appendix-table-dimers"]
    ok &= len(table_checks) == 2 and all(c.verdict == PASS for c in table_checks)
    record(4, ok, "translates A/B/C/Z = %d/%d/%d/%d all pass; sigma2(A) on the appendix graph: "
           "%d contributing dimers, %d with coefficient 2; tables match: %s"
           % (sizes["A"], sizes["B"], sizes["C"], sizes["Z"], len(rows), twos,
              ",".join(c.verdict for c in table_checks)))
    assert ok


def test_criterion_05_appendix_expansions():
    rep = verify_appendix_expansions(seed=SEED, prime=PRIME, points=POINTS)
    by = {}
    for c in rep.checks:
        by.setdefault(c.check, []).append(c)
    display = by["appendix-display"]
    rotation = by["twist-B-rotation"][0]
    ok = all(c.verdict == PASS for c in display) and rotation.verdict == PASS \
        and rep.rho_b_rotation == ["B@sigma^4rho@S=1..8"] and _all_pass(rep)
    notes = "; ".join("%s: %s" % (c.inputs["expr"], c.detail) for c in display)
    record(5, ok, "displays equal their closed forms (%s); T*(B) rotation resolved to %s"
           % (notes, ",".join(rep.rho_b_rotation)))
    assert ok


def test_criterion_06_web_enumeration():
    t = time.perf_counter()
    rep = verify_web_enumeration(SEED, PRIME)
    dt = time.perf_counter() - t
    details = ["%s=%s" % (c.inputs.get("class", c.check), c.detail) for c in rep.checks]
    ok = _all_pass(rep) and dt < LIMIT_WEBS
    record(6, ok, "%s, %.1fs (< %gs)" % ("; ".join(details), dt, LIMIT_WEBS))
    assert ok


def test_criterion_07_lemma_catalogs():
    rep = verify_lemma_catalogs(SEED, PRIME)
    canc = [c for c in rep.checks if c.check == "catalog-cancellation"]
    sizes = [c.detail.split(" of ")[0] for c in rep.checks if c.check == "catalog-sizes"]
    ok = _all_pass(rep) and len(canc) == 4
    record(7, ok, "catalog %s; survivors %s" % (
        ", ".join("%s %s" % (k, s) for k, s in zip("ABCZ", sizes)),
        ", ".join(c.detail.split(":")[0].replace("survivor ", "") for c in canc)))
    assert ok


def test_criterion_08_mutation_class():
    from grasstwist.field import PrimeField, make_rng
    from grasstwist.quiver import explore
    from collections import Counter
    F = PrimeField(PRIME)
    t = time.perf_counter()
    r6 = explore(3, 6, F=F, rng=make_rng(SEED))
    kinds6 = {row["identification"].kind for row in r6["variables"]}
    r8 = explore(3, 8, F=F, rng=make_rng(SEED))
    dt = time.perf_counter() - t
    kinds8 = Counter(row["identification"].kind for row in r8["variables"]
                     if not row["frozen"] and row["identification"] is not None)
    ok6 = r6["total"] == 22 and {"X", "Y"} <= kinds6
    ok_count = r8["mutable"] == 128 and r8["unidentified"] == 0
    ok_non_pluecker = r8["non_pluecker"] == 56
    ok = ok6 and ok_count and ok_non_pluecker and dt < LIMIT_QUIVER
    record(8, ok, "Gr(3,6): %d variables (X,Y present: %s); Gr(3,8): %d mutable + %d frozen, "
           "%d seeds, %d non-Pluecker (expected 56; found %s), %.0fs (< %gs)"
           % (r6["total"], {"X", "Y"} <= kinds6, r8["mutable"], r8["frozen"], r8["seeds"],
              r8["non_pluecker"], ", ".join("%s %d" % kv for kv in sorted(kinds8.items()) if kv[0] != "Pluecker"),
              dt, LIMIT_QUIVER))
    assert ok6 and ok_count and dt < LIMIT_QUIVER
    # left failing on purpose: the class has 80 non-Pluecker variables, see README
    assert ok_non_pluecker, "non-Pluecker count %d != 56" % r8["non_pluecker"]


def test_criterion_09_property_suites():
    reps = []
    for k, n in ((2, 5), (3, 6), (3, 7)):
        reps.append(verify_dimer_properties(build_top_cell(k, n), SEED, PRIME, weightings=WEIGHTINGS))
    reps.append(verify_dimer_properties(load_graph("gr38_appendix"), SEED, PRIME, weightings=WEIGHTINGS))
    reps.append(verify_appendix_translation(seed=SEED, prime=PRIME))
    reps.append(verify_lam_law(build_top_cell(3, 6), SEED, PRIME))
    checks = [c for r in reps for c in r.checks]
    ok = all(c.verdict == PASS for c in checks)
    lam = reps[-1].checks[0]
    record(9, ok, "%d checks: boundary measurement x%d weightings on 4 graphs, translation on single "
           "and appendix triple dimers, Lam law (%s)" % (len(checks), WEIGHTINGS, lam.detail))
    assert ok


def test_criterion_10_kk_bijection():
    from grasstwist.web import kk_two_row, standard_two_row_tableaux
    listed = {
        ((4, 5, 6), (1, 2, 3)): {(3, 4), (2, 5), (1, 6)},
        ((2, 5, 6), (1, 3, 4)): {(1, 2), (4, 5), (3, 6)},
        ((3, 4, 6), (1, 2, 5)): {(2, 3), (1, 4), (5, 6)},
        ((3, 5, 6), (1, 2, 4)): {(2, 3), (4, 5), (1, 6)},
        ((2, 4, 6), (1, 3, 5)): {(1, 2), (3, 4), (5, 6)},
    }
    tabs = standard_two_row_tableaux(3)
    images = {t: set(kk_two_row(*t).pairs) for t in tabs}
    ok = set(tabs) == set(listed) and all(images[t] == listed[t] for t in tabs) \
        and len({frozenset(v) for v in images.values()}) == 5
    record(10, ok, "%d tableaux -> %d distinct matchings, all as listed" % (
        len(tabs), len({frozenset(v) for v in images.values()})))
    assert ok
