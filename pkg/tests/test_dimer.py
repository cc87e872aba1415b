from collections import Counter
from itertools import combinations

import pytest

from grasstwist.algebra import Evaluator, random_point
from grasstwist.dimer import (DimerModel, MultiDimer, boundary_measurement_check,
                              edge_weight_from_faces, enumerate_dimers, face_weight,
                              plucker_relations_hold, translate_check, twist_partition)
from grasstwist.expressions import twist_of_pluecker
from grasstwist.harness import double_dimer_partition, load_graph
from grasstwist.laurent import LaurentExpr
from grasstwist.plabic import build_top_cell
from grasstwist.web import matching_from_double_dimer


def permanent(A):
    """Ryser's formula; independent of the backtracking enumerator."""
    n = len(A)
    if n == 0:
        return 1
    total = 0
    for mask in range(1, 1 << n):
        cols = [j for j in range(n) if mask >> j & 1]
        prod = 1
        for row in A:
            prod *= sum(row[j] for j in cols)
        total += (-1) ** len(cols) * prod
    return (-1) ** n * total


def matching_count(G, J):
    keep = [v for v in G.colors if v not in G.boundary or G.boundary[v] in J]
    black = sorted(v for v in keep if G.colors[v] == "black")
    white = sorted(v for v in keep if G.colors[v] == "white")
    if len(black) != len(white):
        return 0
    idx = {w: i for i, w in enumerate(white)}
    A = [[0] * len(white) for _ in black]
    for i, b in enumerate(black):
        for e in G.rotation[b]:
            w = G.other_end(e, b)
            if w in idx:
                A[i][idx[w]] += 1
    return permanent(A)


EXAMPLE_346 = {
    "(167)(237)(267)^-1(367)^-1(456)(567)",
    "(167)(347)(367)^-1(456)(467)^-1(567)",
    "(167)(456)(457)(467)^-1",
    "(127)(267)^-1(456)(567)",
}


def test_example_346_on_figure_graph():
    G = load_graph("gr37")
    Ds = enumerate_dimers(G, (3, 4, 6))
    assert len(Ds) == 4
    assert {str(face_weight(G, D)) for D in Ds} == EXAMPLE_346
    assert Ds == sorted(Ds)


@pytest.mark.parametrize("graph", ["top36", "top37", "gr37", "gr38_appendix"])
def test_counts_match_permanent(graph):
    G = build_top_cell(3, int(graph[-1])) if graph.startswith("top") else load_graph(graph)
    dm = DimerModel(G)
    for J in combinations(range(1, G.n + 1), 3):
        assert len(dm.enumerate(J)) == matching_count(G, J), J


def test_unconstrained_is_union():
    G = build_top_cell(3, 6)
    dm = DimerModel(G)
    total = sum(len(dm.enumerate(J)) for J in combinations(range(1, 7), 3))
    assert total == len(dm.enumerate(None))


def test_infeasible_boundary_is_empty():
    G = build_top_cell(3, 6)
    assert enumerate_dimers(G, (1, 2)) == []
    assert enumerate_dimers(G, (1, 2, 3, 4)) == []


def test_dimer_validity():
    G = build_top_cell(3, 7)
    dm = DimerModel(G)
    for J in [(1, 3, 5), (2, 4, 7)]:
        for D in dm.enumerate(J):
            assert dm.is_valid(D)
            assert dm.boundary_of(D) == Counter(J)


def test_boundary_edges_have_weight_one():
    for G in (build_top_cell(3, 6), load_graph("gr37"), load_graph("gr38_appendix")):
        for e, (a, b) in G.edges.items():
            if a in G.boundary or b in G.boundary:
                assert edge_weight_from_faces(G, e) == LaurentExpr.constant(1)


def test_translate_check_exhaustive_gr36():
    G = build_top_cell(3, 6)
    for D in DimerModel(G).enumerate(None):
        assert translate_check(G, D)


def test_overlay_additivity_gr36():
    G = build_top_cell(3, 6)
    dm = DimerModel(G)
    singles = dm.enumerate(None)
    for D1 in singles[::3]:
        for D2 in singles[::5]:
            assert dm.face_weight(D1 + D2) == dm.face_weight(D1) * dm.face_weight(D2)
    D = singles[0]
    assert dm.face_weight(D + D + D) == dm.face_weight(D) ** 3


@pytest.mark.parametrize("n", [6, 7])
def test_twist_partition_matches_twist(F, rng, n):
    G = build_top_cell(3, n)
    pts = [Evaluator(random_point(3, n, F, rng)) for _ in range(3)]
    for J in combinations(range(1, n + 1), 3):
        Z = twist_partition(G, J)
        for ev in pts:
            v = Z.evaluate(ev.values, F)
            assert v == ev.twisted_delta(J)
            assert v == twist_of_pluecker(J, n).evaluate(ev.values, F)


def test_boundary_measurement(F, rng):
    G = build_top_cell(2, 5)
    for _ in range(20):
        assert boundary_measurement_check(G, F, rng)[0]
    G = build_top_cell(3, 6)
    ones = {e: F.one for e in G.edges}
    assert boundary_measurement_check(G, F, rng, weights=ones)[0]
    assert boundary_measurement_check(G, F, rng, zero_fraction=0.3)[0]


def test_plucker_relation_negative_control(F, rng):
    M = random_point(3, 6, F, rng)
    delta = dict(M.minors())
    assert plucker_relations_hold(delta, 3, 6, F)[0]
    delta[(1, 3, 5)] = F.add(delta[(1, 3, 5)], F.one)
    ok, witness = plucker_relations_hold(delta, 3, 6, F)
    assert not ok and witness is not None


def test_double_dimers_example(F, rng):
    G = load_graph("gr37")
    S = (1, 2, 3, 5, 6, 7)
    Z, count = double_dimer_partition(G, "X", S)
    assert count == 5
    pref = LaurentExpr.parse("(127)(234)")
    printed = [
        "(167)(237)(345)(467)(267)^-1(347)^-1",
        "(127)(234)(367)^2(457)(237)^-1(267)^-1(347)^-1",
        "(127)(345)(367)(467)(267)^-1(347)^-1",
        "(167)(234)(367)(457)(267)^-1(347)^-1",
        "(123)(367)(457)(237)^-1",
    ]
    assert Z == sum((pref * LaurentExpr.parse(t) for t in printed), LaurentExpr())
    dm = DimerModel(G)
    for D in dm.enumerate_multi(2, {s: 1 for s in S}):
        M = matching_from_double_dimer(G, D)
        if M.pairs == ((1, 7), (2, 3), (5, 6)):
            assert M.cycles == 0


def test_doubled_only_double_dimer():
    G = build_top_cell(3, 6)
    D = DimerModel(G).enumerate((1, 3, 5))[0]
    M = matching_from_double_dimer(G, D + D)
    assert M.pairs == () and M.cycles == 0 and M.multiplicity == 1


def test_multidimer_serialize():
    D = MultiDimer.from_edges([3, 1, 3, 3, 2], 3)
    assert D.serialize() == "1 2 3x3"
    assert D.edge_list() == [1, 2, 3, 3, 3]
