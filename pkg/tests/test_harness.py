import copy

import pytest

from grasstwist import harness
from grasstwist.dimer import DimerModel
from grasstwist.harness import (FAIL, PASS, SKIPPED, Check, VerificationReport,
                                cubic_contributions, load_graph, run_suite, verify_appendix_expansions,
                                verify_cubic, verify_thm_3_2, verify_thm_4_1, verify_twist_table_gr37)
from grasstwist.expressions import ClusterExpression
from grasstwist.plabic import build_top_cell


def test_report_formats_are_stable():
    rep = VerificationReport(7, 101)
    rep.add(Check("x", {"b": 2, "a": 1}, PASS, detail="d", seconds=1.5))
    rep.add(Check("y", {}, FAIL, witness=(1, 2)))
    text = rep.to_text()
    assert text.startswith("# grasstwist-report/1\nseed: 7\nprime: 101\n")
    assert "  a: 1\n  b: 2\n" in text
    assert "seconds" not in text and "seconds: 1.500" in rep.to_text(timings=True)
    assert rep.to_csv().splitlines()[1] == "x,a=1;b=2,PASS,,d"
    assert not rep.passed and len(rep.failures()) == 1


def test_thm_3_2_fails_on_corrupted_weight(monkeypatch):
    orig = DimerModel.face_exponents

    def bad(self, D):
        e = dict(orig(self, D))
        e[(1, 2, 3)] = e.get((1, 2, 3), 0) + 1
        return e
    monkeypatch.setattr(DimerModel, "face_exponents", bad)
    rep = verify_thm_3_2(3, 6, seed=1)
    c = rep.checks[0]
    assert c.verdict == FAIL and c.witness.startswith("J=")


def test_thm_4_1_example():
    rep = verify_thm_4_1(7, (1, 2, 3, 5, 6, 7), graph=load_graph("gr37"), seed=3)
    assert rep.passed
    assert rep.checks[0].detail == "5 double dimers"


def test_twist_table_fails_on_corrupted_row(monkeypatch):
    real = harness.load_fixture

    def fake(name):
        d = copy.deepcopy(real(name))
        if name == "table_gr37.json":
            d["rows"][0]["twist"] = "(235)(356)"
        return d
    monkeypatch.setattr(harness, "load_fixture", fake)
    rep = verify_twist_table_gr37(seed=1)
    assert rep.checks[0].verdict == FAIL
    assert "->" in rep.checks[0].witness[0]


def test_appendix_fails_on_corrupted_display(monkeypatch):
    real = harness.load_fixture

    def fake(name):
        d = copy.deepcopy(real(name))
        if name == "appendix.json":
            d["sigma2_A"]["display_terms"]["verbatim"][0] += "(123)"
            d["sigma2_A"]["display_terms"]["reconciled"].pop("1", None)
        return d
    monkeypatch.setattr(harness, "load_fixture", fake)
    rep = verify_appendix_expansions(seed=1)
    disp = [c for c in rep.checks if c.check == "appendix-display"]
    assert disp[0].verdict == FAIL


def test_appendix_skips_table_on_other_graph():
    rep = verify_appendix_expansions(graph=build_top_cell(3, 8), seed=1)
    skipped = [c for c in rep.checks if c.check == "appendix-table-dimers"]
    assert skipped and all(c.verdict == SKIPPED for c in skipped)
    assert rep.passed


def test_appendix_resolves_rotation():
    rep = verify_appendix_expansions(seed=2)
    assert rep.passed
    assert rep.rho_b_rotation == ["B@sigma^4rho@S=1..8"]


def test_cubic_fails_with_wrong_target_web(monkeypatch):
    # pretend A's web is the octopus
    monkeypatch.setitem(harness.NAMED_WEBS, "A", "octopus")
    rep = verify_cubic("A", 0, False, graph=build_top_cell(3, 8), seed=1)
    assert rep.checks[0].verdict == FAIL


def test_sigma2_a_contributions():
    G = load_graph("gr38_appendix")
    rows, info = cubic_contributions(G, ClusterExpression("A", 2))
    assert len(rows) == 10
    assert sorted(c for _, c, _ in rows) == [1] * 9 + [2]
    assert info["overlay_subset"] and not info["not_in_overlay"]


def test_run_suite_is_deterministic():
    a = run_suite("table1", seed=11).to_text()
    b = run_suite("table1", seed=11).to_text()
    assert a == b
    assert "seed: 11" in a


def test_rational_backend():
    rep = run_suite("appendix", seed=5, backend="rational")
    assert rep.passed
    with pytest.raises(ValueError):
        run_suite("table1", backend="complex")
