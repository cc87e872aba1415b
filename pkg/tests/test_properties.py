"""Randomised property tests (hypothesis)."""

from itertools import combinations

from hypothesis import given, settings, strategies as st

from grasstwist.algebra import pluecker, random_point
from grasstwist.expressions import ClusterExpression, canonical, eval_expression
from grasstwist.field import PrimeField, make_rng
from grasstwist.laurent import LaurentExpr
from grasstwist.plabic import build_top_cell, square_faces, square_move
from grasstwist.quiver import quiver_from_plabic, rectangles_seed
from grasstwist.web import enumerate_nonelliptic

F = PrimeField((1 << 61) - 1)
LABELS = list(combinations(range(1, 8), 3))

monomials = st.dictionaries(st.sampled_from(LABELS), st.integers(-3, 3), max_size=4)
laurents = st.lists(st.tuples(monomials, st.integers(-5, 5)), max_size=5).map(
    lambda ts: sum((LaurentExpr.monomial(m, c) for m, c in ts), LaurentExpr()))


@given(laurents)
def test_laurent_text_roundtrip(e):
    assert LaurentExpr.parse(str(e)) == e
    assert str(LaurentExpr.parse(str(e))) == str(e)


@given(laurents, laurents, laurents, st.integers(0, 10 ** 6))
@settings(max_examples=50)
def test_laurent_ring_laws_and_evaluation(a, b, c, seed):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    D = random_point(3, 7, F, make_rng(seed)).minors()
    assert (a * b).evaluate(D, F) == F.mul(a.evaluate(D, F), b.evaluate(D, F))
    assert (a + b).evaluate(D, F) == F.add(a.evaluate(D, F), b.evaluate(D, F))


@given(st.permutations([1, 2, 3]), st.sampled_from(LABELS), st.integers(0, 10 ** 6))
@settings(max_examples=30)
def test_pluecker_alternating(perm, J, seed):
    M = random_point(3, 7, F, make_rng(seed))
    K = tuple(J[p - 1] for p in perm)
    inversions = sum(1 for i in range(3) for j in range(i + 1, 3) if perm[i] > perm[j])
    want = pluecker(M, J) if inversions % 2 == 0 else F.neg(pluecker(M, J))
    assert pluecker(M, K) == want


@given(st.sampled_from("XYABCZ"), st.integers(0, 8), st.booleans(), st.integers(0, 10 ** 6))
@settings(max_examples=40, deadline=None)
def test_canonical_form_is_same_function(kind, r, f, seed):
    E = ClusterExpression(kind, r, f)
    M = random_point(3, E.npr, F, make_rng(seed))
    assert eval_expression(canonical(E), M) == eval_expression(E, M)
    assert canonical(canonical(E)) == canonical(E)


@given(st.lists(st.integers(0, 50), min_size=1, max_size=6))
@settings(max_examples=25, deadline=None)
def test_square_move_sequences(choices):
    G = build_top_cell(3, 7)
    perm = G.trip_permutation()
    for c in choices:
        sq = square_faces(G)
        G = square_move(G, sq[c % len(sq)])
        assert G.trip_permutation() == perm
        assert len(set(G.face_labels.values())) == 13
        Q = quiver_from_plabic(G)
        assert len(Q.mutable()) == 6


@given(st.lists(st.integers(0, 50), min_size=1, max_size=8), st.integers(0, 10 ** 6))
@settings(max_examples=25, deadline=None)
def test_mutation_sequences_are_reversible(path, seed):
    s = rectangles_seed(3, 7, points=1, F=F, rng=make_rng(seed))
    t = s
    used = []
    for c in path:
        m = t.quiver.mutable()
        r = m[c % len(m)]
        used.append(r)
        t = t.mutate(r)
    for r in reversed(used):
        t = t.mutate(r)
    assert t.values == s.values and t.quiver.b == s.quiver.b


@given(st.text(alphabet="BW", min_size=3, max_size=7), st.integers(0, 20), st.booleans())
@settings(max_examples=30, deadline=None)
def test_web_dihedral_action_preserves_canonical_set(bc, r, f):
    webs = enumerate_nonelliptic(bc)
    moved = {W.dihedral(r, f) for W in webs}
    if not webs:
        return
    target = next(iter(moved)).bcolors
    assert moved == set(enumerate_nonelliptic("".join(target)))
