from fractions import Fraction
from itertools import combinations

import pytest

from grasstwist.algebra import (Evaluator, GrassmannPoint, cross, det, dot, frozen_indices,
                                pluecker, random_point, right_twist)
from grasstwist.errors import ArityMismatch, InvalidIndex
from grasstwist.expressions import (ClusterExpression, eval_expression, orbit_size,
                                    twist_of_pluecker, verify_c_identity, BASE)
from grasstwist.field import RationalField


def _sympy_det(rows, p):
    import sympy
    return int(sympy.Matrix(rows).det()) % p


def test_det_matches_sympy(F, rng):
    for m in (1, 2, 3, 4, 5):
        rows = [[rng.randrange(-9, 10) for _ in range(m)] for _ in range(m)]
        assert det(F, [[F(x) for x in r] for r in rows]) == _sympy_det(rows, F.p)


def test_gr24_example(F, rng):
    a, b, c, d = (F.random(rng) for _ in range(4))
    M = GrassmannPoint.from_rows(F, [[1, 0, a, b], [0, 1, c, d]])
    assert pluecker(M, (1, 3)) == c
    assert pluecker(M, (3, 4)) == F.sub(F.mul(a, d), F.mul(b, c))
    D = M.minors()
    assert F.mul(D[(2, 4)], D[(1, 3)]) == F.add(F.mul(D[(1, 2)], D[(3, 4)]),
                                              F.mul(D[(2, 3)], D[(1, 4)]))


def test_identity_block_minor(F):
    M = GrassmannPoint.from_rows(F, [[1, 0, 0, 5, 7], [0, 1, 0, 2, 3], [0, 0, 1, 1, 4]])
    assert pluecker(M, (1, 2, 3)) == 1


def test_three_term_relation_gr38(F, rng):
    D = random_point(3, 8, F, rng).minors()
    lhs = F.sub(F.mul(D[(1, 2, 4)], D[(2, 3, 8)]), F.mul(D[(2, 3, 4)], D[(1, 2, 8)]))
    assert lhs == F.mul(D[(1, 2, 3)], D[(2, 4, 8)])


def test_pluecker_alternating(F, rng):
    M = random_point(3, 6, F, rng)
    assert pluecker(M, (2, 1, 5)) == F.neg(pluecker(M, (1, 2, 5)))
    assert pluecker(M, (5, 1, 2)) == pluecker(M, (1, 2, 5))


def test_pluecker_errors(F, rng):
    M = random_point(3, 6, F, rng)
    with pytest.raises(InvalidIndex):
        pluecker(M, (1, 1, 2))
    with pytest.raises(InvalidIndex):
        pluecker(M, (1, 2, 7))
    with pytest.raises(ArityMismatch):
        pluecker(M, (1, 2))


def test_cross_product(F, rng):
    e1, e2, e3 = (1, 0, 0), (0, 1, 0), (0, 0, 1)
    assert list(cross(F, [e1, e2])) == [0, 0, 1]
    for _ in range(50):
        u, v, w = ([F.random(rng) for _ in range(3)] for _ in range(3))
        assert dot(F, u, cross(F, [v, w])) == det(F, [u, v, w])
        assert dot(F, u, cross(F, [v, w])) == dot(F, cross(F, [u, v]), w)
    for _ in range(20):
        u, v, w, z = ([F.random(rng) for _ in range(3)] for _ in range(4))
        lhs = dot(F, cross(F, [u, v]), cross(F, [w, z]))
        rhs = det(F, [[dot(F, u, w), dot(F, u, z)], [dot(F, v, w), dot(F, v, z)]])
        assert lhs == rhs


def test_cross_arity(F):
    with pytest.raises(ArityMismatch):
        cross(F, [(1, 0, 0)])
    with pytest.raises(ArityMismatch):
        cross(F, [(1, 0), (0, 1)], 3)


def test_cross_general_k(F, rng):
    # v . w = det(v1 .. v_{k-1} w) in k = 4
    vs = [[F.random(rng) for _ in range(4)] for _ in range(3)]
    w = [F.random(rng) for _ in range(4)]
    assert dot(F, cross(F, vs), w) == det(F, vs + [w])


def test_right_twist_frozen(F, rng):
    M = random_point(3, 7, F, rng)
    ev = Evaluator(M)
    for a in range(1, 8):
        c = lambda i: (i - 1) % 7 + 1
        lhs = ev.twisted_delta((a, c(a + 1), c(a + 2)))
        rhs = F.mul(ev.delta((c(a + 1), c(a + 2), c(a + 3))), ev.delta((c(a + 2), c(a + 3), c(a + 4))))
        assert lhs == rhs


def test_right_twist_346(F, rng):
    ev = Evaluator(random_point(3, 7, F, rng))
    assert ev.twisted_delta((3, 4, 6)) == F.mul(ev.delta((4, 5, 6)), ev.delta((1, 5, 7)))


@pytest.mark.parametrize("n", [6, 7, 8, 9])
def test_twist_closed_forms(F, rng, n):
    ev = Evaluator(random_point(3, n, F, rng))
    for J in combinations(range(1, n + 1), 3):
        assert ev.twisted_delta(J) == twist_of_pluecker(J, n).evaluate(ev.values, F), J


def test_twist_doubles_degree(F, rng):
    M = random_point(3, 7, F, rng)
    lam = F(7)
    a = right_twist(M).minors()
    b = right_twist(M.scaled(lam)).minors()
    for J in a:
        assert b[J] == F.mul(F.pow(lam, 6), a[J])


def test_twist_rational_backend():
    Q = RationalField()
    import random
    M = random_point(3, 6, Q, random.Random(3))
    ev = Evaluator(M)
    assert isinstance(ev.twisted_delta((1, 3, 5)), Fraction)
    assert ev.twisted_delta((1, 3, 5)) == twist_of_pluecker((1, 3, 5), 6).evaluate(ev.values, Q)


def test_x_and_y_forms_agree(F, rng):
    for _ in range(20):
        M = random_point(3, 6, F, rng)
        for kind in ("X", "Y"):
            E = ClusterExpression(kind)
            v = eval_expression(E, M)
            from grasstwist.expressions import eval_terms
            for form in E.alternate_terms():
                assert eval_terms(form, M.minors(), F) == v


def test_stabilizers_and_orbits(F, rng):
    M8, M9 = random_point(3, 8, F, rng), random_point(3, 9, F, rng)
    A = ClusterExpression("A")
    assert eval_expression(A.rho(), M8) == eval_expression(A.sigma(7), M8)
    Z = ClusterExpression("Z")
    assert eval_expression(Z.sigma(3), M9) == eval_expression(Z, M9)
    C = ClusterExpression("C")
    assert eval_expression(C.rho(), M9) == eval_expression(C, M9)
    assert {k: orbit_size(k) for k in "ABCZ"} == {"A": 8, "B": 16, "C": 9, "Z": 3}


def test_expression_text_roundtrip():
    for text in ("A@sigma^2@S=1..8", "B@sigma^3rho@S=1..8", "X@id@S=1,2,3,5,6,7", "(134)"):
        assert str(ClusterExpression.parse(text)) == text
    assert ClusterExpression.parse("X^{124578}").support == (1, 2, 4, 5, 7, 8)


def test_support_errors(F, rng):
    with pytest.raises(ArityMismatch):
        ClusterExpression("A", 0, False, (1, 2, 3))
    with pytest.raises(ArityMismatch):
        eval_expression(ClusterExpression("X", 0, False, (1, 2, 3, 4, 5, 8)), random_point(3, 7, F, rng))


def test_c_identity(F, rng):
    for _ in range(20):
        assert verify_c_identity(random_point(3, 9, F, rng))
    bad = list(BASE["C"][1])
    bad[-1] = (-bad[-1][0], bad[-1][1])
    assert not verify_c_identity(random_point(3, 9, F, rng), bad)


def test_c_identity_degenerate_rational():
    import random
    Q = RationalField()
    r = random.Random(5)
    cols = [[1, 0, 0], [0, 1, 0], [1, 1, 0]] + [[Q.random(r) for _ in range(3)] for _ in range(6)]
    M = GrassmannPoint(Q, cols)
    assert pluecker(M, (1, 2, 3)) == 0
    assert verify_c_identity(M)


def test_frozen_indices():
    assert frozen_indices(3, 6) == [(1, 2, 3), (2, 3, 4), (3, 4, 5), (4, 5, 6), (1, 5, 6), (1, 2, 6)]
