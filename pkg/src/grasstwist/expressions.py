"""
Named cluster expressions in Pluecker coordinates.

Each expression is a polynomial in the Pluecker coordinates of n' columns:

    Pluecker (n'=3):  (123)
    X (n'=6):         (134)(256) - (156)(234)
    Y (n'=6):         (145)(236) - (123)(456)
    A (n'=8):         (134)(258)(167) - (134)(678)(125) - (158)(234)(167)
    B (n'=8):         (258)(134)(267) - (234)(128)(567) - (234)(258)(167)
    C (n'=9):         (124)(357)(689) + (123)(456)(789)
                      - (124)(356)(789) - (123)(457)(689)
    Z (n'=9):         (145)(278)(369) - (245)(178)(369)
                      - (123)(456)(789) - (129)(345)(678)

The dihedral group acts on the n' base labels by sigma: i -> i+1 and
rho: i -> n'+1-i; an element is stored as (rotation r, reflected f) and acts
as sigma^r rho^f.  Relabeled indices are re-sorted WITHOUT a sign, which is
the convention under which e.g. rho(A) = sigma^7(A) holds and sigma^3 rho(B)
is the bracket displayed with the B-type appendix expansion.

A projection onto a support S = (s_1 < ... < s_n') then sends base label i
to s_i, giving e.g. X^{124578}.
"""

import re
from functools import lru_cache
from itertools import combinations

from .algebra import Evaluator, random_point
from .errors import ArityMismatch
from .field import PrimeField, make_rng

BASE = {
    "Pluecker": (3, (
        (1, ((1, 2, 3),)),
    )),
    "X": (6, (
        (1, ((1, 3, 4), (2, 5, 6))),
        (-1, ((1, 5, 6), (2, 3, 4))),
    )),
    "Y": (6, (
        (1, ((1, 4, 5), (2, 3, 6))),
        (-1, ((1, 2, 3), (4, 5, 6))),
    )),
    "A": (8, (
        (1, ((1, 3, 4), (2, 5, 8), (1, 6, 7))),
        (-1, ((1, 3, 4), (6, 7, 8), (1, 2, 5))),
        (-1, ((1, 5, 8), (2, 3, 4), (1, 6, 7))),
    )),
    "B": (8, (
        (1, ((2, 5, 8), (1, 3, 4), (2, 6, 7))),
        (-1, ((2, 3, 4), (1, 2, 8), (5, 6, 7))),
        (-1, ((2, 3, 4), (2, 5, 8), (1, 6, 7))),
    )),
    "C": (9, (
        (1, ((1, 2, 4), (3, 5, 7), (6, 8, 9))),
        (1, ((1, 2, 3), (4, 5, 6), (7, 8, 9))),
        (-1, ((1, 2, 4), (3, 5, 6), (7, 8, 9))),
        (-1, ((1, 2, 3), (4, 5, 7), (6, 8, 9))),
    )),
    "Z": (9, (
        (1, ((1, 4, 5), (2, 7, 8), (3, 6, 9))),
        (-1, ((2, 4, 5), (1, 7, 8), (3, 6, 9))),
        (-1, ((1, 2, 3), (4, 5, 6), (7, 8, 9))),
        (-1, ((1, 2, 9), (3, 4, 5), (6, 7, 8))),
    )),
}

# The other two displayed forms of X and Y; used only as cross-checks.
ALTERNATE_FORMS = {
    "X": (
        ((1, ((1, 2, 4), (3, 5, 6))), (-1, ((1, 2, 3), (4, 5, 6)))),
        ((1, ((1, 2, 5), (3, 4, 6))), (-1, ((1, 2, 6), (3, 4, 5)))),
    ),
    "Y": (
        ((1, ((1, 4, 6), (2, 3, 5))), (-1, ((1, 5, 6), (2, 3, 4)))),
        ((1, ((1, 3, 6), (2, 4, 5))), (-1, ((1, 2, 6), (3, 4, 5)))),
    ),
}

KINDS = tuple(BASE)
DEGREE = {"Pluecker": 1, "X": 2, "Y": 2, "A": 3, "B": 3, "C": 3, "Z": 3}


def base_size(kind):
    return BASE[kind][0]


def dihedral_map(i, npr, rotation, reflected):
    """Image of base label i under sigma^rotation rho^reflected (1-based)."""
    if reflected:
        i = npr + 1 - i
    return (i - 1 + rotation) % npr + 1


def _format_support(S):
    S = tuple(S)
    if S == tuple(range(S[0], S[0] + len(S))):
        return "%d..%d" % (S[0], S[-1])
    return ",".join(str(s) for s in S)


def _parse_support(text):
    text = text.strip()
    if ".." in text:
        a, b = text.split("..")
        return tuple(range(int(a), int(b) + 1))
    if "," in text:
        return tuple(int(t) for t in text.split(","))
    return tuple(int(ch) for ch in text)


def _label_string(J):
    if all(j < 10 for j in J):
        return "".join(str(j) for j in J)
    return ",".join(str(j) for j in J)


class ClusterExpression:
    """
    kind in {Pluecker, X, Y, A, B, C, Z}, a dihedral element
    (rotation, reflected), and a support S of size n'.
    """

    __slots__ = ("kind", "rotation", "reflected", "support")

    def __init__(self, kind, rotation=0, reflected=False, support=None):
        if kind not in BASE:
            raise ValueError("unknown expression kind %r" % kind)
        npr = base_size(kind)
        if support is None:
            support = tuple(range(1, npr + 1))
        support = tuple(sorted(int(s) for s in support))
        if len(support) != npr or len(set(support)) != npr:
            raise ArityMismatch("%s needs a support of size %d, got %r"
                                % (kind, npr, support))
        if support[0] < 1:
            raise ArityMismatch("support entries must be positive")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "rotation", int(rotation) % npr)
        object.__setattr__(self, "reflected", bool(reflected))
        object.__setattr__(self, "support", support)

    def __setattr__(self, name, value):
        raise AttributeError("ClusterExpression is immutable")

    def key(self):
        return (self.kind, self.rotation, self.reflected, self.support)

    def __eq__(self, other):
        return isinstance(other, ClusterExpression) and self.key() == other.key()

    def __lt__(self, other):
        return self.key() < other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "ClusterExpression(%r)" % str(self)

    @property
    def npr(self):
        return base_size(self.kind)

    @property
    def degree(self):
        return DEGREE[self.kind]

    # -- group action ---------------------------------------------------
    def sigma(self, power=1):
        """Left-multiply by sigma^power."""
        return ClusterExpression(self.kind, self.rotation + power,
                                 self.reflected, self.support)

    def rho(self):
        """Left-multiply by rho: rho sigma^r rho^f = sigma^{-r} rho^{f+1}."""
        return ClusterExpression(self.kind, -self.rotation,
                                 not self.reflected, self.support)

    def on(self, support):
        return ClusterExpression(self.kind, self.rotation, self.reflected, support)

    def label_map(self, i):
        """Where base label i ends up in [n]."""
        j = dihedral_map(i, self.npr, self.rotation, self.reflected)
        return self.support[j - 1]

    def terms(self):
        """
        The defining polynomial as a tuple of (coefficient, (J1, J2, ...)),
        each J a sorted tuple of labels in [n].
        """
        out = []
        for coef, factors in BASE[self.kind][1]:
            out.append((coef, tuple(
                tuple(sorted(self.label_map(i) for i in J)) for J in factors)))
        return tuple(out)

    def alternate_terms(self):
        """The other displayed forms (X and Y only), relabeled likewise."""
        forms = []
        for form in ALTERNATE_FORMS.get(self.kind, ()):
            out = []
            for coef, factors in form:
                out.append((coef, tuple(
                    tuple(sorted(self.label_map(i) for i in J)) for J in factors)))
            forms.append(tuple(out))
        return forms

    # -- text -----------------------------------------------------------
    def dihedral_string(self):
        if self.rotation == 0 and not self.reflected:
            return "id"
        s = "sigma^%d" % self.rotation if self.rotation else ""
        return s + ("rho" if self.reflected else "")

    def __str__(self):
        if self.kind == "Pluecker":
            return "(%s)" % _label_string(self.terms()[0][1][0])
        return "%s@%s@S=%s" % (self.kind, self.dihedral_string(),
                               _format_support(self.support))

    @classmethod
    def parse(cls, text):
        """
        Accepts "(134)", "Delta134", "X^{124578}", "Y^{1,2,3,4,5,10}" and
        the canonical "A@sigma^2rho@S=1..8" form.
        """
        text = text.strip().replace("Δ", "Delta")
        m = re.fullmatch(r"\((\d+(?:,\d+)*)\)|Delta_?\{?(\d+(?:,\d+)*)\}?", text)
        if m:
            raw = m.group(1) or m.group(2)
            J = _parse_support(raw)
            return pluecker_expr(J)
        m = re.fullmatch(r"([XYABCZ])\^\{?([\d,\.]+)\}?", text)
        if m:
            return cls(m.group(1), 0, False, _parse_support(m.group(2)))
        m = re.fullmatch(r"([A-Za-z]+)@([a-z0-9\^]+)@S=([\d,\.]+)", text)
        if not m:
            raise ValueError("cannot parse expression %r" % text)
        kind, dih, sup = m.groups()
        rotation, reflected = 0, False
        if dih != "id":
            dm = re.fullmatch(r"(?:sigma(?:\^(\d+))?)?(rho)?", dih)
            if not dm or not dih:
                raise ValueError("bad dihedral element %r" % dih)
            if dih.startswith("sigma"):
                rotation = int(dm.group(1)) if dm.group(1) else 1
            reflected = dm.group(2) is not None
        return cls(kind, rotation, reflected, _parse_support(sup))


def pluecker_expr(J):
    """Delta_J as a (support-only) ClusterExpression."""
    return ClusterExpression("Pluecker", 0, False, J)


def X(S):
    return ClusterExpression("X", 0, False, S)


def Y(S):
    return ClusterExpression("Y", 0, False, S)


def eval_terms(terms, values, F):
    """Evaluate ((coef, (J, ...)), ...) at a Pluecker-value dict."""
    total = F.zero
    for coef, factors in terms:
        v = F(coef)
        for J in factors:
            v = F.mul(v, values[J])
        total = F.add(total, v)
    return total


def _values_of(M):
    if isinstance(M, Evaluator):
        return M.values, M.F, M.M.n
    if isinstance(M, dict):
        raise TypeError("pass a GrassmannPoint or Evaluator")
    return M.minors(), M.F, M.n


def eval_expression(E, M):
    """Evaluate the expression at a GrassmannPoint (or Evaluator)."""
    values, F, n = _values_of(M)
    if E.support[-1] > n:
        raise ArityMismatch("support %r does not fit in [%d]" % (E.support, n))
    return eval_terms(E.terms(), values, F)


def eval_twisted(E, ev):
    """T*(E) evaluated at ev.M, i.e. E evaluated at the twisted point."""
    if E.support[-1] > ev.M.n:
        raise ArityMismatch("support %r does not fit in [%d]" % (E.support, ev.M.n))
    return eval_terms(E.terms(), ev.twisted, ev.F)


def verify_c_identity(M, c_terms=None):
    """
    The rearrangement
        (124)(357)(689) = (124)(356)(789) + (123)((457)(689) - (456)(789)) + C
    at M (n = 9).  `c_terms` replaces the defining terms of C; it exists so
    that a deliberately wrong C can be shown to fail.
    """
    values, F, n = _values_of(M)
    if n != 9:
        raise ArityMismatch("the C identity lives on Gr(3,9), got n=%d" % n)
    d = values
    C = eval_terms(c_terms if c_terms is not None else BASE["C"][1], d, F)
    lhs = F.mul(F.mul(d[(1, 2, 4)], d[(3, 5, 7)]), d[(6, 8, 9)])
    inner = F.sub(F.mul(d[(4, 5, 7)], d[(6, 8, 9)]), F.mul(d[(4, 5, 6)], d[(7, 8, 9)]))
    rhs = F.add(F.add(F.mul(F.mul(d[(1, 2, 4)], d[(3, 5, 6)]), d[(7, 8, 9)]),
                      F.mul(d[(1, 2, 3)], inner)), C)
    return lhs == rhs


# ---------------------------------------------------------------------------
# Products of expressions, the shape of every twist formula in the tables.

class Product:
    """An integer times a product of ClusterExpressions."""

    def __init__(self, factors, coef=1):
        self.factors = tuple(factors)
        self.coef = coef

    def __repr__(self):
        return "Product(%r)" % str(self)

    def __str__(self):
        parts = []
        for f in self.factors:
            if f.kind == "Pluecker":
                parts.append(str(f))
            elif f.rotation == 0 and not f.reflected:
                parts.append("%s^{%s}" % (f.kind, _label_string(f.support)))
            else:
                parts.append("[%s]" % f)
        body = "".join(parts) if parts else "1"
        return body if self.coef == 1 else "%d*%s" % (self.coef, body)

    def evaluate(self, values, F):
        v = F(self.coef)
        for f in self.factors:
            v = F.mul(v, eval_terms(f.terms(), values, F))
        return v

    @classmethod
    def parse(cls, text):
        """Parse e.g. "(127)(567)Y^{123456}" or "(178)(456)(234)[B@sigma^4rho@S=1..8]"."""
        text = text.replace("Δ", "").replace("*", "").replace("·", "").strip()
        coef = 1
        m = re.match(r"^(-?\d+)(?=[\(\[XYABCZ])", text)
        if m:
            coef = int(m.group(1))
            text = text[m.end():]
        tokens = re.findall(
            r"\(\d+(?:,\d+)*\)|\[[^\]]+\]|[XYABCZ]\^\{[\d,]+\}|[XYABCZ]\^\d+|\S",
            text)
        factors = []
        for t in tokens:
            if t.startswith("["):
                factors.append(ClusterExpression.parse(t[1:-1]))
            elif t.startswith("(") or t[0] in "XYABCZ":
                factors.append(ClusterExpression.parse(t))
            else:
                raise ValueError("cannot parse product %r near %r" % (text, t))
        return cls(factors, coef)


# ---------------------------------------------------------------------------
# Dihedral orbits.

@lru_cache(maxsize=None)
def _stabilizer_classes(kind, prime=(1 << 61) - 1, points=3, seed=9173):
    """
    Partition the 2n' dihedral elements into classes that give the same
    function on Gr(3, n'), detected by evaluation at random points.
    """
    npr = base_size(kind)
    F = PrimeField(prime)
    rng = make_rng(seed)
    pts = [random_point(3, npr, F, rng) for _ in range(points)]
    classes = {}
    for reflected in (False, True):
        for r in range(npr):
            E = ClusterExpression(kind, r, reflected)
            sig = tuple(eval_expression(E, M) for M in pts)
            classes.setdefault(sig, []).append((r, reflected))
    return tuple(tuple(sorted(c)) for c in classes.values())


def canonical(E):
    """
    The lexicographically least (kind, rotation, reflected, support) among
    dihedral translates of E that agree with it as functions.
    """
    for cls_ in _stabilizer_classes(E.kind):
        if (E.rotation, E.reflected) in cls_:
            r, f = min(cls_, key=lambda x: (x[0], x[1]))
            return ClusterExpression(E.kind, r, f, E.support)
    raise AssertionError("dihedral element not found")


def orbit(kind, support=None):
    """Canonical representatives of the dihedral orbit of `kind`."""
    out = set()
    for reflected in (False, True):
        for r in range(base_size(kind)):
            out.add(canonical(ClusterExpression(kind, r, reflected, support)))
    return sorted(out)


def orbit_size(kind):
    return len(orbit(kind))


# ---------------------------------------------------------------------------
# Closed-form twists of Pluecker coordinates for k = 3.

def _cyc(i, n):
    return (i - 1) % n + 1


def twist_of_pluecker(J, n):
    """
    Closed form of T*(Delta_J) in Gr(3, n):
      frozen {a,a+1,a+2}         -> (a+1,a+2,a+3)(a+2,a+3,a+4)
      one adjacent pair {a,a+1,b} -> (a+1,a+2,a+3)(a+2,b+1,b+2)
      pairwise non-adjacent a,b,c -> X^{a+1,a+2,b+1,b+2,c+1,c+2}, or Y on the
                                     same support when one of a,b,c is n-1.
    """
    J = tuple(sorted(J))
    if len(J) != 3:
        raise ArityMismatch("closed-form twists are for k = 3")
    s = set(J)
    adjacent = [a for a in J if _cyc(a + 1, n) in s]
    P = lambda *idx: pluecker_expr(tuple(_cyc(i, n) for i in idx))
    if len(adjacent) >= 2:
        # frozen: find a with a, a+1, a+2 all present
        for a in J:
            if _cyc(a + 1, n) in s and _cyc(a + 2, n) in s:
                return Product([P(a + 1, a + 2, a + 3), P(a + 2, a + 3, a + 4)])
        raise AssertionError("unreachable")
    if len(adjacent) == 1:
        a = adjacent[0]
        (b,) = s - {a, _cyc(a + 1, n)}
        return Product([P(a + 1, a + 2, a + 3), P(a + 2, b + 1, b + 2)])
    a, b, c = J
    S = [_cyc(x, n) for x in (a + 1, a + 2, b + 1, b + 2, c + 1, c + 2)]
    kind = "Y" if (n - 1) in s else "X"
    return Product([ClusterExpression(kind, 0, False, S)])


def all_subsets(n, k=3):
    return list(combinations(range(1, n + 1), k))
