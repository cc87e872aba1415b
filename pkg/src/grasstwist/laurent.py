"""
Sparse Laurent polynomials in Pluecker indeterminates.

A term is a monomial -- a sorted tuple of (index, exponent) pairs with
nonzero exponents -- mapped to a nonzero integer coefficient.  Text form:

    2·(123)^2(456)^-1 - (134)(256) + 3

with indeterminates and terms in lexicographic order, so equal expressions
serialize identically.
"""

import re

from .errors import NotAMonomial, PoleAtPoint, UnboundSymbol


def _label(J):
    if all(j < 10 for j in J):
        return "".join(str(j) for j in J)
    return ",".join(str(j) for j in J)


def _mono_mul(a, b):
    d = dict(a)
    for J, e in b:
        d[J] = d.get(J, 0) + e
    return tuple(sorted((J, e) for J, e in d.items() if e))


def _mono_inv(a):
    return tuple((J, -e) for J, e in a)


class LaurentExpr:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for mono, c in (terms or {}).items():
            mono = tuple(sorted((tuple(J), int(e)) for J, e in mono if e))
            clean[mono] = clean.get(mono, 0) + int(c)
        self.terms = {m: c for m, c in clean.items() if c}

    # -- constructors -----------------------------------------------------
    @classmethod
    def constant(cls, c):
        return cls({(): c})

    @classmethod
    def var(cls, J, e=1):
        return cls({((tuple(sorted(J)), e),): 1})

    @classmethod
    def monomial(cls, exponents, coef=1):
        """exponents: dict index -> exponent."""
        return cls({tuple((tuple(sorted(J)), e) for J, e in exponents.items()): coef})

    # -- basic protocol ---------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentExpr.constant(other)
        return isinstance(other, LaurentExpr) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return "LaurentExpr(%r)" % str(self)

    def __bool__(self):
        return bool(self.terms)

    def is_monomial(self):
        return len(self.terms) == 1

    def single_term(self):
        if len(self.terms) != 1:
            raise NotAMonomial("expression has %d terms" % len(self.terms))
        (m, c), = self.terms.items()
        return m, c

    def exponents(self):
        """Exponent dict of a single-term expression."""
        m, _ = self.single_term()
        return dict(m)

    def indeterminates(self):
        out = set()
        for m in self.terms:
            out.update(J for J, _ in m)
        return sorted(out)

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def _coerce(x):
        if isinstance(x, LaurentExpr):
            return x
        if isinstance(x, int):
            return LaurentExpr.constant(x)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d = dict(self.terms)
        for m, c in other.terms.items():
            d[m] = d.get(m, 0) + c
        return LaurentExpr(d)

    __radd__ = __add__

    def __neg__(self):
        return LaurentExpr({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                d[m] = d.get(m, 0) + c1 * c2
        return LaurentExpr(d)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            m, c = self.single_term()
            if c not in (1, -1):
                raise NotAMonomial("negative power of a non-unit monomial")
            return LaurentExpr({tuple((J, x * e) for J, x in m): c ** (-e)})
        r = LaurentExpr.constant(1)
        for _ in range(e):
            r = r * self
        return r

    def div_by_monomial(self, other):
        """Divide by a single term with coefficient +-1."""
        other = self._coerce(other)
        m, c = other.single_term() if len(other.terms) == 1 else (None, None)
        if m is None or c not in (1, -1):
            raise NotAMonomial("divisor %s is not a +-1 monomial" % other)
        inv = _mono_inv(m)
        return LaurentExpr({_mono_mul(mm, inv): cc * c for mm, cc in self.terms.items()})

    __truediv__ = div_by_monomial

    # -- evaluation -------------------------------------------------------
    def evaluate(self, values, F):
        """
        Substitute values[J] for each indeterminate J, in the field F.
        """
        total = F.zero
        for m, c in self.terms.items():
            v = F(c)
            for J, e in m:
                try:
                    x = values[J]
                except KeyError:
                    raise UnboundSymbol("no value for (%s)" % _label(J)) from None
                if e < 0 and F.is_zero(x):
                    raise PoleAtPoint("(%s) vanishes but has exponent %d" % (_label(J), e))
                v = F.mul(v, F.pow(x, e))
            total = F.add(total, v)
        return total

    # -- text -------------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for i, m in enumerate(sorted(self.terms)):
            c = self.terms[m]
            sign = "-" if c < 0 else "+"
            a = abs(c)
            mono = "".join(
                "(%s)" % _label(J) + ("" if e == 1 else "^%d" % e) for J, e in m)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = "%d·%s" % (a, mono)
            if i == 0:
                pieces.append(body if sign == "+" else "-" + body)
            else:
                pieces.append(" %s %s" % (sign, body))
        return "".join(pieces)

    @classmethod
    def parse(cls, text):
        """Inverse of str(); also accepts '*' for '·' and omitted spaces."""
        s = text.replace("·", "*").replace("Δ", "").replace(" ", "")
        if s in ("", "0"):
            return cls()
        if s[0] not in "+-":
            s = "+" + s
        out = {}
        for sign, body in re.findall(r"([+-])([^+-]+)", _protect(s)):
            body = body.replace("~", "-")
            coef = 1
            m = re.match(r"^(\d+)\*?", body)
            if m and not body.startswith("("):
                coef = int(m.group(1))
                body = body[m.end():]
            mono = {}
            pos = 0
            for mm in re.finditer(r"\((\d+(?:,\d+)*)\)(?:\^(-?\d+))?", body):
                if mm.start() != pos:
                    raise ValueError("cannot parse term %r" % body)
                raw = mm.group(1)
                J = tuple(int(t) for t in raw.split(",")) if "," in raw \
                    else tuple(int(ch) for ch in raw)
                J = tuple(sorted(J))
                mono[J] = mono.get(J, 0) + int(mm.group(2) or 1)
                pos = mm.end()
            if pos != len(body):
                raise ValueError("cannot parse term %r" % body)
            key = tuple(sorted((J, e) for J, e in mono.items() if e))
            out[key] = out.get(key, 0) + (coef if sign == "+" else -coef)
        return cls(out)


def _protect(s):
    # negative exponents "^-2" must not split terms: rewrite as "^~2"
    return s.replace("^-", "^~")


def pluecker_monomial(*labels):
    """Product of Pluecker indeterminates given as strings or tuples."""
    r = LaurentExpr.constant(1)
    for lab in labels:
        J = tuple(int(ch) for ch in lab) if isinstance(lab, str) else tuple(lab)
        r = r * LaurentExpr.var(J)
    return r
