"""
Grassmannian points, Pluecker coordinates, generalized cross products and
the right twist.

A point of Gr(k, n) is stored as its n columns v_1..v_n (vectors of length k)
over a field backend from `grasstwist.field`.  Column labels are 1-based
throughout, matching the usual Pluecker notation Delta_{134}.
"""

from itertools import combinations

from .errors import ArityMismatch, InvalidIndex
from .field import default_field, make_rng


def det(F, rows):
    """Determinant of a square matrix (list of rows) over the field F."""
    m = len(rows)
    if m == 0:
        return F.one
    if any(len(r) != m for r in rows):
        raise ArityMismatch("determinant of a non-square matrix")
    if m == 1:
        return rows[0][0]
    if m == 2:
        (a, b), (c, d) = rows
        return F.sub(F.mul(a, d), F.mul(b, c))
    if m == 3:
        (a, b, c), (d, e, f), (g, h, i) = rows
        t1 = F.mul(a, F.sub(F.mul(e, i), F.mul(f, h)))
        t2 = F.mul(b, F.sub(F.mul(d, i), F.mul(f, g)))
        t3 = F.mul(c, F.sub(F.mul(d, h), F.mul(e, g)))
        return F.add(F.sub(t1, t2), t3)
    # Gaussian elimination
    a = [list(r) for r in rows]
    result = F.one
    for col in range(m):
        piv = None
        for r in range(col, m):
            if not F.is_zero(a[r][col]):
                piv = r
                break
        if piv is None:
            return F.zero
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            result = F.neg(result)
        p = a[col][col]
        result = F.mul(result, p)
        pinv = F.inv(p)
        for r in range(col + 1, m):
            factor = F.mul(a[r][col], pinv)
            if F.is_zero(factor):
                continue
            row_r, row_c = a[r], a[col]
            for c in range(col, m):
                row_r[c] = F.sub(row_r[c], F.mul(factor, row_c[c]))
    return result


def cross(F, vectors, k=None):
    """
    Generalized cross product of k-1 vectors in F^k: the vector v with
    v . w = det(v_1 ... v_{k-1} w) for all w (the v_i and w as columns).
    For k = 3 this is the classical cross product.
    """
    vectors = [list(v) for v in vectors]
    if k is None:
        k = len(vectors) + 1
    if len(vectors) != k - 1 or any(len(v) != k for v in vectors):
        raise ArityMismatch("cross product needs k-1 vectors of length k")
    out = []
    for j in range(k):
        e = [F.zero] * k
        e[j] = F.one
        cols = vectors + [e]
        rows = [[cols[c][r] for c in range(k)] for r in range(k)]
        out.append(det(F, rows))
    return out


def dot(F, u, v):
    s = F.zero
    for a, b in zip(u, v):
        s = F.add(s, F.mul(a, b))
    return s


def check_index(J, k, n):
    """Validate a 1-based Pluecker index (any order); returns it as a tuple."""
    J = tuple(int(j) for j in J)
    if len(J) != k:
        raise ArityMismatch("index %r has %d entries, expected %d" % (J, len(J), k))
    if len(set(J)) != len(J):
        raise InvalidIndex("repeated entry in %r" % (J,))
    for j in J:
        if not 1 <= j <= n:
            raise InvalidIndex("entry %d of %r outside [1, %d]" % (j, J, n))
    return J


class GrassmannPoint:
    """A full-rank k x n matrix, stored by columns."""

    def __init__(self, F, columns):
        columns = [tuple(F(x) for x in c) for c in columns]
        if not columns:
            raise ArityMismatch("a point needs at least one column")
        k = len(columns[0])
        if any(len(c) != k for c in columns):
            raise ArityMismatch("columns of unequal length")
        if not 1 <= k < len(columns):
            raise ArityMismatch("need 1 <= k < n, got k=%d n=%d" % (k, len(columns)))
        self.F = F
        self.k = k
        self.n = len(columns)
        self.columns = tuple(columns)
        self._minors = None

    @classmethod
    def from_rows(cls, F, rows):
        rows = [list(r) for r in rows]
        return cls(F, [[r[j] for r in rows] for j in range(len(rows[0]))])

    def __repr__(self):
        return "GrassmannPoint(k=%d, n=%d, %r)" % (self.k, self.n, self.F)

    def column(self, i):
        """Column v_i, 1-based, with cyclic wraparound."""
        return self.columns[(i - 1) % self.n]

    def scaled(self, lam):
        F = self.F
        return GrassmannPoint(F, [[F.mul(lam, x) for x in c] for c in self.columns])

    def minor(self, J):
        """Signed minor on the columns J in the given order."""
        cols = [self.columns[j - 1] for j in J]
        rows = [[c[r] for c in cols] for r in range(self.k)]
        return det(self.F, rows)

    def minors(self):
        """Dict of all sorted k-subsets -> Pluecker value (cached)."""
        if self._minors is None:
            self._minors = {
                J: self.minor(J)
                for J in combinations(range(1, self.n + 1), self.k)
            }
        return self._minors


def pluecker(M, J):
    """
    Delta_J(M).  J may be unsorted, in which case the value is the signed
    determinant of the columns in that order (alternating in J).
    """
    J = check_index(J, M.k, M.n)
    s = tuple(sorted(J))
    if M._minors is not None and s == J:
        return M._minors[s]
    return M.minor(J)


def random_point(k, n, F=None, rng=None, generic=True):
    """
    A random point of Gr(k, n) with column-wise uniform entries.  With
    generic=True, resample until every maximal minor is nonzero.
    """
    if F is None:
        F = default_field()
    if rng is None:
        rng = make_rng()
    for _ in range(10000):
        cols = [[F.random(rng) for _ in range(k)] for _ in range(n)]
        M = GrassmannPoint(F, cols)
        if not generic:
            return M
        if all(not F.is_zero(v) for v in M.minors().values()):
            return M
    raise RuntimeError("could not sample a generic point")


def random_points(k, n, count, F=None, rng=None):
    if F is None:
        F = default_field()
    if rng is None:
        rng = make_rng()
    return [random_point(k, n, F, rng) for _ in range(count)]


def right_twist(M):
    """
    The right twist T*(M).  Column i is v_{i+1} x ... x v_{i+k-1} for
    i <= n-k+1; for i >= n-k+2 the product wraps and is taken as
    (-1)^{k-n+i-1} v_1 x ... x v_{i-n+k-1} x v_{i+1} x ... x v_n.
    """
    F, k, n = M.F, M.k, M.n
    cols = []
    for i in range(1, n + 1):
        if i <= n - k + 1:
            vecs = [M.column(j) for j in range(i + 1, i + k)]
            c = cross(F, vecs, k)
        else:
            idx = list(range(1, i - n + k)) + list(range(i + 1, n + 1))
            c = cross(F, [M.column(j) for j in idx], k)
            if (k - n + i - 1) % 2:
                c = [F.neg(x) for x in c]
        cols.append(c)
    return GrassmannPoint(F, cols)


class Evaluator:
    """
    Bundles a point with its right twist so that twisted and untwisted
    Pluecker values can be looked up repeatedly without recomputation.
    """

    def __init__(self, M):
        self.M = M
        self.F = M.F
        self.values = M.minors()
        self._twisted = None

    @property
    def twisted(self):
        if self._twisted is None:
            self._twisted = right_twist(self.M).minors()
        return self._twisted

    def delta(self, J):
        return self.values[tuple(sorted(J))]

    def twisted_delta(self, J):
        return self.twisted[tuple(sorted(J))]


def frozen_indices(k, n):
    """The n circularly consecutive k-subsets, sorted, in order i = 1..n."""
    out = []
    for i in range(1, n + 1):
        out.append(tuple(sorted(((i - 1 + t) % n) + 1 for t in range(k))))
    return out


def is_frozen(J, n):
    J = sorted(J)
    k = len(J)
    return tuple(J) in set(frozen_indices(k, n))
