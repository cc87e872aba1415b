"""
Quivers, seeds and mutation.

A quiver is stored as a skew-symmetric exchange matrix over its vertex
labels: b[(i, j)] = (#arrows i -> j) - (#arrows j -> i).  Mutation at r
follows the three-step rule (compose paths through r, reverse arrows at r,
cancel 2-cycles); arrows between two frozen vertices are carried along but
never changed.

A Seed attaches to every vertex a tuple of scalar values -- the cluster
variable evaluated at several fixed points of the Grassmannian -- and,
optionally, its Laurent expansion in the initial cluster.
"""

from collections import deque

from .algebra import random_point
from .errors import Budget, DegeneratePoint, FrozenVertex
from .expressions import ClusterExpression, KINDS, eval_terms, orbit
from .field import default_field, make_rng

DEFAULT_SEED_LIMIT = 500_000


class Quiver:
    """vertices: ordered labels; frozen: set of labels; b: dict (i, j) -> int."""

    def __init__(self, vertices, frozen=(), arrows=None, b=None):
        self.vertices = tuple(vertices)
        self.frozen = frozenset(frozen)
        self.b = {}
        if b is not None:
            for (i, j), x in b.items():
                if x:
                    self.b[(i, j)] = x
        for (i, j) in arrows or ():
            if i == j:
                raise ValueError("quivers have no loops")
            self.b[(i, j)] = self.b.get((i, j), 0) + 1
            self.b[(j, i)] = self.b.get((j, i), 0) - 1
        self.b = {k: x for k, x in self.b.items() if x}

    def entry(self, i, j):
        return self.b.get((i, j), 0)

    def mutable(self):
        return [v for v in self.vertices if v not in self.frozen]

    def arrows(self):
        """Arrow multiset as sorted list of (i, j, multiplicity > 0)."""
        return sorted((i, j, x) for (i, j), x in self.b.items() if x > 0)

    def in_out(self, r):
        ins, outs = [], []
        for (i, j), x in self.b.items():
            if j == r and x > 0:
                ins.append((i, x))
            elif i == r and x > 0:
                outs.append((j, x))
        return sorted(ins), sorted(outs)

    def mutate(self, r):
        if r in self.frozen:
            raise FrozenVertex("cannot mutate at frozen vertex %r" % (r,))
        nb = dict(self.b)
        ins, outs = self.in_out(r)
        for i, a in ins:
            for j, c in outs:
                if i == j or (i in self.frozen and j in self.frozen):
                    continue
                x = nb.get((i, j), 0) + a * c
                if x:
                    nb[(i, j)], nb[(j, i)] = x, -x
                else:
                    nb.pop((i, j), None)
                    nb.pop((j, i), None)
        for i, a in ins:
            nb[(i, r)], nb[(r, i)] = -a, a
        for j, c in outs:
            nb[(r, j)], nb[(j, r)] = -c, c
        V = self.vertices
        return Quiver(V, self.frozen, b=nb)

    def relabel(self, f):
        return Quiver([f(v) for v in self.vertices], [f(v) for v in self.frozen],
                      b={(f(i), f(j)): x for (i, j), x in self.b.items()})

    def __eq__(self, other):
        return isinstance(other, Quiver) and self.vertices == other.vertices \
            and self.frozen == other.frozen and self.b == other.b

    def __repr__(self):
        return "Quiver(%d vertices, %d frozen, %d arrows)" % (
            len(self.vertices), len(self.frozen), sum(x for _, _, x in self.arrows()))


def quiver_from_plabic(G):
    """
    The dual quiver of a plabic graph: one vertex per face (labelled by its
    face label), boundary faces frozen, and for every edge an arrow between
    the two faces beside it, oriented so that the black endpoint lies on the
    right of the arrow; opposite arrows cancel.
    """
    labels = G.face_labels
    faces = G.faces
    verts = [labels[f.id] for f in faces]
    frozen = [labels[f.id] for f in faces if f.is_boundary]
    b = {}
    for e, (u, v) in G.edges.items():
        fl, fr = G.edge_faces[e]          # faces left of u->v and of v->u
        if fl is None or fr is None or fl == fr:
            continue
        # dart u->v has face fl on its left; an arrow crossing it from fr to
        # fl has v on its right.
        src, dst = (fr, fl) if G.colors[v] == "black" else (fl, fr)
        i, j = labels[src], labels[dst]
        b[(i, j)] = b.get((i, j), 0) + 1
        b[(j, i)] = b.get((j, i), 0) - 1
    return Quiver(verts, frozen, b=b)


class Seed:
    """
    quiver: Quiver; values: dict vertex -> tuple of field values (one per
    evaluation point); laurent: optional dict vertex -> (num, den) pair of
    sympy expressions in the initial cluster.
    """

    def __init__(self, quiver, values, F, laurent=None):
        self.quiver = quiver
        self.values = dict(values)
        self.F = F
        self.laurent = laurent

    def mutate(self, r):
        Q = self.quiver
        if r in Q.frozen:
            raise FrozenVertex("cannot mutate at frozen vertex %r" % (r,))
        F = self.F
        ins, outs = Q.in_out(r)
        old = self.values[r]
        new = []
        for t in range(len(old)):
            if F.is_zero(old[t]):
                raise DegeneratePoint("cluster variable at %r vanishes at point %d" % (r, t))
            p1 = F.one
            for i, m in ins:
                p1 = F.mul(p1, F.pow(self.values[i][t], m))
            p2 = F.one
            for j, m in outs:
                p2 = F.mul(p2, F.pow(self.values[j][t], m))
            new.append(F.div(F.add(p1, p2), old[t]))
        values = dict(self.values)
        values[r] = tuple(new)
        laurent = None
        if self.laurent is not None:
            laurent = dict(self.laurent)
            laurent[r] = _laurent_exchange(self.laurent, ins, outs, r)
        return Seed(Q.mutate(r), values, F, laurent)

    def key(self):
        """Values plus the quiver written in terms of values."""
        Q = self.quiver
        vals = self.values
        arrows = sorted((vals[i], vals[j], x) for (i, j), x in Q.b.items() if x > 0)
        return (tuple(sorted(vals.values())), tuple(arrows))


def _laurent_exchange(laurent, ins, outs, r):
    import sympy
    p1 = sympy.Integer(1)
    for i, m in ins:
        p1 = p1 * laurent[i] ** m
    p2 = sympy.Integer(1)
    for j, m in outs:
        p2 = p2 * laurent[j] ** m
    return sympy.cancel((p1 + p2) / laurent[r])


def rectangles_seed(k, n, points=2, F=None, rng=None, laurent=False):
    """
    The seed of the top-cell plabic graph: vertices are face labels, values
    the Pluecker coordinates at `points` random points.
    """
    from .plabic import build_top_cell
    G = build_top_cell(k, n)
    Q = quiver_from_plabic(G)
    F = F or default_field()
    rng = rng or make_rng()
    Ms = [random_point(k, n, F, rng) for _ in range(points)]
    values = {J: tuple(M.minors()[J] for M in Ms) for J in Q.vertices}
    lau = None
    if laurent:
        import sympy
        lau = {J: sympy.Symbol("x" + "_".join(map(str, J))) for J in Q.vertices}
    s = Seed(Q, values, F, lau)
    s.points = Ms
    return s


def mutation_class(seed, max_seeds=DEFAULT_SEED_LIMIT):
    """
    Breadth-first search over seeds reachable from `seed`.  Returns
    (variables, n_seeds) where variables maps each value tuple to the first
    (seed index, vertex) at which it appeared; frozen values included.
    Raises Budget when more than max_seeds seeds are discovered.
    """
    start = seed
    seen = {start.key()}
    variables = {}
    laurents = {}
    for v in start.quiver.vertices:
        variables.setdefault(start.values[v], ("initial", v))
        if start.laurent is not None:
            laurents[start.values[v]] = start.laurent[v]
    frontier = deque([start])
    count = 1
    while frontier:
        s = frontier.popleft()
        for r in s.quiver.mutable():
            t = s.mutate(r)
            val = t.values[r]
            if val not in variables:
                variables[val] = ("mutation", r)
                if t.laurent is not None:
                    laurents[val] = t.laurent[r]
            k = t.key()
            if k in seen:
                continue
            seen.add(k)
            count += 1
            if count > max_seeds:
                raise Budget("more than %d seeds" % max_seeds)
            frontier.append(t)
    return variables, count, laurents


def identify(values, points, k, n, F):
    """
    Name a cluster variable from its values at the given points: a Pluecker
    coordinate or a dihedral translate / projection of X, Y, A, B, C, Z,
    matched at every point.  Returns the expression or None.
    """
    from itertools import combinations
    mins = [M.minors() for M in points]
    for J in combinations(range(1, n + 1), k):
        if all(mins[t][J] == values[t] for t in range(len(points))):
            return ClusterExpression("Pluecker", 0, False, J)
    if k != 3:
        return None
    # plain projections first, so that e.g. Y^S is reported as Y rather
    # than as a rotated X
    for full in (False, True):
        for kind in KINDS:
            if kind == "Pluecker":
                continue
            npr = ClusterExpression(kind).npr
            if npr > n:
                continue
            for S in combinations(range(1, n + 1), npr):
                cands = orbit(kind, S) if full else [ClusterExpression(kind, 0, False, S)]
                for E in cands:
                    terms = E.terms()
                    if all(eval_terms(terms, mins[t], F) == values[t]
                           for t in range(len(points))):
                        return E
    return None


def explore(k, n, points=2, F=None, rng=None, max_seeds=DEFAULT_SEED_LIMIT,
            identify_variables=True, laurent=False):
    """
    Mutation class of the rectangles seed of Gr(k, n) with identification.
    Returns a dict with the variable list, seed count and summary counts.
    """
    F = F or default_field()
    s = rectangles_seed(k, n, points, F, rng, laurent=laurent)
    variables, nseeds, laurents = mutation_class(s, max_seeds)
    frozen_vals = {s.values[v] for v in s.quiver.frozen}
    rows = []
    for val, origin in variables.items():
        name = identify(val, s.points, k, n, F) if identify_variables else None
        rows.append({"values": val, "frozen": val in frozen_vals,
                     "identification": name, "origin": origin,
                     "laurent": laurents.get(val)})
    def sort_key(r):
        e = r["identification"]
        return (r["frozen"] is False, e is None, (e.kind, e.key()) if e else ("", ()),
                r["values"])
    rows.sort(key=sort_key)
    mutable = [r for r in rows if not r["frozen"]]
    plu = [r for r in mutable if r["identification"] is not None
           and r["identification"].kind == "Pluecker"]
    return {
        "k": k, "n": n, "seeds": nseeds,
        "variables": rows,
        "total": len(rows),
        "mutable": len(mutable),
        "frozen": len(rows) - len(mutable),
        "pluecker_mutable": len(plu),
        "non_pluecker": len(mutable) - len(plu),
        "unidentified": sum(1 for r in rows if r["identification"] is None),
        "seed": s,
    }
