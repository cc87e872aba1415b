"""
SL3 webs in a disk.

A Web has boundary vertices 1..n in clockwise order, each colored 'B'
(black), 'W' (white) or '.' (isolated).  Internal vertices carry negative
integer ids and a color, are trivalent, and list their incident edge ids in
counterclockwise order -- the same conventions as `grasstwist.plabic`, so
the web of a triple dimer inherits its embedding directly from the plabic
graph.  A boundary vertex has at most one edge.  An edge between two
boundary vertices is a directed "path" (oriented black -> white).  Vertexless
closed loops are kept as a count.

Faces are traced with boundary arcs added around the circle (arc i joins i
and i+1); a face is interior when it uses no arc.  A web is non-elliptic
when it has no loops, no closed components and no interior face with four
or fewer sides.

WebSum is an integer combination of webs keyed by canonical form.
"""

from collections import Counter, deque
from dataclasses import dataclass
from functools import lru_cache

from .errors import ArityMismatch, InvalidTableau, SizeGuard

BLACK = "B"
WHITE = "W"
ISOLATED = "."
MAX_ENUMERATION_N = 9


def _opp(c):
    return WHITE if c == BLACK else BLACK


def _arc(i):
    return ("arc", i)


class Web:
    """
    n: boundary size; bcolors: tuple of 'B'/'W'/'.' for labels 1..n;
    colors: internal vertex -> 'B'/'W'; edges: id -> (u, v);
    rotation: internal vertex -> tuple of edge ids (ccw); loops: count.
    Treat as immutable.
    """

    __slots__ = ("n", "bcolors", "colors", "edges", "rotation", "loops",
                 "_key", "_bedge")

    def __init__(self, n, bcolors, colors=None, edges=None, rotation=None, loops=0):
        self.n = n
        self.bcolors = tuple(bcolors)
        self.colors = dict(colors or {})
        self.edges = {e: tuple(uv) for e, uv in (edges or {}).items()}
        self.rotation = {v: tuple(r) for v, r in (rotation or {}).items()}
        self.loops = loops
        self._key = None
        self._bedge = {}
        for e, (a, b) in self.edges.items():
            for x in (a, b):
                if isinstance(x, int) and x > 0:
                    if x in self._bedge:
                        raise ArityMismatch("boundary vertex %d has two edges" % x)
                    self._bedge[x] = e
        if len(self.bcolors) != n:
            raise ArityMismatch("need %d boundary colors" % n)

    # -- basic structure --------------------------------------------------
    def is_boundary(self, v):
        return v > 0

    def color(self, v):
        return self.bcolors[v - 1] if v > 0 else self.colors[v]

    def other_end(self, e, v):
        a, b = self.edges[e]
        return b if a == v else a

    def boundary_edge(self, i):
        return self._bedge.get(i)

    def incident(self, v):
        if v > 0:
            e = self._bedge.get(v)
            return () if e is None else (e,)
        return self.rotation[v]

    def vertices(self):
        attached = [i for i in range(1, self.n + 1) if i in self._bedge]
        return attached + sorted(self.colors, reverse=True)

    def validate(self):
        """Check trivalence, bipartiteness and boundary/edge consistency."""
        for i in range(1, self.n + 1):
            has = i in self._bedge
            if has != (self.bcolors[i - 1] != ISOLATED):
                raise ArityMismatch("boundary vertex %d: color %r but %s edge"
                                    % (i, self.bcolors[i - 1], "an" if has else "no"))
        for v, rot in self.rotation.items():
            if len(rot) != 3:
                raise ArityMismatch("internal vertex %d has degree %d" % (v, len(rot)))
            for e in rot:
                if v not in self.edges[e]:
                    raise ArityMismatch("rotation of %d lists foreign edge %r" % (v, e))
        for e, (a, b) in self.edges.items():
            if a == b:
                raise ArityMismatch("loop edge %r" % (e,))
            if self.color(a) == self.color(b):
                raise ArityMismatch("edge %r joins two %s vertices" % (e, self.color(a)))
            for x in (a, b):
                if x < 0 and e not in self.rotation[x]:
                    raise ArityMismatch("edge %r missing from rotation of %d" % (e, x))
        return self

    # -- faces ------------------------------------------------------------
    def _aug_rotation(self, v):
        if v > 0:
            i = v
            prev = (i - 2) % self.n + 1
            e = self._bedge.get(v)
            head = (e,) if e is not None else ()
            return head + (_arc(i), _arc(prev))
        return self.rotation[v]

    def _aug_other(self, e, v):
        if isinstance(e, tuple):
            i = e[1]
            j = i % self.n + 1
            return j if v == i else i
        return self.other_end(e, v)

    def _next_dart(self, dart):
        e, u = dart
        v = self._aug_other(e, u)
        rot = self._aug_rotation(v)
        j = rot.index(e)
        return (rot[(j - 1) % len(rot)], v)

    def face_cycles(self):
        """All dart cycles (faces on their left), arcs included when n > 0."""
        darts = []
        for e, (u, v) in sorted(self.edges.items()):
            darts.append((e, u))
            darts.append((e, v))
        if self.n >= 2:
            for i in range(1, self.n + 1):
                darts.append((_arc(i), i))
                darts.append((_arc(i), i % self.n + 1))
        seen = set()
        out = []
        for d in darts:
            if d in seen:
                continue
            cyc = []
            x = d
            while x not in seen:
                seen.add(x)
                cyc.append(x)
                x = self._next_dart(x)
            out.append(tuple(cyc))
        return out

    def interior_faces(self):
        """Faces using no boundary arc (for n = 0 every face counts)."""
        return [c for c in self.face_cycles()
                if not any(isinstance(e, tuple) for e, _ in c)]

    # -- components -------------------------------------------------------
    def components(self):
        """Connected components (vertex sets) among attached vertices."""
        seen = set()
        comps = []
        for v in self.vertices():
            if v in seen:
                continue
            comp = {v}
            stack = [v]
            seen.add(v)
            while stack:
                x = stack.pop()
                for e in self.incident(x):
                    y = self.other_end(e, x)
                    if y not in seen:
                        seen.add(y)
                        comp.add(y)
                        stack.append(y)
            comps.append(comp)
        return comps

    def closed_components(self):
        return [c for c in self.components() if all(v < 0 for v in c)]

    def stats(self):
        """(n_attached, |V_int|, cycles c, components k, paths)."""
        comps = self.components()
        n_att = len(self._bedge)
        V = n_att + len(self.colors)
        E = len(self.edges)
        k = len(comps)
        c = E - V + k
        return {"n_attached": n_att, "internal": len(self.colors), "cycles": c,
                "components": k, "paths": len(self.paths()), "loops": self.loops}

    def euler_identity_holds(self):
        s = self.stats()
        return s["internal"] == s["n_attached"] + 2 * s["cycles"] - 2 * s["components"]

    def paths(self):
        """Directed boundary paths as (black label, white label)."""
        out = []
        for e, (a, b) in self.edges.items():
            if a > 0 and b > 0:
                if self.bcolors[a - 1] == WHITE:
                    a, b = b, a
                out.append((a, b))
        return sorted(out)

    def is_nonelliptic(self):
        if self.loops or self.closed_components():
            return False
        return all(len(f) > 4 for f in self.interior_faces())

    def is_connected_interior(self):
        """True if the internal vertices form one nonempty connected piece."""
        if not self.colors:
            return False
        start = next(iter(self.colors))
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for e in self.rotation[x]:
                y = self.other_end(e, x)
                if y < 0 and y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == len(self.colors)

    # -- canonical form ---------------------------------------------------
    def _bfs(self, roots):
        """
        Canonical traversal.  roots: list of (vertex, start edge or None).
        Returns (label map, ordered rotations) for the vertices reached.
        """
        label = {}
        start = {}
        order = []
        nxt = -1
        queue = deque()
        for v, e in roots:
            if v > 0:
                label[v] = v
            else:
                label[v] = nxt
                nxt -= 1
            start[v] = e
            order.append(v)
            queue.append(v)
        while queue:
            v = queue.popleft()
            for e in self._rot_from(v, start[v]):
                w = self.other_end(e, v)
                if w not in label:
                    label[w] = nxt
                    nxt -= 1
                    start[w] = e
                    order.append(w)
                    queue.append(w)
        return label, start, order

    def _rot_from(self, v, e):
        rot = self.incident(v)
        if e is None or not rot:
            return rot
        j = rot.index(e)
        return rot[j:] + rot[:j]

    def _serialize(self, label, start, order):
        rots = {v: self._rot_from(v, start[v]) for v in order}
        out = []
        for v in order:
            entry = []
            for e in rots[v]:
                w = self.other_end(e, v)
                entry.append((label[w], rots[w].index(e)))
            out.append((label[v], self.color(v), tuple(entry)))
        return tuple(out)

    def _closed_key(self, comp):
        best = None
        for v in sorted(comp):
            for e in self.rotation[v]:
                label, start, order = self._bfs([(v, e)])
                s = self._serialize(label, start, order)
                if best is None or s < best:
                    best = s
        return best

    @property
    def key(self):
        if self._key is None:
            roots = [(i, None) for i in range(1, self.n + 1)]
            label, start, order = self._bfs(roots)
            main = self._serialize(label, start, order)
            closed = []
            reached = set(label)
            rest = [v for v in self.colors if v not in reached]
            if rest:
                sub = self.subweb(rest)
                for comp in sub.components():
                    closed.append(sub._closed_key(comp))
            self._key = (self.n, self.bcolors, main, tuple(sorted(closed)), self.loops)
        return self._key

    def __eq__(self, other):
        return isinstance(other, Web) and self.key == other.key

    def __lt__(self, other):
        return self.key < other.key

    def __hash__(self):
        return hash(self.key)

    def canonical(self):
        """Relabeled copy: internal ids and edge ids in canonical order."""
        roots = [(i, None) for i in range(1, self.n + 1)]
        label, start, order = self._bfs(roots)
        nxt = min([l for l in label.values()] + [0]) - 1
        reached = set(label)
        rest = [v for v in sorted(self.colors, reverse=True) if v not in reached]
        while rest:
            v = rest[0]
            l2, s2, o2 = self._bfs([(v, self.rotation[v][0])])
            shift = nxt + 1
            for x in o2:
                label[x] = l2[x] + shift
                start[x] = s2[x]
                order.append(x)
            nxt = min(label.values()) - 1
            rest = [u for u in rest if u not in label]
        eid = {}
        for v in order:
            for e in self._rot_from(v, start[v]):
                if e not in eid:
                    eid[e] = len(eid)
        colors = {label[v]: c for v, c in self.colors.items()}
        edges = {eid[e]: (label[a], label[b]) for e, (a, b) in self.edges.items()}
        rotation = {label[v]: tuple(eid[e] for e in self._rot_from(v, start[v]))
                    for v in self.colors}
        return Web(self.n, self.bcolors, colors, edges, rotation, self.loops)

    def subweb(self, internal_vertices):
        """The closed sub-web on a set of internal vertices (n = 0)."""
        vs = set(internal_vertices)
        edges = {e: uv for e, uv in self.edges.items() if uv[0] in vs and uv[1] in vs}
        return Web(0, (), {v: self.colors[v] for v in vs}, edges,
                   {v: self.rotation[v] for v in vs})

    # -- relabeling -------------------------------------------------------
    def relabel_boundary(self, perm, n=None, reverse=False):
        """
        perm: dict old label -> new label.  n: new boundary size (default
        unchanged); labels missing from the image become isolated.
        reverse=True mirrors the embedding (reverses every rotation).
        """
        n = self.n if n is None else n
        bc = [ISOLATED] * n
        for i in range(1, self.n + 1):
            if self.bcolors[i - 1] != ISOLATED:
                bc[perm[i] - 1] = self.bcolors[i - 1]

        def f(x):
            return perm[x] if x > 0 else x
        edges = {e: (f(a), f(b)) for e, (a, b) in self.edges.items()}
        rot = {v: (tuple(reversed(r)) if reverse else r) for v, r in self.rotation.items()}
        return Web(n, bc, self.colors, edges, rot, self.loops)

    def dihedral(self, rotation=0, reflected=False):
        """Image under sigma^rotation rho^reflected acting on labels."""
        n = self.n
        perm = {}
        for i in range(1, n + 1):
            j = n + 1 - i if reflected else i
            perm[i] = (j - 1 + rotation) % n + 1
        return self.relabel_boundary(perm, reverse=reflected)

    def embed(self, S, n):
        """W^S: boundary label i goes to S[i-1] in a disk with n labels."""
        S = tuple(sorted(S))
        if len(S) != self.n:
            raise ArityMismatch("support of size %d for a web on %d labels" % (len(S), self.n))
        return self.relabel_boundary({i: S[i - 1] for i in range(1, self.n + 1)}, n=n)

    def without_loops(self):
        return Web(self.n, self.bcolors, self.colors, self.edges, self.rotation, 0)

    # -- text -------------------------------------------------------------
    def to_dict(self):
        W = self.canonical()
        return {
            "n": W.n,
            "boundary": "".join(W.bcolors),
            "vertices": [{"id": v, "color": c} for v, c in sorted(W.colors.items(), reverse=True)],
            "edges": [[e, a, b] for e, (a, b) in sorted(W.edges.items())],
            "rotations": {str(v): list(r) for v, r in sorted(W.rotation.items(), reverse=True)},
            "paths": [list(p) for p in W.paths()],
            "loops": W.loops,
        }

    @classmethod
    def from_dict(cls, d):
        colors = {int(x["id"]): x["color"] for x in d.get("vertices", [])}
        edges = {int(e): (int(a), int(b)) for e, a, b in d.get("edges", [])}
        rot = {int(v): tuple(r) for v, r in d.get("rotations", {}).items()}
        return cls(int(d["n"]), tuple(d["boundary"]), colors, edges, rot,
                   int(d.get("loops", 0)))

    def serialize(self):
        """One-line text form; parse() inverts it."""
        W = self.canonical()
        verts = " ".join("%d%s:%s" % (v, c, ",".join(str(e) for e in W.rotation[v]))
                         for v, c in sorted(W.colors.items(), reverse=True))
        edges = " ".join("%d=%d/%d" % (e, a, b) for e, (a, b) in sorted(W.edges.items()))
        return "%s | %s | %s | loops=%d" % ("".join(W.bcolors), verts, edges, W.loops)

    @classmethod
    def parse(cls, text):
        bpart, vpart, epart, lpart = [t.strip() for t in text.split("|")]
        colors, rot, edges = {}, {}, {}
        for tok in vpart.split():
            head, r = tok.split(":")
            v, c = int(head[:-1]), head[-1]
            colors[v] = c
            rot[v] = tuple(int(x) for x in r.split(","))
        for tok in epart.split():
            e, ab = tok.split("=")
            a, b = ab.split("/")
            edges[int(e)] = (int(a), int(b))
        loops = int(lpart.split("=")[1])
        return cls(len(bpart), tuple(bpart), colors, edges, rot, loops)

    def __repr__(self):
        return "Web(%s)" % self.serialize()

    def describe(self):
        """Short human summary: components by boundary labels, paths."""
        parts = ["path %d->%d" % p for p in self.paths()]
        for comp in self.components():
            labs = sorted(v for v in comp if v > 0)
            nint = sum(1 for v in comp if v < 0)
            if nint:
                parts.append("[%s|%d]" % (",".join(map(str, labs)), nint))
        if self.loops:
            parts.append("%d loop(s)" % self.loops)
        return " + ".join(parts) if parts else "empty"


def empty_web(n, bcolors=None):
    return Web(n, bcolors or (ISOLATED,) * n)


# ---------------------------------------------------------------------------
# WebSum
# ---------------------------------------------------------------------------
class WebSum:
    """Integer combination of webs, keyed by canonical form."""

    def __init__(self, items=None):
        self._d = {}
        for W, c in (items or []):
            self._add(W, c)

    def _add(self, W, c):
        k = W.key
        if k in self._d:
            W0, c0 = self._d[k]
            c = c0 + c
            if c:
                self._d[k] = (W0, c)
            else:
                del self._d[k]
        elif c:
            self._d[k] = (W, c)

    @classmethod
    def of(cls, W, c=1):
        return cls([(W, c)])

    def items(self):
        return [self._d[k] for k in sorted(self._d)]

    def __iter__(self):
        return iter(self.items())

    def __len__(self):
        return len(self._d)

    def coefficient(self, W):
        return self._d.get(W.key, (None, 0))[1]

    def webs(self):
        return [W for W, _ in self.items()]

    def __add__(self, other):
        out = WebSum(self.items())
        for W, c in other.items():
            out._add(W, c)
        return out

    def scaled(self, s):
        return WebSum([(W, c * s) for W, c in self.items()])

    def __eq__(self, other):
        return isinstance(other, WebSum) and \
            {k: c for k, (_, c) in self._d.items()} == {k: c for k, (_, c) in other._d.items()}

    def __repr__(self):
        return "WebSum(%s)" % " + ".join("%d*<%s>" % (c, W.describe()) for W, c in self.items())


# ---------------------------------------------------------------------------
# skein reduction
# ---------------------------------------------------------------------------
class _Mut:
    """Mutable working copy used by the reduction moves."""

    def __init__(self, W):
        self.n = W.n
        self.bcolors = W.bcolors
        self.colors = dict(W.colors)
        self.edges = dict(W.edges)
        self.rotation = {v: list(r) for v, r in W.rotation.items()}
        self.loops = W.loops
        self.next_e = max([e for e in self.edges if isinstance(e, int)] + [-1]) + 1

    def other(self, e, v):
        a, b = self.edges[e]
        return b if a == v else a

    def replace_end(self, x, old, new):
        if x < 0:
            r = self.rotation[x]
            r[r.index(old)] = new

    def join(self, a, ea, b, eb):
        """Replace the edge ea at a and eb at b by one new edge a-b."""
        e = self.next_e
        self.next_e += 1
        self.edges[e] = (a, b)
        self.replace_end(a, ea, e)
        self.replace_end(b, eb, e)
        return e

    def drop(self, vs, es):
        for v in vs:
            del self.colors[v]
            del self.rotation[v]
        for e in es:
            self.edges.pop(e, None)

    def web(self):
        return Web(self.n, self.bcolors, self.colors, self.edges,
                   {v: tuple(r) for v, r in self.rotation.items()}, self.loops)


def _bigon(W, face):
    (e1, u), (e2, v) = face
    M = _Mut(W)
    ea = [e for e in M.rotation[u] if e not in (e1, e2)][0]
    eb = [e for e in M.rotation[v] if e not in (e1, e2)][0]
    if ea == eb:
        # three parallel edges: the bigon closes up into a loop
        M.drop([u, v], [e1, e2, ea])
        M.loops += 1
        return M.web()
    a, b = M.other(ea, u), M.other(eb, v)
    M.drop([u, v], [e1, e2, ea, eb])
    M.join(a, ea, b, eb)
    return M.web()


def _square(W, face):
    xs = [u for _, u in face]
    fe = [e for e, _ in face]
    outer = []
    for t, x in enumerate(xs):
        o = [e for e in W.rotation[x] if e not in (fe[t], fe[t - 1])][0]
        outer.append((o, W.other_end(o, x)))
    out = []
    for pairing in (((0, 1), (2, 3)), ((1, 2), (3, 0))):
        M = _Mut(W)
        M.drop(xs, fe + [o for o, _ in outer])
        for s, t in pairing:
            (os_, as_), (ot, at) = outer[s], outer[t]
            M.join(as_, os_, at, ot)
        out.append(M.web())
    return out


_REDUCE_CACHE = {}


def _closed_value(W):
    """Evaluation of a closed web (n = 0) on the sphere."""
    k = W.key
    if k in _REDUCE_CACHE:
        return _REDUCE_CACHE[k]
    val = 3 ** W.loops
    Wc = W.without_loops().canonical()
    comps = Wc.components()
    if len(comps) > 1:
        for comp in comps:
            val *= _closed_value(Wc.subweb([v for v in comp]))
    elif comps:
        faces = sorted(Wc.face_cycles(), key=lambda f: (len(f), f))
        f = faces[0]
        if len(f) == 2:
            val *= 2 * _closed_value(_bigon(Wc, f))
        elif len(f) == 4:
            a, b = _square(Wc, f)
            val *= _closed_value(a) + _closed_value(b)
        else:
            raise ArityMismatch("closed web with no face of size <= 4")
    _REDUCE_CACHE[k] = val
    return val


def _reduce_web(W):
    k = W.key
    if ("web", k) in _REDUCE_CACHE:
        return _REDUCE_CACHE[("web", k)]
    factor = 3 ** W.loops
    W = W.without_loops()
    closed = W.closed_components()
    if closed:
        cv = set()
        for comp in closed:
            factor *= _closed_value(W.subweb(comp))
            cv |= comp
        M = _Mut(W)
        M.drop(sorted(cv), [e for e, (a, b) in W.edges.items() if a in cv])
        W = M.web()
    W = W.canonical()
    faces = sorted(W.interior_faces(), key=lambda f: (len(f) > 2, f))
    small = [f for f in faces if len(f) <= 4]
    if not small:
        res = WebSum.of(W, factor)
    else:
        f = small[0]
        if len(f) == 2:
            res = _reduce_web(_bigon(W, f)).scaled(2 * factor)
        else:
            a, b = _square(W, f)
            res = (_reduce_web(a) + _reduce_web(b)).scaled(factor)
    _REDUCE_CACHE[("web", k)] = res
    return res


def skein_reduce(w):
    """Reduce a Web or WebSum to non-elliptic webs (loop 3, bigon 2, square split)."""
    if isinstance(w, Web):
        w = WebSum.of(w)
    out = WebSum()
    for W, c in w.items():
        out = out + _reduce_web(W).scaled(c)
    return out


def reduce_with_choice(W, pick):
    """
    Reduction driven by an explicit face choice: pick(list of small faces)
    returns the one to reduce.  Used to test confluence.
    """
    factor = 3 ** W.loops
    W = W.without_loops()
    closed = W.closed_components()
    if closed:
        return skein_reduce(W).scaled(factor)
    small = [f for f in W.interior_faces() if len(f) <= 4]
    if not small:
        return WebSum.of(W, factor)
    f = pick(small)
    if len(f) == 2:
        return reduce_with_choice(_bigon(W, f), pick).scaled(2 * factor)
    a, b = _square(W, f)
    return (reduce_with_choice(a, pick) + reduce_with_choice(b, pick)).scaled(factor)


# ---------------------------------------------------------------------------
# dimers -> webs / matchings
# ---------------------------------------------------------------------------
def web_from_triple_dimer(G, D):
    """
    The web W(D) of a triple dimer on a plabic graph: boundary color from
    the multiplicity of the boundary edge (1 black, 2 white, 0/3 isolated),
    tripled edges dropped, bivalent chains smoothed, bivalent cycles made
    loops.
    """
    if D.m != 3:
        raise ArityMismatch("web_from_triple_dimer needs a 3-fold dimer, got m=%d" % D.m)
    mult = dict(D.edges)
    use = {e for e, t in mult.items() if t in (1, 2)}
    n = G.n
    bcol = [ISOLATED] * n
    for v, lab in G.boundary.items():
        t = mult.get(G.rotation[v][0], 0)
        bcol[lab - 1] = {1: BLACK, 2: WHITE}.get(t, ISOLATED)
    deg = Counter()
    for e in use:
        a, b = G.edges[e]
        deg[a] += 1
        deg[b] += 1
    node = {}                     # G vertex -> web vertex
    for v, lab in G.boundary.items():
        if deg[v]:
            node[v] = lab
    nid = -1
    for v in sorted(G.colors, key=str):
        if v not in G.boundary and deg[v] == 3:
            node[v] = nid
            nid -= 1
    colors = {node[v]: (BLACK if G.colors[v] == "black" else WHITE)
              for v in node if node[v] < 0}
    rot = {node[v]: [] for v in node if node[v] < 0}
    edges = {}
    seen = set()
    eid = 0
    endpoint_edge = {}            # (G vertex, G edge) -> web edge

    def walk(v, e):
        prev, cur = v, G.other_end(e, v)
        last = e
        visited = [e]
        while cur not in node:
            nxt = [x for x in G.rotation[cur] if x in use and x != last][0]
            prev, last = cur, nxt
            cur = G.other_end(nxt, prev)
            visited.append(nxt)
        return cur, last, visited

    for v in sorted(node, key=str):
        for e in G.rotation[v]:
            if e not in use or e in seen:
                continue
            w, last, visited = walk(v, e)
            seen.update(visited)
            edges[eid] = (node[v], node[w])
            endpoint_edge[(v, e)] = eid
            endpoint_edge[(w, last)] = eid
            eid += 1
    loops = 0
    for e in sorted(use, key=str):
        if e in seen:
            continue
        # a cycle through bivalent vertices only
        loops += 1
        stack = [e]
        while stack:
            x = stack.pop()
            if x in seen:
                continue
            seen.add(x)
            for y in G.edges[x]:
                stack.extend(f for f in G.rotation[y] if f in use and f not in seen)
    for v in node:
        if node[v] < 0:
            rot[node[v]] = tuple(endpoint_edge[(v, e)] for e in G.rotation[v] if e in use)
    return Web(n, bcol, colors, edges, rot, loops).validate()


@dataclass(frozen=True)
class NonCrossingMatching:
    pairs: tuple        # sorted ((a, b), ...) with a < b
    cycles: int = 0

    def __post_init__(self):
        ps = tuple(sorted(tuple(sorted(p)) for p in self.pairs))
        object.__setattr__(self, "pairs", ps)
        for (a, b) in ps:
            for (c, d) in ps:
                if a < c < b < d:
                    raise ValueError("matching %r is crossing" % (ps,))

    @property
    def multiplicity(self):
        return 2 ** self.cycles

    def __str__(self):
        return ",".join("(%d,%d)" % p for p in self.pairs)


def matching_from_double_dimer(G, D):
    """Boundary pairing and cycle count of a double dimer."""
    if D.m != 2:
        raise ArityMismatch("matching_from_double_dimer needs a 2-fold dimer")
    from .dimer import DimerModel
    pairs, cycles, _ = DimerModel(G).double_dimer_structure(D)
    return NonCrossingMatching(tuple(pairs), cycles)


# ---------------------------------------------------------------------------
# compatibility
# ---------------------------------------------------------------------------
def expected_boundary(I, J, K, n):
    """Boundary colors and forced edge colors determined by (I, J, K)."""
    sets = [set(I), set(J), set(K)]
    colors, forced = [], {}
    for i in range(1, n + 1):
        ins = [t for t in range(3) if i in sets[t]]
        if len(ins) == 1:
            colors.append(BLACK)
            forced[i] = ins[0]
        elif len(ins) == 2:
            colors.append(WHITE)
            forced[i] = ({0, 1, 2} - set(ins)).pop()
        else:
            colors.append(ISOLATED)
    return tuple(colors), forced


def coloring_diagnostic(W, I, J, K):
    """None if the boundary of W matches (I, J, K), else a message."""
    n = max([W.n] + list(I) + list(J) + list(K))
    if n != W.n:
        return "labels exceed the web's %d boundary vertices" % W.n
    colors, _ = expected_boundary(I, J, K, n)
    if colors != W.bcolors:
        return "boundary %s does not match %s required by the triple" % (
            "".join(W.bcolors), "".join(colors))
    return None


def coloring_count(W, I, J, K):
    """
    a(I, J, K; W): proper 3-edge-colorings of W (red/blue/green for I/J/K)
    meeting the boundary rules.  A boundary mismatch gives 0.
    """
    if coloring_diagnostic(W, I, J, K) is not None:
        return 0
    _, forced = expected_boundary(I, J, K, W.n)
    # order edges by a traversal so that constraints bite early
    order = []
    seen = set()
    for v in W.vertices():
        for e in W.incident(v):
            if e not in seen:
                seen.add(e)
                order.append(e)
    col = {}

    def ok(e, c):
        for x in W.edges[e]:
            if x > 0:
                if forced[x] != c:
                    return False
            else:
                for f in W.rotation[x]:
                    if f != e and col.get(f) == c:
                        return False
        return True

    count = 0

    def rec(t):
        nonlocal count
        if t == len(order):
            count += 1
            return
        e = order[t]
        for c in range(3):
            if ok(e, c):
                col[e] = c
                rec(t + 1)
                del col[e]

    rec(0)
    return count * 3 ** W.loops


# ---------------------------------------------------------------------------
# enumeration of non-elliptic webs
# ---------------------------------------------------------------------------
def vertex_budget(n):
    """
    Largest |V_int| allowed by |V_int| = n + 2c - 2k (k >= 1) together with
    the lower bounds |V_int| >= 2c+4, 2c+6, 2c+7, 2c+8 for c >= 1, 2, 3, 4.
    """
    def lower(c):
        if c >= 4:
            return 2 * c + 8
        return (0, 2 * c + 4, 2 * c + 6, 2 * c + 7)[c]
    best = max(n - 2, 0)
    for c in range(1, 5):
        if lower(c) <= n + 2 * c - 2:
            best = max(best, n + 2 * c - 2)
    return best


def _shift(W, by, new_n, new_bc):
    perm = {i: i + by for i in range(1, W.n + 1)}
    Wn = W.relabel_boundary(perm, n=new_n)
    return Web(new_n, new_bc, Wn.colors, Wn.edges, Wn.rotation, Wn.loops)


def _grow_arc(W, word):
    # boundary 1,2 joined directly; W has labels 3.. after shifting
    Wn = _shift(W, 2, len(word), word)
    edges = dict(Wn.edges)
    e = max(list(edges) + [-1]) + 1
    edges[e] = (1, 2)
    return Web(len(word), word, Wn.colors, edges, Wn.rotation)


def _fresh_vertex(W):
    return min(list(W.colors) + [0]) - 1


def _grow_y(W, word):
    # W's boundary vertex 1 becomes an internal vertex x joined to new 1, 2
    Wn = _shift(W, 1, len(word), word)     # old 1 -> label 2
    x = _fresh_vertex(Wn)
    e0 = Wn.boundary_edge(2)
    edges = {}
    for e, (a, b) in Wn.edges.items():
        edges[e] = (x if a == 2 else a, x if b == 2 else b)
    rot = dict(Wn.rotation)
    colors = dict(Wn.colors)
    colors[x] = _opp(word[0])
    e1 = max(list(edges) + [-1]) + 1
    e2 = e1 + 1
    edges[e1] = (x, 1)
    edges[e2] = (x, 2)
    rot[x] = (e0, e2, e1)
    return Web(len(word), word, colors, edges, rot)


def _grow_h(W, word):
    # W's boundary vertices 1, 2 become internal u, v (joined), attached to new 1, 2
    Wn = W.relabel_boundary({i: i for i in range(1, W.n + 1)})
    u = _fresh_vertex(Wn)
    v = u - 1
    eu, ev = Wn.boundary_edge(1), Wn.boundary_edge(2)
    edges = {}
    for e, (a, b) in Wn.edges.items():
        m = {1: u, 2: v}
        edges[e] = (m.get(a, a), m.get(b, b))
    colors = dict(Wn.colors)
    colors[u] = _opp(word[0])
    colors[v] = _opp(word[1])
    rot = dict(Wn.rotation)
    base = max(list(edges) + [-1]) + 1
    euv, eb1, eb2 = base, base + 1, base + 2
    edges[euv] = (u, v)
    edges[eb1] = (u, 1)
    edges[eb2] = (v, 2)
    rot[u] = (eu, euv, eb1)
    rot[v] = (ev, eb2, euv)
    return Web(len(word), word, colors, edges, rot)


def _rotate_word_web(W, r, L, word):
    """Relabel a web built on the rotated word back to original labels."""
    perm = {t: (t - 1 + r) % L + 1 for t in range(1, L + 1)}
    Wn = W.relabel_boundary(perm)
    return Web(L, word, Wn.colors, Wn.edges, Wn.rotation, Wn.loops)


@lru_cache(maxsize=None)
def _generate(word, budget):
    """All non-elliptic webs on a word of B/W (no isolated) with <= budget internal vertices."""
    L = len(word)
    if L == 0:
        return (Web(0, ()),)
    out = {}
    for r in range(L):
        rw = word[r:] + word[:r]
        a, b = rw[0], rw[1] if L > 1 else None
        cands = []
        if L >= 2 and a != b:
            for Wp in _generate(rw[2:], budget):
                cands.append(_grow_arc(Wp, rw))
            if budget >= 2:
                for Wp in _generate((b, a) + rw[2:], budget - 2):
                    cands.append(_grow_h(Wp, rw))
        if L >= 2 and a == b and budget >= 1:
            for Wp in _generate((_opp(a),) + rw[2:], budget - 1):
                cands.append(_grow_y(Wp, rw))
        for Wc in cands:
            if not Wc.is_nonelliptic():
                continue
            Wb = _rotate_word_web(Wc, r, L, word)
            out.setdefault(Wb.key, Wb)
    return tuple(out[k] for k in sorted(out))


def enumerate_nonelliptic(boundary, dihedral_quotient=False):
    """
    All non-elliptic webs with the given boundary coloring, a string or
    sequence over 'B', 'W', '.' for labels 1..n.  Internal vertex counts are
    bounded by the Euler and minimum-vertex propositions; webs are grown by
    attaching arcs, Y's and H's at the boundary, filtered for
    non-ellipticity and deduplicated by canonical form.
    """
    bc = tuple(boundary)
    n = len(bc)
    if n > MAX_ENUMERATION_N:
        raise SizeGuard("enumerate_nonelliptic is limited to n <= %d" % MAX_ENUMERATION_N)
    if any(c not in (BLACK, WHITE, ISOLATED) for c in bc):
        raise ValueError("boundary colors must be B, W or .")
    pos = [i + 1 for i, c in enumerate(bc) if c != ISOLATED]
    word = tuple(bc[i - 1] for i in pos)
    webs = []
    for Wp in _generate(word, vertex_budget(len(word))):
        W = Wp.relabel_boundary({t + 1: pos[t] for t in range(len(pos))}, n=n)
        webs.append(Web(n, bc, W.colors, W.edges, W.rotation))
    webs = sorted(set(webs))
    if dihedral_quotient:
        webs = dihedral_representatives(webs)
    return webs


def dihedral_representatives(webs, group="dihedral"):
    """One web per orbit under boundary rotations/reflections."""
    reps = {}
    for W in webs:
        orb = []
        for r in range(W.n):
            orb.append(W.dihedral(r, False))
            if group == "dihedral":
                orb.append(W.dihedral(r, True))
        k = min(x.key for x in orb)
        reps.setdefault(k, W)
    return [reps[k] for k in sorted(reps)]


def invariant_dimension(boundary):
    """
    Number of dominant lattice walks for the word (black = V, white = V*),
    i.e. dim of the SL3 invariant space -- the number of non-elliptic webs
    with this boundary.  Used as an independent completeness oracle.
    """
    steps = {BLACK: ((1, 0), (-1, 1), (0, -1)), WHITE: ((0, 1), (1, -1), (-1, 0))}
    cur = Counter({(0, 0): 1})
    for c in boundary:
        if c == ISOLATED:
            continue
        nxt = Counter()
        for (a, b), m in cur.items():
            for da, db in steps[c]:
                if a + da >= 0 and b + db >= 0:
                    nxt[(a + da, b + db)] += m
        cur = nxt
    return cur[(0, 0)]


# ---------------------------------------------------------------------------
# connected all-cycle web interiors (for the minimum-vertex bounds)
# ---------------------------------------------------------------------------
class CycleInterior:
    """
    A 2-connected plane bipartite graph with degrees 2 and 3, every bounded
    face of even length >= 6, and every degree-2 vertex on the outer cycle.
    outer: vertices of the outer cycle, counterclockwise.
    """

    __slots__ = ("colors", "adj", "rotation", "outer")

    def __init__(self, colors, rotation, outer):
        self.colors = dict(colors)
        self.rotation = {v: tuple(r) for v, r in rotation.items()}
        self.outer = tuple(outer)

    @property
    def num_vertices(self):
        return len(self.colors)

    @property
    def num_edges(self):
        return sum(len(r) for r in self.rotation.values()) // 2

    @property
    def cycles(self):
        return self.num_edges - self.num_vertices + 1

    def degree(self, v):
        return len(self.rotation[v])

    def bounded_faces(self):
        darts = [(u, v) for u in self.rotation for v in self.rotation[u]]
        seen = set()
        faces = []
        for d in sorted(darts):
            if d in seen:
                continue
            cyc = []
            x = d
            while x not in seen:
                seen.add(x)
                cyc.append(x)
                u, v = x
                r = self.rotation[v]
                x = (v, r[(r.index(u) - 1) % len(r)])
            faces.append(cyc)
        outer_set = set()
        L = len(self.outer)
        for t in range(L):
            # darts of the outer face run against the counterclockwise order
            outer_set.add((self.outer[(t + 1) % L], self.outer[t]))
        inner = [f for f in faces if not (set(f) & outer_set)]
        return inner

    def key(self):
        best = None
        for v in self.rotation:
            for w in self.rotation[v]:
                s = self._serialize(v, w)
                if best is None or s < best:
                    best = s
        return best

    def _serialize(self, root, first):
        label = {root: 0}
        start = {root: first}
        order = [root]
        q = deque([root])
        while q:
            v = q.popleft()
            r = self.rotation[v]
            j = r.index(start[v])
            for w in r[j:] + r[:j]:
                if w not in label:
                    label[w] = len(label)
                    start[w] = v
                    order.append(w)
                    q.append(w)
        out = []
        for v in order:
            r = self.rotation[v]
            j = r.index(start[v])
            out.append(tuple(label[w] for w in r[j:] + r[:j]))
        return tuple(out)

    def has_adjacent_bivalent_pair(self):
        L = len(self.outer)
        for t in range(L):
            a, b = self.outer[t], self.outer[(t + 1) % L]
            if self.degree(a) == 2 and self.degree(b) == 2:
                return True
        return False


def _polygon(m):
    colors = {i: (BLACK if i % 2 == 0 else WHITE) for i in range(m)}
    rot = {i: ((i + 1) % m, (i - 1) % m) for i in range(m)}
    return CycleInterior(colors, rot, list(range(m)))


def _add_ear(G, i, j, L):
    """
    Attach a path of L edges outside the outer cycle from outer[i] to
    outer[j], enclosing the counterclockwise segment outer[i..j].  Returns
    None if the result violates the constraints.
    """
    out = list(G.outer)
    m = len(out)
    u, v = out[i], out[j]
    seg = [out[(i + t) % m] for t in range((j - i) % m + 1)]
    inner = seg[1:-1]
    if G.degree(u) != 2 or G.degree(v) != 2:
        return None
    if any(G.degree(x) != 3 for x in inner):
        return None
    face_len = len(seg) - 1 + L
    if face_len < 6 or face_len % 2:
        return None
    # colors along the path must alternate and match at v
    if (L % 2 == 0) != (G.colors[u] == G.colors[v]):
        return None
    if L == 1 and v in G.rotation[u]:
        return None
    colors = dict(G.colors)
    rot = {x: list(r) for x, r in G.rotation.items()}
    nxt = max(colors) + 1
    path = [u]
    for t in range(L - 1):
        colors[nxt] = _opp(colors[path[-1]])
        path.append(nxt)
        nxt += 1
    path.append(v)
    for x in path[1:-1]:
        rot[x] = []
    # insert new edge at u and v into the outer angle
    def insert(x, new):
        k = out.index(x)
        nx, pv = out[(k + 1) % m], out[(k - 1) % m]
        rot[x] = [nx, pv, new]
    insert(u, path[1])
    insert(v, path[-2])
    for t in range(1, len(path) - 1):
        x = path[t]
        # outer traversal after the ear: ... u, p1, ..., v ... (reversed path
        # direction keeps interior on the left)
        rot[x] = [path[t - 1], path[t + 1]]
    # new outer cycle: replace seg interior by the path, walking v..u back
    rest = [out[(j + t) % m] for t in range(1, (i - j) % m)]
    # outer is counterclockwise with interior on the left; after the ear the
    # cycle runs u -> (path) -> v -> rest -> u with the path outside.
    new_outer = [u] + path[1:-1] + [v] + rest
    H = CycleInterior(colors, rot, new_outer)
    for x in path[1:-1]:
        # orient degree-2 path vertices as (next, prev) along the new outer
        k = new_outer.index(x)
        H.rotation[x] = (new_outer[(k + 1) % len(new_outer)],
                         new_outer[(k - 1) % len(new_outer)])
    # outer rotations for degree-2 vertices must list (next, prev)
    for k, x in enumerate(new_outer):
        if len(H.rotation[x]) == 2:
            H.rotation[x] = (new_outer[(k + 1) % len(new_outer)],
                             new_outer[(k - 1) % len(new_outer)])
    if any(len(f) < 6 or len(f) % 2 for f in H.bounded_faces()):
        return None
    return H


def enumerate_cycle_interiors(max_vertices=16, max_cycles=4):
    """
    All connected all-cycle web interiors with at most max_vertices
    vertices and at most max_cycles cycles, up to orientation-preserving
    isomorphism, grown by attaching outer ears to a polygon.
    """
    level = {}
    for m in range(6, max_vertices + 1, 2):
        P = _polygon(m)
        level[P.key()] = P
    found = dict(level)
    for _ in range(max_cycles - 1):
        new = {}
        for G in level.values():
            m = len(G.outer)
            for i in range(m):
                for j in range(m):
                    if i == j:
                        continue
                    for L in range(1, max_vertices - G.num_vertices + 2):
                        H = _add_ear(G, i, j, L)
                        if H is None or H.num_vertices > max_vertices:
                            continue
                        k = H.key()
                        if k not in found:
                            found[k] = H
                            new[k] = H
        level = new
    return [found[k] for k in sorted(found)]


def minimum_vertices_by_cycles(max_vertices=16, max_cycles=4):
    best = {}
    for G in enumerate_cycle_interiors(max_vertices, max_cycles):
        c = G.cycles
        best[c] = min(best.get(c, 10 ** 9), G.num_vertices)
    return dict(sorted(best.items()))


# ---------------------------------------------------------------------------
# two-row Khovanov-Kuperberg bijection
# ---------------------------------------------------------------------------
def check_two_row(top, bottom):
    top, bottom = tuple(top), tuple(bottom)
    allv = sorted(top + bottom)
    if len(top) != len(bottom) or allv != list(range(1, len(allv) + 1)):
        raise InvalidTableau("rows must partition 1..2m into two rows of length m")
    if list(top) != sorted(top) or list(bottom) != sorted(bottom):
        raise InvalidTableau("rows must increase")
    for a, b in zip(bottom, top):
        if a >= b:
            raise InvalidTableau("column (%d over %d) does not increase" % (b, a))
    return top, bottom


def kk_two_row(top, bottom):
    """
    Read the top row left to right; match each entry j to the largest
    unmatched entry i < j of the bottom row.
    """
    top, bottom = check_two_row(top, bottom)
    free = list(bottom)
    pairs = []
    for j in top:
        cands = [i for i in free if i < j]
        if not cands:
            raise InvalidTableau("no unmatched smaller entry for %d" % j)
        i = max(cands)
        free.remove(i)
        pairs.append((i, j))
    return NonCrossingMatching(tuple(pairs))


def standard_two_row_tableaux(m):
    """All standard tableaux with two rows of length m, as (top, bottom)."""
    out = []
    N = 2 * m

    def rec(v, top, bottom):
        if v > N:
            out.append((tuple(top), tuple(bottom)))
            return
        if len(bottom) < m:
            rec(v + 1, top, bottom + [v])
        if len(top) < len(bottom):
            rec(v + 1, top + [v], bottom)
    rec(1, [], [])
    return out
