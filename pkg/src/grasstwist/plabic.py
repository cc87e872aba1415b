"""
Plabic graphs embedded in a disk.

A graph is stored as a rotation system: every vertex lists its incident edge
ids in counterclockwise order.  Boundary vertices are black, univalent and
carry labels 1..n in clockwise order.  Faces, trips and face labels are
derived from the rotation system and never stored.

To trace faces, the boundary circle is added as n pseudo-edges ("arcs");
arc i joins boundary vertex i to boundary vertex i+1.  At boundary vertex i
the counterclockwise order is (inward edge, arc i, arc i-1).  Faces are
traced so that each face lies to the LEFT of its darts; the outer region
(outside the disk) is the cycle made of the darts i -> i+1.
"""

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
import math

from .errors import IllegalMove, InvalidGraph, NotReduced

BLACK = "black"
WHITE = "white"


def _other(color):
    return WHITE if color == BLACK else BLACK


def _arc(i):
    return ("arc", i)


@dataclass(frozen=True)
class Face:
    id: int
    darts: tuple          # (edge, tail vertex) pairs in traversal order
    vertices: tuple       # tails of darts, cyclic order
    edges: tuple          # real edges only (no arcs), in traversal order
    boundary_arcs: tuple  # arc labels i for arcs on this face

    @property
    def is_boundary(self):
        return bool(self.boundary_arcs)

    def __len__(self):
        return len(self.darts)


@dataclass(frozen=True)
class Trip:
    source: int
    target: int
    darts: tuple   # (edge, tail vertex) pairs, boundary to boundary


class PlabicGraph:
    """
    k, n: the Grassmannian.  colors: vertex -> 'black'/'white'.
    boundary: vertex -> label.  edges: edge id -> (u, v).
    rotation: vertex -> tuple of incident edge ids, counterclockwise.
    """

    def __init__(self, k, n, colors, boundary, edges, rotation, name=None):
        self.k = k
        self.n = n
        self.colors = dict(colors)
        self.boundary = dict(boundary)
        self.edges = {e: tuple(uv) for e, uv in edges.items()}
        self.rotation = {v: tuple(r) for v, r in rotation.items()}
        self.name = name
        self._check_structure()

    # -- structure --------------------------------------------------------
    def _check_structure(self):
        if set(self.colors) != set(self.rotation):
            raise InvalidGraph("colors and rotation disagree on the vertex set")
        labels = sorted(self.boundary.values())
        if labels != list(range(1, self.n + 1)):
            raise InvalidGraph("boundary labels must be exactly 1..%d" % self.n)
        for v, rot in self.rotation.items():
            for e in rot:
                if e not in self.edges or v not in self.edges[e]:
                    raise InvalidGraph("rotation of %r lists foreign edge %r" % (v, e))
            if len(set(rot)) != len(rot):
                raise InvalidGraph("rotation of %r repeats an edge" % (v,))
        for e, (u, v) in self.edges.items():
            if u == v:
                raise InvalidGraph("loop edge %r" % (e,))
            if e not in self.rotation[u] or e not in self.rotation[v]:
                raise InvalidGraph("edge %r missing from a rotation" % (e,))
        for v, lab in self.boundary.items():
            if self.colors[v] != BLACK:
                raise InvalidGraph("boundary vertex %d is not black" % lab)
            if len(self.rotation[v]) != 1:
                raise InvalidGraph("boundary vertex %d is not univalent" % lab)

    def validate(self):
        """Full check of the invariants; returns self or raises InvalidGraph."""
        for e, (u, v) in self.edges.items():
            if self.colors[u] == self.colors[v]:
                raise InvalidGraph("edge %r joins two %s vertices" % (e, self.colors[u]))
        # connectivity of every internal vertex to the boundary
        seen = set(self.boundary)
        stack = list(self.boundary)
        while stack:
            v = stack.pop()
            for w in self.neighbors(v):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != len(self.colors):
            raise InvalidGraph("some internal vertex is cut off from the boundary")
        # Euler characteristic of the sphere, boundary arcs included
        V = len(self.colors)
        E = len(self.edges) + self.n
        Fc = len(self.faces) + 1
        if V - E + Fc != 2:
            raise InvalidGraph("rotation system is not a disk embedding (V-E+F=%d)"
                               % (V - E + Fc))
        return self

    def euler_ok(self):
        V = len(self.colors)
        return V - (len(self.edges) + self.n) + len(self.faces) + 1 == 2

    @property
    def internal_vertices(self):
        return [v for v in sorted(self.colors) if v not in self.boundary]

    @cached_property
    def label_vertex(self):
        return {lab: v for v, lab in self.boundary.items()}

    def other_end(self, e, v):
        a, b = self.edges[e]
        return b if a == v else a

    def neighbors(self, v):
        return [self.other_end(e, v) for e in self.rotation[v]]

    def degree(self, v):
        return len(self.rotation[v])

    # -- augmented rotation (with boundary arcs) --------------------------
    def _aug_rotation(self, v):
        if v in self.boundary:
            i = self.boundary[v]
            prev = (i - 2) % self.n + 1
            return (self.rotation[v][0], _arc(i), _arc(prev))
        return self.rotation[v]

    def _aug_other(self, e, v):
        if isinstance(e, tuple) and e[0] == "arc":
            i = e[1]
            j = i % self.n + 1
            a, b = self.label_vertex[i], self.label_vertex[j]
            return b if v == a else a
        return self.other_end(e, v)

    def _next_dart_face(self, dart):
        """Successor of a dart in the face on its left."""
        e, u = dart
        v = self._aug_other(e, u)
        rot = self._aug_rotation(v)
        j = rot.index(e)
        return (rot[(j - 1) % len(rot)], v)

    # -- faces ------------------------------------------------------------
    @cached_property
    def _face_cycles(self):
        darts = []
        for e, (u, v) in self.edges.items():
            darts.append((e, u))
            darts.append((e, v))
        for i in range(1, self.n + 1):
            a = self.label_vertex[i]
            b = self.label_vertex[i % self.n + 1]
            darts.append((_arc(i), a))
            darts.append((_arc(i), b))
        seen = set()
        cycles = []
        for d in sorted(darts, key=_dart_key):
            if d in seen:
                continue
            cyc = []
            x = d
            while x not in seen:
                seen.add(x)
                cyc.append(x)
                x = self._next_dart_face(x)
            if x != d:
                raise InvalidGraph("face tracing did not close up")
            cycles.append(tuple(cyc))
        return cycles

    @cached_property
    def faces(self):
        """Faces of the disk (the outer region excluded), deterministic order."""
        outer_dart = (_arc(1), self.label_vertex[1])
        out = []
        for cyc in self._face_cycles:
            if outer_dart in cyc:
                continue
            # rotate so that the cycle starts at its least dart
            m = min(range(len(cyc)), key=lambda t: _dart_key(cyc[t]))
            cyc = cyc[m:] + cyc[:m]
            out.append(cyc)
        out.sort(key=lambda c: _dart_key(c[0]))
        faces = []
        for fid, cyc in enumerate(out):
            arcs = tuple(e[1] for e, _ in cyc if isinstance(e, tuple))
            edges = tuple(e for e, _ in cyc if not isinstance(e, tuple))
            faces.append(Face(fid, cyc, tuple(u for _, u in cyc), edges, arcs))
        return faces

    @cached_property
    def outer_cycle(self):
        outer_dart = (_arc(1), self.label_vertex[1])
        for cyc in self._face_cycles:
            if outer_dart in cyc:
                return cyc
        raise InvalidGraph("no outer region")

    @cached_property
    def face_of_dart(self):
        out = {}
        for f in self.faces:
            for d in f.darts:
                out[d] = f.id
        return out

    @cached_property
    def edge_faces(self):
        """edge -> (face left of dart from u, face left of dart from v)."""
        out = {}
        for e, (u, v) in self.edges.items():
            out[e] = (self.face_of_dart.get((e, u)), self.face_of_dart.get((e, v)))
        return out

    # -- trips --------------------------------------------------------------
    def trip_from(self, i):
        """Trip starting at boundary vertex i."""
        start = self.label_vertex[i]
        e = self.rotation[start][0]
        darts = [(e, start)]
        v = self.other_end(e, start)
        steps = 0
        limit = 4 * len(self.edges) + 4
        while v not in self.boundary:
            rot = self.rotation[v]
            j = rot.index(e)
            if self.colors[v] == BLACK:
                e = rot[(j + 1) % len(rot)]   # maximally right
            else:
                e = rot[(j - 1) % len(rot)]   # maximally left
            darts.append((e, v))
            v = self.other_end(e, v)
            steps += 1
            if steps > limit:
                raise InvalidGraph("trip from %d does not terminate" % i)
        return Trip(i, self.boundary[v], tuple(darts))

    @cached_property
    def trips(self):
        return {i: self.trip_from(i) for i in range(1, self.n + 1)}

    def trip_permutation(self):
        return {i: t.target for i, t in self.trips.items()}

    def _left_region(self, trip):
        """Faces lying to the left of a trip (flood fill in the dual)."""
        on_trip = {e for e, _ in trip.darts}
        start = {self.face_of_dart[d] for d in trip.darts if d in self.face_of_dart}
        region = set(start)
        stack = list(start)
        adj = self._dual_adjacency
        while stack:
            f = stack.pop()
            for e, g in adj[f]:
                if e in on_trip or g in region:
                    continue
                region.add(g)
                stack.append(g)
        return region

    @cached_property
    def _dual_adjacency(self):
        adj = {f.id: [] for f in self.faces}
        for e, (fa, fb) in self.edge_faces.items():
            if fa is not None and fb is not None and fa != fb:
                adj[fa].append((e, fb))
                adj[fb].append((e, fa))
        return adj

    @cached_property
    def face_labels(self):
        """face id -> sorted tuple; raises NotReduced on collisions."""
        labels = {f.id: [] for f in self.faces}
        for i in range(1, self.n + 1):
            t = self.trips[i]
            # the trip ending at label t.target
            for f in self._left_region(t):
                labels[f].append(t.target)
        out = {f: tuple(sorted(v)) for f, v in labels.items()}
        sizes = {len(v) for v in out.values()}
        if len(sizes) != 1:
            raise NotReduced("face labels have unequal sizes %s" % sorted(sizes))
        if len(set(out.values())) != len(out):
            raise NotReduced("two faces share a label")
        if sizes != {self.k}:
            raise NotReduced("face labels have size %d, expected k=%d"
                             % (sizes.pop(), self.k))
        return out

    def face_by_label(self, J):
        J = tuple(sorted(J))
        for f, lab in self.face_labels.items():
            if lab == J:
                return self.faces[f]
        raise KeyError(J)

    def label_set(self):
        return set(self.face_labels.values())

    def mutable_labels(self):
        return sorted(self.face_labels[f.id] for f in self.faces if not f.is_boundary)

    # -- serialization ----------------------------------------------------
    def to_dict(self):
        verts = []
        for v in sorted(self.colors):
            d = {"id": v, "color": self.colors[v]}
            if v in self.boundary:
                d["boundary_label"] = self.boundary[v]
            verts.append(d)
        return {
            "k": self.k,
            "n": self.n,
            "name": self.name,
            "vertices": verts,
            "edges": {str(e): list(uv) for e, uv in sorted(self.edges.items())},
            "rotations": {str(v): list(self.rotation[v]) for v in sorted(self.rotation)},
        }

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, d):
        colors, boundary = {}, {}
        for item in d["vertices"]:
            v = int(item["id"])
            colors[v] = item["color"]
            if item.get("boundary_label") is not None:
                boundary[v] = int(item["boundary_label"])
        rotation = {int(v): [int(e) for e in r] for v, r in d["rotations"].items()}
        if "edges" in d:
            edges = {int(e): tuple(int(x) for x in uv) for e, uv in d["edges"].items()}
        else:
            # edges implied by the rotations: each edge id appears at two vertices
            ends = {}
            for v, r in rotation.items():
                for e in r:
                    ends.setdefault(e, []).append(v)
            edges = {}
            for e, vs in ends.items():
                if len(vs) != 2:
                    raise InvalidGraph("edge %r appears at %d vertices" % (e, len(vs)))
                edges[e] = tuple(vs)
        return cls(int(d["k"]), int(d["n"]), colors, boundary, edges, rotation,
                   name=d.get("name"))

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            return cls.from_json(fh.read())

    def save(self, path):
        with open(path, "w") as fh:
            fh.write(self.to_json(indent=1))
            fh.write("\n")

    def __repr__(self):
        return "PlabicGraph(k=%d, n=%d, V=%d, E=%d)" % (
            self.k, self.n, len(self.colors), len(self.edges))


def _dart_key(d):
    e, u = d
    if isinstance(e, tuple):
        return (1, e[1], u)
    return (0, e, u)


# ---------------------------------------------------------------------------
# Mutable builder used by the constructions and by square moves.

class _Builder:
    def __init__(self, k, n):
        self.k, self.n = k, n
        self.colors = {}
        self.boundary = {}
        self.edges = {}
        self.rotation = {}
        self._next_v = 0
        self._next_e = 0

    @classmethod
    def from_graph(cls, G):
        b = cls(G.k, G.n)
        b.colors = dict(G.colors)
        b.boundary = dict(G.boundary)
        b.edges = dict(G.edges)
        b.rotation = {v: list(r) for v, r in G.rotation.items()}
        b._next_v = max(G.colors) + 1
        b._next_e = max(G.edges) + 1
        return b

    def add_vertex(self, color, label=None):
        v = self._next_v
        self._next_v += 1
        self.colors[v] = color
        self.rotation[v] = []
        if label is not None:
            self.boundary[v] = label
        return v

    def add_edge(self, u, v):
        e = self._next_e
        self._next_e += 1
        self.edges[e] = (u, v)
        return e

    def other(self, e, v):
        a, b = self.edges[e]
        return b if a == v else a

    def merge(self, keep, e):
        """Contract edge e = (keep, gone); gone's other edges splice into keep."""
        gone = self.other(e, keep)
        rk = self.rotation[keep]
        rg = self.rotation[gone]
        j = rg.index(e)
        tail = rg[j + 1:] + rg[:j]
        i = rk.index(e)
        self.rotation[keep] = rk[:i] + tail + rk[i + 1:]
        for f in tail:
            a, b = self.edges[f]
            self.edges[f] = (keep if a == gone else a, keep if b == gone else b)
        del self.edges[e]
        del self.rotation[gone]
        del self.colors[gone]

    def subdivide(self, e, color):
        """Insert a new bivalent vertex of the given color on edge e."""
        a, b = self.edges[e]
        x = self.add_vertex(color)
        f = self.add_edge(x, b)
        self.edges[e] = (a, x)
        rb = self.rotation[b]
        rb[rb.index(e)] = f
        self.rotation[x] = [e, f]
        return x

    def contract_bivalent(self, protect=()):
        """Contract internal bivalent vertices whose neighbours are internal."""
        changed = True
        while changed:
            changed = False
            for v in sorted(self.rotation):
                if v in self.boundary or v in protect or len(self.rotation[v]) != 2:
                    continue
                e1, e2 = self.rotation[v]
                u1, u2 = self.other(e1, v), self.other(e2, v)
                if u1 == u2 or u1 in self.boundary or u2 in self.boundary:
                    continue
                self.merge(u1, e1)      # v disappears into u1
                self.merge(u1, e2)      # u2 disappears into u1
                changed = True
                break

    def graph(self, name=None):
        # renumber densely for stable files
        vmap = {v: i for i, v in enumerate(sorted(self.colors))}
        emap = {e: i for i, e in enumerate(sorted(self.edges))}
        return PlabicGraph(
            self.k, self.n,
            {vmap[v]: c for v, c in self.colors.items()},
            {vmap[v]: lab for v, lab in self.boundary.items()},
            {emap[e]: (vmap[a], vmap[b]) for e, (a, b) in self.edges.items()},
            {vmap[v]: [emap[e] for e in r] for v, r in self.rotation.items()},
            name=name)


# ---------------------------------------------------------------------------
# Top cell.

def build_top_cell(k, n, shift=None, contract=True):
    """
    Plabic graph of the rectangles seed of the top cell of Gr(k, n).

    The k x (n-k) grid is filled with boxes; box (r, c) becomes a white
    vertex w(r,c) and a black vertex b(r,c) in a honeycomb:
    w(r,c)-b(r,c), b(r,c)-w(r,c+1), w(r,c)-b(r+1,c).  Row r exits east
    through a white vertex to boundary label r; column c exits south from
    w(k,c).  Boundary labels then run clockwise, shifted by `shift`.  Bivalent
    internal vertices are contracted.
    """
    if not 1 <= k < n:
        raise ValueError("need 1 <= k < n")
    if shift is None:
        shift = _default_shift(k, n)
    m = n - k
    B = _Builder(k, n)
    pos = {}
    w, b = {}, {}
    for r in range(1, k + 1):
        for c in range(1, m + 1):
            w[r, c] = B.add_vertex(WHITE)
            pos[w[r, c]] = (2 * c, -2 * r)
            b[r, c] = B.add_vertex(BLACK)
            pos[b[r, c]] = (2 * c + 1, -2 * r)
    pairs = []
    for r in range(1, k + 1):
        for c in range(1, m + 1):
            pairs.append((w[r, c], b[r, c]))
            if c < m:
                pairs.append((b[r, c], w[r, c + 1]))
            if r < k:
                pairs.append((w[r, c], b[r + 1, c]))

    def lab(raw):
        return (raw - 1 + shift) % n + 1

    for r in range(1, k + 1):
        x = B.add_vertex(WHITE)
        pos[x] = (2 * m + 2, -2 * r)
        t = B.add_vertex(BLACK, lab(r))
        pos[t] = (2 * m + 3, -2 * r)
        pairs.append((b[r, m], x))
        pairs.append((x, t))
    for c in range(1, m + 1):
        t = B.add_vertex(BLACK, lab(k + (m + 1 - c)))
        pos[t] = (2 * c + 1, -2 * k - 2)
        pairs.append((w[k, c], t))
    for u, v in pairs:
        B.add_edge(u, v)
    # rotation by angle, counterclockwise
    inc = {v: [] for v in B.colors}
    for e, (u, v) in B.edges.items():
        inc[u].append(e)
        inc[v].append(e)
    for v, es in inc.items():
        x0, y0 = pos[v]

        def ang(e, v=v, x0=x0, y0=y0):
            x1, y1 = pos[B.other(e, v)]
            return math.atan2(y1 - y0, x1 - x0)
        B.rotation[v] = sorted(es, key=ang)
    if contract:
        B.contract_bivalent()
    G = B.graph(name="top-cell-Gr(%d,%d)" % (k, n))
    G.validate()
    return G


# Label rotations reproducing the seeds drawn for Gr(2,5) (mutable faces
# 13, 35) and Gr(3,7) (mutable faces 237, 347, 457, 267, 367, 467).  Any
# shift gives a valid rectangles-seed graph.
_FIGURE_SHIFTS = {(2, 5): 1}


def _default_shift(k, n):
    return _FIGURE_SHIFTS.get((k, n), n - k)


# ---------------------------------------------------------------------------
# Square moves.

def is_square(G, face):
    """A four-sided interior face whose vertices are internal and distinct."""
    if face.is_boundary or len(face.darts) != 4:
        return False
    vs = face.vertices
    return len(set(vs)) == 4 and not any(v in G.boundary for v in vs)


def square_faces(G):
    return [f for f in G.faces if is_square(G, f) and
            all(G.degree(v) >= 3 for v in f.vertices)]


def square_move(G, face):
    """
    Square move at a four-sided face: swap the colors of its four vertices.

    Square vertices of degree > 3 are first split (an M2 move that does not
    change trips or labels) so that each is trivalent; afterwards every leg
    whose ends now share a color is contracted, or subdivided when it ends
    at the boundary.  Returns a new graph.
    """
    if isinstance(face, int):
        face = G.faces[face]
    if not is_square(G, face):
        raise IllegalMove("face %d is not a square" % face.id)
    for v in face.vertices:
        if G.degree(v) < 3:
            raise IllegalMove("square vertex %r is bivalent" % (v,))
    B = _Builder.from_graph(G)
    sq = list(face.vertices)
    sq_edges = set(face.edges)
    legs = {}
    for v in sq:
        rot = B.rotation[v]
        outside = [e for e in rot if e not in sq_edges]
        if len(outside) == 1:
            legs[v] = outside[0]
            continue
        # split v: v keeps its two square edges plus a new edge to t; t is
        # bivalent and leads to v2, which takes the outside edges.
        i = next(t for t in range(len(rot)) if rot[t] not in sq_edges
                 and rot[(t - 1) % len(rot)] in sq_edges)
        ordered = rot[i:] + rot[:i]          # outside edges first
        outs, ins = ordered[:len(outside)], ordered[len(outside):]
        v2 = B.add_vertex(B.colors[v])
        t = B.add_vertex(_other(B.colors[v]))
        for e in outs:
            a, b = B.edges[e]
            B.edges[e] = (v2 if a == v else a, v2 if b == v else b)
        e_vt = B.add_edge(v, t)
        e_tv2 = B.add_edge(t, v2)
        B.rotation[v] = [e_vt] + ins
        B.rotation[t] = [e_vt, e_tv2]
        B.rotation[v2] = [e_tv2] + outs
        legs[v] = e_vt
    for v in sq:
        B.colors[v] = _other(B.colors[v])
    for v in sq:
        e = legs[v]
        y = B.other(e, v)
        if B.colors[y] != B.colors[v]:
            continue
        if y in B.boundary:
            B.subdivide(e, _other(B.colors[v]))
        else:
            B.merge(v, e)
    B.contract_bivalent()
    H = B.graph(name=G.name)
    H.validate()
    return H


def exchange_labels(G, face):
    """
    For a square face labelled Sbd with neighbours Sab, Sbc, Scd, Sad,
    return (old, new, (Sab, Scd), (Sad, Sbc)) with new = Sac.
    """
    if isinstance(face, int):
        face = G.faces[face]
    labels = G.face_labels
    old = set(labels[face.id])
    nbrs = []
    for e, u in face.darts:
        fa, fb = G.edge_faces[e]
        other = fb if fa == face.id else fa
        nbrs.append(set(labels[other]))
    union = set().union(*nbrs)
    S = old.intersection(*nbrs)
    b_d = old - S
    a_c = union - old
    if len(b_d) != 2 or len(a_c) != 2:
        raise IllegalMove("neighbourhood of face %d is not of exchange type" % face.id)
    new = tuple(sorted(S | a_c))
    # pair opposite neighbours
    pairs = [(tuple(sorted(nbrs[0])), tuple(sorted(nbrs[2]))),
             (tuple(sorted(nbrs[1])), tuple(sorted(nbrs[3])))]
    return tuple(sorted(old)), new, pairs[0], pairs[1]


def square_move_class(G, limit=100000, key=None):
    """
    Breadth-first search over graphs reachable by square moves, keyed by the
    set of face labels.  Returns dict label-set -> graph.
    """
    if key is None:
        key = lambda H: frozenset(H.face_labels.values())
    seen = {key(G): G}
    frontier = [G]
    while frontier:
        nxt = []
        for H in frontier:
            for f in square_faces(H):
                K = square_move(H, f)
                kk = key(K)
                if kk not in seen:
                    seen[kk] = K
                    nxt.append(K)
                    if len(seen) > limit:
                        return seen
        frontier = nxt
    return seen


def consecutive(i, k, n):
    return tuple(sorted((i - 1 + t) % n + 1 for t in range(k)))


def all_labels(k, n):
    return list(combinations(range(1, n + 1), k))
