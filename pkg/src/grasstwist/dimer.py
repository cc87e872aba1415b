"""
Single and m-fold dimer configurations on plabic graphs, with face and edge
weights.

A configuration is stored as a MultiDimer: a sorted tuple of
(edge id, multiplicity) pairs plus the fold count m.  A single dimer is the
case m = 1.  Interior vertices are covered exactly m times; boundary vertex
i is covered some number of times c_i, and the boundary condition of the
configuration is the multiset {i^c_i}.
"""

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product

from .laurent import LaurentExpr
from .plabic import BLACK, WHITE


@dataclass(frozen=True, order=True)
class MultiDimer:
    edges: tuple      # sorted ((edge, multiplicity), ...)
    m: int = 1

    @classmethod
    def from_edges(cls, edges, m=1):
        c = Counter(edges)
        return cls(tuple(sorted(c.items())), m)

    def multiplicity(self):
        return dict(self.edges)

    def edge_list(self):
        out = []
        for e, t in self.edges:
            out.extend([e] * t)
        return out

    def __add__(self, other):
        c = Counter(dict(self.edges))
        c.update(dict(other.edges))
        return MultiDimer(tuple(sorted(c.items())), self.m + other.m)

    def serialize(self):
        return " ".join("%d" % e if t == 1 else "%dx%d" % (e, t) for e, t in self.edges)


def Dimer(edges):
    return MultiDimer.from_edges(edges, 1)


class DimerModel:
    """Per-graph data used by enumeration and weights (cached)."""

    def __init__(self, G):
        self.G = G
        self.vertices = sorted(G.colors)
        self.incident = {v: list(G.rotation[v]) for v in self.vertices}

    # -- enumeration ------------------------------------------------------
    def enumerate(self, J=None):
        """
        All single dimers with boundary condition J (a set of labels), or
        with any boundary condition when J is None.  Sorted canonically.
        """
        G = self.G
        counts = {}
        for v, lab in G.boundary.items():
            if J is None:
                counts[v] = None          # 0 or 1
            else:
                counts[v] = 1 if lab in set(J) else 0
        out = [MultiDimer(tuple((e, 1) for e in sorted(es)), 1)
               for es in self._search_single(counts)]
        out.sort()
        return out

    def _search_single(self, bcounts):
        G = self.G
        need = {}
        for v in self.vertices:
            if v in G.boundary:
                need[v] = bcounts[v]
            else:
                need[v] = 1
        covered = set()
        chosen = []
        results = []

        def available(v):
            res = []
            for e in self.incident[v]:
                w = G.other_end(e, v)
                if w in covered:
                    continue
                if need[w] == 0:
                    continue
                res.append(e)
            return res

        todo = [v for v in self.vertices if need[v] == 1]

        def rec():
            best, best_opts = None, None
            for v in todo:
                if v in covered:
                    continue
                opts = available(v)
                if best is None or len(opts) < len(best_opts):
                    best, best_opts = v, opts
                    if not opts:
                        break
            if best is None:
                results.append(tuple(chosen))
                return
            for e in best_opts:
                w = G.other_end(e, best)
                covered.add(best)
                covered.add(w)
                chosen.append(e)
                rec()
                chosen.pop()
                covered.discard(best)
                covered.discard(w)

        # boundary vertices with need None are optional: never forced, but
        # may be used when an interior neighbour chooses their edge
        rec()
        return results

    def enumerate_multi(self, m, boundary_counts):
        """
        All m-fold dimers whose boundary vertex i is covered exactly
        boundary_counts.get(i, 0) times.  Direct search over edge
        multiplicities; returns a sorted list.
        """
        G = self.G
        residual = {}
        for v in self.vertices:
            if v in G.boundary:
                residual[v] = boundary_counts.get(G.boundary[v], 0)
            else:
                residual[v] = m
        edges = sorted(G.edges)
        decided = {}
        results = []

        def open_edges(v):
            return [e for e in self.incident[v] if e not in decided]

        def feasible(v):
            cap = 0
            for e in open_edges(v):
                w = G.other_end(e, v)
                cap += residual[w]
            return cap >= residual[v]

        def rec():
            # choose the vertex with positive residual and fewest open edges
            best, best_open = None, None
            for v in self.vertices:
                r = residual[v]
                oe = open_edges(v)
                if r == 0:
                    continue
                if not oe:
                    return
                if best is None or len(oe) < len(best_open):
                    best, best_open = v, oe
            if best is None:
                # all residuals zero; remaining open edges get multiplicity 0
                results.append(tuple(sorted((e, t) for e, t in decided.items() if t)))
                return
            e = best_open[0]
            w = G.other_end(e, best)
            hi = min(residual[best], residual[w])
            lo = 0 if len(best_open) > 1 else residual[best]
            for t in range(hi, lo - 1, -1):
                decided[e] = t
                residual[best] -= t
                residual[w] -= t
                if feasible(best) and feasible(w):
                    rec()
                residual[best] += t
                residual[w] += t
                del decided[e]

        rec()
        # dedupe (different decision orders cannot coincide, but be safe)
        out = sorted(set(MultiDimer(r, m) for r in results))
        return out

    def boundary_of(self, D):
        """Multiset boundary condition as a Counter label -> coverage."""
        G = self.G
        c = Counter()
        for e, t in D.edges:
            for v in G.edges[e]:
                if v in G.boundary:
                    c[G.boundary[v]] += t
        return c

    def is_valid(self, D):
        G = self.G
        cov = Counter()
        for e, t in D.edges:
            a, b = G.edges[e]
            cov[a] += t
            cov[b] += t
        for v in self.vertices:
            if v in G.boundary:
                if cov[v] > D.m:
                    return False
            elif cov[v] != D.m:
                return False
        return True

    # -- weights ----------------------------------------------------------
    @cached_property
    def face_data(self):
        """
        For each face: its label, W_f, and for each edge the number of times
        it counts towards D_f (zero for boundary-adjacent edges of outer faces).
        """
        G = self.G
        labels = G.face_labels
        data = []
        for f in G.faces:
            W = sum(1 for v in f.vertices if G.colors[v] == WHITE)
            border = Counter()
            for e in f.edges:
                a, b = G.edges[e]
                if f.is_boundary and (a in G.boundary or b in G.boundary):
                    continue
                border[e] += 1
            data.append((labels[f.id], W, border, f.is_boundary))
        return data

    def face_exponents(self, D):
        """Dict label -> exponent of wt_f(D) = prod I_f^{m W_f - D_f - m}."""
        m = D.m
        mult = dict(D.edges)
        out = {}
        for label, W, border, _ in self.face_data:
            Df = sum(cnt * mult.get(e, 0) for e, cnt in border.items())
            x = m * W - Df - m
            if x:
                out[label] = out.get(label, 0) + x
        return out

    def face_weight(self, D):
        return LaurentExpr.monomial(self.face_exponents(D))

    def face_weight_value(self, D, values, F):
        """wt_f(D) evaluated directly at a dict of Pluecker values."""
        r = F.one
        for J, x in self.face_exponents(D).items():
            r = F.mul(r, F.pow(values[J], x))
        return r

    @cached_property
    def edge_weights(self):
        """Edge -> LaurentExpr per the black-endpoint rule."""
        G = self.G
        labels = G.face_labels
        fod = G.face_of_dart
        out = {}
        for e, (a, b) in G.edges.items():
            black = a if G.colors[a] == BLACK else b
            num = {}
            darts = [(x, black) for x in G._aug_rotation(black)]
            for d in darts:
                f = fod.get(d)
                if f is None:
                    continue
                J = labels[f]
                num[J] = num.get(J, 0) + 1
            fa, fb = G.edge_faces[e]
            for f in (fa, fb):
                J = labels[f]
                num[J] = num.get(J, 0) - 1
            out[e] = LaurentExpr.monomial({J: x for J, x in num.items() if x})
        return out

    def edge_weight(self, D):
        r = LaurentExpr.constant(1)
        w = self.edge_weights
        for e, t in D.edges:
            r = r * (w[e] ** t)
        return r

    def translate_check(self, D):
        """wt_e(D) / (prod_inner Delta_{I_f})^m == wt_f(D), symbolically."""
        inner = {}
        for label, _, _, is_b in self.face_data:
            if not is_b:
                inner[label] = D.m
        lhs = self.edge_weight(D).div_by_monomial(LaurentExpr.monomial(inner))
        return lhs == self.face_weight(D)

    def twist_partition(self, J):
        total = LaurentExpr()
        for D in self.enumerate(J):
            total = total + self.face_weight(D)
        return total

    # -- double dimers ----------------------------------------------------
    def double_dimer_structure(self, D):
        """
        Decompose a double dimer: returns (pairs, cycles, doubled) where
        pairs is the sorted list of boundary label pairs joined by paths.
        """
        G = self.G
        single = [e for e, t in D.edges if t == 1]
        doubled = [e for e, t in D.edges if t == 2]
        adj = {}
        for e in single:
            a, b = G.edges[e]
            adj.setdefault(a, []).append((e, b))
            adj.setdefault(b, []).append((e, a))
        seen_e = set()
        pairs = []
        for v, lab in sorted(G.boundary.items(), key=lambda x: x[1]):
            if v not in adj or adj[v][0][0] in seen_e:
                continue
            prev_e, cur = adj[v][0]
            seen_e.add(prev_e)
            while cur not in G.boundary:
                nxt = [x for x in adj[cur] if x[0] != prev_e]
                prev_e, cur = nxt[0]
                seen_e.add(prev_e)
            pairs.append(tuple(sorted((lab, G.boundary[cur]))))
        cycles = 0
        for e in single:
            if e in seen_e:
                continue
            cycles += 1
            stack = [e]
            while stack:
                x = stack.pop()
                if x in seen_e:
                    continue
                seen_e.add(x)
                for v in G.edges[x]:
                    for y, _ in adj.get(v, []):
                        if y not in seen_e:
                            stack.append(y)
        return sorted(pairs), cycles, doubled

    def overlay_counts(self, boundary_sets):
        """
        Overlay one single dimer for each boundary set; returns a Counter
        MultiDimer -> number of ordered tuples producing it.
        """
        lists = [self.enumerate(J) for J in boundary_sets]
        m = len(lists)
        out = Counter()
        for combo in product(*lists):
            c = Counter()
            for D in combo:
                for e, _ in D.edges:
                    c[e] += 1
            out[MultiDimer(tuple(sorted(c.items())), m)] += 1
        return out


def enumerate_dimers(G, J):
    return DimerModel(G).enumerate(J)


def face_weight(G, D, m=None):
    if m is not None and m != D.m:
        D = MultiDimer(D.edges, m)
    return DimerModel(G).face_weight(D)


def edge_weight_from_faces(G, e):
    """wt(e): labels of the faces around e's black endpoint over the two faces along e."""
    return DimerModel(G).edge_weights[e]


def translate_check(G, D, m=None):
    if m is not None and m != D.m:
        D = MultiDimer(D.edges, m)
    return DimerModel(G).translate_check(D)


def twist_partition(G, J):
    return DimerModel(G).twist_partition(J)


def boundary_measurement_check(G, F, rng, weights=None, zero_fraction=0.0):
    """
    Put (random) weights on the edges, define Delta_J as the sum over
    D in D_J(G) of the product of edge weights, and test every three-term
    Pluecker relation  D_{Sac} D_{Sbd} = D_{Sab} D_{Scd} + D_{Sad} D_{Sbc}.
    Returns (ok, witness).
    """
    model = DimerModel(G)
    if weights is None:
        weights = {}
        for e in sorted(G.edges):
            if zero_fraction and rng.random() < zero_fraction:
                weights[e] = F.zero
            else:
                weights[e] = F.random(rng)
    k, n = G.k, G.n
    delta = {}
    for J in combinations(range(1, n + 1), k):
        s = F.zero
        for D in model.enumerate(J):
            s = F.add(s, F.prod(weights[e] for e, _ in D.edges))
        delta[J] = s
    return plucker_relations_hold(delta, k, n, F)


def plucker_relations_hold(delta, k, n, F):
    """Three-term relations among sorted minors; returns (ok, witness)."""
    S_size = k - 2
    ground = range(1, n + 1)
    for S in combinations(ground, S_size):
        rest = [x for x in ground if x not in S]
        for a, b, c, d in combinations(rest, 4):
            def D(*x):
                return delta[tuple(sorted(S + x))]
            lhs = F.mul(D(a, c), D(b, d))
            rhs = F.add(F.mul(D(a, b), D(c, d)), F.mul(D(a, d), D(b, c)))
            if lhs != rhs:
                return False, (S, (a, b, c, d))
    return True, None
