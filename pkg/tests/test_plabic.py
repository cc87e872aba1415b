import json

import pytest

from grasstwist.algebra import random_point
from grasstwist.errors import IllegalMove, InvalidGraph, NotReduced
from grasstwist.harness import load_graph
from grasstwist.plabic import (PlabicGraph, build_top_cell, exchange_labels, square_faces,
                               square_move)


def _consecutive(i, k, n):
    return tuple(sorted((i - 1 + t) % n + 1 for t in range(k)))


@pytest.mark.parametrize("k,n", [(2, 5), (3, 6), (3, 7), (3, 8), (3, 9), (4, 8)])
def test_top_cell_properties(k, n):
    G = build_top_cell(k, n)
    G.validate()
    assert G.euler_ok()
    assert G.trip_permutation() == {i: (i + k - 1) % n + 1 for i in range(1, n + 1)}
    labels = list(G.face_labels.values())
    assert len(labels) == len(set(labels)) == k * (n - k) + 1
    assert all(len(J) == k for J in labels)
    for (a, b) in G.edges.values():
        assert G.colors[a] != G.colors[b]
    assert all(G.colors[v] == "black" and G.degree(v) == 1 for v in G.boundary)


def test_gr25_labels():
    G = build_top_cell(2, 5)
    assert set(G.face_labels.values()) == {(1, 2), (2, 3), (3, 4), (4, 5), (1, 5), (1, 3), (3, 5)}


def test_gr36_boundary_faces():
    G = build_top_cell(3, 6)
    got = {G.face_labels[f.id] for f in G.faces if f.is_boundary}
    assert got == {(1, 2, 3), (2, 3, 4), (3, 4, 5), (4, 5, 6), (1, 5, 6), (1, 2, 6)}


@pytest.mark.parametrize("n", [6, 7, 8])
def test_boundary_face_between_arcs(n):
    G = build_top_cell(3, n)
    for f in G.faces:
        if not f.is_boundary:
            continue
        a, b = sorted(G.boundary[v] for v in f.vertices if v in G.boundary)
        i = 1 if (a, b) == (1, n) else b
        assert G.face_labels[f.id] == _consecutive(i, 3, n)


def test_square_move_exchange_relation(F, rng):
    G = build_top_cell(3, 7)
    M = random_point(3, 7, F, rng)
    D = M.minors()
    for f in square_faces(G):
        old, new, (p1, p2), (q1, q2) = exchange_labels(G, f)
        H = square_move(G, f)
        assert set(H.face_labels.values()) == (set(G.face_labels.values()) - {old}) | {new}
        assert F.mul(D[new], D[old]) == F.add(F.mul(D[p1], D[p2]), F.mul(D[q1], D[q2]))
        assert H.trip_permutation() == G.trip_permutation()


def test_square_move_involution():
    G = build_top_cell(3, 7)
    for f in square_faces(G):
        _, new, _, _ = exchange_labels(G, f)
        H = square_move(G, f)
        K = square_move(H, H.face_by_label(new))
        assert set(K.face_labels.values()) == set(G.face_labels.values())


def test_square_move_rejects_non_square():
    G = build_top_cell(3, 7)
    squares = {f.id for f in square_faces(G)}
    bad = next(f for f in G.faces if f.id not in squares)
    with pytest.raises(IllegalMove):
        square_move(G, bad)


def test_json_roundtrip(tmp_path):
    G = build_top_cell(3, 6)
    H = PlabicGraph.from_json(G.to_json())
    assert H.face_labels == G.face_labels
    p = tmp_path / "g.json"
    G.save(p)
    assert PlabicGraph.load(p).trip_permutation() == G.trip_permutation()


def test_fixture_graphs():
    G = load_graph("gr37")
    assert G.trip_permutation() == {i: (i + 2) % 7 + 1 for i in range(1, 8)}
    H = load_graph("fixtures/gr38_appendix")
    assert set(H.mutable_labels()) == {(1, 2, 4), (1, 6, 8), (2, 4, 5), (2, 4, 6), (2, 4, 8),
                                       (2, 5, 6), (2, 6, 8), (5, 6, 8)}


def test_white_boundary_rejected():
    d = build_top_cell(3, 6).to_dict()
    for v in d["vertices"]:
        if v.get("boundary_label") == 1:
            v["color"] = "white"
    with pytest.raises((InvalidGraph, NotReduced)):
        PlabicGraph.from_json(json.dumps(d)).validate()


def test_not_reduced_detected():
    # doubling an internal edge creates a bigon face whose label collides
    G = build_top_cell(3, 6)
    d = G.to_dict()
    eid, (a, b) = next((e, ab) for e, ab in sorted(d["edges"].items(), key=lambda x: int(x[0]))
                       if not set(ab) & set(G.boundary))
    new = max(int(x) for x in d["edges"]) + 1
    d["edges"][str(new)] = [a, b]
    ra, rb = d["rotations"][str(a)], d["rotations"][str(b)]
    ra.insert(ra.index(int(eid)) + 1, new)
    rb.insert(rb.index(int(eid)), new)
    H = PlabicGraph.from_json(json.dumps(d))
    with pytest.raises(NotReduced):
        H.face_labels
