from itertools import combinations

import networkx as nx
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sidedisks.gen import paper_pentagon, regular_approx
from sidedisks.geom import GeometryError
from sidedisks.graph import (
    BRUTE_FORCE_MAX_N, ChordDiagram, ConflictGraph, IntersectGraph, bipartite, brute_force_planar, build_graph,
    chords_cross, chords_of, conflict_graph, cycle_edges, dump_adjacency, is_planar_hamiltonian, polygon_graph,
)
from sidedisks.poly import side_disks, validate


def K(n):
    return IntersectGraph.from_edges(n, combinations(range(n), 2))


def with_chords(n, chords):
    return IntersectGraph.from_edges(n, list(cycle_edges(n)) + list(chords))


# --- graphs of concrete polygons ------------------------------------------------

def test_square_is_k4():
    p = validate([(0, 0), (1, 0), (1, 1), (0, 1)])
    assert build_graph(side_disks(p)) == K(4)
    assert polygon_graph(p) == K(4)


def test_regular_pentagon_is_c5():
    g = polygon_graph(regular_approx(5))
    assert g.edges == frozenset(cycle_edges(5))


def test_paper_pentagon_lacks_ab_cd():
    g = polygon_graph(paper_pentagon())
    assert not g.has(0, 2)
    assert g == build_graph(side_disks(paper_pentagon()))


def test_float_mode_agrees():
    for p in (paper_pentagon(), regular_approx(5), regular_approx(7), validate([(0, 0), (1, 0), (1, 1), (0, 1)])):
        assert polygon_graph(p, "float") == polygon_graph(p)


def test_unbounded_graph_has_no_cycle_requirement():
    p = validate([(0, 0), (2, -1), (4, -1), (6, 0)], (-1, 1), (1, 1))
    g = build_graph(side_disks(p))
    assert g.n == 5
    with pytest.raises(GeometryError):
        polygon_graph(p)


# --- chords and conflicts ------------------------------------------------------------

def test_chords_examples():
    assert chords_of(K(4)).chords == ((0, 2), (1, 3))
    assert chords_of(with_chords(5, [])).chords == ()
    assert len(chords_of(K(5)).chords) == 5


def test_chords_need_cycle():
    g = IntersectGraph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    with pytest.raises(GeometryError):
        chords_of(g)


def test_chords_cross_examples():
    assert chords_cross(4, (0, 2), (1, 3))
    assert not chords_cross(5, (0, 2), (2, 4))
    assert not chords_cross(6, (0, 2), (3, 5))


def _geometric_cross(n, c1, c2):
    # straight segments between points on the unit circle
    pts = [(np.cos(2 * np.pi * k / n), np.sin(2 * np.pi * k / n)) for k in range(n)]

    def o(a, b, c):
        return np.sign((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))
    a, b = pts[c1[0]], pts[c1[1]]
    c, d = pts[c2[0]], pts[c2[1]]
    return o(a, b, c) * o(a, b, d) < 0 and o(c, d, a) * o(c, d, b) < 0


@given(st.integers(4, 12).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.integers(0, n - 1), min_size=4, max_size=4, unique=True))), st.integers(0, 11))
def test_chords_cross_geometry_and_rotation(args, shift):
    n, (a, b, c, d) = args
    c1, c2 = (a, b), (c, d)
    got = chords_cross(n, c1, c2)
    assert got == chords_cross(n, c2, c1)
    assert got == chords_cross(n, (b, a), (d, c))
    assert got == bool(_geometric_cross(n, c1, c2))
    rot = [(x + shift) % n for x in (a, b, c, d)]
    assert got == chords_cross(n, (rot[0], rot[1]), (rot[2], rot[3]))


def test_conflict_graph_examples():
    assert len(conflict_graph(chords_of(K(4))).edges) == 1
    assert conflict_graph(chords_of(with_chords(5, []))).edges == frozenset()
    cg = conflict_graph(chords_of(K(5)))
    deg = [sum(1 for e in cg.edges if k in e) for k in range(5)]
    assert len(cg.edges) == 5 and deg == [2] * 5
    assert nx.is_connected(nx.Graph(list(cg.edges)))


def test_bipartite_examples():
    empty = bipartite(ConflictGraph(((0, 2),), frozenset()))
    assert empty.coloring == {(0, 2): 0}
    one = bipartite(conflict_graph(chords_of(K(4))))
    assert sorted(one.coloring.values()) == [0, 1]
    bad = bipartite(conflict_graph(chords_of(K(5))))
    assert bad.coloring is None and len(bad.odd_cycle) == 5


def test_is_planar_examples():
    ok, cert = is_planar_hamiltonian(K(4))
    assert ok and cert.coloring[(0, 2)] != cert.coloring[(1, 3)]
    ok, cert = is_planar_hamiltonian(K(5))
    assert not ok and len(cert.odd_cycle) % 2 == 1
    ok, cert = is_planar_hamiltonian(with_chords(6, [(0, 3), (1, 4), (2, 5)]))
    assert not ok and len(cert.odd_cycle) == 3


def _check_odd_cycle(n, cyc):
    assert len(cyc) % 2 == 1
    for k in range(len(cyc)):
        assert chords_cross(n, cyc[k], cyc[(k + 1) % len(cyc)])


def _check_coloring(n, chords, col):
    for c1, c2 in combinations(chords, 2):
        if chords_cross(n, c1, c2):
            assert col[c1] != col[c2]


def test_certificates_are_valid():
    rng = np.random.default_rng(5)
    for _ in range(300):
        n = int(rng.integers(4, 10))
        cyc = cycle_edges(n)
        chords = [c for c in combinations(range(n), 2) if c not in cyc and rng.random() < 0.4]
        ok, cert = is_planar_hamiltonian(with_chords(n, chords))
        if ok:
            _check_coloring(n, chords, cert.coloring)
        else:
            _check_odd_cycle(n, cert.odd_cycle)


# --- brute force oracle --------------------------------------------------------------

def test_brute_force_examples():
    assert not brute_force_planar(K(5))
    assert brute_force_planar(K(4))
    assert brute_force_planar(with_chords(5, [(0, 2), (0, 3)]))
    assert not brute_force_planar(with_chords(6, [(0, 3), (1, 4), (2, 5)]))


def test_brute_force_size_limit():
    with pytest.raises(GeometryError):
        brute_force_planar(with_chords(BRUTE_FORCE_MAX_N + 1, []))


def test_brute_force_matches_networkx():
    rng = np.random.default_rng(9)
    seen = {True: 0, False: 0}
    for _ in range(400):
        n = int(rng.integers(5, 9))
        dens = rng.uniform(0.2, 0.9)
        edges = [e for e in combinations(range(n), 2) if rng.random() < dens]
        g = IntersectGraph.from_edges(n, edges)
        h = nx.Graph()
        h.add_nodes_from(range(n))
        h.add_edges_from(edges)
        expect = nx.check_planarity(h)[0]
        assert brute_force_planar(g) == expect
        seen[expect] += 1
    assert seen[True] > 20 and seen[False] > 20


def test_bipartite_test_matches_networkx():
    rng = np.random.default_rng(10)
    for _ in range(300):
        n = int(rng.integers(4, 11))
        cyc = cycle_edges(n)
        chords = [c for c in combinations(range(n), 2) if c not in cyc and rng.random() < 0.3]
        g = with_chords(n, chords)
        assert is_planar_hamiltonian(g)[0] == nx.check_planarity(nx.Graph(list(g.edges)))[0]


def test_dump_adjacency():
    assert dump_adjacency(K(4)).splitlines() == ["0: 1 2 3", "1: 0 2 3", "2: 0 1 3", "3: 0 1 2"]


def test_chord_diagram_type():
    assert isinstance(chords_of(K(4)), ChordDiagram)
