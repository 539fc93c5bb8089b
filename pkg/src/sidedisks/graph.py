"""Intersection graphs of side disks, their circular embedding, the chord
conflict graph, and two independent planarity deciders."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from math import lcm

from .geom import GeometryError, gdisks_intersect
from .poly import ConvexPolygon, SideDiskSet

__all__ = [
    "IntersectGraph", "ChordDiagram", "ConflictGraph", "BipartiteCert", "build_graph",
    "polygon_graph", "chords_of", "chords_cross", "conflict_graph", "bipartite",
    "is_planar_hamiltonian", "brute_force_planar", "cycle_edges", "dump_adjacency",
    "BRUTE_FORCE_MAX_N",
]

BRUTE_FORCE_MAX_N = 10


def _pair(i: int, j: int) -> tuple[int, int]:
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class IntersectGraph:
    n: int
    edges: frozenset

    def __post_init__(self):
        for i, j in self.edges:
            if i == j or not (0 <= i < self.n and 0 <= j < self.n) or i > j:
                raise GeometryError(f"bad edge {(i, j)}")

    @classmethod
    def from_edges(cls, n: int, edges) -> "IntersectGraph":
        return cls(n, frozenset(_pair(i, j) for i, j in edges))

    def has(self, i: int, j: int) -> bool:
        return _pair(i, j) in self.edges

    def neighbours(self, i: int) -> list[int]:
        return sorted(j for e in self.edges if i in e for j in e if j != i)


@dataclass(frozen=True)
class ChordDiagram:
    n: int
    chords: tuple  # sorted pairs


@dataclass(frozen=True)
class ConflictGraph:
    chords: tuple
    edges: frozenset  # pairs of chord indices


@dataclass(frozen=True)
class BipartiteCert:
    coloring: dict | None = None
    odd_cycle: list | None = None

    @property
    def bipartite(self) -> bool:
        return self.coloring is not None


def cycle_edges(n: int) -> set[tuple[int, int]]:
    return {_pair(i, (i + 1) % n) for i in range(n)} if n >= 3 else set()


def build_graph(disks: SideDiskSet) -> IntersectGraph:
    """Edge {i, j} iff the closed side disks i and j share a point."""
    n = len(disks)
    edges = {(i, j) for i, j in combinations(range(n), 2) if gdisks_intersect(disks[i], disks[j])}
    if disks.bounded:
        missing = cycle_edges(n) - edges
        if missing:
            raise GeometryError(f"consecutive side disks fail to meet: {sorted(missing)}")
    return IntersectGraph(n, frozenset(edges))


def _integer_sides(p: ConvexPolygon):
    """Doubled centres and squared diameters of the side disks, all as ints."""
    vs = p.vertices
    den = lcm(*(int(c.denominator) for v in vs for c in (v.x, v.y)))
    pts = [(int(v.x * den), int(v.y * den)) for v in vs]
    n = len(pts)
    out = []
    for k in range(n):
        (x0, y0), (x1, y1) = pts[k], pts[(k + 1) % n]
        out.append((x0 + x1, y0 + y1, (x1 - x0) ** 2 + (y1 - y0) ** 2))
    return out


def _meet_exact(a, b) -> bool:
    # 4x-scaled form of the disk-disk test: L = |C1-C2|^2 - R1 - R2
    dx, dy = a[0] - b[0], a[1] - b[1]
    big_l = dx * dx + dy * dy - a[2] - b[2]
    return big_l <= 0 or big_l * big_l <= 4 * a[2] * b[2]


def _meet_float(a, b, rtol: float = 1e-9):
    """Double-precision screen; ``None`` when the margin is inside the tolerance."""
    ax, ay, ar = float(a[0]), float(a[1]), float(a[2])
    bx, by, br = float(b[0]), float(b[1]), float(b[2])
    d2 = (ax - bx) ** 2 + (ay - by) ** 2
    big_l = d2 - ar - br
    scale = d2 + ar + br
    if big_l <= -rtol * scale:
        return True
    lhs, rhs = big_l * big_l, 4.0 * ar * br
    if abs(lhs - rhs) <= rtol * (lhs + rhs) or abs(big_l) <= rtol * scale:
        return None
    return lhs < rhs


def polygon_graph(p: ConvexPolygon, mode: str = "exact") -> IntersectGraph:
    """Intersection graph of a bounded polygon's side disks.

    Scales the polygon to integer coordinates (the graph is scale invariant)
    and runs the disk test on Python ints. ``mode="float"`` screens in double
    precision and falls back to the exact test inside the tolerance band.
    """
    if not p.bounded:
        raise GeometryError("polygon_graph needs a bounded polygon")
    data = _integer_sides(p)
    n = len(data)
    edges = set()
    for i in range(n):
        a = data[i]
        for j in range(i + 1, n):
            if mode == "float":
                hit = _meet_float(a, data[j])
                if hit is None:
                    hit = _meet_exact(a, data[j])
            else:
                hit = _meet_exact(a, data[j])
            if hit:
                edges.add((i, j))
    missing = cycle_edges(n) - edges
    if missing:
        raise GeometryError(f"consecutive side disks fail to meet: {sorted(missing)}")
    return IntersectGraph(n, frozenset(edges))


def chords_of(g: IntersectGraph) -> ChordDiagram:
    cyc = cycle_edges(g.n)
    missing = cyc - g.edges
    if missing:
        raise GeometryError(f"graph lacks Hamiltonian cycle edges {sorted(missing)}")
    return ChordDiagram(g.n, tuple(sorted(g.edges - cyc)))


def chords_cross(n: int, c1, c2) -> bool:
    """Two chords of the n-point circular embedding cross in the open disk."""
    i, j = sorted(c1)
    k, l = c2
    if len({i, j, k, l}) < 4:
        return False
    return (i < k < j) != (i < l < j)


def conflict_graph(cd: ChordDiagram) -> ConflictGraph:
    ch = cd.chords
    edges = frozenset(
        (a, b) for a, b in combinations(range(len(ch)), 2) if chords_cross(cd.n, ch[a], ch[b])
    )
    return ConflictGraph(ch, edges)


def bipartite(cg: ConflictGraph) -> BipartiteCert:
    """BFS 2-colouring; on failure an explicit odd cycle of chords."""
    m = len(cg.chords)
    adj = [[] for _ in range(m)]
    for a, b in sorted(cg.edges):
        adj[a].append(b)
        adj[b].append(a)
    color = [-1] * m
    parent = [-1] * m
    depth = [0] * m
    for root in range(m):
        if color[root] != -1:
            continue
        color[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if color[v] == -1:
                    color[v] = 1 - color[u]
                    parent[v] = u
                    depth[v] = depth[u] + 1
                    queue.append(v)
                elif color[v] == color[u]:
                    return BipartiteCert(odd_cycle=_odd_cycle(u, v, parent, depth, cg.chords))
    return BipartiteCert(coloring={cg.chords[i]: color[i] for i in range(m)})


def _odd_cycle(u, v, parent, depth, chords):
    left, right = [u], [v]
    while depth[u] > depth[v]:
        u = parent[u]
        left.append(u)
    while depth[v] > depth[u]:
        v = parent[v]
        right.append(v)
    while u != v:
        u, v = parent[u], parent[v]
        left.append(u)
        right.append(v)
    cycle = left + right[-2::-1]
    return [chords[i] for i in cycle]


def is_planar_hamiltonian(g: IntersectGraph) -> tuple[bool, BipartiteCert]:
    cert = bipartite(conflict_graph(chords_of(g)))
    return cert.bipartite, cert


# --- independent oracle: topological K5 / K3,3 search ----------------------

def _paths(adj, u, v, free):
    """Yield bitmasks of interiors of simple u-v paths through ``free`` vertices."""
    if adj[u] >> v & 1:
        yield 0
    stack = [(u, 0, adj[u] & free)]
    while stack:
        x, used, cand = stack.pop()
        while cand:
            low = cand & -cand
            cand ^= low
            w = low.bit_length() - 1
            inner = used | low
            if adj[w] >> v & 1:
                yield inner
            nxt = adj[w] & free & ~inner
            if nxt:
                stack.append((w, inner, nxt))


def _route(adj, pairs, free) -> bool:
    if not pairs:
        return True
    (u, v), rest = pairs[0], pairs[1:]
    for inner in _paths(adj, u, v, free):
        if _route(adj, rest, free & ~inner):
            return True
    return False


def _has_subdivision(adj, branch, pairs_of) -> bool:
    n = len(adj)
    mask = sum(1 << b for b in branch)
    free = ((1 << n) - 1) & ~mask
    pairs = pairs_of(branch)
    missing = sum(1 for u, v in pairs if not adj[u] >> v & 1)
    if missing > bin(free).count("1"):
        return False
    # route the non-adjacent pairs first, they constrain the search most
    pairs.sort(key=lambda e: adj[e[0]] >> e[1] & 1)
    return _route(adj, pairs, free)


def brute_force_planar(g: IntersectGraph) -> bool:
    """Planarity by exhaustive search for a subdivided K5 or K3,3."""
    n = g.n
    if n > BRUTE_FORCE_MAX_N:
        raise GeometryError(f"brute force limited to n <= {BRUTE_FORCE_MAX_N}")
    adj = [0] * n
    for i, j in g.edges:
        adj[i] |= 1 << j
        adj[j] |= 1 << i
    if len(g.edges) < 9:
        return True
    deg = [bin(a).count("1") for a in adj]
    big4 = [v for v in range(n) if deg[v] >= 4]
    for branch in combinations(big4, 5):
        if _has_subdivision(adj, branch, lambda b: list(combinations(b, 2))):
            return False
    big3 = [v for v in range(n) if deg[v] >= 3]
    for six in combinations(big3, 6):
        first = six[0]
        for others in combinations(six[1:], 2):
            side_a = (first,) + others
            side_b = tuple(v for v in six if v not in side_a)
            if _has_subdivision(adj, six, lambda b: [(x, y) for x in side_a for y in side_b]):
                return False
    return True


def dump_adjacency(g: IntersectGraph) -> str:
    """Debug dump, one ``i: j k l`` line per vertex."""
    return "\n".join(
        f"{i}:" + "".join(f" {j}" for j in g.neighbours(i)) for i in range(g.n)
    )
