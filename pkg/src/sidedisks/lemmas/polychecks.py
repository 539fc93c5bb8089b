"""Checks that take a whole polygon: chord counts, 6-subsets, the
tri-tangent witness, the (a, b, c, x) disjointness, a|b monotonicity, the
pentagon midpoint sum and disk depth."""
from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, localcontext
from itertools import combinations

import mpmath
from gmpy2 import mpq

from ..geom import (
    Disk, GeometryError, Line, Point, circle_circle_points, foot_of_perpendicular,
    gdisks_intersect, line_intersection, line_meets_ray_interior, line_meets_segment_interior,
    line_through, line_value, point_in_gdisk, tri_tangent_disk,
)
from ..graph import IntersectGraph, build_graph, chords_of, conflict_graph, polygon_graph
from ..io import polygon_to_json
from ..poly import (
    ConvexPolygon, Segment, compose_ab, extend_to_polygon, side_disk, side_disks, side_line,
)
from ..qext import sign
from .outcome import LemmaOutcome, Rejected

__all__ = [
    "check_one_chord", "check_no_3_cycles", "check_no_3_cycles_extended", "six_subsets",
    "conflict_triangles", "TriTangent", "tri_tangent_candidates", "find_tri_tangent_witness",
    "check_tri_tangent", "check_abcx", "abcx_configs", "check_ab_lemma", "ab_configs",
    "diag_midpoint_sum", "diag_midpoint_sum_decimal", "disk_depth_pentagon",
    "check_midpoint_sum", "check_depth",
]


def _graph(p: ConvexPolygon, g: IntersectGraph | None) -> IntersectGraph:
    if g is not None:
        return g
    return polygon_graph(p) if p.bounded else build_graph(side_disks(p))


def _poly_witness(p: ConvexPolygon, poly_json=None, **kw) -> dict:
    return {"polygon": poly_json or polygon_to_json(p), **kw}


# --- Lemma 1 and Lemma 2 -------------------------------------------------------

def check_one_chord(p: ConvexPolygon, g: IntersectGraph | None = None, seed: int = 0) -> LemmaOutcome:
    """Some side disk is an endpoint of at most one chord."""
    if p.n < 5:
        raise GeometryError("needs n >= 5")
    g = _graph(p, g)
    counts = [0] * p.n
    for i, j in chords_of(g).chords:
        counts[i] += 1
        counts[j] += 1
    best = min(range(p.n), key=lambda i: (counts[i], i))
    return LemmaOutcome("L1", counts[best] <= 1,
                        _poly_witness(p, side=best, chords=counts[best]), seed)


def six_subsets(n: int):
    return combinations(range(n), 6)


def check_no_3_cycles(p: ConvexPolygon, six, g: IntersectGraph | None = None,
                      seed: int = 0, poly_json=None) -> LemmaOutcome:
    """Among six CCW sides a..f one of the pairs (a,d), (b,e), (c,f) is disjoint.

    ``poly_json`` lets a caller checking many subsets serialize the polygon once.
    """
    six = list(six)
    if p.n < 6:
        raise GeometryError("needs n >= 6")
    if len(six) != 6 or any(not 0 <= k < p.n for k in six):
        raise GeometryError("need six side indices")
    # strictly CCW: increasing after a cyclic rotation
    k = six.index(min(six))
    rot = six[k:] + six[:k]
    if any(rot[t] >= rot[t + 1] for t in range(5)):
        raise GeometryError(f"side indices {six} are not in CCW order")
    g = _graph(p, g)
    for t in range(3):
        a, d = six[t], six[t + 3]
        if not g.has(a, d):
            return LemmaOutcome("L2", True, _poly_witness(p, poly_json, six=six, pair=[a, d]), seed)
    return LemmaOutcome("L2", False, _poly_witness(p, poly_json, six=six, pair=None), seed)


def check_no_3_cycles_extended(p: ConvexPolygon, six, seed: int = 0) -> LemmaOutcome:
    """Same statement on the 6-gon cut out by the six supporting lines."""
    six = list(six)
    hexa = extend_to_polygon([p.sides[k] for k in six])
    # extend_to_polygon may rotate the side list; recover the rotation
    lines = [side_line(s) for s in hexa.sides]
    first = side_line(p.sides[six[0]])
    shift = next(t for t in range(6) if _same_line(lines[t], first))
    disks = side_disks(hexa)
    for t in range(3):
        a, d = (shift + t) % 6, (shift + t + 3) % 6
        if not gdisks_intersect(disks[a], disks[d]):
            return LemmaOutcome("L2", True, _poly_witness(p, six=six, pair=[six[t], six[t + 3]],
                                                          extended=True), seed)
    return LemmaOutcome("L2", False, _poly_witness(p, six=six, pair=None, extended=True), seed)


def _same_line(l1: Line, l2: Line) -> bool:
    return (sign(l1.a * l2.b - l1.b * l2.a) == 0 and sign(l1.a * l2.c - l1.c * l2.a) == 0
            and sign(l1.b * l2.c - l1.c * l2.b) == 0)


def conflict_triangles(g: IntersectGraph) -> list:
    """Triangles of the chord conflict graph (expected: none)."""
    cg = conflict_graph(chords_of(g))
    m = len(cg.chords)
    adj = [set() for _ in range(m)]
    for a, b in cg.edges:
        adj[a].add(b)
        adj[b].add(a)
    out = []
    for a, b in sorted(cg.edges):
        for c in sorted(adj[a] & adj[b]):
            if c > b:
                out.append([cg.chords[a], cg.chords[b], cg.chords[c]])
    return out


# --- Lemma 8: tri-tangent disk -----------------------------------------------

@dataclass(frozen=True)
class TriTangent:
    i: int  # middle side
    disk: Disk


def _interior_point(p: ConvexPolygon) -> Point:
    vs = p.vertices
    pts = list(vs)
    if not p.bounded:
        pts += [vs[0] + p.first_dir, vs[-1] + p.last_dir]
    k = len(pts)
    return Point(sum((v.x for v in pts), start=mpq(0)) / k, sum((v.y for v in pts), start=mpq(0)) / k)


def _touches_side(disk: Disk, line: Line, s) -> bool:
    f = foot_of_perpendicular(disk.center, line)
    if isinstance(s, Segment):
        d = s.q - s.p
        t = (f - s.p).dot(d)
        return sign(t) >= 0 and sign(d.norm2() - t) >= 0
    return sign((f - s.apex).dot(s.dir)) >= 0


def _contained(disk: Disk, lines) -> bool:
    O, r2 = disk.center, disk.r2
    for l in lines:
        v = line_value(l, O)
        if sign(v) < 0 or sign(v * v - r2 * l.normal2()) < 0:
            return False
    return True


def _middle_indices(p: ConvexPolygon):
    return range(p.n) if p.bounded else range(1, p.n - 1)


def tri_tangent_candidates(p: ConvexPolygon, lines=None, hint=None) -> list[TriTangent]:
    """Disks inside p tangent to three consecutive (closed) sides, by (r2, i)."""
    lines = lines or [side_line(s) for s in p.sides]
    hint = hint or _interior_point(p)
    n = p.n
    out = []
    for i in _middle_indices(p):
        trip = [(i - 1) % n, i, (i + 1) % n]
        try:
            disk = tri_tangent_disk(lines[trip[0]], lines[trip[1]], lines[trip[2]], hint)
        except GeometryError:
            continue
        if not all(_touches_side(disk, lines[k], p.sides[k]) for k in trip):
            continue
        if _contained(disk, lines):
            out.append(TriTangent(i, disk))
    out.sort(key=lambda t: t.i)
    out.sort(key=lambda t: t.disk.r2)  # stable: ties keep ascending i
    return out


def _apex_beyond(lines, n, i) -> Point | None:
    """ell(s_{i-1}) and ell(s_{i+1}) meet on the far side of ell(s_i)."""
    P = line_intersection(lines[(i - 1) % n], lines[(i + 1) % n])
    if P is None or sign(line_value(lines[i], P)) >= 0:
        return None
    return P


def find_tri_tangent_witness(p: ConvexPolygon) -> TriTangent | None:
    if p.n < 5:
        raise GeometryError("needs n >= 5")
    lines = [side_line(s) for s in p.sides]
    for cand in tri_tangent_candidates(p, lines):
        if _apex_beyond(lines, p.n, cand.i) is not None:
            return cand
    return None


def check_tri_tangent(p: ConvexPolygon, seed: int = 0) -> LemmaOutcome:
    w = find_tri_tangent_witness(p)
    if w is None:
        return LemmaOutcome("L8", False, _poly_witness(p, side=None), seed)
    # re-verify the postcondition from scratch
    lines = [side_line(s) for s in p.sides]
    n = p.n
    ok = _contained(w.disk, lines) and _apex_beyond(lines, n, w.i) is not None
    for k in ((w.i - 1) % n, w.i, (w.i + 1) % n):
        ok = ok and sign(line_value(lines[k], w.disk.center) ** 2
                         - w.disk.r2 * lines[k].normal2()) == 0
    return LemmaOutcome("L8", ok, _poly_witness(p, side=w.i, r2=str(w.disk.r2)), seed)


# --- Lemma 9 ---------------------------------------------------------------------

def _line_meets_side_interior(l: Line, s) -> bool:
    if isinstance(s, Segment):
        return line_meets_segment_interior(l, s.p, s.q)
    return line_meets_ray_interior(l, s)


def _abcx_setup(p: ConvexPolygon, i: int, lines, hint):
    n = p.n
    if i not in _middle_indices(p):
        raise Rejected("b has no two neighbouring sides")
    P = _apex_beyond(lines, n, i)
    if P is None:
        raise Rejected("ell(a), ell(c) parallel or not separated from the interior by ell(b)")
    trip = [(i - 1) % n, i, (i + 1) % n]
    try:
        disk = tri_tangent_disk(lines[trip[0]], lines[trip[1]], lines[trip[2]], hint)
    except GeometryError as exc:
        raise Rejected(str(exc)) from exc
    if not all(_touches_side(disk, lines[k], p.sides[k]) for k in trip):
        raise Rejected("tangency point off a closed side")
    if not _contained(disk, lines):
        raise Rejected("tangent disk not contained in the polygon")
    return P, disk, line_through(P, disk.center), trip


def _abcx_outcome(p, i, x, bis, disks, seed):
    if _line_meets_side_interior(bis, p.sides[x]):
        raise Rejected("bisector crosses the interior of x")
    holds = not gdisks_intersect(disks[i], disks[x])
    return LemmaOutcome("L9", holds, _poly_witness(p, i=i, x=x), seed)


def check_abcx(p: ConvexPolygon, i: int, x: int, seed: int = 0) -> LemmaOutcome:
    lines = [side_line(s) for s in p.sides]
    _, _, bis, trip = _abcx_setup(p, i % p.n, lines, _interior_point(p))
    x %= p.n
    if x in trip:
        raise Rejected("x must differ from a, b, c")
    return _abcx_outcome(p, i % p.n, x, bis, side_disks(p), seed)


def abcx_configs(p: ConvexPolygon, seed: int = 0):
    """Yield ``(outcome | None, reason)`` for every (i, x) pair of p."""
    lines = [side_line(s) for s in p.sides]
    hint = _interior_point(p)
    disks = side_disks(p)
    n = p.n
    for i in range(n):
        try:
            _, _, bis, trip = _abcx_setup(p, i, lines, hint)
        except Rejected as exc:
            yield None, str(exc)
            continue
        for x in range(n):
            if x in trip:
                continue
            try:
                yield _abcx_outcome(p, i, x, bis, disks, seed), ""
            except Rejected as exc:
                yield None, str(exc)


# --- Lemma 10 --------------------------------------------------------------------

def check_ab_lemma(p: ConvexPolygon, i: int, j: int, c: int, seed: int = 0) -> LemmaOutcome:
    if p.n < 4:
        raise Rejected("needs n >= 4")
    try:
        ab = compose_ab(p, i, j)
    except GeometryError as exc:
        raise Rejected(str(exc)) from exc
    n = p.n
    i, j, c = i % n, j % n, c % n
    if c in (i, j):
        raise Rejected("c must differ from a and b")
    dc = side_disk(p.sides[c])
    if not (gdisks_intersect(dc, side_disk(p.sides[i])) and gdisks_intersect(dc, side_disk(p.sides[j]))):
        raise Rejected("D_c misses D_a or D_b")
    holds = gdisks_intersect(dc, side_disk(ab))
    return LemmaOutcome("L10", holds, _poly_witness(p, a=i, b=j, c=c), seed)


def ab_configs(p: ConvexPolygon, seed: int = 0):
    """Every composable pair with every third side; yields (outcome | None, reason)."""
    n = p.n
    pairs = [(k, k + 1) for k in range(n - 1)]
    pairs.append((n - 1, 0))  # wraps for bounded; the two rays otherwise
    disks = side_disks(p)
    for i, j in pairs:
        ab_disk = side_disk(compose_ab(p, i, j))
        for c in range(n):
            if c in (i, j):
                continue
            if not (gdisks_intersect(disks[c], disks[i]) and gdisks_intersect(disks[c], disks[j])):
                yield None, "D_c misses D_a or D_b"
                continue
            holds = gdisks_intersect(disks[c], ab_disk)
            yield LemmaOutcome("L10", holds, _poly_witness(p, a=i, b=j, c=c), seed), ""


# --- pentagon observations -------------------------------------------------------

def _five(p: ConvexPolygon):
    if not p.bounded or p.n != 5:
        raise GeometryError("needs a bounded pentagon")
    return p.vertices


def diag_midpoint_sum(p: ConvexPolygon, dps: int = 60):
    """(sum of midpoint distances over non-adjacent side pairs, perimeter) as mpf."""
    vs = _five(p)
    mids = [vs[k].midpoint(vs[(k + 1) % 5]) for k in range(5)]
    with mpmath.workdps(dps):
        def root(q):
            q = mpq(q)
            return mpmath.sqrt(mpmath.mpf(int(q.numerator)) / int(q.denominator))
        total = sum(root((mids[k] - mids[(k + 2) % 5]).norm2()) for k in range(5))
        perim = sum(root((vs[(k + 1) % 5] - vs[k]).norm2()) for k in range(5))
        return +total, +perim


def diag_midpoint_sum_decimal(vertices, digits: int = 60):
    """Independent recomputation with the decimal module straight from coordinates."""
    with localcontext() as ctx:
        ctx.prec = digits + 10

        def dec(v):
            q = mpq(v)
            return Decimal(int(q.numerator)) / Decimal(int(q.denominator))

        pts = [(dec(x), dec(y)) for x, y in vertices]
        two = Decimal(2)
        mids = [((pts[k][0] + pts[(k + 1) % 5][0]) / two, (pts[k][1] + pts[(k + 1) % 5][1]) / two)
                for k in range(5)]

        def dist(a, b):
            return ((a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2).sqrt()

        total = sum(dist(mids[k], mids[(k + 2) % 5]) for k in range(5))
        perim = sum(dist(pts[k], pts[(k + 1) % 5]) for k in range(5))
        return +total, +perim


MARGIN = mpq(1, 4)
AGREE = mpmath.mpf(10) ** -40


def check_midpoint_sum(p: ConvexPolygon, seed: int = 0) -> LemmaOutcome:
    """Midpoint-distance sum below the perimeter by more than MARGIN, with the
    mpmath and decimal evaluations agreeing to AGREE."""
    total, perim = diag_midpoint_sum(p)
    d_total, d_perim = diag_midpoint_sum_decimal([(v.x, v.y) for v in p.vertices], 50)
    with mpmath.workdps(60):
        agree = (abs(total - mpmath.mpf(str(d_total))) < AGREE
                 and abs(perim - mpmath.mpf(str(d_perim))) < AGREE)
        margin = perim - total
        holds = bool(margin > mpmath.mpf(int(MARGIN.numerator)) / int(MARGIN.denominator) and agree)
        wit = _poly_witness(p, sum=mpmath.nstr(total, 30), perimeter=mpmath.nstr(perim, 30),
                            margin=mpmath.nstr(margin, 30), decimal_agrees=agree)
    return LemmaOutcome("pentagon", holds, wit, seed)


def check_depth(p: ConvexPolygon, seed: int = 0) -> LemmaOutcome:
    """No candidate point lies in more than three side disks of the pentagon."""
    depth, where = disk_depth_pentagon(p)
    return LemmaOutcome("depth", depth <= 3,
                        _poly_witness(p, depth=depth, point=[str(where.x), str(where.y)]), seed)


def disk_depth_pentagon(p: ConvexPolygon) -> tuple[int, Point]:
    """Largest number of side disks through one candidate point.

    Candidates: boundary crossings of every disk pair, disk centers, vertices.
    """
    vs = _five(p)
    disks = list(side_disks(p))
    cands = [d.center for d in disks] + list(vs)
    for d1, d2 in combinations(disks, 2):
        cands.extend(circle_circle_points(d1, d2))
    best, where = 0, cands[0]
    for q in cands:
        k = sum(1 for d in disks if point_in_gdisk(q, d))
        if k > best:
            best, where = k, q
    return best, where
