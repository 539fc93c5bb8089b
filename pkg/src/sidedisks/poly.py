"""Convex polygons (bounded and unbounded), their side disks, and the
a|b composition used to shrink a polygon by one side."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .geom import (
    GDisk, GeometryError, Halfline, Halfplane, Line, Point, line_intersection,
    oriented_line, disk_on_diameter,
)
from .qext import as_scalar, sign

__all__ = [
    "PolygonError", "Segment", "Ray", "Side", "ConvexPolygon", "SideDiskSet", "validate",
    "side_disks", "side_disk", "compose_ab", "elide", "extend_to_polygon", "clip_side",
    "side_line", "side_direction", "polygon_area2", "min_vertex_sine2",
]

BOUNDED = "bounded"
UNBOUNDED = "unbounded"


class PolygonError(GeometryError):
    """Invalid polygon input."""


@dataclass(frozen=True)
class Segment:
    p: Point
    q: Point

    def __post_init__(self):
        if self.p.same(self.q):
            raise PolygonError("segment endpoints must differ")


Ray = Halfline
Side = Union[Segment, Ray]


@dataclass(frozen=True)
class ConvexPolygon:
    sides: tuple
    kind: str = BOUNDED

    @property
    def n(self) -> int:
        return len(self.sides)

    @property
    def bounded(self) -> bool:
        return self.kind == BOUNDED

    @property
    def vertices(self) -> list[Point]:
        """Finite vertices in CCW order (the chain for unbounded polygons)."""
        if self.bounded:
            return [s.p for s in self.sides]
        return [self.sides[0].apex] + [s.q for s in self.sides[1:-1]]

    @property
    def first_dir(self) -> Point | None:
        return None if self.bounded else self.sides[0].dir

    @property
    def last_dir(self) -> Point | None:
        return None if self.bounded else self.sides[-1].dir

    def adjacent(self, i: int, j: int) -> bool:
        """Consecutive sides; the two rays of an unbounded polygon are not consecutive."""
        n = self.n
        i, j = i % n, j % n
        if self.bounded:
            return (i - j) % n in (1, n - 1)
        return abs(i - j) == 1


@dataclass(frozen=True)
class SideDiskSet:
    disks: tuple
    bounded: bool = True

    def __len__(self):
        return len(self.disks)

    def __getitem__(self, i):
        return self.disks[i]

    def __iter__(self):
        return iter(self.disks)


def side_direction(s: Side) -> Point:
    """Direction of the CCW boundary walk along ``s``."""
    if isinstance(s, Segment):
        return s.q - s.p
    return -s.dir if s.incoming else s.dir


def side_line(s: Side) -> Line:
    """Supporting line oriented so the polygon interior is positive."""
    anchor = s.p if isinstance(s, Segment) else s.apex
    return oriented_line(anchor, side_direction(s))


def polygon_area2(p: ConvexPolygon):
    vs = p.vertices
    return sum((vs[i].cross(vs[(i + 1) % len(vs)]) for i in range(len(vs))), start=as_scalar(0))


def min_vertex_sine2(dirs: Sequence[Point], cyclic: bool = True):
    """Smallest squared sine of the turning angle between consecutive directions."""
    out = None
    m = len(dirs)
    rng = range(m) if cyclic else range(m - 1)
    for k in rng:
        u, v = dirs[k], dirs[(k + 1) % m]
        c = u.cross(v)
        s2 = c * c / (u.norm2() * v.norm2())
        out = s2 if out is None or s2 < out else out
    return out


def _half(d: Point) -> int:
    # 0 for angles in [0, pi), 1 for [pi, 2pi)
    return 0 if (sign(d.y) > 0 or (sign(d.y) == 0 and sign(d.x) > 0)) else 1


def _angle_less(u: Point, v: Point) -> bool:
    hu, hv = _half(u), _half(v)
    if hu != hv:
        return hu < hv
    return sign(u.cross(v)) > 0


def _winds_once(dirs: Sequence[Point]) -> bool:
    """Cyclic direction sequence goes exactly once around (one angular descent)."""
    m = len(dirs)
    descents = sum(1 for k in range(m) if not _angle_less(dirs[k], dirs[(k + 1) % m]))
    return descents == 1


def _bounded_from_vertices(vs: list[Point], normalize: bool) -> ConvexPolygon:
    n = len(vs)
    if n < 3:
        raise PolygonError("a polygon needs at least 3 vertices")
    for i in range(n):
        for j in range(i + 1, n):
            if vs[i].same(vs[j]):
                raise PolygonError("repeated vertex")
    dirs = [vs[(i + 1) % n] - vs[i] for i in range(n)]
    turns = [sign(dirs[i].cross(dirs[(i + 1) % n])) for i in range(n)]
    if any(t == 0 for t in turns):
        raise PolygonError("collinear vertex triple")
    if all(t < 0 for t in turns):
        if not normalize:
            raise PolygonError("vertices are clockwise (pass normalize to reverse)")
        return _bounded_from_vertices(vs[::-1], False)
    if not all(t > 0 for t in turns) or not _winds_once(dirs):
        raise PolygonError("polygon is not convex")
    sides = tuple(Segment(vs[i], vs[(i + 1) % n]) for i in range(n))
    return ConvexPolygon(sides, BOUNDED)


def _unbounded_from_chain(vs: list[Point], first_dir: Point, last_dir: Point,
                          normalize: bool) -> ConvexPolygon:
    if len(vs) < 2:
        raise PolygonError("an unbounded polygon needs at least two finite vertices")
    for i in range(len(vs)):
        for j in range(i + 1, len(vs)):
            if vs[i].same(vs[j]):
                raise PolygonError("repeated vertex")
    if first_dir.is_zero() or last_dir.is_zero():
        raise PolygonError("ray directions must be nonzero")
    dirs = [-first_dir] + [vs[k + 1] - vs[k] for k in range(len(vs) - 1)] + [last_dir]
    turns = [sign(dirs[k].cross(dirs[k + 1])) for k in range(len(dirs) - 1)]
    if any(t == 0 for t in turns):
        raise PolygonError("collinear consecutive sides")
    if all(t < 0 for t in turns):
        if not normalize:
            raise PolygonError("chain is clockwise (pass normalize to reverse)")
        return _unbounded_from_chain(vs[::-1], last_dir, first_dir, False)
    if not all(t > 0 for t in turns):
        raise PolygonError("polygon is not convex")
    d0 = dirs[0]
    for d in dirs[1:-1]:
        if sign(d0.cross(d)) <= 0:
            raise PolygonError("boundary turns by more than pi")
    c = sign(d0.cross(dirs[-1]))
    if c < 0 or (c == 0 and sign(d0.dot(dirs[-1])) > 0):
        raise PolygonError("rays cross: region is not an unbounded convex polygon")
    sides = [Ray(vs[0], first_dir, incoming=True)]
    sides += [Segment(vs[k], vs[k + 1]) for k in range(len(vs) - 1)]
    sides.append(Ray(vs[-1], last_dir))
    return ConvexPolygon(tuple(sides), UNBOUNDED)


def _pt(v) -> Point:
    if isinstance(v, Point):
        return v
    x, y = v
    return Point.of(x, y)


def validate(vertices, first_dir=None, last_dir=None, normalize: bool = False) -> ConvexPolygon:
    """Build a strictly convex CCW polygon from raw coordinates.

    With ``first_dir``/``last_dir`` the vertices form the finite chain of an
    unbounded polygon and the two directions point away from it.
    """
    vs = [_pt(v) for v in vertices]
    if (first_dir is None) != (last_dir is None):
        raise PolygonError("give both ray directions or neither")
    if first_dir is None:
        return _bounded_from_vertices(vs, normalize)
    return _unbounded_from_chain(vs, _pt(first_dir), _pt(last_dir), normalize)


def side_disk(s: Side) -> GDisk:
    if isinstance(s, Segment):
        return disk_on_diameter(s.p, s.q)
    # perpendicular to the ray at its apex, keeping the ray inside
    d = s.dir
    return Halfplane(Line(d.x, d.y, -(d.x * s.apex.x + d.y * s.apex.y)), 1)


def side_disks(p: ConvexPolygon) -> SideDiskSet:
    return SideDiskSet(tuple(side_disk(s) for s in p.sides), p.bounded)


def _ordered_pair(p: ConvexPolygon, i: int, j: int) -> tuple[int, int]:
    """Return (first, second) in CCW order for a composable pair, else raise."""
    n = p.n
    i, j = i % n, j % n
    if p.bounded:
        if (j - i) % n == 1:
            return i, j
        if (i - j) % n == 1:
            return j, i
    else:
        if {i, j} == {0, n - 1}:
            return n - 1, 0
        if abs(i - j) == 1:
            return min(i, j), max(i, j)
    raise GeometryError(f"a|b undefined for sides {i} and {j}")


def compose_ab(p: ConvexPolygon, i: int, j: int) -> Side:
    a_idx, b_idx = _ordered_pair(p, i, j)
    a, b = p.sides[a_idx], p.sides[b_idx]
    if isinstance(a, Segment) and isinstance(b, Segment):
        return Segment(a.p, b.q)
    if isinstance(a, Ray) and isinstance(b, Ray):
        # last ray then first ray: connect the two apexes in chain order
        return Segment(a.apex, b.apex)
    if isinstance(a, Ray):  # first ray followed by a segment
        return Ray(b.q, a.dir, incoming=True)
    return Ray(a.p, b.dir)  # segment followed by the last ray


def elide(p: ConvexPolygon, i: int, j: int) -> ConvexPolygon:
    """Replace two composable sides by their a|b.

    For bounded polygons this deletes the shared vertex, so later sides shift
    down by one index.
    """
    if p.n - 1 < 3:
        raise GeometryError("elision would leave fewer than 3 sides")
    a_idx, b_idx = _ordered_pair(p, i, j)
    if p.bounded:
        vs = p.vertices
        shared = (a_idx + 1) % p.n
        return validate([v for k, v in enumerate(vs) if k != shared])
    vs = p.vertices
    if a_idx == p.n - 1:  # both rays: close the chain
        return validate(vs)
    if a_idx == 0:
        return validate(vs[1:], p.first_dir, p.last_dir)
    if b_idx == p.n - 1:
        return validate(vs[:-1], p.first_dir, p.last_dir)
    # two consecutive segments of the chain: drop their shared vertex
    return validate(vs[:a_idx] + vs[a_idx + 1:], p.first_dir, p.last_dir)


def clip_side(p: ConvexPolygon, k: int) -> ConvexPolygon:
    """Drop side ``k`` of a bounded polygon and extend its neighbours to rays."""
    if not p.bounded:
        raise GeometryError("clip_side needs a bounded polygon")
    n = p.n
    k %= n
    prev_s, next_s = p.sides[(k - 1) % n], p.sides[(k + 1) % n]
    d_prev, d_next = side_direction(prev_s), side_direction(next_s)
    if sign(d_prev.cross(d_next)) > 0:
        raise GeometryError("neighbouring sides would meet: clipped region is bounded")
    vs = p.vertices
    chain = [vs[(k + 2 + t) % n] for t in range(n - 2)]
    return validate(chain, -d_next, d_prev)


def extend_to_polygon(sides: Sequence[Side]) -> ConvexPolygon:
    """Convex polygon cut out by the supporting lines of sides given in CCW order.

    Bounded when every turn between consecutive sides is below pi. Otherwise
    the result is unbounded and its side list is rotated so the side after
    the wide gap becomes the first (incoming) ray.
    """
    m = len(sides)
    if m < 3:
        raise GeometryError("need at least three sides")
    dirs = [side_direction(s) for s in sides]
    if not _winds_once(dirs):
        raise GeometryError("sides are not in CCW order")
    lines = [side_line(s) for s in sides]
    wide = [k for k in range(m) if sign(dirs[k].cross(dirs[(k + 1) % m])) <= 0]
    if not wide:
        vs = [line_intersection(lines[k - 1], lines[k]) for k in range(m)]
        return validate(vs)
    if len(wide) > 1:
        raise GeometryError("sides are not in CCW order")
    g = wide[0]
    order = [(g + 1 + t) % m for t in range(m)]
    chain = [line_intersection(lines[order[t]], lines[order[t + 1]]) for t in range(m - 1)]
    return validate(chain, -dirs[order[0]], dirs[order[-1]])
