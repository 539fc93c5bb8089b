"""Exact geometric primitives: points, lines, halflines, disks and halfplanes.

Every coordinate is an exact scalar (``mpq``, or ``QuadExt`` where a square
root cannot be avoided). Predicates never round: anything that would need a
square root is restated on squared quantities.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from gmpy2 import mpq

from .qext import QuadExt, as_scalar, sign, sqrt_q, to_float

__all__ = [
    "GeometryError", "Point", "Line", "Halfline", "Disk", "Halfplane", "GDisk",
    "apollonius_pm2", "tangential_diagonal2", "tangent_length2", "gdisks_intersect",
    "point_in_gdisk", "internal_bisector", "tri_tangent_disk", "dist2_point_line",
    "orient", "line_through", "oriented_line", "line_value", "disk_on_diameter",
    "disk_contains_disk", "rays_intersect", "line_intersection", "on_closed_segment",
    "line_meets_segment_interior", "line_meets_ray_interior", "foot_of_perpendicular",
    "circle_circle_points", "sum_of_roots_le",
]

ZERO = mpq(0)


class GeometryError(ValueError):
    """Raised when an operation's precondition fails (a domain error)."""


@dataclass(frozen=True)
class Point:
    x: object
    y: object

    def __add__(self, o: "Point") -> "Point":
        return Point(self.x + o.x, self.y + o.y)

    def __sub__(self, o: "Point") -> "Point":
        return Point(self.x - o.x, self.y - o.y)

    def __neg__(self) -> "Point":
        return Point(-self.x, -self.y)

    def scale(self, s) -> "Point":
        return Point(self.x * s, self.y * s)

    def dot(self, o: "Point"):
        return self.x * o.x + self.y * o.y

    def cross(self, o: "Point"):
        return self.x * o.y - self.y * o.x

    def norm2(self):
        return self.x * self.x + self.y * self.y

    def midpoint(self, o: "Point") -> "Point":
        return Point((self.x + o.x) / 2, (self.y + o.y) / 2)

    def is_zero(self) -> bool:
        return sign(self.x) == 0 and sign(self.y) == 0

    def same(self, o: "Point") -> bool:
        return sign(self.x - o.x) == 0 and sign(self.y - o.y) == 0

    def as_float(self) -> tuple[float, float]:
        return to_float(self.x), to_float(self.y)

    @classmethod
    def of(cls, x, y) -> "Point":
        return cls(as_scalar(x), as_scalar(y))


@dataclass(frozen=True)
class Line:
    """The locus ``a*x + b*y + c = 0``."""

    a: object
    b: object
    c: object

    def __post_init__(self):
        if sign(self.a) == 0 and sign(self.b) == 0:
            raise GeometryError("line needs (a, b) != (0, 0)")

    def normal2(self):
        return self.a * self.a + self.b * self.b

    def flipped(self) -> "Line":
        return Line(-self.a, -self.b, -self.c)

    def direction(self) -> Point:
        return Point(-self.b, self.a)


@dataclass(frozen=True)
class Halfline:
    """``{apex + t*dir : t >= 0}``.

    ``incoming`` marks a polygon side that the CCW boundary walk traverses
    toward the apex (the first side of an unbounded polygon).
    """

    apex: Point
    dir: Point
    incoming: bool = False

    def __post_init__(self):
        if self.dir.is_zero():
            raise GeometryError("halfline direction must be nonzero")


@dataclass(frozen=True)
class Disk:
    center: Point
    r2: object

    def __post_init__(self):
        if sign(self.r2) < 0:
            raise GeometryError("squared radius must be >= 0")


@dataclass(frozen=True)
class Halfplane:
    """Closed halfplane ``inside_sign * (a*x + b*y + c) >= 0``."""

    boundary: Line
    inside_sign: int = 1

    def __post_init__(self):
        if self.inside_sign not in (1, -1):
            raise GeometryError("inside_sign must be +1 or -1")

    def value(self, p: Point):
        return self.inside_sign * line_value(self.boundary, p)


GDisk = Union[Disk, Halfplane]


# --- small helpers ----------------------------------------------------------

def orient(p: Point, q: Point, r: Point) -> int:
    """+1 for a left turn p->q->r, -1 for right, 0 when collinear."""
    return sign((q - p).cross(r - p))


def line_value(l: Line, p: Point):
    return l.a * p.x + l.b * p.y + l.c


def line_through(p: Point, q: Point) -> Line:
    if p.same(q):
        raise GeometryError("line through coincident points")
    return oriented_line(p, q - p)


def oriented_line(p: Point, d: Point) -> Line:
    """Line through ``p`` with direction ``d``; points left of ``d`` evaluate positive."""
    a, b = -d.y, d.x
    return Line(a, b, -(a * p.x + b * p.y))


def dist2_point_line(p: Point, l: Line):
    v = line_value(l, p)
    return v * v / l.normal2()


def foot_of_perpendicular(p: Point, l: Line) -> Point:
    t = line_value(l, p) / l.normal2()
    return Point(p.x - t * l.a, p.y - t * l.b)


def disk_on_diameter(p: Point, q: Point) -> Disk:
    return Disk(p.midpoint(q), (q - p).norm2() / 4)


def line_intersection(l1: Line, l2: Line) -> Point | None:
    det = l1.a * l2.b - l2.a * l1.b
    if sign(det) == 0:
        return None
    return Point((l1.b * l2.c - l2.b * l1.c) / det, (l2.a * l1.c - l1.a * l2.c) / det)


def on_closed_segment(q: Point, p1: Point, p2: Point) -> bool:
    d = p2 - p1
    w = q - p1
    if sign(d.cross(w)) != 0:
        return False
    t = w.dot(d)
    return sign(t) >= 0 and sign(d.norm2() - t) >= 0


def line_meets_segment_interior(l: Line, p1: Point, p2: Point) -> bool:
    s1, s2 = sign(line_value(l, p1)), sign(line_value(l, p2))
    if s1 == 0 and s2 == 0:
        return True
    return s1 * s2 < 0


def line_meets_ray_interior(l: Line, h: Halfline) -> bool:
    f = sign(line_value(l, h.apex))
    g = sign(l.a * h.dir.x + l.b * h.dir.y)
    if f == 0 and g == 0:
        return True
    return f * g < 0


def rays_intersect(p1: Point, d1: Point, p2: Point, d2: Point) -> bool:
    """Do the closed rays ``p1 + t*d1`` and ``p2 + s*d2`` (t, s >= 0) meet?"""
    den = d1.cross(d2)
    w = p2 - p1
    if sign(den) != 0:
        t = w.cross(d2) / den
        s = w.cross(d1) / den
        return sign(t) >= 0 and sign(s) >= 0
    if sign(w.cross(d1)) != 0:
        return False
    return sign(w.dot(d1)) >= 0 or sign((-w).dot(d2)) >= 0


def sum_of_roots_le(x, y, z) -> bool:
    """Exact test ``sqrt(x) + sqrt(y) <= sqrt(z)`` for nonnegative x, y, z."""
    t = z - x - y
    if sign(t) < 0:
        return False
    return sign(t * t - 4 * x * y) >= 0


# --- formulas ---------------------------------------------------------------

def apollonius_pm2(pq2, pr2, qr2):
    """Squared median length |PM|^2 with M the midpoint of QR."""
    pq2, pr2, qr2 = as_scalar(pq2), as_scalar(pr2), as_scalar(qr2)
    if pq2 < 0 or pr2 < 0 or qr2 < 0:
        raise GeometryError("squared lengths must be nonnegative")
    # 16*area^2 written on squared lengths; negative means no triangle
    if 2 * (pq2 * pr2 + pr2 * qr2 + qr2 * pq2) - (pq2 * pq2 + pr2 * pr2 + qr2 * qr2) < 0:
        raise GeometryError("squared lengths do not form a triangle")
    return (2 * (pq2 + pr2) - qr2) / 4


def tangential_diagonal2(a, b, c, d):
    """Squared diagonal PR of a tangential quadrilateral PQRS.

    ``a, b, c, d`` are the tangent lengths at P, S, R and Q respectively.
    """
    a, b, c, d = (as_scalar(v) for v in (a, b, c, d))
    if min(a, b, c, d) <= 0:
        raise GeometryError("tangent lengths must be positive")
    ac, bd = a + c, b + d
    return ac / bd * (ac * bd + 4 * b * d)


def tangent_length2(p: Point, disk: Disk):
    t = (p - disk.center).norm2() - disk.r2
    if sign(t) < 0:
        raise GeometryError("point lies strictly inside the disk")
    return t


# --- predicates on disks and halfplanes ------------------------------------

def _disk_disk(d1: Disk, d2: Disk) -> bool:
    big_l = (d1.center - d2.center).norm2() - d1.r2 - d2.r2
    if sign(big_l) <= 0:
        return True
    return sign(big_l * big_l - 4 * d1.r2 * d2.r2) <= 0


def _disk_halfplane(d: Disk, h: Halfplane) -> bool:
    v = h.value(d.center)
    if sign(v) >= 0:
        return True
    return sign(v * v - d.r2 * h.boundary.normal2()) <= 0


def _halfplane_halfplane(h1: Halfplane, h2: Halfplane) -> bool:
    l1, l2 = h1.boundary, h2.boundary
    n1 = Point(h1.inside_sign * l1.a, h1.inside_sign * l1.b)
    n2 = Point(h2.inside_sign * l2.a, h2.inside_sign * l2.b)
    if sign(n1.cross(n2)) != 0 or sign(n1.dot(n2)) > 0:
        return True
    # antiparallel normals: region1 is n1.X >= -c1, region2 is n1.X <= c2/lam
    c1 = h1.inside_sign * l1.c
    c2 = h2.inside_sign * l2.c
    lam = -n2.dot(n1) / n1.norm2()
    return sign(c2 / lam + c1) >= 0


def gdisks_intersect(d1: GDisk, d2: GDisk) -> bool:
    """Do two closed disks/halfplanes share at least one point?"""
    if isinstance(d1, Disk):
        if isinstance(d2, Disk):
            return _disk_disk(d1, d2)
        return _disk_halfplane(d1, d2)
    if isinstance(d2, Disk):
        return _disk_halfplane(d2, d1)
    return _halfplane_halfplane(d1, d2)


def point_in_gdisk(q: Point, d: GDisk) -> bool:
    if isinstance(d, Disk):
        return sign((q - d.center).norm2() - d.r2) <= 0
    return sign(d.value(q)) >= 0


def disk_contains_disk(big: Disk, small: Disk) -> bool:
    """|c1 c2| + r_small <= r_big, decided on squared forms."""
    return sum_of_roots_le((big.center - small.center).norm2(), small.r2, big.r2)


def circle_circle_points(d1: Disk, d2: Disk) -> list[Point]:
    """Boundary intersection points of two circles (0, 1 or 2 of them).

    Coordinates carry at most one square root.
    """
    dv = d2.center - d1.center
    dd = dv.norm2()
    if sign(dd) == 0:
        return []
    # foot of the radical line along the center line, as a fraction of dv
    t = (dd + d1.r2 - d2.r2) / (2 * dd)
    h2 = d1.r2 - t * t * dd  # squared half-chord length
    s = sign(h2)
    if s < 0:
        return []
    base = Point(d1.center.x + t * dv.x, d1.center.y + t * dv.y)
    if s == 0:
        return [base]
    u = sqrt_q(h2 / dd)
    perp = Point(-dv.y, dv.x)
    return [base + perp.scale(u), base - perp.scale(u)]


# --- bisectors and tri-tangent disks ---------------------------------------

def _primitive(l: Line) -> Line:
    """Scale a rational line so (a, b) are coprime integers.

    Keeps ``a^2 + b^2`` a perfect square whenever the direction is
    Pythagorean, which lets the radicals below collapse.
    """
    if any(isinstance(v, QuadExt) for v in (l.a, l.b, l.c)):
        return l
    den = math.lcm(int(mpq(l.a).denominator), int(mpq(l.b).denominator))
    a, b = int(l.a * den), int(l.b * den)
    g = math.gcd(a, b)
    f = mpq(den, g)
    return Line(mpq(a // g), mpq(b // g), l.c * f)


def _orient_to(l: Line, hint: Point) -> Line:
    s = sign(line_value(l, hint))
    if s == 0:
        raise GeometryError("interior hint lies on a boundary line")
    return l if s > 0 else l.flipped()


def _sqrt_ratio(n_num, n_den):
    """sqrt(n_num / n_den) for positive rationals, exact."""
    return sqrt_q(as_scalar(n_num) / as_scalar(n_den))


def internal_bisector(s1: Line, s2: Line, interior_hint: Point) -> Line:
    """Locus where the signed distances to ``s1`` and ``s2`` agree on the hint side.

    Coefficients live in ``Q(sqrt k)``; parallel lines give the midline.
    """
    l1 = _orient_to(_primitive(s1), interior_hint)
    l2 = _orient_to(_primitive(s2), interior_hint)
    n1, n2 = l1.normal2(), l2.normal2()
    if isinstance(n1, QuadExt) or isinstance(n2, QuadExt):
        raise GeometryError("bisector inputs must have rational coefficients")
    ratio = _sqrt_ratio(n1, n2)
    a, b, c = l1.a - ratio * l2.a, l1.b - ratio * l2.b, l1.c - ratio * l2.c
    if sign(a) == 0 and sign(b) == 0:
        if sign(c) == 0:
            raise GeometryError("identical lines have no bisector")
        # parallel, same side: the midline is the other combination
        a, b, c = l1.a + ratio * l2.a, l1.b + ratio * l2.b, l1.c + ratio * l2.c
    return Line(a, b, c)


def _det3(m):
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def tri_tangent_disk(s_prev: Line, s_mid: Line, s_next: Line, interior_hint: Point) -> Disk:
    """Disk tangent to three lines, centred on the hint side of all of them.

    Solves ``L_i(X) = r * sqrt(n_i)`` after scaling by ``sqrt(n_mid)``,
    which needs two radicals at most.
    """
    lines = [_orient_to(_primitive(l), interior_hint) for l in (s_prev, s_mid, s_next)]
    n_mid = lines[1].normal2()
    # rho = r * sqrt(n_mid); equation i: a_i x + b_i y - rho*sqrt(n_i/n_mid) = -c_i
    factors = [_sqrt_ratio(lines[0].normal2(), n_mid), mpq(1), _sqrt_ratio(lines[2].normal2(), n_mid)]
    m = [[l.a, l.b, -f] for l, f in zip(lines, factors)]
    rhs = [-l.c for l in lines]
    det = _det3(m)
    if sign(det) == 0:
        raise GeometryError("no disk is tangent to all three lines")

    def col(j):
        return [[rhs[i] if jj == j else m[i][jj] for jj in range(3)] for i in range(3)]

    x = _det3(col(0)) / det
    y = _det3(col(1)) / det
    rho = _det3(col(2)) / det
    if sign(rho) <= 0:
        raise GeometryError("tangent disk does not lie on the interior side")
    return Disk(Point(x, y), rho * rho / n_mid)
