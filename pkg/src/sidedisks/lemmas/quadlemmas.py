"""Quadrilateral lemma (L11) and the three-pairs hexagon lemma (L12)."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from gmpy2 import mpq

from ..geom import (
    Disk, GeometryError, Line, Point, disk_on_diameter, foot_of_perpendicular, gdisks_intersect,
    line_intersection, line_through, line_value, on_closed_segment, orient, tri_tangent_disk,
)
from ..io import parse_point, parse_scalar, point_json, scalar_str
from ..qext import sign
from .outcome import LemmaOutcome, Rejected
from .wedge import Similarity, _rat, rational_unit, unit_near

__all__ = ["QuadConfig", "check_quad", "quad_config", "HexConfig", "check_3pairs", "hex_config"]


def _need(cond: bool, what: str):
    if not cond:
        raise Rejected(what)


def _strictly_convex(pts) -> int:
    """Orientation (+1/-1) of a strictly convex polygon, or 0."""
    m = len(pts)
    s = orient(pts[0], pts[1], pts[2])
    if s == 0:
        return 0
    for k in range(m):
        if orient(pts[k], pts[(k + 1) % m], pts[(k + 2) % m]) != s:
            return 0
    # turning once around: every vertex sees the others on one side
    for k in range(m):
        a, b = pts[k], pts[(k + 1) % m]
        for t in range(m):
            if t in (k, (k + 1) % m):
                continue
            if orient(a, b, pts[t]) != s:
                return 0
    return s


def _inward(a: Point, b: Point, s: int) -> Line:
    """Line ab oriented so the polygon interior (orientation s) is positive."""
    l = line_through(a, b)  # left of a->b positive
    return l if s > 0 else l.flipped()


def _tangent_on(disk: Disk, a: Point, b: Point) -> bool:
    l = line_through(a, b)
    v = line_value(l, disk.center)
    if sign(v * v - disk.r2 * l.normal2()) != 0:
        return False
    return on_closed_segment(foot_of_perpendicular(disk.center, l), a, b)


def _inside(disk: Disk, lines) -> bool:
    for l in lines:
        v = line_value(l, disk.center)
        if sign(v) < 0 or sign(v * v - disk.r2 * l.normal2()) < 0:
            return False
    return True


def _line_meets_closed_segment(l: Line, p: Point, q: Point) -> bool:
    return sign(line_value(l, p)) * sign(line_value(l, q)) <= 0


# --- L11 -------------------------------------------------------------------------

@dataclass(frozen=True)
class QuadConfig:
    A: Point
    B: Point
    C: Point
    D: Point
    P: Point
    O: Point
    r2: mpq

    def to_json(self) -> dict:
        out = {k: point_json(getattr(self, k)) for k in "ABCDPO"}
        out["r2"] = scalar_str(self.r2)
        return out

    @classmethod
    def from_json(cls, obj) -> "QuadConfig":
        return cls(*(parse_point(obj[k]) for k in "ABCDPO"), parse_scalar(obj["r2"]))


def check_quad(cfg: QuadConfig, seed: int = 0) -> LemmaOutcome:
    A, B, C, D, P, O = cfg.A, cfg.B, cfg.C, cfg.D, cfg.P, cfg.O
    disk = Disk(O, cfg.r2)
    _need(sign(cfg.r2) > 0, "radius must be positive")
    s = _strictly_convex([A, B, C, D])
    _need(s != 0, "ABCD is not a strictly convex quadrilateral")
    P2 = line_intersection(line_through(B, C), line_through(A, D))
    _need(P2 is not None and P2.same(P), "P is not ell(B,C) meet ell(A,D)")
    _need(orient(A, B, P) == -orient(A, B, C), "ell(A,B) does not separate P from ABCD")
    lines = [_inward(A, B, s), _inward(B, C, s), _inward(C, D, s), _inward(D, A, s)]
    _need(_inside(disk, lines), "disk not inside ABCD")
    for a, b in ((A, B), (B, C), (D, A)):
        _need(_tangent_on(disk, a, b), "disk not tangent to AB, BC and DA")
    _need(_line_meets_closed_segment(line_through(A, O), B, C), "ell(A,O) misses BC")
    _need(_line_meets_closed_segment(line_through(B, O), D, A), "ell(B,O) misses DA")
    holds = not gdisks_intersect(disk_on_diameter(A, B), disk_on_diameter(C, D))
    return LemmaOutcome("L11", holds, {"config": cfg.to_json()}, seed)


def quad_config(rng: np.random.Generator) -> QuadConfig:
    """Candidate: tangent lines to a rational circle, C and D pushed out along BC, AD."""
    r = _rat(rng, "1/4", 4, 1 << 12)
    O = Point(mpq(0), mpq(0))
    # P on the -x axis; BC, DA tangent at angles +-(pi/2 + alpha), AB on the near arc
    # both base angles must exceed 2*alpha, so alpha < pi/6: tan(pi/12) > 0.2679
    tau = _rat(rng, "1/64", "2679/10000", 1 << 12)  # tan(alpha/2)
    ua = rational_unit(tau)
    n_bc = Point(-ua.y, ua.x)  # angle pi/2 + alpha
    n_da = Point(-ua.y, -ua.x)
    lim = (1 - tau) / (1 + tau)
    w = rational_unit(_rat(rng, -lim, lim, 1 << 12))
    n_ab = Point(-w.x, -w.y)

    def tline(u):
        return Line(u.x, u.y, -r)  # u.X = r

    l_ab, l_bc, l_da = tline(n_ab), tline(n_bc), tline(n_da)
    P = line_intersection(l_bc, l_da)
    B = line_intersection(l_ab, l_bc)
    A = line_intersection(l_ab, l_da)
    if P is None or A is None or B is None:
        raise Rejected("degenerate draw")
    # C', D': where ell(A,O) and ell(B,O) cross the lines BC and DA
    c1 = line_intersection(line_through(A, O), l_bc)
    d1 = line_intersection(line_through(B, O), l_da)
    if c1 is None or d1 is None:
        raise Rejected("degenerate draw")
    span = 1 + int(rng.integers(0, 4))
    # mu = 0 puts C exactly at C' (the extreme allowed position)
    mu_c = mpq(0) if int(rng.integers(0, 50)) == 0 else _rat(rng, 0, span, 1 << 12)
    mu_d = _rat(rng, 0, span, 1 << 12)
    C = c1 + (c1 - P).scale(mu_c)
    D = d1 + (d1 - P).scale(mu_d)
    sim = Similarity.random(rng)
    return QuadConfig(sim(A), sim(B), sim(C), sim(D), sim(P), sim(O), r * r * sim.scale ** 2)


# --- L12 -------------------------------------------------------------------------

@dataclass(frozen=True)
class HexConfig:
    P: Point
    Q: Point
    R: Point
    A: Point
    B: Point
    C: Point
    D: Point
    E: Point
    F: Point

    def to_json(self) -> dict:
        return {k: point_json(getattr(self, k)) for k in "PQRABCDEF"}

    @classmethod
    def from_json(cls, obj) -> "HexConfig":
        return cls(*(parse_point(obj[k]) for k in "PQRABCDEF"))


def check_3pairs(cfg: HexConfig, seed: int = 0) -> LemmaOutcome:
    P, Q, R = cfg.P, cfg.Q, cfg.R
    A, B, C, D, E, F = cfg.A, cfg.B, cfg.C, cfg.D, cfg.E, cfg.F
    s = orient(P, Q, R)
    _need(s != 0, "PQR is degenerate")
    _need(on_closed_segment(B, P, Q) and on_closed_segment(C, P, Q), "B, C not on PQ")
    _need(on_closed_segment(D, Q, R) and on_closed_segment(E, Q, R), "D, E not on QR")
    _need(on_closed_segment(F, R, P) and on_closed_segment(A, R, P), "F, A not on RP")
    hexa = [A, B, C, D, E, F]
    _need(_strictly_convex(hexa) == s, "ABCDEF is not a convex hexagon oriented like PQR")
    hint = Point((P.x + Q.x + R.x) / 3, (P.y + Q.y + R.y) / 3)
    try:
        inc = tri_tangent_disk(line_through(R, P), line_through(P, Q), line_through(Q, R), hint)
    except GeometryError as exc:
        raise Rejected(str(exc)) from exc
    lines = [_inward(hexa[k], hexa[(k + 1) % 6], s) for k in range(6)]
    _need(_inside(inc, lines), "incircle not inside the hexagon")
    for a, b in ((B, C), (D, E), (F, A)):
        _need(_tangent_on(inc, a, b), "incircle not tangent to BC, DE, FA")
    pairs = (("AB", "DE", (A, B), (D, E)), ("CD", "FA", (C, D), (F, A)), ("EF", "BC", (E, F), (B, C)))
    for tag, (n1, n2, s1, s2) in zip("abc", pairs):
        if not gdisks_intersect(disk_on_diameter(*s1), disk_on_diameter(*s2)):
            return LemmaOutcome("L12", True, {"config": cfg.to_json(), "statement": tag}, seed)
    return LemmaOutcome("L12", False, {"config": cfg.to_json(), "statement": None}, seed)


def _triangle(rng):
    """Triangle PQR circumscribing a rational circle, or a random integer one."""
    if int(rng.integers(0, 10)) == 0:
        pts = [Point(mpq(int(rng.integers(-1000, 1001))), mpq(int(rng.integers(-1000, 1001))))
               for _ in range(3)]
        if orient(*pts) < 0:
            pts[1], pts[2] = pts[2], pts[1]
        return pts
    r = _rat(rng, "1/4", 4, 1 << 12)
    # three tangent normals with gaps below pi: half-angle tangents of sorted angles
    while True:
        angs = np.sort(rng.uniform(0, 2 * np.pi, size=3))
        gaps = np.diff(np.append(angs, angs[0] + 2 * np.pi))
        if gaps.max() < np.pi * 0.97 and gaps.min() > 0.05:
            break
    normals = [unit_near(a) for a in angs]
    lines = [Line(u.x, u.y, -r) for u in normals]
    pts = [line_intersection(lines[k - 1], lines[k]) for k in range(3)]
    if any(p is None for p in pts) or orient(*pts) == 0:
        raise Rejected("degenerate draw")
    if orient(*pts) < 0:
        pts[1], pts[2] = pts[2], pts[1]
    return pts


def _incircle_float(P, Q, R):
    (px, py), (qx, qy), (rx, ry) = P.as_float(), Q.as_float(), R.as_float()
    a = np.hypot(qx - rx, qy - ry)
    b = np.hypot(rx - px, ry - py)
    c = np.hypot(px - qx, py - qy)
    s = a + b + c
    return ((a * px + b * qx + c * rx) / s, (a * py + b * qy + c * ry) / s), a, b, c


def hex_config(rng: np.random.Generator) -> HexConfig:
    """Candidate: cut the three corners of a triangle short of its incircle."""
    P, Q, R = _triangle(rng)
    _, a, b, c = _incircle_float(P, Q, R)
    sp = (a + b + c) / 2
    # tangent lengths from each vertex, as fractions of the adjacent sides
    tl = {"P": sp - a, "Q": sp - b, "R": sp - c}

    def toward(X, Y, frac):
        return X + (Y - X).scale(frac)

    def cut(vertex_len, side_len):
        f = float(rng.uniform(0, 1)) ** 2 * vertex_len / side_len
        return mpq(int(f * (1 << 20)), 1 << 20)

    B = toward(P, Q, cut(tl["P"], c))
    C = toward(Q, P, cut(tl["Q"], c))
    D = toward(Q, R, cut(tl["Q"], a))
    E = toward(R, Q, cut(tl["R"], a))
    F = toward(R, P, cut(tl["R"], b))
    A = toward(P, R, cut(tl["P"], b))
    sim = Similarity.random(rng)
    return HexConfig(*(sim(v) for v in (P, Q, R, A, B, C, D, E, F)))
