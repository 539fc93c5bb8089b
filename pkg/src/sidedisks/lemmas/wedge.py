"""Disk-and-wedge lemmas.

Common setting: a disk C with center O, a point P outside it, and the two
tangency points T1, T2 of the tangents from P. C_P is the disk centred at P
through T1 and T2.

  L3  A on PT1, B on PT2, AB tangent to C         => D_AB inside C_P
  L4  E on h(P,T1) past T1, D on h(P,O), line ED
      misses the open disk, angle EDP <= pi/2     => D_DE, C_P disjoint
  L5  as L4 with angle EDP > pi/2                 => disjoint
  L6  E on h(P,T1) past T1, D inside the wedge
      (T1, P, O), h(E,D) misses h(P,O), line ED
      misses the open disk                        => disjoint
  L7  D on h(P,O) past O, E inside the wedge,
      h(D,E) misses h(P,T1)                       => disjoint

Hypotheses are checked exactly and a violation raises ``Rejected``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from gmpy2 import mpq

from ..geom import (
    Disk, Point, disk_contains_disk, disk_on_diameter, dist2_point_line, foot_of_perpendicular,
    gdisks_intersect, line_through, on_closed_segment, rays_intersect,
)
from ..io import parse_point, parse_scalar, point_json, scalar_str
from ..qext import sign
from .outcome import LemmaOutcome, Rejected

__all__ = ["WedgeConfig", "verify_wedge_lemma", "wedge_config", "WEDGE_CASES",
           "on_ray", "in_open_wedge", "rational_unit", "unit_near", "Similarity"]

WEDGE_CASES = ("L3", "L4", "L5", "L6", "L7")


@dataclass(frozen=True)
class WedgeConfig:
    case_id: str
    C: Disk
    P: Point
    T1: Point
    T2: Point
    A: Point | None = None
    B: Point | None = None
    D: Point | None = None
    E: Point | None = None

    def to_json(self) -> dict:
        out = {"case": self.case_id, "O": point_json(self.C.center), "r2": scalar_str(self.C.r2),
               "P": point_json(self.P), "T1": point_json(self.T1), "T2": point_json(self.T2)}
        for name in "ABDE":
            v = getattr(self, name)
            if v is not None:
                out[name] = point_json(v)
        return out

    @classmethod
    def from_json(cls, obj) -> "WedgeConfig":
        extra = {k: parse_point(obj[k]) for k in "ABDE" if k in obj}
        return cls(obj["case"], Disk(parse_point(obj["O"]), parse_scalar(obj["r2"])),
                   parse_point(obj["P"]), parse_point(obj["T1"]), parse_point(obj["T2"]), **extra)


# --- exact position tests ---------------------------------------------------

def on_ray(x: Point, p: Point, q: Point, past_q: bool = False) -> bool:
    """x on the closed ray from p through q; with ``past_q`` strictly beyond q."""
    d = q - p
    w = x - p
    if sign(d.cross(w)) != 0:
        return False
    t = w.dot(d)
    if past_q:
        return sign(t - d.norm2()) > 0
    return sign(t) >= 0


def in_open_wedge(x: Point, p: Point, u: Point, v: Point) -> bool:
    """x strictly inside the convex wedge at p spanned by rays p->u and p->v."""
    du, dv, w = u - p, v - p, x - p
    s = sign(du.cross(dv))
    if s == 0:
        return False
    return sign(du.cross(w)) == s and sign(w.cross(dv)) == s


def _need(cond: bool, what: str):
    if not cond:
        raise Rejected(what)


def _check_tangent_setting(cfg: WedgeConfig):
    O, r2, P = cfg.C.center, cfg.C.r2, cfg.P
    _need(sign(r2) > 0, "disk radius must be positive")
    _need(sign((P - O).norm2() - r2) > 0, "P must lie outside the disk")
    for t in (cfg.T1, cfg.T2):
        _need(sign((t - O).norm2() - r2) == 0, "tangency point off the circle")
        _need(sign((t - O).dot(t - P)) == 0, "line P-T is not tangent")
    _need(not cfg.T1.same(cfg.T2), "T1 and T2 coincide")


def _line_misses_open_disk(p: Point, q: Point, c: Disk) -> bool:
    if p.same(q):
        return False
    return sign(dist2_point_line(c.center, line_through(p, q)) - c.r2) >= 0


def _check_hypotheses(cfg: WedgeConfig):
    _check_tangent_setting(cfg)
    P, O, T1 = cfg.P, cfg.C.center, cfg.T1
    case = cfg.case_id
    if case == "L3":
        A, B = cfg.A, cfg.B
        _need(A is not None and B is not None, "L3 needs A and B")
        _need(on_closed_segment(A, P, T1), "A not on segment P-T1")
        _need(on_closed_segment(B, P, cfg.T2), "B not on segment P-T2")
        _need(not A.same(B), "A equals B")
        ab = line_through(A, B)
        _need(sign(dist2_point_line(O, ab) - cfg.C.r2) == 0, "AB not tangent to the disk")
        _need(on_closed_segment(foot_of_perpendicular(O, ab), A, B), "tangency point off AB")
        return
    D, E = cfg.D, cfg.E
    _need(D is not None and E is not None, f"{case} needs D and E")
    _need(not D.same(E), "D equals E")
    if case in ("L4", "L5"):
        _need(on_ray(E, P, T1, past_q=True), "E not on h(P,T1) beyond T1")
        _need(on_ray(D, P, O) and not D.same(P), "D not on h(P,O)")
        _need(_line_misses_open_disk(E, D, cfg.C), "line ED enters the disk")
        acute = sign((E - D).dot(P - D)) >= 0
        _need(acute if case == "L4" else not acute, "angle EDP on the wrong side of pi/2")
    elif case == "L6":
        _need(on_ray(E, P, T1, past_q=True), "E not on h(P,T1) beyond T1")
        _need(in_open_wedge(D, P, T1, O), "D not inside the wedge")
        _need(not rays_intersect(E, D - E, P, O - P), "h(E,D) meets h(P,O)")
        _need(_line_misses_open_disk(E, D, cfg.C), "line ED enters the disk")
    elif case == "L7":
        _need(on_ray(D, P, O, past_q=True), "D not on h(P,O) beyond O")
        _need(in_open_wedge(E, P, T1, O), "E not inside the wedge")
        _need(not rays_intersect(D, E - D, P, T1 - P), "h(D,E) meets h(P,T1)")
    else:
        raise ValueError(f"unknown wedge case {case!r}")


def verify_wedge_lemma(cfg: WedgeConfig, seed: int = 0) -> LemmaOutcome:
    _check_hypotheses(cfg)
    cp = Disk(cfg.P, (cfg.T1 - cfg.P).norm2())
    if cfg.case_id == "L3":
        holds = disk_contains_disk(cp, disk_on_diameter(cfg.A, cfg.B))
    else:
        holds = not gdisks_intersect(disk_on_diameter(cfg.D, cfg.E), cp)
    return LemmaOutcome(cfg.case_id, holds, {"config": cfg.to_json()}, seed)


# --- generators ---------------------------------------------------------------

def _rat(rng: np.random.Generator, lo, hi, den: int = 1 << 20) -> mpq:
    """Uniform-ish rational in [lo, hi] with bounded denominator."""
    k = int(rng.integers(0, den + 1))
    return mpq(lo) + (mpq(hi) - mpq(lo)) * mpq(k, den)


def rational_unit(t) -> Point:
    """Point of the unit circle at half-angle tangent ``t``."""
    t = mpq(t)
    d = 1 + t * t
    return Point((1 - t * t) / d, 2 * t / d)


def unit_near(angle: float, den: int = 4096) -> Point:
    """Rational unit vector close to the given angle (radians)."""
    half = (angle / 2) % np.pi
    if half <= np.pi / 4 or half >= 3 * np.pi / 4:
        return rational_unit(mpq(round(float(np.tan(half)) * den), den))
    u = rational_unit(mpq(round(float(np.tan(half - np.pi / 2)) * den), den))
    return Point(-u.x, -u.y)


@dataclass(frozen=True)
class Similarity:
    """Rational rotation, uniform scale, optional mirror, then translation."""
    rot: Point
    scale: mpq
    mirror: bool
    shift: Point

    @classmethod
    def random(cls, rng: np.random.Generator) -> "Similarity":
        return cls(rational_unit(_rat(rng, -3, 3, 1 << 10)), _rat(rng, "1/8", 8, 1 << 10),
                   bool(rng.integers(0, 2)),
                   Point(_rat(rng, -100, 100, 1 << 8), _rat(rng, -100, 100, 1 << 8)))

    def __call__(self, p: Point | None) -> Point | None:
        if p is None:
            return None
        y = -p.y if self.mirror else p.y
        c, s = self.rot.x, self.rot.y
        return Point((c * p.x - s * y) * self.scale + self.shift.x,
                     (s * p.x + c * y) * self.scale + self.shift.y)

    def disk(self, d: Disk) -> Disk:
        return Disk(self(d.center), d.r2 * self.scale * self.scale)


def _frame(rng):
    """Canonical frame: P at the origin, O on the +x axis, T1 above.

    Returns (a, alpha-tangent tau, cos, sin, O, r2, T1, T2, dir1).
    """
    tau = _rat(rng, "1/64", "63/64", 1 << 12)
    u = rational_unit(tau)  # (cos alpha, sin alpha)
    a = _rat(rng, "1/2", 4, 1 << 12)
    cos_a, sin_a = u.x, u.y
    O = Point(a / cos_a, mpq(0))
    r2 = (a * sin_a / cos_a) ** 2
    T1 = Point(a * cos_a, a * sin_a)
    T2 = Point(a * cos_a, -a * sin_a)
    return a, tau, cos_a, sin_a, O, r2, T1, T2, u


def _rotate(v: Point, u: Point, clockwise: bool = False) -> Point:
    s = -u.y if clockwise else u.y
    return Point(u.x * v.x - s * v.y, s * v.x + u.x * v.y)


def wedge_config(case: str, rng: np.random.Generator) -> WedgeConfig:
    """One random candidate configuration (may violate the hypotheses)."""
    a, tau, cos_a, sin_a, O, r2, T1, T2, dir1 = _frame(rng)
    P = Point(mpq(0), mpq(0))
    A = B = D = E = None
    if case == "L3":
        # tangent point on the near arc: angle pi + phi, |phi| < pi/2 - alpha
        lim = (1 - tau) / (1 + tau)  # tan((pi/2 - alpha)/2)
        w = rational_unit(_rat(rng, -lim, lim, 1 << 12))
        u = Point(-w.x, -w.y)
        r = a * sin_a / cos_a
        # tangent line: (X - O).u = r ; intersect with X = t*dir1 and X = t*dir2
        dir2 = Point(cos_a, -sin_a)
        if sign(dir1.dot(u)) == 0 or sign(dir2.dot(u)) == 0:
            raise Rejected("tangent line parallel to a wedge side")
        t_a = (r + O.dot(u)) / dir1.dot(u)
        t_b = (r + O.dot(u)) / dir2.dot(u)
        A, B = dir1.scale(t_a), dir2.scale(t_b)
    elif case in ("L4", "L5"):
        t = _rat(rng, a, (6 if case == "L4" else 12) * a)
        E = dir1.scale(t)
        ex = E.x
        po = O.x
        if case == "L4":
            pick = int(rng.integers(0, 20))
            s = ex if pick == 0 else _rat(rng, ex, ex + 4 * po)  # pick 0: right angle
        else:
            s = _rat(rng, po, ex) if ex > po else _rat(rng, 0, ex)
        D = Point(s, mpq(0))
    elif case == "L6":
        t = _rat(rng, a, 6 * a)
        E = dir1.scale(t)
        beta = rational_unit(_rat(rng, 0, tau * mpq(21, 20), 1 << 12))
        w = _rotate(dir1, beta, clockwise=True)
        D = E + w.scale(_rat(rng, "1/16", 4 * a, 1 << 12))
    elif case == "L7":
        s = _rat(rng, O.x, 4 * O.x)
        if s == O.x:
            s += mpq(1, 1 << 20)
        D = Point(s, mpq(0))
        theta = rational_unit(_rat(rng, 0, tau * mpq(21, 20), 1 << 12))
        E = D + theta.scale(_rat(rng, "1/16", 4 * a, 1 << 12))
    else:
        raise ValueError(f"unknown wedge case {case!r}")
    sim = Similarity.random(rng)
    return WedgeConfig(case, sim.disk(Disk(O, r2)), sim(P), sim(T1), sim(T2),
                       sim(A), sim(B), sim(D), sim(E))
