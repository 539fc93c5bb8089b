"""Seeded convex polygon generators.

All randomness comes from NumPy's Philox4x64 counter-based generator keyed by
the 64-bit seed, so a corpus is reproducible from ``(family, n, seed)`` alone.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass

import mpmath
import numpy as np
from gmpy2 import mpq

from .geom import GeometryError
from .poly import ConvexPolygon, PolygonError, min_vertex_sine2, side_direction, validate
from .qext import as_scalar

__all__ = [
    "GenSpec", "GeneratorError", "FAMILIES", "rng_for", "random_convex", "hull_of_points",
    "regular_approx", "paper_pentagon", "unbounded_clip", "thin_sliver", "generate",
    "MIN_SINE2",
]

FAMILIES = (
    "RandomEdgeVectors", "RandomHullOfPoints", "RegularApprox", "ThinSliver",
    "PaperPentagon", "UnboundedClip",
)
MIN_SINE2 = mpq(1, 10**12)  # vertex-angle sine must stay above 1e-6
MAX_RETRIES = 100
COORD = 1000


class GeneratorError(RuntimeError):
    pass


@dataclass(frozen=True)
class GenSpec:
    n: int
    seed: int
    family: str = "RandomEdgeVectors"
    scale: str = "1"
    aspect: str = "100"

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")

    def to_json(self) -> dict:
        return asdict(self)


def rng_for(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=int(seed) % 2**64))


def _nondegenerate(p: ConvexPolygon) -> bool:
    dirs = [side_direction(s) for s in p.sides]
    return min_vertex_sine2(dirs, cyclic=p.bounded) >= MIN_SINE2


def _scaled(vs, scale):
    s = as_scalar(scale)
    return [(x * s, y * s) for x, y in vs]


def random_convex(n: int, seed: int, scale="1") -> ConvexPolygon:
    """Edge-vector method: random integer edge vectors, closed by their negated sum, sorted by angle."""
    if n < 3:
        raise GeometryError("n must be >= 3")
    rng = rng_for(seed)
    for _ in range(MAX_RETRIES):
        vecs = [tuple(int(c) for c in rng.integers(-COORD, COORD + 1, size=2)) for _ in range(n - 1)]
        if any(v == (0, 0) for v in vecs):
            continue
        last = (-sum(v[0] for v in vecs), -sum(v[1] for v in vecs))
        if last == (0, 0):
            continue
        vecs.append(last)
        vecs.sort(key=lambda v: float(np.arctan2(v[1], v[0])) % (2 * np.pi))
        x = y = 0
        pts = []
        for dx, dy in vecs:
            pts.append((mpq(x), mpq(y)))
            x, y = x + dx, y + dy
        try:
            p = validate(_scaled(pts, scale))
        except PolygonError:
            continue
        if _nondegenerate(p):
            return p
    raise GeneratorError(f"no valid polygon after {MAX_RETRIES} draws (n={n}, seed={seed})")


def _hull(points):
    pts = sorted(set(points))
    if len(pts) < 3:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for q in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], q) <= 0:
            lower.pop()
        lower.append(q)
    for q in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], q) <= 0:
            upper.pop()
        upper.append(q)
    return lower[:-1] + upper[:-1]


def hull_of_points(n: int, seed: int, scale="1") -> ConvexPolygon:
    """Random points in an annulus, convex hull, then a random n-subset of hull vertices."""
    if n < 3:
        raise GeometryError("n must be >= 3")
    rng = rng_for(seed)
    for _ in range(MAX_RETRIES):
        m = 3 * n + 4
        ang = rng.uniform(0, 2 * np.pi, size=m)
        rad = rng.uniform(0.7, 1.0, size=m) * COORD
        pts = [(int(round(r * np.cos(a))), int(round(r * np.sin(a)))) for a, r in zip(ang, rad)]
        hull = _hull(pts)
        if len(hull) < n:
            continue
        keep = sorted(rng.choice(len(hull), size=n, replace=False).tolist())
        try:
            p = validate(_scaled([(mpq(hull[k][0]), mpq(hull[k][1])) for k in keep], scale))
        except PolygonError:
            continue
        if _nondegenerate(p):
            return p
    raise GeneratorError(f"no valid hull polygon (n={n}, seed={seed})")


def regular_approx(n: int, digits: int = 20, phase=0) -> ConvexPolygon:
    """Regular n-gon on the unit circle, vertex i at angle 2*pi*i/n + phase, rounded to 10^-digits."""
    if n < 3 or digits < 12:
        raise GeometryError("need n >= 3 and digits >= 12")
    d = digits
    while True:
        with mpmath.workdps(d + 15):
            unit = mpmath.mpf(10) ** d
            pts = []
            for i in range(n):
                t = 2 * mpmath.pi * i / n + mpmath.mpf(phase)
                pts.append((mpq(int(mpmath.nint(mpmath.cos(t) * unit)), 10**d),
                            mpq(int(mpmath.nint(mpmath.sin(t) * unit)), 10**d)))
        try:
            return validate(pts)
        except PolygonError:
            d *= 2


def paper_pentagon() -> ConvexPolygon:
    return validate([(1, 9), (0, 3), (0, -3), (1, -9), (60, 0)])


def unbounded_clip(n: int, seed: int, scale="1") -> ConvexPolygon:
    """Unbounded n-gon: a bounded (n+1)-gon with one side deleted.

    Draws n integer directions spanning less than a half turn; the chain of
    segments plus the two end rays is the (n+1)-gon closed by a far side,
    with that closing side removed.
    """
    if n < 3:
        raise GeometryError("n must be >= 3")
    rng = rng_for(seed)
    for _ in range(MAX_RETRIES):
        base = tuple(int(c) for c in rng.integers(-COORD, COORD + 1, size=2))
        if base == (0, 0):
            continue
        dirs = [base]
        while len(dirs) < n:
            v = tuple(int(c) for c in rng.integers(-COORD, COORD + 1, size=2))
            if base[0] * v[1] - base[1] * v[0] > 0:
                dirs.append(v)
        b_ang = np.arctan2(base[1], base[0])
        dirs.sort(key=lambda v: (np.arctan2(v[1], v[0]) - b_ang) % (2 * np.pi))
        x = y = 0
        chain = [(mpq(0), mpq(0))]
        for dx, dy in dirs[1:-1]:
            x, y = x + dx, y + dy
            chain.append((mpq(x), mpq(y)))
        first_dir = (-dirs[0][0], -dirs[0][1])
        try:
            p = validate(_scaled(chain, scale), first_dir, dirs[-1])
        except PolygonError:
            continue
        if _nondegenerate(p):
            return p
    raise GeneratorError(f"no valid unbounded polygon (n={n}, seed={seed})")


def thin_sliver(n: int, aspect, seed: int) -> ConvexPolygon:
    """Convex n-gon squeezed into a 1 x (1/aspect) box."""
    aspect = as_scalar(aspect)
    if aspect < 1:
        raise GeometryError("aspect must be >= 1")
    for attempt in range(MAX_RETRIES):
        base = hull_of_points(n, (seed + attempt * 0x9E3779B97F4A7C15) % 2**64)
        vs = base.vertices
        xs = [v.x for v in vs]
        ys = [v.y for v in vs]
        w, h = max(xs) - min(xs), max(ys) - min(ys)
        x0, y0 = min(xs), min(ys)
        pts = [((v.x - x0) / w, (v.y - y0) / (h * aspect)) for v in vs]
        p = validate(pts)
        if _nondegenerate(p):
            return p
    raise GeneratorError(f"no valid sliver (n={n}, seed={seed})")


def generate(spec: GenSpec) -> ConvexPolygon:
    fam = spec.family
    if fam == "RandomEdgeVectors":
        return random_convex(spec.n, spec.seed, spec.scale)
    if fam == "RandomHullOfPoints":
        return hull_of_points(spec.n, spec.seed, spec.scale)
    if fam == "RegularApprox":
        phase = rng_for(spec.seed).uniform(0, 2 * np.pi)
        return regular_approx(spec.n, 20, repr(float(phase)))
    if fam == "ThinSliver":
        return thin_sliver(spec.n, spec.aspect, spec.seed)
    if fam == "PaperPentagon":
        if spec.n != 5:
            raise GeometryError("PaperPentagon has n = 5")
        return paper_pentagon()
    return unbounded_clip(spec.n, spec.seed, spec.scale)
