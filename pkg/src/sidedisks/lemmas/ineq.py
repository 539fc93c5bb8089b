"""Grid checks of the trigonometric inequalities behind the quadrilateral
lemma and the tangent-line wedge lemma.

Quadrilateral region: 0 < a < pi/6 and pi/4 + a/2 <= b < pi/2 - a.
  e1: 4 sin(b+a) sin(b-2a) cos b - (sin(b-2a) + sin b)^2 cos(b+a) > 0
  e2: sin(b+a) sin(b-2a) cos b - sin^2(b-a) cos(b+a)              > 0
  e3: tan b - 3 tan a                                              > 0
Wedge region: 0 < b < a < pi/2.
  w1: (cot a + tan(b/2)) cos b - cot a > 0
  w2: sin(a - b)                       > 0
and on the diagonal b = a both w1 and w2 vanish exactly.

Values are evaluated with MPFR at ``PREC`` bits. When a value is too close
to zero to trust, it is re-evaluated with interval arithmetic at growing
precision; an interval still straddling zero at 200 digits is reported as a
degenerate sample instead of a verdict.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import gmpy2
import mpmath
from gmpy2 import mpfr

from .outcome import LemmaOutcome

__all__ = ["check_proof_inequalities", "quad_exprs", "wedge_exprs", "GridReport", "PREC"]

PREC = 200  # bits, about 60 decimal digits
TRUST = mpfr(2) ** -120  # below this magnitude re-check with intervals
MAX_DPS = 200


def quad_exprs(a, b, m):
    """Values of e1, e2, e3 using math module ``m`` (gmpy2 or mpmath.iv)."""
    sab, sb2a, cb = m.sin(b + a), m.sin(b - 2 * a), m.cos(b)
    sb, cba = m.sin(b), m.cos(b + a)
    e1 = 4 * sab * sb2a * cb - (sb2a + sb) ** 2 * cba
    e2 = sab * sb2a * cb - m.sin(b - a) ** 2 * cba
    e3 = m.tan(b) - 3 * m.tan(a)
    return e1, e2, e3


def wedge_exprs(a, b, m):
    cot = 1 / m.tan(a)
    w1 = (cot + m.tan(b / 2)) * m.cos(b) - cot
    w2 = m.sin(a - b)
    return w1, w2


class _IV:
    """Adapter so the same expressions run on mpmath intervals."""
    sin = staticmethod(mpmath.iv.sin)
    cos = staticmethod(mpmath.iv.cos)
    tan = staticmethod(mpmath.iv.tan)


def _interval_sign(fn, k, a_num, b_num) -> int:
    """Sign of expression k at the grid point by interval evaluation.

    Returns +1/-1, or 0 when still undecided at MAX_DPS digits.
    """
    for dps in (60, 120, MAX_DPS):
        mpmath.iv.dps = dps
        v = fn(a_num(mpmath.iv), b_num(mpmath.iv), _IV)[k]
        if v.a > 0:
            return 1
        if v.b < 0:
            return -1
    return 0


@dataclass
class GridReport:
    points: int = 0
    failures: list = field(default_factory=list)
    degenerate: list = field(default_factory=list)
    min_value: dict = field(default_factory=dict)
    equality_ok: bool = True

    @property
    def holds(self) -> bool:
        return not self.failures and not self.degenerate and self.equality_ok


def _grid_axis(k: int, m: int):
    """Fraction (k + 1/2) / m, the midpoint of cell k: never on a boundary."""
    return mpfr(2 * k + 1) / (2 * m)


def check_proof_inequalities(n_alpha: int = 1000, n_beta: int = 500, n_wedge: int = 1001,
                             seed: int = 0) -> LemmaOutcome:
    """Evaluate the inequalities on an n_alpha x n_beta quadrilateral grid and a
    triangular wedge grid with about n_wedge^2 / 2 points."""
    rep = GridReport()
    with gmpy2.context(precision=PREC):
        pi = gmpy2.const_pi()
        for i in range(n_alpha):
            fa = _grid_axis(i, n_alpha)
            a = fa * pi / 6
            lo = pi / 4 + a / 2
            hi = pi / 2 - a
            for j in range(n_beta):
                fb = mpfr(j) / n_beta  # j = 0 is the beta = gamma boundary itself
                b = lo + (hi - lo) * fb
                vals = quad_exprs(a, b, gmpy2)
                rep.points += 1
                for k, v in enumerate(vals):
                    _record(rep, ("e1", "e2", "e3")[k], k, v, quad_exprs,
                            _quad_point(i, n_alpha, j, n_beta))
        for i in range(n_wedge):
            fa = _grid_axis(i, n_wedge)
            a = fa * pi / 2
            for j in range(i):
                b = a * _grid_axis(j, i)  # strictly between 0 and a
                vals = wedge_exprs(a, b, gmpy2)
                rep.points += 1
                for k, v in enumerate(vals):
                    _record(rep, ("w1", "w2")[k], k, v, wedge_exprs,
                            _wedge_point(i, n_wedge, j, i))
            # equality case b = a: both expressions vanish
            w1, w2 = wedge_exprs(a, a, gmpy2)
            if abs(w1) > TRUST or w2 != 0:
                rep.equality_ok = False
    wit = {"points": rep.points, "failures": rep.failures[:10], "degenerate": rep.degenerate[:10],
           "min": {k: float(v) for k, v in sorted(rep.min_value.items())},
           "equality_case": rep.equality_ok}
    return LemmaOutcome("ineq", rep.holds, wit, seed)


def _quad_point(i, na, j, nb):
    def a_num(m):
        return m.mpf(2 * i + 1) / (2 * na) * m.pi / 6

    def b_num(m):
        a = a_num(m)
        lo = m.pi / 4 + a / 2
        return lo + (m.pi / 2 - a - lo) * m.mpf(j) / nb
    return a_num, b_num


def _wedge_point(i, nw, j, ni):
    def a_num(m):
        return m.mpf(2 * i + 1) / (2 * nw) * m.pi / 2

    def b_num(m):
        return a_num(m) * m.mpf(2 * j + 1) / (2 * ni)
    return a_num, b_num


def _record(rep: GridReport, name, k, v, fn, point):
    cur = rep.min_value.get(name)
    if cur is None or v < cur:
        rep.min_value[name] = v
    if v > TRUST:
        return
    if v < -TRUST:
        rep.failures.append({"expr": name, "value": float(v)})
        return
    s = _interval_sign(fn, k, *point)
    if s < 0:
        rep.failures.append({"expr": name, "value": float(v)})
    elif s == 0:
        rep.degenerate.append({"expr": name})
