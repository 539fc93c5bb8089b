"""Exact real numbers of the form ``a + b*sqrt(k)`` over the rationals.

Elements form a tower: ``a`` and ``b`` live in the field generated by
radicands strictly smaller than ``k``, so ``Q(sqrt k1)(sqrt k2)`` and
deeper nestings are all representable. Radicands are positive integers.
Signs are decided exactly by repeated squaring, which stays correct even
when two radicands are secretly dependent (e.g. ``k2 = 4*k1``).
"""
from __future__ import annotations

import math
from numbers import Rational

import gmpy2
from gmpy2 import mpq, mpz

__all__ = ["QuadExt", "as_scalar", "sign", "sqrt_q", "to_float", "to_mpf", "is_exact_zero"]


def as_scalar(v):
    """Coerce ints, Fractions, decimal or ``p/q`` strings into ``mpq``."""
    if isinstance(v, QuadExt):
        return v
    if type(v) is type(mpq()):
        return v
    if isinstance(v, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(v, (int, Rational, str)):
        return mpq(v) if not isinstance(v, str) else mpq(v.strip())
    if isinstance(v, float):
        # exact binary value of the float
        return mpq(v)
    if isinstance(v, type(mpz())):
        return mpq(v)
    raise TypeError(f"cannot convert {type(v).__name__} to an exact scalar")


def _top(x) -> int:
    return x.k if isinstance(x, QuadExt) else 0


def _split(x, k):
    if isinstance(x, QuadExt) and x.k == k:
        return x.a, x.b
    return x, 0


def _mk(a, b, k):
    if isinstance(b, QuadExt):
        return QuadExt(a, b, k)
    if b == 0:
        return a
    return QuadExt(a, b, k)


def sign(x) -> int:
    if isinstance(x, QuadExt):
        return x.sign()
    return (x > 0) - (x < 0)


def is_exact_zero(x) -> bool:
    return sign(x) == 0


class QuadExt:
    __slots__ = ("a", "b", "k", "_sign")

    def __init__(self, a, b, k: int):
        if k <= 1:
            raise ValueError("radicand must be an integer > 1")
        self.a = a
        self.b = b
        self.k = int(k)
        self._sign = None

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            other = mpq(other)
        elif not isinstance(other, QuadExt) and type(other) is not type(mpq()):
            try:
                other = as_scalar(other)
            except TypeError:
                return NotImplemented
        k = max(self.k, _top(other))
        a1, b1 = _split(self, k)
        a2, b2 = _split(other, k)
        return _mk(a1 + a2, b1 + b2, k)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.k)

    def __pos__(self):
        return self

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            other = mpq(other)
        elif not isinstance(other, QuadExt) and type(other) is not type(mpq()):
            try:
                other = as_scalar(other)
            except TypeError:
                return NotImplemented
        k = max(self.k, _top(other))
        a1, b1 = _split(self, k)
        a2, b2 = _split(other, k)
        if isinstance(b2, int) and b2 == 0:
            return _mk(a1 * a2, b1 * a2, k)
        if isinstance(b1, int) and b1 == 0:
            return _mk(a1 * a2, a1 * b2, k)
        return _mk(a1 * a2 + b1 * b2 * k, a1 * b2 + b1 * a2, k)

    __rmul__ = __mul__

    def inverse(self):
        norm = self.a * self.a - self.b * self.b * self.k
        if sign(norm) != 0:
            return _mk(self.a / norm, -self.b / norm, self.k)
        # norm vanishes although a, b are nonzero: sqrt(k) is already in the
        # base field and self equals either 0 or 2a.
        if self.sign() == 0:
            raise ZeroDivisionError("division by an exact zero")
        return 1 / (2 * self.a)

    def __truediv__(self, other):
        if isinstance(other, QuadExt):
            return self * other.inverse()
        other = as_scalar(other)
        if other == 0:
            raise ZeroDivisionError("division by zero")
        return _mk(self.a / other, self.b / other, self.k)

    def __rtruediv__(self, other):
        return as_scalar(other) * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        out = mpq(1)
        base = self
        while e:
            if e & 1:
                out = base * out
            base = base * base
            e >>= 1
        return out

    # ordering ---------------------------------------------------------------

    def sign(self) -> int:
        if self._sign is None:
            sa, sb = sign(self.a), sign(self.b)
            if sb == 0:
                s = sa
            elif sa == 0 or sa == sb:
                s = sb if sa == 0 else sa
            else:
                d = sign(self.a * self.a - self.b * self.b * self.k)
                s = sa * d
            self._sign = s
        return self._sign

    def _cmp(self, other) -> int:
        return sign(self - other)

    def __eq__(self, other):
        try:
            return self._cmp(other) == 0
        except TypeError:
            return NotImplemented

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    __hash__ = None

    def __bool__(self):
        return self.sign() != 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __float__(self):
        return to_float(self)

    def __repr__(self):
        return f"QuadExt({self.a!r}, {self.b!r}, {self.k})"

    def __str__(self):
        return f"({self.a} + {self.b}*sqrt({self.k}))"


def sqrt_q(q):
    """Square root of a nonnegative rational, exact.

    Returns an ``mpq`` when ``q`` is a perfect square, else a ``QuadExt``.
    """
    q = as_scalar(q)
    if isinstance(q, QuadExt):
        raise TypeError("sqrt_q only takes rationals")
    if q < 0:
        raise ValueError("square root of a negative number")
    if q == 0:
        return mpq(0)
    u, v = mpz(q.numerator), mpz(q.denominator)
    m = u * v
    if gmpy2.is_square(m):
        return mpq(gmpy2.isqrt(m), v)
    return QuadExt(mpq(0), mpq(1, v), int(m))


def to_float(x) -> float:
    if isinstance(x, QuadExt):
        return to_float(x.a) + to_float(x.b) * math.sqrt(x.k)
    return float(x)


def to_mpf(x, ctx=None):
    """High-precision evaluation via mpmath (uses the caller's working precision)."""
    import mpmath

    if isinstance(x, QuadExt):
        return to_mpf(x.a) + to_mpf(x.b) * mpmath.sqrt(x.k)
    return mpmath.mpf(int(x.numerator)) / int(x.denominator)
