from fractions import Fraction

import mpmath
import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from sidedisks.qext import QuadExt, as_scalar, sign, sqrt_q, to_float, to_mpf

rats = st.fractions(min_value=-50, max_value=50, max_denominator=40)
radicands = st.sampled_from([2, 3, 5, 6, 7, 10, 11])


def test_as_scalar_coercions():
    assert as_scalar(3) == mpq(3)
    assert as_scalar("1/3") == mpq(1, 3)
    assert as_scalar(Fraction(2, 7)) == mpq(2, 7)
    assert as_scalar(0.5) == mpq(1, 2)
    with pytest.raises(TypeError):
        as_scalar(True)


def test_sqrt_of_squares_is_rational():
    assert sqrt_q(mpq(9, 4)) == mpq(3, 2)
    assert not isinstance(sqrt_q(mpq(9, 4)), QuadExt)
    assert sqrt_q(0) == 0
    with pytest.raises(ValueError):
        sqrt_q(-1)


def test_sqrt_two_squared():
    r = sqrt_q(2)
    assert r * r == 2
    assert sign(r - mpq(141421, 100000)) == 1
    assert sign(r - mpq(141422, 100000)) == -1


def test_dependent_radicands():
    # sqrt(8) - 2*sqrt(2) is zero although the radicands differ
    x = sqrt_q(8) - 2 * sqrt_q(2)
    assert sign(x) == 0


def test_tower_sign():
    # (sqrt 2 + sqrt 3)^2 = 5 + 2 sqrt 6 < 10 because sqrt 6 < 5/2
    x = sqrt_q(2) + sqrt_q(3) - sqrt_q(10)
    assert sign(x) == -1
    y = sqrt_q(5) + sqrt_q(6) - sqrt_q(11) - sqrt_q(2)
    with mpmath.workdps(50):
        ref = mpmath.sqrt(5) + mpmath.sqrt(6) - mpmath.sqrt(11) - mpmath.sqrt(2)
    assert sign(y) == (1 if ref > 0 else -1)


@given(rats, rats, radicands)
def test_sign_matches_high_precision(a, b, k):
    x = QuadExt(as_scalar(a), as_scalar(b), k)
    with mpmath.workdps(60):
        ref = mpmath.mpf(a.numerator) / a.denominator + mpmath.mpf(b.numerator) / b.denominator * mpmath.sqrt(k)
        expect = 0 if ref == 0 else (1 if ref > 0 else -1)
    assert sign(x) == expect


@given(rats, rats, rats, rats, radicands)
def test_field_identities(a, b, c, d, k):
    x = QuadExt(as_scalar(a), as_scalar(b), k)
    y = QuadExt(as_scalar(c), as_scalar(d), k)
    assert (x + y) - y == x
    assert x * y == y * x
    if sign(y) != 0:
        assert (x / y) * y == x


@settings(max_examples=50)
@given(rats, rats, radicands)
def test_float_and_mpf_agree(a, b, k):
    x = QuadExt(as_scalar(a), as_scalar(b), k)
    assert to_float(x) == pytest.approx(float(to_mpf(x)), rel=1e-12, abs=1e-12)


def test_comparisons_mix_with_rationals():
    r = sqrt_q(2)
    assert r > 1 and r < 2
    assert 1 < r
    assert abs(-r) == r
