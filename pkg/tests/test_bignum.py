"""Fixed-point decimal arithmetic, integer roots, and quadratic surds."""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from epilab.bignum import (
    BigFixed,
    Surd,
    add,
    arith,
    div,
    floor_neg_log10,
    ilog10_floor,
    iroot,
    mul,
    pow_int,
    rational_to_fixed,
    root_interval,
    sqrt,
    sqrt_interval,
    sub,
    surd_eval,
)

mantissas = st.integers(min_value=-(10**40), max_value=10**40)
scales = st.integers(min_value=0, max_value=50)
fractions = st.fractions(
    min_value=Fraction(-10**6), max_value=Fraction(10**6), max_denominator=10**9
)


def test_decimal_string_basic():
    assert BigFixed.from_int(5, 3).to_decimal_string() == "5.000"
    assert BigFixed.from_int(0, 2).to_decimal_string() == "0.00"
    assert BigFixed.from_int(-7).to_decimal_string() == "-7"
    assert BigFixed.parse("-0.005").to_decimal_string() == "-0.005"
    assert BigFixed.parse("3.14").as_fraction() == Fraction(314, 100)


def test_parse_rejects_garbage():
    for bad in ("", "1e5", "1.2.3", "abc", "--1", "1..", "."):
        with pytest.raises(ValueError):
            BigFixed.parse(bad)


@given(mantissas, scales)
def test_decimal_string_round_trip(m, s):
    x = BigFixed(m, s)
    assert BigFixed.parse(x.to_decimal_string()) == x


@given(fractions, scales)
def test_from_fraction_within_half_ulp(q, s):
    x = BigFixed.from_fraction(q, s)
    ulp = Fraction(1, 10**s)
    assert abs(x.as_fraction() - q) <= ulp / 2


def test_rounding_ties_away_from_zero():
    assert BigFixed.from_fraction(Fraction(1, 2), 0).mantissa == 1
    assert BigFixed.from_fraction(Fraction(-1, 2), 0).mantissa == -1
    assert BigFixed.from_fraction(Fraction(25, 1000), 2).to_decimal_string() == "0.03"
    assert BigFixed.from_fraction(Fraction(-25, 1000), 2).to_decimal_string() == "-0.03"


def test_equality_is_numeric_across_scales():
    a = BigFixed.parse("1.50")
    b = BigFixed.parse("1.5")
    assert a == b
    assert hash(a) == hash(b)
    assert a.scale != b.scale


@given(fractions, fractions)
def test_ordering_matches_fractions(p, q):
    a = BigFixed.from_fraction(p, 12)
    b = BigFixed.from_fraction(q, 12)
    assert (a < b) == (a.as_fraction() < b.as_fraction())
    assert (a <= b) == (a.as_fraction() <= b.as_fraction())


def test_rescale_rounds_to_nearest():
    x = BigFixed.parse("2.71828")
    assert x.rescale(2).to_decimal_string() == "2.72"
    assert x.rescale(8).to_decimal_string() == "2.71828000"
    assert x.rescale(8) == x


@given(fractions, fractions, scales)
def test_arith_half_ulp(p, q, s):
    a = BigFixed.from_fraction(p, 20)
    b = BigFixed.from_fraction(q, 20)
    ulp = Fraction(1, 10**s)
    for op, fn in (("add", add), ("sub", sub), ("mul", mul)):
        exact = {
            "add": a.as_fraction() + b.as_fraction(),
            "sub": a.as_fraction() - b.as_fraction(),
            "mul": a.as_fraction() * b.as_fraction(),
        }[op]
        got = fn(a, b, s)
        assert abs(got.as_fraction() - exact) <= ulp / 2
        assert arith(a, b, op, s) == got


def test_div_nearest_and_zero():
    one = BigFixed.from_int(1)
    three = BigFixed.from_int(3)
    assert div(one, three, 5).to_decimal_string() == "0.33333"
    assert div(BigFixed.from_int(2), three, 5).to_decimal_string() == "0.66667"
    with pytest.raises(ZeroDivisionError):
        div(one, BigFixed.from_int(0), 5)
    with pytest.raises(ValueError):
        arith(one, three, "mod", 5)


def test_rational_to_fixed_matches_from_fraction():
    q = Fraction(355, 113)
    assert rational_to_fixed(q, 15) == BigFixed.from_fraction(q, 15)


def test_sqrt_known_digits():
    s = sqrt(BigFixed.from_int(2), 30)
    assert s.to_decimal_string() == "1.414213562373095048801688724210"
    assert sqrt(BigFixed.from_int(0), 10).mantissa == 0
    with pytest.raises(ValueError):
        sqrt(BigFixed.from_int(-1), 10)


@given(st.fractions(min_value=Fraction(0), max_value=Fraction(10**6), max_denominator=10**6), scales)
def test_sqrt_within_one_ulp(q, s):
    x = BigFixed.from_fraction(q, 25)
    r = sqrt(x, s).as_fraction()
    u = Fraction(1, 10**s)
    # r is within one ulp of the true square root of x
    assert (r - u) ** 2 < x.as_fraction() or r <= u
    assert x.as_fraction() < (r + u) ** 2


@given(fractions, st.integers(min_value=-6, max_value=6))
def test_pow_int_matches_fraction_power(q, k):
    x = BigFixed.from_fraction(q, 8)
    if x.mantissa == 0 and k < 0:
        with pytest.raises(ZeroDivisionError):
            pow_int(x, k, 10)
        return
    exact = x.as_fraction() ** k
    got = pow_int(x, k, 10)
    assert abs(got.as_fraction() - exact) <= Fraction(1, 2 * 10**10)


@given(st.integers(min_value=0, max_value=10**30), st.integers(min_value=1, max_value=9))
def test_iroot_is_floor_root(n, k):
    r = iroot(n, k)
    assert r**k <= n
    assert (r + 1) ** k > n


def test_iroot_exact_powers():
    assert iroot(10**60, 3) == 10**20
    assert iroot(961, 2) == 31
    assert iroot(960, 2) == 30
    with pytest.raises(ValueError):
        iroot(-1, 2)


@given(
    st.fractions(min_value=Fraction(1, 10**6), max_value=Fraction(10**6), max_denominator=10**9),
    st.fractions(min_value=Fraction(0), max_value=Fraction(10**3), max_denominator=10**9),
    st.integers(min_value=2, max_value=6),
    st.integers(min_value=1, max_value=30),
)
def test_root_interval_encloses(lo, width, k, scale):
    hi = lo + width
    rlo, rhi = root_interval(lo, hi, k, scale)
    assert 0 <= rlo <= rhi
    assert rlo**k <= lo
    assert hi <= rhi**k


def test_root_interval_tight_on_point():
    rlo, rhi = root_interval(Fraction(2), Fraction(2), 2, 30)
    assert rhi - rlo <= Fraction(2, 10**30)
    assert sqrt_interval(Fraction(2), Fraction(2), 30) == (rlo, rhi)


def test_log10_helpers():
    assert ilog10_floor(Fraction(1)) == 0
    assert ilog10_floor(Fraction(99, 10)) == 0
    assert ilog10_floor(Fraction(10)) == 1
    assert ilog10_floor(Fraction(1, 10)) == -1
    assert floor_neg_log10(Fraction(1, 1000)) == 3
    assert floor_neg_log10(Fraction(999, 1000)) == 0
    assert floor_neg_log10(Fraction(15, 10000)) == 2
    assert floor_neg_log10(Fraction(10)) == -1
    with pytest.raises(ValueError):
        floor_neg_log10(Fraction(0))


@given(st.fractions(min_value=Fraction(1, 10**12), max_value=Fraction(10**12), max_denominator=10**12))
def test_floor_neg_log10_defining_property(x):
    d = floor_neg_log10(x)
    assert Fraction(10) ** (-d - 1) < x <= Fraction(10) ** (-d)


def test_surd_canonical_forms():
    assert str(Surd.make(Fraction(0), Fraction(2), 8)) == "sqrt(2)*4"
    assert str(Surd.make(Fraction(1), Fraction(3), 1)) == "4"
    assert str(Surd.make(Fraction(-4), Fraction(1), 51)) == "sqrt(51) - 4"
    assert str(Surd.make(Fraction(0), Fraction(7, 6), 2)) == "sqrt(2)*7/6"
    assert Surd.make(Fraction(2), Fraction(0), 7).is_rational()


def test_surd_squared_exact():
    s = Surd.make(Fraction(0), Fraction(7, 6), 2)
    assert s.squared().is_rational()
    assert s.squared().as_fraction() == Fraction(49, 18)
    t = Surd.make(Fraction(-4), Fraction(1), 51)
    assert t.squared().as_fraction is not None
    # (sqrt(51) - 4)^2 = 67 - 8*sqrt(51)
    sq = t.squared()
    assert sq.a == 67
    assert sq.b == -8
    assert sq.r == 51


@given(
    st.fractions(min_value=Fraction(-100), max_value=Fraction(100), max_denominator=1000),
    st.fractions(min_value=Fraction(-100), max_value=Fraction(100), max_denominator=1000),
    st.integers(min_value=2, max_value=50),
)
def test_surd_interval_contains_value(a, b, r):
    s = Surd.make(a, b, r)
    lo, hi = s.interval(25)
    assert lo <= hi
    assert hi - lo <= (2 * abs(s.b) + 2) * Fraction(1, 10**25)
    # a + b*sqrt(r) lies inside: check by squaring the residual sign
    mid = surd_eval(s, 30).as_fraction()
    assert lo - Fraction(1, 10**28) <= mid <= hi + Fraction(1, 10**28)


def test_surd_eval_known_value():
    got = surd_eval(Surd.make(Fraction(-4), Fraction(1), 51), 10)
    assert got.to_decimal_string() == "3.1414284285"
