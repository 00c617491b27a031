"""Reference constants: certified digit prefixes and cross-checks.

The pi cross-check below recomputes pi from a different arctan identity
(pi/4 = arctan(1/2) + arctan(1/3)) than the production code path, so the
two computations share no formula-specific constants.
"""

from __future__ import annotations

from fractions import Fraction

import pytest

from epilab.bignum import BigFixed
from epilab.oracle import (
    CONSTANTS,
    EXP_ARG_LIMIT,
    ExpRangeError,
    constant_reference,
    e_interval,
    e_oracle,
    exp_interval,
    exp_oracle,
    pi_interval,
    pi_oracle,
)

PI_50 = "3.14159265358979323846264338327950288419716939937510"
E_50 = "2.71828182845904523536028747135266249775724709369995"


def arctan_unit_fraction(u: int, eps: Fraction) -> Fraction:
    """arctan(1/u) for integer u >= 2, error below eps.

    Alternating Taylor series: the first omitted term bounds the tail.
    """
    total = Fraction(0)
    k = 0
    while True:
        term = Fraction(1, (2 * k + 1) * u ** (2 * k + 1))
        if term < eps:
            return total
        total += term if k % 2 == 0 else -term
        k += 1


def independent_pi(eps_digits: int) -> Fraction:
    eps = Fraction(1, 16 * 10**eps_digits)
    return 4 * (arctan_unit_fraction(2, eps) + arctan_unit_fraction(3, eps))


def test_pi_frozen_prefix():
    assert pi_oracle(50).value.to_decimal_string().startswith(PI_50)
    assert pi_oracle(10).value.to_decimal_string().startswith("3.1415926535")


def test_e_frozen_prefix():
    assert e_oracle(50).value.to_decimal_string().startswith(E_50)
    assert e_oracle(10).value.to_decimal_string().startswith("2.7182818284")


def test_pi_agrees_with_independent_identity():
    # reference computed from a different arctan decomposition
    ref = independent_pi(40)
    for digits in (10, 25, 35):
        v = pi_oracle(digits)
        assert v.certified_digits >= digits
        assert abs(v.value.as_fraction() - ref) <= 2 * Fraction(1, 10**digits)


def test_e_agrees_with_inline_factorial_sum():
    # 40-digit reference summed right here: sum 1/n! with tail 2/(N+1)!
    total = Fraction(0)
    fact = 1
    n = 0
    while Fraction(2, fact) >= Fraction(1, 10**42):
        total += Fraction(1, fact)
        n += 1
        fact *= n
    v = e_oracle(35)
    assert abs(v.value.as_fraction() - total) <= 2 * Fraction(1, 10**35)


def test_interval_width_and_containment():
    # the reference itself carries ~1e-39 error and the cached enclosure
    # may be far tighter than requested, hence the slack term
    ref_pi = independent_pi(40)
    slack = Fraction(1, 10**38)
    for d in (5, 15, 30):
        lo, hi = pi_interval(d)
        assert lo <= ref_pi + slack
        assert ref_pi - slack <= hi
        assert hi - lo < 2 * Fraction(1, 10**d)
    lo, hi = e_interval(30)
    # the truncated 30-digit prefix brackets e from below within one ulp
    trunc = Fraction(int(E_50[:32].replace(".", "")), 10**30)
    assert lo <= trunc + Fraction(1, 10**30)
    assert hi >= trunc
    assert hi - lo < 2 * Fraction(1, 10**30)


def test_oracle_results_are_cached_consistently():
    a = pi_oracle(20)
    b = pi_oracle(20)
    assert a == b
    # the 60-digit value refines, never contradicts, the 20-digit one
    wide = pi_oracle(60).value.as_fraction()
    assert abs(a.value.as_fraction() - wide) <= Fraction(1, 10**19)


def test_exp_zero_and_one():
    zero = BigFixed.from_int(0)
    one = BigFixed.from_int(1)
    assert exp_oracle(zero, 20).value.as_fraction() == 1
    e20 = exp_oracle(one, 20).value
    assert e20.to_decimal_string().startswith(E_50[:20])


def test_exp_half_against_inline_taylor():
    # exp(1/2) summed here directly: tail of sum x^k/k! at x=1/2 is
    # below twice the first omitted term
    x = Fraction(1, 2)
    total = Fraction(0)
    term = Fraction(1)
    k = 0
    while 2 * term >= Fraction(1, 10**40):
        total += term
        k += 1
        term = term * x / k
    got = exp_oracle(BigFixed.parse("0.5"), 30).value.as_fraction()
    assert abs(got - total) <= 2 * Fraction(1, 10**30)


def test_exp_addition_identity():
    # exp(3) must sit inside the product of the exp(1) and exp(2) enclosures
    lo1, hi1 = exp_interval(Fraction(1), 30)
    lo2, hi2 = exp_interval(Fraction(2), 30)
    lo3, hi3 = exp_interval(Fraction(3), 30)
    assert lo1 * lo2 <= hi3
    assert lo3 <= hi1 * hi2


def test_exp_negative_is_reciprocal():
    lo_p, hi_p = exp_interval(Fraction(7, 3), 30)
    lo_n, hi_n = exp_interval(Fraction(-7, 3), 30)
    assert lo_n * lo_p <= 1 <= hi_n * hi_p


def test_exp_range_limit():
    assert EXP_ARG_LIMIT == 100
    exp_interval(Fraction(EXP_ARG_LIMIT), 5)
    with pytest.raises(ExpRangeError):
        exp_interval(Fraction(EXP_ARG_LIMIT + 1), 5)
    with pytest.raises(ExpRangeError):
        exp_interval(Fraction(-EXP_ARG_LIMIT - 1), 5)
    with pytest.raises(ExpRangeError):
        exp_oracle(BigFixed.from_int(200), 5)


def test_constant_reference_all_names():
    assert set(CONSTANTS) == {"e", "pi", "two_pi", "pi6", "pi8"}
    pi_f = pi_oracle(40).value.as_fraction()
    expected = {
        "e": e_oracle(30).value.as_fraction(),
        "pi": pi_f,
        "two_pi": 2 * pi_f,
        "pi6": pi_f**6,
        "pi8": pi_f**8,
    }
    # pi8 ~ 9488.5, so a 30-digit pi leaves ~25 digits after powering
    for name in CONSTANTS:
        v = constant_reference(name, 25)
        assert v.certified_digits >= 25
        assert abs(v.value.as_fraction() - expected[name]) <= Fraction(1, 10**22)
    with pytest.raises(ValueError):
        constant_reference("tau", 10)
