"""Factorial asymptotics: correction factors and powers of e."""

from __future__ import annotations

from fractions import Fraction
from math import factorial

import pytest

from epilab.bignum import BigFixed
from epilab.oracle import constant_reference, e_oracle, exp_oracle
from epilab.stirling import (
    STIRLING_COEFFS,
    double_factorial,
    e_from_ratio,
    e_half_integer,
    e_power_approx,
    stirling_e8_decomposition,
    stirling_factor,
)


def test_coefficients_frozen():
    assert STIRLING_COEFFS == (
        Fraction(1),
        Fraction(1, 12),
        Fraction(1, 288),
        Fraction(-139, 51840),
    )


def test_double_factorial_values_and_identities():
    assert [double_factorial(k) for k in (-1, 0, 1, 2, 5, 6, 8)] == [1, 1, 1, 2, 15, 48, 384]
    for k in range(1, 12):
        assert double_factorial(2 * k) == 2**k * factorial(k)
        assert double_factorial(2 * k + 1) * 2**k * factorial(k) == factorial(2 * k + 1)
    with pytest.raises(ValueError):
        double_factorial(-2)


def test_stirling_factor_is_coefficient_prefix():
    n = Fraction(2)
    for k in range(1, 5):
        expected = sum(STIRLING_COEFFS[i] / n**i for i in range(k))
        assert stirling_factor(n, k) == expected
    assert stirling_factor(Fraction(2), 4) == Fraction(432221, 414720)
    assert stirling_factor(Fraction(1), 1) == 1
    with pytest.raises(ValueError):
        stirling_factor(n, 0)
    with pytest.raises(ValueError):
        stirling_factor(n, 5)


def test_e_power_approx_accuracy():
    assert e_power_approx(1, 3).to_decimal_string() == "2.7242175346"
    e_ref = e_oracle(20).value.as_fraction()
    err = abs(e_power_approx(1, 3, scale=15).as_fraction() - e_ref) / e_ref
    assert err < Fraction(3, 1000)
    # the asymptotic corrections are not monotone term by term at n=1,
    # but every corrected estimate beats the bare k=1 one
    errs = {
        k: abs(e_power_approx(1, k, scale=15).as_fraction() - e_ref) / e_ref
        for k in (1, 2, 3, 4)
    }
    assert errs[2] < errs[1]
    assert errs[3] < errs[1]
    assert errs[4] < errs[3]


def test_e_from_ratio_value():
    assert e_from_ratio(1, 3).to_decimal_string() == "2.7132116428"
    e_ref = e_oracle(20).value.as_fraction()
    # larger n sharpens the ratio estimate
    close = abs(e_from_ratio(6, 3, scale=15).as_fraction() - e_ref)
    far = abs(e_from_ratio(1, 3, scale=15).as_fraction() - e_ref)
    assert close < far


def test_e_half_integer_shapes():
    assert str(e_half_integer(0, 2)) == "sqrt(2)*7/6"
    assert str(e_half_integer(1, 2)) == "sqrt(2)*19/6"
    assert str(e_half_integer(0, 1)) == "sqrt(2)"
    with pytest.raises(ValueError):
        e_half_integer(0, 3)
    with pytest.raises(ValueError):
        e_half_integer(-1, 2)


def test_e_half_integer_square_is_exact_rational():
    sq = e_half_integer(0, 2).squared()
    assert sq.is_rational()
    assert sq.as_fraction() == Fraction(49, 18)
    assert e_half_integer(1, 2).squared().as_fraction() == Fraction(361, 18)


def test_e_half_integer_tracks_exp():
    for n in range(0, 5):
        x = BigFixed.from_fraction(Fraction(2 * n + 1, 2), 6)
        target = exp_oracle(x, 20).value.as_fraction()
        s = e_half_integer(n, 2)
        lo, hi = s.interval(20)
        rel = abs((lo + hi) / 2 - target) / target
        assert rel < Fraction(1, 1000), n
        # dropping the correction term loses accuracy
        lo1, hi1 = e_half_integer(n, 1).interval(20)
        assert abs((lo1 + hi1) / 2 - target) > abs((lo + hi) / 2 - target)


def test_e8_decomposition_exact_parts():
    d = stirling_e8_decomposition()
    assert d.correction == Fraction(17850625, 11943936)
    assert d.correction == Fraction(13, 12) ** 4 * Fraction(25, 24) ** 2
    assert d.gap_from_3_2 == d.correction - Fraction(3, 2)
    assert d.gap_from_3_2 == Fraction(-65279, 11943936)
    assert abs(d.gap_from_3_2) < Fraction(6, 1000)


def test_e8_decomposition_certified_values():
    d = stirling_e8_decomposition()
    assert d.value_96pi3.to_decimal_string() == "2976.6025613088"
    assert d.e8.to_decimal_string() == "2980.9579870417"
    assert d.ratio.to_decimal_string() == "1.0014632204"
    # base * 3/2 = 96 pi^3 by construction
    pi_ref = constant_reference("pi", 30).value.as_fraction()
    assert abs(d.base_64pi3.as_fraction() - 64 * pi_ref**3) < Fraction(1, 10**8)
    assert abs(d.value_96pi3.as_fraction() - 96 * pi_ref**3) < Fraction(1, 10**8)
    # and the ratio column really is e^8 over 96 pi^3
    assert abs(
        d.ratio.as_fraction() - d.e8.as_fraction() / d.value_96pi3.as_fraction()
    ) < Fraction(1, 10**8)


def test_e8_decomposition_scale_parameter():
    d = stirling_e8_decomposition(scale=16)
    assert d.e8.scale == 16
    assert d.e8.to_decimal_string() == "2980.9579870417282747"
