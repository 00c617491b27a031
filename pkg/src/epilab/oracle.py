"""Certified reference values for pi, e, and exp.

Everything downstream that claims "N digits correct" is measured against
these oracles, so they are deliberately boring and fully certified:

* pi comes from the Machin identity pi/4 = 4*arctan(1/5) - arctan(1/239),
  each arctangent evaluated as an alternating Taylor series in exact
  rational partial sums.  The first omitted term bounds the remainder,
  which is the entire certificate.
* e is the factorial series sum(1/n!) with remainder bound 2/(N+1)!.
* exp(x) splits x = k + f with integer k and 0 <= f < 1, raises the
  certified e ball to the k-th power exactly, and evaluates exp(f) by
  Taylor with remainder bound 2*f^(N+1)/(N+1)!.

The low-level ``*_interval`` functions return exact rational enclosures
[lo, hi] and are what the expression evaluator consumes; the public
``*_oracle`` functions wrap the midpoint into an :class:`OracleValue`.

All functions are pure; the module-level caches only ever grow toward
higher precision and are guarded by a lock, so concurrent callers see
consistent values.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction

from .bignum import BigFixed

__all__ = [
    "OracleValue",
    "ExpRangeError",
    "pi_oracle",
    "e_oracle",
    "exp_oracle",
    "pi_interval",
    "e_interval",
    "exp_interval",
    "constant_reference",
    "CONSTANTS",
]

#: constants a series in this package may describe
CONSTANTS = ("e", "pi", "two_pi", "pi6", "pi8")

EXP_ARG_LIMIT = 100


class ExpRangeError(ValueError):
    """exp() argument outside the supported range |x| <= 100."""


@dataclass(frozen=True)
class OracleValue:
    """A rendered reference value with |value - true| < 10**-certified_digits."""

    value: BigFixed
    certified_digits: int


def _floor_grid(x: Fraction, scale: int) -> Fraction:
    p = 10**scale
    return Fraction((x.numerator * p) // x.denominator, p)


def _ceil_grid(x: Fraction, scale: int) -> Fraction:
    p = 10**scale
    return Fraction(-((-x.numerator * p) // x.denominator), p)


def _round_out(lo: Fraction, hi: Fraction, scale: int) -> tuple[Fraction, Fraction]:
    return _floor_grid(lo, scale), _ceil_grid(hi, scale)


def _arctan_inv(q: int, eps: Fraction) -> tuple[Fraction, Fraction]:
    """(partial sum, remainder bound) for arctan(1/q), q >= 2.

    Alternating series sum (-1)^k / ((2k+1) q^(2k+1)); the remainder is
    bounded by the first omitted term.
    """
    total = Fraction(0)
    k = 0
    qq = q * q
    power = q  # q^(2k+1)
    while True:
        term = Fraction(1, (2 * k + 1) * power)
        if k % 2:
            total -= term
        else:
            total += term
        k += 1
        power *= qq
        nxt = Fraction(1, (2 * k + 1) * power)
        if nxt < eps:
            return total, nxt


_lock = threading.Lock()
_pi_cache: tuple[int, Fraction, Fraction] | None = None  # (eps_digits, lo, hi)
_e_cache: tuple[int, Fraction, Fraction] | None = None


def pi_interval(eps_digits: int) -> tuple[Fraction, Fraction]:
    """Exact rational enclosure of pi with width < 2 * 10**-eps_digits."""
    global _pi_cache
    with _lock:
        if _pi_cache is not None and _pi_cache[0] >= eps_digits:
            return _pi_cache[1], _pi_cache[2]
    eps = Fraction(1, 10**eps_digits)
    a5, r5 = _arctan_inv(5, eps / 32)
    a239, r239 = _arctan_inv(239, eps / 8)
    center = 16 * a5 - 4 * a239
    err = 16 * r5 + 4 * r239  # < eps
    lo, hi = center - err, center + err
    with _lock:
        if _pi_cache is None or _pi_cache[0] < eps_digits:
            _pi_cache = (eps_digits, lo, hi)
    return lo, hi


def e_interval(eps_digits: int) -> tuple[Fraction, Fraction]:
    """Exact rational enclosure of e with width < 2 * 10**-eps_digits."""
    global _e_cache
    with _lock:
        if _e_cache is not None and _e_cache[0] >= eps_digits:
            return _e_cache[1], _e_cache[2]
    eps = Fraction(1, 10**eps_digits)
    total = Fraction(1)
    fact = 1
    n = 0
    while True:
        n += 1
        fact *= n
        total += Fraction(1, fact)
        tail = Fraction(2, fact * (n + 1))
        if tail < eps:
            break
    lo, hi = total, total + tail
    with _lock:
        if _e_cache is None or _e_cache[0] < eps_digits:
            _e_cache = (eps_digits, lo, hi)
    return lo, hi


def exp_interval(x: Fraction, eps_digits: int) -> tuple[Fraction, Fraction]:
    """Exact rational enclosure of exp(x), width <= 10**-eps_digits.

    Requires |x| <= EXP_ARG_LIMIT.
    """
    x = Fraction(x)
    if abs(x) > EXP_ARG_LIMIT:
        raise ExpRangeError(f"exp argument {float(x):g} outside |x| <= {EXP_ARG_LIMIT}")
    k = x.numerator // x.denominator
    f = x - k  # 0 <= f < 1
    # Integer digits of e^k, to translate relative precision into absolute.
    mag = (abs(k) * 4343) // 10000 + 2
    target = Fraction(1, 10**eps_digits)
    extra = 15
    while True:
        work = eps_digits + mag + extra
        e_lo, e_hi = e_interval(work)
        if k >= 0:
            p_lo, p_hi = e_lo**k, e_hi**k
        else:
            p_lo, p_hi = 1 / e_hi ** (-k), 1 / e_lo ** (-k)
        p_lo, p_hi = _round_out(p_lo, p_hi, work)
        # Taylor for exp(f); partial sums underestimate, remainder bound
        # 2 f^(n+1)/(n+1)! is valid because f/(n+2) <= 1/2 for f < 1.
        s = Fraction(1)
        term = Fraction(1)
        n = 0
        tiny = Fraction(1, 10**work)
        while True:
            n += 1
            term *= Fraction(f, n)
            s += term
            rem = 2 * term * f / (n + 1)
            if rem < tiny:
                break
        t_lo, t_hi = s, s + rem
        lo, hi = p_lo * t_lo, p_hi * t_hi
        if hi - lo <= target:
            return _round_out(lo, hi, eps_digits + 4)
        extra *= 2


def pi_oracle(digits: int) -> OracleValue:
    """pi to at least `digits` certified decimal places."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    lo, hi = pi_interval(digits + 5)
    value = BigFixed.from_fraction((lo + hi) / 2, digits + 3)
    return OracleValue(value, digits + 2)


def e_oracle(digits: int) -> OracleValue:
    """e to at least `digits` certified decimal places."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    lo, hi = e_interval(digits + 5)
    value = BigFixed.from_fraction((lo + hi) / 2, digits + 3)
    return OracleValue(value, digits + 2)


def exp_oracle(x: BigFixed, digits: int) -> OracleValue:
    """exp(x) to at least `digits` certified decimal places, |x| <= 100."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    lo, hi = exp_interval(x.as_fraction(), digits + 4)
    value = BigFixed.from_fraction((lo + hi) / 2, digits + 2)
    return OracleValue(value, digits)


def _iv_pow(lo: Fraction, hi: Fraction, k: int) -> tuple[Fraction, Fraction]:
    # positive interval, positive power
    return lo**k, hi**k


def constant_reference(constant: str, digits: int) -> OracleValue:
    """Certified reference for any constant a builtin series describes.

    Derived constants (two_pi, pi6, pi8) are produced from the pi
    enclosure by exact interval arithmetic, so their certificates remain
    rigorous.
    """
    if constant == "pi":
        return pi_oracle(digits)
    if constant == "e":
        return e_oracle(digits)
    if constant == "two_pi":
        lo, hi = pi_interval(digits + 6)
        return OracleValue(BigFixed.from_fraction(lo + hi, digits + 3), digits + 2)
    if constant == "pi6":
        lo, hi = _iv_pow(*pi_interval(digits + 10), 6)
        return OracleValue(BigFixed.from_fraction((lo + hi) / 2, digits + 3), digits + 2)
    if constant == "pi8":
        lo, hi = _iv_pow(*pi_interval(digits + 10), 8)
        return OracleValue(BigFixed.from_fraction((lo + hi) / 2, digits + 3), digits + 2)
    raise ValueError(f"unknown constant {constant!r}; expected one of {CONSTANTS}")
