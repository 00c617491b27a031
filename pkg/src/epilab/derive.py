"""Derivations built on the certified evaluator: quadratic surd roots,
first-order binomial linearization, exact 2x2 linear solving, the
integer scan over n*pi + m*e, and certified continued fractions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .bignum import Surd
from .expr import Expr, PrecisionCapError, eval_interval
from .oracle import e_interval, pi_interval

__all__ = [
    "solve_pi_quadratic",
    "binomial_linearize",
    "linearize_error_bound",
    "solve_linear_2x2",
    "ScanRow",
    "linear_combo_scan",
    "cfrac",
]

RationalLike = int | Fraction


def solve_pi_quadratic(b: RationalLike, c: RationalLike) -> Surd:
    """Larger root of x^2 + b*x = c as an exact Surd.

    The root is -b/2 + sqrt(c + b^2/4); the discriminant must be
    positive.  A rational discriminant p/q enters the surd as
    sqrt(p*q)/q, which Surd.make then canonicalizes.
    """
    b = Fraction(b)
    c = Fraction(c)
    disc = c + b * b / 4
    if disc <= 0:
        raise ValueError("discriminant c + b^2/4 must be positive")
    return Surd.make(-b / 2, Fraction(1, disc.denominator),
                     disc.numerator * disc.denominator)


def binomial_linearize(s: Surd, base: RationalLike) -> Fraction:
    """Replace sqrt(r) with base + (r - base^2)/(2*base) and evaluate.

    First-order binomial expansion of sqrt(base^2 + d) around the
    rational guess base > 0; exact rational arithmetic throughout.
    """
    base = Fraction(base)
    if base <= 0:
        raise ValueError("base must be positive")
    return s.a + s.b * (base + (s.r - base * base) / (2 * base))


def linearize_error_bound(s: Surd, base: RationalLike) -> Fraction:
    """Bound on |binomial_linearize(s, base) - exact value of s|.

    With d = r - base^2 >= 0 the binomial remainder gives
    |sqrt(r) - (base + d/(2*base))| <= d^2/(8*base^3), scaled here by
    |b|.  Requires base <= sqrt(r); the bound does not hold as stated
    for overestimating bases.
    """
    base = Fraction(base)
    if base <= 0:
        raise ValueError("base must be positive")
    d = s.r - base * base
    if d < 0:
        raise ValueError("bound requires base^2 <= r")
    return abs(s.b) * d * d / (8 * base**3)


def solve_linear_2x2(
    a11: RationalLike, a12: RationalLike, b1: RationalLike,
    a21: RationalLike, a22: RationalLike, b2: RationalLike,
) -> tuple[Fraction, Fraction]:
    """Exact solution (x, y) of {a11 x + a12 y = b1, a21 x + a22 y = b2}."""
    a11, a12, b1 = Fraction(a11), Fraction(a12), Fraction(b1)
    a21, a22, b2 = Fraction(a21), Fraction(a22), Fraction(b2)
    det = a11 * a22 - a12 * a21
    if det == 0:
        raise ValueError("singular system")
    return (b1 * a22 - b2 * a12) / det, (a11 * b2 - a21 * b1) / det


@dataclass(frozen=True)
class ScanRow:
    n: int
    m: int
    value: Fraction
    nearest: int
    residual: Fraction
    mod7: bool
    predicted: int | None
    flagged: bool


def linear_combo_scan(
    max_coeff: int,
    digits: int = 30,
    threshold: Fraction = Fraction(6, 100),
) -> list[ScanRow]:
    """Scan n*pi + m*e for all |n|, |m| <= max_coeff, (n, m) != (0, 0).

    Each row records the midpoint value, the nearest integer, the signed
    residual, whether n - 2m is divisible by 7, and for such rows the
    predicted integer (22n + 19m)/7 (always exact when 7 | n - 2m).  A
    row is flagged when |residual| < threshold.  Interval widths at the
    default precision are ~1e-28, far below any threshold in use, so the
    midpoint comparisons are decisive.
    """
    if max_coeff < 1:
        raise ValueError("max_coeff must be >= 1")
    if threshold <= 0 or threshold > Fraction(1, 2):
        raise ValueError("threshold must be in (0, 1/2]")
    plo, phi = pi_interval(digits)
    elo, ehi = e_interval(digits)
    rows = []
    for n in range(-max_coeff, max_coeff + 1):
        for m in range(-max_coeff, max_coeff + 1):
            if n == 0 and m == 0:
                continue
            lo = (n * plo if n >= 0 else n * phi) + (m * elo if m >= 0 else m * ehi)
            hi = (n * phi if n >= 0 else n * plo) + (m * ehi if m >= 0 else m * elo)
            mid = (lo + hi) / 2
            nearest = math.floor(mid + Fraction(1, 2))
            residual = mid - nearest
            mod7 = (n - 2 * m) % 7 == 0
            predicted = None
            if mod7:
                num = 22 * n + 19 * m
                if num % 7 == 0:
                    predicted = num // 7
            rows.append(ScanRow(
                n=n, m=m, value=mid, nearest=nearest, residual=residual,
                mod7=mod7, predicted=predicted,
                flagged=abs(residual) < threshold,
            ))
    return rows


def _floor_cf(lo: Fraction, hi: Fraction, n_terms: int) -> list[int] | None:
    # floor-algorithm continued fraction on an interval; every emitted
    # quotient is certain because both endpoints agree on it.  None
    # means the interval is too wide to decide the next quotient.
    out: list[int] = []
    while len(out) < n_terms:
        flo = math.floor(lo)
        if flo != math.floor(hi):
            return None
        out.append(flo)
        lo -= flo
        hi -= flo
        if hi == 0:
            break
        if lo == 0:
            # an endpoint terminates but the interval does not; only
            # more precision can tell a huge quotient from termination
            return None
        lo, hi = 1 / hi, 1 / lo
    return out


def cfrac(expr: Expr, n_terms: int, digits: int = 30, *,
          max_digits: int = 4096) -> list[int]:
    """Certified continued fraction [a0; a1, ...] of an expression.

    Quotients are emitted only while both endpoints of the certified
    interval produce the same partial quotient; precision doubles on
    demand up to max_digits.  An exactly rational value terminates
    early with its full (shorter) expansion.  Note an expression that is
    rational but not syntactically so (e.g. pi - pi + 1) cannot certify
    its termination and exhausts the cap instead.
    """
    if n_terms < 1:
        raise ValueError("n_terms must be >= 1")
    if digits < 1:
        raise ValueError("digits must be >= 1")
    d = digits
    while True:
        lo, hi = eval_interval(expr, d)
        terms = _floor_cf(lo, hi, n_terms)
        if terms is not None:
            return terms
        if d >= max_digits:
            raise PrecisionCapError(
                f"could not certify {n_terms} partial quotients at {max_digits} digits"
            )
        d = min(2 * d, max_digits)
