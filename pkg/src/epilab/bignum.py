"""Exact rational and decimal fixed-point arithmetic.

Two value types carry every number in this package:

* ``Rational`` is an alias for :class:`fractions.Fraction`.  All internal
  mathematics happens on exact rationals; nothing is ever evaluated in
  binary floating point.
* :class:`BigFixed` is an immutable base-10 fixed-point number,
  ``mantissa * 10**-scale``.  It exists purely at the edges: parsing
  user input and rendering results with an explicit, certified number of
  decimal places.

Every operation that rounds does so faithfully: the result returned at a
requested scale differs from the exact value by at most one unit in the
last place (the implementations below actually round to nearest, so the
error is at most half an ulp).  Rounding of ties is away from zero,
symmetrically for negative values.

:class:`Surd` represents quadratic irrationals ``a + b*sqrt(r)`` exactly,
with the square part of ``r`` factored into ``b`` so the radicand is
canonical.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

Rational = Fraction

__all__ = [
    "Rational",
    "BigFixed",
    "Surd",
    "arith",
    "add",
    "sub",
    "mul",
    "div",
    "sqrt",
    "pow_int",
    "rational_to_fixed",
    "surd_eval",
    "iroot",
    "root_interval",
    "sqrt_interval",
    "floor_neg_log10",
    "ilog10_floor",
]

_PARSE_RE = re.compile(r"^([+-]?)(\d+)(?:\.(\d+))?$")


def _div_nearest(n: int, d: int) -> int:
    """Nearest integer to n/d with ties rounded away from zero.  d > 0."""
    if n >= 0:
        return (2 * n + d) // (2 * d)
    return -((2 * -n + d) // (2 * d))


@dataclass(frozen=True)
class BigFixed:
    """Immutable decimal fixed point: value = mantissa * 10**-scale.

    Equality and ordering compare numeric values, so BigFixed("1.50") ==
    BigFixed("1.5") even though the two keep different scales.  The
    (mantissa, scale) pair itself is preserved exactly by
    ``to_decimal_string`` / ``parse`` round trips.
    """

    mantissa: int
    scale: int

    def __post_init__(self) -> None:
        if self.scale < 0:
            raise ValueError("scale must be >= 0")

    @classmethod
    def from_int(cls, value: int, scale: int = 0) -> "BigFixed":
        return cls(value * 10**scale, scale)

    @classmethod
    def from_fraction(cls, value: Fraction, scale: int) -> "BigFixed":
        """Round an exact rational to the given scale (nearest, <= 1/2 ulp)."""
        if scale < 0:
            raise ValueError("scale must be >= 0")
        value = Fraction(value)
        return cls(_div_nearest(value.numerator * 10**scale, value.denominator), scale)

    @classmethod
    def parse(cls, text: str) -> "BigFixed":
        """Parse a plain decimal literal; scale = number of fractional digits."""
        m = _PARSE_RE.match(text.strip())
        if not m:
            raise ValueError(f"not a decimal literal: {text!r}")
        sign, intpart, fracpart = m.group(1), m.group(2), m.group(3) or ""
        mantissa = int(intpart + fracpart)
        if sign == "-":
            mantissa = -mantissa
        return cls(mantissa, len(fracpart))

    def as_fraction(self) -> Fraction:
        return Fraction(self.mantissa, 10**self.scale)

    def to_decimal_string(self) -> str:
        """Sign, integer part, '.', exactly `scale` fractional digits.

        No exponent form ever.  At scale 0 the dot is omitted; parse()
        accepts both shapes, so the round trip is exact.
        """
        sign = "-" if self.mantissa < 0 else ""
        q, r = divmod(abs(self.mantissa), 10**self.scale) if self.scale else (abs(self.mantissa), 0)
        if self.scale == 0:
            return f"{sign}{q}"
        return f"{sign}{q}.{r:0{self.scale}d}"

    def rescale(self, scale: int) -> "BigFixed":
        """Re-render at a new scale; exact when widening, nearest when narrowing."""
        if scale < 0:
            raise ValueError("scale must be >= 0")
        if scale >= self.scale:
            return BigFixed(self.mantissa * 10 ** (scale - self.scale), scale)
        return BigFixed(_div_nearest(self.mantissa, 10 ** (self.scale - scale)), scale)

    def __str__(self) -> str:
        return self.to_decimal_string()

    def __repr__(self) -> str:
        return f"BigFixed({self.to_decimal_string()!r})"

    def __eq__(self, other: object) -> bool:
        if isinstance(other, BigFixed):
            return self.as_fraction() == other.as_fraction()
        if isinstance(other, (int, Fraction)):
            return self.as_fraction() == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.as_fraction())

    def _cmp_key(self, other: "BigFixed | int | Fraction") -> Fraction:
        if isinstance(other, BigFixed):
            return other.as_fraction()
        return Fraction(other)

    def __lt__(self, other) -> bool:
        return self.as_fraction() < self._cmp_key(other)

    def __le__(self, other) -> bool:
        return self.as_fraction() <= self._cmp_key(other)

    def __gt__(self, other) -> bool:
        return self.as_fraction() > self._cmp_key(other)

    def __ge__(self, other) -> bool:
        return self.as_fraction() >= self._cmp_key(other)

    def __neg__(self) -> "BigFixed":
        return BigFixed(-self.mantissa, self.scale)

    def __abs__(self) -> "BigFixed":
        return BigFixed(abs(self.mantissa), self.scale)


def add(a: BigFixed, b: BigFixed, scale: int) -> BigFixed:
    return BigFixed.from_fraction(a.as_fraction() + b.as_fraction(), scale)


def sub(a: BigFixed, b: BigFixed, scale: int) -> BigFixed:
    return BigFixed.from_fraction(a.as_fraction() - b.as_fraction(), scale)


def mul(a: BigFixed, b: BigFixed, scale: int) -> BigFixed:
    return BigFixed.from_fraction(a.as_fraction() * b.as_fraction(), scale)


def div(a: BigFixed, b: BigFixed, scale: int) -> BigFixed:
    if b.mantissa == 0:
        raise ZeroDivisionError("division by zero")
    return BigFixed.from_fraction(a.as_fraction() / b.as_fraction(), scale)


_ARITH_OPS = {"add": add, "sub": sub, "mul": mul, "div": div}


def arith(a: BigFixed, b: BigFixed, op: str, scale: int) -> BigFixed:
    """Dispatch add/sub/mul/div at an explicit result scale.

    Sums and differences whose exact value is representable at the
    requested scale come back exact; everything else rounds to nearest.
    """
    try:
        fn = _ARITH_OPS[op]
    except KeyError:
        raise ValueError(f"unknown op {op!r}; expected one of {sorted(_ARITH_OPS)}") from None
    return fn(a, b, scale)


def rational_to_fixed(value: Fraction, scale: int) -> BigFixed:
    """Round an exact rational onto the decimal grid: error <= 1/2 ulp."""
    return BigFixed.from_fraction(value, scale)


def sqrt(x: BigFixed, scale: int) -> BigFixed:
    """Square root with |result - sqrt(x)| <= 10**-scale.

    Works on the integer mantissa via math.isqrt (Newton's method on
    integers) with five guard digits, then rounds back once.
    """
    if scale < 0:
        raise ValueError("scale must be >= 0")
    if x.mantissa < 0:
        raise ValueError("sqrt of negative value")
    t = max(scale + 5, (x.scale + 1) // 2 + 1)
    n = x.mantissa * 10 ** (2 * t - x.scale)
    i = math.isqrt(n)
    # i/10**t <= sqrt(x) < (i+1)/10**t
    return BigFixed.from_fraction(Fraction(i, 10**t), scale)


def pow_int(x: BigFixed, k: int, scale: int) -> BigFixed:
    """Integer power, correctly rounded at the requested scale.

    The power is taken exactly on the underlying rational (binary
    exponentiation on big integers), so the only rounding is the final
    one: |result - x**k| <= 10**-scale always holds, with room to spare.
    """
    if k < 0 and x.mantissa == 0:
        raise ZeroDivisionError("zero to a negative power")
    return BigFixed.from_fraction(x.as_fraction() ** k, scale)


# ---------------------------------------------------------------------------
# integer k-th roots and rational root enclosures


def iroot(n: int, k: int) -> int:
    """floor(n ** (1/k)) for n >= 0, k >= 1, by Newton iteration on ints."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if n < 0:
        raise ValueError("iroot of negative value")
    if n == 0:
        return 0
    if k == 1:
        return n
    if k == 2:
        return math.isqrt(n)
    # Initial guess from the bit length, then damped Newton; monotone
    # decreasing once above the root, so it terminates quickly.
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x**k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def root_interval(lo: Fraction, hi: Fraction, k: int, scale: int) -> tuple[Fraction, Fraction]:
    """Enclosure of the k-th root of [lo, hi] on the 10**-scale grid.

    Requires 0 <= lo <= hi.  The returned endpoints satisfy
    out_lo <= lo**(1/k) and hi**(1/k) <= out_hi.
    """
    if lo < 0:
        raise ValueError("root of negative value")
    if hi < lo:
        raise ValueError("empty interval")
    shift = 10 ** (k * scale)
    n_lo = (lo.numerator * shift) // lo.denominator
    r_lo = Fraction(iroot(n_lo, k), 10**scale)
    n_hi = -((-hi.numerator * shift) // hi.denominator)  # ceil
    r_hi = Fraction(iroot(n_hi, k) + 1, 10**scale)
    return r_lo, r_hi


def sqrt_interval(lo: Fraction, hi: Fraction, scale: int) -> tuple[Fraction, Fraction]:
    return root_interval(lo, hi, 2, scale)


# ---------------------------------------------------------------------------
# exact decimal logarithms


def ilog10_floor(x: Fraction) -> int:
    """Largest e with 10**e <= x, for x > 0.  Exact."""
    if x <= 0:
        raise ValueError("ilog10_floor needs a positive value")
    e = 0
    while x < 1:
        x *= 10
        e -= 1
    while x >= 10:
        x /= 10
        e += 1
    return e


def floor_neg_log10(x: Fraction) -> int:
    """floor(-log10(x)) for x > 0, computed exactly.

    floor_neg_log10(Fraction(1, 1000)) == 3; values just above a power
    of ten land one lower, e.g. 0.002 -> 2.
    """
    e = ilog10_floor(x)
    if x == Fraction(10) ** e:
        return -e
    return -e - 1


# ---------------------------------------------------------------------------
# quadratic irrationals


def _squarefree(r: int) -> tuple[int, int]:
    """r = s*s * rest with rest square-free; returns (s, rest)."""
    s, rest = 1, 1
    n = r
    p = 2
    while p * p <= n:
        if n % p == 0:
            count = 0
            while n % p == 0:
                n //= p
                count += 1
            if count % 2:
                rest *= p
            s *= p ** (count // 2)
        p += 1 if p == 2 else 2
    rest *= n
    return s, rest


@dataclass(frozen=True)
class Surd:
    """Exact quadratic irrational a + b*sqrt(r).

    Canonical form: r is square-free (square factors are pulled into b)
    and r > 1 whenever b != 0.  A rational value is represented with
    b == 0, r == 1.  Construct through :meth:`make` to get the canonical
    form; the raw constructor trusts its arguments.
    """

    a: Fraction
    b: Fraction
    r: int

    @classmethod
    def make(cls, a: Fraction, b: Fraction, r: int) -> "Surd":
        if r <= 0:
            raise ValueError("radicand must be positive")
        a, b = Fraction(a), Fraction(b)
        if b == 0:
            return cls(a, Fraction(0), 1)
        s, rest = _squarefree(r)
        if rest == 1:
            return cls(a + b * s, Fraction(0), 1)
        return cls(a, b * s, rest)

    def is_rational(self) -> bool:
        return self.b == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("surd is irrational")
        return self.a

    def squared(self) -> "Surd":
        """Exact square: (a + b*sqrt(r))**2 = a*a + b*b*r + 2ab*sqrt(r)."""
        return Surd.make(self.a * self.a + self.b * self.b * self.r, 2 * self.a * self.b, self.r)

    def interval(self, scale: int) -> tuple[Fraction, Fraction]:
        """Rational enclosure of the value on the 10**-scale grid."""
        if self.b == 0:
            return self.a, self.a
        s_lo, s_hi = sqrt_interval(Fraction(self.r), Fraction(self.r), scale)
        if self.b > 0:
            return self.a + self.b * s_lo, self.a + self.b * s_hi
        return self.a + self.b * s_hi, self.a + self.b * s_lo

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        root = f"sqrt({self.r})"
        if self.b != 1:
            root = f"{root}*{self.b}"
        if self.a == 0:
            return root
        if self.a < 0:
            return f"{root} - {-self.a}"
        return f"{self.a} + {root}"


def surd_eval(s: Surd, scale: int) -> BigFixed:
    """Render a surd at the given scale: |result - exact| <= 10**-scale."""
    guard = scale + 8 + max(0, len(str(abs(s.b.numerator))) if s.b else 0)
    lo, hi = s.interval(guard)
    return BigFixed.from_fraction((lo + hi) / 2, scale)
