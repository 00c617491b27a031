"""Series definitions, certified partial sums, and convergence tables.

A :class:`SeriesSpec` bundles everything needed to evaluate and certify a
series: an exact offset, a term function over an integer index, and a
tail bound ``tail_bound(N)`` that dominates the true remainder after the
term with index N.  Tail bounds are the load-bearing part; each builtin
documents its derivation next to its definition.

Builtins (index ranges are inclusive of start_index):

* ``E_FACTORIAL``      e     = sum(1/n!, n >= 0)
* ``GREGORY_LEIBNIZ``  pi    = sum(4*(-1)^n/(2n+1), n >= 0)
* ``NILAKANTHA``       pi    = 3 + sum((-1)^(n+1)/(n(2n+1)(n+1)), n >= 1)
* ``NILAKANTHA_PAIRED`` 2pi  = 6 + 1/3 - sum(3/(n(n+1)(4n+1)(4n+3)), n >= 1)
* ``LAMBDA6``          pi^6  = 960 * sum(1/(2n+1)^6, n >= 0)
* ``ZETA8``            pi^8  = 9450 * sum(1/n^8, n >= 1)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .bignum import BigFixed, floor_neg_log10, rational_to_fixed
from .oracle import CONSTANTS, OracleValue

__all__ = [
    "SeriesSpec",
    "SumResult",
    "ConvergenceRow",
    "InfeasibleRequest",
    "BoundViolation",
    "builtin",
    "builtin_names",
    "scale_series",
    "partial_sum",
    "terms_needed",
    "convergence_table",
    "DEFAULT_MAX_TERMS",
]

DEFAULT_MAX_TERMS = 10**8

#: switch partial sums from exact rationals to fixed-point accumulation
#: above this many terms (exact arithmetic slows as denominators grow)
EXACT_TERM_LIMIT = 10**4

#: working scale of the fixed-point accumulation path
FIXED_ACC_SCALE = 40


class InfeasibleRequest(ValueError):
    """The requested precision needs more terms than the allowed cap."""

    def __init__(self, name: str, digits: int, cap: int):
        super().__init__(
            f"{name}: tail bound cannot reach 10^-{digits} within {cap} terms"
        )
        self.name = name
        self.digits = digits
        self.cap = cap


class BoundViolation(AssertionError):
    """A certified tail bound failed to dominate the measured error."""


@dataclass(frozen=True)
class SeriesSpec:
    """Immutable description of a series and its error certificate.

    term(n) is the exact n-th term; tail_bound(N) bounds the absolute
    value of the sum of all terms with index > N.  alternating marks
    series whose terms strictly alternate in sign with non-increasing
    magnitude (which is what makes |term(N+1)| a valid tail bound).
    """

    name: str
    constant: str
    offset: Fraction
    start_index: int
    term: Callable[[int], Fraction]
    tail_bound: Callable[[int], Fraction]
    alternating: bool = False

    def __post_init__(self) -> None:
        if self.constant not in CONSTANTS:
            raise ValueError(f"unknown constant {self.constant!r}")


@dataclass(frozen=True)
class SumResult:
    """Partial sum with certificate.

    value: the partial sum including the offset.  Exact when at most
    EXACT_TERM_LIMIT terms were requested; otherwise the exact value of
    the fixed-point accumulation, with the accumulated per-term rounding
    added to `bound`.
    terms_used: index of the last term included.
    bound: certified bound on |true limit - value|.
    """

    value: Fraction
    terms_used: int
    bound: Fraction


@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    value: BigFixed
    abs_error: Fraction
    bound: Fraction
    digits_correct: int


def _term_e(n: int) -> Fraction:
    f = 1
    for i in range(2, n + 1):
        f *= i
    return Fraction(1, f)


def _tail_e(n: int) -> Fraction:
    # sum(1/m!, m > N) <= (1/(N+1)!) * sum (1/(N+2))^j <= 2/(N+1)!
    f = 1
    for i in range(2, n + 2):
        f *= i
    return Fraction(2, f)


def _term_gl(n: int) -> Fraction:
    return Fraction(4 if n % 2 == 0 else -4, 2 * n + 1)


def _term_nila(n: int) -> Fraction:
    v = Fraction(1, n * (2 * n + 1) * (n + 1))
    return v if n % 2 else -v


def _term_paired(n: int) -> Fraction:
    return Fraction(-3, n * (n + 1) * (4 * n + 1) * (4 * n + 3))


def _tail_paired(n: int) -> Fraction:
    # n(n+1)(4n+1)(4n+3) >= 16 n^4, and sum(1/m^4, m > N) <= integral
    # from N of x^-4 dx = 1/(3N^3), so the tail is at most
    # 3/(16 * 3 N^3) = 1/(16 N^3).
    return Fraction(1, 16 * n**3)


def _term_lambda6(n: int) -> Fraction:
    return Fraction(960, (2 * n + 1) ** 6)


def _tail_lambda6(n: int) -> Fraction:
    # sum(1/(2m+1)^6, m > N) <= integral from N of (2x+1)^-6 dx
    #                         = (2N+1)^-5 / 10
    return Fraction(96, (2 * n + 1) ** 5)


def _term_zeta8(n: int) -> Fraction:
    return Fraction(9450, n**8)


def _tail_zeta8(n: int) -> Fraction:
    # sum(1/m^8, m > N) <= integral from N of x^-8 dx = 1/(7 N^7)
    return Fraction(9450, 7 * n**7)


E_FACTORIAL = SeriesSpec(
    name="e-factorial",
    constant="e",
    offset=Fraction(0),
    start_index=0,
    term=_term_e,
    tail_bound=_tail_e,
)

GREGORY_LEIBNIZ = SeriesSpec(
    name="gregory-leibniz",
    constant="pi",
    offset=Fraction(0),
    start_index=0,
    term=_term_gl,
    tail_bound=lambda n: Fraction(4, 2 * n + 3),
    alternating=True,
)

NILAKANTHA = SeriesSpec(
    name="nilakantha",
    constant="pi",
    offset=Fraction(3),
    start_index=1,
    term=_term_nila,
    tail_bound=lambda n: Fraction(1, (n + 1) * (2 * n + 3) * (n + 2)),
    alternating=True,
)

NILAKANTHA_PAIRED = SeriesSpec(
    name="nilakantha-paired",
    constant="two_pi",
    offset=Fraction(19, 3),
    start_index=1,
    term=_term_paired,
    tail_bound=_tail_paired,
)

LAMBDA6 = SeriesSpec(
    name="lambda6",
    constant="pi6",
    offset=Fraction(0),
    start_index=0,
    term=_term_lambda6,
    tail_bound=_tail_lambda6,
)

ZETA8 = SeriesSpec(
    name="zeta8",
    constant="pi8",
    offset=Fraction(0),
    start_index=1,
    term=_term_zeta8,
    tail_bound=_tail_zeta8,
)

_BUILTINS = {
    s.name: s
    for s in (E_FACTORIAL, GREGORY_LEIBNIZ, NILAKANTHA, NILAKANTHA_PAIRED, LAMBDA6, ZETA8)
}


def builtin(name: str) -> SeriesSpec:
    """Look up a builtin series by its hyphenated name."""
    try:
        return _BUILTINS[name]
    except KeyError:
        raise ValueError(f"unknown series {name!r}; expected one of {sorted(_BUILTINS)}") from None


def builtin_names() -> tuple[str, ...]:
    return tuple(_BUILTINS)


def scale_series(spec: SeriesSpec, factor: Fraction, *, name: str | None = None,
                 constant: str | None = None) -> SeriesSpec:
    """Multiply a series by an exact constant factor.

    The caller must say what the scaled series describes (e.g. doubling
    a pi series gives a two_pi series); the label does not change by
    itself.
    """
    factor = Fraction(factor)
    if factor == 0:
        raise ValueError("factor must be nonzero")
    return SeriesSpec(
        name=name or f"{spec.name}-scaled",
        constant=constant or spec.constant,
        offset=spec.offset * factor,
        start_index=spec.start_index,
        term=lambda n, _f=factor, _t=spec.term: _f * _t(n),
        tail_bound=lambda n, _f=abs(factor), _b=spec.tail_bound: _f * _b(n),
        alternating=spec.alternating,
    )


def _div_nearest(n: int, d: int) -> int:
    if n >= 0:
        return (2 * n + d) // (2 * d)
    return -((2 * -n + d) // (2 * d))


def partial_sum(spec: SeriesSpec, n: int, *, exact_limit: int = EXACT_TERM_LIMIT,
                fixed_scale: int = FIXED_ACC_SCALE) -> SumResult:
    """Offset plus terms start_index..n, with a certified bound.

    Up to `exact_limit` terms the sum is exact rational arithmetic and
    the bound is exactly tail_bound(n).  Beyond that the terms are
    accumulated in fixed point at `fixed_scale` decimal places and the
    per-term rounding (at most half an ulp each) is added to the bound.
    """
    if n < spec.start_index:
        raise ValueError(f"n must be >= start_index ({spec.start_index})")
    count = n - spec.start_index + 1
    if count <= exact_limit:
        total = spec.offset
        for i in range(spec.start_index, n + 1):
            total += spec.term(i)
        return SumResult(total, n, spec.tail_bound(n))
    unit = 10**fixed_scale
    acc = 0
    for i in range(spec.start_index, n + 1):
        t = spec.term(i)
        acc += _div_nearest(t.numerator * unit, t.denominator)
    value = spec.offset + Fraction(acc, unit)
    rounding = Fraction(count, 2 * unit)
    return SumResult(value, n, spec.tail_bound(n) + rounding)


def terms_needed(spec: SeriesSpec, digits: int, *, cap: int = DEFAULT_MAX_TERMS) -> int:
    """Smallest last-index N with tail_bound(N) < 10**-digits.

    Galloping search followed by bisection, so expensive tail bounds
    (factorials) are only evaluated O(log N) times.  Raises
    InfeasibleRequest if the cap cannot reach the target.
    """
    target = Fraction(1, 10**digits)
    lo = spec.start_index
    if spec.tail_bound(lo) < target:
        return lo
    hi = max(lo * 2, lo + 1)
    while hi < cap and spec.tail_bound(hi) >= target:
        lo = hi
        hi *= 2
    if hi >= cap:
        hi = cap
        if spec.tail_bound(hi) >= target:
            raise InfeasibleRequest(spec.name, digits, cap)
    # invariant: tail(lo) >= target > tail(hi)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if spec.tail_bound(mid) < target:
            hi = mid
        else:
            lo = mid
    return hi


def convergence_table(spec: SeriesSpec, checkpoints: Sequence[int],
                      reference: OracleValue, *, scale: int = 15) -> list[ConvergenceRow]:
    """Error table at the given checkpoints, hard-checked for soundness.

    Every row asserts measured_error <= certified bound; a violation
    raises BoundViolation.  The reference must be certified well beyond
    the smallest displayed error, otherwise ValueError is raised, since
    a fuzzy reference could mask a bound violation.

    digits_correct is the relative agreement with the reference:
    floor(-log10(|error| / |reference|)), clamped at zero.
    """
    points = sorted(set(checkpoints))
    if not points:
        return []
    if points[0] < spec.start_index:
        raise ValueError(f"checkpoints must be >= start_index ({spec.start_index})")
    ref = reference.value.as_fraction()
    eps = Fraction(1, 10**reference.certified_digits)
    rows = []
    total = spec.offset
    i = spec.start_index
    for point in points:
        while i <= point:
            total += spec.term(i)
            i += 1
        bound = spec.tail_bound(point)
        err = abs(total - ref)
        if 10 * eps > err:
            raise ValueError("reference oracle not precise enough for this table")
        if err - eps > bound:
            raise BoundViolation(
                f"{spec.name} at N={point}: measured error {float(err):g} "
                f"exceeds certified bound {float(bound):g}"
            )
        err_hi = err + eps
        rows.append(
            ConvergenceRow(
                n=point,
                value=rational_to_fixed(total, scale),
                abs_error=err,
                bound=bound,
                digits_correct=max(0, floor_neg_log10(err_hi / abs(ref))),
            )
        )
    return rows
