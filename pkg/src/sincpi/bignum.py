"""Decimal fixed-point real arithmetic.

A :class:`BigReal` is a signed integer ``units`` together with a decimal
``scale``; the represented value is ``units / 10**scale``.  Addition,
subtraction, negation and plain multiplication are exact.  Everything that
cannot be exact (division, square roots, transcendental functions) takes a
:class:`PrecisionContext` and rounds its result to ``ctx.work_digits``
decimal places.

The transcendental kernels work on raw scaled integers (``_*_fixed``
helpers) so that hot loops elsewhere in the package can call them without
allocating intermediate objects.
"""

from __future__ import annotations

import functools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

__all__ = [
    "BigReal",
    "PrecisionContext",
    "DomainError",
    "add",
    "sub",
    "mul",
    "div",
    "sqrt",
    "exp_neg",
    "sin",
    "cos",
    "atan_reciprocal",
    "guard_digits_for",
]

LN10 = math.log(10.0)
_DECIMAL_RE = re.compile(r"^([+-]?)(\d*)(?:\.(\d*))?$")

Number = Union["BigReal", int]


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


def guard_digits_for(L: int = 1, n_terms: int = 1) -> int:
    """Guard digits for a sum of ``n_terms`` rounded terms scaled by ``L``."""
    g = 10 + _ceil_log10(L) + _ceil_log10(n_terms)
    return max(10, g)


def _ceil_log10(n: int) -> int:
    if n <= 1:
        return 0
    return len(str(n - 1))


@dataclass(frozen=True)
class PrecisionContext:
    """Requested output digits plus extra working digits.

    ``out_digits`` and ``guard_digits`` count decimal places after the
    point.  Operations round to ``work_digits = out_digits + guard_digits``.
    """

    out_digits: int = 40
    guard_digits: int = 10

    def __post_init__(self):
        if self.out_digits < 1:
            raise ValueError("out_digits must be >= 1")
        if self.guard_digits < 0:
            raise ValueError("guard_digits must be >= 0")

    @property
    def work_digits(self) -> int:
        return self.out_digits + self.guard_digits

    def for_summation(self, L: int = 1, n_terms: int = 1) -> "PrecisionContext":
        """Context whose guard digits also cover an ``n_terms`` sum scaled by ``L``."""
        g = max(self.guard_digits, guard_digits_for(L, n_terms))
        if g == self.guard_digits:
            return self
        return PrecisionContext(self.out_digits, g)

    def widened(self, extra: int) -> "PrecisionContext":
        return PrecisionContext(self.out_digits, self.guard_digits + extra)


def _round_div(n: int, d: int) -> int:
    """``n / d`` rounded half away from zero."""
    if d < 0:
        n, d = -n, -d
    q, r = divmod(abs(n), d)
    if 2 * r >= d:
        q += 1
    return q if n >= 0 else -q


def _rescale(units: int, from_scale: int, to_scale: int) -> int:
    if to_scale >= from_scale:
        return units * 10 ** (to_scale - from_scale)
    return _round_div(units, 10 ** (from_scale - to_scale))


@functools.total_ordering
@dataclass(frozen=True, eq=False)
class BigReal:
    """Exact decimal fixed-point number ``units / 10**scale``."""

    units: int
    scale: int = 0

    def __post_init__(self):
        if self.scale < 0:
            raise ValueError("scale must be non-negative")

    # -- construction -----------------------------------------------------

    @classmethod
    def parse(cls, text: str) -> "BigReal":
        """Parse a plain decimal literal such as ``"-0.25"``."""
        m = _DECIMAL_RE.match(text.strip())
        if not m or not (m.group(2) or m.group(3)):
            raise ValueError(f"not a decimal number: {text!r}")
        sign, ip, fp = m.group(1), m.group(2) or "0", m.group(3) or ""
        units = int(ip + fp) if (ip + fp) else 0
        return cls(-units if sign == "-" else units, len(fp))

    @classmethod
    def from_fraction(cls, q: Fraction, scale: int) -> "BigReal":
        q = Fraction(q)
        return cls(_round_div(q.numerator * 10**scale, q.denominator), scale)

    @classmethod
    def coerce(cls, x) -> "BigReal":
        if isinstance(x, BigReal):
            return x
        if isinstance(x, int):
            return cls(x, 0)
        if isinstance(x, str):
            return cls.parse(x)
        if isinstance(x, Fraction):
            raise TypeError("use BigReal.from_fraction with an explicit scale")
        if isinstance(x, float):
            # floats are accepted only when they are exact short decimals
            return cls.parse(repr(x))
        raise TypeError(f"cannot convert {type(x).__name__} to BigReal")

    # -- views --------------------------------------------------------------

    @property
    def sign(self) -> int:
        return -1 if self.units < 0 else 1

    @property
    def scaled_value(self) -> int:
        return abs(self.units)

    def at_scale(self, scale: int) -> int:
        """Units at ``scale``, rounded half away from zero if coarser."""
        return _rescale(self.units, self.scale, scale)

    def rounded(self, scale: int) -> "BigReal":
        return BigReal(self.at_scale(scale), scale)

    def truncated(self, scale: int) -> "BigReal":
        if scale >= self.scale:
            return self.rounded(scale)
        q = abs(self.units) // 10 ** (self.scale - scale)
        return BigReal(-q if self.units < 0 else q, scale)

    def normalized(self) -> "BigReal":
        u, s = self.units, self.scale
        while s and u % 10 == 0:
            u //= 10
            s -= 1
        return BigReal(u, s)

    def to_fraction(self) -> Fraction:
        return Fraction(self.units, 10**self.scale)

    def to_string(self, decimals: int | None = None) -> str:
        """Plain decimal string, rounded half away from zero to ``decimals``."""
        x = self if decimals is None else self.rounded(decimals)
        digits = str(abs(x.units)).rjust(x.scale + 1, "0")
        sign = "-" if x.units < 0 else ""
        if x.scale == 0:
            return sign + digits
        return f"{sign}{digits[:-x.scale]}.{digits[-x.scale:]}"

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"BigReal('{self.to_string()}')"

    def __float__(self):
        return self.units / 10**self.scale

    def __bool__(self):
        return self.units != 0

    # -- exact arithmetic ---------------------------------------------------

    def _align(self, other) -> tuple[int, int, int]:
        other = BigReal.coerce(other)
        s = max(self.scale, other.scale)
        return self.at_scale(s), other.at_scale(s), s

    def __add__(self, other):
        a, b, s = self._align(other)
        return BigReal(a + b, s)

    __radd__ = __add__

    def __sub__(self, other):
        a, b, s = self._align(other)
        return BigReal(a - b, s)

    def __rsub__(self, other):
        return BigReal.coerce(other) - self

    def __neg__(self):
        return BigReal(-self.units, self.scale)

    def __abs__(self):
        return BigReal(abs(self.units), self.scale)

    def __mul__(self, other):
        other = BigReal.coerce(other)
        return BigReal(self.units * other.units, self.scale + other.scale)

    __rmul__ = __mul__

    def __eq__(self, other):
        try:
            a, b, _ = self._align(other)
        except TypeError:
            return NotImplemented
        return a == b

    def __lt__(self, other):
        a, b, _ = self._align(other)
        return a < b

    def __hash__(self):
        n = self.normalized()
        return hash((n.units, n.scale))


# -- context-rounded operations ----------------------------------------------


def add(a: Number, b: Number) -> BigReal:
    """Exact sum at the finer of the two scales."""
    return BigReal.coerce(a) + BigReal.coerce(b)


def sub(a: Number, b: Number) -> BigReal:
    return BigReal.coerce(a) - BigReal.coerce(b)


def mul(a: Number, b: Number, ctx: PrecisionContext) -> BigReal:
    """Product rounded to ``ctx.work_digits`` (error <= 0.5 ulp)."""
    return (BigReal.coerce(a) * BigReal.coerce(b)).rounded(ctx.work_digits)


def div(a: Number, b: Number, ctx: PrecisionContext) -> BigReal:
    """Quotient rounded half away from zero to ``ctx.work_digits``."""
    a, b = BigReal.coerce(a), BigReal.coerce(b)
    if b.units == 0:
        raise DomainError("division by zero")
    D = ctx.work_digits
    # a/b = (ua/10^sa) / (ub/10^sb)
    num = a.units * 10 ** (D + b.scale)
    den = b.units * 10**a.scale
    return BigReal(_round_div(num, den), D)


def _sqrt_fixed(x: int, D: int) -> int:
    """Round-to-nearest square root of a non-negative scale-``D`` integer."""
    n = x * 10**D
    r = math.isqrt(n)
    # r^2 <= n < (r+1)^2; pick the nearer of r and r+1
    if n - r * r > r:
        r += 1
    return r


def sqrt(a: Number, ctx: PrecisionContext) -> BigReal:
    """Square root, error < 0.51 ulp at ``ctx.work_digits``.

    The integer root comes from :func:`math.isqrt` (Newton iteration on
    Python integers) and is rounded to nearest.
    """
    a = BigReal.coerce(a)
    if a.units < 0:
        raise DomainError("square root of a negative number")
    D = ctx.work_digits
    # one extra digit keeps the final rounding honest
    r = _sqrt_fixed(a.at_scale(D + 2), D + 2)
    return BigReal(_round_div(r, 100), D)


# -- exponential ----------------------------------------------------------------

# argument is halved until it is below 2**-_EXP_SHIFT before the Taylor sum
_EXP_SHIFT = 4


def _exp_neg_fixed(a: int, D: int) -> int:
    """e**(-a/10**D) as a scale-``D`` integer, a >= 0; error <= 2 units."""
    if a < 0:
        raise DomainError("exp_neg expects a non-negative argument")
    if a == 0:
        return 10**D
    # e^-a < 10^-(D+1) beyond this point
    if a > (D + 2) * LN10 * 10**D:
        return 0
    k = max(0, (a // 10**D).bit_length()) + _EXP_SHIFT
    G = 10 + (k * 3 + 9) // 10
    W = D + G
    one = 10**W
    r = (a * 10**G) >> k
    # alternating Taylor series of e^-r, r <= 2^-_EXP_SHIFT
    term = one
    s = one
    n = 0
    while term:
        n += 1
        term = term * r // (one * n)
        s = s - term if n & 1 else s + term
    for _ in range(k):
        s = s * s // one
    return _round_div(s, 10**G)


def exp_neg(a: Number, ctx: PrecisionContext) -> BigReal:
    """Return e**(-a) for a >= 0.

    The argument is scaled down by 2**k and the Taylor result is squared k
    times.  Guard digits cover the 2**k relative error growth, so
    the final error is at most 2 ulp at ``ctx.work_digits``.
    """
    a = BigReal.coerce(a)
    if a.units < 0:
        raise DomainError("exp_neg expects a non-negative argument")
    D = ctx.work_digits
    return BigReal(_exp_neg_fixed(a.at_scale(D + 2), D + 2), D + 2).rounded(D)


def _exp_fixed(a: int, D: int) -> int:
    """e**(a/10**D) for a >= 0 via the reciprocal of ``_exp_neg_fixed``."""
    if a == 0:
        return 10**D
    # relative precision must survive the reciprocal
    mag = int(a // 10**D / LN10) + 2
    W = D + mag + 4
    e = _exp_neg_fixed(a * 10 ** (W - D), W)
    return _round_div(10 ** (W + D), e)


# -- trigonometric ----------------------------------------------------------------


def _taylor_sin(r: int, one: int) -> int:
    r2 = r * r // one
    s = t = r
    n = 1
    while t:
        t = -t * r2 // (one * (n + 1) * (n + 2))
        s += t
        n += 2
    return s


def _taylor_cos(r: int, one: int) -> int:
    r2 = r * r // one
    c = t = one
    n = 0
    while t:
        t = -t * r2 // (one * (n + 1) * (n + 2))
        c += t
        n += 2
    return c


def _sin_cos_fixed(x: int, D: int, want: str = "both"):
    """sin and/or cos of a scale-``D`` integer, within 2 units at scale D.

    The argument is reduced to |r| <= pi/4 around the nearest multiple of
    pi/2; guard digits grow with the magnitude of x so the reduction does
    not eat into the result.
    """
    from .oracles import pi_units

    mag = len(str(abs(x) // 10**D))
    G = 10 + mag
    W = D + G
    one = 10**W
    xw = x * 10**G
    half_pi = _round_div(pi_units(W + 2), 200)
    n = _round_div(xw, half_pi)
    r = xw - n * half_pi
    q = n % 4
    # quadrant q: sin x = (s, c, -s, -c)[q], cos x = (c, -s, -c, s)[q]
    need_s = want == "both" or (want == "sin") == (q % 2 == 0)
    need_c = want == "both" or (want == "cos") == (q % 2 == 0)
    s = _taylor_sin(r, one) if need_s else 0
    c = _taylor_cos(r, one) if need_c else 0
    sx, cx = ((s, c), (c, -s), (-s, -c), (-c, s))[q]
    G10 = 10**G
    if want == "sin":
        return _round_div(sx, G10)
    if want == "cos":
        return _round_div(cx, G10)
    return _round_div(sx, G10), _round_div(cx, G10)


def sin(a: Number, ctx: PrecisionContext) -> BigReal:
    """Sine; reduction modulo pi/2 uses the reference pi with guard digits."""
    a = BigReal.coerce(a)
    D = ctx.work_digits
    return BigReal(_sin_cos_fixed(a.at_scale(D + 2), D + 2, "sin"), D + 2).rounded(D)


def cos(a: Number, ctx: PrecisionContext) -> BigReal:
    a = BigReal.coerce(a)
    D = ctx.work_digits
    return BigReal(_sin_cos_fixed(a.at_scale(D + 2), D + 2, "cos"), D + 2).rounded(D)


# -- arctangent -----------------------------------------------------------------


def _atan_recip_fixed(n: int, D: int) -> int:
    """arctan(1/n) as a scale-``D`` integer (floor-rounded terms, guard 10)."""
    if n < 1:
        raise DomainError("atan_reciprocal needs n >= 1")
    G = 10
    one = 10 ** (D + G)
    if n == 1:
        # Euler's form: arctan(1/n) = n/(n^2+1) * sum_k (2k)!!/(2k+1)!! (n^2+1)^-k
        m = n * n + 1
        t = one * n // m
        s = t
        k = 0
        while t:
            k += 1
            t = t * (2 * k) // ((2 * k + 1) * m)
            s += t
    else:
        n2 = n * n
        p = one // n
        s = p
        k = 0
        while p:
            k += 1
            p //= n2
            t = p // (2 * k + 1)
            s = s - t if k & 1 else s + t
    return _round_div(s, 10**G)


def atan_reciprocal(n: int, ctx: PrecisionContext) -> BigReal:
    """arctan(1/n) for integer n >= 1, error <= 2 ulp at ``ctx.work_digits``.

    n >= 2 uses the alternating Taylor series in 1/n.  For n = 1 that series
    is useless, so Euler's accelerated series (all terms positive, ratio
    1/2 per term) is used instead.
    """
    if n < 1:
        raise DomainError("atan_reciprocal needs n >= 1")
    return BigReal(_atan_recip_fixed(n, ctx.work_digits), ctx.work_digits)
