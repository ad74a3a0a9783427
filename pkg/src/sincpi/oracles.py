"""Reference values for pi and erf.

These do not use any of the expansions under study: pi comes from Machin's
arctangent formula (cross-checked against Euler's pi/4 = atan(1/2) +
atan(1/3)), erf from its Maclaurin series.
"""

from __future__ import annotations

import functools
import math
import threading

from .bignum import (
    BigReal,
    DomainError,
    PrecisionContext,
    _atan_recip_fixed,
    _round_div,
    _sqrt_fixed,
)

__all__ = ["reference_pi", "pi_units", "pi_value", "sqrt_pi", "reference_erf", "ERF_DOMAIN"]

ERF_DOMAIN = 8

_lock = threading.Lock()


def _machin(D: int) -> int:
    return 16 * _atan_recip_fixed(5, D) - 4 * _atan_recip_fixed(239, D)


def _euler(D: int) -> int:
    return 4 * (_atan_recip_fixed(2, D) + _atan_recip_fixed(3, D))


@functools.lru_cache(maxsize=64)
def _pi_checked(D: int) -> int:
    a = _machin(D)
    b = _euler(D)
    if abs(a - b) > 20:
        raise ArithmeticError(f"pi oracles disagree at scale {D}: {a - b} units")
    return a


def pi_units(scale: int) -> int:
    """pi rounded to nearest at ``scale`` decimal places, as an integer."""
    D = (scale // 32 + 1) * 32 + 5
    with _lock:
        raw = _pi_checked(D)
    return _round_div(raw, 10 ** (D - scale))


def pi_value(ctx: PrecisionContext) -> BigReal:
    """pi at the working precision of ``ctx``."""
    return BigReal(pi_units(ctx.work_digits), ctx.work_digits)


def sqrt_pi(ctx: PrecisionContext) -> BigReal:
    D = ctx.work_digits
    return BigReal(_round_div(_sqrt_fixed(pi_units(D + 2), D + 2), 100), D)


def reference_pi(digits: int) -> BigReal:
    """pi truncated to ``digits`` significant digits ("3" counts as one).

    Truncation (not rounding) keeps the prefix property: the digits of
    ``reference_pi(n)`` are always a prefix of ``reference_pi(m)`` for m > n.
    """
    if digits < 1:
        raise ValueError("digits must be >= 1")
    decimals = digits - 1
    guard = 12
    while True:
        D = decimals + guard
        with _lock:
            u = _pi_checked(D)
        tail = u % 10**guard
        # oracle error is a few units; step up precision if the cut is ambiguous
        if 50 < tail < 10**guard - 50:
            return BigReal(u // 10**guard, decimals)
        guard += 10


def reference_erf(x, ctx: PrecisionContext) -> BigReal:
    """erf(x) from the Maclaurin series, for |x| <= 8.

    The series 2/sqrt(pi) * sum (-1)^n x^(2n+1) / (n! (2n+1)) has terms as
    large as about e^(x^2) before they shrink, so it is summed with
    ceil(x^2 / ln 10) extra digits to absorb the cancellation.
    """
    x = BigReal.coerce(x)
    if abs(x) > ERF_DOMAIN:
        raise DomainError(f"reference_erf is limited to |x| <= {ERF_DOMAIN}")
    if x.units == 0:
        return BigReal(0, ctx.work_digits)
    D = ctx.work_digits
    xf = float(x)
    G = 10 + math.ceil(xf * xf / math.log(10))
    W = D + G
    one = 10**W
    xw = x.at_scale(W)
    x2 = xw * xw // one
    t = xw
    s = xw
    n = 0
    while True:
        n += 1
        t = -t * x2 // (one * n)
        c = t // (2 * n + 1) if t >= 0 else -((-t) // (2 * n + 1))
        s += c
        if t == 0 or (n > xf * xf and abs(c) == 0):
            break
    spi = _sqrt_fixed(pi_units(W), W)
    val = _round_div(2 * s * one, spi)
    return BigReal(_round_div(val, 10**G), D)
