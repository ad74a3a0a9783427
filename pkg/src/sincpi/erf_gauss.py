"""Gaussian-sum approximation of erf and the data behind its error profile.

    erf(x) ~ 2x / (sqrt(pi) L) * sum_{l=1..L} exp(-(l - 1/2)^2 x^2 / L^2)

The approximation is trustworthy while pi*L >= 12x; outside |x| <= 6 the
piecewise form returns sign(x).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .bignum import BigReal, PrecisionContext, _exp_neg_fixed, _round_div, _sqrt_fixed
from .oracles import ERF_DOMAIN, pi_units, reference_erf

__all__ = [
    "ErfApproxParams",
    "ErfProfileRecord",
    "erf_gauss_series",
    "criterion_ok",
    "min_L_for_range",
    "erf_piecewise",
    "erf_profile",
    "PIECEWISE_CUTOFF",
    "threshold_crossing",
]

PIECEWISE_CUTOFF = 6


@dataclass(frozen=True)
class ErfApproxParams:
    L: int
    x: BigReal

    def __post_init__(self):
        if self.L < 1:
            raise ValueError("L must be >= 1")


@dataclass(frozen=True)
class ErfProfileRecord:
    x: BigReal
    erf_ref: BigReal
    erf_approx: BigReal
    criterion_satisfied: bool

    @property
    def abs_error(self) -> BigReal:
        return abs(self.erf_ref - self.erf_approx)


def erf_gauss_series(L: int, x, ctx: PrecisionContext) -> BigReal:
    """Sum of L Gaussians approximating erf(x); error <= (L + 5) ulp of the sum itself."""
    if L < 1:
        raise ValueError("L must be >= 1")
    x = BigReal.coerce(x)
    D = ctx.work_digits
    if x.units == 0:
        return BigReal(0, D)
    G = 6 + len(str(L))
    W = D + G
    one = 10**W
    xw = x.at_scale(W)
    x2 = xw * xw  # scale 2W
    den = 4 * L * L * one  # brings (2l-1)^2 x^2 / (4 L^2) back to scale W
    s = 0
    for l in range(1, L + 1):
        s += _exp_neg_fixed(_round_div((2 * l - 1) ** 2 * x2, den), W)
    spi = _sqrt_fixed(pi_units(W), W)
    val = _round_div(2 * xw * s, spi * L)
    return BigReal(_round_div(val, 10**G), D)


def criterion_ok(L: int, x, ctx: PrecisionContext) -> bool:
    """True iff pi*L >= 12x."""
    x = BigReal.coerce(x)
    D = ctx.work_digits
    return pi_units(D) * L >= 12 * x.at_scale(D)


def min_L_for_range(x_max, ctx: PrecisionContext) -> int:
    """Smallest integer L with pi*L >= 12*x_max, i.e. ceil(12 x_max / pi).

    A quotient within 10 ulp of an integer is taken to be that integer, so
    inputs like a rounded pi/12 land on the intended boundary.
    """
    x = BigReal.coerce(x_max)
    if x.units <= 0:
        raise ValueError("x_max must be positive")
    D = ctx.work_digits
    q = _round_div(12 * x.at_scale(D) * 10**D, pi_units(D))
    one = 10**D
    nearest = _round_div(q, one)
    if abs(q - nearest * one) <= 10:
        return max(1, nearest)
    return max(1, -(-q // one))


def erf_piecewise(L: int, x, ctx: PrecisionContext) -> BigReal:
    """Gaussian series on [-6, 6], sign(x) elsewhere."""
    x = BigReal.coerce(x)
    if abs(x) <= PIECEWISE_CUTOFF:
        return erf_gauss_series(L, x, ctx)
    return BigReal(x.sign * 10**ctx.work_digits, ctx.work_digits)


def _reference_or_clamp(x: BigReal, ctx: PrecisionContext) -> BigReal:
    # beyond the oracle domain |1 - erf(x)| < 2e-29, so sign(x) stands in
    if abs(x) <= ERF_DOMAIN:
        return reference_erf(x, ctx)
    return BigReal(x.sign * 10**ctx.work_digits, ctx.work_digits)


def erf_profile(L: int, x_min, x_max, steps: int, ctx: PrecisionContext) -> list[ErfProfileRecord]:
    """Records on the uniform grid x_min + i (x_max - x_min) / steps, i = 0..steps.

    Grid points beyond |x| = 8 use sign(x) as the reference value.
    """
    x_min, x_max = BigReal.coerce(x_min), BigReal.coerce(x_max)
    if not x_min < x_max:
        raise ValueError("x_min must be below x_max")
    if steps < 2:
        raise ValueError("steps must be >= 2")
    D = ctx.work_digits
    a, b = x_min.at_scale(D), x_max.at_scale(D)
    records = []
    for i in range(steps + 1):
        x = BigReal(a + _round_div(i * (b - a), steps), D)
        records.append(
            ErfProfileRecord(
                x=x,
                erf_ref=_reference_or_clamp(x, ctx),
                erf_approx=erf_gauss_series(L, x, ctx),
                criterion_satisfied=criterion_ok(L, x, ctx),
            )
        )
    return records


def threshold_crossing(L: int, threshold: float, x_max: float, step: float, ctx: PrecisionContext):
    """First grid x >= 0 where |series - erf| exceeds ``threshold``, or None."""
    n = int(math.floor(x_max / step + 1e-9))
    for i in range(n + 1):
        x = BigReal.parse(f"{i * step:.6f}")
        err = abs(erf_gauss_series(L, x, ctx) - _reference_or_clamp(x, ctx))
        if float(err) > threshold:
            return x
    return None
