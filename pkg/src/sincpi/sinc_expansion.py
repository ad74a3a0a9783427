"""sinc, the truncated Vieta product and its incomplete cosine expansion.

The cosine forms are evaluated term by term on scaled integers; no closed
form for the cosine sum is used, so the identities below are genuinely
tested rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bignum import BigReal, PrecisionContext, _round_div, _sin_cos_fixed
from .oracles import pi_units

__all__ = [
    "SincExpansionParams",
    "ValidityWindow",
    "sinc",
    "vieta_product",
    "product_to_sum_rhs",
    "incomplete_cosine",
    "validity_window",
]

# extra digits carried through every sum before the final rounding
_GUARD = 4


@dataclass(frozen=True)
class SincExpansionParams:
    """Order of the cosine expansion.

    ``L`` is the number of cosine terms.  A dyadic order ``M`` is the
    special case ``L = 2**(M - 1)``.
    """

    L: int

    def __post_init__(self):
        if self.L < 1:
            raise ValueError("L must be >= 1")

    @classmethod
    def from_dyadic(cls, M: int) -> "SincExpansionParams":
        if M < 1:
            raise ValueError("M must be >= 1")
        return cls(2 ** (M - 1))


@dataclass(frozen=True)
class ValidityWindow:
    half_width: BigReal
    period: BigReal

    def contains(self, x) -> bool:
        return abs(BigReal.coerce(x)) <= self.half_width


def sinc(x, ctx: PrecisionContext) -> BigReal:
    """sin(x)/x, and exactly 1 at the origin."""
    x = BigReal.coerce(x)
    D = ctx.work_digits
    if x.units == 0:
        return BigReal(10**D, D)
    # dividing by a small |x| magnifies the error in sin(x)
    extra = max(0, len(str(10**D // max(1, abs(x.at_scale(D))))) - 1)
    W = D + _GUARD + extra
    s = _sin_cos_fixed(x.at_scale(W), W, "sin")
    return BigReal(_round_div(s * 10**D, x.at_scale(W)), D)


def vieta_product(M: int, x, ctx: PrecisionContext) -> BigReal:
    """Product of cos(x / 2**m) for m = 1..M."""
    if M < 1:
        raise ValueError("M must be >= 1")
    x = BigReal.coerce(x)
    W = ctx.work_digits + _GUARD
    one = 10**W
    xw = x.at_scale(W)
    p = one
    for m in range(1, M + 1):
        c = _sin_cos_fixed(_round_div(xw, 2**m), W, "cos")
        p = _round_div(p * c, one)
    return BigReal(p, W).rounded(ctx.work_digits)


def _mean_cosines(xw: int, L: int, W: int) -> int:
    # (1/L) sum_{l=1..L} cos((2l - 1) x / (2L)) on scale-W integers
    s = 0
    den = 2 * L
    for l in range(1, L + 1):
        s += _sin_cos_fixed(_round_div((2 * l - 1) * xw, den), W, "cos")
    return _round_div(s, L)


def product_to_sum_rhs(M: int, x, ctx: PrecisionContext) -> BigReal:
    """The cosine-sum side of the product-to-sum identity.

    (1 / 2**(M-1)) * sum_{m=1}^{2**(M-1)} cos((2m - 1) x / 2**M)
    """
    if M < 1:
        raise ValueError("M must be >= 1")
    x = BigReal.coerce(x)
    W = ctx.work_digits + _GUARD
    n = 2 ** (M - 1)
    s = 0
    for m in range(1, n + 1):
        s += _sin_cos_fixed(_round_div((2 * m - 1) * x.at_scale(W), 2**M), W, "cos")
    return BigReal(_round_div(s, n), W).rounded(ctx.work_digits)


def incomplete_cosine(L: int, x, ctx: PrecisionContext) -> BigReal:
    """(1/L) * sum_{l=1..L} cos((l - 1/2) x / L).

    Approximates sinc(x) for |x| <= pi*L and repeats with period 4*pi*L.
    No window check is made here; see :func:`validity_window`.
    """
    if L < 1:
        raise ValueError("L must be >= 1")
    x = BigReal.coerce(x)
    W = ctx.work_digits + _GUARD
    return BigReal(_mean_cosines(x.at_scale(W), L, W), W).rounded(ctx.work_digits)


def validity_window(L: int, ctx: PrecisionContext) -> ValidityWindow:
    """Half-width pi*L and period 4*pi*L of the cosine expansion of order L."""
    if L < 1:
        raise ValueError("L must be >= 1")
    D = ctx.work_digits
    half = BigReal(pi_units(D + 2) * L, D + 2).rounded(D)
    return ValidityWindow(half_width=half, period=BigReal(4 * half.units, D))
