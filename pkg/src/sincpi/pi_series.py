"""The two L-term sums converging to pi, by direct summation or by
Euler-Maclaurin acceleration.

Both sums are Riemann sums of g(x) = 4 / (1 + x^2) on [0, 1] with step
h = 1/L:

* ``SeriesKind.MIDPOINT``  16L sum 1/((2l-1)^2 + 4L^2)  = h sum g((l - 1/2) h)
* ``SeriesKind.ENDPOINT``   4L sum 1/(l^2 + L^2)        = h sum g(l h)

and the integral of g is pi.  The accelerated path evaluates
pi + (endpoint corrections), which reaches L = 10**12 and beyond instantly.
"""

from __future__ import annotations

import enum
import functools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .bignum import BigReal, PrecisionContext
from .oracles import pi_units

__all__ = [
    "SeriesKind",
    "Method",
    "PiResult",
    "BernoulliTable",
    "DirectSumRefused",
    "AccuracyRefused",
    "pi_direct",
    "pi_accelerated",
    "pi_convergence_probe",
    "bernoulli_even",
    "bernoulli_numbers",
    "correction_coefficients",
    "denominator",
    "default_threads",
    "DIRECT_CAP",
    "DIRECT_HARD_CAP",
    "MAX_CORRECTIONS",
]

DIRECT_CAP = 2_000_000_000
# beyond this a direct sum is never attempted, override or not
DIRECT_HARD_CAP = 10_000_000_000
MAX_CORRECTIONS = 12
PROBE_DIRECT_BELOW = 10_000_000
_PARALLEL_MIN_L = 200_000


class SeriesKind(enum.Enum):
    MIDPOINT = "eq15"
    ENDPOINT = "eq16"

    @classmethod
    def parse(cls, text: str) -> "SeriesKind":
        return cls(text.strip().lower())


class Method(enum.Enum):
    DIRECT = "direct"
    ACCELERATED = "accelerated"


class DirectSumRefused(RuntimeError):
    """L is too large for term-by-term summation."""


class AccuracyRefused(ArithmeticError):
    """The correction series cannot deliver the requested digits at this L."""

    def __init__(self, message: str, achievable_digits: int):
        super().__init__(message)
        self.achievable_digits = achievable_digits


@dataclass(frozen=True)
class PiResult:
    kind: SeriesKind
    L: int
    method: Method
    value: BigReal
    error_bound: BigReal
    ctx: PrecisionContext
    corrections: int | None = None

    def value_string(self, decimals: int | None = None) -> str:
        return self.value.to_string(self.ctx.out_digits if decimals is None else decimals)


def denominator(kind: SeriesKind, L: int, l: int) -> int:
    if kind is SeriesKind.MIDPOINT:
        return (2 * l - 1) ** 2 + 4 * L * L
    return l * l + L * L


def _prefactor(kind: SeriesKind, L: int) -> int:
    return 16 * L if kind is SeriesKind.MIDPOINT else 4 * L


def default_threads() -> int:
    env = os.environ.get("PI_SINC_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


# -- direct summation -----------------------------------------------------------


def _chunk_sum(kind_value: str, L: int, W: int, lo: int, hi: int) -> int:
    """Sum of round(10^W / d_l) for l in [lo, hi); exact integer result."""
    two_one = 2 * 10**W
    s = 0
    if kind_value == "eq15":
        four_L2 = 4 * L * L
        for l in range(lo, hi):
            d = (2 * l - 1) ** 2 + four_L2
            s += (two_one + d) // (d << 1)
    else:
        L2 = L * L
        for l in range(lo, hi):
            d = l * l + L2
            s += (two_one + d) // (d << 1)
    return s


def _chunks(L: int, n: int) -> list[tuple[int, int]]:
    n = max(1, min(n, L))
    edges = [1 + (L * i) // n for i in range(n + 1)]
    return [(a, b) for a, b in zip(edges, edges[1:]) if a < b]


def pi_direct(kind: SeriesKind, L: int, ctx: PrecisionContext, *, threads: int | None = None,
              allow_large: bool = False) -> PiResult:
    """Evaluate the L-term sum term by term.

    Each reciprocal of an exact integer denominator is rounded once to the
    working scale; everything after that is exact integer arithmetic.  Chunks of the index range are summed in worker
    processes; integer addition makes the total independent of the split.
    """
    if L < 1:
        raise ValueError("L must be >= 1")
    if L > DIRECT_HARD_CAP or (L > DIRECT_CAP and not allow_large):
        raise DirectSumRefused(
            f"direct summation of {L} terms refused (cap {DIRECT_CAP:.0e}"
            f"{'' if L > DIRECT_HARD_CAP else ', pass allow_large to override'}); "
            "use the accelerated method"
        )
    ctx = ctx.for_summation(L, L)
    W = ctx.work_digits
    threads = default_threads() if threads is None else max(1, threads)
    if threads == 1 or L < _PARALLEL_MIN_L:
        s = _chunk_sum(kind.value, L, W, 1, L + 1)
    else:
        parts = _chunks(L, threads * 4)
        with ProcessPoolExecutor(max_workers=threads) as pool:
            futures = [pool.submit(_chunk_sum, kind.value, L, W, a, b) for a, b in parts]
            s = sum(f.result() for f in futures)
    pre = _prefactor(kind, L)
    # each reciprocal is off by <= 1/2 unit
    bound = BigReal((pre * L + 1) // 2 + 1, W)
    return PiResult(kind, L, Method.DIRECT, BigReal(pre * s, W), bound, ctx)


# -- Bernoulli numbers and Euler-Maclaurin coefficients -------------------------


@functools.lru_cache(maxsize=None)
def bernoulli_numbers(n: int) -> tuple[Fraction, ...]:
    """B_0..B_n from sum_{j=0}^{m} C(m+1, j) B_j = 0 (so B_1 = -1/2)."""
    B = [Fraction(1)]
    for m in range(1, n + 1):
        B.append(-sum(comb(m + 1, j) * B[j] for j in range(m)) / (m + 1))
    return tuple(B)


@dataclass(frozen=True)
class BernoulliTable:
    """Even-index Bernoulli numbers B_2..B_{2k} as exact rationals."""

    values: tuple[Fraction, ...]  # values[i] = B_{2(i+1)}

    def __getitem__(self, index: int) -> Fraction:
        if index < 2 or index % 2 or index // 2 > len(self.values):
            raise KeyError(index)
        return self.values[index // 2 - 1]

    @property
    def max_index(self) -> int:
        return 2 * len(self.values)


def bernoulli_even(upto_2k: int) -> BernoulliTable:
    if upto_2k < 2 or upto_2k % 2:
        raise ValueError("upto_2k must be a positive even integer")
    B = bernoulli_numbers(upto_2k)
    return BernoulliTable(tuple(B[2:upto_2k + 1:2]))


@functools.lru_cache(maxsize=None)
def _g_derivatives(n: int) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    """Derivatives 0..n of g(x) = 4/(1+x^2) at x = 0 and x = 1.

    Differentiating (1 + x^2) g = 4 n times gives
    (1 + x^2) g^(n) + 2 n x g^(n-1) + n (n-1) g^(n-2) = 0.
    """
    at0 = [Fraction(4), Fraction(0)]
    at1 = [Fraction(2), Fraction(-2)]
    for k in range(2, n + 1):
        at0.append(-k * (k - 1) * at0[k - 2])
        at1.append(-(2 * k * at1[k - 1] + k * (k - 1) * at1[k - 2]) / 2)
    return tuple(at0[: n + 1]), tuple(at1[: n + 1])


@functools.lru_cache(maxsize=None)
def correction_coefficients(kind: SeriesKind, kmax: int) -> tuple[Fraction, ...]:
    """c_1..c_kmax with  sum = pi [- h] + sum_k c_k h^(2k).

    Trapezoid:  B_2k/(2k)! (g^(2k-1)(1) - g^(2k-1)(0))
    Midpoint:   the same times (2^(1-2k) - 1), i.e. using B_2k(1/2).
    The right-endpoint sum is the trapezoid plus h (g(1) - g(0)) / 2 = -h.
    """
    B = bernoulli_numbers(2 * kmax)
    at0, at1 = _g_derivatives(2 * kmax)
    out = []
    for k in range(1, kmax + 1):
        c = B[2 * k] / factorial(2 * k) * (at1[2 * k - 1] - at0[2 * k - 1])
        if kind is SeriesKind.MIDPOINT:
            c *= Fraction(1, 2 ** (2 * k - 1)) - 1
        out.append(c)
    return tuple(out)


def _first_nonzero_after(terms: list[Fraction], K: int) -> Fraction:
    for t in terms[K:]:
        if t:
            return t
    raise ArithmeticError("correction table too short")


def pi_accelerated(kind: SeriesKind, L: int, ctx: PrecisionContext, K: int | None = None) -> PiResult:
    """pi plus K Euler-Maclaurin corrections in powers of 1/L.

    With ``K=None`` the smallest K <= 12 is used whose first omitted
    (nonzero) correction is below 10^-(out_digits + 3).  The reported error
    bound is that omitted term plus rounding.  Raises :class:`AccuracyRefused`
    when the omitted term reaches 10^-out_digits.
    """
    if L < 1:
        raise ValueError("L must be >= 1")
    if K is not None and K < 1:
        raise ValueError("K must be >= 1")
    kmax = max(MAX_CORRECTIONS, K or 0) + 8
    h2 = Fraction(1, L * L)
    terms = []
    p = Fraction(1)
    for c in correction_coefficients(kind, kmax):
        p *= h2
        terms.append(c * p)
    if K is None:
        target = Fraction(1, 10 ** (ctx.out_digits + 3))
        K = next(
            (k for k in range(1, MAX_CORRECTIONS + 1) if abs(_first_nonzero_after(terms, k)) < target),
            MAX_CORRECTIONS,
        )
    omitted = abs(_first_nonzero_after(terms, K))
    if omitted >= Fraction(1, 10**ctx.out_digits):
        achievable = 0
        while Fraction(1, 10 ** (achievable + 1)) > omitted:
            achievable += 1
        raise AccuracyRefused(
            f"L={L} with {K} corrections leaves an error near {float(omitted):.1e}; "
            f"only about {achievable} decimals are reachable",
            achievable,
        )
    W = ctx.work_digits
    total = Fraction(pi_units(W + 4), 10 ** (W + 4)) + sum(terms[:K])
    if kind is SeriesKind.ENDPOINT:
        total -= Fraction(1, L)
    value = BigReal.from_fraction(total, W)
    # omitted term rounded up, plus a few units for the rounded pieces
    bound = BigReal(-(-omitted.numerator * 10**W // omitted.denominator) + 2, W)
    return PiResult(kind, L, Method.ACCELERATED, value, bound, ctx, corrections=K)


def pi_convergence_probe(kind: SeriesKind, L_list, ctx: PrecisionContext, *,
                         threads: int | None = None) -> list[PiResult]:
    """Evaluate each L, directly below 10**7 and accelerated above."""
    L_list = list(L_list)
    if not L_list:
        raise ValueError("L_list must not be empty")
    if any(b < a for a, b in zip(L_list, L_list[1:])):
        raise ValueError("L_list must be ascending")
    out = []
    for L in L_list:
        if L < PROBE_DIRECT_BELOW:
            out.append(pi_direct(kind, L, ctx, threads=threads))
        else:
            out.append(pi_accelerated(kind, L, ctx))
    return out
