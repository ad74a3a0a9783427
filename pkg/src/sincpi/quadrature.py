"""Tanh-sinh quadrature on decimal fixed-point numbers, plus the integral
identities it is used to check.

Nodes and weights on [-1, 1] are kept as distances from the nearer endpoint
so that points crowding the ends do not lose precision to cancellation.
"""

from __future__ import annotations

import functools
import logging
import math
from dataclasses import dataclass
from typing import Callable, Iterator

from .bignum import (
    BigReal,
    PrecisionContext,
    _exp_neg_fixed,
    _round_div,
    div,
    exp_neg,
)
from .oracles import pi_units, reference_erf, sqrt_pi
from .sinc_expansion import sinc

__all__ = [
    "QuadratureSpec",
    "QuadratureError",
    "integrate",
    "refinement_levels",
    "verify_erf_integral",
    "verify_sqrtpi_identity",
    "damping_tail_bound",
]

log = logging.getLogger(__name__)

Integrand = Callable[[BigReal], BigReal]


class QuadratureError(ArithmeticError):
    """Refinement stopped before two levels agreed to the target digits."""

    def __init__(self, message: str, estimate: BigReal, digits: float):
        super().__init__(message)
        self.estimate = estimate
        self.digits = digits


@dataclass(frozen=True)
class QuadratureSpec:
    a: BigReal
    b: BigReal
    target_digits: int = 16
    max_refinement: int = 10

    def __post_init__(self):
        object.__setattr__(self, "a", BigReal.coerce(self.a))
        object.__setattr__(self, "b", BigReal.coerce(self.b))
        if not self.a < self.b:
            raise ValueError("quadrature needs a < b")
        if self.target_digits < 1 or self.max_refinement < 1:
            raise ValueError("target_digits and max_refinement must be positive")


@functools.lru_cache(maxsize=128)
def _level_nodes(level: int, W: int) -> tuple[tuple[int, int], ...]:
    """(endpoint distance, weight) pairs for the nodes new at ``level``.

    Level 0 holds t = 0, 1, 2, ...; level j >= 1 holds the odd multiples of
    2**-j.  Weights exclude the step size h.  Both values are scale-W
    integers.  A node is dropped once its weight underflows scale W.
    """
    one = 10**W
    half_pi = _round_div(pi_units(W + 2), 200)
    denom = 2**level
    nodes = []
    k = 0 if level == 0 else 1
    step = 1 if level == 0 else 2
    while True:
        t_num = k  # t = k / 2^level
        em = _exp_neg_fixed(_round_div(t_num * one, denom), W)  # e^-t
        ep = _round_div(one * one, em)  # e^t
        sinh_t = (ep - em) // 2
        cosh_t = (ep + em) // 2
        u = half_pi * sinh_t // one
        q = _exp_neg_fixed(2 * u, W)  # e^-2u
        # 1 - tanh(u) = 2q / (1 + q); sech^2(u) = 4q / (1 + q)^2
        dist = _round_div(2 * q * one, one + q)
        w = _round_div(half_pi * cosh_t // one * 4 * q * one, (one + q) ** 2)
        if w == 0:
            break
        nodes.append((dist, w))
        k += step
    return tuple(nodes)


def refinement_levels(f: Integrand, spec: QuadratureSpec, ctx: PrecisionContext) -> Iterator[BigReal]:
    """Yield the tanh-sinh estimate at h = 1, 1/2, 1/4, ... (max_refinement + 1 levels)."""
    W = ctx.work_digits
    a, b = spec.a.at_scale(W), spec.b.at_scale(W)
    one = 10**W

    def fx(units: int) -> int:
        return BigReal.coerce(f(BigReal(units, W))).at_scale(W)

    def offset(dist: int) -> int:
        # (b - a)/2 * dist at scale W
        return _round_div((b - a) * dist, 2 * one)

    total = 0  # sum of weight * f, scale 2W
    for level in range(spec.max_refinement + 1):
        for i, (dist, w) in enumerate(_level_nodes(level, W)):
            if level == 0 and i == 0:
                total += w * fx(_round_div(a + b, 2))
                continue
            d = offset(dist)
            total += w * (fx(a + d) + fx(b - d))
        # integral = (b - a)/2 * h * total, h = 2^-level
        est = _round_div(total * (b - a), 2 * one * 2**level * one)
        yield BigReal(est, W)


def integrate(f: Integrand, spec: QuadratureSpec, ctx: PrecisionContext) -> BigReal:
    """Integrate ``f`` over [spec.a, spec.b] by tanh-sinh.

    Refines until two successive levels agree to ``spec.target_digits``
    decimal places.  Raises :class:`QuadratureError` carrying the best
    estimate if ``spec.max_refinement`` is reached first.
    """
    prev = None
    digits = 0.0
    tol = BigReal(1, spec.target_digits)
    for level, est in enumerate(refinement_levels(f, spec, ctx)):
        if prev is not None:
            diff = abs(est - prev)
            digits = math.inf if not diff else -math.log10(float(diff) or 1e-300)
            if level >= 2 and diff < tol:
                log.debug("tanh-sinh converged at level %d, agreement %.1f digits", level, digits)
                return est
        prev = est
    raise QuadratureError(
        f"no convergence to {spec.target_digits} digits after {spec.max_refinement} refinements",
        prev,
        digits,
    )


def _integrate_panels(f: Integrand, a, b, panels: int, target: int, ctx: PrecisionContext) -> BigReal:
    a, b = BigReal.coerce(a), BigReal.coerce(b)
    W = ctx.work_digits
    ua, ub = a.at_scale(W), b.at_scale(W)
    edges = [ua + _round_div(i * (ub - ua), panels) for i in range(panels + 1)]
    total = BigReal(0, W)
    for lo, hi in zip(edges, edges[1:]):
        spec = QuadratureSpec(BigReal(lo, W), BigReal(hi, W), target + 1 + len(str(panels)), 12)
        total = total + integrate(f, spec, ctx)
    return total


def damping_tail_bound(T, scale, ctx: PrecisionContext) -> BigReal:
    """Upper bound on the tail integral of exp(-t^2/scale^2) from T to infinity.

    With u = t/scale the tail is scale * int_{T/scale}^inf e^{-u^2} du, and
    int_c^inf e^{-u^2} du <= e^{-c^2} / (2c), giving scale^2 e^{-T^2/scale^2} / (2T).
    """
    T, s = BigReal.coerce(T), BigReal.coerce(scale)
    if T.units <= 0 or s.units <= 0:
        raise ValueError("T and scale must be positive")
    s2 = s * s
    e = exp_neg(div(T * T, s2, ctx), ctx)
    return div(s2 * e, 2 * T, ctx)


def _ctx_for_target(target_digits: int, ctx: PrecisionContext | None) -> PrecisionContext:
    if ctx is None:
        return PrecisionContext(target_digits, 10)
    if ctx.out_digits < target_digits:
        return PrecisionContext(target_digits, ctx.guard_digits)
    return ctx


def verify_erf_integral(x, ctx: PrecisionContext | None = None, target_digits: int = 16,
                        upper=12) -> BigReal:
    """|(2x/pi) int_0^upper e^{-t^2/4} sinc(x t) dt - erf(x)| for 0 < x <= 6.

    The [0, upper] interval is split into panels about half an oscillation
    of sinc(x t) wide, so each panel sees a smooth integrand.
    """
    x = BigReal.coerce(x)
    if not (0 < x <= 6):
        raise ValueError("verify_erf_integral needs 0 < x <= 6")
    ctx = _ctx_for_target(target_digits, ctx)
    quarter = BigReal(25, 2)

    def integrand(t: BigReal) -> BigReal:
        g = exp_neg((t * t * quarter).rounded(ctx.work_digits), ctx)
        return (g * sinc(x * t, ctx)).rounded(ctx.work_digits)

    up = BigReal.coerce(upper)
    panels = max(1, math.ceil(float(x) * float(up) / math.pi))
    integral = _integrate_panels(integrand, 0, up, panels, target_digits, ctx)
    D = ctx.work_digits
    approx = BigReal(_round_div(2 * x.at_scale(D) * integral.at_scale(D), pi_units(D)), D)
    return abs(approx - reference_erf(x, ctx))


def verify_sqrtpi_identity(ctx: PrecisionContext | None = None, target_digits: int = 16,
                           upper=6) -> BigReal:
    """|4 int_0^upper e^{-t^2} erf(t) dt - sqrt(pi)|."""
    ctx = _ctx_for_target(target_digits, ctx)

    def integrand(t: BigReal) -> BigReal:
        g = exp_neg((t * t).rounded(ctx.work_digits), ctx)
        return (g * reference_erf(t, ctx)).rounded(ctx.work_digits)

    up = BigReal.coerce(upper)
    panels = max(1, math.ceil(float(up) / 3))
    integral = _integrate_panels(integrand, 0, up, panels, target_digits, ctx)
    return abs(4 * integral - sqrt_pi(ctx))
