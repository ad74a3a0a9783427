"""Digit agreement between an approximation of pi and the reference value."""

from __future__ import annotations

import re
import time
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .bignum import PrecisionContext
from .oracles import reference_pi
from .pi_series import Method, PiResult, SeriesKind, pi_convergence_probe

__all__ = [
    "DigitPattern",
    "DigitReport",
    "ConvergenceRecord",
    "coinciding_digits",
    "off_by_one_pattern",
    "digit_report",
    "convergence_table",
    "reference_digits_for",
]

_NUMERIC = re.compile(r"^\d+(\.\d*)?$")


class DigitPattern(NamedTuple):
    prefix_len: int
    mismatch_index: int
    second_group_len: int


@dataclass(frozen=True)
class DigitReport:
    approx_digits: str
    ref_digits: str
    coinciding: int
    pattern: Optional[DigitPattern]


@dataclass(frozen=True)
class ConvergenceRecord:
    kind: SeriesKind
    L: int
    method: Method
    value: str
    coinciding: int
    pattern: Optional[DigitPattern]
    wall_time: float


def _digits(s: str) -> str:
    if not isinstance(s, str) or not _NUMERIC.match(s):
        raise ValueError(f"malformed numeric string: {s!r}")
    return s.replace(".", "")


def coinciding_digits(approx: str, reference: str) -> int:
    """Length of the common leading run of digits, ignoring the decimal point.

    ``coinciding_digits("3.1417", "3.1415")`` is 4: the integer digit counts.
    """
    a, r = _digits(approx), _digits(reference)
    n = 0
    for x, y in zip(a, r):
        if x != y:
            break
        n += 1
    return n


def off_by_one_pattern(approx: str, reference: str) -> Optional[DigitPattern]:
    """Detect "matching run, one digit smaller by exactly one, matching run".

    Only a literal digit difference of one qualifies; a borrow such as 299
    against 300 does not.
    """
    a, r = _digits(approx), _digits(reference)
    p1 = coinciding_digits(approx, reference)
    if p1 < 1 or p1 >= min(len(a), len(r)):
        return None
    if int(a[p1]) != int(r[p1]) - 1:
        return None
    p2 = 0
    for x, y in zip(a[p1 + 1:], r[p1 + 1:]):
        if x != y:
            break
        p2 += 1
    if p2 < 1:
        return None
    return DigitPattern(p1, p1, p2)


def digit_report(approx: str, reference: str) -> DigitReport:
    return DigitReport(approx, reference, coinciding_digits(approx, reference),
                       off_by_one_pattern(approx, reference))


def reference_digits_for(ctx: PrecisionContext) -> str:
    """Reference pi with five digits more than the values being judged."""
    return str(reference_pi(ctx.out_digits + 1 + 5))


def convergence_table(kind: SeriesKind, L_list, ctx: PrecisionContext, *,
                      threads: int | None = None) -> list[ConvergenceRecord]:
    """One record per L: value at ``ctx.out_digits`` decimals, digit counts and timing."""
    ref = reference_digits_for(ctx)
    records = []
    for L in L_list:
        t0 = time.perf_counter()
        (res,) = pi_convergence_probe(kind, [L], ctx, threads=threads)
        elapsed = time.perf_counter() - t0
        records.append(_record(res, ref, elapsed))
    return records


def _record(res: PiResult, ref: str, elapsed: float) -> ConvergenceRecord:
    value = res.value_string()
    return ConvergenceRecord(
        kind=res.kind,
        L=res.L,
        method=res.method,
        value=value,
        coinciding=coinciding_digits(value, ref),
        pattern=off_by_one_pattern(value, ref),
        wall_time=elapsed,
    )
