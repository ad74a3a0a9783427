"""Command-line interface.

    sincpi reference-pi --digits 38
    sincpi pi --series eq15 --L 1000000000000 --digits 40
    sincpi pi-table --series eq16 --L-list 1000,1000000 --out table.csv
    sincpi erf-profile --L 5 --x-min 0 --x-max 30 --steps 300 --out profile.csv
    sincpi sinc-check --L 15 --M 4 --samples 50
    sincpi verify-identities --digits 16

Exit status: 0 on success, 1 on a domain/resource/accuracy error, 2 on a
usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import random
import sys
import tempfile
import time

from . import analysis, erf_gauss, pi_series, quadrature, sinc_expansion
from .bignum import BigReal, DomainError, PrecisionContext
from .oracles import reference_pi

log = logging.getLogger("sincpi")

DEFAULT_DIGITS = 40
DEFAULT_SEED = 20160228
AUTO_DIRECT_MAX_L = 10**6

_FAILURES = (
    DomainError,
    pi_series.DirectSumRefused,
    pi_series.AccuracyRefused,
    quadrature.QuadratureError,
    OSError,
    ValueError,
)


def _digits_arg(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if not 1 <= n <= 10000:
        raise argparse.ArgumentTypeError("digits must lie in [1, 10000]")
    return n


def _positive_int(text: str) -> int:
    try:
        n = int(text.replace("_", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if n < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return n


def _L_list(text: str) -> list[int]:
    return [_positive_int(part) for part in text.split(",") if part.strip()]


def _decimal(text: str) -> BigReal:
    try:
        return BigReal.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _write_output(text: str, out: str | None) -> None:
    """Write to stdout, or atomically to ``out`` (temp file + rename)."""
    if not out or out == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    directory = os.path.dirname(os.path.abspath(out))
    fd, tmp = tempfile.mkstemp(prefix=".sincpi-", dir=directory)
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, out)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _pi_ctx(digits: int) -> PrecisionContext:
    # digits are significant digits of a value in [2, 4): one before the point
    return PrecisionContext(out_digits=max(1, digits - 1))


def _render_pi_value(res: pi_series.PiResult, digits: int) -> str:
    return res.value.to_string(digits - 1)


# -- subcommands ------------------------------------------------------------------


def cmd_reference_pi(args) -> int:
    _write_output(str(reference_pi(args.digits)) + "\n", None)
    return 0


def _evaluate_pi(kind, L, method, digits, threads, allow_large):
    ctx = _pi_ctx(digits)
    if method == "auto":
        method = "direct" if L <= AUTO_DIRECT_MAX_L else "accelerated"
    if method == "direct":
        return pi_series.pi_direct(kind, L, ctx, threads=threads, allow_large=allow_large)
    return pi_series.pi_accelerated(kind, L, ctx)


def cmd_pi(args) -> int:
    kind = pi_series.SeriesKind.parse(args.series)
    t0 = time.perf_counter()
    res = _evaluate_pi(kind, args.L, args.method, args.digits, args.threads, args.allow_large_direct)
    elapsed = time.perf_counter() - t0
    value = _render_pi_value(res, args.digits)
    ref = str(reference_pi(args.digits + 5))
    record = {
        "series": kind.value,
        "L": str(args.L),
        "method": res.method.value,
        "digits": args.digits,
        "value": value,
        "coinciding": analysis.coinciding_digits(value, ref),
        "error_bound": f"{float(res.error_bound):.3e}",
        "wall_time_s": round(elapsed, 6),
    }
    if args.format == "json":
        text = json.dumps(record) + "\n"
    elif args.format == "csv":
        text = _csv_text(list(record), [list(record.values())])
    else:
        text = "".join(f"{k}: {v}\n" for k, v in record.items())
    _write_output(text, args.out)
    return 0


def cmd_pi_table(args) -> int:
    kind = pi_series.SeriesKind.parse(args.series)
    L_list = args.L_list
    if not L_list:
        raise ValueError("--L-list is empty")
    if any(b < a for a, b in zip(L_list, L_list[1:])):
        raise ValueError("--L-list must be ascending")
    ctx = _pi_ctx(args.digits)
    records = analysis.convergence_table(kind, L_list, ctx, threads=args.threads)
    rows = []
    for r in records:
        p = r.pattern
        rows.append([
            r.kind.value, str(r.L), r.method.value, r.value, r.coinciding,
            "" if p is None else p.prefix_len,
            "" if p is None else p.second_group_len,
            f"{r.wall_time:.6f}",
        ])
    header = ["kind", "L", "method", "value", "coinciding", "pattern_p1", "pattern_p2", "wall_time_s"]
    _write_output(_csv_text(header, rows), args.out)
    return 0


def cmd_erf_profile(args) -> int:
    ctx = PrecisionContext(out_digits=args.digits)
    records = erf_gauss.erf_profile(args.L, args.x_min, args.x_max, args.steps, ctx)
    d = args.digits
    rows = [
        [r.x.to_string(d), r.erf_ref.to_string(d), r.erf_approx.to_string(d),
         r.abs_error.to_string(d), "true" if r.criterion_satisfied else "false"]
        for r in records
    ]
    _write_output(_csv_text(["x", "erf_ref", "erf_approx", "abs_error", "criterion"], rows), args.out)
    return 0


def cmd_sinc_check(args) -> int:
    ctx = PrecisionContext(out_digits=args.digits)
    D = ctx.work_digits
    rng = random.Random(args.seed)
    n = args.samples
    L, M = args.L, args.M
    out = [f"L: {L}  M: {M}  samples: {n}  digits: {args.digits}  seed: {args.seed}"]

    win = sinc_expansion.validity_window(L, ctx)
    out.append(f"window half_width: {win.half_width.to_string(4)}  period: {win.period.to_string(4)}")

    worst = BigReal(0)
    for _ in range(n):
        x = BigReal.parse(f"{rng.uniform(-50, 50):.12f}")
        dev = abs(sinc_expansion.product_to_sum_rhs(M, x, ctx) - sinc_expansion.vieta_product(M, x, ctx))
        worst = max(worst, dev)
    tol = BigReal(2**M, D - 2)
    out.append(f"product-to-sum identity (M={M}) max deviation: {float(worst):.3e}"
               f"  tolerance: {float(tol):.3e}  {'ok' if worst <= tol else 'FAIL'}")

    half = win.half_width.units // 2
    worst = BigReal(0)
    for i in range(n):
        x = BigReal(-half + (2 * half * i) // max(1, n - 1) if n > 1 else 0, D)
        dev = abs(sinc_expansion.incomplete_cosine(L, x, ctx) - sinc_expansion.sinc(x, ctx))
        worst = max(worst, dev)
    out.append(f"cosine sum vs sinc, max deviation on [-pi L/2, pi L/2]: {float(worst):.3e}")

    worst = BigReal(0)
    for _ in range(n):
        x = BigReal(rng.randint(-win.half_width.units, win.half_width.units), D)
        dev = abs(sinc_expansion.incomplete_cosine(L, x + win.period, ctx)
                  - sinc_expansion.incomplete_cosine(L, x, ctx))
        worst = max(worst, dev)
    out.append(f"periodicity (shift 4 pi L) max deviation: {float(worst):.3e}")
    _write_output("\n".join(out) + "\n", None)
    return 0


VERIFY_GRID = ("0.5", "1", "2", "3", "4", "5", "6")


def cmd_verify_identities(args) -> int:
    ctx = PrecisionContext(out_digits=args.digits)
    lines = [f"{'identity':<12}{'x':>6}  discrepancy"]
    worst = 0.0
    for x in VERIFY_GRID:
        d = float(quadrature.verify_erf_integral(x, ctx, target_digits=args.digits))
        worst = max(worst, d)
        lines.append(f"{'erf-sinc':<12}{x:>6}  {d:.3e}")
    d = float(quadrature.verify_sqrtpi_identity(ctx, target_digits=args.digits))
    worst = max(worst, d)
    lines.append(f"{'sqrt-pi':<12}{'-':>6}  {d:.3e}")
    lines.append(f"max discrepancy: {worst:.3e}")
    _write_output("\n".join(lines) + "\n", None)
    return 0


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sincpi", description=__doc__.split("\n\n")[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def threads_opt(sp):
        sp.add_argument("--threads", type=_positive_int, default=None,
                        help="worker processes for direct sums (default: $PI_SINC_THREADS or all cores)")

    s = sub.add_parser("reference-pi", help="print reference pi")
    s.add_argument("--digits", type=_digits_arg, default=DEFAULT_DIGITS, help="significant digits")
    s.set_defaults(func=cmd_reference_pi)

    s = sub.add_parser("pi", help="evaluate one of the pi series")
    s.add_argument("--series", choices=["eq15", "eq16"], required=True)
    s.add_argument("--L", type=_positive_int, required=True)
    s.add_argument("--method", choices=["auto", "direct", "accelerated"], default="auto")
    s.add_argument("--digits", type=_digits_arg, default=DEFAULT_DIGITS, help="significant digits")
    s.add_argument("--format", choices=["text", "json", "csv"], default="text")
    s.add_argument("--out", default=None)
    s.add_argument("--allow-large-direct", action="store_true",
                   help=f"lift the {pi_series.DIRECT_CAP:.0e}-term direct summation cap")
    threads_opt(s)
    s.set_defaults(func=cmd_pi)

    s = sub.add_parser("pi-table", help="digit agreement table over several L")
    s.add_argument("--series", choices=["eq15", "eq16"], required=True)
    s.add_argument("--L-list", type=_L_list, required=True)
    s.add_argument("--digits", type=_digits_arg, default=DEFAULT_DIGITS)
    s.add_argument("--out", default=None)
    threads_opt(s)
    s.set_defaults(func=cmd_pi_table)

    s = sub.add_parser("erf-profile", help="Gaussian-series erf against reference erf on a grid")
    s.add_argument("--L", type=_positive_int, required=True)
    s.add_argument("--x-min", type=_decimal, default=BigReal(0))
    s.add_argument("--x-max", type=_decimal, required=True)
    s.add_argument("--steps", type=_positive_int, default=100)
    s.add_argument("--digits", type=_digits_arg, default=DEFAULT_DIGITS, help="decimal places")
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_erf_profile)

    s = sub.add_parser("sinc-check", help="product-to-sum, window and period checks")
    s.add_argument("--L", type=_positive_int, default=15)
    s.add_argument("--M", type=_positive_int, default=4)
    s.add_argument("--samples", type=_positive_int, default=20)
    s.add_argument("--digits", type=_digits_arg, default=20, help="decimal places")
    s.add_argument("--seed", type=int, default=DEFAULT_SEED)
    s.set_defaults(func=cmd_sinc_check)

    s = sub.add_parser("verify-identities", help="quadrature check of the erf and sqrt(pi) integrals")
    s.add_argument("--digits", type=_digits_arg, default=16, help="target decimal places")
    s.set_defaults(func=cmd_verify_identities)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except _FAILURES as exc:
        print(f"sincpi {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
