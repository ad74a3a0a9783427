from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sincpi.bignum import BigReal, PrecisionContext
from sincpi.oracles import pi_value
from sincpi.pi_series import (
    AccuracyRefused,
    DirectSumRefused,
    Method,
    SeriesKind,
    _chunk_sum,
    _chunks,
    bernoulli_even,
    bernoulli_numbers,
    correction_coefficients,
    denominator,
    pi_accelerated,
    pi_convergence_probe,
    pi_direct,
)

MID, END = SeriesKind.MIDPOINT, SeriesKind.ENDPOINT


def brute_force(kind, L):
    """The sum as one exact rational."""
    pre = 16 * L if kind is MID else 4 * L
    return pre * sum(Fraction(1, denominator(kind, L, l)) for l in range(1, L + 1))


class TestDirect:
    def test_single_terms(self, ctx20):
        assert pi_direct(MID, 1, ctx20, threads=1).value == BigReal.parse("3.2")
        assert pi_direct(END, 1, ctx20, threads=1).value == 2

    @pytest.mark.parametrize("kind", [MID, END])
    @pytest.mark.parametrize("L", [2, 7, 23, 150])
    def test_against_exact_rational(self, kind, L, ctx30):
        r = pi_direct(kind, L, ctx30, threads=1)
        assert abs(r.value.to_fraction() - brute_force(kind, L)) <= r.error_bound.to_fraction()

    def test_known_values(self):
        ctx = PrecisionContext(39)
        assert pi_direct(MID, 23, ctx, threads=1).value_string().startswith("3.14175018350749592267305140583")
        assert pi_direct(END, 23, ctx, threads=1).value_string().startswith("3.09779933287225735048305577655")
        assert pi_direct(MID, 1000, ctx, threads=1).value_string().startswith("3.14159273692312657179405459359")
        assert pi_direct(END, 1000, ctx, threads=1).value_string().startswith("3.14059248692312657179796084359")

    def test_cap(self, ctx20):
        with pytest.raises(DirectSumRefused):
            pi_direct(MID, 10**12, ctx20)
        with pytest.raises(DirectSumRefused):
            pi_direct(MID, 3 * 10**9, ctx20)
        with pytest.raises(DirectSumRefused):
            pi_direct(MID, 10**12, ctx20, allow_large=True)

    def test_guard_policy_applied(self, ctx20):
        r = pi_direct(MID, 1000, ctx20, threads=1)
        assert r.ctx.guard_digits == 16
        assert r.method is Method.DIRECT

    @pytest.mark.parametrize("n", [1, 2, 3, 7, 64])
    def test_chunking_is_exact(self, n):
        L, W = 5000, 40
        whole = _chunk_sum("eq15", L, W, 1, L + 1)
        assert sum(_chunk_sum("eq15", L, W, a, b) for a, b in _chunks(L, n)) == whole

    def test_parallel_matches_serial(self, ctx20):
        a = pi_direct(END, 250_000, ctx20, threads=1)
        b = pi_direct(END, 250_000, ctx20, threads=3)
        assert a.value.units == b.value.units


@given(st.integers(min_value=1, max_value=10**9), st.integers(min_value=1, max_value=10**12))
def test_denominator_rewriting(l, L):
    assert denominator(MID, L, l) == 4 * l * l - 4 * l + 1 + 4 * L * L


class TestBernoulli:
    def test_first_values(self):
        t = bernoulli_even(4)
        assert t[2] == Fraction(1, 6)
        assert t[4] == Fraction(-1, 30)

    def test_odd_vanish(self):
        B = bernoulli_numbers(40)
        assert B[1] == Fraction(-1, 2)
        assert all(B[j] == 0 for j in range(3, 41, 2))

    def test_known_larger(self):
        assert bernoulli_even(12)[12] == Fraction(-691, 2730)

    def test_bad_index(self):
        with pytest.raises(ValueError):
            bernoulli_even(3)
        with pytest.raises(KeyError):
            bernoulli_even(4)[6]


class TestCorrections:
    def test_leading_coefficients(self):
        assert correction_coefficients(MID, 1)[0] == Fraction(1, 12)
        assert correction_coefficients(END, 1)[0] == Fraction(-1, 6)

    def test_even_order_terms_vanish(self):
        # g^(4j-1)(1) = 0 for g = 4/(1+x^2)
        for kind in (MID, END):
            c = correction_coefficients(kind, 12)
            assert all(c[k] == 0 for k in range(1, 12, 2))

    @pytest.mark.parametrize("kind", [MID, END])
    @pytest.mark.parametrize("L", [30, 64, 200])
    def test_match_exact_sum(self, kind, L):
        # exact rational sum minus pi (from the oracle, 60 digits) against the corrections
        exact = brute_force(kind, L)
        pi = pi_value(PrecisionContext(60, 0)).to_fraction()
        h = Fraction(1, L)
        series = pi - (h if kind is END else 0)
        for k, c in enumerate(correction_coefficients(kind, 10), start=1):
            series += c * h ** (2 * k)
        assert abs(series - exact) < Fraction(1, 10**30)


class TestAccelerated:
    @pytest.mark.parametrize("kind", [MID, END])
    @pytest.mark.parametrize("L", [23, 100, 1000])
    def test_agrees_with_direct(self, kind, L, ctx30):
        a = pi_accelerated(kind, L, ctx30)
        d = pi_direct(kind, L, ctx30, threads=1)
        assert abs(a.value - d.value) <= BigReal(1, 28)
        assert abs(a.value - d.value) <= a.error_bound + d.error_bound

    def test_auto_K(self, ctx30):
        assert pi_accelerated(MID, 23, ctx30).corrections == 11
        assert pi_accelerated(MID, 10**12, ctx30).corrections == 1

    def test_explicit_K(self):
        ctx = PrecisionContext(39)
        r = pi_accelerated(MID, 10**12, ctx, K=3)
        assert r.corrections == 3
        assert r.value_string().startswith("3.14159265358979323846264346661")

    def test_refuses_small_L(self, ctx30):
        with pytest.raises(AccuracyRefused) as info:
            pi_accelerated(MID, 1, ctx30)
        assert info.value.achievable_digits < 30
        with pytest.raises(AccuracyRefused):
            pi_accelerated(END, 100, ctx30, K=1)

    def test_error_bound_reported(self, ctx30):
        r = pi_accelerated(END, 10**6, ctx30)
        assert r.method is Method.ACCELERATED
        assert BigReal(0) < r.error_bound < BigReal(1, 35)


class TestProbe:
    @pytest.mark.parametrize("kind", [MID, END])
    def test_error_decreases(self, kind, ctx30):
        pi = pi_value(ctx30)
        res = pi_convergence_probe(kind, [10, 100, 1000], ctx30, threads=1)
        errs = [abs(r.value - pi) for r in res]
        assert errs[0] > errs[1] > errs[2]

    def test_single(self, ctx30):
        (r,) = pi_convergence_probe(MID, [77], ctx30, threads=1)
        assert r.value == pi_direct(MID, 77, ctx30, threads=1).value

    def test_switches_method(self, ctx30):
        res = pi_convergence_probe(MID, [1000, 10**9], ctx30, threads=1)
        assert [r.method for r in res] == [Method.DIRECT, Method.ACCELERATED]

    def test_validation(self, ctx30):
        with pytest.raises(ValueError):
            pi_convergence_probe(MID, [], ctx30)
        with pytest.raises(ValueError):
            pi_convergence_probe(MID, [100, 10], ctx30)


LAW_L = [100, 200, 400, 800, 1600]


def test_midpoint_law():
    ctx = PrecisionContext(40)
    pi = pi_value(ctx).to_fraction()
    c3 = correction_coefficients(MID, 3)[2]
    for L in LAW_L:
        err = pi_direct(MID, L, ctx, threads=1).value.to_fraction() - pi
        assert float(err / Fraction(1, 12 * L * L)) == pytest.approx(1, abs=1e-3)
        # the L^-4 term vanishes identically; what is left is c3 / L^6
        rest = err - Fraction(1, 12 * L * L)
        assert abs(rest) <= Fraction(1, L**4)
        assert float(rest / (c3 / L**6)) == pytest.approx(1, abs=1e-2)


def test_endpoint_law():
    ctx = PrecisionContext(40)
    pi = pi_value(ctx).to_fraction()
    for L in LAW_L:
        err = pi_direct(END, L, ctx, threads=1).value.to_fraction() - pi
        assert float((err + Fraction(1, L)) / Fraction(-1, 6 * L * L)) == pytest.approx(1, abs=1e-3)
        assert abs(err + Fraction(1, L) + Fraction(1, 6 * L * L)) <= Fraction(1, L**3)


@pytest.mark.parametrize("L", [1000, 10000])
def test_series_difference(L):
    ctx = PrecisionContext(30)
    d = (pi_direct(MID, L, ctx, threads=1).value - pi_direct(END, L, ctx, threads=1).value).to_fraction()
    # 1/L + 1/(12 L^2) + 1/(6 L^2) + O(L^-6)
    assert abs(d - Fraction(1, L)) < Fraction(1, L * L)
    assert float((d - Fraction(1, L)) * 4 * L * L) == pytest.approx(1, abs=1e-4)
