from concurrent.futures import ThreadPoolExecutor

import pytest
from hypothesis import given, settings, strategies as st

from sincpi.bignum import BigReal, DomainError, PrecisionContext, div, exp_neg
from sincpi.oracles import _euler, _machin, reference_erf, reference_pi, sqrt_pi
from sincpi.quadrature import QuadratureSpec, integrate

REF_PI_38 = "3.1415926535897932384626433832795028841"


def test_reference_pi_matches_printed_value():
    assert str(reference_pi(38)) == REF_PI_38


@pytest.mark.parametrize("digits, text", [(1, "3"), (2, "3.1"), (5, "3.1415")])
def test_reference_pi_short(digits, text):
    assert str(reference_pi(digits)) == text


def test_prefix_property():
    assert str(reference_pi(80)).startswith(str(reference_pi(60)))


def test_two_formulas_agree():
    D = 200
    assert abs(_machin(D) - _euler(D)) <= 2


def test_concurrent_access_is_consistent():
    with ThreadPoolExecutor(8) as pool:
        values = list(pool.map(lambda d: str(reference_pi(d)), [120] * 16))
    assert len(set(values)) == 1


class TestReferenceErf:
    def test_zero(self, ctx20):
        assert reference_erf(0, ctx20) == 0

    @given(st.integers(min_value=1, max_value=8 * 10**4))
    @settings(max_examples=30, deadline=None)
    def test_odd(self, units):
        ctx = PrecisionContext(20, 5)
        x = BigReal(units, 4)
        assert reference_erf(-x, ctx) == -reference_erf(x, ctx)

    def test_erf1_against_quadrature(self):
        ctx = PrecisionContext(16, 10)
        r = reference_erf(1, ctx)
        assert r.to_string(16) == "0.8427007929497149"
        spi = sqrt_pi(ctx)
        integral = integrate(lambda t: exp_neg((t * t).rounded(ctx.work_digits), ctx),
                             QuadratureSpec(0, 1, 20), ctx)
        via_quad = div(2 * integral, spi, ctx)
        assert abs(via_quad - r) < BigReal(1, 16)

    def test_increasing_and_bounded(self, ctx20):
        grid = [BigReal(i, 1) for i in range(-80, 81, 4)]
        vals = [reference_erf(x, ctx20) for x in grid]
        assert all(a < b for a, b in zip(vals, vals[1:]))
        assert all(-1 < v < 1 for v in vals)

    def test_saturates_past_six(self):
        ctx = PrecisionContext(30, 10)
        assert 1 - reference_erf(6, ctx) < BigReal(1, 15)

    def test_out_of_domain(self, ctx20):
        with pytest.raises(DomainError):
            reference_erf(BigReal.parse("8.01"), ctx20)
