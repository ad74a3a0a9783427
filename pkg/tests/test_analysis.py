import pytest
from hypothesis import given, strategies as st

from sincpi.analysis import (
    DigitPattern,
    coinciding_digits,
    convergence_table,
    digit_report,
    off_by_one_pattern,
)
from sincpi.bignum import PrecisionContext
from sincpi.oracles import reference_pi
from sincpi.pi_series import Method, SeriesKind, pi_accelerated, pi_direct

REF = str(reference_pi(50))
CTX = PrecisionContext(39)


def test_known_counts():
    assert coinciding_digits("3.1417501835074959226730514058333", REF) == 4
    assert coinciding_digits("3.141592736923126571794054593597", REF) == 7
    assert coinciding_digits(REF, REF) == 50


def test_counts_integer_digit():
    assert coinciding_digits("3.0977993328722573504830557765576", REF) == 1
    assert coinciding_digits("2.0", REF) == 0


@pytest.mark.parametrize("bad", ["", "-3.14", "3.1.4", "pi", ".5", "3e2"])
def test_malformed(bad):
    with pytest.raises(ValueError):
        coinciding_digits(bad, REF)


numeric = st.from_regex(r"\A[0-9]{1,3}\.[0-9]{0,12}\Z")


@given(numeric, numeric)
def test_symmetric(a, b):
    assert coinciding_digits(a, b) == coinciding_digits(b, a)


@given(numeric, numeric)
def test_pattern_prefix_is_coinciding(a, b):
    p = off_by_one_pattern(a, b)
    if p is not None:
        assert p.prefix_len == coinciding_digits(a, b)


def endpoint_value(L):
    if L <= 10**6:
        return pi_direct(SeriesKind.ENDPOINT, L, CTX, threads=1).value_string()
    return pi_accelerated(SeriesKind.ENDPOINT, L, CTX).value_string()


@pytest.mark.parametrize("L, p", [(10**3, 3), (10**6, 6), (10**9, 9), (10**12, 12)])
def test_endpoint_patterns(L, p):
    v = endpoint_value(L)
    pat = off_by_one_pattern(v, REF)
    assert pat == DigitPattern(p, p, p)
    digits_v, digits_r = v.replace(".", ""), REF.replace(".", "")
    assert int(digits_v[p]) == int(digits_r[p]) - 1


def test_endpoint_small_L_has_no_pattern():
    assert off_by_one_pattern(endpoint_value(23), REF) is None


def test_printed_mismatch_digits():
    # the printed strings themselves
    assert off_by_one_pattern("3.140592486923126571797960843597", REF) == DigitPattern(3, 3, 3)
    assert off_by_one_pattern("3.14159265358879323846264321661", REF) == DigitPattern(12, 12, 12)


def test_borrow_is_not_a_pattern():
    assert off_by_one_pattern("3.1299", "3.1300") is None
    assert off_by_one_pattern("3.1399", "3.1400") is None


def test_needs_second_group():
    assert off_by_one_pattern("3.13", "3.14") is None
    assert off_by_one_pattern("3.130", "3.145") is None


@pytest.mark.parametrize("L", [23, 1000, 10**6, 10**9, 10**12])
def test_midpoint_never_patterned(L):
    if L <= 10**6:
        v = pi_direct(SeriesKind.MIDPOINT, L, CTX, threads=1).value_string()
    else:
        v = pi_accelerated(SeriesKind.MIDPOINT, L, CTX).value_string()
    assert off_by_one_pattern(v, REF) is None


def test_digit_report():
    r = digit_report("3.140592", REF)
    assert r.coinciding == 3 and r.pattern == DigitPattern(3, 3, 3)


def test_convergence_table_single():
    (rec,) = convergence_table(SeriesKind.MIDPOINT, [23], CTX, threads=1)
    assert rec.L == 23 and rec.method is Method.DIRECT
    assert rec.coinciding == 4 and rec.pattern is None
    assert rec.wall_time >= 0


def test_convergence_table_accelerated_rows():
    recs = convergence_table(SeriesKind.MIDPOINT, [10**9, 10**12], CTX)
    assert [r.coinciding for r in recs] == [19, 25]
    assert all(r.method is Method.ACCELERATED for r in recs)
