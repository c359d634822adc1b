import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kbresponse import oplaws
from kbresponse.errors import InvalidArgument
from kbresponse.model import ServiceProfile, scaled, summarize
from kbresponse.mva import elapsed_exact, solve_mva

from conftest import TABLE2

# exact E(5) for Table 1 with zero think time, from tests/oracles.product_form
TABLE1_EXACT_E5 = 13.021318739102844

profiles = st.lists(
    st.floats(min_value=1e-2, max_value=10.0, allow_nan=False), min_size=1, max_size=12
).map(lambda xs: ServiceProfile(tuple(xs)))


def test_utilization_law():
    assert oplaws.utilization(1.036, 0.965) == pytest.approx(1.0, abs=5e-4)
    assert oplaws.utilization(0, 0.5) == 0
    assert oplaws.utilization(1.036, 0.734) == pytest.approx(0.760424)
    # not clamped
    assert oplaws.utilization(2.0, 1.0) == 2.0
    with pytest.raises(InvalidArgument):
        oplaws.utilization(-1.0, 0.5)


def test_throughput_bounds(table1_summary):
    lo, hi = oplaws.throughput_bounds(table1_summary)
    assert round(lo, 4) == 0.0986
    assert round(hi, 3) == 1.036
    assert oplaws.throughput_bounds(summarize(ServiceProfile((2.0,)))) == (0.5, 0.5)
    assert oplaws.throughput_bounds(summarize(ServiceProfile((0.5, 0.5)))) == (1.0, 2.0)


def test_elapsed_asymptotic(table1_summary):
    assert oplaws.elapsed_asymptotic(table1_summary, 11) == pytest.approx(10.615)
    assert oplaws.elapsed_asymptotic(table1_summary, 0) == 0
    assert oplaws.elapsed_asymptotic(table1_summary, 110) == pytest.approx(106.15)
    with pytest.raises(InvalidArgument):
        oplaws.elapsed_asymptotic(table1_summary, -1)


def test_responsiveness_exact(table1_summary):
    assert oplaws.responsiveness_exact(table1_summary, 0.0).responsiveness == 1.0
    one = summarize(ServiceProfile((1.0,)))
    pt = oplaws.responsiveness_exact(one, 1.0)
    assert pt.responsiveness == 0.5 and pt.source == "exact"
    with pytest.raises(InvalidArgument):
        oplaws.responsiveness_exact(one, -0.1)


def test_responsiveness_exact_from_mva(table1, table1_summary):
    e5 = elapsed_exact(solve_mva(table1, 5), 5)
    assert e5 == pytest.approx(TABLE1_EXACT_E5, rel=1e-12)
    r = oplaws.responsiveness_exact(table1_summary, e5, 5).responsiveness
    assert r == pytest.approx(10.14 / (10.14 + TABLE1_EXACT_E5), rel=1e-12)
    assert r <= oplaws.responsiveness_approx(table1_summary, 5).responsiveness
    assert r <= 0.678


@pytest.mark.parametrize("n, expected", [(1, 91.3), (11, 48.9), (15, 41.2)])
def test_responsiveness_approx_printed_values(table1_summary, n, expected):
    pt = oplaws.responsiveness_approx(table1_summary, n)
    assert round(pt.percent, 1) == expected
    assert pt.source == "approximate"


def test_responsiveness_at_critical_point(table1_summary):
    # 10.140 / 116.29; the worked example prints 8.75
    assert oplaws.responsiveness_approx(table1_summary, 110).percent == pytest.approx(8.7196, abs=1e-4)


def test_responsiveness_empty_system(table1_summary):
    assert oplaws.responsiveness_approx(table1_summary, 0).responsiveness == 1.0


def test_responsiveness_table(table1_summary):
    points = oplaws.responsiveness_table(table1_summary, 1, 15)
    assert [p.window_n for p in points] == list(range(1, 16))
    for p, printed in zip(points, TABLE2):
        assert abs(p.percent - printed) <= 0.15
    first = [round(p.percent, 1) for p in points[:5]]
    assert first == [91.3, 84.0, 77.8, 72.4, 67.8]
    assert len(oplaws.responsiveness_table(table1_summary, 3, 3)) == 1
    with pytest.raises(InvalidArgument):
        oplaws.responsiveness_table(table1_summary, 4, 3)


def test_critical_request_count(table1_summary):
    assert oplaws.critical_request_count(table1_summary, 10) == 110
    assert oplaws.critical_request_count(table1_summary, 5) == 55
    assert oplaws.critical_request_count(summarize(ServiceProfile((1.0,))), 1) == 1
    with pytest.raises(InvalidArgument):
        oplaws.critical_request_count(table1_summary, 0)


def test_critical_request_count_exact_ratio_not_bumped():
    # 0.1 * 3 accumulates to 0.30000000000000004
    assert oplaws.critical_request_count(summarize(ServiceProfile((0.1, 0.1, 0.1))), 2) == 6


def test_critical_user_count():
    assert oplaws.critical_user_count(110, 15, 10, 0.965) == 266
    assert oplaws.critical_user_count(110, 0, 10, 0.965) == 110
    assert oplaws.critical_user_count(1, 1, 1, 1.0) == 2
    with pytest.raises(InvalidArgument):
        oplaws.critical_user_count(1, 1, 1, 0.0)


def test_critical_points_bundle(table1_summary):
    cp = oplaws.critical_points(table1_summary, 15, 10)
    assert (cp.n_star, cp.m_star) == (110, 266)
    assert cp.m_star >= cp.n_star


def test_input_rate():
    rate = oplaws.input_rate(266, 110, 15, 10)
    assert rate == pytest.approx(1.04)
    assert abs(rate - 1 / 0.965) < 0.01
    assert oplaws.input_rate(7, 7, 3.0, 2) == 0
    assert oplaws.input_rate(20, 10, 10, 1) == 1.0
    with pytest.raises(InvalidArgument):
        oplaws.input_rate(20, 10, 0, 1)
    with pytest.raises(InvalidArgument):
        oplaws.input_rate(5, 10, 1, 1)


@given(profiles, st.integers(0, 200))
def test_responsiveness_strictly_decreasing(p, n):
    s = summarize(p)
    assert oplaws.responsiveness_approx(s, n + 1).responsiveness < oplaws.responsiveness_approx(s, n).responsiveness
    assert 0 < oplaws.responsiveness_approx(s, n).responsiveness <= 1


@given(profiles, st.integers(1, 60), st.sampled_from([0.5, 2.0, 4.0, 10.0]))
def test_scale_invariance(p, n, c):
    # power-of-two factors keep the scaling exact in binary floating point
    s, t = summarize(p), summarize(scaled(p, c))
    if c in (0.5, 2.0, 4.0):
        assert oplaws.responsiveness_approx(t, n).responsiveness == oplaws.responsiveness_approx(s, n).responsiveness
        assert oplaws.critical_request_count(t, 3) == oplaws.critical_request_count(s, 3)
    else:
        assert math.isclose(
            oplaws.responsiveness_approx(t, n).responsiveness,
            oplaws.responsiveness_approx(s, n).responsiveness,
            rel_tol=1e-12,
        )


@given(profiles, st.integers(1, 5))
def test_zero_think_time_adds_no_users(p, n):
    s = summarize(p)
    n_star = oplaws.critical_request_count(s, n)
    assert oplaws.critical_user_count(n_star, 0, n, s.s_max) == n_star
