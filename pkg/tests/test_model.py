import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kbresponse.errors import EmptyProfile, IndexOutOfRange, InvalidArgument, InvalidServiceTime
from kbresponse.model import (
    ServiceProfile,
    WorkloadSpec,
    ranked_servers,
    summarize,
    swap_servers,
    validate_profile,
)

from conftest import TABLE1

times = st.floats(min_value=1e-3, max_value=1e3, allow_nan=False, allow_infinity=False)
profiles = st.lists(times, min_size=1, max_size=20).map(lambda xs: ServiceProfile(tuple(xs)))


def test_validate_minimal():
    p = validate_profile([0.5, 1.0])
    assert p.k == 2
    assert p[1] == 0.5 and p[2] == 1.0


def test_validate_table1():
    assert validate_profile(TABLE1).k == 15


@pytest.mark.parametrize(
    "raw, index",
    [([0.5, 0.0], 2), ([-1.0], 1), ([0.3, math.nan], 2), ([math.inf, 1.0], 1), ([0.1, "x"], 2), ([True], 1)],
)
def test_validate_rejects_bad_entries(raw, index):
    with pytest.raises(InvalidServiceTime) as exc:
        validate_profile(raw)
    assert exc.value.index == index


def test_validate_rejects_empty():
    with pytest.raises(EmptyProfile):
        validate_profile([])


def test_summary_table1(table1):
    s = summarize(table1)
    assert round(s.sigma, 3) == 10.140
    assert s.s_max == 0.965
    assert s.bottleneck_index == 7
    assert round(s.gamma_max, 3) == 1.036
    assert s.gamma_min == pytest.approx(1 / 10.140)


def test_summary_single_server():
    s = summarize(ServiceProfile((1.0,)))
    assert (s.sigma, s.s_max, s.gamma_min, s.gamma_max) == (1.0, 1.0, 1.0, 1.0)


def test_bottleneck_tie_goes_to_smallest_index():
    assert summarize(ServiceProfile((0.2, 0.9, 0.9))).bottleneck_index == 2


def test_swap_table1(table1):
    swapped = swap_servers(table1, 7, 15)
    assert swapped[7] == 0.734 and swapped[15] == 0.965
    assert table1[7] == 0.965  # original untouched


def test_swap_self_is_identity(table1):
    assert swap_servers(table1, 4, 4) == table1


def test_swap_out_of_range():
    with pytest.raises(IndexOutOfRange):
        swap_servers(ServiceProfile((0.5, 1.0)), 1, 3)
    with pytest.raises(IndexOutOfRange):
        swap_servers(ServiceProfile((0.5, 1.0)), 0, 1)


def test_ranked_table1(table1):
    assert [i for i, _ in ranked_servers(table1)[:5]] == [7, 11, 3, 6, 15]


def test_ranked_small_cases():
    assert ranked_servers(ServiceProfile((1.0,))) == [(1, 1.0)]
    assert ranked_servers(ServiceProfile((0.4, 0.4))) == [(1, 0.4), (2, 0.4)]


def test_workload_rejects_window_above_users():
    with pytest.raises(InvalidArgument):
        WorkloadSpec(think_time=1.0, transactions=1, window_n=5, workstations_m=4)
    with pytest.raises(InvalidArgument):
        WorkloadSpec(transactions=0)
    WorkloadSpec(think_time=15.0, transactions=10, window_n=110, workstations_m=266)


@given(profiles)
def test_summary_matches_definitions(p):
    s = summarize(p)
    assert s.s_max == max(p.service_times)
    assert s.sigma == math.fsum(p.service_times)
    assert s.s_max <= s.sigma
    assert p[s.bottleneck_index] == s.s_max
    assert s.gamma_min <= s.gamma_max
    if p.k == 1:
        assert s.gamma_min == s.gamma_max


@given(profiles)
def test_ranking_is_permutation_led_by_bottleneck(p):
    ranked = ranked_servers(p)
    assert sorted(i for i, _ in ranked) == list(range(1, p.k + 1))
    assert ranked[0][0] == summarize(p).bottleneck_index
    values = [s for _, s in ranked]
    assert values == sorted(values, reverse=True)


@given(profiles, st.data())
def test_swap_is_involution(p, data):
    i = data.draw(st.integers(1, p.k))
    j = data.draw(st.integers(1, p.k))
    assert swap_servers(swap_servers(p, i, j), i, j) == p
