"""Accumulator algebra, exact moments, records, and interval bracketing."""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np
import pytest

from primegaps import (
    BoundaryRule,
    GapAccumulator,
    GapEvent,
    MaxGapRecord,
    TauHistogram,
    accumulate,
    gap_statistics,
    interval_gap_bracket,
    max_gap_records,
    merge,
    moments,
    power_sum,
    tau_histogram,
)

import oracles

# Exact power sums over gaps below 2^15 (strict rule, first gap excluded),
# frozen from the naive reference.
S_2POW15 = {1: 32746, 2: 478068, 3: 9764152, 4: 260764560}


def acc_from_slice(events, start, stop) -> GapAccumulator:
    return GapAccumulator.from_events(events[start:stop])


def test_three_construction_routes_agree(events_100k, acc_100k):
    looped = GapAccumulator()
    for e in events_100k:
        accumulate(looped, e)
    assert looped == acc_100k
    vectorized = gap_statistics(10**5, BoundaryRule.STRICT, include_first=True)
    assert vectorized == acc_100k


@pytest.mark.parametrize("rule", list(BoundaryRule))
@pytest.mark.parametrize("include_first", [True, False])
def test_gap_statistics_matches_naive_counts(rule, include_first):
    acc = gap_statistics(10**4, rule, include_first)
    gaps = [
        g
        for _, _, g in oracles.naive_gaps(
            10**4, rule is BoundaryRule.INCLUSIVE, include_first
        )
    ]
    assert acc.n == len(gaps)
    assert sum(acc.counts.values()) == len(gaps)
    assert acc.overall_max == max(gaps)


def test_histogram_totals_on_random_limits(oracle_primes_1e6):
    rng = random.Random(20260815)
    for _ in range(20):
        limit = rng.randrange(10, 10**6)
        hist = tau_histogram(limit, BoundaryRule.STRICT, include_first=False)
        strictly_below = sum(1 for p in oracle_primes_1e6 if p < limit)
        assert hist.total == max(strictly_below - 2, 0)
        hist.validate()


def test_tau_spot_values_at_2pow20(hist_2pow20):
    assert hist_2pow20.counts[2] == 8535
    assert hist_2pow20.counts[114] == 1
    assert max(hist_2pow20.counts) == 114


def test_first_power_sum_telescopes_to_last_prime(oracle_primes_1e6):
    for x in (10**3, 10**4, 10**5, 10**6):
        acc = gap_statistics(x, BoundaryRule.INCLUSIVE, include_first=True)
        last = max(p for p in oracle_primes_1e6 if p <= x)
        assert power_sum(acc, 1) == last - 2


def test_merge_equals_one_pass_on_random_splits(events_100k, acc_100k):
    rng = random.Random(7)
    total = len(events_100k)
    for _ in range(5):
        cut = rng.randrange(1, total)
        left = acc_from_slice(events_100k, 0, cut)
        right = acc_from_slice(events_100k, cut, total)
        assert merge(left, right) == acc_100k


def test_merge_is_associative(events_100k):
    rng = random.Random(11)
    total = len(events_100k)
    for _ in range(3):
        i, j = sorted(rng.sample(range(1, total), 2))
        a = acc_from_slice(events_100k, 0, i)
        b = acc_from_slice(events_100k, i, j)
        c = acc_from_slice(events_100k, j, total)
        assert merge(merge(a, b), c) == merge(a, merge(b, c))


def test_merge_with_empty_is_identity(acc_100k):
    assert merge(acc_100k, GapAccumulator()) == acc_100k
    assert merge(GapAccumulator(), acc_100k) == acc_100k


def test_merge_rejects_non_adjacent_ranges(events_100k):
    a = acc_from_slice(events_100k, 0, 10)
    b = acc_from_slice(events_100k, 11, 20)
    with pytest.raises(ValueError, match="not adjacent"):
        merge(a, b)
    with pytest.raises(ValueError, match="not adjacent"):
        merge(b, a)


def test_accumulate_rejects_index_jumps(events_100k):
    acc = acc_from_slice(events_100k, 0, 5)
    with pytest.raises(ValueError, match="not contiguous"):
        accumulate(acc, events_100k[6])


def test_records_are_left_to_right_maxima(acc_100k):
    got = [(r.index, r.gap, r.lower_prime) for r in max_gap_records(acc_100k)]
    assert got == oracles.naive_records(10**5 - 1)


def test_records_require_the_full_stream():
    acc = gap_statistics(1000, BoundaryRule.STRICT, include_first=False)
    with pytest.raises(ValueError, match="index 1"):
        max_gap_records(acc)
    with pytest.raises(ValueError):
        max_gap_records(GapAccumulator())


def test_record_prefix_below_1e4():
    acc = gap_statistics(10**4, BoundaryRule.INCLUSIVE, include_first=True)
    records = max_gap_records(acc)
    assert [r.index for r in records] == [1, 2, 4, 9, 24, 30, 99, 154, 189, 217, 1183]
    assert [r.gap for r in records] == [1, 2, 4, 6, 8, 14, 18, 20, 22, 34, 36]
    assert [r.lower_prime for r in records] == [2, 3, 7, 23, 89, 113, 523, 887, 1129, 1327, 9551]


def test_power_sums_exact_at_2pow15():
    acc = gap_statistics(1 << 15, BoundaryRule.STRICT, include_first=False)
    for k, expected in S_2POW15.items():
        assert power_sum(acc, k) == expected
        assert oracles.naive_power_sum(1 << 15, k) == expected
    assert power_sum(acc, 0) == acc.n == 3510


def test_power_sum_rejects_negative_order(acc_100k):
    with pytest.raises(ValueError):
        power_sum(acc_100k, -1)


def test_moments_reduce_exactly_before_float_conversion():
    acc = gap_statistics(1 << 15, BoundaryRule.STRICT, include_first=False)
    summary = moments(acc, [0, 1, 2, 3, 4])
    n = 3510
    assert summary.n == n
    assert summary.moments[0] == 1.0
    for k in (1, 2, 3, 4):
        assert summary.moments[k] == float(Fraction(S_2POW15[k], n))
    s1, s2 = S_2POW15[1], S_2POW15[2]
    var = Fraction(n * s2 - s1 * s1, n * (n - 1))
    assert summary.mean == float(Fraction(s1, n))
    assert summary.variance == float(var)
    assert summary.taylor_ratio == float(var / Fraction(s1, n) ** 2)
    assert summary.taylor_ratio == pytest.approx(0.5654, abs=1e-3)


def test_moments_variance_undefined_below_two_gaps():
    acc = GapAccumulator.from_events([GapEvent(index=1, lower_prime=2, gap=1)])
    summary = moments(acc, [1])
    assert summary.mean == 1.0
    assert summary.variance is None
    assert summary.taylor_ratio is None


def test_moments_input_validation(acc_100k):
    with pytest.raises(ValueError):
        moments(acc_100k, [])
    with pytest.raises(ValueError):
        moments(acc_100k, [-1])
    with pytest.raises(ValueError):
        moments(GapAccumulator(), [1])


def test_histogram_validate_rejects_bad_shapes():
    with pytest.raises(ValueError, match="non-positive"):
        TauHistogram(100, BoundaryRule.STRICT, False, {2: 0}).validate()
    with pytest.raises(ValueError, match="odd gap"):
        TauHistogram(100, BoundaryRule.STRICT, False, {3: 1}).validate()
    with pytest.raises(ValueError, match="first gap excluded"):
        TauHistogram(100, BoundaryRule.STRICT, False, {1: 1}).validate()
    TauHistogram(100, BoundaryRule.INCLUSIVE, True, {1: 1, 2: 5}).validate()


# interval bracketing


def test_bracket_agrees_with_naive_on_random_intervals():
    rng = random.Random(3)
    checked = 0
    while checked < 100:
        a = rng.randrange(3, 5000)
        b = a + rng.randrange(10, 500)
        try:
            got = interval_gap_bracket(a, b)
        except ValueError:
            continue
        assert got == oracles.naive_bracket(a, b)
        l1, length, _ = got
        assert l1 < length
        checked += 1


def test_bracket_right_sum_usually_but_not_always_covers_the_interval():
    # prime deficits decide the right-hand comparison: nextprime(b) - b
    # must reach nextprime(a) - a for L <= L2
    assert interval_gap_bracket(8, 30) == (18, 22, 20)
    assert interval_gap_bracket(24, 40) == (8, 16, 12)
    l1, length, l2 = interval_gap_bracket(10, 50)
    assert (l1, length, l2) == (36, 40, 42)
    assert l1 < length <= l2


def test_bracket_input_validation():
    with pytest.raises(ValueError):
        interval_gap_bracket(2, 30)
    with pytest.raises(ValueError):
        interval_gap_bracket(30, 30)
    with pytest.raises(ValueError, match="need >= 2"):
        interval_gap_bracket(24, 28)


def test_from_gap_arrays_rejects_length_mismatch():
    with pytest.raises(ValueError):
        GapAccumulator.from_gap_arrays(1, np.array([2, 4]), np.array([3]))


def test_overall_max_and_n_on_empty():
    acc = GapAccumulator()
    assert acc.n == 0
    assert acc.overall_max == 0
