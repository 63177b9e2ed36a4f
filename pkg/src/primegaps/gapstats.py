"""Gap statistics: histograms, exact power sums, moments, record gaps.

Accumulators form a monoid under merge, so a run can be split into
contiguous index ranges, folded independently, and merged in order.
Power sums are plain Python integers and therefore exact at any k;
mean, variance and the Taylor ratio are reduced as exact rationals
before the final float conversion.
"""

from __future__ import annotations

import math
from collections import Counter
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .sieve import (
    DEFAULT_SEGMENT_SIZE,
    BoundaryRule,
    GapEvent,
    iter_prime_segments,
    sieve_segment,
    simple_sieve,
)

__all__ = [
    "TauHistogram",
    "MaxGapRecord",
    "GapAccumulator",
    "MomentSummary",
    "accumulate",
    "merge",
    "power_sum",
    "moments",
    "max_gap_records",
    "gap_statistics",
    "tau_histogram",
    "interval_gap_bracket",
]


@dataclass(frozen=True)
class MaxGapRecord:
    """A left-to-right maximal gap: G = gap at index, starting at lower_prime."""

    index: int
    gap: int
    lower_prime: int


@dataclass(frozen=True)
class TauHistogram:
    """tau_d(x): how often each gap d occurs below the limit."""

    limit: int
    rule: BoundaryRule
    include_first: bool
    counts: Mapping[int, int]

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def validate(self) -> None:
        for d, c in self.counts.items():
            if c <= 0:
                raise ValueError(f"non-positive count {c} for gap {d}")
            if d == 1:
                if not self.include_first:
                    raise ValueError("gap 1 present but first gap excluded")
            elif d % 2:
                raise ValueError(f"odd gap {d} in histogram")


@dataclass
class GapAccumulator:
    """Streaming summary of a contiguous range of gap events.

    first_index/last_index delimit the range (None when empty), counts
    is the gap histogram, records the running left-to-right maxima.
    The largest gap seen is always records[-1].gap.
    """

    first_index: int | None = None
    last_index: int | None = None
    counts: Counter = field(default_factory=Counter)
    records: list[MaxGapRecord] = field(default_factory=list)

    @property
    def n(self) -> int:
        if self.first_index is None:
            return 0
        return self.last_index - self.first_index + 1

    @property
    def overall_max(self) -> int:
        return self.records[-1].gap if self.records else 0

    @classmethod
    def from_events(cls, events: Iterable[GapEvent]) -> GapAccumulator:
        acc = cls()
        for event in events:
            accumulate(acc, event)
        return acc

    @classmethod
    def from_gap_arrays(
        cls, first_index: int, gaps: np.ndarray, lower_primes: np.ndarray
    ) -> GapAccumulator:
        """Vectorised bulk constructor for gaps at consecutive indices."""
        if gaps.size == 0:
            return cls()
        if gaps.size != lower_primes.size:
            raise ValueError("gaps and lower_primes length mismatch")
        bins = np.bincount(gaps)
        counts = Counter(
            {int(d): int(c) for d, c in enumerate(bins) if c}
        )
        running = np.maximum.accumulate(gaps)
        prev_best = np.concatenate(([0], running[:-1]))
        where = np.flatnonzero(gaps > prev_best)
        records = [
            MaxGapRecord(first_index + int(i), int(gaps[i]), int(lower_primes[i]))
            for i in where
        ]
        return cls(
            first_index=first_index,
            last_index=first_index + int(gaps.size) - 1,
            counts=counts,
            records=records,
        )


def accumulate(acc: GapAccumulator, event: GapEvent) -> GapAccumulator:
    """Fold one event into acc (mutates the exclusively owned acc)."""
    if acc.first_index is None:
        acc.first_index = event.index
        acc.last_index = event.index
    else:
        if event.index != acc.last_index + 1:
            raise ValueError(
                f"event index {event.index} not contiguous after {acc.last_index}"
            )
        acc.last_index = event.index
    acc.counts[event.gap] += 1
    if event.gap > acc.overall_max:
        acc.records.append(MaxGapRecord(event.index, event.gap, event.lower_prime))
    return acc


def merge(left: GapAccumulator, right: GapAccumulator) -> GapAccumulator:
    """Combine summaries of adjacent index ranges into a new summary.

    Right-hand records are kept only where they beat everything on the
    left, which is exactly the left-to-right maxima rule.
    """
    if right.first_index is None:
        return GapAccumulator(
            left.first_index, left.last_index, Counter(left.counts), list(left.records)
        )
    if left.first_index is None:
        return GapAccumulator(
            right.first_index, right.last_index, Counter(right.counts), list(right.records)
        )
    if right.first_index != left.last_index + 1:
        raise ValueError(
            f"ranges not adjacent: left ends at {left.last_index}, "
            f"right starts at {right.first_index}"
        )
    counts = Counter(left.counts)
    counts.update(right.counts)
    best = left.overall_max
    records = list(left.records) + [r for r in right.records if r.gap > best]
    return GapAccumulator(left.first_index, right.last_index, counts, records)


def power_sum(acc: GapAccumulator, k: int) -> int:
    """Exact S_k = sum of d^k over all accumulated gaps (k = 0 gives n)."""
    if k < 0:
        raise ValueError(f"power {k} must be >= 0")
    return sum(d**k * c for d, c in acc.counts.items())


@dataclass(frozen=True)
class MomentSummary:
    """Raw moments about the origin plus mean/variance/Taylor ratio.

    power_sums holds exact integer S_k for every requested k; moments
    holds mu'_k = S_k / n.  variance uses the n/(n-1) correction
    v = (n S_2 - S_1^2) / (n (n-1)) and taylor_ratio is v / mean^2,
    both reduced exactly before conversion.
    """

    n: int
    power_sums: Mapping[int, int]
    moments: Mapping[int, float]
    mean: float
    variance: float | None
    taylor_ratio: float | None


def moments(acc: GapAccumulator, ks: Iterable[int]) -> MomentSummary:
    orders = sorted(set(ks))
    if not orders:
        raise ValueError("no moment orders requested")
    if any(k < 0 for k in orders):
        raise ValueError("moment orders must be >= 0")
    n = acc.n
    if n == 0:
        raise ValueError("empty accumulator has no moments")
    sums = {k: power_sum(acc, k) for k in orders}
    s1 = sums.get(1, power_sum(acc, 1))
    s2 = sums.get(2, power_sum(acc, 2))
    mus = {k: float(Fraction(s, n)) for k, s in sums.items()}
    mean = float(Fraction(s1, n))
    if n < 2:
        return MomentSummary(n, sums, mus, mean, None, None)
    var_frac = Fraction(n * s2 - s1 * s1, n * (n - 1))
    taylor = var_frac / Fraction(s1, n) ** 2
    return MomentSummary(n, sums, mus, mean, float(var_frac), float(taylor))


def max_gap_records(acc: GapAccumulator) -> list[MaxGapRecord]:
    """Record gaps G_n; requires a stream that started at index 1."""
    if acc.first_index is None:
        raise ValueError("empty accumulator has no records")
    if acc.first_index != 1:
        raise ValueError(
            "records need the full stream from index 1 (include the first gap)"
        )
    return list(acc.records)


def gap_statistics(
    limit: int,
    rule: BoundaryRule = BoundaryRule.STRICT,
    include_first: bool = False,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
) -> GapAccumulator:
    """Sieve up to the limit and fold all gap events into one accumulator.

    Equivalent to GapAccumulator.from_events(gap_events(...)) but works
    on whole segments at a time, so desk-scale limits take seconds.
    """
    if limit < 3:
        raise ValueError(f"limit {limit} too small for any gap")
    bound = limit if rule is BoundaryRule.STRICT else limit + 1
    total = GapAccumulator()
    prev: int | None = None
    next_index = 1
    for seg in iter_prime_segments(bound, segment_size):
        primes = seg.primes
        if primes.size == 0:
            continue
        if prev is None:
            chain = primes
        else:
            chain = np.concatenate(([prev], primes))
        prev = int(primes[-1])
        if chain.size < 2:
            continue
        gaps = np.diff(chain)
        lowers = chain[:-1]
        first = next_index
        next_index += int(gaps.size)
        if not include_first and first == 1:
            gaps, lowers, first = gaps[1:], lowers[1:], 2
        part = GapAccumulator.from_gap_arrays(first, gaps, lowers)
        total = merge(total, part)
    return total


def tau_histogram(
    limit: int,
    rule: BoundaryRule = BoundaryRule.STRICT,
    include_first: bool = False,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
) -> TauHistogram:
    acc = gap_statistics(limit, rule, include_first, segment_size)
    counts = dict(sorted(acc.counts.items()))
    hist = TauHistogram(limit=limit, rule=rule, include_first=include_first, counts=counts)
    hist.validate()
    return hist


def interval_gap_bracket(a: int, b: int) -> tuple[int, int, int]:
    """Bracket the interval length L = b - a by sums of prime gaps.

    L1 sums the gaps strictly inside (a, b]; L2 additionally takes the
    gap leaving the last prime <= b.  L1 < L always.  L <= L2 holds
    whenever the prime deficit at b, nextprime(b) - b, is at least the
    deficit at a; at typical scales L2/L -> 1 but the right inequality
    can fail (e.g. a=8, b=30 gives L2 = 20 < L = 22).
    """
    if not 2 < a < b:
        raise ValueError(f"need 2 < a < b, got ({a}, {b})")
    inside = _primes_in(a + 1, b + 1)
    if len(inside) < 2:
        raise ValueError(f"interval ({a}, {b}] holds {len(inside)} primes; need >= 2")
    after = _next_prime_from(b + 1)
    l1 = inside[-1] - inside[0]
    l2 = after - inside[0]
    return l1, b - a, l2


def _primes_in(lo: int, hi: int) -> list[int]:
    lo = max(lo, 2)
    if hi <= lo:
        return []
    base = simple_sieve(math.isqrt(hi - 1))
    out: list[int] = []
    span = 1 << 20
    for start in range(lo, hi, span):
        seg = sieve_segment(start, min(start + span, hi), base)
        out.extend(seg.primes.tolist())
    return out


def _next_prime_from(lo: int) -> int:
    span = 1 << 16
    start = lo
    while True:
        found = _primes_in(start, start + span)
        if found:
            return found[0]
        start += span
