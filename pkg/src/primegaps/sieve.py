"""Segmented sieve of Eratosthenes and prime-gap event streaming.

Segments hold an odd-only boolean mask, so a segment of 2**20 numbers
costs half a megabyte and never touches memory proportional to the
overall limit.  All limits are capped at 2**63 - 1.
"""

from __future__ import annotations

import math
from collections.abc import Iterator
from dataclasses import dataclass
from enum import Enum

import numpy as np

__all__ = [
    "MAX_LIMIT",
    "DEFAULT_SEGMENT_SIZE",
    "MAX_SEGMENT_SIZE",
    "BoundaryRule",
    "PrimeSegment",
    "GapEvent",
    "simple_sieve",
    "sieve_segment",
    "iter_prime_segments",
    "primes_upto",
    "prime_count",
    "nth_prime",
    "gap_events",
]

MAX_LIMIT = 2**63 - 1
DEFAULT_SEGMENT_SIZE = 1 << 20
# Guards the per-segment mask allocation, not the overall limit.
MAX_SEGMENT_SIZE = 1 << 26


class BoundaryRule(Enum):
    """Which prime pairs near the limit x contribute a gap.

    STRICT keeps pairs with the upper prime < x (the tau-file
    convention); INCLUSIVE keeps upper prime <= x (the D_k convention).
    The two coincide whenever x is composite.
    """

    STRICT = "strict"
    INCLUSIVE = "inclusive"


@dataclass(frozen=True)
class PrimeSegment:
    """Primes found in the half-open window [lo, hi)."""

    lo: int
    hi: int
    primes: np.ndarray

    def __post_init__(self) -> None:
        self.primes.setflags(write=False)


@dataclass(frozen=True)
class GapEvent:
    """Gap d = p_{index+1} - p_index together with its lower endpoint."""

    index: int
    lower_prime: int
    gap: int

    def __post_init__(self) -> None:
        if self.index < 1 or self.gap < 1:
            raise ValueError("gap events need positive index and gap")
        # d_1 = 1 is the only odd gap; every later gap joins two odd primes.
        if (self.index == 1) != (self.gap == 1):
            raise ValueError(f"gap {self.gap} at index {self.index} violates parity")
        if self.index >= 2 and self.gap % 2:
            raise ValueError(f"odd gap {self.gap} at index {self.index}")


def _check_limit(x: int) -> None:
    if x > MAX_LIMIT:
        raise ValueError(f"limit {x} exceeds supported range 2**63 - 1")


def simple_sieve(limit: int) -> np.ndarray:
    """All primes <= limit by a one-shot odd-only sieve.

    Intended for base primes (limit around sqrt of the real target);
    memory is limit/2 bytes.
    """
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    _check_limit(limit)
    # index i represents the odd number 2*i + 1
    half = (limit + 1) // 2
    mask = np.ones(half, dtype=bool)
    mask[0] = False  # 1 is not prime
    for i in range(1, min((math.isqrt(limit) + 1) // 2 + 1, half)):
        if mask[i]:
            p = 2 * i + 1
            mask[(p * p) // 2 :: p] = False
    odds = 2 * np.flatnonzero(mask).astype(np.int64) + 1
    return np.concatenate(([np.int64(2)], odds))


def _missing_base_prime(base: np.ndarray, need: int) -> bool:
    """True when some prime <= need is absent from the ascending base list.

    base is trusted to be the full prime list up to its own last entry,
    so only the window (base[-1], need] has to be scanned; for a sane
    base that window is at most one prime gap wide.
    """
    if base.size == 0:
        return True
    last = int(base[-1])
    small = base.tolist()
    for m in range((last + 1) | 1, need + 1, 2):
        if all(m % p for p in small if p * p <= m):
            return True
    return False


def sieve_segment(lo: int, hi: int, base_primes: np.ndarray) -> PrimeSegment:
    """Sieve the window [lo, hi) using precomputed base primes.

    base_primes must contain every prime <= isqrt(hi - 1), ascending.
    """
    if lo < 2:
        raise ValueError(f"segment start {lo} below 2")
    if hi <= lo:
        raise ValueError(f"empty or reversed window [{lo}, {hi})")
    if hi - lo > MAX_SEGMENT_SIZE:
        raise ValueError(f"segment span {hi - lo} exceeds {MAX_SEGMENT_SIZE}")
    _check_limit(hi - 1)
    base = np.asarray(base_primes, dtype=np.int64)
    need = math.isqrt(hi - 1)
    if need >= 2 and _missing_base_prime(base, need):
        raise ValueError(f"base primes incomplete: need all primes <= {need}")

    first_odd = lo | 1
    count = (hi - first_odd + 1) // 2
    mask = np.ones(count, dtype=bool)
    if first_odd == 1:
        mask[0] = False
    for p in base.tolist():
        if p == 2:
            continue
        if p * p >= hi:
            break
        start = max(p * p, ((lo + p - 1) // p) * p)
        if start % 2 == 0:
            start += p
        if start < hi:
            mask[(start - first_odd) // 2 :: p] = False
    odds = first_odd + 2 * np.flatnonzero(mask).astype(np.int64)
    if lo <= 2 < hi:
        odds = np.concatenate(([np.int64(2)], odds))
    return PrimeSegment(lo=lo, hi=hi, primes=odds)


def iter_prime_segments(
    bound: int, segment_size: int = DEFAULT_SEGMENT_SIZE
) -> Iterator[PrimeSegment]:
    """Yield consecutive PrimeSegments covering [2, bound)."""
    if bound <= 2:
        return
    _check_limit(bound - 1)
    if not 64 <= segment_size <= MAX_SEGMENT_SIZE:
        raise ValueError(f"segment size {segment_size} outside [64, {MAX_SEGMENT_SIZE}]")
    base = simple_sieve(math.isqrt(bound - 1))
    lo = 2
    while lo < bound:
        hi = min(lo + segment_size, bound)
        yield sieve_segment(lo, hi, base)
        lo = hi


def primes_upto(limit: int, segment_size: int = DEFAULT_SEGMENT_SIZE) -> np.ndarray:
    """All primes <= limit as one array; memory scales with pi(limit)."""
    parts = [seg.primes for seg in iter_prime_segments(limit + 1, segment_size)]
    if not parts:
        return np.empty(0, dtype=np.int64)
    return np.concatenate(parts)


def prime_count(x: int, segment_size: int = DEFAULT_SEGMENT_SIZE) -> int:
    """pi(x): number of primes <= x."""
    if x < 2:
        return 0
    _check_limit(x)
    return sum(seg.primes.size for seg in iter_prime_segments(x + 1, segment_size))


_SMALL_PRIMES = (2, 3, 5, 7, 11, 13)


def nth_prime(n: int, segment_size: int = DEFAULT_SEGMENT_SIZE) -> int:
    """The n-th prime, 1-indexed: nth_prime(1) = 2."""
    if n < 1:
        raise ValueError(f"prime index {n} must be >= 1")
    if n <= len(_SMALL_PRIMES):
        return _SMALL_PRIMES[n - 1]
    # p_n < n (log n + log log n) for n >= 6
    ln = math.log(n)
    bound = int(n * (ln + math.log(ln))) + 1
    if bound > MAX_LIMIT:
        raise ValueError(f"prime index {n} out of supported range")
    seen = 0
    for seg in iter_prime_segments(bound + 1, segment_size):
        if seen + seg.primes.size >= n:
            return int(seg.primes[n - seen - 1])
        seen += seg.primes.size
    raise AssertionError("upper bound for nth prime too small")


def gap_events(
    x: int,
    rule: BoundaryRule = BoundaryRule.STRICT,
    include_first: bool = True,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
) -> Iterator[GapEvent]:
    """Stream gap events d_n = p_{n+1} - p_n for primes below the limit.

    Under STRICT the upper prime satisfies p_{n+1} < x, under INCLUSIVE
    p_{n+1} <= x.  Indices are the global gap indices (d_1 joins 2 and
    3); with include_first=False the stream starts at index 2.
    """
    if x < 3:
        raise ValueError(f"limit {x} too small for any gap")
    _check_limit(x)
    bound = x if rule is BoundaryRule.STRICT else x + 1
    prev: int | None = None
    index = 0
    for seg in iter_prime_segments(bound, segment_size):
        for p in seg.primes.tolist():
            if prev is not None:
                index += 1
                if include_first or index > 1:
                    yield GapEvent(index=index, lower_prime=prev, gap=p - prev)
            prev = p
