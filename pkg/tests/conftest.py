"""Shared fixtures: expensive sieve products computed once per session."""

from __future__ import annotations

import pytest

from primegaps import (
    BoundaryRule,
    GapAccumulator,
    gap_events,
    tau_histogram,
)

import oracles


@pytest.fixture(scope="session")
def oracle_primes_1e6() -> list[int]:
    return oracles.naive_primes(10**6)


@pytest.fixture(scope="session")
def oracle_gaps_100k() -> list[tuple[int, int, int]]:
    return oracles.naive_gaps(10**5, inclusive=False, include_first=True)


@pytest.fixture(scope="session")
def events_100k():
    return list(gap_events(10**5, BoundaryRule.STRICT, include_first=True))


@pytest.fixture(scope="session")
def acc_100k(events_100k) -> GapAccumulator:
    return GapAccumulator.from_events(events_100k)


@pytest.fixture(scope="session")
def hist_2pow20():
    return tau_histogram(1 << 20)
