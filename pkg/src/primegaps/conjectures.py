"""Conjectured growth laws for gap moments and maximal gaps.

Model curves: the exponential-model moment k! (log n)^k, the power-sum
form k! x (log x)^(k-1), the Cramer-Shanks square (log z)^2, Granville's
2 e^-gamma (log z)^2, Wolf's pi(x)-based maximal-gap estimate, and the
Kourbatov lower bound (log p)^2 - log p - 1.  Wolf's additive constant
c = log C_2 is always computed from the truncated twin-prime product,
never hard-coded.
"""

from __future__ import annotations

import csv
import math
from collections.abc import Mapping
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

import numpy as np

from .expmodel import EULER_GAMMA
from .gapstats import MaxGapRecord, MomentSummary
from .sieve import iter_prime_segments

__all__ = [
    "Constants",
    "ComparisonRow",
    "twin_constant",
    "default_constants",
    "exp_moment_model",
    "oes_power_sum",
    "cramer_shanks",
    "granville",
    "wolf_max_gap",
    "wolf_max_gap_at_index",
    "kourbatov_bound",
    "compare_moments",
    "compare_max_gaps",
    "known_max_gap_records",
]

# Truncation bounds below this leave more than ~1e-5 of the product tail.
_MIN_TWIN_BOUND = 100_000
_DEFAULT_TWIN_BOUND = 1_000_000


@dataclass(frozen=True)
class Constants:
    """Numeric constants shared by the model curves."""

    gamma: float
    granville_coeff: float  # 2 e^-gamma
    twin_c2: float  # C_2 = 2 prod (1 - (p-1)^-2) over odd primes
    wolf_c: float  # log C_2
    product_bound: int


def twin_constant(bound: int) -> tuple[float, float]:
    """(C_2, log C_2) from the twin-prime product truncated at bound.

    The dropped tail is about 1/(bound * log bound), so bound = 10**6
    already gives seven correct digits.  Bounds too small for useful
    accuracy are rejected rather than silently accepted.
    """
    if bound < _MIN_TWIN_BOUND:
        raise ValueError(
            f"product bound {bound} below {_MIN_TWIN_BOUND}; "
            "truncation error would exceed the advertised tolerance"
        )
    log_total = math.log(2.0)
    for seg in iter_prime_segments(bound + 1):
        p = seg.primes.astype(np.float64)
        if seg.lo <= 2:
            p = p[1:]  # the product runs over odd primes only
        if p.size:
            log_total += float(np.sum(np.log1p(-1.0 / ((p - 1.0) ** 2))))
    return math.exp(log_total), log_total


@lru_cache(maxsize=8)
def default_constants(bound: int = _DEFAULT_TWIN_BOUND) -> Constants:
    c2, c = twin_constant(bound)
    return Constants(
        gamma=EULER_GAMMA,
        granville_coeff=2.0 * math.exp(-EULER_GAMMA),
        twin_c2=c2,
        wolf_c=c,
        product_bound=bound,
    )


def exp_moment_model(n: int, k: int) -> float:
    """Exponential-model moment: k! (log n)^k; k = 0 gives 1 exactly."""
    if n < 2:
        raise ValueError(f"model needs n >= 2, got {n}")
    if k < 0:
        raise ValueError(f"moment order {k} must be >= 0")
    return math.factorial(k) * math.log(n) ** k


def oes_power_sum(x: float, k: int) -> float:
    """Conjectured gap power sum D_k(x) ~ k! x (log x)^(k-1)."""
    if x <= 1:
        raise ValueError(f"power-sum model needs x > 1, got {x}")
    if k < 1:
        raise ValueError(f"power {k} must be >= 1")
    return math.factorial(k) * x * math.log(x) ** (k - 1)


def cramer_shanks(z: float) -> float:
    """Cramer-Shanks maximal-gap scale (log z)^2; log(1)^2 = 0 exactly."""
    if z < 1:
        raise ValueError(f"scale {z} must be >= 1")
    return math.log(z) ** 2


def granville(z: float, constants: Constants | None = None) -> float:
    """Granville's corrected scale 2 e^-gamma (log z)^2 ~ 1.1229 (log z)^2."""
    coeff = (constants or default_constants()).granville_coeff
    if z < 1:
        raise ValueError(f"scale {z} must be >= 1")
    return coeff * math.log(z) ** 2


def wolf_max_gap(x: float, pi_x: int, constants: Constants | None = None) -> float:
    """Wolf's estimate G(x) ~ (x / pi(x)) (2 log pi(x) - log x + c)."""
    if x <= 1 or pi_x < 1:
        raise ValueError("wolf estimate needs x > 1 and pi(x) >= 1")
    c = (constants or default_constants()).wolf_c
    return (x / pi_x) * (2.0 * math.log(pi_x) - math.log(x) + c)


def wolf_max_gap_at_index(p_n: int, n: int, constants: Constants | None = None) -> float:
    """Wolf's estimate in record coordinates, x = p_n and pi(x) = n.

    Substituting x ~ n log n for the inner log x gives
    (p_n / n) (2 log n - log(n log n) + c); undefined at n = 1 (nan).
    """
    if n < 1 or p_n < 2:
        raise ValueError("record coordinates need n >= 1 and p_n >= 2")
    if n == 1:
        return math.nan
    c = (constants or default_constants()).wolf_c
    return (p_n / n) * (2.0 * math.log(n) - math.log(n * math.log(n)) + c)


def kourbatov_bound(p: float) -> float:
    """Conjectured record lower bound (log p)^2 - log p - 1, for p >= e^2.

    Raises when the polynomial is not positive (p below about 5.05).
    """
    if p <= 1:
        raise ValueError(f"prime scale {p} must exceed 1")
    value = _kourbatov_raw(p)
    if value <= 0:
        raise ValueError(f"bound is not positive at {p}; needs larger p")
    return value


def _kourbatov_raw(p: float) -> float:
    lp = math.log(p)
    return lp * lp - lp - 1.0


@dataclass(frozen=True)
class ComparisonRow:
    """Observed value against one or more model curves.

    ratios holds observed/model per model key (nan where the model
    vanishes or is undefined).  exceeds_granville is set on maximal-gap
    rows: G_n > 2 e^-gamma (log n)^2, trivially true at n = 1.
    """

    n: int
    x_or_pn: int
    observed: float
    model_values: Mapping[str, float]
    ratios: Mapping[str, float]
    k: int | None = None
    exceeds_granville: bool | None = None


def _ratio(observed: float, model: float) -> float:
    if not math.isfinite(model) or model <= 0:
        return math.nan
    return observed / model


def compare_moments(summary: MomentSummary, n: int, ks: list[int]) -> list[ComparisonRow]:
    """One row per order k: observed mu'_k against k! (log n)^k."""
    if summary.n != n:
        raise ValueError(f"summary holds n = {summary.n}, caller claims {n}")
    rows = []
    for k in ks:
        if k not in summary.moments:
            raise ValueError(f"summary lacks moment order {k}")
        observed = summary.moments[k]
        model = exp_moment_model(n, k)
        rows.append(
            ComparisonRow(
                n=n,
                x_or_pn=n,
                observed=observed,
                model_values={"exp_moment": model},
                ratios={"exp_moment": _ratio(observed, model)},
                k=k,
            )
        )
    return rows


def compare_max_gaps(
    records: list[MaxGapRecord], constants: Constants | None = None
) -> list[ComparisonRow]:
    """Record gaps against the conjectured curves on both scales.

    Every model column is emitted on the n scale and the p_n scale
    where it has two natural arguments; kourbatov is the raw polynomial
    (negative for tiny p), wolf is nan at n = 1.
    """
    consts = constants or default_constants()
    rows = []
    for rec in records:
        models = {
            "cramer_shanks_n": cramer_shanks(rec.index),
            "cramer_shanks_pn": cramer_shanks(rec.lower_prime),
            "granville_n": granville(rec.index, consts),
            "granville_pn": granville(rec.lower_prime, consts),
            "wolf": wolf_max_gap_at_index(rec.lower_prime, rec.index, consts),
            "kourbatov": _kourbatov_raw(rec.lower_prime),
        }
        observed = float(rec.gap)
        rows.append(
            ComparisonRow(
                n=rec.index,
                x_or_pn=rec.lower_prime,
                observed=observed,
                model_values=models,
                ratios={key: _ratio(observed, value) for key, value in models.items()},
                exceeds_granville=rec.gap > models["granville_n"],
            )
        )
    return rows


def known_max_gap_records() -> list[MaxGapRecord]:
    """The shipped table of first-occurrence maximal gaps below 2^64."""
    path = resources.files("primegaps").joinpath("data/max_gap_records.csv")
    records = []
    with path.open("r", encoding="ascii") as fh:
        reader = csv.DictReader(row for row in fh if not row.startswith("#"))
        for row in reader:
            records.append(
                MaxGapRecord(
                    index=int(row["n"]), gap=int(row["G_n"]), lower_prime=int(row["p_n"])
                )
            )
    if [r.index for r in records] != sorted(r.index for r in records):
        raise ValueError("record fixture is not sorted by index")
    return records
