"""Closed forms for the exponential distribution and its order statistics.

The model treats values as iid Exp(rate) samples.  Means and variances
of order statistics come from the classical partial-harmonic-sum
formulas; sums run directly up to 10**7 terms and switch to
Euler-Maclaurin expansions beyond, so desk-scale n and n = 10**8 both
evaluate instantly and to near machine precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "EULER_GAMMA",
    "ZETA2",
    "ExpParams",
    "SpacingsSample",
    "exp_moment",
    "order_stat_mean",
    "order_stat_var",
    "min_order_quantile",
    "max_order_quantile",
    "max_order_cdf",
    "max_order_sf",
    "uptail_quantile_asym",
    "max_order_mean_asym",
    "max_order_var_asym",
    "large_dev_tail",
    "simulate_spacings",
    "simulate_uniform_spacings",
]

# Euler-Mascheroni constant, 20 significant digits.
EULER_GAMMA = 0.57721566490153286061
ZETA2 = math.pi**2 / 6

# Direct summation below, Euler-Maclaurin above.
_DIRECT_TERMS = 10**7
_FSUM_TERMS = 10**5


@dataclass(frozen=True)
class ExpParams:
    """Sample size and rate of an iid Exp(rate) model."""

    n: int
    rate: float

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"sample size {self.n} must be >= 1")
        if not self.rate > 0:
            raise ValueError(f"rate {self.rate} must be positive")


def exp_moment(r: float, rate: float) -> float:
    """E[X^r] = Gamma(r + 1) / rate^r for X ~ Exp(rate), r > -1."""
    if not r > -1:
        raise ValueError(f"moment order {r} must exceed -1")
    if not rate > 0:
        raise ValueError(f"rate {rate} must be positive")
    if float(r).is_integer() and r >= 0:
        return math.factorial(int(r)) / rate ** int(r)
    return math.gamma(r + 1) / rate**r


def _recip_sum(lo: int, hi: int, power: int) -> float:
    """Sum of j^-power for j in [lo, hi], power 1 or 2."""
    if lo > hi:
        return 0.0
    count = hi - lo + 1
    if count <= _FSUM_TERMS:
        if power == 1:
            return math.fsum(1.0 / j for j in range(lo, hi + 1))
        return math.fsum(1.0 / (j * j) for j in range(lo, hi + 1))
    if hi <= _DIRECT_TERMS:
        total = 0.0
        for start in range(lo, hi + 1, 1 << 22):
            j = np.arange(start, min(start + (1 << 22), hi + 1), dtype=np.float64)
            total += float(np.sum(1.0 / j if power == 1 else 1.0 / (j * j)))
        return total
    return _cum_sum(hi, power) - _cum_sum(lo - 1, power)


def _cum_sum(m: int, power: int) -> float:
    """H_m (power 1) or sum of 1/j^2 to m (power 2), asymptotic for large m."""
    if m <= _DIRECT_TERMS:
        return _recip_sum(1, m, power)
    x = float(m)
    if power == 1:
        return math.log(x) + EULER_GAMMA + 1 / (2 * x) - 1 / (12 * x * x) + 1 / (120 * x**4)
    return ZETA2 - 1 / x + 1 / (2 * x * x) - 1 / (6 * x**3) + 1 / (30 * x**5)


def _check_order(i: int, n: int) -> None:
    if not 1 <= i <= n:
        raise ValueError(f"order statistic index {i} outside 1..{n}")


def order_stat_mean(i: int, n: int, rate: float) -> float:
    """Mean of the i-th smallest of n iid Exp(rate) values.

    E[X_(i)] = (1/rate) * sum_{j=n-i+1}^{n} 1/j; in particular the
    minimum has mean 1/(n*rate) and the maximum H_n/rate.
    """
    _check_order(i, n)
    if not rate > 0:
        raise ValueError(f"rate {rate} must be positive")
    return _recip_sum(n - i + 1, n, 1) / rate


def order_stat_var(i: int, n: int, rate: float) -> float:
    """Variance of the i-th smallest: (1/rate^2) * sum_{j=n-i+1}^{n} 1/j^2."""
    _check_order(i, n)
    if not rate > 0:
        raise ValueError(f"rate {rate} must be positive")
    return _recip_sum(n - i + 1, n, 2) / (rate * rate)


def _check_q(q: float) -> None:
    if not 0 < q < 1:
        raise ValueError(f"tail probability {q} outside (0, 1)")


def min_order_quantile(q: float, params: ExpParams) -> float:
    """y with P(X_(1) > y) = q; the minimum is Exp(n * rate)."""
    _check_q(q)
    return -math.log(q) / (params.n * params.rate)


def max_order_cdf(y: float, params: ExpParams) -> float:
    """P(X_(n) <= y) = (1 - exp(-rate*y))^n.

    Evaluated as exp(n * log1p(-exp(-rate*y))): the direct power
    magnifies the base's rounding n-fold, visible already at n ~ 10^7.
    """
    if y <= 0:
        return 0.0
    tail = math.exp(-params.rate * y)
    if tail >= 1.0:
        return 0.0
    return math.exp(params.n * math.log1p(-tail))


def max_order_sf(y: float, params: ExpParams) -> float:
    """P(X_(n) > y), stable in the far upper tail where the cdf is ~1."""
    if y <= 0:
        return 1.0
    tail = math.exp(-params.rate * y)
    if tail >= 1.0:
        return 1.0
    return -math.expm1(params.n * math.log1p(-tail))


def max_order_quantile(q: float, params: ExpParams) -> float:
    """y with P(X_(n) > y) = q, i.e. the (1-q)-quantile of the maximum.

    Evaluated as -(1/rate) * log(-expm1(log1p(-q)/n)), which stays
    accurate when q is tiny or n is huge; plain 1-(1-q)**(1/n) loses
    every significant digit there.
    """
    _check_q(q)
    t = math.log1p(-q) / params.n
    return -math.log(-math.expm1(t)) / params.rate


def uptail_quantile_asym(k: float, n: float) -> float:
    """Asymptote 2 log(n) log(k) for the upper-tail quantile scale."""
    if n <= 1 or k <= 1:
        raise ValueError("uptail asymptote needs n > 1 and k > 1")
    return 2.0 * math.log(n) * math.log(k)


def max_order_mean_asym(n: float) -> float:
    """E[X_(n)] with rate 1/log n: exactly log(n) * H_n ~ log(n)(gamma + log n)."""
    if n <= 1:
        raise ValueError(f"asymptote needs n > 1, got {n}")
    return math.log(n) * (EULER_GAMMA + math.log(n))


def max_order_var_asym(n: float) -> float:
    """Var[X_(n)] with rate 1/log n tends to (log n)^2 * pi^2/6."""
    if n <= 1:
        raise ValueError(f"asymptote needs n > 1, got {n}")
    return math.log(n) ** 2 * ZETA2


def large_dev_tail(a: float, rate: float, n: int) -> float:
    """Cramer estimate of P(mean of n iid Exp(rate) values > a).

    Returns exp(-n * (a*rate - 1 - log(rate) - log(a))) for a above the
    mean 1/rate.  This is a log-scale approximation: the exponent is
    right up to O(log n)/n terms, the value itself can be off by the
    usual sqrt(n) prefactor.
    """
    if not rate > 0:
        raise ValueError(f"rate {rate} must be positive")
    if n < 1:
        raise ValueError(f"sample count {n} must be >= 1")
    if not a > 1 / rate:
        raise ValueError(f"threshold {a} must exceed the mean {1 / rate}")
    exponent = a * rate - 1 - math.log(rate) - math.log(a)
    return math.exp(-exponent * n)


_GENERATOR = "numpy-pcg64"


@dataclass(frozen=True)
class SpacingsSample:
    """Normalised spacings X_i / S_n; distributed like uniform spacings."""

    n: int
    spacings: np.ndarray
    seed: int
    generator: str = _GENERATOR

    def __post_init__(self) -> None:
        self.spacings.setflags(write=False)
        if self.spacings.size != self.n:
            raise ValueError("spacings length disagrees with n")


def simulate_spacings(n: int, seed: int) -> SpacingsSample:
    """Draw n iid Exp(1) values and normalise by their sum.

    By the Sukhatme representation the result is distributed exactly
    like the n spacings of n - 1 iid uniform points on (0, 1).
    """
    if n < 1:
        raise ValueError(f"sample size {n} must be >= 1")
    rng = np.random.default_rng(seed)
    draws = rng.exponential(1.0, size=n)
    return SpacingsSample(n=n, spacings=draws / draws.sum(), seed=seed)


def simulate_uniform_spacings(n: int, seed: int) -> np.ndarray:
    """The n spacings of n - 1 sorted uniforms on (0, 1); the direct route."""
    if n < 1:
        raise ValueError(f"sample size {n} must be >= 1")
    rng = np.random.default_rng(seed)
    cuts = np.sort(rng.random(n - 1))
    return np.diff(np.concatenate(([0.0], cuts, [1.0])))
