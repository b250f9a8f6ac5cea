"""Scalar probability helpers used throughout the package.

Conventions: ``normal_cdf``/``normal_pdf`` are the standard normal
Phi and phi.  ``positive_part_mean(mu, sigma)`` is E[X 1{X > 0}] for
X ~ N(mu, sigma^2), i.e. the contribution of the positive half of the
distribution to the mean (not a conditional expectation), and
``negative_part_mean`` is the complementary E[X 1{X <= 0}], so the two
always add up to ``mu``.  ``binomial_tail(n, p, k)`` is the upper tail
P(Bin(n, p) >= k) with the conventions that an empty requirement
(k <= 0) has probability one and an impossible one (k > n) probability
zero.
"""

from __future__ import annotations

import math

from scipy.special import betainc

_SQRT2 = math.sqrt(2.0)
_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


def normal_cdf(x: float) -> float:
    """Standard normal CDF Phi(x), accurate in both tails."""
    return 0.5 * math.erfc(-x / _SQRT2)


def normal_pdf(x: float) -> float:
    """Standard normal density phi(x)."""
    return _INV_SQRT_2PI * math.exp(-0.5 * x * x)


def positive_part_mean(mu: float, sigma: float) -> float:
    """E[X 1{X > 0}] for X ~ N(mu, sigma^2).

    Equals mu*Phi(mu/sigma) + sigma*phi(mu/sigma).
    """
    if sigma <= 0.0:
        raise ValueError("sigma must be positive")
    z = mu / sigma
    return mu * normal_cdf(z) + sigma * normal_pdf(z)


def negative_part_mean(mu: float, sigma: float) -> float:
    """E[X 1{X <= 0}] for X ~ N(mu, sigma^2); complements the positive part."""
    return mu - positive_part_mean(mu, sigma)


def binomial_tail(n: int, p: float, k: int) -> float:
    """Upper tail P(Bin(n, p) >= k).

    k <= 0 gives 1.0 and k > n gives 0.0; otherwise the value is the
    regularised incomplete beta function I_p(k, n - k + 1), which keeps
    full relative accuracy deep in the tails where naive summation of
    pmf terms would underflow.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    if k <= 0:
        return 1.0
    if k > n:
        return 0.0
    if p == 0.0:
        return 0.0
    if p == 1.0:
        return 1.0
    return float(betainc(k, n - k + 1, p))
