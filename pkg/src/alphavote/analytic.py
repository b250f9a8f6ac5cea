"""Closed-form expected one-step capital increments.

Notation: the society has ``l`` egoists and groups of sizes ``g_j``
(zero, one, or two of them), increments are i.i.d. N(mu, sigma^2), and
a proposal passes with at least ``v* = floor(alpha * n) + 1`` votes.

Exact engine.  Condition on each group's bloc decision.  A group of
size ``g`` with the total-positive criterion votes yes with probability
``P_G = Phi(mu * sqrt(g) / sigma)`` (its sum is N(mu*g, sigma^2*g)),
and the two halves of the truncated sum give

    E[mean_j ; yes] = mu * P_G + sigma * f_G / sqrt(g),
    E[mean_j ; no]  = mu * Q_G - sigma * f_G / sqrt(g),

with ``f_G = phi(mu * sqrt(g) / sigma)``.  Egoist yes-votes are
Bin(l, p) with ``p = Phi(mu / sigma)``; writing ``T(k) = P(Bin(l, p)
>= k)`` and summing over the groups' joint decisions gives each role's
expectation as a short sum of products.  A focal egoist's own increment
is split exactly: the positive half ``E+ = mu*p + sigma*phi(mu/sigma)``
arrives together with that egoist's own yes vote, so it multiplies the
tail of the *other* egoists' Bin(l-1, p) count at a threshold lowered
by one, and the negative half ``E- = mu - E+`` multiplies the same
tail at the full threshold.

Approximate engine.  For a single group, replacing the binomial tails
with a continuity-corrected normal distribution yields

    M_egoist ~ P_G * (mu*F_gamma + c*f_gamma) + Q_G * (mu*F_alpha + c*f_alpha),
    M_group  ~ F_gamma * (mu*P_G + d) + F_alpha * (mu*Q_G - d),

where ``c = sigma * phi(mu/sigma) / sqrt(p*q*l)``, ``d = sigma * f_G /
sqrt(g)``, and for theta in {alpha, gamma = alpha - g/n}

    F_theta = Phi(-(floor(theta*n) + 0.5 - p*l) / sqrt(p*q*l)),
    f_theta = phi((floor(theta*n) + 0.5 - p*l) / sqrt(p*q*l)).

The gap between the two engines shrinks as the egoist count grows; the
exact engine is the reference throughout the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Optional

from .model import Environment, SocietyComposition, TotalPositive, VotingRule
from .stats import binomial_tail, normal_cdf, normal_pdf, positive_part_mean

_ROLES = ("group1", "group2", "egoist", "random")


@dataclass(frozen=True)
class ExpectedIncrements:
    """Per-role expected one-step capital increments.

    Roles absent from the society are None.  ``random_participant`` is
    the size-weighted mean over all present roles, i.e. the expectation
    for a participant drawn uniformly at random.  The ``*_se`` fields
    are filled by the Monte Carlo estimator and stay None on analytic
    results; ``accept_rate`` is the probability that a proposal passes.
    """

    group1: Optional[float] = None
    group2: Optional[float] = None
    egoist: Optional[float] = None
    random_participant: float = 0.0
    group1_se: Optional[float] = None
    group2_se: Optional[float] = None
    egoist_se: Optional[float] = None
    random_se: Optional[float] = None
    accept_rate: Optional[float] = None

    def role(self, name: str) -> Optional[float]:
        if name == "random":
            return self.random_participant
        if name in ("group1", "group2", "egoist"):
            return getattr(self, name)
        raise KeyError(name)

    def se(self, name: str) -> Optional[float]:
        if name not in _ROLES:
            raise KeyError(name)
        return getattr(self, f"{name}_se" if name != "random" else "random_se")


@dataclass(frozen=True)
class ApproximationTerms:
    """Ingredients of the normal-approximation formulas (single group)."""

    p: float
    q: float
    P_G: float
    Q_G: float
    F_alpha: float
    F_gamma: float
    f_alpha: float
    f_gamma: float
    f: float
    f_G: float


def _require_total_positive(comp: SocietyComposition, engine: str) -> None:
    for crit in comp.group_criteria:
        if not isinstance(crit, TotalPositive):
            raise ValueError(
                f"{engine} covers the total-positive group criterion only, "
                f"got {type(crit).__name__}")


def _weighted_random(comp: SocietyComposition, group_means, egoist_mean) -> float:
    total = 0.0
    for g, m in zip(comp.group_sizes, group_means):
        if g > 0:
            total += g * m
    if comp.egoists > 0:
        total += comp.egoists * egoist_mean
    return total / comp.n


def _exact_role_means(l: int, sizes: tuple[int, ...], mu: float, sigma: float,
                      v_star: int):
    """Shared exact computation for any number of active groups.

    Returns (group_means, egoist_mean, accept_prob); ``sizes`` holds the
    active (positive) group sizes only and ``egoist_mean`` is None when
    l == 0.
    """
    p = normal_cdf(mu / sigma)
    e_pos = positive_part_mean(mu, sigma)
    e_neg = mu - e_pos
    k = len(sizes)
    P = [normal_cdf(mu * math.sqrt(g) / sigma) for g in sizes]
    f = [normal_pdf(mu * math.sqrt(g) / sigma) for g in sizes]
    yes_part = [mu * P[j] + sigma * f[j] / math.sqrt(sizes[j]) for j in range(k)]
    no_part = [mu * (1.0 - P[j]) - sigma * f[j] / math.sqrt(sizes[j])
               for j in range(k)]

    group_means = [0.0] * k
    egoist_mean = 0.0 if l > 0 else None
    accept = 0.0
    # Sum over the joint bloc decisions of all groups; bit b_j == 1
    # means group j votes yes and contributes its g_j votes.
    for pattern in product((0, 1), repeat=k):
        pr = 1.0
        votes = 0
        for j, b in enumerate(pattern):
            pr *= P[j] if b else (1.0 - P[j])
            votes += sizes[j] * b
        if pr == 0.0:
            continue
        need = v_star - votes
        accept += pr * binomial_tail(l, p, need)
        if l > 0:
            # Condition additionally on the focal egoist's own sign.
            pr_others = pr
            egoist_mean += pr_others * (
                e_pos * binomial_tail(l - 1, p, need - 1)
                + e_neg * binomial_tail(l - 1, p, need))
    # Each group's mean conditions on the other groups' decisions and
    # splits its own sum into the yes / no truncations.
    for j in range(k):
        others = [i for i in range(k) if i != j]
        for pattern in product((0, 1), repeat=len(others)):
            pr = 1.0
            votes = 0
            for idx, b in zip(others, pattern):
                pr *= P[idx] if b else (1.0 - P[idx])
                votes += sizes[idx] * b
            if pr == 0.0:
                continue
            group_means[j] += pr * (
                yes_part[j] * binomial_tail(l, p, v_star - votes - sizes[j])
                + no_part[j] * binomial_tail(l, p, v_star - votes))
    return group_means, egoist_mean, accept


def exact_increments(comp: SocietyComposition, env: Environment,
                     rule: VotingRule) -> ExpectedIncrements:
    """Exact expectations for any composition with total-positive groups.

    Handles zero, one, or two groups, including zero-size slots and
    all-group societies, so sweeps can use it across their full range.
    """
    _require_total_positive(comp, "the exact engine")
    v_star = rule.min_votes(comp.n)
    active = [(i, g) for i, g in enumerate(comp.group_sizes) if g > 0]
    sizes = tuple(g for _, g in active)
    means, egoist_mean, accept = _exact_role_means(
        comp.egoists, sizes, env.mu, env.sigma, v_star)
    slot_means: list[Optional[float]] = [None, None]
    for (slot, _), m in zip(active, means):
        slot_means[slot] = m
    aligned = slot_means[:len(comp.group_sizes)]
    return ExpectedIncrements(
        group1=slot_means[0],
        group2=slot_means[1],
        egoist=egoist_mean,
        random_participant=_weighted_random(comp, aligned, egoist_mean),
        accept_rate=accept,
    )


def exact_single_group(comp: SocietyComposition, env: Environment,
                       rule: VotingRule) -> ExpectedIncrements:
    """Exact expectations for one group of size >= 1 plus >= 1 egoists."""
    if len(comp.group_sizes) != 1 or comp.group_sizes[0] < 1:
        raise ValueError("expected exactly one group with at least one member")
    if comp.egoists < 1:
        raise ValueError("expected at least one egoist")
    return exact_increments(comp, env, rule)


def exact_two_groups(comp: SocietyComposition, env: Environment,
                     rule: VotingRule) -> ExpectedIncrements:
    """Exact expectations for two group slots (sizes may include zero)."""
    if len(comp.group_sizes) != 2:
        raise ValueError("expected exactly two group slots")
    if comp.group_sizes[0] + comp.group_sizes[1] < 1:
        raise ValueError("at least one group must have members")
    return exact_increments(comp, env, rule)


def exact_accept_prob(comp: SocietyComposition, env: Environment,
                      rule: VotingRule) -> float:
    """Probability that a proposal passes, computed exactly."""
    _require_total_positive(comp, "the exact engine")
    sizes = tuple(g for g in comp.group_sizes if g > 0)
    _, _, accept = _exact_role_means(
        comp.egoists, sizes, env.mu, env.sigma, rule.min_votes(comp.n))
    return accept


def group_free_baseline(n: int, env: Environment, rule: VotingRule) -> float:
    """Expected increment per participant in a society of n egoists."""
    if n < 1:
        raise ValueError("n must be at least 1")
    comp = SocietyComposition(egoists=n)
    return exact_increments(comp, env, rule).egoist


def approximation_terms(comp: SocietyComposition, env: Environment,
                        rule: VotingRule) -> ApproximationTerms:
    """Terms of the normal approximation for a single-group society."""
    if len(comp.group_sizes) != 1 or comp.group_sizes[0] < 1:
        raise ValueError("expected exactly one group with at least one member")
    _require_total_positive(comp, "the approximate engine")
    l = comp.egoists
    if l < 1:
        raise ValueError("expected at least one egoist")
    g = comp.group_sizes[0]
    n = comp.n
    mu, sigma = env.mu, env.sigma
    p = normal_cdf(mu / sigma)
    q = 1.0 - p
    spread = math.sqrt(p * q * l)
    if spread == 0.0:
        raise ValueError(
            "normal approximation undefined: p*q*l is zero for these parameters")
    floor_alpha = math.floor(rule.alpha * n)
    floor_gamma = floor_alpha - g  # floor((alpha - g/n) * n), exact for integer g
    z_alpha = (floor_alpha + 0.5 - p * l) / spread
    z_gamma = (floor_gamma + 0.5 - p * l) / spread
    root_g = math.sqrt(g)
    return ApproximationTerms(
        p=p, q=q,
        P_G=normal_cdf(mu * root_g / sigma),
        Q_G=1.0 - normal_cdf(mu * root_g / sigma),
        F_alpha=normal_cdf(-z_alpha),
        F_gamma=normal_cdf(-z_gamma),
        f_alpha=normal_pdf(z_alpha),
        f_gamma=normal_pdf(z_gamma),
        f=normal_pdf(mu / sigma),
        f_G=normal_pdf(mu * root_g / sigma),
    )


def approx_single_group(comp: SocietyComposition, env: Environment,
                        rule: VotingRule) -> ExpectedIncrements:
    """Normal-approximation expectations for a single-group society."""
    t = approximation_terms(comp, env, rule)
    g = comp.group_sizes[0]
    l = comp.egoists
    mu, sigma = env.mu, env.sigma
    c = sigma * t.f / math.sqrt(t.p * t.q * l)
    d = sigma * t.f_G / math.sqrt(g)
    egoist = (t.P_G * (mu * t.F_gamma + c * t.f_gamma)
              + t.Q_G * (mu * t.F_alpha + c * t.f_alpha))
    group = (t.F_gamma * (mu * t.P_G + d)
             + t.F_alpha * (mu * t.Q_G - d))
    accept = t.P_G * t.F_gamma + t.Q_G * t.F_alpha
    return ExpectedIncrements(
        group1=group,
        egoist=egoist,
        random_participant=(g * group + l * egoist) / comp.n,
        accept_rate=accept,
    )
