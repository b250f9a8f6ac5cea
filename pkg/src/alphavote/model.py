"""Core model: society makeup, proposal generation, and the voting rule.

A society of ``n`` participants consists of independent egoists and up
to two cohesive groups.  Each period a proposal assigns every
participant an independent N(mu, sigma^2) capital increment.  Egoists
vote for the proposal exactly when their own increment is positive; a
group casts all of its votes as a bloc, for or against, according to
its decision criterion.  The proposal passes when the number of votes
in favour strictly exceeds the share ``alpha`` of the society, i.e.
reaches ``floor(alpha * n) + 1``; otherwise the status quo prevails and
every increment is forfeited.

Participant order inside a proposal vector is fixed: group 1 members
first, then group 2 members, then egoists.  The Monte Carlo kernels use
the same layout, so model-level replay and the kernels consume draws
identically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

import numpy as np

from .rng import RandomSource


def _as_fraction(value, name: str) -> Fraction:
    """Coerce to Fraction; strings like '2/3' stay exact."""
    try:
        frac = Fraction(value)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ValueError(f"{name} must be a rational number, got {value!r}") from exc
    return frac


@dataclass(frozen=True)
class Environment:
    """Proposal-generating environment: increments are i.i.d. N(mu, sigma^2)."""

    mu: float
    sigma: float

    def __post_init__(self):
        if not math.isfinite(self.mu):
            raise ValueError("mu must be finite")
        if not (math.isfinite(self.sigma) and self.sigma > 0.0):
            raise ValueError("sigma must be positive and finite")


@dataclass(frozen=True)
class TotalPositive:
    """Group supports a proposal when the sum of member increments is > 0."""


@dataclass(frozen=True)
class AverageAbove:
    """Group supports a proposal when the mean member increment exceeds ``threshold``."""

    threshold: float

    def __post_init__(self):
        if not math.isfinite(self.threshold):
            raise ValueError("threshold must be finite")


@dataclass(frozen=True)
class InternalMajority:
    """Group supports a proposal when its internal alpha1-majority of members gain.

    Members with strictly positive increments must number at least
    ``floor(alpha1 * g) + 1``.
    """

    alpha1: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha1", _as_fraction(self.alpha1, "alpha1"))
        if not 0 <= self.alpha1 < 1:
            raise ValueError("alpha1 must lie in [0, 1)")

    def required_count(self, group_size: int) -> int:
        return math.floor(self.alpha1 * group_size) + 1


GroupCriterion = Union[TotalPositive, AverageAbove, InternalMajority]


@dataclass(frozen=True)
class VotingRule:
    """Society-level alpha-majority rule.

    ``alpha`` is kept as an exact rational so that thresholds like 2/3
    of 1500 do not drift through binary floats (0.6666... * 1500 must
    floor to 1000, not 999).  Accepts Fraction, int, float, or a string
    such as ``"2/3"``.
    """

    alpha: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha", _as_fraction(self.alpha, "alpha"))
        if not 0 < self.alpha < 1:
            raise ValueError("alpha must lie strictly between 0 and 1")

    def min_votes(self, n: int) -> int:
        """Smallest vote count that passes: floor(alpha * n) + 1."""
        if n < 1:
            raise ValueError("society size must be at least 1")
        return math.floor(self.alpha * n) + 1


@dataclass(frozen=True)
class SocietyComposition:
    """Sizes and criteria of the society's roles.

    ``group_sizes`` may contain zero entries; a zero-size group is an
    absent role (it casts no votes and has no members) but keeps its
    column identity, which matters at the boundary points of sweeps.
    """

    egoists: int
    group_sizes: tuple[int, ...] = ()
    group_criteria: tuple[GroupCriterion, ...] = field(default=None)

    def __post_init__(self):
        sizes = tuple(int(g) for g in self.group_sizes)
        object.__setattr__(self, "group_sizes", sizes)
        if self.group_criteria is None:
            object.__setattr__(self, "group_criteria",
                               tuple(TotalPositive() for _ in sizes))
        else:
            object.__setattr__(self, "group_criteria", tuple(self.group_criteria))
        if self.egoists < 0:
            raise ValueError("egoist count must be nonnegative")
        if len(sizes) > 2:
            raise ValueError("at most two groups are supported")
        if any(g < 0 for g in sizes):
            raise ValueError("group sizes must be nonnegative")
        if len(self.group_criteria) != len(sizes):
            raise ValueError("one criterion per group is required")
        if self.n < 1:
            raise ValueError("society must have at least one participant")

    @property
    def n(self) -> int:
        return self.egoists + sum(self.group_sizes)

    @property
    def role_names(self) -> tuple[str, ...]:
        """Names of the roles actually present, in proposal-vector order."""
        names = [f"group{i + 1}" for i, g in enumerate(self.group_sizes) if g > 0]
        if self.egoists > 0:
            names.append("egoist")
        return tuple(names)


@dataclass(frozen=True, eq=False)
class Proposal:
    """One period's capital increments, in group-then-egoist participant order."""

    increments: np.ndarray


@dataclass(frozen=True, eq=False)
class StepOutcome:
    """Result of a single voting period."""

    accepted: bool
    votes_for: int
    per_role_mean_increment: dict[str, float]


def generate_proposal(comp: SocietyComposition, env: Environment,
                      rng: RandomSource) -> Proposal:
    """Draw one proposal from the environment."""
    z = rng.normals(comp.n)
    return Proposal(env.mu + env.sigma * z)


def egoist_vote(increment: float) -> bool:
    """An egoist supports the proposal iff their own increment is positive."""
    return increment > 0.0


def group_vote(member_increments, criterion: GroupCriterion) -> bool:
    """Apply a group's decision criterion to its members' increments."""
    x = np.asarray(member_increments, dtype=np.float64)
    if x.size == 0:
        raise ValueError("group has no members")
    if isinstance(criterion, TotalPositive):
        return bool(x.sum() > 0.0)
    if isinstance(criterion, AverageAbove):
        return bool(x.sum() > criterion.threshold * x.size)
    if isinstance(criterion, InternalMajority):
        return bool(int((x > 0.0).sum()) >= criterion.required_count(x.size))
    raise TypeError(f"unknown group criterion: {criterion!r}")


def tally(votes_for: int, n: int, rule: VotingRule) -> bool:
    """Does ``votes_for`` out of ``n`` ballots pass the alpha-majority rule?"""
    if not 0 <= votes_for <= n:
        raise ValueError("votes_for must lie in [0, n]")
    return votes_for >= rule.min_votes(n)


def run_step(comp: SocietyComposition, env: Environment, rule: VotingRule,
             rng: RandomSource) -> StepOutcome:
    """Play out one period: draw, vote, tally, realise or forfeit.

    The returned per-role means are the *realised* increments: the mean
    over the role's members if the proposal passed, 0.0 otherwise.  The
    ``random`` entry is the society-wide mean, i.e. the expectation for
    a participant drawn uniformly at random.
    """
    proposal = generate_proposal(comp, env, rng)
    x = proposal.increments
    votes = 0
    role_means: dict[str, float] = {}
    offset = 0
    for i, g in enumerate(comp.group_sizes):
        if g == 0:
            continue
        members = x[offset:offset + g]
        if group_vote(members, comp.group_criteria[i]):
            votes += g
        role_means[f"group{i + 1}"] = float(members.mean())
        offset += g
    if comp.egoists > 0:
        own = x[offset:]
        votes += int((own > 0.0).sum())
        role_means["egoist"] = float(own.mean())
    accepted = tally(votes, comp.n, rule)
    if not accepted:
        role_means = {name: 0.0 for name in role_means}
        role_means["random"] = 0.0
    else:
        role_means["random"] = float(x.mean())
    return StepOutcome(accepted=accepted, votes_for=votes,
                       per_role_mean_increment=role_means)
