"""Preset parameter studies and the sweep driver.

Each scenario fixes an environment and a voting rule and sweeps one
size parameter, producing the expected-increment curves for every role.
The presets:

=======  ==============================================================
fig1     one group in a society of n = 1000; x = group size 0..n
fig2     two groups, group 1 pinned at 50 members; x = size of group 2
fig3     two groups with group 1 larger by 50; x = size of group 2
fig4     as fig3 with the offset reduced to 5
fig5     egoist count pinned (500 of n = 1500, sigma = 100, alpha =
         2/3); the two groups split 1000 members; x = size of group 1
=======  ==============================================================

Defaults elsewhere: mu = -0.8, sigma = 30, alpha = 1/2.  All preset
groups use the total-positive criterion.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional

from .analytic import (ExpectedIncrements, approx_single_group,
                       exact_increments)
from .model import Environment, SocietyComposition, VotingRule
from .montecarlo import McConfig, estimate_increments

DEFAULT_MU = -0.8
DEFAULT_SIGMA = 30.0
DEFAULT_ALPHA = Fraction(1, 2)

_KINDS = ("single_group", "fixed_first_group", "offset_pair",
          "fixed_egoists_pair")


@dataclass(frozen=True)
class Scenario:
    """A one-parameter family of societies under a fixed environment."""

    name: str
    description: str
    env: Environment
    rule: VotingRule
    n: int
    kind: str
    group1: Optional[int] = None
    offset: Optional[int] = None
    egoists: Optional[int] = None
    paired_total: Optional[int] = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown scenario kind {self.kind!r}")
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.kind == "fixed_first_group":
            if self.group1 is None or not 1 <= self.group1 <= self.n:
                raise ValueError("group1 must lie in [1, n]")
        if self.kind == "offset_pair":
            if self.offset is None or not 0 <= self.offset <= self.n:
                raise ValueError("offset must lie in [0, n]")
        if self.kind == "fixed_egoists_pair":
            if self.egoists is None or self.paired_total is None:
                raise ValueError("egoists and paired_total are required")
            if self.egoists < 0 or self.paired_total < 1:
                raise ValueError("egoists must be >= 0 and paired_total >= 1")
            if self.egoists + self.paired_total != self.n:
                raise ValueError("egoists + paired_total must equal n")

    @property
    def group_slots(self) -> int:
        return 1 if self.kind == "single_group" else 2

    @property
    def sweep_values(self) -> range:
        if self.kind == "single_group":
            return range(0, self.n + 1)
        if self.kind == "fixed_first_group":
            return range(0, self.n - self.group1 + 1)
        if self.kind == "offset_pair":
            return range(0, (self.n - self.offset) // 2 + 1)
        return range(0, self.paired_total + 1)

    def composition_at(self, x: int) -> SocietyComposition:
        """Society at sweep position x."""
        if x not in self.sweep_values:
            raise ValueError(
                f"sweep value {x} outside [{self.sweep_values.start}, "
                f"{self.sweep_values.stop - 1}] for scenario {self.name}")
        if self.kind == "single_group":
            return SocietyComposition(egoists=self.n - x, group_sizes=(x,))
        if self.kind == "fixed_first_group":
            return SocietyComposition(egoists=self.n - self.group1 - x,
                                      group_sizes=(self.group1, x))
        if self.kind == "offset_pair":
            return SocietyComposition(egoists=self.n - 2 * x - self.offset,
                                      group_sizes=(x + self.offset, x))
        return SocietyComposition(egoists=self.egoists,
                                  group_sizes=(x, self.paired_total - x))


def _base(name: str) -> Scenario:
    env = Environment(mu=DEFAULT_MU, sigma=DEFAULT_SIGMA)
    rule = VotingRule(alpha=DEFAULT_ALPHA)
    if name == "fig1":
        return Scenario(name, "single group sweep, n = 1000",
                        env, rule, n=1000, kind="single_group")
    if name == "fig2":
        return Scenario(name, "second group sweep with group 1 fixed at 50",
                        env, rule, n=1000, kind="fixed_first_group", group1=50)
    if name == "fig3":
        return Scenario(name, "two groups, group 1 larger by 50",
                        env, rule, n=1000, kind="offset_pair", offset=50)
    if name == "fig4":
        return Scenario(name, "two groups, group 1 larger by 5",
                        env, rule, n=1000, kind="offset_pair", offset=5)
    if name == "fig5":
        return Scenario(name,
                        "two groups splitting 1000 members, 500 egoists, "
                        "supermajority rule",
                        Environment(mu=DEFAULT_MU, sigma=100.0),
                        VotingRule(alpha=Fraction(2, 3)),
                        n=1500, kind="fixed_egoists_pair",
                        egoists=500, paired_total=1000)
    raise ValueError(f"unknown scenario {name!r}; choose fig1..fig5")


SCENARIO_NAMES = ("fig1", "fig2", "fig3", "fig4", "fig5")


def build_scenario(name: str, *, mu: Optional[float] = None,
                   sigma: Optional[float] = None, alpha=None,
                   n: Optional[int] = None, group1: Optional[int] = None,
                   offset: Optional[int] = None,
                   egoists: Optional[int] = None,
                   paired_total: Optional[int] = None) -> Scenario:
    """A preset scenario with optional parameter overrides.

    Overrides that do not apply to the chosen preset (for example
    ``group1`` for fig1) are rejected rather than ignored.
    """
    sc = _base(name)
    if mu is not None or sigma is not None:
        sc = replace(sc, env=Environment(
            mu=sc.env.mu if mu is None else mu,
            sigma=sc.env.sigma if sigma is None else sigma))
    if alpha is not None:
        sc = replace(sc, rule=VotingRule(alpha=alpha))
    if group1 is not None:
        if sc.kind != "fixed_first_group":
            raise ValueError(f"group1 does not apply to scenario {name}")
        sc = replace(sc, group1=group1)
    if offset is not None:
        if sc.kind != "offset_pair":
            raise ValueError(f"offset does not apply to scenario {name}")
        sc = replace(sc, offset=offset)
    if egoists is not None or paired_total is not None:
        if sc.kind != "fixed_egoists_pair":
            given = "egoists" if egoists is not None else "paired_total"
            raise ValueError(f"{given} does not apply to scenario {name}")
        new_egoists = sc.egoists if egoists is None else egoists
        new_total = sc.paired_total if paired_total is None else paired_total
        sc = replace(sc, egoists=new_egoists, paired_total=new_total,
                     n=new_egoists + new_total)
    if n is not None:
        if sc.kind == "fixed_egoists_pair":
            raise ValueError(
                f"override egoists/paired_total instead of n for {name}")
        sc = replace(sc, n=n)
    return sc


@dataclass(frozen=True)
class SweepResult:
    """Expected increments at one sweep position."""

    x: int
    increments: ExpectedIncrements


def run_sweep(scenario: Scenario, method: str = "exact",
              mc: Optional[McConfig] = None) -> list[SweepResult]:
    """Evaluate the scenario's curves at every sweep position.

    ``method`` selects the engine: ``exact`` (closed form), ``approx``
    (normal approximation; single-group scenarios only, with the
    degenerate endpoints g = 0 and l = 0 computed exactly), or ``mc``
    (Monte Carlo, requires ``mc``).  Monte Carlo sweeps reuse the same
    seed at every position, so adjacent points share randomness and the
    curves are smooth in x rather than independently noisy.
    """
    if method not in ("exact", "approx", "mc"):
        raise ValueError("method must be one of 'exact', 'approx', 'mc'")
    if method == "approx" and scenario.group_slots != 1:
        raise ValueError(
            "the approximate engine applies to single-group scenarios only")
    if method == "mc":
        if mc is None:
            raise ValueError("method 'mc' requires a Monte Carlo configuration")
    results = []
    for x in scenario.sweep_values:
        comp = scenario.composition_at(x)
        if method == "mc":
            inc = estimate_increments(comp, scenario.env, scenario.rule, mc)
        elif method == "approx":
            if comp.group_sizes[0] >= 1 and comp.egoists >= 1:
                inc = approx_single_group(comp, scenario.env, scenario.rule)
            else:
                inc = exact_increments(comp, scenario.env, scenario.rule)
        else:
            inc = exact_increments(comp, scenario.env, scenario.rule)
        results.append(SweepResult(x=x, increments=inc))
    return results
