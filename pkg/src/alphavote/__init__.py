"""Capital dynamics of voting societies with cohesive groups.

A society of egoists and up to two groups accepts or rejects random
capital-increment proposals by alpha-majority.  The package computes
each role's expected one-step increment exactly, by normal
approximation, and by Monte Carlo, sweeps the curves over group size,
locates their landmarks, and simulates capital trajectories.
"""

__version__ = "0.1.0"

from .analytic import (ApproximationTerms, ExpectedIncrements,
                       approx_single_group, approximation_terms,
                       exact_accept_prob, exact_increments,
                       exact_single_group, exact_two_groups,
                       group_free_baseline)
from .backend import active_backend, available_backends, backend_name, get_backend
from .landmarks import (Landmark, LandmarkRequest, detect_landmarks,
                        parse_landmark_request)
from .model import (AverageAbove, Environment, GroupCriterion,
                    InternalMajority, Proposal, SocietyComposition,
                    StepOutcome, TotalPositive, VotingRule, egoist_vote,
                    generate_proposal, group_vote, run_step, tally)
from .montecarlo import (McConfig, TrajectoryRecord, estimate_increments,
                         simulate_trajectory)
from .rng import RandomSource, stream_normals, stream_uniforms, uniform_grid
from .scenarios import (SCENARIO_NAMES, Scenario, SweepResult, build_scenario,
                        run_sweep)
from .stats import (binomial_tail, negative_part_mean, normal_cdf, normal_pdf,
                    positive_part_mean)

__all__ = [
    "ApproximationTerms", "AverageAbove", "Environment", "ExpectedIncrements",
    "GroupCriterion", "InternalMajority", "Landmark", "LandmarkRequest",
    "McConfig", "Proposal", "RandomSource", "SCENARIO_NAMES", "Scenario",
    "SocietyComposition", "StepOutcome", "SweepResult", "TotalPositive",
    "TrajectoryRecord", "VotingRule", "active_backend", "approx_single_group",
    "approximation_terms", "available_backends", "backend_name",
    "binomial_tail", "build_scenario", "detect_landmarks", "egoist_vote",
    "estimate_increments", "exact_accept_prob", "exact_increments",
    "exact_single_group", "exact_two_groups", "generate_proposal",
    "get_backend", "group_free_baseline", "group_vote", "negative_part_mean",
    "normal_cdf", "normal_pdf", "parse_landmark_request",
    "positive_part_mean", "run_step", "run_sweep", "simulate_trajectory",
    "stream_normals", "stream_uniforms", "tally", "uniform_grid",
    "__version__",
]
