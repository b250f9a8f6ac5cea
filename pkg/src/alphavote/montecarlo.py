"""Monte Carlo estimation of expected increments and capital trajectories.

Reproducibility contract: results depend only on (composition,
environment, rule, trials, seed), never on worker count or chunk
boundaries.  Trial ``t`` always draws from stream ``t`` of the seed,
trials are processed in fixed-size chunks, and chunk partial sums are
combined in chunk order, so a run is bit-for-bit reproducible within a
backend.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import backend as _backend
from .analytic import ExpectedIncrements
from .model import (AverageAbove, Environment, InternalMajority,
                    SocietyComposition, TotalPositive, VotingRule)

# Chunks are sized to keep a chunk's draw matrix near this many doubles
# regardless of society size (the pure-Python kernel materialises it).
_CHUNK_ELEMENTS = 1 << 22
_MAX_CHUNK_TRIALS = 4096


@dataclass(frozen=True)
class McConfig:
    """Monte Carlo run parameters."""

    trials: int
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")
        if self.seed < 0:
            raise ValueError("seed must be nonnegative")


@dataclass(frozen=True)
class TrajectoryRecord:
    """One period of a capital trajectory."""

    step_index: int
    per_role_cumulative_capital: dict[str, float]
    accepted: bool


def _criterion_code(size, criterion):
    """Encode a group criterion for the kernels: (kind, threshold, count)."""
    if isinstance(criterion, TotalPositive):
        return 0, 0.0, 0
    if isinstance(criterion, AverageAbove):
        return 0, criterion.threshold * size, 0
    if isinstance(criterion, InternalMajority):
        return 1, 0.0, criterion.required_count(size)
    raise TypeError(f"unknown group criterion: {criterion!r}")


def _kernel_args(comp: SocietyComposition, env: Environment, rule: VotingRule):
    sizes = list(comp.group_sizes) + [0, 0]
    crits = list(comp.group_criteria) + [TotalPositive(), TotalPositive()]
    g1, g2 = sizes[0], sizes[1]
    kind1, thr1, cnt1 = _criterion_code(g1, crits[0])
    kind2, thr2, cnt2 = _criterion_code(g2, crits[1])
    return (g1, g2, comp.egoists, env.mu, env.sigma, rule.min_votes(comp.n),
            kind1, thr1, cnt1, kind2, thr2, cnt2)


def _chunk_trials(n: int) -> int:
    return max(1, min(_MAX_CHUNK_TRIALS, _CHUNK_ELEMENTS // max(1, n)))


def _chunks(total: int, size: int):
    return [(start, min(size, total - start)) for start in range(0, total, size)]


def _run_chunks(kernel_fn, seed, total, chunk_size, workers, args):
    """Apply a kernel over fixed chunks, preserving chunk order."""
    chunks = _chunks(total, chunk_size)
    def one(c):
        return kernel_fn(seed, c[0], c[1], *args)
    if workers <= 1 or len(chunks) <= 1:
        return [one(c) for c in chunks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(one, chunks))


def _se(total: int, s: float, sq: float) -> float:
    if total < 2:
        return float("nan")
    var = (sq - s * s / total) / (total - 1)
    return math.sqrt(max(var, 0.0) / total)


def estimate_increments(comp: SocietyComposition, env: Environment,
                        rule: VotingRule, mc: McConfig) -> ExpectedIncrements:
    """Estimate per-role expected increments with standard errors.

    Each trial plays one voting period; rejected proposals realise zero
    increments and still count, so the estimates target the same
    unconditional expectations as the analytic engines.
    """
    args = _kernel_args(comp, env, rule)
    kernel = _backend.active_backend()
    chunk = _chunk_trials(comp.n)
    parts = _run_chunks(kernel.trial_partials, mc.seed, mc.trials, chunk,
                        mc.workers, args)
    total = np.zeros(9, dtype=np.float64)
    for p in parts:
        total += p
    T = mc.trials
    sizes = comp.group_sizes
    g1 = sizes[0] if len(sizes) > 0 else 0
    g2 = sizes[1] if len(sizes) > 1 else 0

    def stats_for(col: int):
        s, sq = total[1 + 2 * col], total[2 + 2 * col]
        return s / T, _se(T, s, sq)

    m1, e1 = stats_for(0)
    m2, e2 = stats_for(1)
    meg, eeg = stats_for(2)
    mr, er = stats_for(3)
    return ExpectedIncrements(
        group1=m1 if g1 > 0 else None,
        group2=m2 if g2 > 0 else None,
        egoist=meg if comp.egoists > 0 else None,
        random_participant=mr,
        group1_se=e1 if g1 > 0 else None,
        group2_se=e2 if g2 > 0 else None,
        egoist_se=eeg if comp.egoists > 0 else None,
        random_se=er,
        accept_rate=total[0] / T,
    )


def simulate_trajectory(comp: SocietyComposition, env: Environment,
                        rule: VotingRule, steps: int, mc: McConfig,
                        initial_capitals: Optional[dict[str, float]] = None,
                        ) -> list[TrajectoryRecord]:
    """Play ``steps`` consecutive periods and track cumulative capital.

    Period ``t`` uses stream ``t`` of the seed (the same draws a
    ``steps``-trial estimate would see).  Capital accumulates per role:
    an accepted proposal adds the role's realised mean increment, a
    rejected one adds nothing.  ``initial_capitals`` may prefill any of
    the present roles; the ``random`` role starts at the size-weighted
    mean of the role initials.
    """
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    roles = list(comp.role_names) + ["random"]
    initial = dict.fromkeys(roles, 0.0)
    if initial_capitals:
        unknown = set(initial_capitals) - set(comp.role_names)
        if unknown:
            raise ValueError(f"unknown roles in initial_capitals: {sorted(unknown)}")
        initial.update(initial_capitals)
        weighted = 0.0
        for i, g in enumerate(comp.group_sizes):
            weighted += g * initial.get(f"group{i + 1}", 0.0)
        weighted += comp.egoists * initial.get("egoist", 0.0)
        initial["random"] = weighted / comp.n
    if steps == 0:
        return []

    args = _kernel_args(comp, env, rule)
    kernel = _backend.active_backend()
    chunk = _chunk_trials(comp.n)
    parts = _run_chunks(kernel.trial_records, mc.seed, steps, chunk,
                        mc.workers, args)
    accepted = np.concatenate([p[0] for p in parts])
    means = np.concatenate([p[1] for p in parts])

    col_of = {"group1": 0, "group2": 1, "egoist": 2, "random": 3}
    capitals = dict(initial)
    records = []
    for t in range(steps):
        for name in roles:
            capitals[name] += float(means[t, col_of[name]])
        records.append(TrajectoryRecord(
            step_index=t,
            per_role_cumulative_capital=dict(capitals),
            accepted=bool(accepted[t]),
        ))
    return records
