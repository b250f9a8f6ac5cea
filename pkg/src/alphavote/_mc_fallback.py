"""Pure-Python (vectorised numpy) Monte Carlo kernel.

Implements the same two entry points as the compiled kernel in
``_mc_kernel.pyx`` and draws from the identical counter-based streams:
trial ``t`` is stream ``t`` of the run's seed, and participants are
laid out group 1 / group 2 / egoists.  Criterion encoding per group:
kind 0 votes yes when the member sum exceeds ``thr``; kind 1 votes yes
when the count of positive members reaches ``cnt``.  Zero-size groups
are skipped entirely.
"""

from __future__ import annotations

import numpy as np
from scipy.special import ndtri

from .rng import uniform_grid

name = "python"


def _realised(x, g1, g2, egoists, mu, sigma, v_star,
              kind1, thr1, cnt1, kind2, thr2, cnt2):
    """Per-trial accept flags and realised role means for a draw matrix."""
    ntrials, n = x.shape
    votes = np.zeros(ntrials, dtype=np.int64)
    zeros = np.zeros(ntrials, dtype=np.float64)

    def group_block(lo, size, kind, thr, cnt):
        if size == 0:
            return zeros, None
        block = x[:, lo:lo + size]
        s = block.sum(axis=1)
        if kind == 0:
            yes = s > thr
        else:
            yes = (block > 0.0).sum(axis=1) >= cnt
        votes[yes] += size
        return s, yes

    s1, _ = group_block(0, g1, kind1, thr1, cnt1)
    s2, _ = group_block(g1, g2, kind2, thr2, cnt2)
    if egoists > 0:
        own = x[:, g1 + g2:]
        seg = own.sum(axis=1)
        votes += (own > 0.0).sum(axis=1)
    else:
        seg = zeros
    accepted = votes >= v_star

    means = np.zeros((ntrials, 4), dtype=np.float64)
    if g1 > 0:
        means[:, 0] = np.where(accepted, s1 / g1, 0.0)
    if g2 > 0:
        means[:, 1] = np.where(accepted, s2 / g2, 0.0)
    if egoists > 0:
        means[:, 2] = np.where(accepted, seg / egoists, 0.0)
    means[:, 3] = np.where(accepted, (s1 + s2 + seg) / n, 0.0)
    return accepted, means


def _draw(seed, first_trial, ntrials, n, mu, sigma):
    u = uniform_grid(seed, first_trial, ntrials, n)
    return mu + sigma * ndtri(u)


def trial_partials(seed, first_trial, ntrials, g1, g2, egoists, mu, sigma,
                   v_star, kind1, thr1, cnt1, kind2, thr2, cnt2):
    """Accumulate one chunk of trials.

    Returns the 9-vector [accepted_count, sum_g1, sumsq_g1, sum_g2,
    sumsq_g2, sum_eg, sumsq_eg, sum_rand, sumsq_rand] of realised
    per-trial role means (zero for rejected trials).
    """
    n = g1 + g2 + egoists
    x = _draw(seed, first_trial, ntrials, n, mu, sigma)
    accepted, means = _realised(x, g1, g2, egoists, mu, sigma, v_star,
                                kind1, thr1, cnt1, kind2, thr2, cnt2)
    out = np.empty(9, dtype=np.float64)
    out[0] = float(accepted.sum())
    for col in range(4):
        m = means[:, col]
        out[1 + 2 * col] = m.sum()
        out[2 + 2 * col] = (m * m).sum()
    return out


def trial_records(seed, first_trial, ntrials, g1, g2, egoists, mu, sigma,
                  v_star, kind1, thr1, cnt1, kind2, thr2, cnt2):
    """Per-trial outcomes: (accepted uint8 array, realised means (T, 4))."""
    n = g1 + g2 + egoists
    x = _draw(seed, first_trial, ntrials, n, mu, sigma)
    accepted, means = _realised(x, g1, g2, egoists, mu, sigma, v_star,
                                kind1, thr1, cnt1, kind2, thr2, cnt2)
    return accepted.astype(np.uint8), means
