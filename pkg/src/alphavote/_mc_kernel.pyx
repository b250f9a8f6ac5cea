# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled Monte Carlo kernel.

Mirrors ``_mc_fallback`` exactly: same counter-based streams (trial t
is stream t of the run's seed), same participant layout (group 1,
group 2, egoists), same criterion encoding.  Normals come from the same
scipy inverse-CDF routine, so the draws are bit-identical to the
pure-Python backend; only summation order differs.
"""

import numpy as np

from libc.stdint cimport uint32_t, uint64_t

from scipy.special.cython_special cimport ndtri

name = "cython"


cdef inline void _philox_block(uint64_t block, uint64_t stream,
                               uint32_t seed_lo, uint32_t seed_hi,
                               uint32_t* out) nogil:
    cdef uint32_t x0 = <uint32_t>block
    cdef uint32_t x1 = <uint32_t>(block >> 32)
    cdef uint32_t x2 = <uint32_t>stream
    cdef uint32_t x3 = <uint32_t>(stream >> 32)
    cdef uint32_t k0 = seed_lo
    cdef uint32_t k1 = seed_hi
    cdef uint64_t p0, p1
    cdef uint32_t hi0, lo0, hi1, lo1
    cdef int r
    for r in range(10):
        p0 = (<uint64_t>0xD2511F53u) * x0
        p1 = (<uint64_t>0xCD9E8D57u) * x2
        hi0 = <uint32_t>(p0 >> 32)
        lo0 = <uint32_t>p0
        hi1 = <uint32_t>(p1 >> 32)
        lo1 = <uint32_t>p1
        x0 = hi1 ^ x1 ^ k0
        x1 = lo1
        x2 = hi0 ^ x3 ^ k1
        x3 = lo0
        k0 = k0 + 0x9E3779B9u
        k1 = k1 + 0xBB67AE85u
    out[0] = x0
    out[1] = x1
    out[2] = x2
    out[3] = x3


cdef inline double _uniform(uint32_t a, uint32_t b) nogil:
    # 52 random bits, strictly inside (0, 1); every step exact.
    return ((a >> 6) * 67108864.0 + (b >> 6) + 0.5) * (1.0 / 4503599627370496.0)


cdef inline int _one_trial(uint64_t stream, uint32_t seed_lo, uint32_t seed_hi,
                           int g1, int g2, int egoists, double mu, double sigma,
                           int v_star, int kind1, double thr1, int cnt1,
                           int kind2, double thr2, int cnt2,
                           double* means) nogil:
    cdef int n = g1 + g2 + egoists
    cdef int g12 = g1 + g2
    cdef double s1 = 0.0, s2 = 0.0, seg = 0.0
    cdef int c1 = 0, c2 = 0, ceg = 0
    cdef uint32_t words[4]
    cdef double u_next = 0.0
    cdef double x
    cdef int j, votes, accepted
    for j in range(n):
        if (j & 1) == 0:
            _philox_block(<uint64_t>(j >> 1), stream, seed_lo, seed_hi, words)
            x = mu + sigma * ndtri(_uniform(words[0], words[1]))
            u_next = _uniform(words[2], words[3])
        else:
            x = mu + sigma * ndtri(u_next)
        if j < g1:
            s1 += x
            if x > 0.0:
                c1 += 1
        elif j < g12:
            s2 += x
            if x > 0.0:
                c2 += 1
        else:
            seg += x
            if x > 0.0:
                ceg += 1
    votes = ceg
    if g1 > 0:
        if (s1 > thr1) if kind1 == 0 else (c1 >= cnt1):
            votes += g1
    if g2 > 0:
        if (s2 > thr2) if kind2 == 0 else (c2 >= cnt2):
            votes += g2
    accepted = votes >= v_star
    if accepted:
        means[0] = s1 / g1 if g1 > 0 else 0.0
        means[1] = s2 / g2 if g2 > 0 else 0.0
        means[2] = seg / egoists if egoists > 0 else 0.0
        means[3] = (s1 + s2 + seg) / n
    else:
        means[0] = 0.0
        means[1] = 0.0
        means[2] = 0.0
        means[3] = 0.0
    return accepted


def trial_partials(seed, first_trial, int ntrials, int g1, int g2, int egoists,
                   double mu, double sigma, int v_star,
                   int kind1, double thr1, int cnt1,
                   int kind2, double thr2, int cnt2):
    """Accumulate one chunk of trials; same 9-vector as the fallback."""
    cdef uint64_t seed64 = <uint64_t>(seed & 0xFFFFFFFFFFFFFFFF)
    cdef uint64_t first = <uint64_t>(first_trial & 0xFFFFFFFFFFFFFFFF)
    cdef uint32_t seed_lo = <uint32_t>seed64
    cdef uint32_t seed_hi = <uint32_t>(seed64 >> 32)
    out_arr = np.zeros(9, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef double means[4]
    cdef int t, col, accepted
    with nogil:
        for t in range(ntrials):
            accepted = _one_trial(first + <uint64_t>t, seed_lo, seed_hi,
                                  g1, g2, egoists, mu, sigma, v_star,
                                  kind1, thr1, cnt1, kind2, thr2, cnt2, means)
            if accepted:
                out[0] += 1.0
            for col in range(4):
                out[1 + 2 * col] += means[col]
                out[2 + 2 * col] += means[col] * means[col]
    return out_arr


def trial_records(seed, first_trial, int ntrials, int g1, int g2, int egoists,
                  double mu, double sigma, int v_star,
                  int kind1, double thr1, int cnt1,
                  int kind2, double thr2, int cnt2):
    """Per-trial outcomes; same shapes and semantics as the fallback."""
    cdef uint64_t seed64 = <uint64_t>(seed & 0xFFFFFFFFFFFFFFFF)
    cdef uint64_t first = <uint64_t>(first_trial & 0xFFFFFFFFFFFFFFFF)
    cdef uint32_t seed_lo = <uint32_t>seed64
    cdef uint32_t seed_hi = <uint32_t>(seed64 >> 32)
    accepted_arr = np.zeros(ntrials, dtype=np.uint8)
    means_arr = np.zeros((ntrials, 4), dtype=np.float64)
    cdef unsigned char[::1] acc = accepted_arr
    cdef double[:, ::1] means = means_arr
    cdef double row[4]
    cdef int t, col
    with nogil:
        for t in range(ntrials):
            acc[t] = <unsigned char>_one_trial(
                first + <uint64_t>t, seed_lo, seed_hi,
                g1, g2, egoists, mu, sigma, v_star,
                kind1, thr1, cnt1, kind2, thr2, cnt2, row)
            for col in range(4):
                means[t, col] = row[col]
    return accepted_arr, means_arr
