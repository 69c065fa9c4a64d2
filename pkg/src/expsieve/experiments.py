"""Seeded workloads shared by the acceptance suite and the scripts.

Each function returns plain rows so the caller can render them with
``report.render_csv`` and compare runs byte for byte.
"""

from __future__ import annotations

from functools import partial

import numpy as np

from .arith import mult_order
from .expsums import (
    SparseSequence,
    WeightSequence,
    argmax_smallest,
    max_over_units,
    power_profile,
    powers_mod,
    roots_of_unity,
)
from .parallel import ordered_map
from .primes import sieve_primes

AGREEMENT_COLUMNS = ["p", "lambda", "case", "a_direct", "m_direct", "a_chirp", "m_chirp"]


def seeded_cases(n: int = 20, seed: int = 1, T_max: int = 256, S_max: int = 10**6):
    """n (sequence, weights) pairs: random T <= T_max, s in [0, S], complex |gamma| <= 1."""
    rng = np.random.default_rng(seed)
    cases = []
    for _ in range(n):
        T = int(rng.integers(1, T_max + 1))
        S = int(rng.integers(T - 1, S_max + 1))
        s = np.sort(rng.choice(S + 1, size=T, replace=False))
        g = rng.random(T) * np.exp(2j * np.pi * rng.random(T))
        cases.append((SparseSequence(s, S), WeightSequence(g)))
    return cases


def direct_max(p: int, t: int, seq: SparseSequence, gamma: WeightSequence, lam: int) -> tuple[int, float]:
    """Term-by-term O(p T) evaluation of every sigma_p(a), no residue compression."""
    u = powers_mod(lam, p, t, seq.s)
    a = np.arange(1, p, dtype=np.int64)
    mags = np.abs(roots_of_unity(p)[(a[:, None] * u[None, :]) % p] @ gamma.gamma)
    i = argmax_smallest(mags)
    return i + 1, float(mags[i])


def _agree_one(job, cases):
    p, lam = job
    t = mult_order(lam, p).t_p
    rows = []
    for i, (seq, g) in enumerate(cases):
        a_d, m_d = direct_max(p, t, seq, g, lam)
        a_c, m_c = max_over_units(power_profile(p, t, seq, g, lam), "chirp")
        rows.append((p, lam, i, a_d, m_d, a_c, m_c))
    return rows


def strategy_agreement(p_max: int = 1999, lams=(2, 3, 10), n_cases: int = 20, seed: int = 1, workers: int = 1):
    """sigma_max by term-by-term evaluation and by the chirp transform, for every odd prime p <= p_max."""
    cases = seeded_cases(n_cases, seed)
    jobs = [(int(p), lam) for p in sieve_primes(p_max) if p > 2 for lam in lams if lam % p]
    out = ordered_map(partial(_agree_one, cases=cases), jobs, workers)
    return [row for rows in out for row in rows]
