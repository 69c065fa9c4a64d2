"""Exact discrepancy of point sets in [0, 1) and the Erdos-Turan majorant.

Points are held as exact rationals (``fractions.Fraction``); floats are
converted exactly, so the sweep and any brute-force check agree to the
last bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from .expsums import SparseSequence, _check_lambda, powers_mod


@dataclass(frozen=True)
class UnitPointSet:
    points: tuple[Fraction, ...]
    provenance: dict | None = None

    def __init__(self, points: Iterable[float | Fraction], provenance: dict | None = None):
        pts = tuple(Fraction(x) for x in points)
        if any(not 0 <= x < 1 for x in pts):
            raise ValueError("points must lie in [0, 1)")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "provenance", provenance)

    @property
    def T(self) -> int:
        return len(self.points)

    def __len__(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class DiscrepancyResult:
    D_exact: Fraction
    a: Fraction
    b: Fraction
    closed: bool  # True: excess on [a, b]; False: deficit on the open (a, b)

    @property
    def D(self) -> float:
        return float(self.D_exact)


def sequence_A(p: int, lam: int, t_p: int, seq: SparseSequence) -> UnitPointSet:
    """Fractional parts lambda**s_n / p."""
    _check_lambda(lam, p)
    u = powers_mod(lam, p, t_p, seq.s)
    return UnitPointSet((Fraction(int(x), p) for x in u), {"p": p, "lambda": lam, "T": seq.T})


def discrepancy_exact(pts: UnitPointSet) -> DiscrepancyResult:
    """sup over 0 <= a <= b <= 1 of |A(a, b)/T - (b - a)|, by one sorted sweep.

    The excess side is attained on a closed interval between two points,
    the deficit side as a limit of intervals inside an open gap whose ends
    are points or 0 and 1.
    """
    T = pts.T
    if T == 0:
        raise ValueError("discrepancy of an empty point set is undefined")
    xs = sorted(pts.points)
    invT = Fraction(1, T)

    # excess: max over i <= j of (j - i + 1)/T - (x_j - x_i)
    best_ex = None
    run_val, run_i = None, 0
    for j, x in enumerate(xs):
        cand = x - j * invT
        if run_val is None or cand > run_val:
            run_val, run_i = cand, j
        val = (j + 1) * invT - x + run_val
        if best_ex is None or val > best_ex[0]:
            best_ex = (val, xs[run_i], x)

    # deficit: y_0 = 0 and y_{T+1} = 1 bracket the points;
    # max over i < j of (y_j - y_i) - (j - i - 1)/T
    ys = [Fraction(0)] + xs + [Fraction(1)]
    best_de = (Fraction(0), Fraction(0), Fraction(0))
    run_val, run_i = -ys[0] + invT, 0
    for j in range(1, T + 2):
        val = ys[j] - j * invT + run_val
        if val > best_de[0]:
            best_de = (val, ys[run_i], ys[j])
        cand = -ys[j] + (j + 1) * invT
        if cand > run_val:
            run_val, run_i = cand, j

    if best_ex[0] >= best_de[0]:
        return DiscrepancyResult(best_ex[0], best_ex[1], best_ex[2], True)
    return DiscrepancyResult(best_de[0], best_de[1], best_de[2], False)


def erdos_turan_bound(pts: UnitPointSet, H: int) -> float:
    """1/(H+1) + 3 * sum_{h<=H} |T^-1 sum_n e(h x_n)| / h.

    An explicit, always-valid form of the Erdos-Turan inequality.
    """
    if H < 1:
        raise ValueError(f"H must be >= 1, got {H}")
    T = pts.T
    if T == 0:
        raise ValueError("empty point set")
    # exact integer phases h * num mod den keep the angles accurate
    fracs = [(x.numerator, x.denominator) for x in pts.points]
    tail = 0.0
    for h in range(1, H + 1):
        ang = 2 * np.pi * np.array([(h * n % d) / d for n, d in fracs])
        tail += abs(complex(np.sum(np.exp(1j * ang)))) / T / h
    return 1 / (H + 1) + 3 * tail


@dataclass
class SurveyRow:
    p: int
    D: float
    witness_a: float
    witness_b: float
    et_bound: float
    H: int


@dataclass
class SurveyResult:
    rows: list[SurveyRow]
    T: int
    delta: float
    frac_power: float  # share of primes with D <= T^-delta
    frac_log: float  # share of primes with D <= (log T)^-delta
    delta_hat: list[float | None]  # -log D / log log T per prime


def _survey_one(rec, lam, seq, H):
    p, t = rec
    pts = sequence_A(p, lam, t, seq)
    res = discrepancy_exact(pts)
    return SurveyRow(p, res.D, float(res.a), float(res.b), erdos_turan_bound(pts, H), H)


def discrepancy_survey(db, seq: SparseSequence, delta: float, H: int = 20, workers: int = 1) -> SurveyResult:
    """Exact discrepancy of A(lambda, p) for every p in db, against T^-delta and (log T)^-delta."""
    from functools import partial

    from .parallel import ordered_map

    if delta < 0:
        raise ValueError("delta must be >= 0")
    T = seq.T
    recs = list(zip(db.p.tolist(), db.t.tolist()))
    rows = ordered_map(partial(_survey_one, lam=db.lam, seq=seq, H=H), recs, workers)
    thr_pow = T ** (-delta)
    thr_log = math.log(T) ** (-delta) if T > 1 else math.inf
    n = max(len(rows), 1)
    frac_pow = sum(r.D <= thr_pow for r in rows) / n
    frac_log = sum(r.D <= thr_log for r in rows) / n
    if T > math.e:
        ll = math.log(math.log(T))
        dhat = [-math.log(r.D) / ll for r in rows]
    else:
        dhat = [None for _ in rows]
    return SurveyResult(rows, T, delta, frac_pow, frac_log, dhat)


__all__ = [
    "DiscrepancyResult",
    "SurveyResult",
    "SurveyRow",
    "UnitPointSet",
    "discrepancy_exact",
    "discrepancy_survey",
    "erdos_turan_bound",
    "sequence_A",
]
