"""Large-sieve statistics V and W, the classical large-sieve sum, and
closed-form evaluators for the two upper bounds these statistics are
compared against.

Unspecified constants (the X^{o(1)} factors and implied constants) are
collapsed into a single multiplicative knob ``C``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from functools import partial

import numpy as np

from .expsums import (
    DEFAULT_CROSSOVER,
    AdmissiblePair,
    SparseSequence,
    SumRecord,
    WeightSequence,
    _weights,
    residue_profile,
    roots_of_unity,
    sigma_max,
)
from .parallel import ordered_map
from .primes import OrderDatabase, delta_threshold, filter_E_Delta


@dataclass
class SieveStatistic:
    lam: int
    X: int
    Delta: float
    T: int
    S: int
    value_V: float
    value_W: float
    trivial_bound: float
    per_prime: list[SumRecord]
    tau: list[int]

    def check(self) -> bool:
        return 0 <= self.value_W <= self.value_V <= self.trivial_bound

    @property
    def normalized(self) -> float:
        return self.value_V / self.trivial_bound if self.trivial_bound else 0.0


def _sigma_one(rec: tuple[int, int], seq, gamma, lam, strategy, crossover) -> SumRecord:
    p, t = rec
    return sigma_max(p, t, seq, gamma, lam, strategy, crossover)


def compute_V(
    db: OrderDatabase,
    seq: SparseSequence,
    gamma: WeightSequence | None,
    Delta: float = 1,
    workers: int = 1,
    strategy: str = "auto",
    crossover: int = DEFAULT_CROSSOVER,
) -> SieveStatistic:
    """V = sum of m_p**2 and W = sum of m_p**2 / tau(p-1) over p in E_Delta(X)."""
    w = _weights(seq, gamma)
    if np.any(np.abs(w) > 1 + 1e-12):
        raise ValueError("weights must satisfy |gamma_n| <= 1")
    E = filter_E_Delta(db, Delta)
    recs = list(zip(E.p.tolist(), E.t.tolist()))
    fn = partial(_sigma_one, seq=seq, gamma=gamma, lam=db.lam, strategy=strategy, crossover=crossover)
    per_prime = ordered_map(fn, recs, workers)
    taus = E.tau.tolist()
    V = 0.0
    W = 0.0
    for rec, tp in zip(per_prime, taus):
        sq = rec.m_p * rec.m_p
        V += sq
        W += sq / tp
    return SieveStatistic(
        lam=db.lam,
        X=db.X,
        Delta=Delta,
        T=seq.T,
        S=seq.S,
        value_V=V,
        value_W=W,
        trivial_bound=float(len(E) * seq.T**2),
        per_prime=per_prime,
        tau=taus,
    )


def large_sieve_lhs(seq: SparseSequence, gamma: WeightSequence | None, K: int) -> float:
    """sum_{k<=K} sum_{c mod k, gcd(c,k)=1} |sum_n gamma_n e_k(c s_n)|^2."""
    if K < 1:
        raise ValueError(f"K must be >= 1, got {K}")
    total = 0.0
    for k in range(1, K + 1):
        b = residue_profile(seq, gamma, k).weights
        cs = np.array([c for c in range(1, k + 1) if math.gcd(c, k) == 1], dtype=np.int64)
        x = np.arange(k, dtype=np.int64)
        vals = roots_of_unity(k)[(cs[:, None] * x[None, :]) % k] @ b
        total += float(np.sum(np.abs(vals) ** 2))
    return total


def large_sieve_rhs(seq: SparseSequence, gamma: WeightSequence | None, K: int) -> float:
    """(K^2 + S) * sum |gamma_n|^2, the explicit large-sieve majorant."""
    w = _weights(seq, gamma)
    return (K * K + seq.S) * float(np.sum(np.abs(w) ** 2))


# -- bound evaluators ----------------------------------------------------------------


@dataclass
class BoundReport:
    theorem: str
    params: dict
    rhs_value: float
    validity: list[tuple[str, bool]]
    trivial_bound: float = 0.0
    notes: list[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return all(ok for _, ok in self.validity)

    @property
    def nontrivial(self) -> bool:
        return self.rhs_value < self.trivial_bound

    def as_dict(self) -> dict:
        d = asdict(self)
        d["validity"] = [{"id": k, "satisfied": ok} for k, ok in self.validity]
        d["valid"] = self.valid
        d["nontrivial"] = self.nontrivial
        return d


def garaev_threshold(X: float, S: float) -> bool:
    """True when S <= X^(15/14), the range of the earlier large-sieve bound."""
    return S <= X ** (15 / 14)


def thm1_bound(
    X: float,
    T: float,
    S: float,
    Delta: float,
    pair: AdmissiblePair,
    eta: float,
    delta: float,
    k: int,
    C: float = 1.0,
) -> BoundReport:
    """(X + T X^{-delta/(k^2+2)} + (S^{2-2a} T X^{-2 eta})^{1/(3-2a)}) * T * X * C.

    Validity predicates are reported individually, never raised.
    """
    a, b = pair.alpha, pair.beta
    if not 0 <= a < 1:
        raise ValueError(f"alpha must lie in [0, 1), got {a}")
    e = 1 / (3 - 2 * a)
    rhs = (X + T * X ** (-delta / (k * k + 2)) + (S ** (2 - 2 * a) * T * X ** (-2 * eta)) ** e) * T * X * C
    validity = [
        ("eta_delta_positive", eta > 0 and delta > 0),
        ("abconditions", (b + eta) / (1 - a) <= 0.5 - delta),
        ("TSX", T ** (1 + e) >= S * X ** (2 * eta)),
        ("kassumption", X <= ((T / (S * X ** (2 * eta))) ** e * Delta) ** k),
        ("Delta_gt_1", Delta > 1),
        ("k_ge_1", k >= 1),
    ]
    simple = X <= (T ** (-(e**2)) * Delta) ** k
    return BoundReport(
        theorem="thm1",
        params={"X": X, "T": T, "S": S, "Delta": Delta, "alpha": a, "beta": b, "pair": pair.label,
                "eta": eta, "delta": delta, "k": k, "C": C},
        rhs_value=rhs,
        validity=validity,
        trivial_bound=X * T * T,
        notes=[f"kassumption_simple={simple}", f"garaev_range={garaev_threshold(X, S)}"],
    )


def thm2_bound(X: float, T: float, S: float, rho: float, C: float = 1.0, eps: float = 0.0) -> BoundReport:
    """(X^{1-rho} T^2 + X^{3/2} T^{3/2} + X^{3/4} T^{7/8} S^{1/4}) * C."""
    if not 0 < rho < 0.5:
        raise ValueError(f"rho must lie in (0, 1/2), got {rho}")
    rhs = (X ** (1 - rho) * T**2 + X**1.5 * T**1.5 + X**0.75 * T**0.875 * S**0.25) * C
    return BoundReport(
        theorem="thm2",
        params={"X": X, "T": T, "S": S, "rho": rho, "C": C, "eps": eps},
        rhs_value=rhs,
        validity=[
            ("T_gt_X1eps", T > X ** (1 + eps)),
            ("S_lt_TX1eps", S < T * X ** (1 + eps)),
        ],
        trivial_bound=X * T * T,
    )


# -- decay experiment ------------------------------------------------------------------


@dataclass
class DecayRow:
    X: int
    T: int
    S: int
    Delta: int
    n_primes: int
    value_V: float
    value_W: float
    trivial_bound: float
    ratio: float


def decay_experiment(
    Xs=(500, 1000, 2000, 4000),
    lam: int = 2,
    seed: int = 2017,
    t_exp: float = 1.05,
    s_exp: float = 1.5,
    workers: int = 1,
    db: OrderDatabase | None = None,
) -> list[DecayRow]:
    """V / (|E_Delta(X)| T^2) with T = ceil(X^t_exp), S = ceil(T^s_exp), Delta = ceil(sqrt X),
    unit weights, and a random T-subset of [0, S] seeded by (seed, X)."""
    from .generators import random_subset
    from .primes import build_order_db

    if db is None:
        db = build_order_db(lam, max(Xs), workers=workers)
    rows = []
    for X in Xs:
        T = math.ceil(X**t_exp)
        S = math.ceil(T**s_exp)
        Delta = math.isqrt(X - 1) + 1  # ceil(sqrt X)
        seq = random_subset(T, S, seed * 1_000_003 + X)
        sub = db.subset(db.p <= X)
        sub.X = X
        stat = compute_V(sub, seq, None, Delta, workers=workers)
        rows.append(DecayRow(X, T, S, Delta, len(stat.per_prime), stat.value_V, stat.value_W,
                             stat.trivial_bound, stat.normalized))
    return rows


__all__ = [
    "BoundReport",
    "DecayRow",
    "SieveStatistic",
    "compute_V",
    "decay_experiment",
    "delta_threshold",
    "garaev_threshold",
    "large_sieve_lhs",
    "large_sieve_rhs",
    "thm1_bound",
    "thm2_bound",
]
