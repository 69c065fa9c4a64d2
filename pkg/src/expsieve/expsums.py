"""Exponential sums over sparse exponential sequences modulo primes.

For a prime p, base lambda of order t_p mod p, exponents s_1 < ... < s_T
and weights gamma_n, the central object is

    sigma_p(a) = sum_n gamma_n * e_p(a * lambda**s_n),   e_p(z) = exp(2 pi i z / p).

Every such sum is first compressed to a profile c(u) on F_p (the total
weight sitting on each power u = lambda**(s_n mod t_p)), after which all
p frequencies are one discrete Fourier transform of length p away.  Two
evaluation strategies are provided: a direct gather-and-sum, and a
chirp (Bluestein) transform that reduces the prime-length DFT to
power-of-two FFT convolutions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache, partial
from typing import Iterable

import numpy as np

from .arith import OrderUndefinedError, factorize
from .parallel import ordered_map

DEFAULT_CROSSOVER = 128
# Relative tolerance under which two |sigma_p(a)| values count as a tie.
TIE_RTOL = 1e-10


class OrderVerificationError(ValueError):
    pass


class EmptyDomainError(ValueError):
    pass


@dataclass(frozen=True)
class SparseSequence:
    """Strictly increasing nonnegative exponents s_1 < ... < s_T <= S."""

    s: np.ndarray
    S: int

    def __init__(self, s: Iterable[int], S: int | None = None):
        arr = np.asarray(list(s) if not isinstance(s, np.ndarray) else s, dtype=np.int64)
        if arr.ndim != 1:
            raise ValueError("sequence must be one-dimensional")
        if len(arr) and (arr[0] < 0 or np.any(np.diff(arr) <= 0)):
            raise ValueError("sequence must be strictly increasing and nonnegative")
        bound = int(arr[-1]) if S is None and len(arr) else (0 if S is None else S)
        if len(arr) and arr[-1] > bound:
            raise ValueError(f"largest element {arr[-1]} exceeds S={bound}")
        arr.setflags(write=False)
        object.__setattr__(self, "s", arr)
        object.__setattr__(self, "S", int(bound))

    @property
    def T(self) -> int:
        return len(self.s)

    def __len__(self) -> int:
        return len(self.s)


@dataclass(frozen=True)
class WeightSequence:
    """Complex weights with |gamma_n| <= 1."""

    gamma: np.ndarray

    def __init__(self, gamma: Iterable[complex]):
        arr = np.asarray(list(gamma) if not isinstance(gamma, np.ndarray) else gamma, dtype=np.complex128)
        if np.any(np.abs(arr) > 1 + 1e-12):
            raise ValueError("weights must satisfy |gamma_n| <= 1")
        arr.setflags(write=False)
        object.__setattr__(self, "gamma", arr)

    @classmethod
    def ones(cls, T: int) -> "WeightSequence":
        return cls(np.ones(T, dtype=np.complex128))

    def __len__(self) -> int:
        return len(self.gamma)


def _weights(seq: SparseSequence, gamma: WeightSequence | None) -> np.ndarray:
    if gamma is None:
        return np.ones(seq.T, dtype=np.complex128)
    if len(gamma) != seq.T:
        raise ValueError(f"{len(gamma)} weights for a sequence of length {seq.T}")
    return gamma.gamma


@dataclass(frozen=True)
class ResidueProfile:
    """Weights w(x) = sum of gamma_n over s_n = x (mod r)."""

    r: int
    weights: np.ndarray

    @property
    def support(self) -> np.ndarray:
        return np.flatnonzero(self.weights)


def residue_profile(seq: SparseSequence, gamma: WeightSequence | None, r: int) -> ResidueProfile:
    if r < 1:
        raise ValueError(f"modulus must be >= 1, got {r}")
    w = _weights(seq, gamma)
    res = seq.s % r
    out = np.zeros(r, dtype=np.complex128)
    # np.add.at accumulates in index order, so the result is order-stable
    np.add.at(out, res, w)
    return ResidueProfile(r, out)


def pair_count_V(seq: SparseSequence, r: int) -> int:
    """#{(n1, n2) : s_n1 = s_n2 (mod r)} = sum over classes of N_x**2."""
    if r < 1:
        raise ValueError(f"modulus must be >= 1, got {r}")
    _, counts = np.unique(seq.s % r, return_counts=True)
    return int(np.sum(counts.astype(np.int64) ** 2))


@lru_cache(maxsize=64)
def roots_of_unity(n: int) -> np.ndarray:
    """e_n(j) for j = 0..n-1, each from an exactly reduced exponent."""
    out = np.exp(2j * np.pi * np.arange(n) / n)
    out.setflags(write=False)
    return out


def _check_lambda(lam: int, p: int) -> None:
    if lam % p == 0:
        raise OrderUndefinedError(f"{p} divides {lam}: order undefined")


def powers_mod(lam: int, p: int, t: int, exps: np.ndarray) -> np.ndarray:
    """lam**(e mod t) mod p for each e, never raising to the full exponent."""
    red = exps % t
    if t <= 4 * len(exps) + 64:
        table = np.empty(t, dtype=np.int64)
        x = 1
        lam_p = lam % p
        for i in range(t):
            table[i] = x
            x = x * lam_p % p
        return table[red]
    return np.array([pow(lam, int(e), p) for e in red], dtype=np.int64)


def power_profile(p: int, t: int, seq: SparseSequence, gamma: WeightSequence | None, lam: int) -> np.ndarray:
    """Dense profile c(u), u in [0, p): weight of the powers lam**s_n = u mod p."""
    _check_lambda(lam, p)
    w = _weights(seq, gamma)
    u = powers_mod(lam, p, t, seq.s)
    c = np.zeros(p, dtype=np.complex128)
    np.add.at(c, u, w)
    return c


def sigma_eval(p: int, t: int, seq: SparseSequence, gamma: WeightSequence | None, lam: int, a: int) -> complex:
    """sigma_p(a) summed term by term in index order."""
    _check_lambda(lam, p)
    w = _weights(seq, gamma)
    if a % p == 0:
        return complex(np.sum(w))
    u = powers_mod(lam, p, t, seq.s)
    phase = (a % p) * u % p
    return complex(np.sum(w * roots_of_unity(p)[phase]))


@lru_cache(maxsize=32)
def _chirp_plan(n: int, sign: int) -> tuple[np.ndarray, np.ndarray, int]:
    # e(sign * a u / n) = W(a) W(u) conj(W(a - u)) with W(k) = exp(sign * pi i k^2 / n)
    L = 1 << (2 * n - 2).bit_length()
    k = np.arange(n, dtype=np.int64)
    k2 = (k * k) % (2 * n)
    W = np.exp(sign * 1j * np.pi * k2 / n)
    h = np.zeros(L, dtype=np.complex128)
    h[:n] = np.conj(W)
    h[L - n + 1 :] = np.conj(W[1:][::-1])
    H = np.fft.fft(h)
    W.setflags(write=False)
    H.setflags(write=False)
    return W, H, L


def chirp_dft(x: np.ndarray, sign: int = 1) -> np.ndarray:
    """y[a] = sum_u x[u] exp(sign * 2 pi i a u / n) for any length n, via Bluestein."""
    x = np.asarray(x, dtype=np.complex128)
    n = len(x)
    if n == 0:
        return x.copy()
    if n == 1:
        return x.copy()
    W, H, L = _chirp_plan(n, 1 if sign >= 0 else -1)
    xp = np.zeros(L, dtype=np.complex128)
    xp[:n] = x * W
    y = np.fft.ifft(np.fft.fft(xp) * H)[:n]
    return W * y


def direct_dft(c: np.ndarray, freqs: np.ndarray | None = None) -> np.ndarray:
    """sum_u c[u] e_p(a u) for each a in freqs by gathering roots of unity.

    Cost O(len(freqs) * #support(c)).
    """
    p = len(c)
    if freqs is None:
        freqs = np.arange(p, dtype=np.int64)
    u = np.flatnonzero(c)
    cu = c[u]
    roots = roots_of_unity(p)
    out = np.zeros(len(freqs), dtype=np.complex128)
    if len(u) == 0:
        return out
    block = max(1, (1 << 19) // len(u))
    for lo in range(0, len(freqs), block):
        a = freqs[lo : lo + block]
        out[lo : lo + block] = roots[(a[:, None] * u[None, :]) % p] @ cu
    return out


@dataclass(frozen=True)
class SumRecord:
    p: int
    a_p: int
    m_p: float


def argmax_smallest(mags: np.ndarray, rtol: float = TIE_RTOL) -> int:
    """Index of the maximum, taking the smallest index among near-ties."""
    top = float(np.max(mags))
    return int(np.flatnonzero(mags >= top * (1 - rtol))[0])


def sums_all_frequencies(c: np.ndarray, strategy: str = "auto", crossover: int = DEFAULT_CROSSOVER) -> np.ndarray:
    """sigma(a) = sum_u c[u] e_p(a u) for a = 0..p-1."""
    p = len(c)
    if strategy == "auto":
        strategy = "direct" if p < crossover else "chirp"
    if strategy == "direct":
        return direct_dft(c)
    if strategy == "chirp":
        return chirp_dft(c, 1)
    raise ValueError(f"unknown strategy {strategy!r}")


def max_over_units(c: np.ndarray, strategy: str = "auto", crossover: int = DEFAULT_CROSSOVER) -> tuple[int, float]:
    """(a, |sigma(a)|) maximizing over a in [1, p-1], smallest a on ties."""
    support = np.flatnonzero(c)
    if len(support) <= 1:
        # one occupied residue: every |sigma(a)| equals |c(u)| exactly
        return 1, float(np.abs(c[support[0]])) if len(support) else 0.0
    sig = sums_all_frequencies(c, strategy, crossover)
    mags = np.abs(sig[1:])
    i = argmax_smallest(mags)
    # rounding must not push the value past the triangle inequality
    return i + 1, min(float(mags[i]), float(np.sum(np.abs(c))))


def sigma_max(
    p: int,
    t: int,
    seq: SparseSequence,
    gamma: WeightSequence | None,
    lam: int,
    strategy: str = "auto",
    crossover: int = DEFAULT_CROSSOVER,
) -> SumRecord:
    """The maximizing frequency a_p in [1, p-1] and m_p = |sigma_p(a_p)|."""
    c = power_profile(p, t, seq, gamma, lam)
    if p == 2:
        return SumRecord(2, 1, float(abs(c[0] - c[1])))
    a, m = max_over_units(c, strategy, crossover)
    return SumRecord(p, a, m)


def verify_order(g: int, p: int, t: int) -> None:
    if t < 1 or (p - 1) % t or pow(g, t, p) != 1:
        raise OrderVerificationError(f"{g} does not have order {t} mod {p}")
    for q in factorize(t).primes:
        if pow(g, t // q, p) == 1:
            raise OrderVerificationError(f"{g} has order dividing {t // q} mod {p}, not {t}")


def subgroup_profile(p: int, g: int, t: int) -> np.ndarray:
    c = np.zeros(p, dtype=np.complex128)
    x = 1
    for _ in range(t):
        x = x * g % p
        c[x] += 1.0
    return c


def subgroup_sum_argmax(p: int, g: int, t: int, strategy: str = "auto", crossover: int = DEFAULT_CROSSOVER) -> tuple[int, float]:
    """(a, max) of |sum_{z=1}^{t} e_p(a g^z)| over a in [1, p-1]."""
    verify_order(g, p, t)
    if p == 2:
        return 1, 1.0
    return max_over_units(subgroup_profile(p, g, t), strategy, crossover)


def subgroup_sum_max(p: int, g: int, t: int, strategy: str = "auto", crossover: int = DEFAULT_CROSSOVER) -> float:
    """Largest Gauss sum over the order-t subgroup generated by g mod p."""
    return subgroup_sum_argmax(p, g, t, strategy, crossover)[1]


# -- admissible pairs --------------------------------------------------------------


@dataclass(frozen=True)
class AdmissiblePair:
    alpha: float
    beta: float
    label: str

    def __post_init__(self):
        if not (0 <= self.alpha <= 1 and 0 <= self.beta <= 1):
            raise ValueError(f"admissible pair must lie in [0,1]^2, got ({self.alpha}, {self.beta})")


KOROBOV = AdmissiblePair(0.0, 0.5, "korobov")
HEATH_BROWN_KONYAGIN_1 = AdmissiblePair(5 / 8, 1 / 8, "hbk1")
HEATH_BROWN_KONYAGIN_2 = AdmissiblePair(3 / 8, 1 / 4, "hbk2")
SHKREDOV = AdmissiblePair(1 / 2, 1 / 6, "shkredov")


def bgk_pair(theta: float, zeta: float) -> AdmissiblePair:
    """The (1 - theta, zeta * theta) family; theta(zeta) must be supplied."""
    if not (0 < theta <= 1 and zeta > 0):
        raise ValueError("bgk pair needs 0 < theta <= 1 and zeta > 0")
    return AdmissiblePair(1 - theta, zeta * theta, f"bgk(theta={theta:g},zeta={zeta:g})")


CATALOG = {pair.label: pair for pair in (KOROBOV, HEATH_BROWN_KONYAGIN_1, HEATH_BROWN_KONYAGIN_2, SHKREDOV)}


def get_pair(label: str, theta: float | None = None, zeta: float | None = None) -> AdmissiblePair:
    if label == "bgk":
        if theta is None or zeta is None:
            raise ValueError("the bgk pair needs explicit theta and zeta")
        return bgk_pair(theta, zeta)
    try:
        return CATALOG[label]
    except KeyError:
        raise ValueError(f"unknown admissible pair {label!r}; choose from {sorted(CATALOG) + ['bgk']}") from None


@dataclass(frozen=True)
class ScanRow:
    p: int
    t_p: int
    a_p: int
    m_p: float
    bound: float
    ratio: float
    flag: bool


def _scan_one(rec: tuple[int, int], lam: int, pair: AdmissiblePair, C: float, crossover: int) -> ScanRow:
    p, t = rec
    a, m = subgroup_sum_argmax(p, lam % p, t, crossover=crossover)
    bound = t**pair.alpha * p**pair.beta
    ratio = m / bound
    return ScanRow(p, t, a, m, bound, ratio, ratio > C)


def admissible_scan(db, pair: AdmissiblePair, C: float, workers: int = 1, crossover: int = DEFAULT_CROSSOVER) -> list[ScanRow]:
    """Compare the subgroup sums of lambda mod p with t_p**alpha * p**beta."""
    recs = list(zip(db.p.tolist(), db.t.tolist()))
    return ordered_map(partial(_scan_one, lam=db.lam, pair=pair, C=C, crossover=crossover), recs, workers)


# -- exceptional primes for short subgroup sums ------------------------------------


@dataclass(frozen=True)
class ExceptionalReport:
    t: int
    k: int
    U: float
    C: float
    ell_max: int
    total: int
    exceptional: int
    allowance: float  # U / log U
    exceptions: tuple[int, ...]


def exceptional_threshold(t: int, ell: int, k: int, U: float, C: float) -> float:
    return C * t * ell ** (1 / (2 * k * k)) * (t ** (-1 / k) + U ** (-1 / (k * k)))


def exceptional_count(t: int, k: int, U: float, C: float, ell_max: int) -> ExceptionalReport:
    """Count primes ell = 1 mod t, ell <= ell_max, whose order-t subgroup sum
    exceeds the short-sum threshold.

    The order-t element is pinned to h**((ell-1)/t), h the smallest
    primitive root of ell.
    """
    from .arith import element_of_order
    from .primes import sieve_primes

    if t < 2:
        raise ValueError("t must be >= 2")
    if k < 2:
        raise ValueError("k must be >= 2")
    if U <= 1:
        raise ValueError("U must be > 1")
    primes = sieve_primes(ell_max) if ell_max >= 2 else np.zeros(0, dtype=np.int64)
    ells = [int(q) for q in primes if q % t == 1]
    if not ells:
        raise EmptyDomainError(f"no primes = 1 mod {t} below {ell_max}")
    bad = []
    for ell in ells:
        g = element_of_order(ell, t)
        if subgroup_sum_max(ell, g, t) > exceptional_threshold(t, ell, k, U, C):
            bad.append(ell)
    return ExceptionalReport(t, k, U, C, ell_max, len(ells), len(bad), U / math.log(U), tuple(bad))
