"""Integers with all but a few binary digits prescribed.

A pattern fixes an S-bit base integer ``a`` and a set of free bit
positions (0-indexed from the least significant bit); its members are
``a + sum d_n 2**s_n`` with d_n in {0, 1}.  The number of members
divisible by an odd prime p is evaluated through the character-sum
product formula and checked against enumeration.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .arith import factorize, mult_order
from .expsums import SparseSequence, roots_of_unity, sigma_max
from .primes import ResourceCapError, sieve_primes

ENUM_CAP = 24
CHECK_CAP = 20
ROUNDING_TOL = 1e-4


class NumericalPrecisionError(ArithmeticError):
    pass


@dataclass(frozen=True)
class DigitPattern:
    S: int
    a: int
    free: tuple[int, ...]

    def __post_init__(self):
        free = tuple(int(j) for j in self.free)
        object.__setattr__(self, "free", free)
        if self.S < 1:
            raise ValueError("S must be >= 1")
        if any(j < 0 or j >= self.S for j in free) or any(x >= y for x, y in zip(free, free[1:])):
            raise ValueError(f"free positions must be increasing within [0, {self.S})")
        if not 0 <= self.a < 2**self.S:
            raise ValueError(f"a must be an S-bit integer (S={self.S})")
        if any(self.a >> j & 1 for j in free):
            raise ValueError("a must have zero bits at every free position; use DigitPattern.normalized")

    @classmethod
    def normalized(cls, S: int, a: int, free) -> "DigitPattern":
        """Clear the bits of a at the free positions (the member set is unchanged)."""
        free = tuple(sorted(set(int(j) for j in free)))
        for j in free:
            a &= ~(1 << j)
        return cls(S, a, free)

    @classmethod
    def from_json(cls, obj: dict | str) -> "DigitPattern":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls.normalized(int(obj["S"]), int(obj["a_hex"], 16), obj["free"])

    def to_json(self) -> dict:
        return {"S": self.S, "a_hex": format(self.a, "x"), "free": list(self.free)}

    @property
    def T(self) -> int:
        return len(self.free)

    @property
    def sequence(self) -> SparseSequence:
        return SparseSequence(self.free, self.S)

    def with_free(self, j: int) -> "DigitPattern":
        return DigitPattern.normalized(self.S, self.a, self.free + (j,))


def enumerate_members(pat: DigitPattern, limit: int | None = None) -> list[int]:
    """Members in Gray-code order (consecutive members differ in one free bit)."""
    if pat.T > ENUM_CAP:
        raise ResourceCapError("T", pat.T, ENUM_CAP)
    n = 1 << pat.T
    if limit is not None:
        n = min(n, limit)
    out = []
    z = pat.a
    for k in range(n):
        if k:
            z ^= 1 << pat.free[(k & -k).bit_length() - 1]
        out.append(z)
    return out


def member_residue_counts(pat: DigitPattern, p: int) -> np.ndarray:
    """Histogram of members mod p (length p), by doubling over free bits."""
    if pat.T > ENUM_CAP:
        raise ResourceCapError("T", pat.T, ENUM_CAP)
    res = np.array([pat.a % p], dtype=np.int64)
    for j in pat.free:
        res = np.concatenate([res, (res + pow(2, j, p)) % p])
    return np.bincount(res, minlength=p)


@dataclass(frozen=True)
class DivisibilityCount:
    p: int
    N_p: int
    main_term: float
    deviation: float
    Q_p: float  # max over b != 0 of |prod (1 + e_p(b 2^s_n))|


def _products(pat: DigitPattern, p: int) -> np.ndarray:
    """prod_n (1 + e_p(b 2^s_n)) for b = 1..p-1."""
    roots = roots_of_unity(p)
    t = mult_order(2, p).t_p
    b = np.arange(1, p, dtype=np.int64)
    prod = np.ones(p - 1, dtype=np.complex128)
    for s in pat.free:
        r = pow(2, s % t, p)
        prod *= 1 + roots[(b * r) % p]
    return prod


def count_divisible(pat: DigitPattern, p: int, check: bool = True) -> DivisibilityCount:
    """Number of members divisible by the odd prime p.

    N_p = 2^T/p + (1/p) sum_{b=1}^{p-1} e_p(a b) prod_n (1 + e_p(b 2^s_n)),
    rounded to the nearest integer.  With ``check`` and T <= 20 the count
    is confirmed by enumerating residues.
    """
    if p < 3 or p % 2 == 0:
        raise ValueError(f"p must be an odd prime, got {p}")
    prod = _products(pat, p)
    b = np.arange(1, p, dtype=np.int64)
    main = 2.0**pat.T / p
    total = main + complex(np.sum(roots_of_unity(p)[(pat.a % p) * b % p] * prod)) / p
    N = round(total.real)
    resid = abs(total - N)
    if resid > ROUNDING_TOL:
        raise NumericalPrecisionError(f"p={p}, T={pat.T}: formula value {total} is {resid:.3g} from an integer")
    if check and pat.T <= CHECK_CAP:
        exact = int(member_residue_counts(pat, p)[0])
        if exact != N:
            raise NumericalPrecisionError(f"p={p}: formula gives {N}, enumeration {exact}")
    Q = float(np.max(np.abs(prod))) if len(prod) else 0.0
    return DivisibilityCount(p, N, main, N - main, Q)


def M_p(pat: DigitPattern, p: int, t_p: int | None = None) -> float:
    """max over b in [1, p-1] of |sum_n e_p(b 2^s_n)|."""
    if p % 2 == 0:
        raise ValueError("p must be odd")
    if t_p is None:
        t_p = mult_order(2, p).t_p
    return sigma_max(p, t_p, pat.sequence, None, 2).m_p


def Q_p_bound(M: float, T: int, C: float = 1.0) -> float:
    """exp(C * M * log(T/M + 1)); the M -> 0 limit is 1."""
    if M < 0 or M > T + 1e-9:
        raise ValueError(f"need 0 <= M <= T, got M={M}, T={T}")
    if M == 0:
        return 1.0
    return math.exp(C * M * math.log(T / M + 1))


@dataclass
class OmegaReport:
    mode: str
    omega: int  # exact: omega of the product; survey: primes <= X hitting a member
    primes: list[int]
    n_candidates: int = 0  # survey: number of primes <= X

    @property
    def fraction(self) -> float:
        return self.omega / self.n_candidates if self.n_candidates else 0.0


def _iter_nonzero(pat: DigitPattern) -> Iterator[int]:
    for z in enumerate_members(pat):
        if z:
            yield z


def divides_some_member(pat: DigitPattern, p: int) -> bool:
    """Whether p divides a nonzero member (the member 0, if present, is ignored)."""
    zero = 1 if pat.a == 0 else 0
    if p == 2:
        evens = (1 << (pat.T - 1)) if 0 in pat.free else ((1 << pat.T) if pat.a % 2 == 0 else 0)
        return evens - zero > 0
    return count_divisible(pat, p).N_p - zero > 0


def omega_product(pat: DigitPattern, X: int | None = None, mode: str = "exact") -> OmegaReport:
    """Distinct primes dividing the product of the nonzero members.

    ``exact`` factors every member; ``survey`` counts primes p <= X that
    divide at least one member, a certified lower bound for the exact value.
    """
    if mode == "exact":
        if pat.T > ENUM_CAP:
            raise ResourceCapError("T", pat.T, ENUM_CAP)
        primes: set[int] = set()
        for z in _iter_nonzero(pat):
            primes.update(factorize(z).primes)
        return OmegaReport("exact", len(primes), sorted(primes))
    if mode == "survey":
        if X is None:
            raise ValueError("survey mode needs a prime limit X")
        cands = [int(q) for q in sieve_primes(X)]
        hit = [q for q in cands if divides_some_member(pat, q)]
        return OmegaReport("survey", len(hit), hit, len(cands))
    raise ValueError(f"unknown mode {mode!r}")
