"""Modular arithmetic, factorization and multiplicative orders.

Everything here works on plain Python ints below 2**63.  Factorization
uses a smallest-prime-factor table for integers the table covers, and
trial division plus Brent's variant of Pollard rho above it, with a
deterministic Miller-Rabin test on every cofactor.
"""

from __future__ import annotations

import math
import random
import threading
from dataclasses import dataclass
from typing import Iterable

import numpy as np

MAX_INT = 2**63
DEFAULT_SIEVE_BOUND = 10**8

# Deterministic for n < 3.3e24, which covers the whole 64-bit range.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


class OrderUndefinedError(ValueError):
    """Raised when the order of lambda modulo p does not exist (p | lambda)."""


def pow_mod(base: int, exponent: int, m: int) -> int:
    """``base ** exponent mod m`` by square-and-multiply, result in ``[0, m)``."""
    if m < 2:
        raise ValueError(f"modulus must be >= 2, got {m}")
    if exponent < 0:
        raise ValueError("exponent must be nonnegative")
    result = 1
    b = base % m
    e = exponent
    while e:
        if e & 1:
            result = result * b % m
        b = b * b % m
        e >>= 1
    return result


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for 0 <= n < 2**64."""
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Modulus:
    m: int
    is_prime: bool = False

    def __post_init__(self):
        if self.m < 2:
            raise ValueError(f"modulus must be >= 2, got {self.m}")
        if self.is_prime and not is_prime(self.m):
            raise ValueError(f"{self.m} flagged prime but is composite")

    @classmethod
    def of(cls, m: int) -> "Modulus":
        return cls(m, is_prime(m))


@dataclass(frozen=True)
class Factorization:
    """Prime factorization of ``source`` as increasing (prime, exponent) pairs."""

    source: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prev = 0
        prod = 1
        for q, e in self.factors:
            if q <= prev or e < 1:
                raise ValueError(f"malformed factorization {self.factors}")
            prev = q
            prod *= q**e
        if prod != self.source:
            raise ValueError(f"factors multiply to {prod}, not {self.source}")

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(q for q, _ in self.factors)

    def value(self) -> int:
        out = 1
        for q, e in self.factors:
            out *= q**e
        return out

    def divisors(self) -> list[int]:
        divs = [1]
        for q, e in self.factors:
            divs = [d * q**i for d in divs for i in range(e + 1)]
        return sorted(divs)


@dataclass(frozen=True)
class OrderRecord:
    lam: int
    p: int
    t_p: int

    def check(self) -> bool:
        """Verify t_p | p-1, lam^t_p = 1 and lam^(t_p/q) != 1 for primes q | t_p."""
        if (self.p - 1) % self.t_p:
            return False
        if pow(self.lam, self.t_p, self.p) != 1 % self.p:
            return False
        return all(pow(self.lam, self.t_p // q, self.p) != 1 for q in factorize(self.t_p).primes)


# -- smallest prime factor table ------------------------------------------------

_spf: np.ndarray = np.zeros(0, dtype=np.int32)
_spf_lock = threading.Lock()


def build_spf(limit: int) -> np.ndarray:
    """Smallest-prime-factor table for 0..limit (entries 0 and 1 are 0)."""
    spf = np.zeros(limit + 1, dtype=np.int32)
    if limit >= 2:
        spf[2::2] = 2
        for q in range(3, math.isqrt(limit) + 1, 2):
            if spf[q] == 0:
                seg = spf[q * q :: 2 * q]
                seg[seg == 0] = q
        odd = np.arange(3, limit + 1, 2)
        unset = odd[spf[3::2] == 0]
        spf[unset] = unset
    return spf


def ensure_spf(limit: int, bound: int = DEFAULT_SIEVE_BOUND) -> np.ndarray:
    """Grow the shared SPF table to cover ``min(limit, bound)``; returns it."""
    global _spf
    limit = min(limit, bound)
    if len(_spf) <= limit:
        with _spf_lock:
            if len(_spf) <= limit:
                _spf = build_spf(limit)
    return _spf


def _factor_spf(n: int, spf: np.ndarray) -> dict[int, int]:
    out: dict[int, int] = {}
    while n > 1:
        q = int(spf[n])
        e = 0
        while n % q == 0:
            n //= q
            e += 1
        out[q] = e
    return out


def _brent_rho(n: int, rng: random.Random) -> int:
    """A nontrivial factor of the odd composite n."""
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _factor_large(n: int, out: dict[int, int], rng: random.Random) -> None:
    for q in _SMALL_PRIMES:
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
    # trial division to 2**10 keeps rho off tiny factors
    q = 53
    while q < 1024 and q * q <= n:
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
        q += 2
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        r = math.isqrt(m)
        if r * r == m:
            stack += [r, r]
            continue
        d = _brent_rho(m, rng)
        stack += [d, m // d]


def factorize(n: int, seed: int = 0x5EED) -> Factorization:
    """Complete factorization of 1 <= n < 2**63.

    The rho stage is randomized but seeded, so the call is reproducible;
    the result does not depend on the seed anyway.
    """
    if not 1 <= n < MAX_INT:
        raise ValueError(f"factorize needs 1 <= n < 2**63, got {n}")
    if n < len(_spf):
        fac = _factor_spf(n, _spf)
    else:
        fac = {}
        _factor_large(n, fac, random.Random(seed ^ n))
    return Factorization(n, tuple(sorted(fac.items())))


def tau(f: Factorization) -> int:
    out = 1
    for _, e in f.factors:
        out *= e + 1
    return out


def mult_order(lam: int, p: int, f_pm1: Factorization | None = None) -> OrderRecord:
    """Order of lam modulo the prime p.

    Starts from p-1 and strips each prime factor while the power stays 1.
    """
    if lam % p == 0:
        raise OrderUndefinedError(f"{p} divides {lam}: order undefined")
    if f_pm1 is None:
        f_pm1 = factorize(p - 1)
    elif f_pm1.source != p - 1:
        raise ValueError(f"factorization is of {f_pm1.source}, expected {p - 1}")
    t = p - 1
    for q, e in f_pm1.factors:
        for _ in range(e):
            if pow(lam, t // q, p) == 1:
                t //= q
            else:
                break
    return OrderRecord(lam, p, t)


def omega(n_list: Iterable[int]) -> int:
    """Distinct primes dividing the product of n_list, without forming it."""
    primes: set[int] = set()
    for n in n_list:
        if n < 1:
            raise ValueError(f"omega needs positive integers, got {n}")
        primes.update(factorize(n).primes)
    return len(primes)


def primitive_root(p: int) -> int:
    """Smallest primitive root of the prime p."""
    if p == 2:
        return 1
    qs = factorize(p - 1).primes
    for h in range(2, p):
        if all(pow(h, (p - 1) // q, p) != 1 for q in qs):
            return h
    raise ValueError(f"no primitive root found for {p}; is it prime?")


def element_of_order(p: int, t: int) -> int:
    """h^((p-1)/t) for the smallest primitive root h of p."""
    if (p - 1) % t:
        raise ValueError(f"{t} does not divide {p} - 1")
    return pow(primitive_root(p), (p - 1) // t, p)
