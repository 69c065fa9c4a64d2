"""Prime enumeration, the order database and the prime-set partitions.

The database holds one ``(p, t_p, tau(p-1))`` triple per prime p <= X
with gcd(p, lambda) = 1, where t_p is the multiplicative order of lambda
modulo p.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from functools import partial
from pathlib import Path
from typing import Iterator, NamedTuple

import numpy as np

from .arith import DEFAULT_SIEVE_BOUND, ensure_spf, factorize, mult_order, tau
from .parallel import chunked, ordered_map

SIEVE_CAP = 10**9
SEGMENT = 1 << 20


class ResourceCapError(RuntimeError):
    """A request exceeded a configured size cap."""

    def __init__(self, what: str, value, cap):
        super().__init__(f"{what}={value} exceeds cap {cap}")
        self.what = what
        self.value = value
        self.cap = cap


def _small_primes(n: int) -> np.ndarray:
    is_p = np.ones(n + 1, dtype=bool)
    is_p[:2] = False
    for q in range(2, math.isqrt(n) + 1):
        if is_p[q]:
            is_p[q * q :: q] = False
    return np.flatnonzero(is_p)


def sieve_primes(X: int, cap: int = SIEVE_CAP) -> np.ndarray:
    """All primes <= X, by a segmented sieve of Eratosthenes."""
    if X > cap:
        raise ResourceCapError("X", X, cap)
    if X < 2:
        return np.zeros(0, dtype=np.int64)
    root = math.isqrt(X)
    base = _small_primes(root)
    if X <= SEGMENT:
        return _small_primes(X).astype(np.int64)
    out = [base.astype(np.int64)]
    lo = root + 1
    while lo <= X:
        hi = min(lo + SEGMENT, X + 1)
        seg = np.ones(hi - lo, dtype=bool)
        for q in base:
            q = int(q)
            start = max(q * q, (lo + q - 1) // q * q)
            if start >= hi:
                continue
            seg[start - lo :: q] = False
        out.append(np.flatnonzero(seg).astype(np.int64) + lo)
        lo = hi
    return np.concatenate(out)


class PrimeRecord(NamedTuple):
    p: int
    t_p: int
    tau_pm1: int


def _order_block(primes: np.ndarray, lam: int) -> np.ndarray:
    rows = np.empty((len(primes), 3), dtype=np.int64)
    for i, p in enumerate(primes.tolist()):
        f = factorize(p - 1)
        rows[i] = (p, mult_order(lam, p, f).t_p, tau(f))
    return rows


@dataclass
class OrderDatabase:
    lam: int
    X: int
    p: np.ndarray
    t: np.ndarray
    tau: np.ndarray
    header_extra: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.p)

    def __iter__(self) -> Iterator[PrimeRecord]:
        for row in zip(self.p.tolist(), self.t.tolist(), self.tau.tolist()):
            yield PrimeRecord(*row)

    @property
    def records(self) -> list[PrimeRecord]:
        return list(self)

    def subset(self, mask: np.ndarray) -> "OrderDatabase":
        return OrderDatabase(self.lam, self.X, self.p[mask], self.t[mask], self.tau[mask])

    def record_bytes(self) -> bytes:
        rows = np.stack([self.p, self.t, self.tau], axis=1).astype("<u8")
        return rows.tobytes()

    def checksum(self) -> str:
        return hashlib.sha256(self.record_bytes()).hexdigest()

    def save(self, path: str | Path) -> None:
        header = {"lambda": self.lam, "X": self.X, "count": len(self), "checksum": self.checksum()}
        path = Path(path)
        tmp = path.with_name(path.name + ".tmp")
        with open(tmp, "wb") as fh:
            fh.write(json.dumps(header, sort_keys=True).encode() + b"\n")
            fh.write(self.record_bytes())
        tmp.replace(path)

    @classmethod
    def load(cls, path: str | Path) -> "OrderDatabase":
        raw = Path(path).read_bytes()
        nl = raw.index(b"\n")
        header = json.loads(raw[:nl])
        body = raw[nl + 1 :]
        if len(body) != 24 * header["count"]:
            raise ValueError(f"{path}: expected {header['count']} records, found {len(body) / 24}")
        rows = np.frombuffer(body, dtype="<u8").reshape(-1, 3).astype(np.int64)
        db = cls(header["lambda"], header["X"], rows[:, 0].copy(), rows[:, 1].copy(), rows[:, 2].copy())
        if db.checksum() != header["checksum"]:
            raise ValueError(f"{path}: record checksum mismatch")
        return db


def build_order_db(
    lam: int,
    X: int,
    workers: int = 1,
    cap: int = SIEVE_CAP,
    sieve_bound: int = DEFAULT_SIEVE_BOUND,
) -> OrderDatabase:
    if lam < 2:
        raise ValueError(f"lambda must be >= 2, got {lam}")
    primes = sieve_primes(X, cap)
    primes = primes[lam % primes != 0] if len(primes) else primes
    ensure_spf(X, sieve_bound)
    blocks = chunked(primes, max(1, workers * 4)) if len(primes) else []
    parts = ordered_map(partial(_order_block, lam=lam), blocks, workers)
    rows = np.concatenate(parts) if parts else np.zeros((0, 3), dtype=np.int64)
    return OrderDatabase(lam, X, rows[:, 0].copy(), rows[:, 1].copy(), rows[:, 2].copy())


def delta_threshold(Delta: float) -> int:
    """Smallest integer order admitted by t_p >= Delta."""
    if Delta < 1:
        raise ValueError(f"Delta must be >= 1, got {Delta}")
    return math.ceil(Delta)


def filter_E_Delta(db: OrderDatabase, Delta: float) -> OrderDatabase:
    """Records with t_p >= Delta, order preserved."""
    return db.subset(db.t >= delta_threshold(Delta))


def density_check(db: OrderDatabase) -> float:
    """|E_{sqrt X}(X)| * log X / X."""
    if db.X < 100:
        raise ValueError("density_check needs X >= 100")
    return len(filter_E_Delta(db, math.sqrt(db.X))) * math.log(db.X) / db.X


def count_small_orders(db: OrderDatabase, Z: float) -> int:
    """#{p in db : t_p <= Z}."""
    if Z < 1:
        raise ValueError(f"Z must be >= 1, got {Z}")
    return int(np.count_nonzero(db.t <= math.floor(Z)))


@dataclass
class PrimePartition:
    """Dyadic order classes and order fibers of E_Delta(X).

    ``bounds[j]`` and ``bounds[j+1]`` delimit class j as a half-open
    range of orders; the last bound is X + 1 so t_p = X is kept.
    """

    Delta: float
    bounds: list[float]
    classes: list[np.ndarray]
    fibers: dict[int, np.ndarray]

    @classmethod
    def build(cls, db: OrderDatabase, Delta: float) -> "PrimePartition":
        E = filter_E_Delta(db, Delta)
        X = db.X
        bounds: list[float] = []
        if Delta <= X:
            J = 0
            while Delta * 2**J < X:
                J += 1
            J = max(J, 1)
            bounds = [float(Delta)]
            for _ in range(1, J):
                bounds.append(min(2 * bounds[-1], X))
            bounds.append(X + 1)
        classes = [E.p[(E.t >= lo) & (E.t < hi)] for lo, hi in zip(bounds, bounds[1:])]
        order = np.argsort(E.t, kind="stable")
        ts, ps = E.t[order], E.p[order]
        fibers = {}
        if len(ts):
            cuts = np.flatnonzero(np.diff(ts)) + 1
            for grp_t, grp_p in zip(np.split(ts, cuts), np.split(ps, cuts)):
                fibers[int(grp_t[0])] = np.sort(grp_p)
        return cls(Delta, bounds, classes, fibers)

    def fiber(self, r: int) -> np.ndarray:
        return self.fibers.get(r, np.zeros(0, dtype=np.int64))
