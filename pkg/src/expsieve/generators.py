"""Reproducible sequence and weight families for experiments.

Every randomized generator takes an explicit seed; nothing reads global
RNG state.
"""

from __future__ import annotations

import numpy as np

from .expsums import SparseSequence, WeightSequence

SEQUENCE_KINDS = ("arithmetic", "geometric_gap", "random")
WEIGHT_KINDS = ("ones", "unit_complex", "signs")
RANDOM_KINDS = {"random", "unit_complex", "signs"}


def arithmetic(T: int, start: int = 0, step: int = 1) -> SparseSequence:
    if step < 1 or start < 0:
        raise ValueError("arithmetic sequence needs start >= 0 and step >= 1")
    s = start + step * np.arange(T, dtype=np.int64)
    return SparseSequence(s, int(s[-1]) if T else start)


def geometric_gap(T: int, ratio: float = 1.01, start: int = 0) -> SparseSequence:
    """s_1 = start, s_{n+1} = s_n + max(1, floor(ratio**n))."""
    if ratio < 1:
        raise ValueError("ratio must be >= 1")
    s = [start]
    for n in range(1, T):
        s.append(s[-1] + max(1, int(ratio**n)))
    return SparseSequence(s[:T], s[T - 1] if T else start)


def random_subset(T: int, S: int, seed: int) -> SparseSequence:
    """T distinct integers drawn uniformly from [0, S], sorted."""
    if T > S + 1:
        raise ValueError(f"cannot draw {T} distinct values from [0, {S}]")
    rng = np.random.default_rng(seed)
    s = np.sort(rng.choice(S + 1, size=T, replace=False))
    return SparseSequence(s, S)


def ones(T: int) -> WeightSequence:
    return WeightSequence.ones(T)


def unit_complex(T: int, seed: int) -> WeightSequence:
    rng = np.random.default_rng(seed)
    return WeightSequence(np.exp(2j * np.pi * rng.random(T)))


def signs(T: int, seed: int) -> WeightSequence:
    rng = np.random.default_rng(seed)
    return WeightSequence(rng.choice([-1.0, 1.0], size=T).astype(np.complex128))


def make_sequence(kind: str, T: int, S: int | None = None, seed: int | None = None, **kw) -> SparseSequence:
    if kind == "arithmetic":
        return arithmetic(T, kw.get("start", 0), kw.get("step", 1))
    if kind == "geometric_gap":
        return geometric_gap(T, kw.get("ratio", 1.01), kw.get("start", 0))
    if kind == "random":
        if seed is None:
            raise ValueError("random sequence needs a seed")
        if S is None:
            raise ValueError("random sequence needs S")
        return random_subset(T, S, seed)
    raise ValueError(f"unknown sequence kind {kind!r}; choose from {SEQUENCE_KINDS}")


def make_weights(kind: str, T: int, seed: int | None = None) -> WeightSequence:
    if kind == "ones":
        return ones(T)
    if kind in ("unit_complex", "signs"):
        if seed is None:
            raise ValueError(f"{kind} weights need a seed")
        return unit_complex(T, seed) if kind == "unit_complex" else signs(T, seed)
    raise ValueError(f"unknown weight kind {kind!r}; choose from {WEIGHT_KINDS}")
