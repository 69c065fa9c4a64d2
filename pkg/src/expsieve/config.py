"""Experiment configuration: one JSON document per run."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from .generators import RANDOM_KINDS, SEQUENCE_KINDS, WEIGHT_KINDS

COMMANDS = ("orders", "vsum", "admissible", "large-sieve", "discrepancy", "digits", "exceptional", "report")

_REQUIRED = {
    "orders": ["lambda", "X"],
    "vsum": ["lambda", "X", "T", "sequence"],
    "admissible": ["lambda", "X"],
    "large-sieve": ["T", "sequence", "K"],
    "discrepancy": ["lambda", "X", "T", "sequence"],
    "digits": ["digits"],
    "exceptional": ["exceptional"],
    "report": ["X", "T", "S"],
}

DEFAULT_BOUNDS = {
    "C": 1.0,
    "pair": "hbk1",
    "eta": 0.01,
    "delta": 0.01,
    "k": 3,
    "rho": 0.1,
    "H": 20,
    "eps": 0.0,
}


class ConfigError(ValueError):
    def __init__(self, errors: list[str]):
        super().__init__("invalid config: " + "; ".join(errors))
        self.errors = errors


@dataclass
class ExperimentConfig:
    command: str
    raw: dict
    lam: int = 2
    X: int | None = None
    Delta: float = 1.0
    T: int | None = None
    S: int | None = None
    K: int | None = None
    sequence: dict = field(default_factory=lambda: {"kind": "arithmetic"})
    weights: dict = field(default_factory=lambda: {"kind": "ones"})
    bounds: dict = field(default_factory=lambda: dict(DEFAULT_BOUNDS))
    digits: dict = field(default_factory=dict)
    exceptional: dict = field(default_factory=dict)
    threads: int = 1
    crossover: int | None = None

    @classmethod
    def from_dict(cls, raw: dict, command: str | None = None) -> "ExperimentConfig":
        errors: list[str] = []
        cmd = command or raw.get("command")
        if raw.get("command") and command and raw["command"] != command:
            errors.append(f"command: config says {raw['command']!r} but {command!r} was requested")
        if cmd not in COMMANDS:
            raise ConfigError([f"command: must be one of {COMMANDS}, got {cmd!r}"])
        for name in _REQUIRED[cmd]:
            if name not in raw:
                errors.append(f"{name}: required for {cmd}")

        def integer(name, lo=None):
            v = raw.get(name)
            if v is None:
                return None
            if not isinstance(v, int) or isinstance(v, bool):
                errors.append(f"{name}: must be an integer, got {v!r}")
                return None
            if lo is not None and v < lo:
                errors.append(f"{name}: must be >= {lo}, got {v}")
            return v

        lam = integer("lambda", 2)
        X = integer("X", 2)
        T = integer("T", 1)
        S = integer("S", 0)
        K = integer("K", 1)
        threads = integer("threads", 1)
        crossover = integer("crossover", 2)

        Delta = raw.get("Delta", 1.0)
        if Delta == "sqrt":
            Delta = math.sqrt(X) if X else 1.0
        if not isinstance(Delta, (int, float)) or isinstance(Delta, bool) or Delta < 1:
            errors.append(f"Delta: must be a number >= 1 or 'sqrt', got {Delta!r}")
            Delta = 1.0

        seq = dict(raw.get("sequence", {"kind": "arithmetic"}))
        if seq.get("kind") not in SEQUENCE_KINDS:
            errors.append(f"sequence.kind: must be one of {SEQUENCE_KINDS}, got {seq.get('kind')!r}")
        elif seq["kind"] in RANDOM_KINDS:
            if not isinstance(seq.get("seed"), int):
                errors.append("sequence.seed: required integer seed for the random generator")
            if S is None:
                errors.append("S: required for the random sequence generator")
        wts = dict(raw.get("weights", {"kind": "ones"}))
        if wts.get("kind") not in WEIGHT_KINDS:
            errors.append(f"weights.kind: must be one of {WEIGHT_KINDS}, got {wts.get('kind')!r}")
        elif wts["kind"] in RANDOM_KINDS and not isinstance(wts.get("seed"), int):
            errors.append(f"weights.seed: required integer seed for {wts['kind']} weights")

        bounds = dict(DEFAULT_BOUNDS)
        bounds.update(raw.get("bounds", {}))
        for key in ("C", "eta", "delta", "rho", "eps"):
            if not isinstance(bounds[key], (int, float)) or isinstance(bounds[key], bool):
                errors.append(f"bounds.{key}: must be a number")
        for key in ("k", "H"):
            if not isinstance(bounds[key], int) or bounds[key] < 1:
                errors.append(f"bounds.{key}: must be a positive integer")

        digits = dict(raw.get("digits", {}))
        if cmd == "digits":
            pat = digits.get("pattern")
            if not isinstance(pat, dict) or not {"S", "a_hex", "free"} <= set(pat):
                errors.append('digits.pattern: must be {"S": int, "a_hex": str, "free": [int, ...]}')
            if not isinstance(digits.get("X"), int) or digits["X"] < 3:
                errors.append("digits.X: prime limit must be an integer >= 3")
        exc = dict(raw.get("exceptional", {}))
        if cmd == "exceptional":
            for key in ("t", "k", "U", "ell_max"):
                if key not in exc:
                    errors.append(f"exceptional.{key}: required")

        if errors:
            raise ConfigError(errors)
        return cls(
            command=cmd,
            raw=raw,
            lam=lam or 2,
            X=X,
            Delta=float(Delta),
            T=T,
            S=S,
            K=K,
            sequence=seq,
            weights=wts,
            bounds=bounds,
            digits=digits,
            exceptional=exc,
            threads=threads or 1,
            crossover=crossover,
        )

    @classmethod
    def load(cls, path: str | Path, command: str | None = None) -> "ExperimentConfig":
        try:
            raw = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise ConfigError([f"<file>: not valid JSON ({exc})"]) from None
        if not isinstance(raw, dict):
            raise ConfigError(["<file>: top level must be a JSON object"])
        return cls.from_dict(raw, command)

    def params(self) -> dict:
        """Run parameters echoed into reports; excludes anything that may not change outputs."""
        return {k: v for k, v in self.raw.items() if k not in ("threads", "out")}
