import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from expsieve.expsums import SparseSequence, WeightSequence  # noqa: E402

FIXTURES = Path(__file__).parent / "fixtures"


def random_case(rng: np.random.Generator, T_max: int = 64, S_max: int = 2000, complex_weights: bool = True):
    T = int(rng.integers(1, T_max + 1))
    S = int(rng.integers(T - 1, S_max + 1))
    s = np.sort(rng.choice(S + 1, size=T, replace=False))
    if complex_weights:
        g = rng.random(T) * np.exp(2j * np.pi * rng.random(T))
    else:
        g = rng.choice([-1.0, 1.0], size=T)
    return SparseSequence(s, S), WeightSequence(g)


@pytest.fixture
def rng():
    return np.random.default_rng(20170613)


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES
