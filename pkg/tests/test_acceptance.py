"""Acceptance criteria 1-10.

Each test prints one line ``[PASS] criterion N: ...`` or ``[FAIL] ...``
straight to the terminal (outside pytest's capture) and then asserts.
"""

import json
import math
import time
from fractions import Fraction
from functools import lru_cache

import numpy as np
import pytest

import oracles
from conftest import FIXTURES, random_case
from expsieve.arith import mult_order, primitive_root
from expsieve.cli import run
from expsieve.config import ExperimentConfig
from expsieve.digits import DigitPattern, count_divisible
from expsieve.equidist import UnitPointSet, discrepancy_exact, erdos_turan_bound
from expsieve.experiments import AGREEMENT_COLUMNS, strategy_agreement
from expsieve.expsums import SparseSequence, WeightSequence, power_profile, sums_all_frequencies
from expsieve.primes import build_order_db, count_small_orders, sieve_primes
from expsieve.report import render_csv
from expsieve.stats import decay_experiment, large_sieve_lhs, large_sieve_rhs

pytestmark = pytest.mark.acceptance

WORKER_COUNTS = (1, 4, 8)


@pytest.fixture
def verdict(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {n}: {detail}")
        assert ok, detail

    return emit


# -- shared workloads, reused by criterion 10 -------------------------------------


@lru_cache(maxsize=None)
def agreement_report(workers):
    t0 = time.perf_counter()
    rows = strategy_agreement(p_max=1999, lams=(2, 3, 10), n_cases=20, seed=1, workers=workers)
    return render_csv("agreement", AGREEMENT_COLUMNS, rows), rows, time.perf_counter() - t0


@lru_cache(maxsize=None)
def decay_report(workers):
    t0 = time.perf_counter()
    rows = decay_experiment((500, 1000, 2000, 4000), lam=2, seed=2017, workers=workers)
    cols = ["X", "T", "S", "Delta", "n_primes", "value_V", "value_W", "trivial_bound", "ratio"]
    body = [(r.X, r.T, r.S, r.Delta, r.n_primes, r.value_V, r.value_W, r.trivial_bound, r.ratio) for r in rows]
    return render_csv("decay", cols, body), rows, time.perf_counter() - t0


KOROBOV_SCAN = {"command": "admissible", "lambda": 2, "X": 1000, "bounds": {"pair": "korobov", "C": 2}}


def korobov_scan(tmp_path, workers):
    out = tmp_path / f"scan_w{workers}"
    cfg = ExperimentConfig.from_dict(dict(KOROBOV_SCAN, threads=workers))
    run(cfg, out)
    return (out / "admissible_scan.csv").read_bytes(), json.loads((out / "admissible_summary.json").read_text())


# -- criteria ------------------------------------------------------------------------


def test_criterion_01_oracle_equivalence(verdict):
    _, rows, secs = agreement_report(1)
    bad = [r for r in rows if r[3] != r[5] or abs(r[4] - r[6]) > 1e-8 * r[4]]
    primes = {r[0] for r in rows}
    complete = len(primes) == len(sieve_primes(1999)) - 1 and len({r[2] for r in rows}) == 20
    ok = not bad and complete and secs <= 60
    verdict(1, ok, f"{len(rows)} (p, lambda, case) triples, {len(bad)} disagreements, {secs:.1f}s (limit 60s)")


def test_criterion_02_complete_sum_identity(verdict):
    t0 = time.perf_counter()
    worst = 0.0
    for p in (int(q) for q in sieve_primes(500)):
        g = primitive_root(p) if p > 2 else 1
        c = power_profile(p, p - 1, SparseSequence(range(1, p)), None, g)
        sig = sums_all_frequencies(c)
        worst = max(worst, float(np.max(np.abs(sig[1:] + 1))))
    secs = time.perf_counter() - t0
    verdict(2, worst <= 1e-9 and secs <= 10, f"max |sum + 1| = {worst:.2e} over p <= 500, {secs:.2f}s")


def test_criterion_03_parseval(verdict):
    rng = np.random.default_rng(3)
    primes = [int(q) for q in sieve_primes(500)]
    worst = 0.0
    for _ in range(200):
        p = int(rng.choice(primes))
        lam = int(rng.choice([l for l in (2, 3, 10) if l % p]))
        t = mult_order(lam, p).t_p
        seq, g = random_case(rng, T_max=256, S_max=10**5)
        c = power_profile(p, t, seq, g, lam)
        lhs = float(np.sum(np.abs(sums_all_frequencies(c)) ** 2))
        rhs = p * float(np.sum(np.abs(c) ** 2))
        worst = max(worst, abs(lhs - rhs) / rhs if rhs else abs(lhs))
    verdict(3, worst <= 1e-9, f"200 cases, worst relative error {worst:.2e}")


def test_criterion_04_large_sieve(verdict):
    rng = np.random.default_rng(4)
    violations, worst = 0, 0.0
    for _ in range(100):
        K = int(rng.integers(1, 51))
        T = int(rng.integers(1, 201))
        S = int(rng.integers(T - 1, 10**4 + 1))
        s = np.sort(rng.choice(S + 1, size=T, replace=False))
        g = rng.random(T) * np.exp(2j * np.pi * rng.random(T))
        seq, gamma = SparseSequence(s, S), WeightSequence(g)
        lhs = large_sieve_lhs(seq, gamma, K)
        if lhs > large_sieve_rhs(seq, gamma, K) + 1e-9:
            violations += 1
        ref = oracles.large_sieve(s.tolist(), g.tolist(), K)
        worst = max(worst, abs(lhs - ref) / ref if ref else abs(lhs))
    ok = violations == 0 and worst <= 1e-8
    verdict(4, ok, f"100 inputs, {violations} inequality violations, worst brute-force relative error {worst:.2e}")


def test_criterion_05_digit_formula(verdict):
    rng = np.random.default_rng(5)
    odd = [p for p in oracles.primes_upto(97) if p > 2]
    mismatches, nnpp_fail, checked = 0, 0, 0
    for _ in range(50):
        T = int(rng.integers(0, 17))
        S = int(rng.integers(max(T, 1), 48))
        free = sorted(rng.choice(S, size=T, replace=False).tolist())
        pat = DigitPattern.normalized(S, int(rng.integers(0, 2**S)), free)
        members = oracles.digit_members(pat.a, pat.free)
        for p in odd:
            dc = count_divisible(pat, p, check=False)
            if dc.N_p != sum(z % p == 0 for z in members):
                mismatches += 1
            Q = max(abs(math.prod(1 + oracles.e(b * pow(2, j, p), p) for j in pat.free)) for b in range(1, p))
            if abs(dc.N_p - 2**pat.T / p) > Q:
                nnpp_fail += 1
            checked += 1
    ok = mismatches == 0 and nnpp_fail == 0
    verdict(5, ok, f"{checked} (pattern, p) pairs, {mismatches} count mismatches, {nnpp_fail} |N_p - 2^T/p| > Q_p")


def test_criterion_06_small_orders(verdict):
    t0 = time.perf_counter()
    db = build_order_db(2, 10**6)
    over = [Z for Z in range(1, 65) if count_small_orders(db, Z) > Z * (Z + 1) // 2]
    secs = time.perf_counter() - t0
    verdict(6, not over and secs <= 120, f"Z = 1..64 at X = 10^6, {len(over)} exceedances, {secs:.1f}s (limit 120s)")


def test_criterion_07_discrepancy(verdict):
    rng = np.random.default_rng(7)
    sweep_bad, et_bad = 0, 0
    for _ in range(100):
        T = int(rng.integers(1, 201))
        den = int(rng.integers(2, 1000))
        pts = UnitPointSet(Fraction(int(n), den) for n in rng.integers(0, den, size=T))
        res = discrepancy_exact(pts)
        sweep_bad += res.D_exact != oracles.discrepancy(pts.points)
        et_bad += erdos_turan_bound(pts, int(rng.integers(1, 50))) < res.D
    mid_bad = 0
    for N in range(1, 21):
        pts = UnitPointSet(Fraction(2 * k - 1, 2 * N) for k in range(1, N + 1))
        mid_bad += discrepancy_exact(pts).D_exact != Fraction(1, N)
    ok = sweep_bad == 0 and et_bad == 0 and mid_bad == 0
    verdict(7, ok, f"100 sets: {sweep_bad} sweep/brute-force mismatches, {et_bad} Erdos-Turan violations; "
                   f"{mid_bad} midpoint failures for N <= 20")


def test_criterion_08_decay(verdict):
    _, rows, secs = decay_report(1)
    trivial_ok = all(r.value_V <= r.trivial_bound for r in rows)
    ratios = [r.ratio for r in rows]
    monotone = all(x >= y for x, y in zip(ratios, ratios[1:]))
    ok = trivial_ok and monotone and secs <= 600
    shown = ", ".join(f"{r.X}:{r.ratio:.4g}" for r in rows)
    verdict(8, ok, f"ratios {shown}; trivial bound {'holds' if trivial_ok else 'VIOLATED'}, {secs:.1f}s")


def test_criterion_09_admissible_regression(verdict, tmp_path):
    csv, summary = korobov_scan(tmp_path, 1)
    pinned = (FIXTURES / "admissible_korobov_l2_X1000.csv").read_bytes()
    ok = summary["n_flagged"] == 0 and csv == pinned
    verdict(9, ok, f"{summary['n_primes']} primes, {summary['n_flagged']} flagged, "
                   f"CSV {'identical to' if csv == pinned else 'DIFFERS from'} pinned fixture")


def test_criterion_10_determinism(verdict, tmp_path):
    diffs = []
    for name, produce in (
        ("criterion 1", lambda w: agreement_report(w)[0]),
        ("criterion 8", lambda w: decay_report(w)[0]),
        ("criterion 9", lambda w: korobov_scan(tmp_path, w)[0]),
    ):
        outs = {w: produce(w) for w in WORKER_COUNTS}
        if len(set(outs.values())) != 1:
            diffs.append(name)
    verdict(10, not diffs, f"reports for criteria 1, 8, 9 across workers {WORKER_COUNTS}: "
                           + ("byte-identical" if not diffs else "differ in " + ", ".join(diffs)))
