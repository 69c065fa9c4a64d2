import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from expsieve.arith import (
    Factorization,
    Modulus,
    OrderRecord,
    OrderUndefinedError,
    build_spf,
    ensure_spf,
    factorize,
    is_prime,
    mult_order,
    omega,
    pow_mod,
    primitive_root,
    tau,
)


@pytest.mark.parametrize("base,exp,m,expected", [(2, 10, 1000, 24), (5, 0, 7, 1), (3, 100, 101, 1)])
def test_pow_mod_examples(base, exp, m, expected):
    assert pow_mod(base, exp, m) == expected


@given(st.integers(-(2**70), 2**70), st.integers(0, 2**70), st.integers(2, 2**63 - 1))
def test_pow_mod_matches_builtin(base, exp, m):
    assert pow_mod(base, exp, m) == pow(base, exp, m)


def test_modulus_validation():
    assert Modulus.of(101).is_prime
    assert not Modulus.of(100).is_prime
    with pytest.raises(ValueError):
        Modulus(1)
    with pytest.raises(ValueError):
        Modulus(91, is_prime=True)


def test_factorize_examples():
    assert factorize(12).factors == ((2, 2), (3, 1))
    assert factorize(1).factors == ()
    assert factorize(2**31 - 1).factors == ((2147483647, 1),)


def test_factorize_large_semiprime():
    p, q = 3037000493, 3036999769  # both prime, product just under 2**63
    assert is_prime(p) and is_prime(q)
    assert factorize(p * q).factors == ((q, 1), (p, 1))


def test_factorize_rejects_out_of_range():
    for n in (0, -5, 2**63):
        with pytest.raises(ValueError):
            factorize(n)


def test_factorization_invariants_enforced():
    with pytest.raises(ValueError):
        Factorization(12, ((3, 1), (2, 2)))
    with pytest.raises(ValueError):
        Factorization(12, ((2, 1), (3, 1)))


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 2**63 - 1))
def test_factorize_roundtrip(n):
    f = factorize(n)
    assert f.value() == n
    assert all(is_prime(q) for q in f.primes)


def test_factorize_roundtrip_seeded_batch():
    rng = random.Random(63)
    for _ in range(2000):
        n = rng.randrange(1, 2**63)
        f = factorize(n)
        assert math.prod(q**e for q, e in f.factors) == n


def test_is_prime_against_trial_division():
    small = set(oracles.primes_upto(5000))
    assert [n for n in range(5001) if is_prime(n)] == sorted(small)
    # strong pseudoprimes to several small bases
    for n in (3215031751, 2152302898747, 3474749660383, 341550071728321):
        assert not is_prime(n)


def test_spf_table():
    spf = build_spf(1000)
    for n in range(2, 1001):
        assert spf[n] == min(oracles.distinct_prime_factors(n))


def test_spf_and_rho_paths_agree():
    ensure_spf(10**5)
    from expsieve import arith

    rng = random.Random(1)
    for _ in range(300):
        n = rng.randrange(2, 10**5)
        fac = {}
        arith._factor_large(n, fac, random.Random(0))
        assert tuple(sorted(fac.items())) == factorize(n).factors


@pytest.mark.parametrize("n,expected", [(12, 6), (1, 1), (100, 9)])
def test_tau_examples(n, expected):
    assert tau(factorize(n)) == expected
    assert oracles.divisor_count(n) == expected


def test_tau_matches_divisor_count_to_1e5():
    N = 10**5
    counts = [0] * (N + 1)
    for d in range(1, N + 1):
        for m in range(d, N + 1, d):
            counts[m] += 1
    ensure_spf(N)
    assert all(tau(factorize(n)) == counts[n] for n in range(1, N + 1))


@pytest.mark.parametrize("lam,p,t", [(2, 7, 3), (2, 11, 10), (3, 11, 5)])
def test_mult_order_examples(lam, p, t):
    rec = mult_order(lam, p, factorize(p - 1))
    assert rec.t_p == t == oracles.order(lam, p)
    assert rec.check()


def test_mult_order_rejects_divisible_base():
    with pytest.raises(OrderUndefinedError):
        mult_order(6, 3)


def test_mult_order_matches_bruteforce_to_1e4():
    for p in oracles.primes_upto(10**4):
        for lam in (2, 3, 10):
            if lam % p == 0:
                continue
            rec = mult_order(lam, p)
            assert rec.t_p == oracles.order(lam, p), (lam, p)
            assert rec.check()


def test_order_record_check_detects_bad_order():
    assert not OrderRecord(2, 7, 6).check()
    assert not OrderRecord(2, 7, 4).check()


@pytest.mark.parametrize("ns,expected", [([6], 2), ([1, 1], 0), ([2, 3, 4, 5, 6], 3)])
def test_omega_examples(ns, expected):
    assert omega(ns) == expected
    assert len(set().union(*(oracles.distinct_prime_factors(n) for n in ns))) == expected


def test_primitive_root():
    for p in oracles.primes_upto(500)[1:]:
        g = primitive_root(p)
        assert oracles.order(g, p) == p - 1
        assert all(oracles.order(h, p) < p - 1 for h in range(2, g))
