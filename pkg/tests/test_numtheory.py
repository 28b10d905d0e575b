import math
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from perred.numtheory import (
    Factorization,
    coprime_part,
    crt_solve,
    factorize,
    is_prime,
    is_prime_power,
    prime_stream,
    radical,
    valuation,
)


def sieve_oracle(n):
    flags = bytearray([1]) * (n + 1)
    flags[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(n) + 1):
        if flags[i]:
            flags[i * i :: i] = bytearray(len(flags[i * i :: i]))
    return flags


def divisor_brute_coprime_part(a, b):
    return max(k for k in range(1, a + 1) if a % k == 0 and math.gcd(k, b) == 1)


@pytest.mark.parametrize("n, expected", [(1, ()), (12, ((2, 2), (3, 1))), (126, ((2, 1), (3, 2), (7, 1)))])
def test_factorize_examples(n, expected):
    assert factorize(n).factors == expected


def test_factorize_large_semiprime():
    p, q = 1_000_003, 998_244_353
    assert factorize(p * q).factors == ((p, 1), (q, 1))
    n = (2**31 - 1) ** 2 - 1
    f = factorize(n)
    assert math.prod(pr**e for pr, e in f) == n
    assert all(is_prime(pr) for pr in f.primes)


@settings(max_examples=300)
@given(st.integers(min_value=1, max_value=2**62))
def test_factorize_product(n):
    f = factorize(n)
    assert math.prod(p**e for p, e in f) == n
    assert list(f.primes) == sorted(set(f.primes))
    assert all(is_prime(p) for p in f.primes)


def test_factorization_rejects_bad_lists():
    with pytest.raises(ValueError):
        Factorization(12, ((3, 1), (2, 2)))
    with pytest.raises(ValueError):
        Factorization(13, ((2, 2), (3, 1)))


@pytest.mark.parametrize("a, b, expected", [(17, 1, 17), (4, 2, 1), (126, 6, 7)])
def test_coprime_part_examples(a, b, expected):
    assert coprime_part(a, b) == expected
    assert divisor_brute_coprime_part(a, b) == expected


@settings(max_examples=300)
@given(st.integers(1, 3000), st.integers(1, 300))
def test_coprime_part_matches_divisor_search(a, b):
    r = coprime_part(a, b)
    assert r == divisor_brute_coprime_part(a, b)
    assert a % r == 0 and math.gcd(r, b) == 1
    assert all(b % p == 0 for p in factorize(a // r).primes)


@given(st.integers(1, 10**6), st.integers(1, 10**6), st.integers(1, 10**4))
def test_coprime_part_multiplicative(a1, a2, b):
    if math.gcd(a1, a2) == 1:
        assert coprime_part(a1 * a2, b) == coprime_part(a1, b) * coprime_part(a2, b)


@given(st.integers(1, 10**12), st.integers(1, 10**6))
def test_coprime_part_depends_on_radical(a, b):
    assert coprime_part(a, b) == coprime_part(a, radical(b))


@pytest.mark.parametrize("n, expected", [(1, 1), (12, 6), (128, 2)])
def test_radical(n, expected):
    assert radical(n) == expected


@pytest.mark.parametrize("n, p, expected", [(12, 2, 2), (12, 5, 0), (40, 2, 3)])
def test_valuation(n, p, expected):
    assert valuation(n, p) == expected


def test_valuation_rejects_composite():
    with pytest.raises(ValueError):
        valuation(12, 4)


@pytest.mark.parametrize(
    "cong, expected",
    [([(1, 2), (1, 9), (-1, 8)], (55, 72)), ([(1, 2), (0, 4)], None), ([(1, 1)], (0, 1)), ([], (0, 1))],
)
def test_crt_examples(cong, expected):
    assert crt_solve(cong) == expected


def crt_oracle(cong):
    m = math.lcm(*(n for _, n in cong))
    for x in range(m):
        if all((x - r) % n == 0 for r, n in cong):
            return x, m
    return None


@settings(max_examples=300)
@given(st.lists(st.tuples(st.integers(-50, 50), st.integers(1, 40)), min_size=1, max_size=4))
def test_crt_against_exhaustive_search(cong):
    got = crt_solve(cong)
    if math.lcm(*(n for _, n in cong)) <= 10**6:
        assert got == crt_oracle(cong)
    if got is not None:
        x, m = got
        assert 0 <= x < m
        assert all((x - r) % n == 0 for r, n in cong)


@pytest.mark.parametrize("n, expected", [(0, False), (1, False), (2, True), (127, True), (341, False)])
def test_is_prime_examples(n, expected):
    assert is_prime(n) is expected


def test_is_prime_agrees_with_sieve_to_1e6():
    flags = sieve_oracle(10**6)
    bad = [n for n in range(10**6 + 1) if is_prime(n) != bool(flags[n])]
    assert bad == []


@pytest.mark.parametrize(
    "n, expected",
    [(3215031751, False), (3825123056546413051, False), (2**61 - 1, True), (2**62 - 57, True), ((2**31 - 1) * (2**31 + 11), False)],
)
def test_is_prime_pseudoprimes_and_large_primes(n, expected):
    # 3215031751 and 3825123056546413051 are strong pseudoprimes to several small bases
    assert is_prime(n) is expected


def test_prime_stream_examples():
    assert list(prime_stream(2, 1, 1, 10)) == [2, 3, 5, 7]
    assert list(prime_stream(2, 55, 72, 500)) == [127, 199, 271, 487]
    assert list(prime_stream(2, 0, 4, 100)) == []


@pytest.mark.parametrize("residue, modulus", list(product([1, 3, 5], [1, 4, 6, 70, 210])))
def test_prime_stream_exhaustive(residue, modulus):
    flags = sieve_oracle(5000)
    want = [n for n in range(100, 5001) if flags[n] and n % modulus == residue % modulus]
    assert list(prime_stream(100, residue, modulus, 5000)) == want


def test_is_prime_power():
    assert [q for q in range(2, 30) if is_prime_power(q)] == [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29]
