"""Exact integer number theory used throughout the package.

Everything here is a pure function of Python integers.  Primality is
deterministic Miller-Rabin (exact below 3.18e23, which covers every input the
package produces), factorization is trial division followed by Brent's
variant of Pollard rho.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Sequence, Tuple

import numpy as np

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_TRIAL_BOUND = 10**6
_SMALL_BOUND = 1000


@lru_cache(maxsize=None)
def small_primes(bound: int) -> np.ndarray:
    """Primes strictly below ``bound`` as an int64 array (plain sieve)."""
    if bound <= 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(bound, dtype=bool)
    sieve[:2] = False
    sieve[4::2] = False
    for i in range(3, math.isqrt(bound - 1) + 1, 2):
        if sieve[i]:
            sieve[i * i :: 2 * i] = False
    return np.flatnonzero(sieve).astype(np.int64)


def is_prime(n: int) -> bool:
    """Deterministic primality test.

    >>> [k for k in range(20) if is_prime(k)]
    [2, 3, 5, 7, 11, 13, 17, 19]
    >>> is_prime(341)
    False
    """
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Factorization:
    """Prime factorization ``n = prod(p**e for p, e in factors)``."""

    n: int
    factors: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1:
                raise ValueError(f"malformed factor list {self.factors!r}")
            last = p
            prod *= p**e
        if prod != self.n:
            raise ValueError(f"factors multiply to {prod}, not {self.n}")

    @property
    def primes(self) -> Tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)


def _brent_rho(n: int) -> int:
    """Return a nontrivial factor of the odd composite ``n``."""
    for c in range(1, 200):
        y, r, q, g = 2, 1, 1, 1
        m = 128
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
    raise ArithmeticError(f"rho failed on {n}")


def _split(n: int, out: dict) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    f = _brent_rho(n)
    _split(f, out)
    _split(n // f, out)


@lru_cache(maxsize=1 << 16)
def factorize(n: int) -> Factorization:
    """Factor ``n >= 1``.

    >>> factorize(126).factors
    ((2, 1), (3, 2), (7, 1))
    """
    if n < 1:
        raise ValueError("factorize needs n >= 1")
    found: dict = {}
    m = n
    for stage, bound in enumerate((_SMALL_BOUND, _TRIAL_BOUND)):
        if m == 1 or (stage and is_prime(m)):
            break
        for p in small_primes(bound).tolist():
            if stage and p < _SMALL_BOUND:
                continue
            if p * p > m:
                break
            if m % p == 0:
                e = 0
                while m % p == 0:
                    m //= p
                    e += 1
                found[p] = e
    if m > 1:
        _split(m, found)
    return Factorization(n, tuple(sorted(found.items())))


def radical(n: int) -> int:
    """Product of the distinct primes dividing ``n``; ``radical(1) == 1``."""
    return math.prod(factorize(n).primes)


def valuation(n: int, p: int) -> int:
    """Exponent of the prime ``p`` in ``n``."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n < 1:
        raise ValueError("valuation needs n >= 1")
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def coprime_part(a: int, b: int) -> int:
    """Largest divisor of ``a`` coprime to ``b``.

    Works by dividing out ``gcd(a, b)`` until nothing is shared, so ``a``
    is never factored.

    >>> coprime_part(126, 6)
    7
    """
    if a < 1 or b < 1:
        raise ValueError("coprime_part needs a, b >= 1")
    g = math.gcd(a, b)
    while g > 1:
        a //= g
        g = math.gcd(a, g)
    return a


def crt_solve(congruences: Sequence[Tuple[int, int]]) -> Optional[Tuple[int, int]]:
    """Solve ``x = r_i (mod n_i)`` for possibly non-coprime moduli.

    Returns ``(x, M)`` with ``M`` the lcm of the moduli and ``0 <= x < M``,
    or ``None`` when two congruences disagree on a shared factor.

    >>> crt_solve([(1, 2), (1, 9), (-1, 8)])
    (55, 72)
    >>> crt_solve([(1, 2), (0, 4)]) is None
    True
    """
    x, m = 0, 1
    for r, n in congruences:
        if n < 1:
            raise ValueError(f"modulus must be positive, got {n}")
        g = math.gcd(m, n)
        diff = r - x
        if diff % g:
            return None
        # x + m*t = r (mod n)  ->  t = (diff/g) * inv(m/g) (mod n/g)
        n_g = n // g
        t = (diff // g) * pow(m // g, -1, n_g) % n_g if n_g > 1 else 0
        x += m * t
        m *= n_g
        x %= m
    return x, m


def _sieve_segment(lo: int, hi: int) -> np.ndarray:
    """Primes in ``[lo, hi)`` via a segmented sieve."""
    lo = max(lo, 2)
    if hi <= lo:
        return np.zeros(0, dtype=np.int64)
    base = small_primes(math.isqrt(hi - 1) + 1)
    seg = np.ones(hi - lo, dtype=bool)
    for p in base.tolist():
        start = max(p * p, (lo + p - 1) // p * p)
        if start >= hi:
            continue
        seg[start - lo :: p] = False
    return np.flatnonzero(seg).astype(np.int64) + lo


_SEGMENT = 1 << 21


def prime_stream(start: int, residue: int, modulus: int, limit: int) -> Iterator[int]:
    """All primes ``p`` in ``[start, limit]`` with ``p = residue (mod modulus)``.

    Dense progressions are sieved segment by segment; sparse ones are walked
    candidate by candidate with :func:`is_prime`.

    >>> list(prime_stream(2, 55, 72, 500))
    [127, 199, 271, 487]
    """
    if modulus < 1:
        raise ValueError("modulus must be positive")
    residue %= modulus
    start = max(start, 2)
    if start > limit:
        return
    if modulus >= 64 or limit > 1 << 40:
        first = start + (residue - start) % modulus
        for c in range(first, limit + 1, modulus):
            if is_prime(c):
                yield c
        return
    lo = start
    while lo <= limit:
        hi = min(lo + _SEGMENT, limit + 1)
        ps = _sieve_segment(lo, hi)
        if modulus > 1:
            ps = ps[ps % modulus == residue]
        yield from ps.tolist()
        lo = hi


def primes_up_to(limit: int) -> np.ndarray:
    """Every prime ``<= limit`` as an int64 array."""
    return small_primes(limit + 1) if limit < 1 << 27 else np.fromiter(
        prime_stream(2, 0, 1, limit), dtype=np.int64
    )


def is_prime_power(q: int) -> bool:
    return q > 1 and len(factorize(q)) == 1
