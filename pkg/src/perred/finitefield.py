"""Arithmetic in F_p and F_{p^2} = F_p[s]/(s^2 - n), n the least nonresidue.

Elements of F_{p^2} are :class:`QuadExtElem` pairs ``(u, v)`` meaning
``u + v*s``.  The coordinates may be Python ints or equally shaped int64
numpy arrays; every operation below is written branch-free so the same code
handles a single element or a whole batch.  Batched use requires
``p < 2**31`` so that products of two residues fit in int64.
"""
from __future__ import annotations

import math
from functools import cached_property, lru_cache
from typing import List, NamedTuple, Union

import numpy as np

from .numtheory import Factorization, factorize, is_prime

Coord = Union[int, np.ndarray]


class QuadExtElem(NamedTuple):
    u: Coord
    v: Coord


def _is_array(x) -> bool:
    return isinstance(x, np.ndarray)


class PrimeFieldCtx:
    """Arithmetic context for a fixed odd prime ``p``."""

    def __init__(self, p: int):
        if p == 2 or not is_prime(p):
            raise ValueError(f"p must be an odd prime, got {p}")
        if p >= 1 << 62:
            raise ValueError("p must be below 2**62")
        self.p = p
        self.nonresidue = self._least_nonresidue()

    def __repr__(self):
        return f"PrimeFieldCtx(p={self.p}, nonresidue={self.nonresidue})"

    def _least_nonresidue(self) -> int:
        p = self.p
        for n in range(2, p):
            if pow(n, (p - 1) // 2, p) == p - 1:
                return n
        raise AssertionError("no nonresidue")  # unreachable for odd p

    @cached_property
    def fact_p_minus_1(self) -> Factorization:
        return factorize(self.p - 1)

    @cached_property
    def fact_p_plus_1(self) -> Factorization:
        return factorize(self.p + 1)

    @cached_property
    def fact_p2_minus_1(self) -> Factorization:
        merged: dict = {}
        for f in (self.fact_p_minus_1, self.fact_p_plus_1):
            for q, e in f:
                merged[q] = merged.get(q, 0) + e
        return Factorization(self.p * self.p - 1, tuple(sorted(merged.items())))

    @cached_property
    def _inv_table(self) -> np.ndarray:
        p = self.p
        if p > 1 << 24:
            raise ValueError("batched inversion only supported for p < 2**24")
        xs = np.arange(p, dtype=np.int64)
        return _batch_pow_scalar_exp(xs, p - 2, p)

    # -- base field -------------------------------------------------------

    def inv_base(self, a: Coord) -> Coord:
        if _is_array(a):
            return self._inv_table[a % self.p]
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in F_p")
        return pow(a, -1, self.p)

    def is_residue(self, a: int) -> bool:
        """True when ``a`` is a nonzero square mod p."""
        a %= self.p
        return a != 0 and pow(a, (self.p - 1) // 2, self.p) == 1

    def sqrt_base(self, a: int) -> int:
        """Tonelli-Shanks square root in F_p; raises if ``a`` is a nonresidue."""
        p = self.p
        a %= p
        if a == 0:
            return 0
        if not self.is_residue(a):
            raise ValueError(f"{a} is not a square mod {p}")
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = self.nonresidue
        m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, r = t * c % p, r * b % p
        return r

    # -- F_{p^2} ----------------------------------------------------------

    def elem(self, u: Coord, v: Coord = 0) -> QuadExtElem:
        p = self.p
        if _is_array(u) or _is_array(v):
            u = np.asarray(u, dtype=np.int64) % p
            v = np.broadcast_to(np.asarray(v, dtype=np.int64) % p, np.shape(u)).copy()
            return QuadExtElem(u, v)
        return QuadExtElem(u % p, v % p)

    @property
    def one(self) -> QuadExtElem:
        return QuadExtElem(1, 0)

    @property
    def sqrt_n(self) -> QuadExtElem:
        return QuadExtElem(0, 1)

    def add(self, x: QuadExtElem, y: QuadExtElem) -> QuadExtElem:
        p = self.p
        return QuadExtElem((x.u + y.u) % p, (x.v + y.v) % p)

    def sub(self, x: QuadExtElem, y: QuadExtElem) -> QuadExtElem:
        p = self.p
        return QuadExtElem((x.u - y.u) % p, (x.v - y.v) % p)

    def neg(self, x: QuadExtElem) -> QuadExtElem:
        p = self.p
        return QuadExtElem(-x.u % p, -x.v % p)

    def scale(self, x: QuadExtElem, c: Coord) -> QuadExtElem:
        p = self.p
        return QuadExtElem(x.u * c % p, x.v * c % p)

    def mul(self, x: QuadExtElem, y: QuadExtElem) -> QuadExtElem:
        p, n = self.p, self.nonresidue
        u = (x.u * y.u % p + (x.v * y.v % p) * n) % p
        v = (x.u * y.v % p + x.v * y.u % p) % p
        return QuadExtElem(u, v)

    def norm(self, x: QuadExtElem) -> Coord:
        """Norm to F_p, ``x * frobenius(x)``."""
        p = self.p
        return (x.u * x.u % p - (x.v * x.v % p) * self.nonresidue) % p

    def inv(self, x: QuadExtElem) -> QuadExtElem:
        ninv = self.inv_base(self.norm(x))
        p = self.p
        return QuadExtElem(x.u * ninv % p, -x.v * ninv % p)

    def pow(self, x: QuadExtElem, e) -> QuadExtElem:
        """``x**e``; ``e`` may be a nonnegative int or an int64 array."""
        if _is_array(e):
            return self._pow_array_exp(x, e)
        if e < 0:
            x, e = self.inv(x), -e
        result = self.elem(np.ones_like(x.u), 0) if _is_array(x.u) else self.one
        base = x
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    def _pow_array_exp(self, x: QuadExtElem, e: np.ndarray) -> QuadExtElem:
        e = np.asarray(e, dtype=np.int64)
        shape = np.broadcast_shapes(np.shape(x.u), e.shape)
        base = QuadExtElem(np.broadcast_to(x.u, shape), np.broadcast_to(x.v, shape))
        ru = np.ones(shape, dtype=np.int64)
        rv = np.zeros(shape, dtype=np.int64)
        e = np.broadcast_to(e, shape).copy()
        while e.any():
            bit = (e & 1).astype(bool)
            prod = self.mul(QuadExtElem(ru, rv), base)
            ru = np.where(bit, prod.u, ru)
            rv = np.where(bit, prod.v, rv)
            e >>= 1
            base = self.mul(base, base)
        return QuadExtElem(ru, rv)

    def eq(self, x: QuadExtElem, y: QuadExtElem):
        if _is_array(x.u) or _is_array(y.u):
            return (np.asarray(x.u) == y.u) & (np.asarray(x.v) == y.v)
        return x.u == y.u and x.v == y.v

    def is_zero(self, x: QuadExtElem):
        if _is_array(x.u):
            return (x.u == 0) & (x.v == 0)
        return x.u == 0 and x.v == 0

    def is_one(self, x: QuadExtElem):
        if _is_array(x.u):
            return (x.u == 1) & (x.v == 0)
        return x.u == 1 and x.v == 0

    def frobenius(self, x: QuadExtElem) -> QuadExtElem:
        return QuadExtElem(x.u, -x.v % self.p)

    def trace_to_base(self, y: QuadExtElem) -> QuadExtElem:
        return self.add(y, self.frobenius(y))

    def pi_map(self, x: QuadExtElem) -> QuadExtElem:
        """``x + 1/x``.  Zero is rejected for scalars; batches must avoid it."""
        if not _is_array(x.u) and self.is_zero(x):
            raise ZeroDivisionError("pi is only defined on nonzero elements here")
        return self.add(x, self.inv(x))

    def element_order(self, x: QuadExtElem):
        """Multiplicative order in F_{p^2}^x (elementwise for batches)."""
        if _is_array(x.u):
            return self._order_array(x)
        if self.is_zero(x):
            raise ZeroDivisionError("0 has no multiplicative order")
        order = self.p * self.p - 1
        for q, e in self.fact_p2_minus_1:
            for _ in range(e):
                if self.is_one(self.pow(x, order // q)):
                    order //= q
                else:
                    break
        return order

    def _order_array(self, x: QuadExtElem) -> np.ndarray:
        if np.any(self.is_zero(x)):
            raise ZeroDivisionError("0 has no multiplicative order")
        order = np.full(np.shape(x.u), self.p * self.p - 1, dtype=np.int64)
        for q, e in self.fact_p2_minus_1:
            for _ in range(e):
                cand = order // q
                ok = (order % q == 0) & self.is_one(self.pow(x, cand))
                if not ok.any():
                    break
                order = np.where(ok, cand, order)
        return order

    def is_square(self, y: QuadExtElem) -> bool:
        if self.is_zero(y):
            return True
        # y is a square in F_{p^2} iff its norm is a square in F_p
        return self.is_residue(self.norm(y))

    def sqrt(self, y: QuadExtElem) -> QuadExtElem:
        """A square root in F_{p^2}, found through norm equations in F_p."""
        p, n = self.p, self.nonresidue
        u, v = y.u % p, y.v % p
        if v == 0:
            if self.is_residue(u) or u == 0:
                return QuadExtElem(self.sqrt_base(u), 0)
            # u / n is then a residue: sqrt(u) = w*s with w^2 = u/n
            return QuadExtElem(0, self.sqrt_base(u * pow(n, -1, p)))
        nm = self.norm(y)
        if not self.is_residue(nm):
            raise ValueError("not a square in F_{p^2}")
        s = self.sqrt_base(nm)
        inv2 = (p + 1) // 2
        for cand in ((u + s) * inv2 % p, (u - s) * inv2 % p):
            if cand and self.is_residue(cand):
                a = self.sqrt_base(cand)
                b = v * pow(2 * a, -1, p) % p
                return QuadExtElem(a, b)
        raise AssertionError("square root search failed")  # unreachable

    def pi_fiber(self, alpha: QuadExtElem) -> List[QuadExtElem]:
        """All nonzero ``x`` in F_{p^2} with ``x + 1/x == alpha``."""
        p = self.p
        alpha = QuadExtElem(alpha.u % p, alpha.v % p)
        disc = self.sub(self.mul(alpha, alpha), QuadExtElem(4, 0))
        half = (p + 1) // 2
        if self.is_zero(disc):
            return [self.scale(alpha, half)]
        if not self.is_square(disc):
            return []
        r = self.sqrt(disc)
        return [
            self.scale(self.add(alpha, r), half),
            self.scale(self.sub(alpha, r), half),
        ]

    # -- enumeration helpers ---------------------------------------------

    def units(self) -> QuadExtElem:
        """Every nonzero element of F_{p^2} as a batch, ordered by ``u*p + v``."""
        p = self.p
        idx = np.arange(1, p * p, dtype=np.int64)
        return QuadExtElem(idx // p, idx % p)

    def encode(self, x: QuadExtElem):
        return x.u * self.p + x.v

    def decode(self, code) -> QuadExtElem:
        return QuadExtElem(code // self.p, code % self.p)


def _batch_pow_scalar_exp(xs: np.ndarray, e: int, p: int) -> np.ndarray:
    result = np.ones_like(xs)
    base = xs % p
    while e:
        if e & 1:
            result = result * base % p
        e >>= 1
        base = base * base % p
    return result


@lru_cache(maxsize=256)
def make_ctx(p: int) -> PrimeFieldCtx:
    return PrimeFieldCtx(p)


class QuarticCtx:
    """F_{p^4} as F_{p^2}[t]/(t^2 - c) with ``c`` a nonsquare of F_{p^2}.

    Only what the norm-one subgroup checks need: multiply, power, inverse.
    Elements are pairs of :class:`QuadExtElem`.
    """

    def __init__(self, base: PrimeFieldCtx):
        self.base = base
        p = base.p
        for code in range(p + 1, p * p):
            c = base.decode(code)
            if not base.is_square(c):
                self.c = c
                break

    def mul(self, x, y):
        b = self.base
        a0 = b.add(b.mul(x[0], y[0]), b.mul(b.mul(x[1], y[1]), self.c))
        a1 = b.add(b.mul(x[0], y[1]), b.mul(x[1], y[0]))
        return (a0, a1)

    def pow(self, x, e):
        b = self.base
        if _is_array(e):
            e = np.asarray(e, dtype=np.int64)
            shape = np.broadcast_shapes(np.shape(x[0].u), e.shape)
            one = (b.elem(np.ones(shape, dtype=np.int64)), b.elem(np.zeros(shape, dtype=np.int64)))
            x = tuple(QuadExtElem(*(np.broadcast_to(c, shape) for c in z)) for z in x)
            result = one
            e = np.broadcast_to(e, shape).copy()
            while e.any():
                bit = (e & 1).astype(bool)
                prod = self.mul(result, x)
                result = tuple(
                    QuadExtElem(np.where(bit, pz.u, rz.u), np.where(bit, pz.v, rz.v))
                    for pz, rz in zip(prod, result)
                )
                e >>= 1
                x = self.mul(x, x)
            return result
        result = (b.one, QuadExtElem(0, 0))
        while e:
            if e & 1:
                result = self.mul(result, x)
            e >>= 1
            if e:
                x = self.mul(x, x)
        return result

    def inv(self, x):
        b = self.base
        nrm = b.sub(b.mul(x[0], x[0]), b.mul(b.mul(x[1], x[1]), self.c))
        ninv = b.inv(nrm)
        return (b.mul(x[0], ninv), b.neg(b.mul(x[1], ninv)))

    def is_one(self, x) -> bool:
        b = self.base
        return b.is_one(x[0]) and b.is_zero(x[1])

    def pi_map(self, x):
        y = self.inv(x)
        b = self.base
        return (b.add(x[0], y[0]), b.add(x[1], y[1]))
