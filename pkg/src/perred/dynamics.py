"""Periodic points of self-maps of a finite set ``{0, ..., m-1}``.

A map is given either as an integer array of images or as a callable; the
periodic set is found by in-degree peeling (delete points nobody maps to,
repeat), which leaves exactly the union of the cycles.
"""
from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Sequence, Tuple, Union

import numpy as np

MapLike = Union[np.ndarray, Sequence[int], Callable[[int], int]]

DEFAULT_MEMORY_MB = 1024


class DomainTooLarge(ValueError):
    """Raised when a brute-force domain exceeds the memory budget."""


def max_domain() -> int:
    """Largest brute-force domain allowed, from ``PERRED_MEMORY_MB`` (8 bytes per point)."""
    mb = int(os.environ.get("PERRED_MEMORY_MB", DEFAULT_MEMORY_MB))
    return mb * (1 << 20) // 8


def check_budget(m: int) -> None:
    cap = max_domain()
    if m > cap:
        raise DomainTooLarge(f"domain of size {m} exceeds budget {cap} (PERRED_MEMORY_MB)")


@dataclass(frozen=True)
class OrbitSummary:
    domain_size: int
    periodic_count: int
    cycle_lengths: Counter = field(compare=True)
    max_tail: int

    def __post_init__(self):
        total = sum(k * c for k, c in self.cycle_lengths.items())
        if total != self.periodic_count:
            raise ValueError("cycle lengths do not sum to the periodic count")

    @property
    def cycle_count(self) -> int:
        return sum(self.cycle_lengths.values())


def as_image_array(m: int, f: MapLike) -> np.ndarray:
    """Materialize ``f`` on ``[0, m)`` and validate its range."""
    check_budget(m)
    if callable(f):
        img = np.fromiter((f(x) for x in range(m)), dtype=np.int64, count=m)
    else:
        img = np.asarray(f, dtype=np.int64)
        if img.shape != (m,):
            raise ValueError(f"map array has shape {img.shape}, expected ({m},)")
    if m and (img.min() < 0 or img.max() >= m):
        bad = int(np.flatnonzero((img < 0) | (img >= m))[0])
        raise ValueError(f"map sends {bad} to {int(img[bad])}, outside [0, {m})")
    return img


def _peel(img: np.ndarray) -> Tuple[np.ndarray, int]:
    m = img.size
    indeg = np.bincount(img, minlength=m)
    alive = np.ones(m, dtype=bool)
    frontier = np.flatnonzero(indeg == 0)
    rounds = 0
    while frontier.size:
        rounds += 1
        alive[frontier] = False
        targets, counts = np.unique(img[frontier], return_counts=True)
        indeg[targets] -= counts
        frontier = targets[indeg[targets] == 0]
    return alive, rounds


def cycle_structure(m: int, f: MapLike, mask: np.ndarray) -> Counter:
    """Multiset ``{length: how many cycles}`` of the cycles inside ``mask``.

    On the periodic set the map is a permutation; each point is labelled by
    the smallest point on its cycle using pointer doubling.
    """
    img = f if isinstance(f, np.ndarray) else as_image_array(m, f)
    pts = np.flatnonzero(mask)
    if pts.size == 0:
        return Counter()
    label = pts.copy()
    jump = img[pts]
    pos = np.full(m, -1, dtype=np.int64)
    pos[pts] = np.arange(pts.size)
    jump = pos[jump]
    if np.any(jump < 0):
        raise ValueError("mask is not closed under the map")
    span = 1
    while span < pts.size:
        label = np.minimum(label, label[jump])
        jump = jump[jump]
        span *= 2
    _, sizes = np.unique(label, return_counts=True)
    return Counter(sizes.tolist())


def periodic_set(m: int, f: MapLike) -> Tuple[np.ndarray, OrbitSummary]:
    """Boolean mask of the periodic points of ``f`` and its :class:`OrbitSummary`.

    >>> mask, s = periodic_set(5, lambda x: (x * x - 2) % 5)
    >>> np.flatnonzero(mask).tolist(), s.max_tail
    ([2, 4], 2)
    """
    img = as_image_array(m, f)
    if m == 0:
        return np.zeros(0, dtype=bool), OrbitSummary(0, 0, Counter(), 0)
    mask, rounds = _peel(img)
    cycles = cycle_structure(m, img, mask)
    return mask, OrbitSummary(m, int(mask.sum()), cycles, rounds)


def is_periodic_point(x: int, f: Callable[[int], int]) -> bool:
    """Brent cycle detection from ``x``; periodic iff the cycle returns to ``x``."""
    power = lam = 1
    tortoise, hare = x, f(x)
    while tortoise != hare:
        if power == lam:
            tortoise = hare
            power *= 2
            lam = 0
        hare = f(hare)
        lam += 1
    y = x
    for _ in range(lam):
        y = f(y)
    return y == x
