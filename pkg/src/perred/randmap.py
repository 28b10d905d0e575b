"""Random-map baseline: periodic points of uniform self-maps of ``[0, n)``.

A uniformly random map on n points has about ``sqrt(pi n / 2)`` periodic
points.  Sample ``i`` draws its map from ``numpy.random.default_rng([seed, i])``
so results do not depend on how samples are spread over workers.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from typing import List, NamedTuple

import numpy as np

from . import dynamics


class RandMapStats(NamedTuple):
    n: int
    samples: int
    mean: float
    std: float
    reference: float
    counts: List[int]


def sample_map(n: int, seed: int, index: int) -> np.ndarray:
    rng = np.random.default_rng([seed, index])
    return rng.integers(0, n, size=n, dtype=np.int64)


def _periodic_count(args) -> int:
    n, seed, index = args
    _, summary = dynamics.periodic_set(n, sample_map(n, seed, index))
    return summary.periodic_count


def sample_and_measure(n: int, samples: int, seed: int = 0, jobs: int = 1) -> RandMapStats:
    if n < 1 or samples < 1:
        raise ValueError("n and samples must be positive")
    dynamics.check_budget(n)
    tasks = [(n, seed, i) for i in range(samples)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            counts = list(pool.map(_periodic_count, tasks, chunksize=max(1, samples // (4 * jobs))))
    else:
        counts = [_periodic_count(t) for t in tasks]
    arr = np.asarray(counts, dtype=np.float64)
    return RandMapStats(
        n,
        samples,
        float(arr.mean()),
        float(arr.std(ddof=1)) if samples > 1 else 0.0,
        math.sqrt(math.pi * n / 2),
        counts,
    )
