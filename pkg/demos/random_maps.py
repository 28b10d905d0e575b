"""
Random maps as a baseline
=========================

A random self-map of n points has about sqrt(pi n / 2) periodic points.
"""

import math

import numpy as np

from perred import dynamics
from perred.chebyshev import periodic_count_bruteforce
from perred.randmap import sample_and_measure, sample_map

# one map, its cycles and tails
img = sample_map(20, seed=0, index=0)
mask, summary = dynamics.periodic_set(20, img)
print("map:", img.tolist())
print("periodic:", np.flatnonzero(mask).tolist(), " cycles:", dict(summary.cycle_lengths))

for n in (100, 1000, 10000):
    st = sample_and_measure(n, 200, seed=1)
    print(f"n={n:6d} mean={st.mean:8.2f} std={st.std:6.2f} sqrt(pi n/2)={st.reference:8.2f}")

# a Chebyshev map is far from random: T_6 mod 10007 keeps many more points
p = 10007
k = len(periodic_count_bruteforce(p, 6)[0])
print(f"T_6 mod {p}: {k} periodic points vs {math.sqrt(math.pi * p / 2):.1f} for a random map")
