"""
Periodic points of Chebyshev maps mod p
=======================================

Count the points of F_p that lie on a cycle of T_d, three ways.
"""

from perred import chebyshev
from perred.numtheory import coprime_part

# T_3(x) = x^3 - 3x; its functional graph mod 7
pts, summary = chebyshev.periodic_count_bruteforce(7, 3)
print("periodic points of T_3 mod 7:", sorted(pts))
print("cycle lengths:", dict(summary.cycle_lengths), " longest tail:", summary.max_tail)

# the same set through x + 1/x and multiplicative orders
print("via orders:", sorted(chebyshev.periodic_set_by_orders(7, 3)))

# and the count from the coprime parts of p - 1 and p + 1
p, d = 7, 3
print("(r(p-1,d) + r(p+1,d))/2 =", (coprime_part(p - 1, d) + coprime_part(p + 1, d)) // 2)

# a small table: brute force against the closed form
print()
print(" p   d  brute  formula  published-variant")
for p in (11, 13, 101, 127):
    for d in (2, 3, 6):
        brute = len(chebyshev.periodic_count_bruteforce(p, d)[0])
        print(f"{p:3d} {d:3d} {brute:6d} {chebyshev.closed_form_count(p, d):8d}"
              f" {chebyshev.closed_form_count(p, d, 'published'):18d}")

# the proportion shrinks when q-1 and q+1 are both rich in primes of d
print()
print("ratios for d = 6:", [str(chebyshev.ratio(q, 6)) for q in (127, 199, 271, 487)])
