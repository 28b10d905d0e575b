"""
Primes that push the ratio down
===============================

For d = 6 over Q, ask for q = 1 (mod 9) and q = -1 (mod 8); then 9 | q-1 and
8 | q+1, and the proportion of periodic points drops below 1/9 + 1/8 halves.
"""

from fractions import Fraction

from perred import witness

system = witness.build_witness_system(6, 2, {3: 2, 2: 3})
print("congruences:", system.congruences, " solution:", system.solution)

res = witness.find_witness_primes(system, 8, 10**5)
for rec in res.records:
    print(f"{rec.q:6d}  r-={rec.r_minus:5d}  r+={rec.r_plus:5d}  ratio={rec.ratio_text} ~ {float(rec.ratio):.4f}")

# bigger moduli give smaller ratios
system = witness.build_witness_system(6, 2, {3: 4, 2: 8})
res = witness.find_witness_primes(system, 5, 10**8)
print("mod 81 and 256:", [(r.q, round(float(r.ratio), 5)) for r in res.records])

# the running minimum over every prime, against the classified value 0
best = witness.liminf_scan(6, 2, 200_000)
print("running minimum up to 2e5:", best, "~", float(best))
print("d = 3 stays near 1/2:", float(witness.liminf_scan(3, 2, 200_000)))
print("first prime with ratio below 1/100:",
      next(r.q for r in witness.scan_records(6, 2, 10**6) if r.ratio < Fraction(1, 100)))
