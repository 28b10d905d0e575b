"""
Recognising disguised Chebyshev polynomials
===========================================

2x^3 - 3x is T_3(a x)/a with a = sqrt 2.  Mod p it behaves like T_3 whether
or not 2 is a square.
"""

from fractions import Fraction

from perred import conjugacy

f = conjugacy.parse_poly("2*x^3 - 3*x")
print("f =", f)
print(conjugacy.detect_chebyshev_conjugacy(f).to_dict())

# a shifted and rescaled T_5 built by hand, then recovered
g = conjugacy.synthesize(5, -1, a_squared=Fraction(3, 2), b=Fraction(1, 3))
print("g =", g)
print(conjugacy.detect_chebyshev_conjugacy(g).to_dict())

# x^2 + c is Chebyshev only at c = -2
print([c for c in range(-5, 6) if conjugacy.detect_chebyshev_conjugacy(conjugacy.RationalPoly([c, 0, 1])).conjugate])

# counts mod p in both regimes
det = conjugacy.detect_chebyshev_conjugacy(f)
for p in (5, 7, 13, 17, 19, 23):
    pred = conjugacy.conjugate_periodic_count(det, p)
    brute = len(conjugacy.poly_periodic_set(f, p)[0])
    print(f"p={p:2d} {pred.regime:5s} brute={brute:2d} predicted={pred.predicted:2d}"
          f" with inert -1 correction={pred.published_predicted:2d}")
