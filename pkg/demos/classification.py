"""
Liminf of the periodic proportion
=================================

The limiting value depends on d and on m_K, the number of roots of unity
in the field.
"""

from perred.classify import perinf_chebyshev, perinf_polynomial
from perred.conjugacy import parse_poly

# over Q (m_K = 2): 1/2 at odd prime powers, 1/4 at powers of 2, else 0
row = {d: str(perinf_chebyshev(d, 2).value) for d in range(2, 21)}
print(row)

# larger fields can lift the value back up
for d, m in [(6, 2), (6, 6), (6, 12), (15, 2), (15, 30)]:
    out = perinf_chebyshev(d, m)
    print(f"d={d:2d} m_K={m:2d}  case {out.case_id:2d}  value {out.value}")

# polynomials with rational coefficients
for text in ["5", "3*x + 1", "x^2 + 1", "2*x^3 - 3*x", "x^2 - 2"]:
    out = perinf_polynomial(parse_poly(text))
    print(f"{text:12s} -> case {out.case_id}, value {out.value}")
