"""
x + 1/x turns powers into Chebyshev maps
========================================

Check T_d(x + 1/x) = x^d + 1/x^d on every unit of F_{p^2}.
"""

import numpy as np

from perred.chebyshev import cheb_eval_ext
from perred.finitefield import make_ctx

p = 31
ctx = make_ctx(p)
print(ctx)

# every nonzero element of F_{p^2}, as one batch
units = ctx.units()
pi = ctx.pi_map(units)

for d in range(2, 7):
    lhs = cheb_eval_ext(d, pi, ctx)
    rhs = ctx.pi_map(ctx.pow(units, d))
    print(f"d={d}: identity holds on all {units.u.size} units:", bool(np.all(ctx.eq(lhs, rhs))))

# which units land in F_p?  F_p^x together with the norm-one elements other than +-1
lands = pi.v == 0
base = units.v == 0
norm_one = (ctx.norm(units) == 1) & ~base
print("units with x + 1/x in F_p:", int(lands.sum()), "= 2(p-1) =", 2 * (p - 1))
print("split as", int(base.sum()), "+", int(norm_one.sum()))

# fibre of x + 1/x over a point of F_p
for a in (2, 5, p - 2):
    fib = ctx.pi_fiber(ctx.elem(a))
    print(f"preimages of {a}:", [tuple(int(c) for c in b) for b in fib])
