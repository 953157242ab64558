"""
Fixed intervals and percentiles as n grows
==========================================

The residual term in the interval bounds shrinks against the main
binomial, so the bounds pin down the rate to first order.
"""

import math

from boolcomm import codebook_size, diagnostics, make_union, percentile_interval, residual_ratio, union_asymptotic

for n in (10, 20, 40, 80, 160):
    d = diagnostics(n, 2, 3)
    print(f"n={n:4d}  gap={d.gap:.5f}  ratio={float(d.residual_ratio):.3g}")

for n in (50, 100, 200, 400):
    a, b = percentile_interval(n, 0.2, 0.4)
    print(f"n={n:4d}  [{a},{b}]  ratio={float(residual_ratio(n, a, b)):.3g}")

intervals = [(20, 40), (120, 140)]
f = make_union(200, intervals)
print("union:", math.log2(codebook_size(f)), "vs", union_asymptotic(200, intervals))
