"""
Threshold and delta functions
=============================

The codebook size is a plain binomial for thresholds and a sum of two
for deltas, and the fooling-set bound meets it exactly.
"""

import math

from boolcomm import codebook_size, construct_family, lower_bound_bits, make_delta, make_threshold

n = 8
print("theta  A(threshold)  C(n+1,theta)  A(delta)  bound(delta)")
for theta in range(n + 1):
    A_t = codebook_size(make_threshold(n, theta))
    A_d = codebook_size(make_delta(n, theta))
    fam = construct_family(make_delta(n, theta))
    print(f"{theta:5d} {A_t:13d} {math.comb(n + 1, theta):13d} {A_d:9d} {fam.size_per_column:13d}")

# bits per instance for a majority vote among 25 nodes
f = make_threshold(25, 13)
print("majority of 25:", math.log2(codebook_size(f)), "bits, lower bound", lower_bound_bits(construct_family(f)))
