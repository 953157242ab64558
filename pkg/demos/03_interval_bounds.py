"""
Interval functions
==================

For [a, b] the exact rate is only sandwiched; the gap never exceeds
log2(b - a + 2) bits.
"""

import math

import numpy as np

from boolcomm import codebook_size, interval_bounds, make_interval

n = 12
gaps = np.zeros((n + 1, n + 1))
for a in range(1, n + 1):
    for b in range(a, n + 1):
        lo, hi = interval_bounds(n, a, b)
        exact = math.log2(codebook_size(make_interval(n, a, b)))
        assert lo - 1e-9 <= exact <= hi + 1e-9
        gaps[a, b] = hi - lo

np.set_printoptions(precision=2, suppress=True, linewidth=120)
print(gaps[1:, 1:])
a, b = np.unravel_index(gaps.argmax(), gaps.shape)
print("widest gap at", (int(a), int(b)), "allowed", math.log2(b - a + 2))
