"""
AND of two nodes over a block of instances
==========================================

Two nodes each hold N bits and both want the N pairwise ANDs.  The
block strategy costs ceil(N log2 3) bits in the worst case.
"""

import math

from boolcomm import MeasurementMatrix, make_threshold, run, worst_case_bits

f = make_threshold(2, 2)

# a single block, step by step
M = MeasurementMatrix.from_strings(["1011", "1101"])
tr = run(f, M)
for e in tr.events:
    print(f"node {e.node} (depth {e.depth}, group {e.group_ones}) sends {e.bits!r}")
print("answer at every node:", tr.outputs[0], "bits used:", tr.total_bits)

# worst case against ceil(N log2 3), all inputs checked
for N in range(1, 9):
    wc = worst_case_bits(f, N)
    print(N, wc.max_bits, math.ceil(N * math.log2(3)), round(wc.max_bits / N, 4))
print("limit:", math.log2(3))
