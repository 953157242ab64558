"""
Fooling sets by brute force
===========================

Check the column families behind the lower bounds, and see one that
does not fool.
"""

from boolcomm import construct_family, family, make_delta, make_interval, make_threshold, verify_fooling

for f in [make_threshold(2, 2), make_threshold(3, 2), make_delta(4, 2), make_interval(4, 1, 2)]:
    fam = construct_family(f)
    v = verify_fooling(f, fam, N=2)
    print(f, fam.weights, fam.size_per_column, v.valid, v.single_row_sufficient)

# columns of weight 2 and 3 do not fool "at least 2 of 3"
v = verify_fooling(make_threshold(3, 2), family(3, [2, 3]), N=1)
print("valid:", v.valid)
print("M1 =", v.counterexample[0], "M2 =", v.counterexample[1])
