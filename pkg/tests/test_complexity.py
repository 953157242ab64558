import math
from functools import lru_cache

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boolcomm.complexity import (
    CodebookSizeTable,
    codebook_size,
    delta_complexity,
    diagnostics,
    interval_bounds,
    percentile_interval,
    rate,
    rate_csv,
    residual_ratio,
    threshold_complexity,
    union_asymptotic,
)
from boolcomm.errors import DomainError
from boolcomm.symfunc import (
    SymmetricFunction,
    constant_value,
    make_delta,
    make_interval,
    make_levels,
    make_threshold,
    make_union,
    reflect,
    residual,
)

C = math.comb


@lru_cache(maxsize=None)
def naive_size(f):
    # Independent of the table: recurse on residual functions directly.
    if constant_value(f) is not None:
        return 1
    if f.n == 1:
        return 2
    return naive_size(residual(f, 0)) + naive_size(residual(f, 1))


def test_codebook_size_examples():
    assert codebook_size(make_threshold(2, 2)) == 3
    assert codebook_size(make_threshold(5, 2)) == 15 == C(6, 2)
    assert codebook_size(make_delta(2, 1)) == 4 == C(3, 1) + C(2, 2)
    for n in (1, 5, 40):
        assert codebook_size(make_threshold(n, 0)) == 1


@pytest.mark.parametrize("n", range(1, 9))
def test_codebook_size_matches_naive_recursion(n):
    for mask in range(1 << (n + 1)):
        f = SymmetricFunction(n, mask)
        assert codebook_size(f) == naive_size(f)


@settings(max_examples=40, deadline=None)
@given(st.integers(9, 16).flatmap(lambda n: st.builds(SymmetricFunction, st.just(n),
                                                       st.integers(0, (1 << (n + 1)) - 1))))
def test_codebook_size_matches_naive_recursion_sampled(f):
    assert codebook_size(f) == naive_size(f)


def test_table_invariants():
    f = make_interval(9, 2, 5)
    t = CodebookSizeTable(f)
    assert t.root == codebook_size(f)
    for k in range(f.n):
        for j in range(k + 1):
            if t.constant(k, j) is not None:
                assert t[k, j] == 1
            else:
                assert t[k, j] == t[k + 1, j] + t[k + 1, j + 1] > 1
    assert t.A[f.n] == [1] * (f.n + 1)


def test_threshold_complexity():
    assert threshold_complexity(2, 2) == pytest.approx(1.584962500721156, abs=1e-12)
    assert threshold_complexity(7, 1) == 3.0
    assert threshold_complexity(4, 0) == 0.0
    with pytest.raises(DomainError):
        threshold_complexity(3, 5)


def test_delta_complexity():
    assert delta_complexity(4, 2) == pytest.approx(math.log2(14), abs=1e-12)
    assert delta_complexity(2, 1) == 2.0
    assert delta_complexity(1, 0) == 1.0
    assert codebook_size(make_delta(1, 0)) == 2


def test_interval_bounds_example():
    lo, hi = interval_bounds(4, 1, 2)
    assert lo == pytest.approx(math.log2(11), abs=1e-12)
    assert hi == pytest.approx(math.log2(12), abs=1e-12)


def test_interval_bounds_reduce_to_thresholds():
    lo, hi = interval_bounds(4, 3, 4)
    assert lo == hi == pytest.approx(math.log2(C(5, 3)), abs=1e-12)
    lo, hi = interval_bounds(6, 0, 2)  # complement of threshold 3
    assert lo == hi == pytest.approx(math.log2(C(7, 3)), abs=1e-12)


def test_interval_bounds_domain():
    with pytest.raises(DomainError):
        interval_bounds(4, 3, 2)
    with pytest.raises(DomainError):
        interval_bounds(4, 1, 5)


def test_interval_n10_sandwich():
    lo, hi = interval_bounds(10, 2, 3)
    # a + b <= n branch, from exact binomials
    assert lo == pytest.approx(math.log2(C(11, 4) + C(10, 1)), abs=1e-12)
    assert hi == pytest.approx(math.log2(C(11, 4) + 2 * C(10, 1)), abs=1e-12)
    A = math.log2(codebook_size(make_interval(10, 2, 3)))
    assert lo <= A <= hi + 1e-9


def test_union_asymptotic_examples():
    assert union_asymptotic(6, [(1, 2)]) == pytest.approx(math.log2(35), abs=1e-12)
    assert union_asymptotic(6, [(5, 6)]) == pytest.approx(math.log2(C(7, 5)), abs=1e-12)
    assert union_asymptotic(20, [(1, 2), (18, 19)]) == pytest.approx(
        math.log2(C(21, 3) + C(21, 18)), abs=1e-12)
    with pytest.raises(DomainError):
        union_asymptotic(6, [(1, 3), (2, 4)])


def test_diagnostics_example():
    d = diagnostics(4, 1, 2)
    assert d.gap == pytest.approx(math.log2(12) - math.log2(11), abs=1e-12)
    assert d.gap <= math.log2(3)


def test_residual_ratio_fixed_interval_decreasing():
    ratios = [residual_ratio(n, 2, 3) for n in (10, 20, 40)]
    assert ratios[0] > ratios[1] > ratios[2]


def test_residual_ratio_percentile_decreasing():
    ratios = []
    for n in (50, 100, 200):
        a, b = percentile_interval(n, 0.2, 0.4)
        ratios.append(residual_ratio(n, a, b))
    assert ratios[0] > ratios[1] > ratios[2]


def test_residual_ratio_mirrored_branch():
    # a + b > n uses the C(n, b+1) / C(n+1, a) form
    assert residual_ratio(10, 7, 8) == pytest.approx(2 * C(10, 9) / C(11, 7))


# -- invariants ---------------------------------------------------------------


def test_pascal_closure():
    for n in range(1, 26):
        for theta in range(n + 2):
            assert codebook_size(make_threshold(n, theta)) == C(n + 1, theta)


def test_delta_closure():
    for n in range(1, 26):
        for theta in range(n + 1):
            assert codebook_size(make_delta(n, theta)) == C(n + 1, theta) + (C(n, theta + 1) if theta < n else 0)


def test_delta_fooling_size_matches_formula():
    # C(n, t-1) + C(n, t) + C(n, t+1) == C(n+1, t) + C(n, t+1) by Pascal's rule
    for n in range(1, 26):
        for t in range(1, n + 1):
            assert C(n, t - 1) + C(n, t) + C(n, t + 1) == C(n + 1, t) + C(n, t + 1)


def test_sandwich_and_gap():
    for n in range(1, 16):
        for a in range(1, n + 1):
            for b in range(a, n + 1):
                lo, hi = interval_bounds(n, a, b)
                A = math.log2(codebook_size(make_interval(n, a, b)))
                assert lo <= A + 1e-9 and A <= hi + 1e-9, (n, a, b)
                assert hi - lo <= math.log2(b - a + 2) + 1e-9


def test_both_branches_agree_at_a_plus_b_equal_n():
    for n in range(2, 30):
        for a in range(1, n // 2 + 1):
            b = n - a
            upper1 = C(n + 1, b + 1) + (b - a + 1) * C(n, a - 1)
            upper2 = C(n + 1, a) + (b - a + 1) * C(n, b + 1)
            assert upper1 == upper2


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 40).flatmap(lambda n: st.builds(SymmetricFunction, st.just(n),
                                                       st.integers(0, (1 << (n + 1)) - 1))))
def test_reflection_symmetry(f):
    assert codebook_size(f) == codebook_size(reflect(f))


@pytest.mark.parametrize("intervals", [
    [(40, 80)],
    [(20, 40), (120, 140)],
    [(10, 30), (60, 90)],
    [(50, 60), (100, 110), (150, 160)],
    [(130, 170)],
])
def test_union_consistency_n200(intervals):
    ratio = math.log2(codebook_size(make_union(200, intervals))) / union_asymptotic(200, intervals)
    assert 0.95 <= ratio <= 1.05


# -- rate summaries -----------------------------------------------------------


def test_rate_exact_for_thresholds_and_deltas():
    for n in range(1, 12):
        for t in range(n + 2):
            assert rate(make_threshold(n, t)).exact
        for t in range(n + 1):
            assert rate(make_delta(n, t)).exact


def test_rate_interval_not_exact():
    r = rate(make_interval(4, 1, 2))
    assert not r.exact
    assert r.lower_bound == pytest.approx(math.log2(11))
    assert r.achievable == pytest.approx(math.log2(12))
    assert r.upper_bound == pytest.approx(math.log2(12))


def test_rate_union_uses_transition_bound():
    f = make_union(6, [(1, 2), (4, 4)])
    r = rate(f)
    # value changes at counts 1, 3, 4, 5; the largest C(7, t) is C(7, 3) = C(7, 4) = 35
    assert r.lower_bound == pytest.approx(math.log2(35))
    assert r.upper_bound == r.achievable == pytest.approx(math.log2(codebook_size(f)))


def test_rate_constant():
    r = rate(make_levels(3, [0, 1, 2, 3]))
    assert (r.lower_bound, r.achievable, r.upper_bound, r.exact) == (0.0, 0.0, 0.0, True)


def test_rate_csv_format():
    text = rate_csv([rate(make_threshold(2, 2)), rate(make_interval(4, 1, 2))])
    lines = text.splitlines()
    assert lines[0] == "kind,n,theta_or_a,b,lower_bits,achievable_bits,upper_bits,exact"
    assert lines[1] == "threshold,2,2,,1.58496250072,1.58496250072,1.58496250072,true"
    assert lines[2] == "interval,4,1,2,3.45943161864,3.58496250072,3.58496250072,false"
