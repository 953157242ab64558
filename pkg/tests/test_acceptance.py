"""Acceptance criteria, one test each.

Every test prints a PASS/FAIL line as it finishes, and the same lines are
collected in an "acceptance criteria" section at the end of the pytest run.
"""

import math
import time
from contextlib import contextmanager

import pytest

from boolcomm.complexity import codebook_size, diagnostics, interval_bounds, percentile_interval, residual_ratio
from boolcomm.foolingset import construct_family, family, lower_bound_bits, verify_fooling
from boolcomm.prefixcode import code_for, kraft_check, profile_for
from boolcomm.protocol import strategy_for, verify, worst_case_bits
from boolcomm.symfunc import make_delta, make_interval, make_threshold, make_union

from conftest import ACCEPTANCE

C = math.comb
TOL = 1e-9
AND2 = make_threshold(2, 2)
UNION = make_union(6, [(1, 2), (4, 4)])


@contextmanager
def criterion(k, title):
    note = {"detail": ""}
    t0 = time.perf_counter()
    try:
        yield note
    except BaseException as e:
        ACCEPTANCE[k] = (title, False, f"{type(e).__name__}: {e}")
        print(f"[FAIL] AC{k} {title}: {e}")
        raise
    detail = f"{note['detail']} ({time.perf_counter() - t0:.1f}s)"
    ACCEPTANCE[k] = (title, True, detail)
    print(f"[PASS] AC{k} {title}: {detail}")


def small_functions(max_n):
    for n in range(1, max_n + 1):
        for t in range(n + 2):
            yield make_threshold(n, t)
        for t in range(n + 1):
            yield make_delta(n, t)
        for a in range(n + 1):
            for b in range(a, n + 1):
                yield make_interval(n, a, b)


def construction_families(max_n):
    for n in range(1, max_n + 1):
        for t in range(1, n + 1):
            yield make_threshold(n, t)
        for t in range(n + 1):
            yield make_delta(n, t)
        for a in range(1, n + 1):
            for b in range(a, n + 1):
                yield make_interval(n, a, b)


def test_ac1_and2_block_of_ten():
    with criterion(1, "AND2 at N=10, all 4^10 inputs") as note:
        rep = verify(AND2, 10, mode="brute")
        assert rep.inputs == 4 ** 10 == rep.runs
        assert rep.failures == 0
        assert rep.max_bits == math.ceil(10 * math.log2(3)) == 16
        fast = verify(AND2, 10)
        assert (fast.inputs, fast.failures, fast.max_bits) == (rep.inputs, 0, 16)
        note["detail"] = rep.summary()


def test_ac2_threshold_exactness():
    with criterion(2, "threshold codebook = C(n+1, theta), n <= 25") as note:
        cases = 0
        for n in range(1, 26):
            for t in range(n + 2):
                assert codebook_size(make_threshold(n, t)) == C(n + 1, t), (n, t)
                cases += 1
                if 1 <= t <= n:
                    fam = construct_family(make_threshold(n, t))
                    assert fam.size_per_column == C(n, t - 1) + C(n, t) == C(n + 1, t)
                    assert lower_bound_bits(fam) == math.log2(C(n + 1, t))
        assert cases == 375
        note["detail"] = f"{cases} cases exact"


def test_ac3_delta_exactness():
    with criterion(3, "delta codebook = C(n+1, theta) + C(n, theta+1), n <= 25") as note:
        cases = 0
        for n in range(1, 26):
            for t in range(n + 1):
                assert codebook_size(make_delta(n, t)) == C(n + 1, t) + C(n, t + 1), (n, t)
                cases += 1
        note["detail"] = f"{cases} cases exact"


def test_ac4_interval_sandwich():
    with criterion(4, "interval sandwich and gap, n <= 15") as note:
        cases = 0
        worst = 0.0
        for n in range(1, 16):
            for a in range(1, n + 1):
                for b in range(a, n + 1):
                    lo, hi = interval_bounds(n, a, b)
                    A = math.log2(codebook_size(make_interval(n, a, b)))
                    assert lo <= A + TOL and A <= hi + TOL, (n, a, b)
                    assert hi - lo <= math.log2(b - a + 2) + TOL, (n, a, b)
                    worst = max(worst, hi - lo)
                    cases += 1
        note["detail"] = f"{cases} intervals, largest gap {worst:.4f} bits"


def test_ac5_zero_error_suite():
    with criterion(5, "zero-error protocol suite") as note:
        runs = inputs = 0
        for f in small_functions(4):
            for N in (1, 2, 3):
                rep = verify(f, N)
                assert rep.ok and rep.inputs == 2 ** (f.n * N), (str(f), N)
                runs += 1
                inputs += rep.inputs
        sampled = verify(UNION, 2, mode="sampled", trials=100_000, seed=20240601)
        assert sampled.inputs == 100_000 and sampled.failures == 0
        note["detail"] = f"{runs} exhaustive checks over {inputs} inputs; union: {sampled.summary()}"


def test_ac6_rate_convergence():
    with criterion(6, "worst-case rates") as note:
        for N in range(1, 13):
            wc = worst_case_bits(AND2, N)
            assert wc.max_bits == math.ceil(N * math.log2(3)), N
        f = make_threshold(3, 2)
        rates = []
        for N in range(1, 5):
            r = worst_case_bits(f, N).max_bits / N
            assert math.log2(6) - TOL <= r <= math.log2(6) + 3 / N + TOL, (N, r)
            rates.append(r)
        note["detail"] = f"AND2 exact for N=1..12; threshold(3,2) rates {rates}"


def test_ac7_kraft_and_round_trips():
    with criterion(7, "Kraft exactness and code round trips") as note:
        # every node the strategies of criteria 1-6 can reach, at every group size they can use
        workload = [(AND2, 12), (make_threshold(3, 2), 4), (UNION, 2)]
        workload += [(f, 3) for f in small_functions(4)]
        codes = set()
        for f, N_max in workload:
            t = strategy_for(f).table
            for k in range(f.n):
                for j in range(k + 1):
                    if t.constant(k, j) is None:
                        for size in range(1, N_max + 1):
                            codes.add((t[k, j], *t.children(k, j), size))
        for A, A0, A1, size in codes:
            assert kraft_check(profile_for(A, A0, A1, size)), (A, A0, A1, size)
        # the codes actually built while simulating are among them
        built = 0
        for f, _ in workload:
            s = strategy_for(f)
            for (k, j, size), code in s.codes().items():
                assert (s.table[k, j], *s.table.children(k, j), size) in codes
                assert kraft_check(code.profile)
                built += 1
        blocks = 0
        for A, A0, A1, size in codes:
            code = code_for(A, A0, A1, size)
            for block, cw in code.codewords():
                assert code.encode(block) == cw
                assert code.decode(cw) == (block, len(cw))
                blocks += 1
        note["detail"] = f"{len(codes)} profiles Kraft-feasible ({built} built during runs); {blocks} blocks round-trip"


def test_ac8_fooling_verification():
    with criterion(8, "fooling sets, n <= 5, N <= 2") as note:
        checked = 0
        for f in construction_families(5):
            fam = construct_family(f)
            for N in (1, 2):
                assert verify_fooling(f, fam, N).valid, (str(f), N)
                checked += 1
        # {0, n} for OR: not a failure, but a weaker bound than the construction
        for n in range(2, 6):
            weak = family(n, [0, n])
            assert verify_fooling(make_threshold(n, 1), weak, 1).valid
            assert lower_bound_bits(weak) < lower_bound_bits(construct_family(make_threshold(n, 1)))
        bad = verify_fooling(make_threshold(3, 2), family(3, [2, 3]), 1)
        assert not bad.valid and bad.counterexample is not None
        note["detail"] = f"{checked} family checks valid; {{0,n}} control weaker; {{2,3}} control rejected"


def test_ac9_asymptotic_diagnostics():
    with criterion(9, "residual-ratio diagnostics") as note:
        fixed = [residual_ratio(n, 2, 3) for n in (10, 20, 40, 80)]
        assert all(x > y for x, y in zip(fixed, fixed[1:]))
        assert fixed[-1] < 1e-2
        assert diagnostics(80, 2, 3).residual_ratio == pytest.approx(float(fixed[-1]))
        pct = [residual_ratio(n, *percentile_interval(n, 0.2, 0.4)) for n in (50, 100, 200)]
        assert all(x > y for x, y in zip(pct, pct[1:]))
        note["detail"] = ("fixed (2,3): " + ", ".join(f"{float(x):.3g}" for x in fixed)
                          + "; percentile (0.2,0.4): " + ", ".join(f"{float(x):.3g}" for x in pct))
