"""Codebook-size recursion, closed-form complexities and interval bounds.

All counts are exact Python integers.  Conversion to bits (``log2``) only
happens when a value is reported.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DomainError, InvariantViolation
from .symfunc import SymmetricFunction, classify, make_interval, make_union

TOL = 1e-9


def binom(n: int, k: int) -> int:
    """Binomial coefficient, zero outside ``0 <= k <= n``."""
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def log2(x: int | Fraction) -> float:
    if x <= 0:
        raise DomainError(f"log2 of non-positive value {x}")
    if isinstance(x, Fraction):
        return math.log2(x.numerator) - math.log2(x.denominator)
    return math.log2(x)


# -- codebook sizes ---------------------------------------------------------


def _state_mask(f, k, j):
    # Residual after k nodes resolved with j ones: counts m in 0..n-k with m + j in levels.
    return (f.mask >> j) & ((1 << (f.n - k + 1)) - 1)


def _state_constant(f, k, j):
    m = _state_mask(f, k, j)
    if m == 0:
        return 0
    if m == (1 << (f.n - k + 1)) - 1:
        return 1
    return None


class CodebookSizeTable:
    """Table ``A[k][j]`` of codebook sizes for every residual state.

    State ``(k, j)``: nodes ``n, ..., n-k+1`` have transmitted and ``j`` of
    their bits were 1.  ``A[k][j] == 1`` exactly when the residual function
    is constant; otherwise ``A[k][j] == A[k+1][j] + A[k+1][j+1]``.
    Depth ``n`` is included and is all ones.
    """

    def __init__(self, f: SymmetricFunction):
        self.f = f
        n = f.n
        self.const = [[_state_constant(f, k, j) for j in range(k + 1)] for k in range(n + 1)]
        A = [None] * (n + 1)
        A[n] = [1] * (n + 1)
        for k in range(n - 1, -1, -1):
            below = A[k + 1]
            A[k] = [1 if self.const[k][j] is not None else below[j] + below[j + 1]
                    for j in range(k + 1)]
        self.A = A

    def __getitem__(self, kj):
        k, j = kj
        return self.A[k][j]

    @property
    def root(self) -> int:
        return self.A[0][0]

    def constant(self, k: int, j: int) -> int | None:
        return self.const[k][j]

    def children(self, k: int, j: int) -> tuple[int, int]:
        return self.A[k + 1][j], self.A[k + 1][j + 1]


def codebook_size(f: SymmetricFunction) -> int:
    """Codebook size ``A(f)``; the achievable rate is ``log2(A(f))`` bits/instance.

    Uses a rolling row so memory stays O(n) even for large ``n``.
    """
    n = f.n
    row = [1] * (n + 1)
    for k in range(n - 1, -1, -1):
        row = [1 if _state_constant(f, k, j) is not None else row[j] + row[j + 1]
               for j in range(k + 1)]
    return row[0]


def achievable_bits(f: SymmetricFunction) -> float:
    return log2(codebook_size(f))


# -- closed forms -----------------------------------------------------------


def threshold_size(n: int, theta: int) -> int:
    return binom(n + 1, theta)


def delta_size(n: int, theta: int) -> int:
    return binom(n + 1, theta) + binom(n, theta + 1)


def threshold_complexity(n: int, theta: int) -> float:
    if not 0 <= theta <= n + 1:
        raise DomainError(f"threshold theta={theta} outside 0..{n + 1}")
    return log2(threshold_size(n, theta))


def delta_complexity(n: int, theta: int) -> float:
    if not 0 <= theta <= n:
        raise DomainError(f"delta theta={theta} outside 0..{n}")
    return log2(delta_size(n, theta))


def _check_interval(n, a, b):
    if not 0 <= a <= b <= n:
        raise DomainError(f"interval [{a}, {b}] not within 0 <= a <= b <= {n}")


def interval_size_bounds(n: int, a: int, b: int) -> tuple[int, int]:
    """Integer bounds ``(lo, hi)`` with ``lo <= 2**C <= hi`` for ``[a, b]``.

    Intervals touching an end of ``0..n`` are thresholds or complements of
    thresholds and get the exact value for both bounds.
    """
    _check_interval(n, a, b)
    if b == n:
        return (threshold_size(n, a),) * 2
    if a == 0:
        return (threshold_size(n, b + 1),) * 2
    width = b - a + 1
    pairs = []
    if a + b <= n:
        pairs.append((binom(n + 1, b + 1) + binom(n, a - 1),
                      binom(n + 1, b + 1) + width * binom(n, a - 1)))
    if a + b >= n:
        pairs.append((binom(n + 1, a) + binom(n, b + 1),
                      binom(n + 1, a) + width * binom(n, b + 1)))
    for lo, hi in pairs:
        if lo > hi:
            raise InvariantViolation(f"interval bounds out of order for n={n}, [{a}, {b}]")
    if len(pairs) == 2 and pairs[0] != pairs[1]:
        raise InvariantViolation(f"interval bound branches disagree at a+b=n for n={n}, [{a}, {b}]")
    return min(pairs, key=lambda p: p[1])


def interval_bounds(n: int, a: int, b: int) -> tuple[float, float]:
    """Lower and upper bounds on the complexity of ``[a, b]`` in bits/instance."""
    lo, hi = interval_size_bounds(n, a, b)
    return log2(lo), log2(hi)


def _g(n, a, b):
    return binom(n + 1, b + 1) if a + b <= n else binom(n + 1, a)


def union_asymptotic(n: int, intervals: Sequence[tuple[int, int]]) -> float:
    """Leading-order complexity of a union of disjoint intervals.

    Sums the dominant binomial of each interval; ties ``a + b == n`` take
    the ``b + 1`` branch (both branches are equal there).
    """
    make_union(n, intervals)
    return log2(sum(_g(n, a, b) for a, b in intervals))


@dataclass(frozen=True)
class Diagnostics:
    gap: float
    residual_ratio: float


def residual_ratio(n: int, a: int, b: int) -> Fraction:
    """Exact ratio of the upper bound's residual term to its dominant term."""
    _check_interval(n, a, b)
    width = b - a + 1
    if a + b <= n:
        return Fraction(width * binom(n, a - 1), binom(n + 1, b + 1))
    return Fraction(width * binom(n, b + 1), binom(n + 1, a))


def diagnostics(n: int, a: int, b: int) -> Diagnostics:
    lo, hi = interval_bounds(n, a, b)
    gap = hi - lo
    if gap > log2(b - a + 2) + TOL:
        raise InvariantViolation(f"gap {gap} exceeds log2(b-a+2) for n={n}, [{a}, {b}]")
    return Diagnostics(gap=gap, residual_ratio=float(residual_ratio(n, a, b)))


def percentile_interval(n: int, alpha: float, beta: float) -> tuple[int, int]:
    """Interval ``[ceil(alpha n), floor(beta n)]`` for a percentile function."""
    a = math.ceil(alpha * n)
    b = math.floor(beta * n)
    make_interval(n, a, b)
    return a, b


# -- rate summaries ---------------------------------------------------------


@dataclass(frozen=True)
class RateResult:
    """Bounds on the per-instance complexity of one function, in bits."""

    kind: str
    n: int
    params: tuple
    lower_bound: float
    achievable: float
    upper_bound: float
    exact: bool
    codebook_size: int

    def __post_init__(self):
        if not self.lower_bound <= self.achievable + TOL:
            raise InvariantViolation(f"lower bound above achievable rate: {self}")
        if not self.achievable <= self.upper_bound + TOL:
            raise InvariantViolation(f"achievable rate above upper bound: {self}")


def transition_size(f: SymmetricFunction) -> int:
    """Largest ``C(n+1, t)`` over counts ``t`` where ``f(t-1) != f(t)``.

    Columns summing to ``t-1`` or ``t`` fool any function that changes value
    between those counts, so this is a lower bound on ``2**C`` for every
    nonconstant symmetric function.
    """
    best = 1
    for t in range(1, f.n + 1):
        if (f.mask >> t & 1) != (f.mask >> (t - 1) & 1):
            best = max(best, binom(f.n + 1, t))
    return best


def rate(f: SymmetricFunction) -> RateResult:
    """Lower bound, achievable rate and upper bound for ``f``."""
    kind = classify(f)
    n = f.n
    A = codebook_size(f)
    if kind[0] == "constant":
        lo = hi = 1
    elif kind[0] == "threshold":
        lo = hi = threshold_size(n, kind[1])
    elif kind[0] == "delta":
        lo = hi = delta_size(n, kind[1])
    elif kind[0] == "interval":
        lo, hi = interval_size_bounds(n, kind[1], kind[2])
    else:
        lo, hi = transition_size(f), A
    return RateResult(
        kind=kind[0],
        n=n,
        params=tuple(kind[1:]),
        lower_bound=log2(lo),
        achievable=log2(A),
        upper_bound=log2(hi),
        exact=lo == A == hi,
        codebook_size=A,
    )


CSV_COLUMNS = ("kind", "n", "theta_or_a", "b", "lower_bits", "achievable_bits", "upper_bits", "exact")


def _g12(x: float) -> str:
    return f"{x:.12g}"


def rate_csv(results: Iterable[RateResult]) -> str:
    """Render rate results as CSV, floats at 12 significant digits."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in results:
        if r.kind == "union":
            first = ";".join(f"{a}-{b}" for a, b in r.params[0])
            second = ""
        else:
            first = r.params[0] if r.params else ""
            second = r.params[1] if len(r.params) > 1 else ""
        w.writerow([r.kind, r.n, first, second, _g12(r.lower_bound), _g12(r.achievable),
                    _g12(r.upper_bound), "true" if r.exact else "false"])
    return buf.getvalue()
