"""Fooling-set witnesses for symmetric functions and a brute-force checker.

A family is described by the set ``W`` of allowed column sums: it consists
of every ``n x N`` matrix whose columns all have a sum in ``W``, so it has
``(sum_{w in W} C(n, w)) ** N`` members and certifies a lower bound of
``log2(sum_{w in W} C(n, w))`` bits per instance when it fools ``f``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from .complexity import binom, log2
from .errors import BudgetExceeded, DomainError, UnsupportedFunction
from .config import default_budget
from .symfunc import SymmetricFunction, classify


@dataclass(frozen=True)
class ColumnFamily:
    n: int
    weights: tuple[int, ...]

    def __post_init__(self):
        if any(not 0 <= w <= self.n for w in self.weights):
            raise DomainError(f"column weights {self.weights} outside 0..{self.n}")

    @property
    def size_per_column(self) -> int:
        return sum(binom(self.n, w) for w in self.weights)

    def cardinality(self, N: int) -> int:
        return self.size_per_column ** N

    def columns(self) -> list[int]:
        """Allowed columns as row bitmasks (bit ``i`` is node ``i + 1``)."""
        return [c for c in range(1 << self.n) if c.bit_count() in self.weights]


def family(n: int, weights: Iterable[int]) -> ColumnFamily:
    """Family of the given column sums, silently dropping sums outside ``0..n``."""
    return ColumnFamily(n, tuple(sorted({w for w in weights if 0 <= w <= n})))


def construct_family(f: SymmetricFunction) -> ColumnFamily:
    """The column family used to lower-bound the complexity of ``f``.

    thresholds: sums ``{t-1, t}``; deltas: ``{t-1, t, t+1}``;
    intervals with ``a + b <= n``: ``{a-1, b, b+1}``, otherwise
    ``{a-1, a, b+1}``.  At ``a + b == n`` both are built and the larger is
    kept (the first on ties).  Constants get the one-column family.
    """
    kind = classify(f)
    n = f.n
    if kind[0] == "constant":
        return family(n, [n if kind[1] == 0 else 0])
    if kind[0] == "threshold":
        t = kind[1]
        return family(n, [t - 1, t])
    if kind[0] == "delta":
        t = kind[1]
        return family(n, [t - 1, t, t + 1])
    if kind[0] == "interval":
        _, a, b = kind
        options = []
        if a + b <= n:
            options.append(family(n, [a - 1, b, b + 1]))
        if a + b >= n:
            options.append(family(n, [a - 1, a, b + 1]))
        return max(options, key=lambda fam: fam.size_per_column)
    raise UnsupportedFunction(f"no fooling-set construction for {kind[0]} functions")


def lower_bound_bits(fam: ColumnFamily) -> float:
    return log2(fam.size_per_column)


@dataclass
class FoolingVerdict:
    valid: bool
    pairs_checked: int
    single_row_sufficient: bool
    counterexample: tuple | None = None

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "pairs_checked": self.pairs_checked,
            "single_row_sufficient": self.single_row_sufficient,
            "counterexample": None if self.counterexample is None else {
                "M1": self.counterexample[0], "M2": self.counterexample[1]},
        }


def _as_rows(cols, n):
    return ["".join(str(c >> i & 1) for c in cols) for i in range(n)]


def verify_fooling(f: SymmetricFunction, fam: ColumnFamily, N: int,
                   budget: int | None = None) -> FoolingVerdict:
    """Brute-force check that ``fam`` is a fooling set for ``f`` at block length ``N``.

    Two distinct members ``M1, M2`` with equal function blocks must be told
    apart by some mixture: replacing a nonempty proper subset of the rows of
    ``M1`` by the corresponding rows of ``M2`` must change the function
    block.  Replacing rows ``S`` of ``M2`` by ``M1`` equals replacing the
    complement of ``S`` in ``M1``, so both directions are covered.

    ``single_row_sufficient`` reports whether swapping a single row (in
    either direction) always did the job.  The first failing pair in
    lexicographic order is returned as the counterexample.
    """
    if f.n != fam.n:
        raise DomainError(f"function has n={f.n}, family has n={fam.n}")
    if N < 1:
        raise DomainError("block length N must be positive")
    budget = default_budget() if budget is None else budget
    c = fam.size_per_column
    if c ** (2 * N) > budget:
        raise BudgetExceeded(f"{c}^(2*{N}) pairs exceed the budget of {budget}")

    n = f.n
    full = (1 << n) - 1
    value = [f.mask >> (x.bit_count()) & 1 for x in range(1 << n)]
    singles = [1 << i for i in range(n)] + [full ^ (1 << i) for i in range(n)]
    subsets = range(1, full)

    members = list(itertools.product(fam.columns(), repeat=N))
    by_block: dict[tuple, list] = {}
    for m in members:
        by_block.setdefault(tuple(value[x] for x in m), []).append(m)

    def mixes(m1, m2, S):
        for x, y in zip(m1, m2):
            if value[(x & ~S) | (y & S)] != value[x]:
                return True
        return False

    single_ok = True
    bad = None
    for block in sorted(by_block):
        group = by_block[block]
        for m1, m2 in itertools.combinations(group, 2):
            if any(mixes(m1, m2, S) for S in singles):
                continue
            single_ok = False
            if any(mixes(m1, m2, S) for S in subsets):
                continue
            pair = (_as_rows(m1, n), _as_rows(m2, n))
            if bad is None or pair < bad:
                bad = pair
    pairs = len(members) * (len(members) - 1) // 2
    return FoolingVerdict(bad is None, pairs, single_ok, bad)
