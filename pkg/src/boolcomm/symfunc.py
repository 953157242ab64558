"""Symmetric Boolean functions represented by their level sets.

A symmetric function of ``n`` Boolean variables depends only on the number
of ones among its arguments, so it is fully described by the set of counts
``k`` in ``{0, ..., n}`` at which it evaluates to 1.  The set is stored as a
bitmask (bit ``k`` set iff ``f = 1`` when ``k`` arguments are 1).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DomainError, SpecParseError

#: Largest number of variables accepted by the constructors.  Raise it at
#: your own risk: codebook tables grow quadratically in ``n``.
N_LIMIT = 1024


@dataclass(frozen=True)
class SymmetricFunction:
    n: int
    mask: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise DomainError(f"n must be a positive integer, got {self.n!r}")
        if self.n > N_LIMIT:
            raise DomainError(f"n={self.n} exceeds N_LIMIT={N_LIMIT}")
        if self.mask < 0 or self.mask >> (self.n + 1):
            raise DomainError(f"level mask {self.mask:#b} has counts outside 0..{self.n}")

    @property
    def levels(self) -> frozenset:
        return frozenset(k for k in range(self.n + 1) if self.mask >> k & 1)

    def __call__(self, count: int) -> int:
        return evaluate(self, count)

    def __str__(self):
        return format_spec(self)


def _full(n):
    return (1 << (n + 1)) - 1


def make_levels(n: int, levels: Iterable[int]) -> SymmetricFunction:
    mask = 0
    for k in levels:
        if not 0 <= k <= n:
            raise DomainError(f"level {k} outside 0..{n}")
        mask |= 1 << k
    return SymmetricFunction(n, mask)


def make_threshold(n: int, theta: int) -> SymmetricFunction:
    """f = 1 iff at least ``theta`` arguments are 1.

    ``theta = 0`` gives the constant 1 and ``theta = n + 1`` the constant 0.
    """
    if not 0 <= theta <= n + 1:
        raise DomainError(f"threshold theta={theta} outside 0..{n + 1}")
    return SymmetricFunction(n, _full(n) >> theta << theta)


def make_delta(n: int, theta: int) -> SymmetricFunction:
    if not 0 <= theta <= n:
        raise DomainError(f"delta theta={theta} outside 0..{n}")
    return SymmetricFunction(n, 1 << theta)


def make_interval(n: int, a: int, b: int) -> SymmetricFunction:
    if not 0 <= a <= b <= n:
        raise DomainError(f"interval [{a}, {b}] not within 0 <= a <= b <= {n}")
    return SymmetricFunction(n, _full(b - a) << a)


def make_union(n: int, intervals: Sequence[tuple[int, int]]) -> SymmetricFunction:
    """Union of pairwise disjoint intervals ``[a_i, b_i]``."""
    mask = 0
    for a, b in intervals:
        part = make_interval(n, a, b).mask
        if mask & part:
            raise DomainError(f"interval [{a}, {b}] overlaps an earlier interval")
        mask |= part
    return SymmetricFunction(n, mask)


def evaluate(f: SymmetricFunction, count: int) -> int:
    if not 0 <= count <= f.n:
        raise DomainError(f"count {count} outside 0..{f.n}")
    return f.mask >> count & 1


def residual(f: SymmetricFunction, bit: int) -> SymmetricFunction:
    """The function left for the other ``n - 1`` nodes once one node's bit is known."""
    if f.n < 2:
        raise DomainError("residual needs at least two variables")
    if bit == 0:
        return SymmetricFunction(f.n - 1, f.mask & _full(f.n - 1))
    if bit == 1:
        return SymmetricFunction(f.n - 1, f.mask >> 1)
    raise DomainError(f"bit must be 0 or 1, got {bit!r}")


def constant_value(f: SymmetricFunction) -> int | None:
    """0 or 1 if ``f`` is constant, ``None`` otherwise."""
    if f.mask == 0:
        return 0
    if f.mask == _full(f.n):
        return 1
    return None


def complement(f: SymmetricFunction) -> SymmetricFunction:
    return SymmetricFunction(f.n, f.mask ^ _full(f.n))


def reflect(f: SymmetricFunction) -> SymmetricFunction:
    """Relabel every argument 0 <-> 1, i.e. map count k to n - k."""
    mask = 0
    for k in range(f.n + 1):
        if f.mask >> k & 1:
            mask |= 1 << (f.n - k)
    return SymmetricFunction(f.n, mask)


def runs(f: SymmetricFunction) -> list[tuple[int, int]]:
    """Maximal intervals ``[a, b]`` making up the level set, ascending."""
    out = []
    k = 0
    while k <= f.n:
        if f.mask >> k & 1:
            a = k
            while k + 1 <= f.n and f.mask >> (k + 1) & 1:
                k += 1
            out.append((a, k))
        k += 1
    return out


def classify(f: SymmetricFunction) -> tuple:
    """Name the most specific family ``f`` belongs to.

    Returns one of ``("constant", v)``, ``("threshold", theta)``,
    ``("delta", theta)``, ``("interval", a, b)`` or ``("union", runs)``.
    Thresholds win over deltas (``theta = n``), deltas over intervals.
    Intervals may start at 0; those are complements of thresholds.
    """
    c = constant_value(f)
    if c is not None:
        return ("constant", c)
    parts = runs(f)
    if len(parts) > 1:
        return ("union", parts)
    a, b = parts[0]
    if b == f.n:
        return ("threshold", a)
    if a == b:
        return ("delta", a)
    return ("interval", a, b)


# -- spec strings -----------------------------------------------------------

_KINDS = {
    "threshold": ("n", "theta"),
    "delta": ("n", "theta"),
    "interval": ("n", "a", "b"),
    "union": ("n", "intervals"),
    "levels": ("n", "set"),
}


def parse_spec(text: str) -> SymmetricFunction:
    """Parse a function spec string.

    Grammar::

        threshold:n=<n>,theta=<t>     delta:n=<n>,theta=<t>
        interval:n=<n>,a=<a>,b=<b>    union:n=<n>,intervals=<a1>-<b1>;<a2>-<b2>
        levels:n=<n>,set=<k1>,<k2>,...
    """
    head, sep, body = text.partition(":")
    kind = head.strip()
    if not sep:
        raise SpecParseError("expected '<kind>:'", text, len(text))
    if kind not in _KINDS:
        raise SpecParseError(f"unknown function kind {kind!r}", text, len(head) - len(head.lstrip()))

    # Comma-separated key=value pairs; a bare token continues the previous
    # value so that ``set=0,1,2`` parses as one field.
    fields: dict[str, tuple[str, int]] = {}
    pos = len(head) + 1
    last = None
    for token in body.split(","):
        start = pos
        pos += len(token) + 1
        if "=" in token:
            key, _, value = token.partition("=")
            key = key.strip()
            if key not in _KINDS[kind]:
                raise SpecParseError(f"unexpected field {key!r} for {kind}", text, start)
            if key in fields:
                raise SpecParseError(f"duplicate field {key!r}", text, start)
            fields[key] = (value.strip(), start + len(key) + 1)
            last = key
        elif last is not None and token.strip():
            value, vpos = fields[last]
            fields[last] = (value + "," + token.strip(), vpos)
        elif token.strip() or body.strip():
            raise SpecParseError("expected key=value", text, start)
    for key in _KINDS[kind]:
        if key not in fields:
            raise SpecParseError(f"missing field {key!r}", text, len(text))

    def integer(key):
        value, vpos = fields[key]
        if not re.fullmatch(r"-?\d+", value):
            raise SpecParseError(f"field {key!r} must be an integer", text, vpos)
        return int(value)

    n = integer("n")
    if kind == "threshold":
        return make_threshold(n, integer("theta"))
    if kind == "delta":
        return make_delta(n, integer("theta"))
    if kind == "interval":
        return make_interval(n, integer("a"), integer("b"))
    if kind == "union":
        value, vpos = fields["intervals"]
        intervals = []
        for piece in value.replace(",", ";").split(";"):
            m = re.fullmatch(r"\s*(\d+)\s*-\s*(\d+)\s*", piece)
            if not m:
                raise SpecParseError(f"bad interval {piece!r}", text, vpos)
            intervals.append((int(m.group(1)), int(m.group(2))))
        return make_union(n, intervals)
    value, vpos = fields["set"]
    ks = []
    for piece in filter(None, (p.strip() for p in value.split(","))):
        if not piece.isdigit():
            raise SpecParseError(f"bad level {piece!r}", text, vpos)
        ks.append(int(piece))
    return make_levels(n, ks)


def format_spec(f: SymmetricFunction) -> str:
    """Canonical spec string for ``f`` (inverse of :func:`parse_spec`)."""
    kind = classify(f)
    n = f.n
    if kind[0] == "threshold":
        return f"threshold:n={n},theta={kind[1]}"
    if kind[0] == "delta":
        return f"delta:n={n},theta={kind[1]}"
    if kind[0] == "interval":
        return f"interval:n={n},a={kind[1]},b={kind[2]}"
    if kind[0] == "union":
        return f"union:n={n},intervals=" + ";".join(f"{a}-{b}" for a, b in kind[1])
    return f"levels:n={n},set=" + ",".join(str(k) for k in sorted(f.levels))
