"""Deterministic simulator for the sequential prefix-code strategy.

Nodes transmit in the fixed order ``n, n-1, ..., 1``.  Before node ``n-k``
speaks, the instances still undecided are split into groups by ``j``, the
number of ones already announced for that instance.  For every group (in
ascending ``j``) the node sends one codeword describing its own bits on the
group's instances.  Instances whose residual function became constant
retire silently.  Who speaks next, and on which instances, is a function of
the bits broadcast so far, so the schedule is collision free and any
listener can replay it from the raw bit stream.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from .complexity import CodebookSizeTable
from .config import default_budget
from .errors import BudgetExceeded, DecodeError, DecodeMismatch, DomainError
from .prefixcode import CanonicalCode, bits_to_hex, code_for, hex_to_bits
from .symfunc import SymmetricFunction, format_spec

@dataclass(frozen=True)
class MeasurementMatrix:
    """``rows[i - 1][t]`` is node ``i``'s measurement at instance ``t``."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.rows or not self.rows[0]:
            raise DomainError("measurement matrix must have positive dimensions")
        N = len(self.rows[0])
        for row in self.rows:
            if len(row) != N:
                raise DomainError("ragged measurement matrix")
            if any(b not in (0, 1) for b in row):
                raise DomainError("measurements must be 0 or 1")

    @classmethod
    def from_array(cls, arr) -> "MeasurementMatrix":
        arr = np.asarray(arr)
        if arr.ndim != 2:
            raise DomainError(f"expected a 2-d array, got shape {arr.shape}")
        return cls(tuple(tuple(int(b) for b in row) for row in arr.tolist()))

    @classmethod
    def from_strings(cls, lines: Iterable[str]) -> "MeasurementMatrix":
        rows = []
        for line in lines:
            line = line.strip()
            if not line:
                continue
            if set(line) - {"0", "1"}:
                raise DomainError(f"matrix row {line!r} is not a 0/1 string")
            rows.append(tuple(int(c) for c in line))
        if not rows:
            raise DomainError("empty measurement matrix")
        return cls(tuple(rows))

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def N(self) -> int:
        return len(self.rows[0])

    def row(self, node: int) -> tuple[int, ...]:
        return self.rows[node - 1]

    def column_sums(self) -> tuple[int, ...]:
        return tuple(sum(col) for col in zip(*self.rows))

    def to_strings(self) -> list[str]:
        return ["".join(map(str, row)) for row in self.rows]

    def key(self) -> tuple[int, ...]:
        return tuple(itertools.chain.from_iterable(self.rows))


def function_block(f: SymmetricFunction, M: MeasurementMatrix) -> tuple[int, ...]:
    """Direct evaluation of ``f`` on every column of ``M``."""
    return tuple(f.mask >> s & 1 for s in M.column_sums())


@dataclass(frozen=True)
class Event:
    node: int
    depth: int
    group_ones: int
    bits: str


@dataclass
class Transcript:
    function: str
    n: int
    N: int
    events: list[Event] = field(default_factory=list)
    outputs: list[tuple[int, ...]] | None = None

    @property
    def total_bits(self) -> int:
        return sum(len(e.bits) for e in self.events)

    @property
    def bitstream(self) -> str:
        return "".join(e.bits for e in self.events)

    def to_dict(self) -> dict:
        d = {
            "function": self.function,
            "n": self.n,
            "N": self.N,
            "events": [{"node": e.node, "depth": e.depth, "group_ones": e.group_ones,
                        "bits_hex": bits_to_hex(e.bits), "bit_len": len(e.bits)}
                       for e in self.events],
            "total_bits": self.total_bits,
        }
        if self.outputs is not None:
            d["outputs"] = [bits_to_hex("".join(map(str, b))) for b in self.outputs]
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, d: dict) -> "Transcript":
        events = [Event(e["node"], e["depth"], e["group_ones"], hex_to_bits(e["bits_hex"], e["bit_len"]))
                  for e in d["events"]]
        outputs = None
        if "outputs" in d:
            outputs = [tuple(int(c) for c in hex_to_bits(h, d["N"])) for h in d["outputs"]]
        t = cls(d["function"], d["n"], d["N"], events, outputs)
        if t.total_bits != d["total_bits"]:
            raise DomainError("total_bits does not match the events")
        return t

    @classmethod
    def from_json(cls, text: str) -> "Transcript":
        return cls.from_dict(json.loads(text))


# -- strategy ---------------------------------------------------------------


class Strategy:
    """Codebook table plus per-group codes for one function."""

    def __init__(self, f: SymmetricFunction):
        self.f = f
        self.table = CodebookSizeTable(f)
        self._codes: dict[tuple[int, int, int], CanonicalCode] = {}

    def code(self, depth: int, ones: int, size: int) -> CanonicalCode:
        key = (depth, ones, size)
        code = self._codes.get(key)
        if code is None:
            A = self.table[depth, ones]
            A0, A1 = self.table.children(depth, ones)
            code = self._codes[key] = code_for(A, A0, A1, size)
        return code

    def codes(self) -> dict[tuple[int, int, int], CanonicalCode]:
        """Codes built so far, keyed by ``(depth, ones, group size)``."""
        return dict(self._codes)

    def walk(self, N: int, resolve: Callable) -> list[int]:
        """Run the schedule, asking ``resolve`` for each transmission.

        ``resolve(node, depth, ones, members)`` must return the transmitting
        node's bits on ``members``.  Returns the function block.
        """
        n, const = self.f.n, self.table.const
        out = [None] * N
        c = const[0][0]
        if c is not None:
            return [c] * N
        groups = {0: tuple(range(N))}
        for k in range(n):
            node = n - k
            below = const[k + 1]
            nxt: dict[int, list[int]] = {}
            for j in sorted(groups):
                members = groups[j]
                bits = resolve(node, k, j, members)
                for t, b in zip(members, bits):
                    c = below[j + b]
                    if c is None:
                        nxt.setdefault(j + b, []).append(t)
                    else:
                        out[t] = c
            groups = {j: tuple(sorted(ts)) for j, ts in nxt.items()}
        return out


@lru_cache(maxsize=256)
def strategy_for(f: SymmetricFunction) -> Strategy:
    return Strategy(f)


def transmit(f: SymmetricFunction, M: MeasurementMatrix) -> Transcript:
    """Produce the broadcast transcript for ``M`` (transmitter side only)."""
    if f.n != M.n:
        raise DomainError(f"function has n={f.n} but matrix has {M.n} rows")
    s = strategy_for(f)
    tr = Transcript(format_spec(f), f.n, M.N)

    def resolve(node, depth, ones, members):
        row = M.rows[node - 1]
        bits = tuple(row[t] for t in members)
        tr.events.append(Event(node, depth, ones, s.code(depth, ones, len(members)).encode(bits)))
        return bits

    s.walk(M.N, resolve)
    return tr


def replay(f: SymmetricFunction, N: int, stream: str, node: int | None = None,
           own_row: Sequence[int] | None = None) -> tuple[list[Event], tuple[int, ...]]:
    """Reconstruct events and the function block from the raw bit stream.

    With ``node`` and ``own_row`` given, the replay is done from that node's
    point of view: it skips over its own codewords using its measurements
    instead of decoding them.  Without them it is a passive listener.
    """
    s = strategy_for(f)
    events: list[Event] = []
    pos = 0

    def resolve(speaker, depth, ones, members):
        nonlocal pos
        code = s.code(depth, ones, len(members))
        if speaker == node:
            bits = tuple(own_row[t] for t in members)
            cw = code.encode(bits)
            if stream[pos:pos + len(cw)] != cw:
                raise DecodeError(f"node {node} does not recognise its own codeword at bit {pos}")
            used = len(cw)
        else:
            bits, used = code.decode(stream, pos)
        events.append(Event(speaker, depth, ones, stream[pos:pos + used]))
        pos += used
        return bits

    out = s.walk(N, resolve)
    if pos != len(stream):
        raise DecodeError(f"{len(stream) - pos} trailing bits after the last codeword")
    return events, tuple(out)


class _OutOfBits(Exception):
    pass


def next_speaker(f: SymmetricFunction, N: int, prefix: str) -> tuple[int, int, int, tuple] | None:
    """Who transmits after the broadcast bits ``prefix``, and on which instances.

    ``prefix`` must end on a codeword boundary.  Returns
    ``(node, depth, ones, members)``, or ``None`` once the schedule is over.
    """
    s = strategy_for(f)
    pos = 0

    def resolve(speaker, depth, ones, members):
        nonlocal pos
        if pos == len(prefix):
            raise _OutOfBits((speaker, depth, ones, members))
        bits, used = s.code(depth, ones, len(members)).decode(prefix, pos)
        pos += used
        return bits

    try:
        s.walk(N, resolve)
    except _OutOfBits as e:
        return e.args[0]
    if pos != len(prefix):
        raise DecodeError(f"{len(prefix) - pos} trailing bits after the last codeword")
    return None


def run(f: SymmetricFunction, M: MeasurementMatrix) -> Transcript:
    """Simulate one block computation and check every node's output.

    Each node replays the bit stream using only the broadcast bits and its
    own row.  Raises :class:`DecodeMismatch` if any node's reconstruction
    differs from direct evaluation of ``f`` on the columns of ``M``.
    """
    tr = transmit(f, M)
    truth = function_block(f, M)
    stream = tr.bitstream
    outputs = []
    for i in range(1, f.n + 1):
        _, out = replay(f, M.N, stream, node=i, own_row=M.rows[i - 1])
        if out != truth:
            raise DecodeMismatch(f"node {i} decoded {out}, expected {truth} for {M.to_strings()}")
        outputs.append(out)
    tr.outputs = outputs
    return tr


# -- input spaces -----------------------------------------------------------


def iter_matrices(n: int, N: int) -> Iterator[MeasurementMatrix]:
    """Every n x N Boolean matrix in lexicographic (row-major) order."""
    for flat in itertools.product((0, 1), repeat=n * N):
        yield MeasurementMatrix(tuple(flat[i * N:(i + 1) * N] for i in range(n)))


def iter_input_classes(f: SymmetricFunction, N: int) -> Iterator[tuple[MeasurementMatrix, int]]:
    """Enumerate the input space up to bits the strategy never reads.

    A node's bits on instances that retired before it speaks affect neither
    the transcript nor any output, so matrices differing only there behave
    identically.  Yields one representative per class (free bits set to 0,
    i.e. the lexicographically smallest member) with the class size.
    Class sizes sum to ``2**(n*N)``.
    """
    n = f.n
    const = strategy_for(f).table.const

    def rec(k, groups, rows, mult):
        if not groups:
            mult <<= N * (n - k)
            full = [tuple(r) for r in rows]
            yield MeasurementMatrix(tuple(full)), mult
            return
        node = n - k
        order = sorted(groups)
        active = [t for j in order for t in groups[j]]
        mult_here = mult << (N - len(active))
        for bits in itertools.product((0, 1), repeat=len(active)):
            row = [0] * N
            for t, b in zip(active, bits):
                row[t] = b
            nxt: dict[int, list[int]] = {}
            for j in order:
                for t in groups[j]:
                    jj = j + row[t]
                    if const[k + 1][jj] is None:
                        nxt.setdefault(jj, []).append(t)
            rows[node - 1] = row
            yield from rec(k + 1, {j: sorted(ts) for j, ts in nxt.items()}, rows, mult_here)
        rows[node - 1] = [0] * N

    start = {} if const[0][0] is not None else {0: list(range(N))}
    yield from rec(0, start, [[0] * N for _ in range(n)], 1)


def sample_matrices(n: int, N: int, trials: int, seed: int) -> Iterator[MeasurementMatrix]:
    rng = np.random.default_rng(seed)
    left = trials
    while left > 0:
        batch = rng.integers(0, 2, size=(min(left, 1 << 16), n, N), dtype=np.uint8)
        for m in batch.tolist():
            yield MeasurementMatrix(tuple(map(tuple, m)))
        left -= len(batch)


# -- verification and worst case --------------------------------------------


MODES = ("exhaustive", "brute", "sampled")


@dataclass
class VerifyReport:
    function: str
    N: int
    mode: str
    inputs: int
    failures: int
    max_bits: int
    argmax: MeasurementMatrix | None
    runs: int
    first_failure: MeasurementMatrix | None = None

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def summary(self) -> str:
        return (f"zero-error: {self.inputs - self.failures}/{self.inputs} inputs OK; "
                f"worst_case_bits={self.max_bits}")

    def to_dict(self) -> dict:
        return {
            "function": self.function,
            "N": self.N,
            "mode": self.mode,
            "inputs": self.inputs,
            "failures": self.failures,
            "runs": self.runs,
            "max_bits": self.max_bits,
            "argmax": self.argmax.to_strings() if self.argmax else None,
            "first_failure": self.first_failure.to_strings() if self.first_failure else None,
        }


def _inputs(f, N, mode, trials, seed, budget):
    if mode not in MODES:
        raise DomainError(f"unknown mode {mode!r}; choose from {MODES}")
    if mode == "sampled":
        if trials is None or seed is None:
            raise DomainError("sampled mode needs trials and seed")
        return ((M, 1) for M in sample_matrices(f.n, N, trials, seed))
    budget = default_budget() if budget is None else budget
    if budget <= 0:
        raise DomainError("budget must be positive")
    if f.n * N >= 63 or 1 << (f.n * N) > budget:
        raise BudgetExceeded(f"2^{f.n * N} inputs exceed the budget of {budget}; use sampled mode")
    if mode == "brute":
        return ((M, 1) for M in iter_matrices(f.n, N))
    return iter_input_classes(f, N)


def verify(f: SymmetricFunction, N: int, mode: str = "exhaustive", trials: int | None = None,
           seed: int | None = None, budget: int | None = None) -> VerifyReport:
    """Run the strategy over an input space, counting zero-error failures.

    ``exhaustive`` covers all ``2**(n*N)`` inputs through
    :func:`iter_input_classes`, ``brute`` simulates every matrix literally,
    ``sampled`` draws ``trials`` uniform matrices from ``seed``.  The
    argmax is the lexicographically smallest input reaching the maximum.
    """
    if N < 1:
        raise DomainError("block length N must be positive")
    best = -1
    argmax = None
    inputs = failures = count = 0
    first_failure = None
    for M, mult in _inputs(f, N, mode, trials, seed, budget):
        count += 1
        inputs += mult
        try:
            bits = run(f, M).total_bits
        except (DecodeMismatch, DecodeError):
            failures += mult
            if first_failure is None:
                first_failure = M
            continue
        if bits > best or (bits == best and M.key() < argmax.key()):
            best, argmax = bits, M
    return VerifyReport(format_spec(f), N, mode, inputs, failures, best, argmax, count, first_failure)


@dataclass(frozen=True)
class WorstCase:
    max_bits: int
    argmax: MeasurementMatrix


def worst_case_bits(f: SymmetricFunction, N: int, mode: str = "exhaustive", trials: int | None = None,
                    seed: int | None = None, budget: int | None = None) -> WorstCase:
    """Worst-case total bits over the input space; raises if any input decodes wrongly."""
    rep = verify(f, N, mode, trials, seed, budget)
    if not rep.ok:
        raise DecodeMismatch(f"{rep.failures} inputs decoded wrongly, e.g. {rep.first_failure.to_strings()}")
    return WorstCase(rep.max_bits, rep.argmax)


def rate_estimate(f: SymmetricFunction, N_list: Iterable[int], mode: str = "exhaustive",
                  trials: int | None = None, seed: int | None = None,
                  budget: int | None = None) -> list[tuple[int, float]]:
    """Worst-case bits per instance for each block length in ``N_list``."""
    return [(N, worst_case_bits(f, N, mode, trials, seed, budget).max_bits / N) for N in N_list]
