"""Prefix-free codes over length-N binary blocks with per-weight lengths.

Every block of Hamming weight ``w`` gets a codeword of the same length
``l(w)``.  Codewords are assigned canonically (classes in order of length,
then weight; colex rank inside a class), so a code is fully determined by
its length profile and nothing is ever tabulated over the 2**N blocks.

Bit strings are ``str`` objects of ``'0'``/``'1'`` characters, most
significant bit first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import DecodeError, DomainError, InvariantViolation


def ceil_log2_ratio(p: int, q: int) -> int:
    """Least ``l >= 0`` with ``q * 2**l >= p`` (exact, no floating point)."""
    if p <= 0 or q <= 0:
        raise DomainError("ceil_log2_ratio needs positive integers")
    if p <= q:
        return 0
    l = max(0, p.bit_length() - q.bit_length())
    while (q << l) < p:
        l += 1
    while l > 0 and (q << (l - 1)) >= p:
        l -= 1
    return l


def target_length(A: int, A0: int, A1: int, N: int, w1: int) -> int:
    """Codeword length for a block of weight ``w1`` sent at a node of size ``A``.

    ``A0`` and ``A1`` are the codebook sizes left after the block's zeros and
    ones.  The result is the ceiling of
    ``log2(A**N / (A0**(N - w1) * A1**w1))``, so the transmitted length plus
    the remaining cost never exceeds ``N log2 A`` by more than one bit.
    """
    if not 0 <= w1 <= N:
        raise DomainError(f"weight {w1} outside 0..{N}")
    if A == 1:
        return 0
    if min(A0, A1) < 1 or A < A0 + A1:
        raise DomainError(f"A={A} below A0+A1={A0 + A1}; Kraft would fail")
    return ceil_log2_ratio(A ** N, A0 ** (N - w1) * A1 ** w1)


@dataclass(frozen=True)
class LengthProfile:
    """Codeword length per weight class for blocks of length ``N``."""

    N: int
    lengths: tuple[int, ...]

    def __post_init__(self):
        if len(self.lengths) != self.N + 1:
            raise DomainError(f"need {self.N + 1} lengths, got {len(self.lengths)}")
        if any(l < 0 for l in self.lengths):
            raise DomainError("negative codeword length")

    def kraft_sum(self) -> Fraction:
        return sum((Fraction(math.comb(self.N, w), 1 << l) for w, l in enumerate(self.lengths)),
                   Fraction(0))


def kraft_check(profile: LengthProfile) -> bool:
    """Exact Kraft test: ``sum C(N, w) 2**(L - l(w)) <= 2**L``."""
    L = max(profile.lengths)
    total = sum(math.comb(profile.N, w) << (L - l) for w, l in enumerate(profile.lengths))
    return total <= 1 << L


def profile_for(A: int, A0: int, A1: int, N: int) -> LengthProfile:
    return LengthProfile(N, tuple(target_length(A, A0, A1, N, w) for w in range(N + 1)))


# -- colex ranking ----------------------------------------------------------


def comb_rank(block: Sequence[int]) -> tuple[int, int]:
    """Weight and colexicographic rank of ``block`` among blocks of that weight."""
    r = 0
    w = 0
    for pos, bit in enumerate(block):
        if bit:
            w += 1
            r += math.comb(pos, w)
    return w, r


def comb_unrank(N: int, w1: int, r: int) -> tuple[int, ...]:
    if not 0 <= w1 <= N:
        raise DomainError(f"weight {w1} outside 0..{N}")
    if not 0 <= r < math.comb(N, w1):
        raise DomainError(f"rank {r} outside 0..C({N},{w1})-1")
    out = [0] * N
    pos = N - 1
    for i in range(w1, 0, -1):
        # largest position p with C(p, i) <= r
        while math.comb(pos, i) > r:
            pos -= 1
        out[pos] = 1
        r -= math.comb(pos, i)
        pos -= 1
    return tuple(out)


# -- canonical code ---------------------------------------------------------


@dataclass
class CanonicalCode:
    """Canonical prefix code over all 2**N blocks for a Kraft-feasible profile."""

    profile: LengthProfile
    class_order: tuple[int, ...] = field(init=False)
    _base: dict = field(init=False, repr=False)
    _encoded: dict = field(init=False, repr=False, default_factory=dict)
    _decoded: dict = field(init=False, repr=False, default_factory=dict)

    def __post_init__(self):
        if not kraft_check(self.profile):
            raise DomainError(f"length profile violates Kraft: {self.profile}")
        N, lengths = self.profile.N, self.profile.lengths
        self.class_order = tuple(sorted(range(N + 1), key=lambda w: (lengths[w], w)))
        base = {}
        code = 0
        prev = 0
        for w in self.class_order:
            code <<= lengths[w] - prev
            prev = lengths[w]
            base[w] = code
            code += math.comb(N, w)
        if code > 1 << prev:
            raise InvariantViolation("canonical assignment overflowed its last length")
        self._base = base

    @property
    def N(self) -> int:
        return self.profile.N

    def length(self, w1: int) -> int:
        return self.profile.lengths[w1]

    def encode(self, block: Sequence[int]) -> str:
        block = tuple(block)
        cw = self._encoded.get(block)
        if cw is None:
            if len(block) != self.N:
                raise DomainError(f"block length {len(block)} != N={self.N}")
            w, r = comb_rank(block)
            l = self.profile.lengths[w]
            cw = format(self._base[w] + r, f"0{l}b") if l else ""
            self._encoded[block] = cw
        return cw

    def decode(self, stream: str, pos: int = 0) -> tuple[tuple[int, ...], int]:
        """Decode one codeword starting at ``stream[pos]``.

        Returns the block and the number of bits consumed.
        """
        lengths = self.profile.lengths
        for w in self.class_order:
            l = lengths[w]
            if pos + l > len(stream):
                break
            cw = stream[pos:pos + l]
            hit = self._decoded.get(cw)
            if hit is not None:
                return hit
            offset = (int(cw, 2) if l else 0) - self._base[w]
            if 0 <= offset < math.comb(self.N, w):
                hit = self._decoded[cw] = (comb_unrank(self.N, w, offset), l)
                return hit
        raise DecodeError(f"no codeword matches stream at bit {pos}")

    def codewords(self):
        """Yield ``(block, codeword)`` for every block (small N only)."""
        for w in range(self.N + 1):
            for r in range(math.comb(self.N, w)):
                block = comb_unrank(self.N, w, r)
                yield block, self.encode(block)


@lru_cache(maxsize=4096)
def code_for(A: int, A0: int, A1: int, N: int) -> CanonicalCode:
    """The canonical code used by a node of codebook size ``A`` at block length ``N``."""
    return CanonicalCode(profile_for(A, A0, A1, N))


# -- serialization ----------------------------------------------------------


def bits_to_hex(bits: str) -> str:
    """MSB-first hex, zero-padded on the right to a whole byte."""
    if not bits:
        return ""
    padded = bits + "0" * (-len(bits) % 8)
    return int(padded, 2).to_bytes(len(padded) // 8, "big").hex()


def hex_to_bits(hexstr: str, bit_len: int) -> str:
    if bit_len == 0:
        return ""
    raw = bytes.fromhex(hexstr)
    if len(raw) * 8 < bit_len:
        raise DomainError(f"{len(raw) * 8} hex bits cannot hold bit_len={bit_len}")
    return format(int.from_bytes(raw, "big"), f"0{len(raw) * 8}b")[:bit_len]
