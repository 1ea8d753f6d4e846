"""Bit-packed subsets of the Boolean cube and their Hamming geometry.

Points of the n-cube are integer masks in [0, 2^n); coordinate i lives
at bit i of the mask (point 0 is the all-zeros string).  A subset is a
single arbitrary-precision integer whose bit x records membership of
point x, so unions, intersections and complements are one bitwise
operation and a one-step Hamming dilation is n shifted-OR passes.

The dimension cap is 26: membership then occupies 2^26 bits = 8 MiB and
every operation here stays comfortably in memory.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

__all__ = [
    "MAX_DIM",
    "CubeSet",
    "hamming_ball",
    "ball_size",
    "neighborhood",
    "interior",
    "set_distance",
    "product_measure",
    "product_weights",
    "uniform_log_density",
]

MAX_DIM = 26

# Chunk exponent for streamed measure sums: points are processed in
# aligned blocks of 2^_CHUNK_BITS so the weight table never exceeds a
# few MiB regardless of n.
_CHUNK_BITS = 18


def _check_dim(n: int) -> None:
    if not isinstance(n, int) or not 1 <= n <= MAX_DIM:
        raise ValueError(f"dimension must be an integer in [1, {MAX_DIM}]: {n!r}")


@lru_cache(maxsize=128)
def _low_half_mask(n: int, i: int) -> int:
    # Bits x in [0, 2^n) with (x >> i) & 1 == 0: blocks of 2^i ones
    # alternating with 2^i zeros.
    block = (1 << (1 << i)) - 1
    period = 1 << (i + 1)
    repeats = (1 << n) // period
    return block * (((1 << (repeats * period)) - 1) // ((1 << period) - 1))


def _dilate_once(n: int, bits: int) -> int:
    out = bits
    for i in range(n):
        shift = 1 << i
        mask = _low_half_mask(n, i)
        out |= ((bits & mask) << shift) | ((bits >> shift) & mask)
    return out


@dataclass(frozen=True)
class CubeSet:
    """Immutable subset of the n-dimensional Boolean cube."""

    n: int
    bits: int

    def __post_init__(self) -> None:
        _check_dim(self.n)
        if not isinstance(self.bits, int) or not 0 <= self.bits < (1 << (1 << self.n)):
            raise ValueError("membership bits out of range for dimension")

    @classmethod
    def empty(cls, n: int) -> "CubeSet":
        return cls(n, 0)

    @classmethod
    def full(cls, n: int) -> "CubeSet":
        return cls(n, (1 << (1 << n)) - 1)

    @classmethod
    def singleton(cls, n: int, point: int) -> "CubeSet":
        _check_dim(n)
        if not 0 <= point < (1 << n):
            raise ValueError(f"point mask out of range: {point!r}")
        return cls(n, 1 << point)

    @classmethod
    def from_points(cls, n: int, points: Iterable[int]) -> "CubeSet":
        _check_dim(n)
        bits = 0
        top = 1 << n
        for x in points:
            if not 0 <= x < top:
                raise ValueError(f"point mask out of range: {x!r}")
            bits |= 1 << x
        return cls(n, bits)

    @classmethod
    def from_indicator(cls, n: int, indicator: Sequence[float] | np.ndarray) -> "CubeSet":
        _check_dim(n)
        arr = np.asarray(indicator)
        if arr.shape != (1 << n,):
            raise ValueError(f"indicator must have length 2^{n}")
        packed = np.packbits(arr.astype(bool), bitorder="little").tobytes()
        return cls(n, int.from_bytes(packed, "little"))

    @property
    def num_points(self) -> int:
        return 1 << self.n

    @property
    def size(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, point: int) -> bool:
        return 0 <= point < self.num_points and bool((self.bits >> point) & 1)

    def __or__(self, other: "CubeSet") -> "CubeSet":
        self._check_same(other)
        return CubeSet(self.n, self.bits | other.bits)

    def __and__(self, other: "CubeSet") -> "CubeSet":
        self._check_same(other)
        return CubeSet(self.n, self.bits & other.bits)

    def __xor__(self, other: "CubeSet") -> "CubeSet":
        self._check_same(other)
        return CubeSet(self.n, self.bits ^ other.bits)

    def _check_same(self, other: "CubeSet") -> None:
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")

    def complement(self) -> "CubeSet":
        return CubeSet(self.n, self.bits ^ ((1 << (1 << self.n)) - 1))

    def points(self) -> Iterator[int]:
        bits = self.bits
        while bits:
            low = bits & -bits
            yield low.bit_length() - 1
            bits ^= low

    def bool_array(self) -> np.ndarray:
        nbytes = ((1 << self.n) + 7) // 8
        raw = np.frombuffer(self.bits.to_bytes(nbytes, "little"), dtype=np.uint8)
        return np.unpackbits(raw, bitorder="little")[: 1 << self.n].astype(bool)

    def indicator(self) -> np.ndarray:
        return self.bool_array().astype(np.float64)

    def to_text(self) -> str:
        """Serialize as 'n=<dim>' plus a lowercase hex dump of membership.

        Bytes run in little-endian point order: byte j holds points
        8j..8j+7 with point 8j at the least significant bit.
        """
        nbytes = ((1 << self.n) + 7) // 8
        return f"n={self.n}\n{self.bits.to_bytes(nbytes, 'little').hex()}\n"

    @classmethod
    def from_text(cls, text: str) -> "CubeSet":
        lines = [ln.strip() for ln in text.strip().splitlines()]
        if len(lines) != 2 or not lines[0].startswith("n="):
            raise ValueError("malformed set text: expected 'n=<dim>' then a hex line")
        try:
            n = int(lines[0][2:])
        except ValueError as exc:
            raise ValueError(f"malformed dimension header: {lines[0]!r}") from exc
        _check_dim(n)
        nbytes = ((1 << n) + 7) // 8
        try:
            raw = bytes.fromhex(lines[1])
        except ValueError as exc:
            raise ValueError("malformed hex dump") from exc
        if len(raw) != nbytes:
            raise ValueError(f"hex dump must encode {nbytes} bytes, got {len(raw)}")
        return cls(n, int.from_bytes(raw, "little"))


def hamming_ball(n: int, center: int, radius: int) -> CubeSet:
    """All points within Hamming distance radius of center."""
    _check_dim(n)
    if not 0 <= center < (1 << n):
        raise ValueError(f"center mask out of range: {center!r}")
    if not 0 <= radius <= n:
        raise ValueError(f"radius must lie in [0, n]: {radius!r}")
    bits = 1 << center
    for _ in range(radius):
        bits = _dilate_once(n, bits)
    return CubeSet(n, bits)


def ball_size(n: int, d: int) -> int:
    """Exact cardinality of a radius-d Hamming ball: sum of C(n, k), k <= d."""
    _check_dim(n)
    if not 0 <= d <= n:
        raise ValueError(f"radius must lie in [0, n]: {d!r}")
    return sum(math.comb(n, k) for k in range(d + 1))


def neighborhood(B: CubeSet, d: int) -> CubeSet:
    """All points within Hamming distance d of B (d one-step dilations)."""
    if not 0 <= d <= B.n:
        raise ValueError(f"radius must lie in [0, n]: {d!r}")
    bits = B.bits
    for _ in range(d):
        bits = _dilate_once(B.n, bits)
    return CubeSet(B.n, bits)


def interior(B: CubeSet, d: int) -> CubeSet:
    """Points whose entire radius-d ball lies inside B.

    Computed as the dual of dilation: complement, d-neighborhood,
    complement again.
    """
    return neighborhood(B.complement(), d).complement()


def set_distance(B: CubeSet, B2: CubeSet) -> int:
    """Minimum Hamming distance over pairs, by layered dilation of B."""
    B._check_same(B2)
    if B.bits == 0 or B2.bits == 0:
        raise ValueError("set distance requires nonempty sets")
    bits = B.bits
    for d in range(B.n + 1):
        if bits & B2.bits:
            return d
        bits = _dilate_once(B.n, bits)
    raise AssertionError("dilation failed to cover the cube")  # pragma: no cover


def product_weights(bias: Sequence[float]) -> np.ndarray:
    """Full table of product-measure weights over 2^n points.

    Entry x is prod_i (bias[i] if bit i of x else 1 - bias[i]).
    Intended for n small enough that the table fits comfortably.
    """
    n = len(bias)
    if n > 24:
        raise ValueError(f"weight table too large for n = {n}")
    w = np.ones(1, dtype=np.float64)
    for b in bias:
        if not 0.0 <= b <= 1.0:
            raise ValueError(f"bias out of range: {b!r}")
        w = np.concatenate([w * (1.0 - b), w * b])
    return w


def product_measure(B: CubeSet, bias: Sequence[float]) -> float:
    """Product-measure mass of B: sum over members of per-point weights.

    Points are streamed in aligned chunks; each chunk contributes a
    pairwise-summed partial that is then combined with exact
    compensated summation (math.fsum).
    """
    if len(bias) != B.n:
        raise ValueError(f"bias vector must have length {B.n}")
    n = B.n
    c = min(n, _CHUNK_BITS)
    base = product_weights(bias[:c])
    data = B.bits.to_bytes(((1 << n) + 7) // 8, "little")
    chunk_bytes = max(1, (1 << c) // 8)
    parts = []
    for k in range(1 << (n - c)):
        seg = np.unpackbits(
            np.frombuffer(data[k * chunk_bytes : (k + 1) * chunk_bytes], dtype=np.uint8),
            bitorder="little",
        )[: 1 << c].astype(bool)
        if not seg.any():
            continue
        prefix = 1.0
        for i in range(c, n):
            prefix *= bias[i] if (k >> (i - c)) & 1 else 1.0 - bias[i]
        parts.append(prefix * float(base[seg].sum()))
    return math.fsum(parts)


def uniform_log_density(B: CubeSet) -> float:
    """log2 of the cardinality; errors on the empty set."""
    if B.bits == 0:
        raise ValueError("empty set has no log density")
    return math.log2(B.size)
