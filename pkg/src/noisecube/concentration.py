"""Exact finite-n concentration checks on weighted product spaces.

Everything here is fully enumerated: the Doob martingale of a function
of independent bits is tabulated level by level with exact conditional
expectations, tail probabilities are summed over all 2^n points, and
the bounded-differences inequality is compared against those exact
tails.  The blowing-up checks turn the same machinery into statements
about Hamming neighborhoods: a set of nonnegligible product measure
expands to nearly full measure within O(sqrt(n log n)) steps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .cube import CubeSet, neighborhood, product_measure, product_weights, set_distance
from .noise import NoiseSpec

__all__ = [
    "BoundedDiffSpec",
    "BoundedDifferenceError",
    "HoeffdingCheck",
    "hoeffding_lemma_check",
    "MartingaleTrace",
    "doob_martingale",
    "TailCheck",
    "azuma_mcdiarmid_check",
    "BlowupCheck",
    "blowing_up_check",
    "CorollaryCheck",
    "blowup_corollary_check",
]


@dataclass(frozen=True)
class BoundedDiffSpec:
    """Independent binary coordinates: per-coordinate biases and difference caps."""

    biases: tuple[float, ...]
    diff_bounds: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.biases) != len(self.diff_bounds):
            raise ValueError("biases and difference bounds must have equal length")
        if not 1 <= len(self.biases) <= 20:
            raise ValueError(f"dimension must lie in [1, 20]: {len(self.biases)}")
        for p in self.biases:
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"bias out of range: {p!r}")
        for c in self.diff_bounds:
            if c < 0.0:
                raise ValueError(f"difference bound must be nonnegative: {c!r}")

    @classmethod
    def uniform(cls, n: int, bias: float = 0.5, c: float = 1.0) -> "BoundedDiffSpec":
        return cls((bias,) * n, (c,) * n)

    @property
    def n(self) -> int:
        return len(self.biases)


class BoundedDifferenceError(ValueError):
    """A claimed per-coordinate difference bound fails; carries a witness pair."""

    def __init__(self, coord: int, x: int, y: int, diff: float, bound: float):
        self.coord = coord
        self.witness = (x, y)
        super().__init__(
            f"coordinate {coord}: |f({x}) - f({y})| = {diff!r} exceeds bound {bound!r}"
        )


@dataclass(frozen=True)
class HoeffdingCheck:
    lhs: float
    rhs: float
    c: float
    holds: bool


def hoeffding_lemma_check(
    values: Sequence[float], masses: Sequence[float], c: float | None = None
) -> HoeffdingCheck:
    """E exp(U - EU) <= exp(c^2/8) for a variable with range span c.

    c defaults to the exact span of the support; an explicit c must be
    at least that span.
    """
    v = np.asarray(values, dtype=np.float64)
    m = np.asarray(masses, dtype=np.float64)
    if v.ndim != 1 or v.shape != m.shape or v.size == 0:
        raise ValueError("values and masses must be matching nonempty vectors")
    if (m < 0).any() or abs(float(m.sum()) - 1.0) > 1e-12:
        raise ValueError("masses must form a distribution")
    span = float(v.max() - v.min())
    if c is None:
        c = span
    elif c < span - 1e-12:
        raise ValueError(f"span {span!r} exceeds claimed c = {c!r}")
    mean = float((m * v).sum())
    lhs = float((m * np.exp(v - mean)).sum())
    rhs = math.exp(c * c / 8.0)
    return HoeffdingCheck(lhs, rhs, c, lhs <= rhs + 1e-12)


@dataclass(frozen=True)
class MartingaleTrace:
    """Doob martingale of f along coordinate exposure.

    levels[i] tabulates U_i = E[f | first i coordinates] over the 2^i
    prefixes (prefix bit j-1 holds coordinate j).  The martingale
    property is exact by construction and asserted on every node.
    """

    spec: BoundedDiffSpec
    levels: tuple[np.ndarray, ...]

    def max_increments(self) -> np.ndarray:
        """Per-coordinate max of |U_i - U_{i-1}| over all prefixes."""
        out = np.empty(self.spec.n)
        for i in range(1, self.spec.n + 1):
            parent = np.concatenate([self.levels[i - 1], self.levels[i - 1]])
            out[i - 1] = float(np.abs(self.levels[i] - parent).max())
        return out


def doob_martingale(f: Sequence[float], spec: BoundedDiffSpec) -> MartingaleTrace:
    """Exact conditional-expectation table of f over all exposure prefixes."""
    table = np.asarray(f, dtype=np.float64)
    if table.shape != (1 << spec.n,):
        raise ValueError(f"function table must have length 2^{spec.n}")
    levels = [table.copy()]
    for i in range(spec.n, 0, -1):
        cur = levels[-1]
        half = 1 << (i - 1)
        p = spec.biases[i - 1]
        levels.append((1.0 - p) * cur[:half] + p * cur[half:])
    levels.reverse()
    for i in range(1, spec.n + 1):
        half = 1 << (i - 1)
        p = spec.biases[i - 1]
        back = (1.0 - p) * levels[i][:half] + p * levels[i][half:]
        if float(np.abs(back - levels[i - 1]).max()) > 1e-12:
            raise AssertionError("martingale property violated")  # pragma: no cover
    return MartingaleTrace(spec, tuple(levels))


def _verify_bounded_differences(table: np.ndarray, spec: BoundedDiffSpec) -> None:
    n = spec.n
    for i in range(n):
        v = table.reshape(-1, 2, 1 << i)
        diffs = np.abs(v[:, 0, :] - v[:, 1, :])
        worst = float(diffs.max())
        if worst > spec.diff_bounds[i] + 1e-12:
            block, off = np.unravel_index(int(diffs.argmax()), diffs.shape)
            x = int(block) * (2 << i) + int(off)
            raise BoundedDifferenceError(i, x, x | (1 << i), worst, spec.diff_bounds[i])


@dataclass(frozen=True)
class TailCheck:
    z: float
    prob: float
    bound: float
    holds: bool


def azuma_mcdiarmid_check(f: Sequence[float], spec: BoundedDiffSpec, z: float) -> TailCheck:
    """Exact upper tail Pr[f - Ef >= z] against exp(-2 z^2 / sum c_i^2).

    The claimed difference bounds are verified exhaustively first; a
    violation is a caller error raised with a witness pair.
    """
    if z < 0.0:
        raise ValueError(f"deviation must be nonnegative: {z!r}")
    table = np.asarray(f, dtype=np.float64)
    if table.shape != (1 << spec.n,):
        raise ValueError(f"function table must have length 2^{spec.n}")
    _verify_bounded_differences(table, spec)
    w = product_weights(spec.biases)
    mean = float((w * table).sum())
    prob = float(w[table - mean >= z].sum())
    denom = math.fsum(c * c for c in spec.diff_bounds)
    if denom == 0.0:
        bound = 1.0 if z == 0.0 else 0.0
    else:
        bound = math.exp(-2.0 * z * z / denom)
    return TailCheck(z, prob, bound, prob <= bound + 1e-12)


def _blowup_term(n: int, mu: float) -> float:
    if mu <= 0.0:
        return math.inf
    if mu >= 1.0:
        return 0.0
    return math.sqrt((n / 2.0) * math.log(1.0 / mu))


@dataclass(frozen=True)
class BlowupCheck:
    dist: int
    bound: float
    mu_B: float
    mu_B2: float
    holds: bool


def blowing_up_check(B: CubeSet, B2: CubeSet, bias: Sequence[float]) -> BlowupCheck:
    """Two sets of product measure mu, mu' sit within
    sqrt((n/2) ln(1/mu)) + sqrt((n/2) ln(1/mu')) of each other."""
    dist = set_distance(B, B2)
    mu = product_measure(B, bias)
    mu2 = product_measure(B2, bias)
    n = B.n
    bound = _blowup_term(n, mu) + _blowup_term(n, mu2)
    return BlowupCheck(dist, bound, mu, mu2, dist <= bound + 1e-12)


@dataclass(frozen=True)
class CorollaryCheck:
    d_star: int
    mu_B: float
    mu_Bd: float
    floor: float
    holds: bool


def blowup_corollary_check(
    B: CubeSet, spec: NoiseSpec, shift: int, power: float = 1.0
) -> CorollaryCheck:
    """Measure at least n^-power forces the d*-neighborhood above 1 - n^-power.

    The measure is the product law with bias tau at coordinates where
    shift is 0 and 1 - tau where shift is 1 (the law of a noisy copy of
    the shift point), and d* = ceil(2 sqrt((n/2) * power * ln n)).
    Instances below the measure floor pass vacuously.
    """
    tau = spec.uniform_rate()
    n = B.n
    if B.n != spec.n:
        raise ValueError(f"dimension mismatch: {B.n} vs {spec.n}")
    if not 0 <= shift < (1 << n):
        raise ValueError(f"shift mask out of range: {shift!r}")
    if power <= 0.0:
        raise ValueError(f"power must be positive: {power!r}")
    d_star = min(n, math.ceil(2.0 * math.sqrt((n / 2.0) * power * math.log(n))))
    bias = [1.0 - tau if (shift >> i) & 1 else tau for i in range(n)]
    floor = float(n) ** -power
    mu_B = product_measure(B, bias)
    mu_Bd = product_measure(neighborhood(B, d_star), bias)
    holds = (mu_B < floor) or (mu_Bd >= 1.0 - floor)
    return CorollaryCheck(d_star, mu_B, mu_Bd, floor, holds)
