"""Shannon entropy of cube distributions under the bit-flip channel.

The central fact checked here: pushing any distribution P on the
n-cube through independent flips at uniform rate tau raises its
entropy to at least n * H(N(Hinv(H(P)/n), tau)) - the single-coordinate
curve, tensorized.  Equality holds exactly for product Bernoulli
inputs, which is what makes the curve the optimal profile.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .entcurve import binary_entropy, binary_entropy_inv, noise_param
from .fourier import apply_noise_operator
from .noise import NoiseSpec

__all__ = [
    "ProbVector",
    "entropy",
    "pushforward_noise",
    "TensorBoundResult",
    "tensor_bound_check",
    "one_letter_scatter",
    "MarkovCheck",
    "markov_conditional_check",
]


@dataclass(frozen=True)
class ProbVector:
    """A probability distribution over the 2^n cube points.

    Entries may carry float dust down to -1e-15 (clamped to zero on
    construction); anything more negative, a wrong length, or total
    mass off by more than 1e-9 is rejected.
    """

    n: int
    probs: np.ndarray

    def __post_init__(self) -> None:
        if not 1 <= self.n <= 26:
            raise ValueError(f"dimension must lie in [1, 26]: {self.n!r}")
        arr = np.asarray(self.probs, dtype=np.float64)
        if arr.shape != (1 << self.n,):
            raise ValueError(f"distribution must have length 2^{self.n}")
        if float(arr.min()) < -1e-15:
            raise ValueError(f"negative probability: {float(arr.min())!r}")
        total = float(arr.sum())
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"total mass {total!r} is not 1")
        arr = np.where(arr < 0.0, 0.0, arr)
        arr.flags.writeable = False
        object.__setattr__(self, "probs", arr)

    @classmethod
    def point_mass(cls, n: int, point: int) -> "ProbVector":
        if not 0 <= point < (1 << n):
            raise ValueError(f"point mask out of range: {point!r}")
        probs = np.zeros(1 << n)
        probs[point] = 1.0
        return cls(n, probs)

    @classmethod
    def uniform(cls, n: int) -> "ProbVector":
        return cls(n, np.full(1 << n, 1.0 / (1 << n)))

    @classmethod
    def bernoulli_product(cls, bias: Sequence[float]) -> "ProbVector":
        from .cube import product_weights

        return cls(len(bias), product_weights(bias))


def _entropy_of(arr: np.ndarray) -> float:
    nz = arr[arr > 0.0]
    return float(-(nz * np.log2(nz)).sum())


def entropy(P: ProbVector) -> float:
    """Shannon entropy in bits, with 0 * log 0 = 0."""
    return _entropy_of(P.probs)


def pushforward_noise(P: ProbVector, spec: NoiseSpec) -> ProbVector:
    """Distribution of y = noisy copy of x, x ~ P.

    The kernel is symmetric, so this is the same spectral operator that
    computes hit probabilities, applied to the probability table.
    Float dust below zero is clamped at -1e-12 (beyond that it is a
    genuine numerical failure and aborts); total mass must survive
    within 1e-10.
    """
    if P.n != spec.n:
        raise ValueError(f"dimension mismatch: {P.n} vs {spec.n}")
    out = apply_noise_operator(P.probs, spec)
    low = float(out.min())
    if low < -1e-12:
        raise ArithmeticError(f"pushforward produced mass {low!r} below -1e-12")
    out = np.where(out < 0.0, 0.0, out)
    total = float(out.sum())
    if abs(total - 1.0) > 1e-10:
        raise ArithmeticError(f"pushforward mass drifted to {total!r}")
    return ProbVector(P.n, out)


@dataclass(frozen=True)
class TensorBoundResult:
    h_in: float
    h_out: float
    h_bound: float
    holds: bool


def tensor_bound_check(P: ProbVector, tau: float) -> TensorBoundResult:
    """Verify H(P') >= n * H(N(Hinv(H(P)/n), tau)) for P' the noisy pushforward."""
    if not 0.0 <= tau <= 1.0:
        raise ValueError(f"flip rate out of range: {tau!r}")
    h_in = entropy(P)
    h_out = entropy(pushforward_noise(P, NoiseSpec.uniform(tau, P.n)))
    p_star = binary_entropy_inv(min(1.0, h_in / P.n))
    h_bound = P.n * binary_entropy(noise_param(p_star, tau))
    return TensorBoundResult(h_in, h_out, h_bound, h_out >= h_bound - 1e-9)


def one_letter_scatter(tau: float, samples: int, stream: np.random.Generator) -> np.ndarray:
    """(input entropy, output entropy) pairs for random one-coordinate inputs.

    Each sample draws p uniform on [0, 1], pushes Bernoulli(p) through
    the channel, and records both entropies; every pair lies on the
    n = 1 curve.  Returns an array of shape (samples, 2).
    """
    if samples < 1:
        raise ValueError(f"need at least one sample: {samples!r}")
    spec = NoiseSpec.uniform(tau, 1)
    out = np.empty((samples, 2))
    for i, p in enumerate(stream.random(samples)):
        P = ProbVector(1, np.array([1.0 - p, p]))
        out[i, 0] = entropy(P)
        out[i, 1] = entropy(pushforward_noise(P, spec))
    return out


@dataclass(frozen=True)
class MarkovCheck:
    lhs: float
    rhs: float
    holds: bool


def markov_conditional_check(
    marginal: Sequence[float],
    channel1: np.ndarray,
    channel2: np.ndarray,
) -> MarkovCheck:
    """Conditioning on a derived variable cannot reveal more than the source.

    The joint is built here from a marginal for X and two channel
    matrices producing Q1 and Q2 independently given X, so the check
    H(Q2 | Q1) >= H(Q2 | X) applies by construction.  Channel rows must
    be distributions; exact enumeration over the (small) alphabets.
    """
    m = np.asarray(marginal, dtype=np.float64)
    c1 = np.asarray(channel1, dtype=np.float64)
    c2 = np.asarray(channel2, dtype=np.float64)
    if m.ndim != 1 or c1.ndim != 2 or c2.ndim != 2:
        raise ValueError("expected a marginal vector and two channel matrices")
    if c1.shape[0] != m.size or c2.shape[0] != m.size:
        raise ValueError("channel rows must match the marginal alphabet")
    if (m < 0).any() or abs(float(m.sum()) - 1.0) > 1e-12:
        raise ValueError("marginal is not a distribution")
    for name, ch in (("first", c1), ("second", c2)):
        if (ch < 0).any() or np.abs(ch.sum(axis=1) - 1.0).max() > 1e-12:
            raise ValueError(f"{name} channel has a malformed row")

    joint12 = np.einsum("i,ij,ik->jk", m, c1, c2)
    q1 = joint12.sum(axis=1)
    lhs = _entropy_of(joint12.ravel()) - _entropy_of(q1)
    rhs = float(sum(m[i] * _entropy_of(c2[i]) for i in range(m.size)))
    return MarkovCheck(lhs, rhs, lhs >= rhs - 1e-9)
