"""Finite-n verification harness for the set-size increase bounds.

Two inequalities are exercised over deterministic set families.  For a
target set B and threshold set A of points likely to land in B:

  weak:   with theta = 1 - 1/n, every nonempty A obeys
          log2 #B >= n * beta_pred - 2, where beta_pred is the curve
          value at the empirical alpha of A;

  strong: with theta = 1/n, every point of A pushes the d*-neighborhood
          of B above measure 1 - 1/n (d* = ceil(2 sqrt((n/2) ln n))),
          and log2 #B >= n * beta_pred - 2 - log2 ball_size(n, d*).

Both are theorems at every finite n; the harness recomputes all the
pieces exactly and records the verdicts, so any false row is a bug.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .cube import CubeSet, ball_size, hamming_ball, neighborhood, uniform_log_density
from .entcurve import binary_entropy, binary_entropy_inv, noise_param
from .fourier import _butterfly, noise_multipliers
from .noise import NoiseSpec, hit_probabilities, threshold_set, trial_stream

__all__ = [
    "FamilySpec",
    "make_family",
    "default_families",
    "DEFAULT_NS",
    "DEFAULT_TAUS",
    "HarnessRow",
    "weak_bound_trial",
    "strong_bound_trial",
    "FrontierPoint",
    "exhaustive_worst_case",
    "threshold_profile",
]

DEFAULT_NS = (8, 12, 16)
DEFAULT_TAUS = (0.05, 0.1, 0.25)

_KINDS = ("ball", "subcube", "random", "linear_code", "complement_of")


@dataclass(frozen=True)
class FamilySpec:
    """Recipe for one deterministic target-set family.

    kind-specific parameters:
      ball:          center, radius
      subcube:       fixed_mask, fixed_values (coordinates pinned to bits)
      random:        density, seed (each point kept independently)
      linear_code:   rank, seed (XOR span of rank independent generators)
      complement_of: inner (another FamilySpec)
    """

    kind: str
    center: int = 0
    radius: int = 0
    fixed_mask: int = 0
    fixed_values: int = 0
    density: float = 0.0
    seed: int = 0
    rank: int = 0
    inner: Optional["FamilySpec"] = None

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"unknown family kind: {self.kind!r}")

    def label(self) -> str:
        if self.kind == "ball":
            return f"ball(c={self.center},r={self.radius})"
        if self.kind == "subcube":
            return f"subcube(mask={self.fixed_mask:#x},vals={self.fixed_values:#x})"
        if self.kind == "random":
            return f"random(density={self.density},seed={self.seed})"
        if self.kind == "linear_code":
            return f"linear_code(rank={self.rank},seed={self.seed})"
        return f"complement_of({self.inner.label()})"


def make_family(spec: FamilySpec, n: int) -> CubeSet:
    """Materialize a family recipe at dimension n; degenerate recipes error."""
    if spec.kind == "ball":
        return hamming_ball(n, spec.center, spec.radius)
    if spec.kind == "subcube":
        if spec.fixed_values & ~spec.fixed_mask:
            raise ValueError("fixed values outside the fixed coordinate mask")
        if spec.fixed_mask >= (1 << n):
            raise ValueError("fixed coordinate mask out of range")
        idx = np.arange(1 << n)
        return CubeSet.from_indicator(n, (idx & spec.fixed_mask) == spec.fixed_values)
    if spec.kind == "random":
        if not 0.0 < spec.density < 1.0:
            raise ValueError(f"density must lie in (0, 1): {spec.density!r}")
        stream = trial_stream(spec.seed, n)
        keep = stream.random(1 << n) < spec.density
        if not keep.any():
            raise ValueError("random family came out empty; adjust density or seed")
        return CubeSet.from_indicator(n, keep)
    if spec.kind == "linear_code":
        return _linear_code(n, spec.rank, spec.seed)
    return make_family(spec.inner, n).complement()


def _linear_code(n: int, rank: int, seed: int) -> CubeSet:
    if not 0 <= rank <= n:
        raise ValueError(f"rank must lie in [0, n]: {rank!r}")
    stream = trial_stream(seed, n)
    basis: list[int] = []
    pivots: dict[int, int] = {}  # leading bit -> reduced vector
    attempts = 0
    while len(basis) < rank:
        attempts += 1
        if attempts > 100 * max(1, rank):
            raise ValueError("could not draw an independent generator set")
        g = int(stream.integers(1, 1 << n))
        reduced = g
        while reduced and (reduced.bit_length() - 1) in pivots:
            reduced ^= pivots[reduced.bit_length() - 1]
        if reduced == 0:
            continue
        pivots[reduced.bit_length() - 1] = reduced
        basis.append(g)
    points = np.zeros(1, dtype=np.int64)
    for g in basis:
        points = np.concatenate([points, points ^ g])
    return CubeSet.from_points(n, (int(x) for x in points))


def default_families(n: int) -> list[tuple[str, FamilySpec]]:
    """The versioned default grid: one spec of each kind, scaled to n."""
    ball = FamilySpec(kind="ball", center=0, radius=max(1, n // 4))
    return [
        ("ball", ball),
        ("subcube", FamilySpec(kind="subcube", fixed_mask=(1 << (n // 2)) - 1, fixed_values=0)),
        ("random", FamilySpec(kind="random", density=0.1, seed=101)),
        ("linear_code", FamilySpec(kind="linear_code", rank=n // 2, seed=202)),
        ("complement_of_ball", FamilySpec(kind="complement_of", inner=ball)),
    ]


@dataclass(frozen=True)
class HarnessRow:
    family: str
    mode: str
    n: int
    tau: float
    theta: float
    log2_B: float
    log2_A: float
    beta_pred: float
    slack_used: float
    verdict: bool
    step1_ok: Optional[bool] = None
    vacuous: bool = False


def _predicted_beta(log2_A: float, n: int, tau: float) -> float:
    alpha_emp = log2_A / n
    return binary_entropy(noise_param(binary_entropy_inv(alpha_emp), tau))


def weak_bound_trial(B: CubeSet, tau: float, family: str = "") -> HarnessRow:
    """One weak-bound verdict: A at theta = 1 - 1/n, slack constant 2 bits."""
    if B.bits == 0:
        raise ValueError("trial requires a nonempty target set")
    n = B.n
    theta = 1.0 - 1.0 / n
    if n == 1:
        # theta = 0: the threshold is vacuous and A is the whole cube.
        A = CubeSet.full(n)
    else:
        A = threshold_set(B, NoiseSpec.uniform(tau, n), theta)
    log2_B = uniform_log_density(B)
    if A.bits == 0:
        return HarnessRow(family, "weak", n, tau, theta, log2_B, -math.inf,
                          0.0, 2.0, True, None, True)
    log2_A = uniform_log_density(A)
    beta_pred = _predicted_beta(log2_A, n, tau)
    return HarnessRow(family, "weak", n, tau, theta, log2_B, log2_A,
                      beta_pred, 2.0, log2_B >= n * beta_pred - 2.0)


def strong_bound_trial(B: CubeSet, tau: float, family: str = "") -> HarnessRow:
    """One strong-bound verdict: A at theta = 1/n, slack 2 + log2 ball_size(n, d*).

    step1_ok records the pointwise expansion premise: every point of A
    drives the d*-neighborhood of B to measure at least 1 - 1/n.
    """
    if B.bits == 0:
        raise ValueError("trial requires a nonempty target set")
    n = B.n
    theta = 1.0 / n
    spec = NoiseSpec.uniform(tau, n)
    A = threshold_set(B, spec, theta)
    d_star = min(n, math.ceil(2.0 * math.sqrt((n / 2.0) * math.log(n))))
    slack = 2.0 + math.log2(ball_size(n, d_star))
    log2_B = uniform_log_density(B)
    if A.bits == 0:
        return HarnessRow(family, "strong", n, tau, theta, log2_B, -math.inf,
                          0.0, slack, True, True, True)
    hits_d = hit_probabilities(neighborhood(B, d_star), spec)
    step1_ok = bool(hits_d[A.bool_array()].min() >= 1.0 - 1.0 / n)
    log2_A = uniform_log_density(A)
    beta_pred = _predicted_beta(log2_A, n, tau)
    return HarnessRow(family, "strong", n, tau, theta, log2_B, log2_A,
                      beta_pred, slack, log2_B >= n * beta_pred - slack, step1_ok)


@dataclass(frozen=True)
class FrontierPoint:
    card_B: int
    log2_B: float
    card_A: int
    log2_A: float
    witness: int


def exhaustive_worst_case(n: int, tau: float, theta: float) -> list[FrontierPoint]:
    """Scan every nonempty subset B of the n-cube (n <= 4).

    For each cardinality of B, report the largest threshold set found
    and a witness B attaining it.  Thresholding uses the exact spectral
    hit probabilities, batched across all subsets.
    """
    if not 1 <= n <= 4:
        raise ValueError(f"exhaustive scan is capped at n = 4: {n!r}")
    if not 0.0 < theta <= 1.0:
        raise ValueError(f"threshold must lie in (0, 1]: {theta!r}")
    npts = 1 << n
    ids = np.arange(1, 1 << npts, dtype=np.uint32)
    tables = ((ids[:, None] >> np.arange(npts)[None, :]) & 1).astype(np.float64)
    mult = noise_multipliers(NoiseSpec.uniform(tau, n))
    hits = _butterfly(_butterfly(tables) / npts * mult)
    card_A = (hits >= theta).sum(axis=1)
    card_B = tables.sum(axis=1).astype(np.int64)
    frontier = []
    for size in range(1, npts + 1):
        rows = np.nonzero(card_B == size)[0]
        best = rows[int(card_A[rows].argmax())]
        ca = int(card_A[best])
        frontier.append(
            FrontierPoint(size, math.log2(size), ca,
                          math.log2(ca) if ca else -math.inf, int(ids[best]))
        )
    return frontier


def threshold_profile(B: CubeSet, tau: float, grid: int) -> list[tuple[float, float]]:
    """log2 #A_theta on a log-spaced theta grid in (0, 1); empty A maps to -inf."""
    if grid < 2:
        raise ValueError(f"grid must be >= 2: {grid!r}")
    hits = hit_probabilities(B, NoiseSpec.uniform(tau, B.n))
    out = []
    for theta in np.geomspace(2.0 ** -B.n, 1.0, grid, endpoint=False):
        count = int((hits >= theta).sum())
        out.append((float(theta), math.log2(count) if count else -math.inf))
    return out
