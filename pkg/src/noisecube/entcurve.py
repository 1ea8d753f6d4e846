"""Binary entropy curve of the bit-flip channel.

A Bernoulli(p) coordinate pushed through a channel that flips the bit
with probability tau becomes Bernoulli(N(p, tau)) with
N(p, tau) = p + tau - 2*p*tau.  Sweeping p over [0, 1/2] traces the
parametric curve (H(p), H(N(p, tau))) in the (alpha, beta) plane: the
exact entropy-increase profile of the channel.  This module computes
that curve, its inverse reading (alpha as a function of beta), and two
weaker closed-form bounds used for comparison, together with numerical
convexity/slope diagnostics.

All entropies are base 2.  Scalar functions use math; grid sweeps stay
cheap enough that no vectorization is needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "binary_entropy",
    "binary_entropy_inv",
    "noise_param",
    "CurvePoint",
    "curve_point",
    "sample_curve",
    "min_increase_delta",
    "alpha_opt_of_beta",
    "alpha_hypercontractive",
    "alpha_fourier_asymptotic",
    "max_increase_line",
    "ConvexityReport",
    "convexity_report",
]

_INV_TOL = 1e-12
_INV_MAX_ITER = 200


def binary_entropy(p: float) -> float:
    """H(p) = -p*log2(p) - (1-p)*log2(1-p), with H(0) = H(1) = 0."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability out of range: {p!r}")
    if p == 0.0 or p == 1.0:
        return 0.0
    return -p * math.log2(p) - (1.0 - p) * math.log2(1.0 - p)


def _entropy_deficiency(p: float) -> float:
    # 1 - H(p) without cancellation near p = 1/2, where H itself rounds
    # to 1.  Used for accurate slope/second-difference arithmetic.
    if p <= 0.0 or p >= 1.0:
        return 1.0
    u = p - 0.5
    return ((0.5 + u) * math.log1p(2.0 * u) + (0.5 - u) * math.log1p(-2.0 * u)) / math.log(2.0)


def binary_entropy_inv(y: float) -> float:
    """Inverse of binary_entropy on [0, 1/2].

    Bisection to absolute residual <= 1e-12 (iteration cap 200).
    """
    if not 0.0 <= y <= 1.0:
        raise ValueError(f"entropy value out of range: {y!r}")
    if y == 0.0:
        return 0.0
    if y == 1.0:
        return 0.5
    lo, hi = 0.0, 0.5
    for _ in range(_INV_MAX_ITER):
        mid = 0.5 * (lo + hi)
        if binary_entropy(mid) < y:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-17 and abs(binary_entropy(0.5 * (lo + hi)) - y) <= _INV_TOL:
            break
    return 0.5 * (lo + hi)


def noise_param(p: float, tau: float) -> float:
    """Bias of a Bernoulli(p) bit after an independent flip with rate tau."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability out of range: {p!r}")
    if not 0.0 <= tau <= 1.0:
        raise ValueError(f"flip rate out of range: {tau!r}")
    return p + tau - 2.0 * p * tau


@dataclass(frozen=True)
class CurvePoint:
    p: float
    alpha: float
    beta: float
    tau: float


def curve_point(p: float, tau: float) -> CurvePoint:
    """One point of the entropy curve: (H(p), H(N(p, tau)))."""
    if not 0.0 <= p <= 0.5:
        raise ValueError(f"curve parameter must lie in [0, 1/2]: {p!r}")
    if not 0.0 < tau < 1.0:
        raise ValueError(f"flip rate must lie in (0, 1): {tau!r}")
    return CurvePoint(p, binary_entropy(p), binary_entropy(noise_param(p, tau)), tau)


def sample_curve(tau: float, grid: int) -> list[CurvePoint]:
    """Entropy curve sampled at p = i/(2*grid), i = 0..grid."""
    if grid < 2:
        raise ValueError(f"grid must be >= 2: {grid!r}")
    return [curve_point(i / (2.0 * grid), tau) for i in range(grid + 1)]


def min_increase_delta(alpha: float, tau: float) -> float:
    """Guaranteed entropy increase delta(alpha, tau) = beta(alpha) - alpha.

    Strictly positive on alpha in (0, 1); the endpoints are excluded
    because the increase degenerates there.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie strictly inside (0, 1): {alpha!r}")
    if not 0.0 < tau < 1.0:
        raise ValueError(f"flip rate must lie in (0, 1): {tau!r}")
    p = binary_entropy_inv(alpha)
    return binary_entropy(noise_param(p, tau)) - alpha


def alpha_opt_of_beta(beta: float, tau: float) -> float:
    """Inverse reading of the curve: largest alpha with beta(alpha) = beta.

    Defined for beta in [H(tau), 1]; below H(tau) the curve does not
    reach beta (its left endpoint is (0, H(tau))).
    """
    if not 0.0 < tau < 0.5:
        raise ValueError(f"flip rate must lie in (0, 1/2): {tau!r}")
    if beta > 1.0:
        raise ValueError(f"beta out of range: {beta!r}")
    h_tau = binary_entropy(tau)
    if beta < h_tau:
        raise ValueError(f"beta below curve start H(tau) = {h_tau!r}: {beta!r}")
    q = binary_entropy_inv(beta)
    p = (q - tau) / (1.0 - 2.0 * tau)
    if p < 0.0:
        if p < -1e-9:
            raise ValueError(f"beta below curve start: {beta!r}")
        p = 0.0
    if p > 0.5:
        if p > 0.5 + 1e-9:
            raise ValueError(f"beta above curve end: {beta!r}")
        p = 0.5
    return binary_entropy(p)


def alpha_hypercontractive(beta: float, tau: float) -> float:
    """Hypercontractive size bound: alpha <= 1 - (1-beta)/(1-2*tau)^2.

    May be negative for small beta; returned unclamped.
    """
    if not 0.0 <= beta <= 1.0:
        raise ValueError(f"beta out of range: {beta!r}")
    if not 0.0 < tau < 0.5:
        raise ValueError(f"flip rate must lie in (0, 1/2): {tau!r}")
    rho = 1.0 - 2.0 * tau
    return 1.0 - (1.0 - beta) / (rho * rho)


def alpha_fourier_asymptotic(beta: float, tau: float) -> float:
    """Degree-split size bound: alpha <= beta + 2*Hinv(1-beta)*log2(1-2*tau)."""
    if not 0.0 < beta < 1.0:
        raise ValueError(f"beta must lie strictly inside (0, 1): {beta!r}")
    if not 0.0 < tau < 0.5:
        raise ValueError(f"flip rate must lie in (0, 1/2): {tau!r}")
    return beta + 2.0 * binary_entropy_inv(1.0 - beta) * math.log2(1.0 - 2.0 * tau)


def max_increase_line(alpha: float, tau: float) -> float:
    """Reference ceiling min(1, alpha + H(tau)): no more than H(tau) is gained."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha out of range: {alpha!r}")
    if not 0.0 <= tau <= 1.0:
        raise ValueError(f"flip rate out of range: {tau!r}")
    return min(1.0, alpha + binary_entropy(tau))


@dataclass(frozen=True)
class ConvexityReport:
    tau: float
    grid: int
    min_second_difference: float
    max_slope: float


def convexity_report(tau: float, grid: int) -> ConvexityReport:
    """Numerical convexity/slope scan of beta as a function of alpha.

    Consecutive chord slopes are computed from entropy deficiencies
    (1 - H) so the near-flat top of the curve does not lose precision
    to cancellation; the minimum difference of consecutive slopes and
    the maximum chord slope are reported.
    """
    if grid < 3:
        raise ValueError(f"grid must be >= 3: {grid!r}")
    if not 0.0 < tau <= 0.5:
        raise ValueError(f"flip rate must lie in (0, 1/2]: {tau!r}")
    ps = [i / (2.0 * grid) for i in range(grid + 1)]
    da = [_entropy_deficiency(p) for p in ps]
    db = [_entropy_deficiency(noise_param(p, tau)) for p in ps]
    slopes = []
    for i in range(grid):
        dalpha = da[i] - da[i + 1]
        dbeta = db[i] - db[i + 1]
        if dalpha <= 0.0:
            continue
        slopes.append(dbeta / dalpha)
    max_slope = max(slopes)
    min_sd = min(slopes[i + 1] - slopes[i] for i in range(len(slopes) - 1))
    return ConvexityReport(tau, grid, min_sd, max_slope)
