"""Walsh-Hadamard spectra and the spectral side of the noise operator.

The transform convention is

    coeff[S] = 2^-n * sum_x f(x) * (-1)^popcount(S & x)

so the forward direction carries the 2^-n factor and the inverse is
the bare butterfly.  Independent per-coordinate bit flips act
diagonally in this basis: the coefficient at mask S is scaled by
prod_{i in S} (1 - 2*tau_i).  That diagonalization powers the exact
hit-probability computation in the noise module, a low/high degree
split certificate for the size of high-hit-probability sets, and a
two-function hypercontractivity check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cube import CubeSet

__all__ = [
    "Spectrum",
    "wht",
    "inverse_wht",
    "noise_multipliers",
    "apply_noise_operator",
    "popcounts",
    "NazarovCertificate",
    "nazarov_certificate",
    "HyperCheck",
    "hyper_check",
]


def _as_table(values, what: str = "table") -> np.ndarray:
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError(f"{what} must be one-dimensional")
    if arr.size == 0 or arr.size & (arr.size - 1):
        raise ValueError(f"{what} length must be a power of two: {arr.size}")
    return arr


def _butterfly(values: np.ndarray) -> np.ndarray:
    """Unnormalized in-place transform along the last axis."""
    out = np.array(values, dtype=np.float64)
    m = out.shape[-1]
    shape = out.shape
    h = 1
    while h < m:
        v = out.reshape(-1, m // (2 * h), 2, h)
        top = v[..., 0, :] + v[..., 1, :]
        bot = v[..., 0, :] - v[..., 1, :]
        v[..., 0, :] = top
        v[..., 1, :] = bot
        h *= 2
    return out.reshape(shape)


@dataclass(frozen=True)
class Spectrum:
    n: int
    coeffs: np.ndarray


def wht(values) -> Spectrum:
    """Forward transform of a real table over the 2^n cube points."""
    arr = _as_table(values)
    n = arr.size.bit_length() - 1
    return Spectrum(n, _butterfly(arr) / arr.size)


def inverse_wht(spectrum: Spectrum | np.ndarray) -> np.ndarray:
    """Inverse transform; omits the 2^-n factor so wht -> inverse_wht is identity."""
    coeffs = spectrum.coeffs if isinstance(spectrum, Spectrum) else spectrum
    return _butterfly(_as_table(coeffs, "coefficient table"))


def noise_multipliers(spec) -> np.ndarray:
    """Per-mask spectral multipliers: entry S is prod_{i in S} (1 - 2*tau_i)."""
    t = np.ones(1, dtype=np.float64)
    for tau in spec.taus:
        t = np.concatenate([t, t * (1.0 - 2.0 * tau)])
    return t


def apply_noise_operator(values, spec) -> np.ndarray:
    """Exact pointwise expectation of a table under independent bit flips.

    Transform, scale each mask by its multiplier, transform back.
    """
    arr = _as_table(values)
    if arr.size != 1 << spec.n:
        raise ValueError(f"table length {arr.size} does not match dimension {spec.n}")
    return inverse_wht(wht(arr).coeffs * noise_multipliers(spec))


def popcounts(n: int) -> np.ndarray:
    """Popcount of every mask in [0, 2^n)."""
    return np.bitwise_count(np.arange(1 << n, dtype=np.uint32)).astype(np.int64)


@dataclass(frozen=True)
class NazarovCertificate:
    """Degree-split certificate bounding the measure of a threshold set.

    With mu = mu(B), the cutoff d is the largest degree whose mask count
    keeps the low part below eps/2 in worst case: mu * sum_{k<d} C(n,k)
    <= eps/2.  The noised indicator splits into degrees < d and >= d;
    the three recorded clauses are

      low:     max_x |low part| <= eps/2
      high:    L2 norm of high part <= (1-2*tau)^d * sqrt(mu)
      measure: mu(A_eps) <= (2/eps)^2 * (1-2*tau)^(2d) * mu

    where A_eps is the set with hit probability >= eps.  The bound is
    vacuous (flagged, not failed) when its right side reaches 1.
    """

    n: int
    tau: float
    eps: float
    d: int
    mu_B: float
    low_part_max: float
    high_part_norm: float
    mu_A: float
    rhs: float
    low_ok: bool
    high_ok: bool
    holds: bool
    vacuous: bool


def nazarov_certificate(B: CubeSet, tau: float, eps: float) -> NazarovCertificate:
    if B.bits == 0:
        raise ValueError("certificate requires a nonempty set")
    if not 0.0 < tau < 0.5:
        raise ValueError(f"flip rate must lie in (0, 1/2): {tau!r}")
    if not 0.0 < eps < 1.0:
        raise ValueError(f"eps must lie in (0, 1): {eps!r}")
    n = B.n
    mu = B.size / B.num_points
    d = 0
    acc = 0
    for k in range(n + 1):
        acc += math.comb(n, k)
        if mu * acc <= eps / 2.0:
            d = k + 1
        else:
            break

    degrees = popcounts(n)
    coeffs = wht(B.indicator()).coeffs * ((1.0 - 2.0 * tau) ** degrees)
    low = np.where(degrees < d, coeffs, 0.0)
    high = np.where(degrees >= d, coeffs, 0.0)
    low_part_max = float(np.abs(inverse_wht(low)).max())
    high_part_norm = math.sqrt(float((high * high).sum()))
    hits = inverse_wht(coeffs)
    mu_A = float((hits >= eps).sum()) / B.num_points
    rho = 1.0 - 2.0 * tau
    rhs = (2.0 / eps) ** 2 * rho ** (2 * d) * mu
    return NazarovCertificate(
        n=n,
        tau=tau,
        eps=eps,
        d=d,
        mu_B=mu,
        low_part_max=low_part_max,
        high_part_norm=high_part_norm,
        mu_A=mu_A,
        rhs=rhs,
        low_ok=low_part_max <= eps / 2.0 + 1e-12,
        high_ok=high_part_norm <= rho**d * math.sqrt(mu) + 1e-12,
        holds=mu_A <= rhs + 1e-12,
        vacuous=rhs >= 1.0,
    )


@dataclass(frozen=True)
class HyperCheck:
    lhs: float
    rhs: float
    tau: float
    r: float
    s: float
    holds: bool


def hyper_check(f, g, tau: float, r: float, s: float) -> HyperCheck:
    """Two-function noise pairing against the product of (1+r), (1+s) norms.

    Checks E[f(x) g(y)] <= ||f||_{1+r} ||g||_{1+s} with x uniform and y a
    tau-noisy copy of x, valid whenever 0 <= 1-2*tau <= sqrt(r*s) <= 1.
    Precondition violations raise; a failed comparison only clears the
    holds flag.
    """
    if not 0.0 < tau <= 0.5:
        raise ValueError(f"flip rate must lie in (0, 1/2]: {tau!r}")
    if r < 0.0 or s < 0.0:
        raise ValueError("norm parameters must be nonnegative")
    rho = 1.0 - 2.0 * tau
    root = math.sqrt(r * s)
    # 1 ulp of guard: root arrives through a square root of a product.
    if root > 1.0 + 1e-12 or root < rho * (1.0 - 1e-12):
        raise ValueError(f"need 1-2*tau <= sqrt(r*s) <= 1, got sqrt(r*s) = {root!r}")
    f_arr = _as_table(f, "first table")
    g_arr = _as_table(g, "second table")
    if f_arr.size != g_arr.size:
        raise ValueError("tables must share a dimension")
    if (f_arr < 0.0).any() or (g_arr < 0.0).any():
        raise ValueError("tables must be nonnegative")
    n = f_arr.size.bit_length() - 1

    from .noise import NoiseSpec  # local: noise builds on this module

    noised = apply_noise_operator(g_arr, NoiseSpec.uniform(tau, n))
    lhs = float((f_arr * noised).mean())
    rhs = float(np.mean(f_arr ** (1.0 + r)) ** (1.0 / (1.0 + r))) * float(
        np.mean(g_arr ** (1.0 + s)) ** (1.0 / (1.0 + s))
    )
    return HyperCheck(lhs=lhs, rhs=rhs, tau=tau, r=r, s=s, holds=lhs <= rhs + 1e-12)
