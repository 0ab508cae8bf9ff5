"""Chu sequence sets and their peak AF behaviour inside a matched LAZ.

A Chu sequence of length N and root a is s_t = exp(j*pi*a*t^2/N).  Its
aperiodic AAF collapses to a geometric sum, so |A(tau, nu)|^2 has the exact
closed form

    sin^2(pi*((nu - a*tau)*tau mod N)/N) / sin^2(pi*((nu - a*tau) mod N)/N)

for tau >= 0, degenerating to (N - tau)^2 when nu - a*tau is a multiple of N.
Inside the zone |nu| < |a|, |tau| <= beta*N/|a| - 1 (1/2 < beta < 1) the peak
|AAF|/sqrt(N) tends to 0.4802/sqrt(|a|) as N grows; cross peaks of a root
pair a1 > a2 obey an exponential-sum cap of order sqrt(N).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .afcore import LazSpec, Sequence

__all__ = [
    "NotApplicableError",
    "ChuSpec",
    "ChuAsymptote",
    "AAF_LIMIT_COEFFICIENT",
    "peak_shape",
    "chu_sequence",
    "chu_sequence_set",
    "chu_aaf_closed_form",
    "chu_aaf_grid",
    "theorem3_laz",
    "theorem3_ratio",
    "theorem4_caf_bound",
    "vdc_sum_bound",
    "order_optimal_laz",
]

AAF_LIMIT_COEFFICIENT = 0.4802


class NotApplicableError(ValueError):
    """Raised when a construction's preconditions exclude the given parameters."""


def peak_shape(phi: float) -> float:
    """(1 - cos(phi)) / phi, the envelope whose peak fixes the AAF limit."""
    return (1.0 - math.cos(phi)) / phi


@dataclass(frozen=True)
class ChuAsymptote:
    """Constants of the large-N AAF peak: limit = constant/sqrt(|a|).

    ``phi0`` maximizes ``peak_shape`` on (0, 2*pi]; the limit coefficient is
    sqrt(peak_shape(phi0)/pi).
    """

    constant: float = AAF_LIMIT_COEFFICIENT
    phi0: float = 2.3311
    f_phi0: float = 0.7246
    beta_low: float = 0.5
    beta_high: float = 1.0

    def __post_init__(self) -> None:
        if abs(peak_shape(self.phi0) - self.f_phi0) > 5e-4:
            raise ValueError("phi0 and f_phi0 are inconsistent with the peak shape")


@dataclass(frozen=True)
class ChuSpec:
    """Length N and distinct nonzero roots a_m with |a_m| in [1, N-1]."""

    n: int
    roots: Tuple[int, ...]

    def __post_init__(self) -> None:
        roots = tuple(int(a) for a in self.roots)
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not roots:
            raise ValueError("at least one root is required")
        if len(set(roots)) != len(roots):
            raise ValueError("roots must be pairwise distinct")
        for a in roots:
            if a == 0 or not 1 <= abs(a) <= self.n - 1:
                raise ValueError(f"root {a} must be nonzero with |a| in [1, N-1]")
        object.__setattr__(self, "roots", roots)


def chu_sequence(n: int, a: int) -> Sequence:
    """The root-a Chu sequence exp(j*pi*a*t^2/N) of length N."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if a == 0 or abs(a) > n - 1:
        raise ValueError(f"root a = {a} must be nonzero with |a| <= N-1")
    t = np.arange(n, dtype=np.float64)
    return Sequence(np.exp(1j * math.pi * a * t * t / n))


def chu_sequence_set(spec: ChuSpec):
    from .afcore import SequenceSet

    return SequenceSet(tuple(chu_sequence(spec.n, a) for a in spec.roots))


def chu_aaf_closed_form(n: int, a: int, tau: int, nu: int) -> float:
    """|AAF|^2 of the root-a Chu sequence at tau >= 0, any integer Doppler nu.

    The residues are reduced in exact integer arithmetic before taking sines,
    so the quotient stays stable for large N.
    """
    if tau < 0:
        raise ValueError("closed form is stated for tau >= 0; use |A(tau,nu)| = |A(-tau,-nu)|")
    if tau >= n:
        raise ValueError("tau must be <= N-1")
    m = int(nu) - int(a) * int(tau)
    r_den = m % n
    if r_den == 0:
        return float(n - tau) ** 2
    r_num = (m * tau) % n
    s_num = math.sin(math.pi * r_num / n)
    s_den = math.sin(math.pi * r_den / n)
    return (s_num * s_num) / (s_den * s_den)


def chu_aaf_grid(n: int, a: int, taus, nus) -> np.ndarray:
    """Vectorized closed form: |AAF|^2 on a (len(taus), len(nus)) grid, taus >= 0."""
    taus = np.asarray(taus, dtype=np.int64)
    nus = np.asarray(nus, dtype=np.int64)
    if taus.size and int(taus.min()) < 0:
        raise ValueError("taus must be non-negative")
    m = nus[None, :] - int(a) * taus[:, None]
    r_den = np.mod(m, n)
    r_num = np.mod(m * taus[:, None], n)
    num = np.sin(np.pi * r_num / n) ** 2
    den = np.sin(np.pi * r_den / n) ** 2
    degenerate = r_den == 0
    out = np.where(degenerate, (n - taus[:, None]).astype(np.float64) ** 2,
                   num / np.where(degenerate, 1.0, den))
    return out


def theorem3_laz(n: int, a: int, beta: float = 0.9) -> LazSpec:
    """The matched zone for the root-a AAF analysis: Z_x = floor(beta*N/|a|), Z_y = |a|.

    Requires |a| > 1, 1/2 < beta < 1 and N >= 5|a|; the delay range
    |tau| <= Z_x - 1 then stays below beta*N/|a|, which keeps every zone cell
    away from the degenerate residue.
    """
    if abs(a) <= 1:
        raise NotApplicableError("requires |a| > 1")
    if not 0.5 < beta < 1.0:
        raise NotApplicableError("requires 1/2 < beta < 1")
    if n < 5 * abs(a):
        raise NotApplicableError(f"requires N >= 5|a| = {5 * abs(a)}")
    # tiny nudge so an exactly-integer beta*N/|a| is not floored down by rounding
    z_x = int(math.floor(beta * n / abs(a) + 1e-9))
    return LazSpec(z_x=z_x, z_y=abs(a))


def theorem3_ratio(n: int, a: int, beta: float = 0.9) -> float:
    """Peak |AAF|/sqrt(N) of the root-a sequence over its matched zone.

    Scans the closed form on tau in [1, Z_x-1] (negative delays follow by
    conjugate symmetry) and |nu| <= |a| - 1.  Tends to 0.4802/sqrt(|a|).
    """
    laz = theorem3_laz(n, a, beta)
    taus = np.arange(1, laz.z_x)
    nus = np.arange(-(laz.z_y - 1), laz.z_y)
    grid = chu_aaf_grid(n, a, taus, nus)
    return float(math.sqrt(grid.max() / n))


def vdc_sum_bound(rho: float, alpha: float, xi: int) -> float:
    """Quadratic exponential-sum cap 3*alpha*xi*sqrt(rho) + 6/sqrt(rho).

    Applies to sums of exp(2j*pi*f(t)) over xi integers when
    rho <= |f''| <= alpha*rho with alpha >= 1.
    """
    if rho <= 0:
        raise ValueError("rho must be positive")
    if alpha < 1:
        raise ValueError("alpha must be >= 1")
    if xi < 0:
        raise ValueError("xi must be >= 0")
    return 3.0 * alpha * xi * math.sqrt(rho) + 6.0 / math.sqrt(rho)


def theorem4_caf_bound(n: int, a1: int, a2: int, tau: int) -> float:
    """Cap on |CAF| of the (a1, a2) Chu pair, a1 > a2, at delay tau (any Doppler):

        3*(sqrt(a1-a2) + 2/sqrt(a1-a2))*sqrt(N) - 3*|tau|*sqrt(a1-a2)/sqrt(N)
    """
    if a1 <= a2:
        raise ValueError("requires a1 > a2")
    root = math.sqrt(a1 - a2)
    return 3.0 * (root + 2.0 / root) * math.sqrt(n) - 3.0 * abs(tau) * root / math.sqrt(n)


def order_optimal_laz(spec: ChuSpec) -> LazSpec:
    """Largest zone on which the set's peak AF stays of order sqrt(N):

    Z_x = floor(N/max|a| - 1) - 1 (strictly below the floor), Z_y = min|a|.
    Requires every |a_m| > 1 and N >= 5*max|a|; a signed root spread above
    sqrt(N) keeps the cross cap from being O(sqrt(N)) and is flagged with a
    warning.
    """
    n = spec.n
    amax = max(abs(a) for a in spec.roots)
    amin = min(abs(a) for a in spec.roots)
    if amin <= 1:
        raise NotApplicableError("requires |a| > 1 for every root")
    if n < 5 * amax:
        raise NotApplicableError(f"requires N >= 5*max|a| = {5 * amax}")
    z_x = (n - amax) // amax - 1
    if z_x < 1:
        raise NotApplicableError("zone collapses: N/max|a| leaves no delay extent")
    spread = max(spec.roots) - min(spec.roots)
    if len(spec.roots) > 1 and spread > math.isqrt(n):
        warnings.warn(
            f"root spread {spread} exceeds sqrt(N) ~ {math.isqrt(n)}; "
            "the cross-AF cap is no longer of order sqrt(N)",
            stacklevel=2,
        )
    return LazSpec(z_x=int(z_x), z_y=int(amin))
