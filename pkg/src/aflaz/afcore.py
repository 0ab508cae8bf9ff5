"""Discrete aperiodic ambiguity functions over delay-Doppler low-ambiguity zones.

Conventions
-----------
* Sequences are unimodular (every entry on the complex unit circle), so a
  length-N sequence has energy N.
* Delay ``tau`` is aperiodic: the lag product covers only the overlapping
  part of the two sequences, and |tau| <= N-1.
* Doppler ``nu`` is an integer bin of the length-N exponential basis
  exp(2j*pi*nu*t/N); the ambiguity function is periodic in ``nu`` with
  period N.  Fractional Doppler is rejected.
* A low-ambiguity zone (LAZ) ``LazSpec(z_x, z_y)`` is the integer rectangle
  tau in [-(z_x-1), z_x-1], nu in [-(z_y-1), z_y-1].

``aperiodic_af`` evaluates the defining lag sum directly and serves as the
reference for everything else.  Surface and peak computations go through a
zero-padded inverse FFT per delay, which the test suite holds to the direct
sum at 1e-9 relative.

All operations here are pure functions of immutable inputs and safe to call
from multiple threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

__all__ = [
    "UNIT_MODULUS_TOL",
    "Sequence",
    "SequenceSet",
    "LazSpec",
    "AfSurface",
    "ThetaReport",
    "aperiodic_af",
    "doppler_row",
    "af_surface",
    "theta_report",
]

UNIT_MODULUS_TOL = 1e-12


@dataclass(frozen=True)
class Sequence:
    """A unimodular complex sequence of length N >= 1."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        arr = np.atleast_1d(np.asarray(self.entries, dtype=np.complex128))
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("a sequence is a non-empty 1-D array of complex entries")
        worst = float(np.abs(np.abs(arr) ** 2 - 1.0).max())
        if worst > UNIT_MODULUS_TOL:
            raise ValueError(
                f"entries must have unit modulus (worst |.|^2 deviation {worst:.3e})"
            )
        object.__setattr__(self, "entries", arr)

    @classmethod
    def from_phases(cls, phases) -> "Sequence":
        """Build a sequence exp(j*phase) from real phases in radians."""
        return cls(np.exp(1j * np.asarray(phases, dtype=np.float64)))

    def __len__(self) -> int:
        return self.entries.size

    @property
    def n(self) -> int:
        return self.entries.size


@dataclass(frozen=True)
class SequenceSet:
    """M unimodular sequences of a common length N."""

    members: Tuple[Sequence, ...]

    def __post_init__(self) -> None:
        members = tuple(
            s if isinstance(s, Sequence) else Sequence(s) for s in self.members
        )
        if not members:
            raise ValueError("a sequence set needs at least one member")
        n = members[0].n
        if any(s.n != n for s in members):
            raise ValueError("all member sequences must have equal length")
        object.__setattr__(self, "members", members)

    @property
    def m(self) -> int:
        return len(self.members)

    @property
    def n(self) -> int:
        return self.members[0].n

    def matrix(self) -> np.ndarray:
        """Members stacked into an (M, N) array."""
        return np.stack([s.entries for s in self.members])


@dataclass(frozen=True)
class LazSpec:
    """Half-extents of a low-ambiguity zone: delay z_x samples, Doppler z_y bins."""

    z_x: int
    z_y: int

    def __post_init__(self) -> None:
        for name, v in (("z_x", self.z_x), ("z_y", self.z_y)):
            if not isinstance(v, (int, np.integer)) or isinstance(v, bool):
                raise ValueError(f"{name} must be an integer (fractional zones are not supported)")
            if v < 1:
                raise ValueError(f"{name} must be >= 1")
        object.__setattr__(self, "z_x", int(self.z_x))
        object.__setattr__(self, "z_y", int(self.z_y))

    def validate_for(self, n: int) -> None:
        if self.z_x > n or self.z_y > n:
            raise ValueError(f"LAZ ({self.z_x}, {self.z_y}) exceeds sequence length {n}")

    def delays(self) -> np.ndarray:
        return np.arange(-(self.z_x - 1), self.z_x)

    def dopplers(self) -> np.ndarray:
        return np.arange(-(self.z_y - 1), self.z_y)


@dataclass(frozen=True)
class AfSurface:
    """|AF|^2 sampled on a LAZ grid.

    ``magnitudes_sq[i, j]`` holds |A(tau, nu)|^2 with tau = i - (z_x-1) and
    nu = j - (z_y-1).  ``pair`` identifies the source sequences (m, m') when
    the surface came from a set; for an auto surface m == m'.
    """

    magnitudes_sq: np.ndarray
    z_x: int
    z_y: int
    pair: Optional[Tuple[int, int]] = None

    def value(self, tau: int, nu: int) -> float:
        if abs(tau) > self.z_x - 1 or abs(nu) > self.z_y - 1:
            raise ValueError(f"({tau}, {nu}) outside the ({self.z_x}, {self.z_y}) zone")
        return float(self.magnitudes_sq[tau + self.z_x - 1, nu + self.z_y - 1])

    def delays(self) -> np.ndarray:
        return np.arange(-(self.z_x - 1), self.z_x)

    def dopplers(self) -> np.ndarray:
        return np.arange(-(self.z_y - 1), self.z_y)


@dataclass(frozen=True)
class ThetaReport:
    """Peak sidelobe statistics of a sequence set over a LAZ.

    ``theta_a_sq`` is the largest |AAF|^2 away from the origin cell,
    ``theta_c_sq`` the largest |CAF|^2 over ordered member pairs (None when
    the set has a single member), and ``theta_max_sq`` their maximum.
    Argmax witnesses are (m, m', tau, nu) tuples with 0-based member
    indices; ties resolve to the lexicographically smallest witness.
    """

    theta_a_sq: float
    theta_c_sq: Optional[float]
    theta_max_sq: float
    argmax_a: Optional[Tuple[int, int, int, int]]
    argmax_c: Optional[Tuple[int, int, int, int]]


def _check_pair(x: Sequence, y: Sequence) -> int:
    if x.n != y.n:
        raise ValueError(f"length mismatch: {x.n} vs {y.n}")
    return x.n


def _check_integer(name: str, v) -> int:
    if not isinstance(v, (int, np.integer)) or isinstance(v, bool):
        raise ValueError(f"{name} must be an integer, got {v!r}")
    return int(v)


def aperiodic_af(x: Sequence, y: Sequence, tau: int, nu: int) -> complex:
    """Aperiodic ambiguity function of (x, y) at integer delay tau, Doppler nu.

    For tau >= 0 this is sum_{t=0}^{N-1-tau} x_t conj(y_{t+tau}) e^{2j pi nu t / N};
    for tau < 0 the overlap shifts the other way and the Doppler ramp stays
    aligned with y.  Evaluated by direct summation.
    """
    n = _check_pair(x, y)
    tau = _check_integer("tau", tau)
    nu = _check_integer("nu", nu)
    if abs(tau) >= n or abs(nu) >= n:
        raise ValueError(f"|tau| and |nu| must be <= N-1 = {n - 1}")
    xa, ya = x.entries, y.entries
    if tau >= 0:
        prod = xa[: n - tau] * np.conj(ya[tau:])
    else:
        prod = xa[-tau:] * np.conj(ya[: n + tau])
    t = np.arange(prod.size)
    return complex(np.sum(prod * np.exp(2j * np.pi * nu * t / n)))


def _lag_product_rows(xa: np.ndarray, ya: np.ndarray, taus) -> np.ndarray:
    """Zero-padded lag products, one row per delay, ready for the Doppler DFT."""
    n = xa.size
    rows = np.zeros((len(taus), n), dtype=np.complex128)
    for k, tau in enumerate(taus):
        tau = int(tau)
        if tau >= 0:
            rows[k, : n - tau] = xa[: n - tau] * np.conj(ya[tau:])
        else:
            rows[k, : n + tau] = xa[-tau:] * np.conj(ya[: n + tau])
    return rows


def _doppler_rows(xa: np.ndarray, ya: np.ndarray, taus) -> np.ndarray:
    """A(tau, nu) for every tau in ``taus`` and nu = 0..N-1 (one inverse FFT per row)."""
    n = xa.size
    return n * np.fft.ifft(_lag_product_rows(xa, ya, taus), n=n, axis=1)


def doppler_row(x: Sequence, y: Sequence, tau: int) -> np.ndarray:
    """All Doppler bins of the AF at one delay: array of A(tau, nu), nu = 0..N-1."""
    n = _check_pair(x, y)
    tau = _check_integer("tau", tau)
    if abs(tau) >= n:
        raise ValueError(f"|tau| must be <= N-1 = {n - 1}")
    return _doppler_rows(x.entries, y.entries, [tau])[0]


def af_surface(x: Sequence, y: Sequence, laz: LazSpec, pair: Optional[Tuple[int, int]] = None) -> AfSurface:
    """|AF|^2 of (x, y) on the LAZ grid.

    Doppler rows are computed with a zero-padded inverse FFT of the lag
    product; negative bins are read off modulo N.
    """
    n = _check_pair(x, y)
    laz.validate_for(n)
    rows = _doppler_rows(x.entries, y.entries, laz.delays())
    cols = laz.dopplers() % n
    mags = np.abs(rows[:, cols]) ** 2
    return AfSurface(magnitudes_sq=mags, z_x=laz.z_x, z_y=laz.z_y, pair=pair)


def theta_report(seqs: SequenceSet, laz: LazSpec) -> ThetaReport:
    """Peak |AAF|^2 / |CAF|^2 of a set over a LAZ.

    The auto maximum excludes only the (0, 0) cell; zero-delay cells at
    nu != 0 stay in scope (they vanish for unimodular sequences).  The cross
    maximum runs over ordered pairs m != m' and the full zone.  Scanning is
    in ascending (m, m', tau, nu) order with strictly-greater updates, so the
    reported argmax is the lexicographically smallest witness regardless of
    how the per-pair grids were produced.
    """
    n = seqs.n
    laz.validate_for(n)
    taus = laz.delays()
    nus = laz.dopplers()
    cols = nus % n

    best_a = -np.inf
    best_c = -np.inf
    arg_a: Optional[Tuple[int, int, int, int]] = None
    arg_c: Optional[Tuple[int, int, int, int]] = None

    for m in range(seqs.m):
        for mp in range(seqs.m):
            rows = _doppler_rows(seqs.members[m].entries, seqs.members[mp].entries, taus)
            grid = np.abs(rows[:, cols]) ** 2
            if m == mp:
                grid[laz.z_x - 1, laz.z_y - 1] = -np.inf
                k = int(np.argmax(grid))
                v = float(grid.flat[k])
                if np.isfinite(v) and v > best_a:
                    best_a = v
                    arg_a = (m, mp, int(taus[k // grid.shape[1]]), int(nus[k % grid.shape[1]]))
            else:
                k = int(np.argmax(grid))
                v = float(grid.flat[k])
                if v > best_c:
                    best_c = v
                    arg_c = (m, mp, int(taus[k // grid.shape[1]]), int(nus[k % grid.shape[1]]))

    theta_a = best_a if np.isfinite(best_a) else 0.0
    if seqs.m == 1:
        return ThetaReport(theta_a, None, theta_a, arg_a, None)
    theta_c = best_c
    return ThetaReport(theta_a, theta_c, max(theta_a, theta_c), arg_a, arg_c)
