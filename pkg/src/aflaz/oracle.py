"""Brute-force oracles: the weighted matrix behind the bounds, checked both ways.

``build_U`` materializes the M*Zx*Zy x (2N-1) matrix whose Gram identities
drive every bound: row (m, r, i) is sqrt(p_r)*sqrt(w_i) times the i-th
cyclic shift of the r-Doppler-shifted, zero-padded member m.  From it:

* ``frobenius_pair``   -- ||U^H U||_F^2 and ||U U^H||_F^2 (always equal);
* ``af_expansion``     -- the same number rebuilt from AF values alone, which
                          pins the index mapping tau = i'-i, nu = r-r';
* ``lemma3_check``     -- the energy lower bound M^2 (N - wLw);
* ``lemma4_check``     -- the peak upper bounds (separate or max variant).

``exhaustive_search`` enumerates every phase-alphabet sequence set (first
entry of the first member pinned to 1, which global-phase invariance allows)
and returns the minimal achievable peak over a zone, the floor every valid
lower bound must respect.

``run_verification`` drives all of the above on seeded random instances and
returns one JSON-ready record per check.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from .afcore import LazSpec, Sequence, SequenceSet, theta_report
from .bounds import BoundParams, DopplerWeight, WeightVector, l_quadform, _jd_profile

__all__ = [
    "WeightedMatrixU",
    "SearchResult",
    "build_U",
    "frobenius_pair",
    "af_expansion",
    "lemma3_rhs",
    "lemma3_check",
    "lemma4_rhs_separate",
    "lemma4_rhs_max",
    "lemma4_check",
    "exhaustive_search",
    "exhaustive_search_all_laz",
    "run_verification",
]

SEARCH_BUDGET = 10**8
_CHUNK = 1 << 14


@dataclass(frozen=True)
class WeightedMatrixU:
    """The weighted shift matrix plus the ingredients it was built from."""

    matrix: np.ndarray
    seqs: SequenceSet
    w: WeightVector
    p: DopplerWeight
    laz: LazSpec

    def row_index(self, m: int, r: int, i: int) -> int:
        return (m * self.laz.z_y + r) * self.laz.z_x + i


@dataclass(frozen=True)
class SearchResult:
    """Outcome of an exhaustive set search over one zone."""

    theta_max_sq: float
    witness: SequenceSet
    alphabet_size: int
    explored: int
    laz: LazSpec


def build_U(seqs: SequenceSet, w: WeightVector, p: DopplerWeight, laz: LazSpec) -> WeightedMatrixU:
    """Assemble U row by row; see the module docstring for the layout."""
    n = seqs.n
    laz.validate_for(n)
    if w.dim != laz.z_x:
        raise ValueError(f"dim(w) = {w.dim} must equal Z_x = {laz.z_x}")
    if p.dim != laz.z_y:
        raise ValueError(f"dim(p) = {p.dim} must equal Z_y = {laz.z_y}")
    width = 2 * n - 1
    t = np.arange(n)
    sqrt_w = np.sqrt(w.values)
    sqrt_p = np.sqrt(p.values)
    rows = np.zeros((seqs.m * laz.z_y * laz.z_x, width), dtype=np.complex128)
    k = 0
    for m in range(seqs.m):
        base = seqs.members[m].entries
        for r in range(laz.z_y):
            padded = np.zeros(width, dtype=np.complex128)
            padded[:n] = base * np.exp(2j * np.pi * r * t / n)
            for i in range(laz.z_x):
                rows[k] = sqrt_p[r] * sqrt_w[i] * np.roll(padded, i)
                k += 1
    return WeightedMatrixU(matrix=rows, seqs=seqs, w=w, p=p, laz=laz)


def frobenius_pair(u: WeightedMatrixU) -> Tuple[float, float]:
    """(||U^H U||_F^2, ||U U^H||_F^2), computed densely on both sides."""
    mat = u.matrix
    gram_small = mat.conj().T @ mat
    gram_big = mat @ mat.conj().T
    return (
        float(np.sum(np.abs(gram_small) ** 2)),
        float(np.sum(np.abs(gram_big) ** 2)),
    )


def _af_magnitude_grid(seqs: SequenceSet, z_x: int, z_y: int) -> np.ndarray:
    """|A_{m,m'}(tau, nu)|^2 by direct summation, indexed [m, m', tau+z_x-1, nu+z_y-1]."""
    n = seqs.n
    taus = np.arange(-(z_x - 1), z_x)
    nus = np.arange(-(z_y - 1), z_y)
    basis = np.exp(2j * np.pi * np.outer(nus, np.arange(n)) / n)  # (V, N)
    grids = np.zeros((seqs.m, seqs.m, taus.size, nus.size))
    for m in range(seqs.m):
        xa = seqs.members[m].entries
        for mp in range(seqs.m):
            ya = seqs.members[mp].entries
            prods = np.zeros((taus.size, n), dtype=np.complex128)
            for k, tau in enumerate(taus):
                tau = int(tau)
                if tau >= 0:
                    prods[k, : n - tau] = xa[: n - tau] * np.conj(ya[tau:])
                else:
                    prods[k, : n + tau] = xa[-tau:] * np.conj(ya[: n + tau])
            grids[m, mp] = np.abs(prods @ basis.T) ** 2
    return grids


def af_expansion(u: WeightedMatrixU) -> float:
    """||U U^H||_F^2 rebuilt from AF magnitudes and the weight autocorrelations.

    Every row pair contributes |A_{m,m'}(i'-i, r-r')|^2 p_r p_{r'} w_i w_{i'},
    so the total factorizes through sum_{m,m'} |A|^2 weighted by the delay and
    Doppler weight autocorrelation profiles.
    """
    z_x, z_y = u.laz.z_x, u.laz.z_y
    grids = _af_magnitude_grid(u.seqs, z_x, z_y)
    total = grids.sum(axis=(0, 1))
    w_corr = np.correlate(u.w.values, u.w.values, mode="full")
    p_corr = np.correlate(u.p.values, u.p.values, mode="full")
    return float(np.einsum("tv,t,v->", total, w_corr, p_corr))


def lemma3_rhs(w: WeightVector, n: int, m: int) -> float:
    """Energy floor M^2 (N - l_quadform(w, N)) for ||U^H U||_F^2."""
    return m * m * (n - l_quadform(w, n))


def lemma3_check(u: WeightedMatrixU, tol: float = 1e-9) -> bool:
    lhs, _ = frobenius_pair(u)
    return lhs >= lemma3_rhs(u.w, u.seqs.n, u.seqs.m) - tol


def _jd_sums(w: WeightVector, params: BoundParams) -> Tuple[float, float]:
    prof = _jd_profile(w.values, params.n)
    d_lo = params.e
    ds = np.arange(d_lo, params.d + 1) if params.d >= d_lo else np.arange(0)
    sj = float(prof[ds].sum())
    sd2 = float((ds.astype(np.float64) ** 2 @ prof[ds]) if ds.size else 0.0)
    return sj, sd2


def lemma4_rhs_separate(
    theta_a_sq: float,
    theta_c_sq: float,
    w: WeightVector,
    p: DopplerWeight,
    params: BoundParams,
) -> float:
    """Peak cap on ||U U^H||_F^2 with separate auto/cross budgets."""
    n, m = params.n, params.m
    sw2 = float(w.values @ w.values)
    sp2 = float(p.values @ p.values)
    sj, sd2 = _jd_sums(w, params)
    return (
        theta_c_sq * m * (m - 1) * (1.0 - sj)
        + theta_a_sq * m * (1.0 - sw2 - sj)
        + m * float(n) ** 2 * sp2 * sw2
        + m * m * sd2
    )


def lemma4_rhs_max(
    theta_max_sq: float,
    w: WeightVector,
    p: DopplerWeight,
    params: BoundParams,
) -> float:
    """Peak cap on ||U U^H||_F^2 with a single max budget."""
    n, m = params.n, params.m
    sw2 = float(w.values @ w.values)
    sp2 = float(p.values @ p.values)
    prof = _jd_profile(w.values, n)
    rhs = m * m * theta_max_sq + m * (float(n) ** 2 * sp2 - theta_max_sq) * sw2
    d_lo = params.e
    for d in range(d_lo, params.d + 1):
        rhs -= m * m * (theta_max_sq - d * d) * prof[d]
    return rhs


def lemma4_check(u: WeightedMatrixU, d: int = 0, variant: str = "max", tol: float = 1e-9) -> bool:
    """Check ||U U^H||_F^2 against the chosen cap at the set's true peaks."""
    if variant not in ("separate", "max"):
        raise ValueError("variant must be 'separate' or 'max'")
    seqs, laz = u.seqs, u.laz
    params = BoundParams(seqs.n, seqs.m, laz.z_x, laz.z_y, d)
    report = theta_report(seqs, laz)
    _, lhs = frobenius_pair(u)
    if variant == "separate":
        theta_c = report.theta_c_sq if report.theta_c_sq is not None else 0.0
        rhs = lemma4_rhs_separate(report.theta_a_sq, theta_c, u.w, u.p, params)
    else:
        rhs = lemma4_rhs_max(report.theta_max_sq, u.w, u.p, params)
    return lhs <= rhs + tol


# ---------------------------------------------------------------------------
# Exhaustive search over phase-alphabet sequence sets
# ---------------------------------------------------------------------------


def _decode_sets(alphabet_size: int, n: int, m: int, start: int, stop: int) -> np.ndarray:
    """Phase sets for lexicographic indices [start, stop); first digit is fixed 0."""
    idx = np.arange(start, stop, dtype=np.int64)
    digits = np.zeros((idx.size, n * m), dtype=np.int64)
    rem = idx.copy()
    for pos in range(n * m - 1, 0, -1):
        digits[:, pos] = rem % alphabet_size
        rem //= alphabet_size
    phases = np.exp(2j * np.pi * digits / alphabet_size)
    return phases.reshape(idx.size, m, n)


def _peak_tables(x: np.ndarray) -> Tuple[np.ndarray, Optional[np.ndarray]]:
    """Per-set peak grids over tau in [0, N-1] x nu in [0, N-1].

    Returns the member-wise max of |AAF|^2 and (for M > 1) the ordered-pair
    max of |CAF|^2; negative delays are covered by the symmetric partner.
    """
    k, m, n = x.shape
    auto = np.zeros((k, n, n))
    cross = np.zeros((k, n, n)) if m > 1 else None
    for tau in range(n):
        for a in range(m):
            for b in range(m):
                prod = x[:, a, : n - tau] * np.conj(x[:, b, tau:])
                row = np.abs(n * np.fft.ifft(prod, n=n, axis=1)) ** 2
                if a == b:
                    auto[:, tau] = np.maximum(auto[:, tau], row)
                else:
                    cross[:, tau] = np.maximum(cross[:, tau], row)
    return auto, cross


def _peaks_for_zone(
    auto: np.ndarray, cross: Optional[np.ndarray], z_x: int, z_y: int, n: int
) -> np.ndarray:
    """theta_max^2 per set for one zone, from the peak tables."""
    cols = np.unique(np.arange(-(z_y - 1), z_y) % n)
    k = auto.shape[0]
    theta_a = np.zeros(k)
    if z_x > 1:
        theta_a = auto[:, 1:z_x][:, :, cols].reshape(k, -1).max(axis=1)
    cols_nonzero = cols[cols != 0]
    if cols_nonzero.size:
        theta_a = np.maximum(theta_a, auto[:, 0][:, cols_nonzero].max(axis=1))
    if cross is None:
        return theta_a
    theta_c = cross[:, :z_x][:, :, cols].reshape(k, -1).max(axis=1)
    return np.maximum(theta_a, theta_c)


def _search_zones(
    alphabet_size: int, n: int, m: int, zones: List[LazSpec]
) -> Dict[Tuple[int, int], Tuple[float, int, int]]:
    """Minimal theta_max^2 and first-witness index per zone over all sets."""
    if alphabet_size < 2:
        raise ValueError("alphabet_size must be >= 2")
    total_space = alphabet_size ** (n * m)
    if total_space > SEARCH_BUDGET:
        raise ValueError(
            f"search space {alphabet_size}^{n * m} exceeds the {SEARCH_BUDGET:.0e} budget"
        )
    explored = alphabet_size ** (n * m - 1)
    best: Dict[Tuple[int, int], Tuple[float, int, int]] = {}
    for start in range(0, explored, _CHUNK):
        stop = min(start + _CHUNK, explored)
        x = _decode_sets(alphabet_size, n, m, start, stop)
        auto, cross = _peak_tables(x)
        for laz in zones:
            theta = _peaks_for_zone(auto, cross, laz.z_x, laz.z_y, n)
            j = int(np.argmin(theta))  # first minimum: smallest encoding on ties
            cand = (float(theta[j]), start + j, explored)
            key = (laz.z_x, laz.z_y)
            if key not in best or cand[0] < best[key][0]:
                best[key] = cand
    return best


def _witness(alphabet_size: int, n: int, m: int, index: int) -> SequenceSet:
    x = _decode_sets(alphabet_size, n, m, index, index + 1)[0]
    return SequenceSet(tuple(Sequence(row) for row in x))


def exhaustive_search(alphabet_size: int, n: int, m: int, laz: LazSpec) -> SearchResult:
    """Minimal theta_max^2 over every M-set of length-N alphabet-phase sequences.

    The first entry of the first member is fixed to 1 (a global phase leaves
    every |AF| unchanged); ties resolve to the smallest set encoding.
    """
    laz.validate_for(n)
    value, idx, explored = _search_zones(alphabet_size, n, m, [laz])[(laz.z_x, laz.z_y)]
    return SearchResult(
        theta_max_sq=value,
        witness=_witness(alphabet_size, n, m, idx),
        alphabet_size=alphabet_size,
        explored=explored,
        laz=laz,
    )


def exhaustive_search_all_laz(
    alphabet_size: int, n: int, m: int
) -> Dict[Tuple[int, int], SearchResult]:
    """One shared enumeration pass returning the search floor for every zone."""
    zones = [LazSpec(zx, zy) for zx in range(1, n + 1) for zy in range(1, n + 1)]
    raw = _search_zones(alphabet_size, n, m, zones)
    return {
        key: SearchResult(
            theta_max_sq=value,
            witness=_witness(alphabet_size, n, m, idx),
            alphabet_size=alphabet_size,
            explored=explored,
            laz=LazSpec(*key),
        )
        for key, (value, idx, explored) in raw.items()
    }


# ---------------------------------------------------------------------------
# Seeded verification driver (used by the CLI)
# ---------------------------------------------------------------------------


def _random_set(rng: np.random.Generator, n: int, m: int) -> SequenceSet:
    return SequenceSet(
        tuple(Sequence(np.exp(2j * np.pi * rng.random(n))) for _ in range(m))
    )


def run_verification(seed: int = 0, instances: int = 15) -> List[dict]:
    """Run every oracle check on seeded random inputs; one record per check."""
    from . import bounds as bd
    from . import chu
    from .afcore import aperiodic_af, doppler_row

    rng = np.random.default_rng(seed)
    records: List[dict] = []

    def record(check: str, params: dict, lhs: float, rhs: float, ok: bool) -> None:
        records.append(
            {
                "check": check,
                "params": params,
                "lhs": lhs,
                "rhs": rhs,
                "pass": bool(ok),
                "seed": seed,
            }
        )

    for _ in range(instances):
        n = int(rng.integers(2, 9))
        m = int(rng.integers(1, 4))
        z_x = int(rng.integers(1, n + 1))
        z_y = int(rng.integers(1, n + 1))
        d = int(rng.integers(0, n))
        seqs = _random_set(rng, n, m)
        w = WeightVector(_random_simplex(rng, z_x))
        p = DopplerWeight(_random_simplex(rng, z_y))
        params = {"N": n, "M": m, "Zx": z_x, "Zy": z_y, "D": d}
        u = build_U(seqs, w, p, LazSpec(z_x, z_y))
        lhs, rhs = frobenius_pair(u)
        record("frobenius_identity", params, lhs, rhs, abs(lhs - rhs) <= 1e-9 * max(1.0, lhs))
        exp = af_expansion(u)
        record("af_expansion", params, exp, rhs, abs(exp - rhs) <= 1e-9 * max(1.0, rhs))
        floor = lemma3_rhs(w, n, m)
        record("lemma3", params, lhs, floor, lhs >= floor - 1e-9)
        bparams = BoundParams(n, m, z_x, z_y, d)
        rep = theta_report(seqs, LazSpec(z_x, z_y))
        theta_c = rep.theta_c_sq if rep.theta_c_sq is not None else 0.0
        cap_sep = lemma4_rhs_separate(rep.theta_a_sq, theta_c, w, p, bparams)
        record("lemma4_separate", params, rhs, cap_sep, rhs <= cap_sep + 1e-9)
        cap_max = lemma4_rhs_max(rep.theta_max_sq, w, p, bparams)
        record("lemma4_max", params, rhs, cap_max, rhs <= cap_max + 1e-9)
        uniform = bd.optimal_doppler_weights(z_y)
        cap_uniform = lemma4_rhs_max(rep.theta_max_sq, w, uniform, bparams)
        record("optimal_p_dominance", params, cap_uniform, cap_max, cap_uniform <= cap_max + 1e-12)

    for _ in range(instances):
        n = int(rng.integers(2, 65))
        x = Sequence(np.exp(2j * np.pi * rng.random(n)))
        row0 = doppler_row(x, x, 0)
        worst_null = float(np.abs(row0[1:]).max()) if n > 1 else 0.0
        record("zero_delay_null", {"N": n}, worst_null, 1e-9 * n, worst_null <= 1e-9 * n)
        tau = int(rng.integers(-(n - 1), n))
        y = Sequence(np.exp(2j * np.pi * rng.random(n)))
        energy = float(np.sum(np.abs(doppler_row(x, y, tau)) ** 2))
        target = float(n * (n - abs(tau)))
        record(
            "energy_identity",
            {"N": n, "tau": tau},
            energy,
            target,
            abs(energy - target) <= 1e-9 * max(1.0, target),
        )

    for _ in range(instances):
        n = int(rng.integers(3, 33))
        a = int(rng.choice([-1, 1])) * int(rng.integers(1, n))
        tau = int(rng.integers(0, n))
        nu = int(rng.integers(0, n))
        s = chu.chu_sequence(n, a)
        direct = abs(aperiodic_af(s, s, tau, nu)) ** 2
        closed = chu.chu_aaf_closed_form(n, a, tau, nu)
        record(
            "chu_closed_form",
            {"N": n, "a": a, "tau": tau, "nu": nu},
            closed,
            direct,
            abs(closed - direct) <= 1e-8 * max(1.0, direct),
        )

    n, a1, a2 = 257, 5, 3
    s1, s2 = chu.chu_sequence(n, a1), chu.chu_sequence(n, a2)
    worst_margin = np.inf
    for tau in range(-(n - 1), n):
        peak = float(np.abs(doppler_row(s1, s2, tau)).max())
        worst_margin = min(worst_margin, chu.theorem4_caf_bound(n, a1, a2, tau) - peak)
    record(
        "caf_cap",
        {"N": n, "a1": a1, "a2": a2},
        float(worst_margin),
        0.0,
        worst_margin >= 0.0,
    )

    res = exhaustive_search(4, 3, 1, LazSpec(3, 3))
    gb = bd.corollary_closed_forms("global", BoundParams(3, 1, 3, 3))
    record(
        "search_floor",
        {"alphabet": 4, "N": 3, "M": 1, "Zx": 3, "Zy": 3},
        res.theta_max_sq,
        gb.value,
        res.theta_max_sq >= gb.value - 1e-9,
    )

    return records


def _random_simplex(rng: np.random.Generator, dim: int) -> np.ndarray:
    raw = rng.random(dim) + 1e-3
    return raw / raw.sum()
