"""Lower bounds on the peak aperiodic AF magnitude over a low-ambiguity zone.

The general machinery bounds theta_max^2 for any unimodular (N, M)-set and
LAZ (Z_x, Z_y) through a simplex-constrained delay weight vector w and the
(uniform-optimal) Doppler weight p.  Two quadratic forms drive everything:

    l_quadform(w, N)     = sum_{s,t} min(|t-s|, 2N-1-|t-s|) w_s w_t
    jd_quadform(w, d, N) = sum over pairs with min(|t-s|, 2N-1-|t-s|) = N-d

``theorem1_bounds`` handles delay windows Z_x <= N with weights of dimension
Z_x; ``theorem2_bounds`` handles the full window Z_x = N, where the cyclic
structure admits weights of dimension 2N-1.  Both carry an integer D: the
D largest delays get replaced by their hard cap (N-|tau|)^2, which tightens
the bound when that cap undercuts the peak.  ``dopt_search`` maximizes over
D exactly.

Closed-form specializations (uniform-prefix weights A, Chebyshev-shaped
weights B, flat weights C, plus the classical global / benchmark values) are
exposed through ``corollary_closed_forms`` and ``benchmark_ye2022``.

Evaluators never return a silent number: a report whose preconditions fail
is flagged not-applicable, and a negative right-hand side is clamped to zero
with a ``vacuous`` flag.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional, Sequence as Seq, Tuple

import numpy as np

__all__ = [
    "WeightVector",
    "DopplerWeight",
    "BoundParams",
    "BoundReport",
    "l_quadform",
    "jd_quadform",
    "optimal_doppler_weights",
    "weights_A",
    "weights_B",
    "weights_C",
    "chebyshev_gamma",
    "theorem1_bounds",
    "theorem2_bounds",
    "corollary_closed_forms",
    "corollary4_simplified",
    "benchmark_ye2022",
    "dopt_search",
    "remark6_optimality_check",
    "best_bound",
    "CSV_COLUMNS",
]

SIMPLEX_TOL = 1e-12
CLAMP_TOL = 1e-15          # entries in [-CLAMP_TOL, 0) are clamped to zero
WEIGHT_B_NEG_TOL = 1e-12   # weights_B rejects anything more negative

CSV_COLUMNS = ["bound", "N", "M", "Zx", "Zy", "D", "q", "value", "applicable"]


def _simplex_values(values, what: str) -> np.ndarray:
    vals = np.asarray(values, dtype=np.float64).copy()
    if vals.ndim != 1 or vals.size == 0:
        raise ValueError(f"{what} must be a non-empty 1-D vector")
    if float(vals.min()) < -CLAMP_TOL:
        raise ValueError(f"{what} has a negative entry ({float(vals.min()):.3e})")
    vals[vals < 0.0] = 0.0
    if abs(float(vals.sum()) - 1.0) > SIMPLEX_TOL:
        raise ValueError(f"{what} must sum to 1 (got {float(vals.sum()):.15f})")
    return vals


@dataclass(frozen=True)
class WeightVector:
    """Delay weights on the probability simplex; dim is Z_x or 2N-1."""

    values: np.ndarray
    family: str = "custom"
    q: Optional[int] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", _simplex_values(self.values, "weight vector"))

    @property
    def dim(self) -> int:
        return self.values.size


@dataclass(frozen=True)
class DopplerWeight:
    """Doppler weights on the probability simplex, one entry per bin of the zone."""

    values: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", _simplex_values(self.values, "Doppler weight"))

    @property
    def dim(self) -> int:
        return self.values.size


@dataclass(frozen=True)
class BoundParams:
    """Evaluation point (N, M, Z_x, Z_y) plus the last-delay count D."""

    n: int
    m: int
    z_x: int
    z_y: int
    d: int = 0

    def __post_init__(self) -> None:
        if min(self.n, self.m, self.z_x, self.z_y) < 1:
            raise ValueError("N, M, Z_x, Z_y must all be positive")
        if self.z_x > self.n or self.z_y > self.n:
            raise ValueError("Z_x and Z_y cannot exceed N")
        if not 0 <= self.d <= self.n - 1:
            raise ValueError("D must lie in [0, N-1]")

    @property
    def e(self) -> int:
        """Smallest last-delay index reachable by a width-Z_x window: N - Z_x + 1."""
        return self.n - self.z_x + 1


@dataclass(frozen=True)
class BoundReport:
    """A named lower bound on theta_max^2 with its full parameterization.

    ``value`` is the clamped bound (NaN when not applicable), ``raw_value``
    the unclamped right-hand side whenever the formula could be evaluated.
    ``tradeoff`` is (coef_c, coef_a, rhs) for the separate-peak inequality
    coef_c * theta_c^2 + coef_a * theta_a^2 >= rhs.
    """

    name: str
    params: BoundParams
    value: float
    raw_value: float = math.nan
    applicable: bool = True
    vacuous: bool = False
    reason: Optional[str] = None
    tradeoff: Optional[Tuple[float, float, float]] = None
    weight: Optional[WeightVector] = None
    q: Optional[int] = None
    d: Optional[int] = None
    heuristic_d: Optional[int] = None

    def csv_row(self) -> list:
        p = self.params
        return [
            self.name,
            p.n,
            p.m,
            p.z_x,
            p.z_y,
            self.d if self.d is not None else p.d,
            "" if self.q is None else self.q,
            repr(self.value),
            str(bool(self.applicable)).lower(),
        ]

    def to_dict(self) -> dict:
        p = self.params
        out = {
            "bound": self.name,
            "N": p.n,
            "M": p.m,
            "Zx": p.z_x,
            "Zy": p.z_y,
            "D": self.d if self.d is not None else p.d,
            "q": self.q,
            "value": self.value,
            "raw_value": self.raw_value,
            "applicable": self.applicable,
            "vacuous": self.vacuous,
            "reason": self.reason,
            "tradeoff": list(self.tradeoff) if self.tradeoff else None,
        }
        if self.weight is not None:
            out["weight"] = self.weight.values.tolist()
        if self.heuristic_d is not None:
            out["heuristic_D"] = self.heuristic_d
        return out


def _values_of(w) -> np.ndarray:
    if isinstance(w, WeightVector):
        return w.values
    return np.asarray(w, dtype=np.float64)


def _distance_matrix(dim: int, n: int) -> np.ndarray:
    idx = np.arange(dim)
    diff = np.abs(idx[:, None] - idx[None, :])
    return np.minimum(diff, 2 * n - 1 - diff)


def l_quadform(w, n: int) -> float:
    """Quadratic form of w against the cyclic-distance matrix on 2N-1 points."""
    vals = _values_of(w)
    if vals.size > 2 * n - 1:
        raise ValueError(f"weight dimension {vals.size} exceeds 2N-1 = {2 * n - 1}")
    lm = _distance_matrix(vals.size, n)
    return float(vals @ (lm * 1.0) @ vals)


def jd_quadform(w, d: int, n: int) -> float:
    """Mass of weight pairs whose cyclic distance equals N-d (1 <= d <= N)."""
    if not 1 <= d <= n:
        raise ValueError(f"d must lie in [1, N] = [1, {n}]")
    vals = _values_of(w)
    if vals.size > 2 * n - 1:
        raise ValueError(f"weight dimension {vals.size} exceeds 2N-1 = {2 * n - 1}")
    lm = _distance_matrix(vals.size, n)
    return float(np.outer(vals, vals)[lm == n - d].sum())


def _jd_profile(vals: np.ndarray, n: int) -> np.ndarray:
    """prof[d] = jd_quadform(w, d, n) for all d in one pass (index 0 unused)."""
    lm = _distance_matrix(vals.size, n)
    return np.bincount(
        (n - lm).ravel(), weights=np.outer(vals, vals).ravel(), minlength=n + 1
    )


def optimal_doppler_weights(z_y: int) -> DopplerWeight:
    """Uniform Doppler weights 1/Z_y, the minimizer of sum p_r^2 on the simplex."""
    if z_y < 1:
        raise ValueError("z_y must be >= 1")
    return DopplerWeight(np.full(z_y, 1.0 / z_y))


def weights_A(q: int, dim: int) -> WeightVector:
    """Uniform mass 1/q on the first q delays."""
    if not 1 <= q <= dim:
        raise ValueError(f"q must lie in [1, {dim}]")
    vals = np.zeros(dim)
    vals[:q] = 1.0 / q
    return WeightVector(vals, family="A", q=q)


def chebyshev_gamma(n: int, m: int, z_y: int) -> float:
    """Angle gamma = arccos(1 - M*Z_y/N^2) controlling the B-family shape."""
    ratio = m * z_y / float(n) ** 2
    if ratio > 1.0:
        raise ValueError(f"requires M*Z_y <= N^2 (got M*Z_y = {m * z_y}, N^2 = {n * n})")
    return float(math.acos(1.0 - ratio))


def weights_B(q: int, dim: int, n: int, m: int, z_y: int) -> WeightVector:
    """Sine-arch weights on the first q delays.

    w_i = sin(gamma/2)/sin(q*gamma/2) * sin(gamma0 + i*gamma) for i < q with
    gamma0 = (pi - q*gamma + gamma)/2, which sums to 1 analytically.  Valid
    while q*gamma <= pi + gamma; the entries are checked numerically and any
    rounding residue below zero is clamped before renormalizing.
    """
    if not 1 <= q <= dim:
        raise ValueError(f"q must lie in [1, {dim}]")
    g = chebyshev_gamma(n, m, z_y)
    if q * g > math.pi + g + 1e-12:
        raise ValueError(f"q = {q} violates q*gamma <= pi + gamma (gamma = {g:.6f})")
    half = math.sin(q * g / 2.0)
    if abs(half) < 1e-300:
        raise ValueError("sin(q*gamma/2) vanishes; weights undefined")
    g0 = (math.pi - q * g + g) / 2.0
    i = np.arange(dim, dtype=np.float64)
    vals = np.where(i < q, math.sin(g / 2.0) / half * np.sin(g0 + i * g), 0.0)
    if float(vals.min()) < -WEIGHT_B_NEG_TOL:
        raise ValueError(
            f"q = {q} produces a negative weight ({float(vals.min()):.3e}); "
            "outside the valid range for these parameters"
        )
    vals = np.maximum(vals, 0.0)
    vals /= vals.sum()
    return WeightVector(vals, family="B", q=q)


def weights_C(n: int) -> WeightVector:
    """Flat weights 1/(2N-1) over the full cyclic window (Z_x = N regime)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    dim = 2 * n - 1
    return WeightVector(np.full(dim, 1.0 / dim), family="C")


# ---------------------------------------------------------------------------
# Theorem-level evaluators
# ---------------------------------------------------------------------------


def _evaluate(name: str, w: WeightVector, params: BoundParams, d_lo: int) -> BoundReport:
    """Shared core: peak bound + trade-off triple for a weight of any admissible dim.

    Last-delay corrections run over d in [d_lo, D] (empty when D < d_lo).
    """
    n, m, z_y, dd = params.n, params.m, params.z_y, params.d
    vals = w.values
    w2 = float(vals @ vals)
    lw = l_quadform(vals, n)
    prof = _jd_profile(vals, n)
    ds = np.arange(d_lo, dd + 1) if dd >= d_lo else np.arange(0)
    sj = float(prof[ds].sum())
    sd2 = float((ds.astype(np.float64) ** 2 @ prof[ds]) if ds.size else 0.0)

    coef_c = (m - 1) * (1.0 - sj)
    coef_a = 1.0 - (w2 + sj)
    rhs = m * (n - (n * n / (m * z_y) * w2 + sd2 + lw))
    tradeoff = (coef_c, coef_a, rhs)

    den = 1.0 - (w2 / m + sj)
    common = dict(params=params, tradeoff=tradeoff, weight=w, q=w.q, d=dd)
    if den <= 0.0:
        return BoundReport(
            name,
            value=math.nan,
            applicable=False,
            reason="nonpositive peak-form denominator",
            **common,
        )
    raw = n - (n * (n - z_y) / (m * z_y) * w2 + (sd2 - n * sj) + lw) / den
    return BoundReport(
        name,
        value=max(raw, 0.0),
        raw_value=raw,
        vacuous=raw < 0.0,
        **common,
    )


def theorem1_bounds(w: WeightVector, params: BoundParams) -> BoundReport:
    """Peak bound for a delay window 1 < Z_x <= N with dim(w) = Z_x."""
    if params.z_x == 1:
        raise ValueError("requires Z_x > 1")
    if w.dim != params.z_x:
        raise ValueError(f"weight dimension {w.dim} must equal Z_x = {params.z_x}")
    return _evaluate("theorem1", w, params, d_lo=params.e)


def theorem2_bounds(w: WeightVector, params: BoundParams) -> BoundReport:
    """Peak bound for the full delay window Z_x = N with dim(w) = 2N-1."""
    if params.z_x != params.n:
        raise ValueError("requires Z_x = N")
    if w.dim != 2 * params.n - 1:
        raise ValueError(f"weight dimension {w.dim} must equal 2N-1 = {2 * params.n - 1}")
    return _evaluate("theorem2", w, params, d_lo=1)


def dopt_search(w: WeightVector, params: BoundParams, regime: str = "T1") -> BoundReport:
    """Exact maximization of the peak bound over D in [0, N-1].

    Ties resolve to the smallest D.  The square-root heuristic
    floor(sqrt(bound at D=0)) is recorded on the report for comparison but
    never trusted.
    """
    if regime not in ("T1", "T2"):
        raise ValueError("regime must be 'T1' or 'T2'")
    n, m, z_y = params.n, params.m, params.z_y
    if regime == "T1":
        if params.z_x == 1:
            raise ValueError("requires Z_x > 1")
        if w.dim != params.z_x:
            raise ValueError(f"weight dimension {w.dim} must equal Z_x = {params.z_x}")
        d_lo = params.e
        name = "theorem1"
    else:
        if params.z_x != n:
            raise ValueError("requires Z_x = N")
        if w.dim != 2 * n - 1:
            raise ValueError(f"weight dimension {w.dim} must equal 2N-1 = {2 * n - 1}")
        d_lo = 1
        name = "theorem2"

    vals = w.values
    w2 = float(vals @ vals)
    lw = l_quadform(vals, n)
    prof = _jd_profile(vals, n)
    masked = prof.copy()
    masked[:d_lo] = 0.0
    d_sq = np.arange(n + 1, dtype=np.float64) ** 2
    sj = np.cumsum(masked)[: n]           # index D = 0..N-1
    sd2 = np.cumsum(masked * d_sq)[: n]
    dens = 1.0 - (w2 / m + sj)
    with np.errstate(divide="ignore", invalid="ignore"):
        raws = n - (n * (n - z_y) / (m * z_y) * w2 + (sd2 - n * sj) + lw) / dens
    raws[dens <= 0.0] = -np.inf

    if not np.isfinite(raws).any():
        return BoundReport(
            name,
            params=params,
            value=math.nan,
            applicable=False,
            reason="nonpositive denominator for every D",
            weight=w,
            q=w.q,
        )
    d_best = int(np.argmax(raws))  # first maximum: smallest D on ties
    heuristic = int(math.floor(math.sqrt(raws[0]))) if raws[0] > 0 else 0
    best_params = BoundParams(n, m, params.z_x, z_y, d_best)
    report = _evaluate(name, w, best_params, d_lo)
    return BoundReport(
        name,
        params=best_params,
        value=report.value,
        raw_value=report.raw_value,
        vacuous=report.vacuous,
        tradeoff=report.tradeoff,
        weight=w,
        q=w.q,
        d=d_best,
        heuristic_d=heuristic,
    )


# ---------------------------------------------------------------------------
# Closed forms
# ---------------------------------------------------------------------------


def _report(name, params, raw, tradeoff=None, q=None) -> BoundReport:
    return BoundReport(
        name,
        params=params,
        value=max(raw, 0.0),
        raw_value=raw,
        vacuous=raw < 0.0,
        tradeoff=tradeoff,
        q=q,
        d=0,
    )


def _not_applicable(name, params, reason, raw=math.nan, q=None) -> BoundReport:
    return BoundReport(
        name,
        params=params,
        value=math.nan,
        raw_value=raw,
        applicable=False,
        reason=reason,
        q=q,
        d=0,
    )


def benchmark_ye2022(params: BoundParams) -> BoundReport:
    """Reference inner-product bound N^2 (M Zx Zy - N - Zx + 1) / ((N+Zx-1)(M Zx - 1) Zy)."""
    n, m, zx, zy = params.n, params.m, params.z_x, params.z_y
    if zx == 1:
        return _not_applicable("benchmark_ye2022", params, "requires Z_x > 1")
    den = (n + zx - 1) * (m * zx - 1) * zy
    if den <= 0:
        return _not_applicable("benchmark_ye2022", params, "degenerate denominator")
    raw = float(n) ** 2 * (m * zx * zy - n - zx + 1) / den
    return _report("benchmark_ye2022", params, raw)


def corollary4_simplified(w: WeightVector, params: BoundParams) -> BoundReport:
    """Any-weight simplified peak bound N - Q(w) with Q = N^2/(M Zy) w.w + wLw.

    Weaker than the theorem forms (the denominator is dropped) but valid for
    every simplex weight of dimension Z_x.
    """
    if w.dim != params.z_x:
        raise ValueError(f"weight dimension {w.dim} must equal Z_x = {params.z_x}")
    n, m, z_y = params.n, params.m, params.z_y
    w2 = float(w.values @ w.values)
    lw = l_quadform(w.values, n)
    q_form = n * n / (m * z_y) * w2 + lw
    raw = n - q_form
    tradeoff = ((m - 1.0), 1.0, m * raw)
    return replace(_report("corollary4", params, raw, tradeoff=tradeoff), weight=w)


def _c2_raw(q, n, m, zy) -> Tuple[float, Tuple[float, float, float]]:
    rhs = 3 * q * m * n * zy - (q * q - 1) * m * zy - 3 * n * n
    tradeoff = (3.0 * q * zy * (m - 1), 3.0 * q * zy - 3.0 * zy, float(rhs))
    raw = (3 * q * m * n * zy - 3 * n * n - q * q * m * zy + m * zy) / (3.0 * (q * m - 1) * zy)
    return raw, tradeoff


def _c45_raw(q, n, m, zy) -> float:
    g = chebyshev_gamma(n, m, zy)
    return (
        n
        - (q - 1) / 2.0
        - (math.sin(q * g / 2.0) - math.sin((q - 2) * g / 2.0))
        / (2.0 * (1.0 - math.cos(g)) * math.sin(q * g / 2.0))
    )


def corollary_closed_forms(name: str, params: BoundParams, q: Optional[int] = None) -> BoundReport:
    """Closed-form bound values.

    name:
      global -- N-1 (M=1) or N (M>1); needs Z_y = N and Z_x > 1.
      C2     -- A-family value for a given q (best q when omitted); any LAZ.
      C3     -- N - 2N/sqrt(3 M Zy); needs M*Zy >= 3 and Z_x > sqrt(3N^2/(M Zy)).
      C4_5   -- B-family value for a given q (capped default); needs M*Zy <= N^2
                and q < min(Z_x+1, pi/gamma+1).
      C6     -- N - ceil(pi N / sqrt(8 M Zy)); needs Z_x > pi/gamma and 5 <= M*Zy <= N^2.
      C7     -- N^2 (M Zy - 1) / ((M(2N-1)-1) Zy); needs Z_x = N.

    Inapplicable parameters yield a flagged report whose ``raw_value`` still
    carries the formula's number when it can be evaluated.
    """
    n, m, zx, zy = params.n, params.m, params.z_x, params.z_y

    if name == "global":
        raw = float(n - 1 if m == 1 else n)
        if zy != n:
            return _not_applicable("global", params, "requires Z_y = N", raw=raw)
        if zx == 1:
            return _not_applicable("global", params, "requires Z_x > 1", raw=raw)
        return _report("global", params, raw)

    if name == "C2":
        if q is None:
            best = None
            for qq in range(1, zx + 1):
                if qq * m == 1:
                    continue
                raw, _ = _c2_raw(qq, n, m, zy)
                if best is None or raw > best[0]:
                    best = (raw, qq)
            if best is None:
                return _not_applicable("C2", params, "degenerate denominator (q = M = 1)")
            q = best[1]
        if not 1 <= q <= zx:
            return _not_applicable("C2", params, f"q = {q} outside [1, Z_x]", q=q)
        if q * m == 1:
            return _not_applicable("C2", params, "degenerate denominator (q = M = 1)", q=q)
        raw, tradeoff = _c2_raw(q, n, m, zy)
        return _report("C2", params, raw, tradeoff=tradeoff, q=q)

    if name == "C3":
        raw = n - 2.0 * n / math.sqrt(3.0 * m * zy)
        coef_a = 1.0 - math.sqrt(m * zy) / (math.sqrt(3.0) * n)
        rhs = m * n * (math.sqrt(3.0 * m * zy) - 2.0) / math.sqrt(3.0 * m * zy)
        tradeoff = (float(m - 1), coef_a, rhs)
        if m * zy < 3:
            return _not_applicable("C3", params, "requires M*Zy >= 3", raw=raw)
        if zx <= math.sqrt(3.0 * n * n / (m * zy)):
            return _not_applicable(
                "C3", params, "requires Z_x > sqrt(3 N^2 / (M Zy))", raw=raw
            )
        return _report("C3", params, raw, tradeoff=tradeoff)

    if name == "C4_5":
        if m * zy > n * n:
            return _not_applicable("C4_5", params, "requires M*Zy <= N^2", q=q)
        g = chebyshev_gamma(n, m, zy)
        if q is None:
            q = min(zx, int(math.floor(math.pi / g)) + 1)
        if not (1 <= q < min(zx + 1, math.pi / g + 1)):
            return _not_applicable(
                "C4_5", params, f"q = {q} outside [1, min(Z_x+1, pi/gamma+1))", q=q
            )
        raw = _c45_raw(q, n, m, zy)
        tradeoff = (float(m - 1), 1.0, m * raw)
        return _report("C4_5", params, raw, tradeoff=tradeoff, q=q)

    if name == "C6":
        raw = float(n - math.ceil(math.pi * n / math.sqrt(8.0 * m * zy)))
        if not 5 <= m * zy <= n * n:
            return _not_applicable("C6", params, "requires 5 <= M*Zy <= N^2", raw=raw)
        g = chebyshev_gamma(n, m, zy)
        if zx <= math.pi / g:
            return _not_applicable("C6", params, "requires Z_x > pi/gamma", raw=raw)
        return _report("C6", params, raw)

    if name == "C7":
        raw = float(n) ** 2 * (m * zy - 1) / ((m * (2 * n - 1) - 1) * zy)
        if zx != n:
            return _not_applicable("C7", params, "requires Z_x = N", raw=raw)
        coef_a = (2.0 * n - 2.0) / (2.0 * n - 1.0)
        rhs = float(n) ** 2 * (m * zy - 1) / ((2.0 * n - 1.0) * zy)
        return _report("C7", params, raw, tradeoff=(float(m - 1), coef_a, rhs))

    raise ValueError(f"unknown closed form {name!r}")


def remark6_optimality_check(n: int, m: int, z_y: int) -> bool:
    """True when flat weights already maximize the D=0 full-window bound.

    The criterion compares N(N-Zy)/(M Zy) against the most negative
    eigenvalue of the cyclic-distance matrix, 1/(4 sin^2(pi/(2(2N-1)))).
    A relative epsilon absorbs rounding at exact-equality corners.
    """
    eta = n * (n - z_y) / (m * z_y)
    lam = eta - 1.0 / (4.0 * math.sin(math.pi / (2.0 * (2 * n - 1))) ** 2)
    return lam >= -1e-9 * max(1.0, abs(eta))


def best_bound(
    params: BoundParams,
    families: Seq[str] = ("A", "B", "C"),
    d_policy: str = "auto",
) -> BoundReport:
    """Best proposed bound over the requested weight families.

    Sweeps q for families A and B (dimension Z_x when Z_x < N, else 2N-1 via
    the full-window form) and D per ``d_policy`` ("auto" sweeps exactly,
    "zero" pins D = 0).  Deterministic tie-breaking: first family in the
    given order, then smallest q, then smallest D.
    """
    if d_policy not in ("auto", "zero"):
        raise ValueError("d_policy must be 'auto' or 'zero'")
    n, m, zx, zy = params.n, params.m, params.z_x, params.z_y
    full = zx == n
    if not full and zx == 1:
        return _not_applicable("best", params, "requires Z_x > 1 for a narrow window")
    dim = 2 * n - 1 if full else zx
    regime = "T2" if full else "T1"

    def evaluate(w: WeightVector) -> Optional[BoundReport]:
        base = BoundParams(n, m, zx, zy, 0)
        if d_policy == "auto":
            rep = dopt_search(w, base, regime)
        else:
            rep = theorem2_bounds(w, base) if full else theorem1_bounds(w, base)
        return rep if rep.applicable else None

    candidates = []
    for family in families:
        if family == "A":
            for q in range(1, dim + 1):
                rep = evaluate(weights_A(q, dim))
                if rep is not None:
                    candidates.append(rep)
        elif family == "B":
            for q in range(1, dim + 1):
                try:
                    w = weights_B(q, dim, n, m, zy)
                except ValueError:
                    break
                rep = evaluate(w)
                if rep is not None:
                    candidates.append(rep)
        elif family == "C":
            if full:
                rep = evaluate(weights_C(n))
                if rep is not None:
                    candidates.append(rep)
        else:
            raise ValueError(f"unknown family {family!r}")
    if not candidates:
        return _not_applicable("best", params, "no applicable family/q/D combination")
    best = candidates[0]
    for rep in candidates[1:]:
        if rep.value > best.value:
            best = rep
    return best
