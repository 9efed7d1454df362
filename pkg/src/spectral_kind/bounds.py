"""Upper bounds on the k-independence number and the k-walk mixing inequality.

All real-valued bounds are floored before reporting, since the quantity they
bound is an integer. Flooring and eigenvalue counting both lean towards the
larger integer under floating-point jitter so a reported bound never drops
below the true real-valued bound.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import HypothesisError
from .graphcore import Graph, degree_profile, is_connected
from .spectra import (
    RegularSummary,
    Spectrum,
    WalkStats,
    eigendecompose,
    lambda_summary,
    walk_stats,
)

__all__ = [
    "RegularSummary",
    "InertiaCounts",
    "BoundReport",
    "MixingReport",
    "inertia_bound_k",
    "cvetkovic",
    "hoffman_ratio",
    "hoffman_k",
    "firby_haviland",
    "walks_between",
    "mixing_check",
    "bound_report",
]


@dataclass(frozen=True)
class InertiaCounts:
    low_count: int  # |{i : lambda_i^k >= w_k}|
    high_count: int  # |{i : lambda_i^k <= W_k}|
    bound: int


def _floor_lenient(x: float) -> int:
    # a value within rounding noise of an integer is treated as that integer
    return math.floor(x + 1e-9 * max(1.0, abs(x)))


def inertia_bound_k(spectrum: Spectrum, walks: WalkStats, k: int) -> InertiaCounts:
    """Count eigenvalues whose k-th power clears the closed-walk extremes.

    Ties are counted (slack ``1e-6 * max(1, threshold)``), which can only make
    the bound larger.
    """
    if walks.k != k:
        raise ValueError(f"walk statistics are for length {walks.k}, not {k}")
    powers = spectrum.eigenvalues.astype(float) ** k
    w, W = walks.w_k, walks.W_k
    low = int(np.count_nonzero(powers >= w - 1e-6 * max(1.0, abs(w))))
    high = int(np.count_nonzero(powers <= W + 1e-6 * max(1.0, abs(W))))
    return InertiaCounts(low, high, max(1, min(low, high)))


def cvetkovic(spectrum: Spectrum) -> int:
    """Inertia bound on the independence number: ``min(#{lambda >= 0}, #{lambda <= 0})``."""
    ev = spectrum.eigenvalues
    nonneg = int(np.count_nonzero(ev >= -1e-6))
    nonpos = int(np.count_nonzero(ev <= 1e-6))
    return max(1, min(nonneg, nonpos))


def hoffman_ratio(spectrum: Spectrum, n: int, d: int | None) -> int:
    """Ratio bound ``n * (-lambda_min) / (lambda_max - lambda_min)`` for regular graphs."""
    if d is None:
        raise HypothesisError("the ratio bound needs a regular graph")
    if d == 0:
        return n
    lam_max, lam_min = float(spectrum.eigenvalues[0]), float(spectrum.eigenvalues[-1])
    value = n * (-lam_min) / (lam_max - lam_min)
    return min(n, max(1, _floor_lenient(value)))


def hoffman_k(n: int, summary: RegularSummary, walks: WalkStats, k: int) -> int:
    """``floor(n * (W~_k + lambda^(k)) / (d^(k) + lambda^(k)))`` clamped to ``[1, n]``."""
    if summary.k != k or walks.k != k:
        raise ValueError("summary, walk statistics and k disagree")
    if summary.d == 0:
        return n
    value = n * (walks.tildeW_k + summary.lambda_k) / (summary.d_k + summary.lambda_k)
    return min(n, max(1, _floor_lenient(value)))


def firby_haviland(n: int, k: int) -> int:
    """``floor(2(n - e) / (k + 2 - e))`` with ``e = k mod 2``; valid for connected graphs."""
    if n < 2:
        raise ValueError("the Firby-Haviland bound needs n >= 2")
    eps = k % 2
    return max(1, (2 * (n - eps)) // (k + 2 - eps))


# ------------------------------------------------------------------- mixing


@dataclass(frozen=True)
class MixingReport:
    size_s: int
    size_t: int
    W_k_ST: int
    main_term: float
    deviation: float
    rhs_tight: float
    rhs_loose: float
    holds_tight: bool
    holds_loose: bool

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def _as_indicator(n: int, vertices: Iterable[int]) -> np.ndarray:
    x = np.zeros(n, dtype=np.int64)
    idx = np.fromiter(vertices, dtype=np.int64)
    if idx.size and (idx.min() < 0 or idx.max() >= n):
        raise ValueError(f"vertex set has entries outside 0..{n - 1}")
    x[idx] = 1
    return x


def walks_between(g: Graph, S: Iterable[int], T: Iterable[int], k: int) -> int:
    """``1_S^T (A + A^2 + ... + A^k) 1_T`` computed exactly."""
    s = _as_indicator(g.n, S)
    y = _as_indicator(g.n, T).astype(object)
    a = g.adjacency.astype(np.int64)
    maxdeg = int(g.degrees().max())
    # switch to arbitrary-precision only when int64 could overflow
    exact_int64 = g.n * max(1, maxdeg) ** k < 2**62
    if exact_int64:
        y = y.astype(np.int64)
    else:
        a = a.astype(object)
        s = s.astype(object)
    total = 0
    for _ in range(k):
        y = a @ y
        total += int(s @ y)
    return total


def mixing_check(g: Graph, spectrum: Spectrum, S, T, k: int) -> MixingReport:
    """Evaluate both sides of the walk-count mixing inequality for one pair (S, T)."""
    prof = degree_profile(g)
    if not prof.is_regular:
        raise HypothesisError("the mixing inequality needs a regular graph")
    if not is_connected(g):
        raise HypothesisError("the mixing inequality needs a connected graph")
    S, T = sorted(set(S)), sorted(set(T))
    if not S or not T:
        raise ValueError("S and T must be non-empty")
    summary = lambda_summary(spectrum, prof.d, k)
    n = g.n
    ns, nt = len(S), len(T)
    count = walks_between(g, S, T, k)
    main = summary.d_k * ns * nt / n
    deviation = abs(count - main)
    rhs_tight = summary.lambda_k * math.sqrt(ns * nt * (1 - ns / n) * (1 - nt / n))
    rhs_loose = summary.lambda_k * math.sqrt(ns * nt)
    tol = 1e-6 * max(1.0, main)
    return MixingReport(
        size_s=ns,
        size_t=nt,
        W_k_ST=count,
        main_term=main,
        deviation=deviation,
        rhs_tight=rhs_tight,
        rhs_loose=rhs_loose,
        holds_tight=deviation <= rhs_tight + tol,
        holds_loose=deviation <= rhs_loose + tol,
    )


# ------------------------------------------------------------------- report


@dataclass
class BoundReport:
    name: str | None
    n: int
    k: int
    inertia_low_count: int
    inertia_high_count: int
    inertia_bound: int
    cvetkovic_bound: int
    hoffman_bound: int | None
    firby_bound: int | None
    regular: bool
    connected: bool
    degree: int | None
    walk_method: str
    timing: float = field(default=0.0, compare=False)

    FIELDS = (
        "name",
        "n",
        "k",
        "inertia_low_count",
        "inertia_high_count",
        "inertia_bound",
        "cvetkovic_bound",
        "hoffman_bound",
        "firby_bound",
        "regular",
        "connected",
        "degree",
        "walk_method",
    )

    def to_dict(self, timing: bool = False) -> dict:
        out = {f: getattr(self, f) for f in self.FIELDS}
        if timing:
            out["timing"] = self.timing
        return out

    def bounds(self) -> dict[str, int]:
        """The upper bounds on alpha_k that apply to this graph."""
        out = {"inertia": self.inertia_bound}
        if self.hoffman_bound is not None:
            out["hoffman"] = self.hoffman_bound
        if self.firby_bound is not None:
            out["firby"] = self.firby_bound
        return out


def bound_report(g: Graph, k: int, spectrum: Spectrum | None = None) -> BoundReport:
    """Every applicable bound on alpha_k(g) for one graph."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    start = time.perf_counter()
    if spectrum is None:
        spectrum = eigendecompose(g)
    walks = walk_stats(g, k, spectrum)
    inertia = inertia_bound_k(spectrum, walks, k)
    prof = degree_profile(g)
    connected = is_connected(g)
    hoffman = None
    if prof.is_regular and connected:
        hoffman = hoffman_k(g.n, lambda_summary(spectrum, prof.d, k), walks, k)
    firby = firby_haviland(g.n, k) if connected and g.n >= 2 else None
    return BoundReport(
        name=g.name,
        n=g.n,
        k=k,
        inertia_low_count=inertia.low_count,
        inertia_high_count=inertia.high_count,
        inertia_bound=inertia.bound,
        cvetkovic_bound=cvetkovic(spectrum),
        hoffman_bound=hoffman,
        firby_bound=firby,
        regular=prof.is_regular,
        connected=connected,
        degree=prof.d,
        walk_method=walks.method,
        timing=time.perf_counter() - start,
    )
