"""Adjacency spectra and closed-walk statistics.

Closed-walk counts are computed two independent ways: exactly from matrix
powers, and from the eigendecomposition via
``(A^j)_vv = sum_i <e_v, x_i>^2 * lambda_i^j``. The two are cross-checked in
the test-suite.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import ConvergenceError, HypothesisError, PrecisionError, WalkCountOverflowError
from .graphcore import Graph

__all__ = [
    "Spectrum",
    "WalkStats",
    "RegularSummary",
    "InterlacingResult",
    "eigendecompose",
    "spectrum_tolerance",
    "walk_stats_power",
    "walk_stats_spectral",
    "walk_stats",
    "lambda_summary",
    "check_interlacing",
]

# float64 holds every integer below 2**53 exactly
_FLOAT_EXACT = 2**53
_INT64_SAFE = 2**63 - 1
_ROW_CHUNK = 1024


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues in descending order, optionally with an orthonormal eigenbasis.

    ``basis[:, i]`` is the eigenvector for ``eigenvalues[i]``, with its
    largest-magnitude entry made positive. ``basis`` and ``residual`` are
    ``None`` for a values-only decomposition.
    """

    eigenvalues: np.ndarray
    basis: np.ndarray | None = None
    residual: float | None = None

    @property
    def n(self) -> int:
        return len(self.eigenvalues)

    @property
    def spectral_radius(self) -> float:
        return float(np.abs(self.eigenvalues).max())

    def to_dict(self) -> dict:
        return {
            "eigenvalues": [float(x) for x in self.eigenvalues],
            "residual": self.residual,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


@dataclass(frozen=True)
class WalkStats:
    """Closed-walk counts ``diag[v, j-1]`` = number of closed walks of length j at v."""

    k: int
    diag: np.ndarray
    method: str = "power"

    @property
    def w_k(self) -> int:
        return int(self.diag[:, self.k - 1].min())

    @property
    def W_k(self) -> int:
        return int(self.diag[:, self.k - 1].max())

    @property
    def tildeW_k(self) -> int:
        """Max over vertices of the number of closed walks of length 1..k."""
        return int(self.diag.sum(axis=1).max())

    def truncate(self, k: int) -> "WalkStats":
        if not 1 <= k <= self.k:
            raise ValueError(f"cannot truncate walk statistics of length {self.k} to {k}")
        return WalkStats(k, self.diag[:, :k], self.method)


class RegularSummary(NamedTuple):
    """Parameters of an (n, d, lambda)-graph at walk length k."""

    d: int
    lam: float
    d_k: int
    lambda_k: float
    k: int


class InterlacingResult(NamedTuple):
    ok: bool
    index: int | None  # 0-based position of the first violated inner eigenvalue


def spectrum_tolerance(eigenvalues: np.ndarray) -> float:
    n = len(eigenvalues)
    return 1e-8 * n * max(1.0, float(np.abs(eigenvalues).max()))


def _fix_signs(basis: np.ndarray) -> np.ndarray:
    idx = np.abs(basis).argmax(axis=0)
    signs = np.sign(basis[idx, np.arange(basis.shape[1])])
    signs[signs == 0] = 1.0
    return basis * signs


def eigendecompose(g: Graph, vectors: bool = True) -> Spectrum:
    """Dense symmetric eigendecomposition of the adjacency matrix (LAPACK ``syevd``)."""
    a = g.adjacency_matrix()
    try:
        if not vectors:
            values = np.linalg.eigvalsh(a)[::-1].copy()
            return Spectrum(values)
        values, basis = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"eigensolver failed to converge: {exc}") from exc
    values = values[::-1].copy()
    basis = _fix_signs(basis[:, ::-1])
    residual = float(np.abs(a @ basis - basis * values).max()) if g.n else 0.0
    n = g.n
    rho = max(1.0, float(np.abs(values).max()))
    if residual > 1e-8 * n * rho:
        raise ConvergenceError(f"eigenpair residual {residual:.3e} exceeds tolerance")
    if np.abs(basis.T @ basis - np.eye(n)).max() > 1e-8:
        raise ConvergenceError("eigenbasis is not orthonormal within 1e-8")
    values.flags.writeable = False
    basis.flags.writeable = False
    return Spectrum(values, basis, residual)


def _diag_power_rows(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    # diag(P @ Q) for symmetric Q equals the row-wise dot product of P and Q
    return np.einsum("ij,ij->i", p, q)


def walk_stats_power(g: Graph, k: int) -> WalkStats:
    """Exact closed-walk counts from matrix powers.

    Only powers up to ``A^ceil(k/2)`` are formed; ``(A^j)_vv`` is the row-wise
    dot product of ``A^floor(j/2)`` and ``A^ceil(j/2)``. Every intermediate is a
    non-negative integer bounded by ``maxdeg^(k-1)``, so float64 BLAS is exact
    while that bound stays below 2**53; beyond it int64 arithmetic is used, and
    past 2**63 an overflow error is raised.
    """
    if k < 1:
        raise ValueError(f"walk length must be >= 1, got {k}")
    n = g.n
    maxdeg = int(g.degrees().max())
    bound = maxdeg ** (k - 1)
    if bound > _INT64_SAFE:
        raise WalkCountOverflowError(
            f"closed-walk counts up to {maxdeg}^{k - 1} overflow int64; "
            "use walk_stats_spectral for an approximate count"
        )
    dtype = np.float64 if bound < _FLOAT_EXACT else np.int64
    a = g.adjacency.astype(dtype)
    powers = [None, a]
    for _ in range(2, k // 2 + 1):
        powers.append(powers[-1] @ a)
    diag = np.zeros((n, k), dtype=np.int64)
    for j in range(2, k + 1):
        lo = j // 2
        if j % 2 == 0:
            col = _diag_power_rows(powers[lo], powers[lo])
        else:
            col = np.empty(n, dtype=dtype)
            for s in range(0, n, _ROW_CHUNK):
                block = powers[lo][s : s + _ROW_CHUNK]
                col[s : s + _ROW_CHUNK] = _diag_power_rows(block, block @ a)
        diag[:, j - 1] = col.astype(np.int64) if dtype is np.int64 else np.rint(col).astype(np.int64)
    return WalkStats(k, diag, "power")


def walk_stats_spectral(g: Graph, k: int, spectrum: Spectrum | None = None) -> WalkStats:
    """Closed-walk counts from eigenpairs, rounded to the nearest integer.

    Raises :class:`PrecisionError` if any value lies 0.25 or more from an integer.
    """
    if k < 1:
        raise ValueError(f"walk length must be >= 1, got {k}")
    if spectrum is None:
        spectrum = eigendecompose(g)
    if spectrum.basis is None:
        raise ValueError("spectral walk counts need the eigenbasis")
    weights = spectrum.basis**2
    lam = spectrum.eigenvalues
    raw = weights @ np.stack([lam**j for j in range(1, k + 1)], axis=1)
    rounded = np.rint(raw)
    gap = float(np.abs(raw - rounded).max())
    if gap >= 0.25 or np.abs(rounded).max() >= _FLOAT_EXACT:
        raise PrecisionError(f"spectral walk counts are {gap:.3f} away from integers")
    return WalkStats(k, rounded.astype(np.int64), "spectral")


def walk_stats(g: Graph, k: int, spectrum: Spectrum | None = None) -> WalkStats:
    """Exact counts when they fit, the spectral variant otherwise."""
    try:
        return walk_stats_power(g, k)
    except WalkCountOverflowError:
        return walk_stats_spectral(g, k, spectrum)


def lambda_summary(s: Spectrum, d: int, k: int) -> RegularSummary:
    """``lambda = max(|lambda_2|, |lambda_n|)`` and the partial sums ``d^(k)``, ``lambda^(k)``."""
    if k < 1:
        raise ValueError(f"walk length must be >= 1, got {k}")
    ev = s.eigenvalues
    if abs(ev[0] - d) > spectrum_tolerance(ev):
        raise HypothesisError(f"largest eigenvalue {ev[0]:.10g} is not the degree {d}")
    lam = max(abs(float(ev[1])), abs(float(ev[-1]))) if len(ev) > 1 else 0.0
    d_k = sum(d**j for j in range(1, k + 1))
    lambda_k = sum(lam**j for j in range(1, k + 1))
    return RegularSummary(d, lam, d_k, lambda_k, k)


def check_interlacing(outer: Sequence[float], inner: Sequence[float]) -> InterlacingResult:
    """Test ``outer[i] >= inner[i] >= outer[n-m+i]`` for descending lists (n = len(outer))."""
    lam = np.asarray(outer, dtype=float)
    mu = np.asarray(inner, dtype=float)
    n, m = len(lam), len(mu)
    if m > n:
        raise ValueError("inner spectrum is longer than the outer one")
    if m == 0:
        return InterlacingResult(True, None)
    tol = 1e-8 * max(1.0, abs(float(lam[0])))
    bad = (mu > lam[:m] + tol) | (mu < lam[n - m :] - tol)
    if bad.any():
        return InterlacingResult(False, int(np.flatnonzero(bad)[0]))
    return InterlacingResult(True, None)
