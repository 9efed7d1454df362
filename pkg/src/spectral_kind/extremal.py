"""A family of graphs on which the closed-walk inertia bound is attained.

Take m copies of ``K_n`` minus an edge ``u_i v_i``, a hub ``x``, and join
``x`` to every ``u_i`` by a path of length k. The ``v_i`` are pairwise
``2k + 4`` apart, so alpha at lengths ``2k+2`` and ``2k+3`` is at least m;
for n large enough the inertia bound at those lengths is exactly m.

Labelling: ``x = 0``; then block by block, the ``k-1`` internal path
vertices (nearest the hub first) followed by the n clique vertices with
``u_i`` first and ``v_i`` second.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .bounds import inertia_bound_k
from .errors import ConstructionError
from .exact import Budget, alpha_k_exact, validate_witness
from .graphcore import Graph, distances_from
from .spectra import eigendecompose, walk_stats_power

__all__ = [
    "ConstructionSpec",
    "build_construction",
    "verify_construction",
    "min_n_for_tightness",
    "tightness_experiment",
    "block_spectrum",
]


@dataclass(frozen=True)
class ConstructionSpec:
    n: int
    m: int
    k: int
    hub: int
    u: tuple[int, ...]
    v: tuple[int, ...]
    path_internal: tuple[tuple[int, ...], ...]

    @property
    def vertex_count(self) -> int:
        return self.n * self.m + (self.k - 1) * self.m + 1

    @property
    def stated_vertex_count(self) -> int:
        """The count ``nm + (k-2)m + 1`` quoted alongside the construction; off by m."""
        return self.n * self.m + (self.k - 2) * self.m + 1

    @property
    def edge_count(self) -> int:
        return self.m * (math.comb(self.n, 2) - 1) + self.m * self.k


def _check_ranges(n: int, m: int, k: int) -> None:
    if n < 4 or m < 1 or k < 1:
        raise ConstructionError(f"need n >= 4, m >= 1, k >= 1; got n={n}, m={m}, k={k}")


def build_construction(n: int, m: int, k: int) -> tuple[Graph, ConstructionSpec]:
    _check_ranges(n, m, k)
    total = n * m + (k - 1) * m + 1
    adj = np.zeros((total, total), dtype=bool)
    hub = 0
    us, vs, paths = [], [], []
    pos = 1
    for _ in range(m):
        internal = tuple(range(pos, pos + k - 1))
        pos += k - 1
        block = slice(pos, pos + n)
        u, v = pos, pos + 1
        pos += n
        adj[block, block] = True
        adj[u, v] = adj[v, u] = False
        chain = (hub, *internal, u)
        for a, b in zip(chain, chain[1:]):
            adj[a, b] = adj[b, a] = True
        us.append(u)
        vs.append(v)
        paths.append(internal)
    np.fill_diagonal(adj, False)
    g = Graph(adj, name=f"extremal(n={n},m={m},k={k})")
    return g, ConstructionSpec(n, m, k, hub, tuple(us), tuple(vs), tuple(paths))


def _power_sqrt_plus_four(m: int, e: int) -> tuple[int, int]:
    """Integers (a, b) with ``(sqrt(m) + 4)**e == a + b*sqrt(m)``."""
    a = b = 0
    for i in range(e + 1):
        term = math.comb(e, i) * 4 ** (e - i) * m ** (i // 2)
        if i % 2:
            b += term
        else:
            a += term
    return a, b


def _exceeds_threshold(n: int, m: int, k: int) -> bool:
    """Exact test of ``n - 2 > (sqrt(m) + 4)**(2k+3)``."""
    a, b = _power_sqrt_plus_four(m, 2 * k + 3)
    gap = n - 2 - a
    return gap > 0 and gap * gap > b * b * m


def min_n_for_tightness(m: int, k: int) -> int:
    """Smallest n with ``n - 2 > (sqrt(m) + 4)**(2k+3)``, in exact integer arithmetic."""
    if m < 1 or k < 1:
        raise ConstructionError(f"need m >= 1 and k >= 1; got m={m}, k={k}")
    a, b = _power_sqrt_plus_four(m, 2 * k + 3)
    return a + 2 + math.isqrt(b * b * m) + 1


def block_spectrum(n: int) -> np.ndarray:
    """Closed-form eigenvalues of ``K_n`` minus an edge, descending."""
    root = math.sqrt((n + 1) ** 2 - 8)
    vals = [(n - 3 + root) / 2, 0.0] + [-1.0] * (n - 3) + [(n - 3 - root) / 2]
    return np.array(vals)


def verify_construction(g: Graph, spec: ConstructionSpec) -> dict:
    """Check the unconditional claims about one generated instance.

    Failures are reported in the returned dict, never raised.
    """
    n, m, k = spec.n, spec.m, spec.k
    long_k = 2 * k + 3
    dist = distances_from(g, list(spec.v))[:, list(spec.v)]
    pair = [int(dist[i, j]) for i in range(m) for j in range(i + 1, m)]
    hub_dist = distances_from(g, [spec.hub])[0, list(spec.u)]

    walks = walk_stats_power(g, long_k)
    w_even = int(walks.diag[:, long_k - 2].min())
    w_odd = int(walks.diag[:, long_k - 1].min())

    eig = eigendecompose(g, vectors=False).eigenvalues
    radius = math.sqrt(m) + 4
    tail = np.abs(eig[m:])
    tail_max = float(tail.max()) if tail.size else 0.0

    degrees = g.degrees()
    report = {
        "n": n,
        "m": m,
        "k": k,
        "vertices": g.n,
        "expected_vertices": spec.vertex_count,
        "stated_vertex_formula": spec.stated_vertex_count,
        "edges": g.num_edges,
        "expected_edges": spec.edge_count,
        "v_pair_distances": pair,
        "v_distances_ok": all(d == 2 * k + 4 for d in pair),
        "hub_to_u_ok": bool((hub_dist == k).all()),
        "v_degree_ok": bool((degrees[list(spec.v)] == n - 2).all()),
        f"w_{long_k - 1}": w_even,
        f"w_{long_k}": w_odd,
        "w_ok": w_even >= n - 2 and w_odd >= n - 2,
        "eigen_radius": radius,
        "max_abs_tail_eigenvalue": tail_max,
        "eigen_ok": tail_max <= radius + 1e-8,
        "v_set_independent": validate_witness(g, spec.v, long_k),
        "threshold_met": _exceeds_threshold(n, m, k),
    }
    report["ok"] = all(
        report[key]
        for key in ("v_distances_ok", "hub_to_u_ok", "v_degree_ok", "w_ok", "eigen_ok", "v_set_independent")
    ) and report["vertices"] == report["expected_vertices"] and report["edges"] == report["expected_edges"]
    return report


def tightness_experiment(m: int, k: int, n: int, budget: Budget | None = None) -> dict:
    """Compare the inertia bound with the exact alpha at lengths 2k+2 and 2k+3."""
    start = time.perf_counter()
    g, spec = build_construction(n, m, k)
    long_k = 2 * k + 3
    walks = walk_stats_power(g, long_k)
    spectrum = eigendecompose(g, vectors=False)
    report: dict = {"n": n, "m": m, "k": k, "vertices": g.n, "threshold_met": _exceeds_threshold(n, m, k)}
    report["lower_bound_witness"] = list(spec.v)
    report["lower_bound_certified"] = validate_witness(g, spec.v, long_k)
    all_equal = True
    for length in (long_k - 1, long_k):
        counts = inertia_bound_k(spectrum, walks.truncate(length), length)
        exact = alpha_k_exact(g, length, budget)
        entry = {
            "inertia_bound": counts.bound,
            "inertia_low_count": counts.low_count,
            "inertia_high_count": counts.high_count,
            "alpha": exact.alpha,
            "status": exact.status,
            "witness": list(exact.witness),
        }
        entry["tight"] = exact.optimal and counts.bound == exact.alpha == m
        all_equal &= entry["tight"]
        report[f"length_{length}"] = entry
    report["tight"] = all_equal
    report["elapsed"] = time.perf_counter() - start
    return report
