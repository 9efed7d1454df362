"""Exact k-independence number via maximum independent set on the graph power.

The solver is a bitset branch and bound in the style of the MCQ maximum-clique
algorithm, run on the complement implicitly: at every node the candidate set
is greedily partitioned into cliques of ``h`` (a colouring of the
complement), and the number of cliques bounds how many candidates an
independent set can still take.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field

import numpy as np

from .graphcore import UNREACHABLE, Graph, distances_from, power

__all__ = [
    "Budget",
    "ExactResult",
    "alpha_k_exact",
    "greedy_lower",
    "max_independent_set",
    "validate_witness",
]

OPTIMAL = "optimal"
LOWER_BOUND_ONLY = "lower-bound-only"
BUDGET_ENV = "SPECTRAL_KIND_BUDGET_SECS"


@dataclass(frozen=True)
class Budget:
    seconds: float = 60.0
    max_nodes: int = 10**8

    @classmethod
    def default(cls) -> "Budget":
        secs = os.environ.get(BUDGET_ENV)
        return cls(seconds=float(secs)) if secs else cls()


@dataclass(frozen=True)
class ExactResult:
    status: str
    alpha: int
    witness: tuple[int, ...]
    explored_nodes: int
    elapsed: float = field(default=0.0, compare=False)

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "status": self.status,
            "alpha": self.alpha,
            "witness": list(self.witness),
            "explored_nodes": self.explored_nodes,
        }
        if timing:
            out["elapsed"] = self.elapsed
        return out


def _bitsets(adj: np.ndarray, order: np.ndarray) -> list[int]:
    """Neighbourhood bitsets of the graph relabelled so that ``order[i]`` becomes ``i``."""
    perm = adj[np.ix_(order, order)]
    packed = np.packbits(perm, axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def _greedy_mis(nbrs: list[int], candidates: int) -> list[int]:
    """Min-degree greedy: repeatedly take the candidate with fewest candidate neighbours."""
    chosen = []
    while candidates:
        best_v, best_deg = -1, -1
        for v in _bits(candidates):
            deg = (nbrs[v] & candidates).bit_count()
            if best_v < 0 or deg < best_deg:
                best_v, best_deg = v, deg
                if deg == 0:
                    break
        chosen.append(best_v)
        candidates &= ~(nbrs[best_v] | (1 << best_v))
    return chosen


def _clique_cover(nbrs: list[int], candidates: int) -> tuple[list[int], list[int]]:
    """Greedy partition of the candidates into cliques, lowest index first.

    Returns the vertices in cover order with the running clique count, so
    ``bounds[i]`` bounds the independent sets among ``order[:i+1]``.
    """
    order: list[int] = []
    bounds: list[int] = []
    remaining = candidates
    colour = 0
    while remaining:
        colour += 1
        q = remaining
        while q:
            low = q & -q
            v = low.bit_length() - 1
            remaining ^= low
            q &= nbrs[v]
            order.append(v)
            bounds.append(colour)
    return order, bounds


class _BudgetExceeded(Exception):
    pass


def _search(nbrs: list[int], n: int, incumbent: list[int], budget: Budget) -> tuple[list[int], int, bool]:
    best = list(incumbent)
    nodes = 0
    deadline = time.perf_counter() + budget.seconds
    full = (1 << n) - 1
    non_nbrs = [full & ~(nbrs[v] | (1 << v)) for v in range(n)]

    current: list[int] = []
    # explicit stack of (candidates, order, bounds, position) frames
    order, bounds = _clique_cover(nbrs, full)
    stack = [[full, order, bounds, len(order) - 1]]
    try:
        while stack:
            frame = stack[-1]
            cand, order, bounds, i = frame
            if i < 0 or len(current) + bounds[i] <= len(best):
                stack.pop()
                if current:
                    current.pop()
                continue
            v = order[i]
            frame[3] = i - 1
            frame[0] = cand & ~(1 << v)
            nodes += 1
            if nodes & 1023 == 0 and (time.perf_counter() > deadline or nodes >= budget.max_nodes):
                raise _BudgetExceeded
            child = cand & non_nbrs[v]
            current.append(v)
            if not child:
                if len(current) > len(best):
                    best = list(current)
                current.pop()
                continue
            c_order, c_bounds = _clique_cover(nbrs, child)
            stack.append([child, c_order, c_bounds, len(c_order) - 1])
    except _BudgetExceeded:
        return best, nodes, False
    return best, nodes, True


def max_independent_set(h: Graph, budget: Budget | None = None) -> ExactResult:
    """Maximum independent set of ``h`` by branch and bound within ``budget``.

    Vertices are searched in order of descending degree (ties by index); the
    greedy minimum-degree set seeds the incumbent.
    """
    budget = budget or Budget.default()
    start = time.perf_counter()
    n = h.n
    deg = h.degrees()
    order = np.lexsort((np.arange(n), -deg))
    nbrs = _bitsets(h.adjacency, order)
    seed = _greedy_mis(_bitsets(h.adjacency, np.arange(n)), (1 << n) - 1)
    inverse = np.empty(n, dtype=np.int64)
    inverse[order] = np.arange(n)
    best, nodes, done = _search(nbrs, n, [int(inverse[v]) for v in seed], budget)
    witness = tuple(sorted(int(order[v]) for v in best))
    return ExactResult(
        status=OPTIMAL if done else LOWER_BOUND_ONLY,
        alpha=len(witness),
        witness=witness,
        explored_nodes=nodes,
        elapsed=time.perf_counter() - start,
    )


def greedy_lower(g: Graph, k: int) -> tuple[int, ...]:
    """Maximal k-independent set by min-degree greedy on ``power(g, k)``."""
    if k == 0:
        return tuple(range(g.n))
    h = power(g, k)
    nbrs = _bitsets(h.adjacency, np.arange(h.n))
    return tuple(sorted(_greedy_mis(nbrs, (1 << h.n) - 1)))


def validate_witness(g: Graph, witness, k: int) -> bool:
    """True iff the witness vertices are pairwise more than k apart in g."""
    w = list(witness)
    if len(set(w)) != len(w):
        return False
    if len(w) < 2:
        return True
    dist = distances_from(g, w)[:, w]
    off = ~np.eye(len(w), dtype=bool)
    far = (dist == UNREACHABLE) | (dist > k)
    return bool(far[off].all())


def alpha_k_exact(g: Graph, k: int, budget: Budget | None = None) -> ExactResult:
    """alpha_k(g) as the independence number of the k-th power of g."""
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    if k == 0:
        return ExactResult(OPTIMAL, g.n, tuple(range(g.n)), 0, 0.0)
    result = max_independent_set(power(g, k), budget)
    if not validate_witness(g, result.witness, k):
        raise AssertionError("solver returned a witness that is not k-independent")
    return result
