"""Graph representation, graph6 interchange, classic constructions, distances and powers.

Vertices are always the dense integers ``0..n-1``. A :class:`Graph` wraps a
read-only boolean adjacency matrix; nothing in the package mutates it after
construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, shortest_path

from .errors import ConstructionError, Graph6Error, GraphInputError

__all__ = [
    "Graph",
    "DistanceMatrix",
    "DegreeProfile",
    "UNREACHABLE",
    "parse_graph6",
    "to_graph6",
    "from_edges",
    "generalized_petersen",
    "from_lcf",
    "distances",
    "distances_from",
    "power",
    "degree_profile",
    "is_connected",
    "induced_subgraph",
]

UNREACHABLE = -1


class Graph:
    """Finite simple undirected graph on vertices ``0..n-1``."""

    __slots__ = ("_adj", "name")

    def __init__(self, adjacency, name: str | None = None):
        adj = np.array(adjacency, dtype=bool, copy=True)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise GraphInputError(f"adjacency must be square, got shape {adj.shape}")
        if adj.shape[0] < 1:
            raise GraphInputError("a graph needs at least one vertex")
        if adj.diagonal().any():
            v = int(np.flatnonzero(adj.diagonal())[0])
            raise GraphInputError(f"loop at vertex {v}")
        if not np.array_equal(adj, adj.T):
            raise GraphInputError("adjacency matrix is not symmetric")
        adj.flags.writeable = False
        self._adj = adj
        self.name = name

    @property
    def n(self) -> int:
        return self._adj.shape[0]

    @property
    def adjacency(self) -> np.ndarray:
        """Read-only ``n x n`` boolean adjacency matrix."""
        return self._adj

    def adjacency_matrix(self, dtype=np.float64) -> np.ndarray:
        return self._adj.astype(dtype)

    def degrees(self) -> np.ndarray:
        return self._adj.sum(axis=1, dtype=np.int64)

    def neighbors(self, v: int) -> list[int]:
        return np.flatnonzero(self._adj[v]).tolist()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adj[u, v])

    @property
    def num_edges(self) -> int:
        return int(self._adj.sum(dtype=np.int64)) // 2

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(u, v)`` with ``u < v``, in lexicographic order."""
        us, vs = np.nonzero(np.triu(self._adj, 1))
        return list(zip(us.tolist(), vs.tolist()))

    def with_name(self, name: str | None) -> "Graph":
        g = Graph.__new__(Graph)
        g._adj = self._adj
        g.name = name
        return g

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self._adj, other._adj)

    def __hash__(self):
        return hash((self.n, np.packbits(self._adj).tobytes()))

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<Graph{label} n={self.n} m={self.num_edges}>"


@dataclass(frozen=True)
class DistanceMatrix:
    """All-pairs BFS distances; ``UNREACHABLE`` marks pairs in different components."""

    n: int
    dist: np.ndarray

    def __getitem__(self, uv: tuple[int, int]) -> int:
        return int(self.dist[uv])

    def reachable(self, u: int, v: int) -> bool:
        return self.dist[u, v] != UNREACHABLE

    def diameter(self) -> int | None:
        """Largest finite distance, or ``None`` if the graph is disconnected."""
        if (self.dist == UNREACHABLE).any():
            return None
        return int(self.dist.max())


class DegreeProfile(NamedTuple):
    min_degree: int
    max_degree: int
    is_regular: bool
    d: int | None


# --------------------------------------------------------------------- graph6


def _encode_size(n: int) -> bytes:
    if n <= 62:
        return bytes([63 + n])
    if n <= 258047:
        return bytes([126] + [63 + ((n >> s) & 63) for s in (12, 6, 0)])
    if n <= 68719476735:
        return bytes([126, 126] + [63 + ((n >> s) & 63) for s in (30, 24, 18, 12, 6, 0)])
    raise GraphInputError(f"graph too large for graph6: n={n}")


def _decode_size(data: bytes) -> tuple[int, int]:
    if not data:
        raise Graph6Error("empty graph6 string", 0)
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        width, start = 6, 2
    else:
        width, start = 3, 1
    if len(data) < start + width:
        raise Graph6Error("truncated size field", len(data))
    n = 0
    for b in data[start : start + width]:
        n = (n << 6) | (b - 63)
    return n, start + width


def parse_graph6(text: str | bytes) -> Graph:
    """Decode one graph6 record (an optional ``>>graph6<<`` header is allowed)."""
    data = text.encode("ascii") if isinstance(text, str) else bytes(text)
    data = data.strip()
    header = b">>graph6<<"
    base = 0
    if data.startswith(header):
        base = len(header)
        data = data[base:]
    for i, b in enumerate(data):
        if not 63 <= b <= 126:
            raise Graph6Error(f"byte {b!r} outside the printable graph6 range 63..126", base + i)
    n, pos = _decode_size(data)
    if n < 1:
        raise Graph6Error("graph6 size field encodes zero vertices", base)
    nbits = n * (n - 1) // 2
    nbytes = -(-nbits // 6)
    body = data[pos:]
    if len(body) < nbytes:
        raise Graph6Error(f"truncated body: expected {nbytes} bytes, got {len(body)}", base + len(data))
    if len(body) > nbytes:
        raise Graph6Error("trailing bytes after graph6 body", base + pos + nbytes)
    vals = np.frombuffer(body, dtype=np.uint8).astype(np.uint8) - 63
    bits = ((vals[:, None] >> np.arange(5, -1, -1, dtype=np.uint8)) & 1).ravel()
    if bits[nbits:].any():
        raise Graph6Error("non-zero padding bits", base + pos + nbytes - 1)
    adj = np.zeros((n, n), dtype=bool)
    # tril_indices walks (j, i) with j ascending then i ascending, i.e. the
    # column-major order of the upper triangle used by graph6.
    rows, cols = np.tril_indices(n, -1)
    adj[cols, rows] = bits[:nbits].astype(bool)
    adj |= adj.T
    return Graph(adj)


def to_graph6(g: Graph) -> str:
    n = g.n
    rows, cols = np.tril_indices(n, -1)
    bits = g.adjacency[cols, rows].astype(np.uint8)
    pad = (-len(bits)) % 6
    if pad:
        bits = np.concatenate([bits, np.zeros(pad, dtype=np.uint8)])
    groups = bits.reshape(-1, 6)
    vals = (groups << np.arange(5, -1, -1, dtype=np.uint8)).sum(axis=1, dtype=np.uint8) + 63
    return (_encode_size(n) + vals.astype(np.uint8).tobytes()).decode("ascii")


# -------------------------------------------------------------- constructions


def from_edges(n: int, edges: Iterable[Sequence[int]] | np.ndarray, name: str | None = None) -> Graph:
    """Build a graph from an edge list; duplicate and reversed edges collapse."""
    if n < 1:
        raise GraphInputError("a graph needs at least one vertex")
    arr = np.asarray(edges if isinstance(edges, np.ndarray) else list(edges), dtype=np.int64)
    if arr.size == 0:
        arr = arr.reshape(0, 2)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise GraphInputError("edges must be pairs of vertices")
    bad = (arr < 0) | (arr >= n)
    if bad.any():
        i = int(np.flatnonzero(bad.any(axis=1))[0])
        raise GraphInputError(f"edge {tuple(arr[i].tolist())} has a vertex outside 0..{n - 1}")
    loops = arr[:, 0] == arr[:, 1]
    if loops.any():
        i = int(np.flatnonzero(loops)[0])
        raise GraphInputError(f"loop at vertex {int(arr[i, 0])}")
    adj = np.zeros((n, n), dtype=bool)
    adj[arr[:, 0], arr[:, 1]] = True
    adj[arr[:, 1], arr[:, 0]] = True
    return Graph(adj, name=name)


def generalized_petersen(n: int, k: int) -> Graph:
    """GP(n, k): outer cycle ``0..n-1``, spokes ``i -- n+i``, inner chords ``n+i -- n+(i+k)``."""
    if n < 3 or not (1 <= k and 2 * k < n):
        raise ConstructionError(f"GP(n, k) needs n >= 3 and 1 <= k < n/2, got ({n}, {k})")
    i = np.arange(n)
    edges = np.concatenate(
        [
            np.stack([i, (i + 1) % n], axis=1),
            np.stack([i, n + i], axis=1),
            np.stack([n + i, n + (i + k) % n], axis=1),
        ]
    )
    return from_edges(2 * n, edges, name=f"GP({n},{k})")


def from_lcf(code: Sequence[int], repeats: int = 1) -> Graph:
    """Cubic Hamiltonian graph from LCF notation ``[code]^repeats``.

    The Hamiltonian cycle is ``0, 1, ..., N-1`` and vertex ``i`` gets the chord
    to ``i + code[i mod len(code)]`` (mod N).
    """
    if repeats < 1 or not code:
        raise ConstructionError("LCF code must be non-empty with repeats >= 1")
    N = len(code) * repeats
    if N < 4:
        raise ConstructionError(f"LCF graph needs at least 4 vertices, got {N}")
    target = [(i + code[i % len(code)]) % N for i in range(N)]
    for i, j in enumerate(target):
        if code[i % len(code)] == 0 or j == i:
            raise ConstructionError(f"LCF chord at vertex {i} is a loop")
        if j in ((i + 1) % N, (i - 1) % N):
            raise ConstructionError(f"LCF chord {i}--{j} collides with the Hamiltonian cycle")
        if target[j] != i:
            raise ConstructionError(
                f"LCF chords inconsistent: {i} -> {j} but {j} -> {target[j]}"
            )
    i = np.arange(N)
    edges = np.concatenate([np.stack([i, (i + 1) % N], axis=1), np.stack([i, target], axis=1)])
    return from_edges(N, edges)


def induced_subgraph(g: Graph, vertices: Sequence[int]) -> Graph:
    idx = np.asarray(vertices, dtype=np.int64)
    return Graph(g.adjacency[np.ix_(idx, idx)])


# ------------------------------------------------------------------ metrics


def _csr(g: Graph) -> csr_matrix:
    return csr_matrix(g.adjacency, dtype=np.int8)


def distances(g: Graph) -> DistanceMatrix:
    raw = shortest_path(_csr(g), directed=False, unweighted=True)
    dist = np.full(raw.shape, UNREACHABLE, dtype=np.int32)
    finite = np.isfinite(raw)
    dist[finite] = raw[finite].astype(np.int32)
    return DistanceMatrix(g.n, dist)


def distances_from(g: Graph, sources: Sequence[int]) -> np.ndarray:
    """BFS distance rows for the given sources only (``len(sources) x n``).

    Works level by level on the dense adjacency, so it stays cheap for dense
    graphs where an all-pairs computation is out of reach.
    """
    adj = g.adjacency
    out = np.full((len(sources), g.n), UNREACHABLE, dtype=np.int32)
    for row, s in enumerate(sources):
        dist = out[row]
        dist[s] = 0
        frontier = np.array([s])
        level = 0
        while frontier.size:
            level += 1
            nxt = adj[frontier].any(axis=0) & (dist == UNREACHABLE)
            frontier = np.flatnonzero(nxt)
            dist[frontier] = level
    return out


def is_connected(g: Graph) -> bool:
    ncomp, _ = connected_components(_csr(g), directed=False)
    return ncomp == 1


def power(g: Graph, k: int) -> Graph:
    """The k-th power: ``u ~ v`` iff ``1 <= dist(u, v) <= k``."""
    if k < 1:
        raise GraphInputError(f"graph power needs k >= 1, got {k}")
    # float32 products are exact here: entries count neighbours, bounded by n < 2**24
    a = g.adjacency.astype(np.float32)
    reach = g.adjacency | np.eye(g.n, dtype=bool)
    for _ in range(k - 1):
        grown = (reach.astype(np.float32) @ a) > 0
        grown |= reach
        if np.array_equal(grown, reach):
            break
        reach = grown
    np.fill_diagonal(reach, False)
    return Graph(reach, name=f"{g.name}^{k}" if g.name else None)


def degree_profile(g: Graph) -> DegreeProfile:
    deg = g.degrees()
    lo, hi = int(deg.min()), int(deg.max())
    return DegreeProfile(lo, hi, lo == hi, lo if lo == hi else None)
