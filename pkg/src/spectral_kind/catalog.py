"""Named-graph catalog backed by ``data/catalog.txt``.

Each record is ``name|kind|payload|invariants``. Entries are parsed eagerly
(cheap) and constructed lazily; every construction is checked against its
recorded invariants before it is handed out.
"""

from __future__ import annotations

import difflib
import re
import unicodedata
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

import numpy as np

from .errors import CatalogLookupError, GraphInputError
from .graphcore import (
    Graph,
    distances,
    from_edges,
    from_lcf,
    generalized_petersen,
    parse_graph6,
)

__all__ = ["CatalogEntry", "named", "catalog_entries", "normalize_name", "has_graph", "girth"]

KINDS = ("g6", "lcf", "gp", "edges")
EIG_TOL = 1e-8


def normalize_name(name: str) -> str:
    """Case-, accent- and punctuation-insensitive key; a trailing "graph" is dropped."""
    s = unicodedata.normalize("NFKD", name)
    s = "".join(c for c in s if not unicodedata.combining(c)).lower()
    s = re.sub(r"[^a-z0-9]", "", s)
    if s.endswith("graph") and len(s) > len("graph"):
        s = s[: -len("graph")]
    return s


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    kind: str
    payload: str
    aliases: tuple[str, ...] = ()
    expected: dict = field(default_factory=dict, compare=False, hash=False)

    def build(self) -> Graph:
        if self.kind == "g6":
            g = parse_graph6(self.payload)
        elif self.kind == "gp":
            n, k = (int(x) for x in self.payload.split(","))
            g = generalized_petersen(n, k)
        elif self.kind == "lcf":
            code, _, reps = self.payload.partition("^")
            g = from_lcf([int(x) for x in code.split(",")], int(reps or 1))
        elif self.kind == "edges":
            n, _, body = self.payload.partition(";")
            pairs = [tuple(int(x) for x in e.split("-")) for e in body.split(",") if e]
            g = from_edges(int(n), pairs)
        else:
            raise GraphInputError(f"unknown catalog kind {self.kind!r}")
        return g.with_name(self.name)

    def check(self, g: Graph) -> list[str]:
        """Return the list of violated invariants (empty when all hold)."""
        problems = []
        exp = self.expected
        if "n" in exp and g.n != exp["n"]:
            problems.append(f"n={g.n}, expected {exp['n']}")
        deg = g.degrees()
        if "d" in exp and not (deg == exp["d"]).all():
            problems.append(f"degrees {sorted(set(deg.tolist()))}, expected {exp['d']}-regular")
        if "girth" in exp and girth(g) != exp["girth"]:
            problems.append(f"girth={girth(g)}, expected {exp['girth']}")
        if "diameter" in exp:
            diam = distances(g).diameter()
            if diam != exp["diameter"]:
                problems.append(f"diameter={diam}, expected {exp['diameter']}")
        if "eigs" in exp:
            want = np.sort(np.repeat([v for v, _ in exp["eigs"]], [m for _, m in exp["eigs"]]))[::-1]
            got = np.linalg.eigvalsh(g.adjacency_matrix())[::-1]
            if want.shape != got.shape or np.abs(want - got).max() > EIG_TOL * max(1.0, abs(got[0])):
                problems.append("spectrum differs from the recorded eigenvalues")
        return problems


def girth(g: Graph) -> int | None:
    """Length of a shortest cycle (``None`` for forests), by BFS from every vertex."""
    adj = [g.neighbors(v) for v in range(g.n)]
    best = None
    for s in range(g.n):
        dist = {s: 0}
        parent = {s: -1}
        queue = [s]
        for u in queue:
            if best is not None and 2 * dist[u] + 1 >= best:
                break
            for w in adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    cyc = dist[u] + dist[w] + 1
                    if best is None or cyc < best:
                        best = cyc
    return best


def _parse_invariants(text: str) -> dict:
    out: dict = {}
    for item in filter(None, (t.strip() for t in text.split(","))):
        key, _, value = item.partition("=")
        if key == "eigs":
            pairs = []
            for part in value.split(";"):
                v, _, m = part.partition(":")
                pairs.append((float(v), int(m)))
            out[key] = pairs
        else:
            out[key] = int(value)
    return out


def _parse_line(line: str) -> CatalogEntry:
    parts = line.split("|")
    if len(parts) < 4:
        raise GraphInputError(f"catalog record needs name|kind|payload|invariants: {line[:60]!r}")
    names, kind, invariants = parts[0], parts[1], parts[-1]
    # graph6 payloads may themselves contain '|'
    payload = "|".join(parts[2:-1])
    if kind not in KINDS:
        raise GraphInputError(f"unknown catalog kind {kind!r}")
    name, *aliases = [s.strip() for s in names.split(";")]
    return CatalogEntry(name, kind, payload, tuple(aliases), _parse_invariants(invariants))


@lru_cache(maxsize=1)
def catalog_entries() -> tuple[CatalogEntry, ...]:
    text = resources.files(__package__).joinpath("data/catalog.txt").read_text(encoding="utf-8")
    entries = []
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            entries.append(_parse_line(line))
    return tuple(entries)


@lru_cache(maxsize=1)
def _index() -> dict[str, CatalogEntry]:
    index = {}
    for e in catalog_entries():
        for label in (e.name, *e.aliases):
            index[normalize_name(label)] = e
    return index


def has_graph(name: str) -> bool:
    return normalize_name(name) in _index()


def lookup(name: str) -> CatalogEntry:
    key = normalize_name(name)
    try:
        return _index()[key]
    except KeyError:
        close = difflib.get_close_matches(key, list(_index()), n=3, cutoff=0.5)
        names = []
        for c in close:
            label = _index()[c].name
            if label not in names:
                names.append(label)
        raise CatalogLookupError(name, names) from None


@lru_cache(maxsize=None)
def _build_checked(entry: CatalogEntry) -> Graph:
    g = entry.build()
    problems = entry.check(g)
    if problems:
        raise GraphInputError(f"catalog entry {entry.name!r} fails its invariants: " + "; ".join(problems))
    return g


def named(name: str) -> Graph:
    """Look up and construct a catalog graph (validated against its invariants)."""
    return _build_checked(lookup(name))
