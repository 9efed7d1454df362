from __future__ import annotations

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spectral_kind.catalog import catalog_entries, girth, lookup, named, normalize_name
from spectral_kind.errors import CatalogLookupError, ConstructionError, Graph6Error, GraphInputError
from spectral_kind.graphcore import (
    UNREACHABLE,
    Graph,
    degree_profile,
    distances,
    distances_from,
    from_edges,
    from_lcf,
    generalized_petersen,
    induced_subgraph,
    is_connected,
    parse_graph6,
    power,
    to_graph6,
)

from conftest import random_graph, to_nx


def complete(n: int) -> Graph:
    return Graph(~np.eye(n, dtype=bool))


def path(n: int) -> Graph:
    return from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def is_bipartite(g: Graph) -> bool:
    return nx.is_bipartite(to_nx(g))


# ------------------------------------------------------------------ graph6


def graph6_oracle(text: str) -> set[tuple[int, int]]:
    """Bit-by-bit decode written directly from the format description."""
    data = text.encode()
    n = data[0] - 63
    bits = []
    for b in data[1:]:
        v = b - 63
        bits.extend((v >> (5 - i)) & 1 for i in range(6))
    edges, pos = set(), 0
    for j in range(1, n):
        for i in range(j):
            if bits[pos]:
                edges.add((i, j))
            pos += 1
    return edges


@pytest.mark.parametrize(
    "text, n, edges",
    [
        ("Bw", 3, {(0, 1), (0, 2), (1, 2)}),
        ("Bg", 3, {(0, 1), (1, 2)}),
        ("D~{", 5, {(i, j) for i in range(5) for j in range(i + 1, 5)}),
    ],
)
def test_parse_graph6_examples(text, n, edges):
    g = parse_graph6(text)
    assert g.n == n
    assert set(g.edges()) == edges == graph6_oracle(text)


def test_to_graph6_examples():
    assert to_graph6(complete(3)) == "Bw"
    assert to_graph6(Graph(np.zeros((1, 1), dtype=bool))) == "@"
    assert to_graph6(complete(5)) == "D~{"


def test_graph6_header_and_long_size():
    assert parse_graph6(">>graph6<<Bw") == complete(3)
    g = cycle(100)
    text = to_graph6(g)
    assert text.startswith("~")
    assert parse_graph6(text) == g


@pytest.mark.parametrize(
    "text, offset",
    [
        ("B w", 1),  # space is outside 63..126
        ("D~", 2),  # body needs 2 bytes, has 1
        ("Bww", 2),  # one byte too many
        ("Bx", 1),  # K3 uses 3 of 6 bits; 'x' sets a padding bit
    ],
)
def test_graph6_errors_name_offset(text, offset):
    with pytest.raises(Graph6Error) as info:
        parse_graph6(text)
    assert info.value.offset == offset


def test_graph6_round_trip_random():
    rng = np.random.default_rng(1)
    for _ in range(500):
        n = int(rng.integers(1, 41))
        g = random_graph(rng, n, float(rng.random()))
        assert parse_graph6(to_graph6(g)) == g


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 70), st.integers(0, 2**32 - 1))
def test_graph6_matches_networkx(n, seed):
    g = random_graph(np.random.default_rng(seed), n, 0.3)
    expected = nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()
    assert to_graph6(g) == expected


# -------------------------------------------------------------- construction


def test_from_edges_examples():
    assert from_edges(2, [(0, 1)]) == complete(2)
    p3 = from_edges(3, [(0, 1), (1, 0), (1, 2)])
    assert p3.edges() == [(0, 1), (1, 2)]
    with pytest.raises(GraphInputError, match="loop"):
        from_edges(4, [(0, 0)])
    with pytest.raises(GraphInputError):
        from_edges(3, [(0, 3)])


def test_graph_rejects_bad_matrices():
    with pytest.raises(GraphInputError):
        Graph(np.array([[0, 1], [0, 0]], dtype=bool))
    with pytest.raises(GraphInputError):
        Graph(np.eye(2, dtype=bool))
    with pytest.raises(GraphInputError):
        Graph(np.zeros((2, 3), dtype=bool))


def test_graph_is_immutable():
    g = complete(3)
    with pytest.raises(ValueError):
        g.adjacency[0, 1] = False


def test_generalized_petersen_examples():
    p = generalized_petersen(5, 2)
    assert (p.n, p.num_edges) == (10, 15)
    assert degree_profile(p) == (3, 3, True, 3)
    assert distances(p).diameter() == 2
    assert nx.is_isomorphic(to_nx(p), nx.petersen_graph())

    dodeca = generalized_petersen(10, 2)
    assert dodeca.n == 20 and girth(dodeca) == 5

    cube = generalized_petersen(4, 1)
    assert cube.n == 8 and is_bipartite(cube)
    assert nx.is_isomorphic(to_nx(cube), nx.hypercube_graph(3))

    with pytest.raises(ConstructionError):
        generalized_petersen(6, 3)


def test_lcf_examples():
    heawood = from_lcf([5, -5], 7)
    assert heawood.n == 14 and degree_profile(heawood).d == 3 and girth(heawood) == 6
    ev = np.linalg.eigvalsh(heawood.adjacency_matrix())
    expected = np.sort([3.0, -3.0] + [np.sqrt(2)] * 6 + [-np.sqrt(2)] * 6)
    np.testing.assert_allclose(ev, expected, atol=1e-9)

    with pytest.raises(ConstructionError):
        from_lcf([-2, -2, -2], 1)

    pappus = from_lcf([5, 7, -7, 7, -7, -5], 3)
    assert pappus.n == 18 and is_bipartite(pappus)
    assert nx.is_isomorphic(to_nx(pappus), nx.pappus_graph())


def test_lcf_matches_networkx():
    for code, rep in [([5, -5], 7), ([-13, -9, 7, -7, 9, 13], 5), ([12, 7, -7], 8)]:
        g = from_lcf(code, rep)
        assert nx.is_isomorphic(to_nx(g), nx.LCF_graph(len(code) * rep, code, rep))


# ------------------------------------------------------------------ catalog


def test_named_examples():
    heawood = named("Heawood")
    ev = np.linalg.eigvalsh(heawood.adjacency_matrix())
    np.testing.assert_allclose(ev[[0, -1]], [-3, 3], atol=1e-9)
    assert np.isclose(ev[1:7], -np.sqrt(2)).all() and np.isclose(ev[7:13], np.sqrt(2)).all()

    ico = named("Icosahedron")
    assert ico.n == 12 and degree_profile(ico).d == 5
    ev = np.sort(np.linalg.eigvalsh(ico.adjacency_matrix()))[::-1]
    r5 = np.sqrt(5)
    np.testing.assert_allclose(ev, [5] + [r5] * 3 + [-1] * 5 + [-r5] * 3, atol=1e-9)

    with pytest.raises(CatalogLookupError):
        named("NoSuchGraph")


def test_lookup_suggests_neighbours():
    with pytest.raises(CatalogLookupError) as info:
        lookup("Heawod")
    assert "Heawood" in info.value.suggestions


@pytest.mark.parametrize(
    "alias, canonical",
    [("moebius kantor", "Moebius-Kantor"), ("Möbius–Kantor", "Moebius-Kantor"), ("DÜRER", "Durer"), ("Hoffman Graph", "Hoffman")],
)
def test_name_lookup_is_forgiving(alias, canonical):
    assert lookup(alias).name == lookup(canonical).name
    assert named(alias) == named(canonical)


def test_normalize_name():
    assert normalize_name("Tutte–Coxeter graph") == "tuttecoxeter"
    assert normalize_name("  DÜRER ") == "durer"


def test_every_catalog_entry_passes_invariants():
    for entry in catalog_entries():
        g = entry.build()
        assert entry.check(g) == [], entry.name
        assert is_connected(g)
        assert entry.build() == g  # deterministic labelling


NX_REFERENCE = {
    "Petersen": nx.petersen_graph,
    "Heawood": nx.heawood_graph,
    "Frucht": nx.frucht_graph,
    "Dodecahedron": nx.dodecahedral_graph,
    "Icosahedron": nx.icosahedral_graph,
    "Desargues": nx.desargues_graph,
    "Pappus": nx.pappus_graph,
    "Moebius-Kantor": nx.moebius_kantor_graph,
    "Tutte": nx.tutte_graph,
    "Truncated Tetrahedron": nx.truncated_tetrahedron_graph,
    "Hexahedron": nx.cubical_graph,
}


@pytest.mark.parametrize("name", sorted(NX_REFERENCE))
def test_catalog_isomorphic_to_networkx(name):
    assert nx.is_isomorphic(to_nx(named(name)), NX_REFERENCE[name]())


# --------------------------------------------------------------- distances


def test_distances_examples():
    assert distances(complete(2))[0, 1] == 1
    assert distances(path(3))[0, 2] == 2
    two_k2 = from_edges(4, [(0, 1), (2, 3)])
    dm = distances(two_k2)
    assert dm[0, 2] == UNREACHABLE and not dm.reachable(0, 2)
    assert dm.diameter() is None


def test_distance_properties(rng):
    for _ in range(30):
        g = random_graph(rng, int(rng.integers(2, 25)), 0.15)
        d = distances(g).dist
        assert (np.diag(d) == 0).all()
        assert (d == d.T).all()
        assert ((d == 1) == g.adjacency).all()
        reach = d >= 0
        for w in range(g.n):
            both = reach[:, [w]] & reach[[w], :]
            assert (d[both] <= (d[:, [w]] + d[[w], :])[both]).all()
        np.testing.assert_array_equal(distances_from(g, list(range(g.n))), d)


def test_power_examples():
    assert power(cycle(5), 2) == complete(5)
    p4 = path(4)
    assert set(power(p4, 2).edges()) == {(0, 1), (1, 2), (2, 3), (0, 2), (1, 3)}
    with pytest.raises(GraphInputError):
        power(p4, 0)


def test_power_properties(rng):
    for _ in range(30):
        g = random_graph(rng, int(rng.integers(1, 20)), 0.2)
        assert power(g, 1) == g
        d = distances(g).dist
        prev = power(g, 1).adjacency
        for k in range(2, 6):
            cur = power(g, k).adjacency
            assert not (prev & ~cur).any()
            np.testing.assert_array_equal(cur, (d >= 1) & (d <= k))
            prev = cur
        diam = int(d.max(initial=0))
        if diam >= 1:
            np.testing.assert_array_equal(power(g, diam).adjacency, (d > 0))


def test_degree_profile_examples():
    assert degree_profile(named("Petersen")) == (3, 3, True, 3)
    assert degree_profile(path(3)) == (1, 2, False, None)
    assert degree_profile(Graph(np.zeros((1, 1), dtype=bool))) == (0, 0, True, 0)


def test_induced_subgraph():
    p = named("Petersen")
    h = induced_subgraph(p, [0, 1, 2, 3, 4])
    assert h == cycle(5)
