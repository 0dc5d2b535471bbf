from __future__ import annotations

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trivalent import pipeline
from trivalent.graphs import core
from trivalent.graphs.cayley import (StructureError, covering_check, delta_y, three_cliques,
                                     tk_projection_map, triangles_from_triples, y_delta)
from trivalent.graphs.cheeger import cheeger, cheeger_bound_from_C, cheeger_exact
from trivalent.graphs.isomorphism import (SearchLimitExceeded, complete_bipartite, complete_graph, hypercube,
                                          is_isomorphic, octahedron, verify_isomorphism)


def to_nx(g):
    G = nx.Graph()
    G.add_nodes_from(range(g.nverts))
    G.add_edges_from(g.edges().tolist())
    return G


def test_doubled_k4():
    X1 = pipeline.cayley_graph(1)
    assert X1.nverts == 4 and X1.ndarts == 24
    assert not X1.is_simple()
    assert set(map(tuple, X1.edges().tolist())) == {(u, w) for u in range(4) for w in range(u + 1, 4)}


@pytest.mark.parametrize("k,n", [(2, 32), (3, 128), (4, 1024), (5, 8192)])
def test_cayley_sizes(k, n):
    X = pipeline.cayley_graph(k)
    assert X.nverts == n and X.is_simple() and X.is_connected()
    assert np.all(X.degrees() == 6)
    # dart (g, s) is reversed by (g s, s^-1)
    inv = np.array([1, 0, 3, 2, 5, 4])
    assert np.array_equal(X.label[X.rev], inv[X.label])


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_tk_structure(k):
    X, T = pipeline.cayley_graph(k), pipeline.tk(k)
    n = X.nverts
    assert T.nverts == 2 * n and T.nedges == 3 * n
    assert np.all(T.degrees() == 3) and T.is_simple() and T.is_connected()
    assert np.array_equal(T.bipartition() != T.bipartition()[0], T.classes != T.classes[0])
    assert np.array_equal(np.bincount(T.classes), [n, n])


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_relator_triangles_are_the_3_cliques(k):
    X = pipeline.cayley_graph(k)
    tri = pipeline.triangles(k)
    assert {tuple(sorted(t)) for t in tri.vertices.tolist()} == three_cliques(X)


def test_y_delta_inverts_delta_y():
    X, T = pipeline.cayley_graph(3), pipeline.tk(3)
    back = y_delta(T, range(X.nverts, T.nverts))
    assert back == sorted(map(tuple, X.edges().tolist()))


def test_projection_is_a_covering():
    for k in (2, 3, 4):
        big, small = pipeline.group(k + 1), pipeline.group(k)
        from trivalent.group.pcp import projection_mask

        vmap = tk_projection_map(pipeline.tk(k + 1).nverts // 2, pipeline.tk(k).nverts // 2,
                                 projection_mask(big, small))
        assert covering_check(pipeline.tk(k + 1), pipeline.tk(k), vmap)
        vmap[0] = vmap[1]
        assert not covering_check(pipeline.tk(k + 1), pipeline.tk(k), vmap)


def test_triangle_errors():
    O = octahedron()
    with pytest.raises(StructureError):
        triangles_from_triples(O, [(0, 3, 1)])
    with pytest.raises(StructureError):
        triangles_from_triples(O, [(0, 1, 2), (0, 1, 5)])


def test_delta_y_octahedron():
    O = octahedron()
    T = delta_y(O, triangles_from_triples(O, [(0, 1, 2), (0, 4, 5), (3, 1, 5), (3, 4, 2)]))
    assert T.nverts == 10 and T.nedges == 12 and np.all(T.degrees()[6:] == 3)


def test_exports_roundtrip():
    T = pipeline.tk(2)
    n, edges = core.from_edgelist(core.to_edgelist(T, {"version": "x"}))
    assert n == 64 and sorted(edges) == sorted(map(tuple, T.edges().tolist()))
    n, edges = core.from_graph6(core.to_graph6(T))
    assert n == 64 and sorted(edges) == sorted(tuple(sorted(e)) for e in T.edges().tolist())
    assert nx.to_graph6_bytes(to_nx(T), header=False).decode().strip() == core.to_graph6(T)
    dot = core.to_dot(T, {"version": "x"})
    assert dot.count(" -- ") == 96 and dot.startswith("// ")


def test_graph6_rejects_multigraph():
    with pytest.raises(ValueError):
        core.to_graph6(pipeline.cayley_graph(1))


def test_bad_rev_rejected():
    with pytest.raises(ValueError):
        core.LabeledGraph(2, [0, 1], [0, 1])


# isomorphism -------------------------------------------------------------

def test_isomorphism_positive_and_negative():
    Q3 = hypercube(3)
    perm = np.random.default_rng(0).permutation(8)
    relabeled = core.from_edges(8, [(int(perm[u]), int(perm[w])) for u, w in Q3.edges().tolist()])
    m = is_isomorphic(Q3, relabeled)
    assert m is not None and verify_isomorphism(Q3, relabeled, m)
    assert is_isomorphic(complete_bipartite(3, 3), core.from_edges(6, [(i, (i + 1) % 6) for i in range(6)] +
                                                                  [(0, 3), (1, 4), (2, 5)])) is not None
    # prism vs K_{3,3}: both cubic on 6 vertices, not isomorphic
    prism = core.from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)])
    assert is_isomorphic(prism, complete_bipartite(3, 3)) is None
    assert is_isomorphic(complete_graph(4), hypercube(2)) is None


def test_isomorphism_bad_witness_rejected():
    assert not verify_isomorphism(hypercube(2), hypercube(2), [0, 0, 1, 2])
    assert not verify_isomorphism(hypercube(2), hypercube(2), [0, 3, 1, 2])


def test_search_limits():
    with pytest.raises(SearchLimitExceeded):
        is_isomorphic(pipeline.tk(5), pipeline.tk(5))
    with pytest.raises(SearchLimitExceeded):
        is_isomorphic(hypercube(4), hypercube(4), max_nodes=0)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=4, max_value=10), st.floats(0.2, 0.8), st.integers(0, 10 ** 6))
def test_isomorphism_against_networkx(n, p, seed):
    G1 = nx.gnp_random_graph(n, p, seed=seed)
    G2 = nx.gnp_random_graph(n, p, seed=seed + 1)
    g1 = core.from_edges(n, list(G1.edges()))
    g2 = core.from_edges(n, list(G2.edges()))
    assert (is_isomorphic(g1, g2) is not None) == nx.is_isomorphic(G1, G2)
    perm = np.random.default_rng(seed).permutation(n)
    g3 = core.from_edges(n, [(int(perm[u]), int(perm[w])) for u, w in G1.edges()])
    assert is_isomorphic(g1, g3) is not None


# cheeger -----------------------------------------------------------------

def test_cheeger_small_graphs():
    assert cheeger(hypercube(3)).exact == pytest.approx(1.0)
    assert cheeger(complete_graph(4)).exact == pytest.approx(2.0)
    h, witness = cheeger_exact(complete_graph(6))
    assert h == pytest.approx(3.0) and len(witness) == 3


def test_cheeger_bound_for_t2():
    from trivalent.spectral import spectral_gap

    r = cheeger(pipeline.tk(2), spectral_gap(pipeline.tk(2)))
    assert r.exact is None
    assert r.lower_bound == pytest.approx(0.29289, abs=1e-5)


def test_cheeger_bound_holds_where_exact():
    from trivalent.spectral import spectral_gap

    g = pipeline.tk(1)
    r = cheeger(g, spectral_gap(g))
    assert r.exact >= r.lower_bound - 1e-12


def test_cheeger_needs_connected():
    with pytest.raises(ValueError):
        cheeger(core.from_edges(4, [(0, 1), (2, 3)]))


@pytest.mark.parametrize("k", [2, 3, 4])
def test_bound_from_C_matches_half_gap(k):
    from trivalent.spectral import spectral_gap, spectrum_report

    C = spectrum_report(pipeline.cayley_graph(k)).lambda1
    assert cheeger_bound_from_C(C) == pytest.approx(spectral_gap(pipeline.tk(k)) / 2, abs=1e-9)
    with pytest.raises(ValueError):
        cheeger_bound_from_C(6.0)
