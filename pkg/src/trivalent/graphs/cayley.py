"""Cayley graphs X_k, relator triangles, and the Delta-Y transformation."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from ..group import pcp as P
from .core import LabeledGraph

# corner roles inside triangle (h, h x0, h x0 x1): the label of the opposite edge
CORNER_LABELS = (1, 3, 0)
TK_LABEL_NAMES = ("0", "1", "2", "3")


class StructureError(RuntimeError):
    """A count that the construction forces came out wrong."""


def cayley_from_tables(tables: Sequence[np.ndarray], label_names: Sequence[str],
                       inverse_label: Sequence[int], name: str = "") -> LabeledGraph:
    """Right Cayley graph from right-multiplication tables.

    Dart ``len(tables) * g + s`` runs from g to g*s with label s; its reverse
    is the dart of label ``inverse_label[s]`` at g*s.
    """
    ns = len(tables)
    n = len(tables[0])
    T = np.stack([np.asarray(t, dtype=np.int64) for t in tables], axis=1)  # (n, ns)
    src = np.repeat(np.arange(n, dtype=np.int64), ns)
    inv = np.asarray(inverse_label, dtype=np.int64)
    rev = (T * ns + inv[None, :]).reshape(-1)
    label = np.tile(np.arange(ns, dtype=np.int64), n)
    g = LabeledGraph(n, src, rev, label, tuple(label_names), name=name)
    g.meta["tables"] = T
    return g


def cayley(pcp: P.PcPresentation, cap: int = P.DEFAULT_ENUM_CAP) -> LabeledGraph:
    """X_k = Cay(G_k, S) with the six formal labels x0^+-1, x1^+-1, x3^+-1.

    In G_1 every generator is an involution and the two formal labels of each
    generator give a doubled edge.
    """
    P.enumerate_elements(pcp, cap)
    R0, R1 = P.right_multiplication_tables(pcp, [pcp.images[0], pcp.images[1]])
    R0i = np.empty_like(R0)
    R0i[R0] = np.arange(len(R0))
    R1i = np.empty_like(R1)
    R1i[R1] = np.arange(len(R1))
    # g x3 = g x1^-1 x0^-1 ; g x3^-1 = g x0 x1
    tables = [R0, R0i, R1, R1i, R0i[R1i], R1[R0]]
    g = cayley_from_tables(tables, P.GENERATOR_LABELS, (1, 0, 3, 2, 5, 4), name=f"X_{pcp.nclass}")
    g.meta["k"] = pcp.nclass
    return g


@dataclass(frozen=True)
class Triangle:
    vertices: tuple[int, int, int]
    darts: tuple[int, int, int]


@dataclass(eq=False)
class Triangles:
    """Triangle h is (h, h x0, h x0 x1) with darts labelled x0, x1, x3."""

    vertices: np.ndarray  # (m, 3)
    darts: np.ndarray     # (m, 3)
    corner_labels: Optional[tuple[int, int, int]] = CORNER_LABELS

    def __len__(self) -> int:
        return len(self.vertices)

    def __getitem__(self, i: int) -> Triangle:
        return Triangle(tuple(int(v) for v in self.vertices[i]), tuple(int(d) for d in self.darts[i]))


def relator_triangles(X: LabeledGraph) -> Triangles:
    """One triangle per group element; verifies every forced incidence count."""
    T = X.meta["tables"]
    n = X.nverts
    h = np.arange(n)
    a = T[h, 0]            # h x0
    b = T[a, 2]            # h x0 x1
    if np.any(T[b, 4] != h):
        raise StructureError("x0 x1 x3 does not close up")
    verts = np.stack([h, a, b], axis=1)
    darts = np.stack([6 * h + 0, 6 * a + 2, 6 * b + 4], axis=1)
    tri = Triangles(verts, darts)
    check_triangles(X, tri, per_vertex=3)
    return tri


def triangles_from_triples(X: LabeledGraph, triples, corner_labels=None) -> Triangles:
    """Triangles of a simple graph given as vertex triples (u, v, w)."""
    where = {(int(s), int(t)): d for d, (s, t) in enumerate(zip(X.src.tolist(), X.dst.tolist()))}
    verts = np.asarray(triples, dtype=np.int64).reshape(-1, 3)
    try:
        darts = np.array([[where[(u, v)], where[(v, w)], where[(w, u)]] for u, v, w in verts.tolist()],
                         dtype=np.int64).reshape(-1, 3)
    except KeyError as exc:
        raise StructureError(f"triple uses a non-edge {exc.args[0]}") from None
    tri = Triangles(verts, darts, corner_labels)
    check_triangles(X, tri)
    return tri


def check_triangles(X: LabeledGraph, tri: Triangles, per_vertex: Optional[int] = None) -> None:
    d = tri.darts
    if np.any(X.src[d] != tri.vertices) or np.any(X.dst[d] != np.roll(tri.vertices, -1, axis=1)):
        raise StructureError("triangle darts do not match their corners")
    if np.any(d[:, 0] == d[:, 1]) or np.any(d[:, 1] == d[:, 2]) or np.any(d[:, 0] == d[:, 2]):
        raise StructureError("triangle uses a dart twice")
    edge_id = np.minimum(d, X.rev[d]).reshape(-1)
    counts = np.bincount(edge_id, minlength=X.ndarts)[X.edge_darts()]
    if np.any(counts > 1):
        raise StructureError("an edge lies in more than one triangle")
    if per_vertex is not None:
        if np.any(counts != 1):
            raise StructureError("an edge lies in no triangle")
        vc = np.bincount(tri.vertices.reshape(-1), minlength=X.nverts)
        if np.any(vc != per_vertex):
            raise StructureError(f"a vertex is not in exactly {per_vertex} triangles")


def three_cliques(X: LabeledGraph) -> set[tuple[int, int, int]]:
    """All 3-cliques of the simple graph underlying X, as sorted triples."""
    adj = X.adjacency_sets()
    out = set()
    for u in range(X.nverts):
        for v in adj[u]:
            if v <= u:
                continue
            for w in adj[u] & adj[v]:
                if w > v:
                    out.add((u, v, w))
    return out


def delta_y(X: LabeledGraph, tri: Triangles, name: str = "") -> LabeledGraph:
    """Replace every listed triangle by a new vertex joined to its corners.

    Untouched edges of X are kept.  New vertex ``X.nverts + t`` stands for
    triangle t.  Edge (corner, new vertex) carries the corner's label from
    ``tri.corner_labels``.  Vertex classes: 0 = old, 1 = new.
    """
    check_triangles(X, tri)
    n, m = X.nverts, len(tri)
    used = np.zeros(X.ndarts, dtype=bool)
    used[tri.darts.reshape(-1)] = True
    used[X.rev[tri.darts.reshape(-1)]] = True
    keep = np.arange(X.ndarts)[(~used) & (np.arange(X.ndarts) < X.rev)]

    corners = tri.vertices.reshape(-1)
    greens = n + np.repeat(np.arange(m), 3)
    ne_new = 3 * m
    ne = len(keep) + ne_new
    src = np.empty(2 * ne, dtype=np.int64)
    src[0:2 * len(keep):2] = X.src[keep]
    src[1:2 * len(keep):2] = X.dst[keep]
    src[2 * len(keep)::2] = corners
    src[2 * len(keep) + 1::2] = greens
    rev = np.arange(2 * ne) ^ 1
    label = None
    names: tuple = ()
    if tri.corner_labels is not None and len(keep) == 0:
        label = np.repeat(np.tile(np.asarray(tri.corner_labels), m), 2)
        names = TK_LABEL_NAMES
    classes = np.concatenate([np.zeros(n, dtype=np.int64), np.ones(m, dtype=np.int64)])
    g = LabeledGraph(n + m, src, rev, label, names, name=name)
    if len(keep) == 0:
        g.classes = classes
    g.meta.update({k: v for k, v in X.meta.items() if k == "k"})
    return g


def tk_graph(X: LabeledGraph) -> LabeledGraph:
    k = X.meta.get("k")
    return delta_y(X, relator_triangles(X), name=f"T_{k}")


def y_delta(T: LabeledGraph, added: Sequence[int]) -> list[tuple[int, int]]:
    """Contract each listed degree-3 vertex back to a triangle.

    Returns the edge list (sorted pairs) of the resulting graph on the
    remaining vertices, which keep their numbers.
    """
    added_set = set(int(a) for a in added)
    edges = []
    for u, w in T.edges().tolist():
        if u not in added_set and w not in added_set:
            edges.append(tuple(sorted((u, w))))
    stars = T.darts_at()
    dst = T.dst
    for a in sorted(added_set):
        nb = dst[stars[a]].tolist()
        if len(nb) != 3:
            raise StructureError(f"vertex {a} has degree {len(nb)}, not 3")
        x, y, z = nb
        edges += [tuple(sorted(p)) for p in ((x, y), (y, z), (z, x))]
    return sorted(edges)


def covering_check(big: LabeledGraph, small: LabeledGraph, vertex_map, use_labels: bool = True) -> bool:
    """True iff vertex_map is a homomorphism that is a bijection on each star.

    With labels present on both graphs (and ``use_labels``) dart labels must be
    preserved too.
    """
    vmap = np.asarray(vertex_map, dtype=np.int64)
    if len(vmap) != big.nverts or vmap.min() < 0 or vmap.max() >= small.nverts:
        return False
    labelled = use_labels and big.label is not None and small.label is not None
    if not np.array_equal(big.degrees(), small.degrees()[vmap]):
        return False
    kb = (big.label if labelled else 0) * small.nverts + vmap[big.dst]
    ks = (small.label if labelled else 0) * small.nverts + small.dst
    ob = np.lexsort((kb, big.src))
    os_ = np.lexsort((ks, small.src))
    kb_sorted = kb[ob]
    ks_sorted = ks[os_]
    deg_s = small.degrees()
    start_s = np.concatenate([[0], np.cumsum(deg_s)[:-1]])
    deg_b = big.degrees()
    # position of each big dart inside its vertex's sorted star
    start_b = np.concatenate([[0], np.cumsum(deg_b)[:-1]])
    within = np.arange(big.ndarts) - np.repeat(start_b, deg_b)
    owner = big.src[ob]
    target = start_s[vmap[owner]] + within
    return bool(np.array_equal(kb_sorted, ks_sorted[target]))


def fiber_sizes(vertex_map, nsmall: int) -> np.ndarray:
    return np.bincount(np.asarray(vertex_map), minlength=nsmall)


def tk_projection_map(n_big: int, n_small: int, mask: int) -> np.ndarray:
    """Vertex map T_{k+1} -> T_k induced by the group projection (a bit mask)."""
    h = np.arange(n_big)
    return np.concatenate([h & mask, n_small + (h & mask)])
