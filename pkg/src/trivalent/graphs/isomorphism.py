"""Graph isomorphism for small graphs by colour refinement and backtracking.

Every witness returned is re-checked edge by edge in :func:`verify_isomorphism`,
which shares no code with the search.
"""

from __future__ import annotations

from collections import Counter
from typing import Optional

import numpy as np

from .core import LabeledGraph

MAX_VERTICES = 5000


class SearchLimitExceeded(RuntimeError):
    pass


def _arcs(g: LabeledGraph, use_labels: bool, offset: int) -> list[list[tuple[int, int]]]:
    adj: list[list[tuple[int, int]]] = [[] for _ in range(g.nverts)]
    lab = g.label if (use_labels and g.label is not None) else np.zeros(g.ndarts, dtype=np.int64)
    for s, t, l in zip(g.src.tolist(), g.dst.tolist(), lab.tolist()):
        adj[s].append((l, t + offset))
    return adj


def _refine(col: list[int], adj) -> list[int]:
    ncol = len(set(col))
    while True:
        sigs = [(col[v], tuple(sorted((l, col[u]) for l, u in adj[v]))) for v in range(len(col))]
        keys = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [keys[s] for s in sigs]
        if len(keys) == ncol:
            return new
        col, ncol = new, len(keys)


def is_isomorphic(g1: LabeledGraph, g2: LabeledGraph, use_labels: bool = False,
                  colors1=None, colors2=None, max_nodes: int = 100_000) -> Optional[list[int]]:
    """A vertex bijection g1 -> g2 preserving adjacency, or None.

    With ``use_labels`` dart labels must match as well (directed labelled
    arcs, e.g. Cayley graphs with generator labels).  Optional vertex colours
    must be preserved.  Graphs must be simple unless labels are used.
    """
    for g in (g1, g2):
        if g.nverts > MAX_VERTICES:
            raise SearchLimitExceeded(f"{g.nverts} vertices exceeds {MAX_VERTICES}")
    n = g1.nverts
    if n != g2.nverts or g1.ndarts != g2.ndarts:
        return None
    if not use_labels:
        s1, s2 = g1.is_simple(), g2.is_simple()
        if s1 != s2:
            return None
        if not s1:
            raise ValueError("unlabelled isomorphism search needs simple graphs")
    if sorted(g1.degrees().tolist()) != sorted(g2.degrees().tolist()):
        return None
    if n == 0:
        return []
    adj = _arcs(g1, use_labels, 0) + _arcs(g2, use_labels, n)
    c1 = list(colors1) if colors1 is not None else [0] * n
    c2 = list(colors2) if colors2 is not None else [0] * n
    budget = [max_nodes]

    def balanced(col):
        return Counter(col[:n]) == Counter(col[n:])

    def search(col):
        budget[0] -= 1
        if budget[0] < 0:
            raise SearchLimitExceeded("backtracking node budget exhausted")
        col = _refine(col, adj)
        if not balanced(col):
            return None
        cells = Counter(col[:n])
        if all(c == 1 for c in cells.values()):
            where = {col[n + w]: w for w in range(n)}
            return [where[col[v]] for v in range(n)]
        target = min((size, c) for c, size in cells.items() if size > 1)[1]
        v = next(x for x in range(n) if col[x] == target)
        fresh = max(col) + 1
        for w in range(n):
            if col[n + w] != target:
                continue
            trial = list(col)
            trial[v] = fresh
            trial[n + w] = fresh
            found = search(trial)
            if found is not None:
                return found
        return None

    mapping = search(c1 + c2)
    if mapping is not None and not verify_isomorphism(g1, g2, mapping, use_labels):
        raise AssertionError("isomorphism search produced an invalid witness")
    return mapping


def verify_isomorphism(g1: LabeledGraph, g2: LabeledGraph, mapping, use_labels: bool = False) -> bool:
    """Check that mapping is a bijection carrying the arc multiset of g1 onto g2's."""
    m = np.asarray(mapping, dtype=np.int64)
    if len(m) != g1.nverts or g1.nverts != g2.nverts:
        return False
    if len(np.unique(m)) != len(m) or (len(m) and (m.min() < 0 or m.max() >= g2.nverts)):
        return False
    if use_labels:
        a = Counter(zip(m[g1.src].tolist(), m[g1.dst].tolist(), g1.label.tolist()))
        b = Counter(zip(g2.src.tolist(), g2.dst.tolist(), g2.label.tolist()))
    else:
        a = Counter(zip(m[g1.src].tolist(), m[g1.dst].tolist()))
        b = Counter(zip(g2.src.tolist(), g2.dst.tolist()))
    return a == b


def octahedron() -> LabeledGraph:
    from .core import from_edges

    # K_6 minus the perfect matching {0,3}, {1,4}, {2,5}
    edges = [(u, w) for u in range(6) for w in range(u + 1, 6) if w - u != 3]
    return from_edges(6, edges, name="octahedron")


def complete_graph(n: int) -> LabeledGraph:
    from .core import from_edges

    return from_edges(n, [(u, w) for u in range(n) for w in range(u + 1, n)], name=f"K_{n}")


def complete_bipartite(a: int, b: int) -> LabeledGraph:
    from .core import from_edges

    return from_edges(a + b, [(u, a + w) for u in range(a) for w in range(b)], name=f"K_{a},{b}")


def hypercube(dim: int) -> LabeledGraph:
    from .core import from_edges

    n = 1 << dim
    return from_edges(n, [(u, u ^ (1 << i)) for u in range(n) for i in range(dim) if u < u ^ (1 << i)],
                      name=f"Q_{dim}")
