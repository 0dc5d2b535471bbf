"""Dart-based labelled (multi)graphs and their export formats."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

import numpy as np


@dataclass(eq=False)
class LabeledGraph:
    """A finite multigraph stored as darts (half-edges).

    ``src[d]`` is the vertex dart ``d`` leaves from and ``rev[d]`` the opposite
    dart of the same edge.  ``label[d]`` indexes ``label_names`` when present.
    ``classes`` is an optional 0/1 bipartition of the vertices.
    """

    nverts: int
    src: np.ndarray
    rev: np.ndarray
    label: Optional[np.ndarray] = None
    label_names: Sequence[str] = ()
    classes: Optional[np.ndarray] = None
    name: str = ""
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.src = np.asarray(self.src, dtype=np.int64)
        self.rev = np.asarray(self.rev, dtype=np.int64)
        if self.label is not None:
            self.label = np.asarray(self.label, dtype=np.int64)
        nd = len(self.src)
        if len(self.rev) != nd:
            raise ValueError("src and rev must have equal length")
        if nd and (self.rev.min() < 0 or self.rev.max() >= nd):
            raise ValueError("reverse dart out of range")
        d = np.arange(nd)
        if np.any(self.rev[self.rev] != d) or np.any(self.rev == d):
            raise ValueError("rev must be a fixed-point-free involution")

    # structure ---------------------------------------------------------

    @property
    def ndarts(self) -> int:
        return len(self.src)

    @property
    def nedges(self) -> int:
        return self.ndarts // 2

    @property
    def dst(self) -> np.ndarray:
        return self.src[self.rev]

    def degrees(self) -> np.ndarray:
        return np.bincount(self.src, minlength=self.nverts)

    def darts_at(self) -> list[np.ndarray]:
        """Darts leaving each vertex, in increasing dart order."""
        order = np.argsort(self.src, kind="stable")
        bounds = np.searchsorted(self.src[order], np.arange(self.nverts + 1))
        return [order[bounds[v]:bounds[v + 1]] for v in range(self.nverts)]

    def edge_darts(self) -> np.ndarray:
        """One representative dart per edge (the smaller of each pair)."""
        d = np.arange(self.ndarts)
        return d[d < self.rev]

    def edges(self) -> np.ndarray:
        """(m, 2) array of endpoints, one row per edge."""
        d = self.edge_darts()
        return np.stack([self.src[d], self.dst[d]], axis=1)

    def neighbors(self, v: int) -> list[int]:
        return sorted(self.dst[self.src == v].tolist())

    def adjacency_sets(self) -> list[set[int]]:
        out: list[set[int]] = [set() for _ in range(self.nverts)]
        for u, w in zip(self.src.tolist(), self.dst.tolist()):
            out[u].add(w)
        return out

    def is_simple(self) -> bool:
        if np.any(self.src == self.dst):
            return False
        keys = self.src * self.nverts + self.dst
        return len(np.unique(keys)) == self.ndarts

    def is_connected(self) -> bool:
        if self.nverts == 0:
            return True
        import scipy.sparse.csgraph as csg

        ncomp, _ = csg.connected_components(self.adjacency(), directed=False)
        return ncomp == 1

    def adjacency(self, dtype=np.float64):
        """Sparse adjacency matrix; parallel edges add up."""
        import scipy.sparse as sp

        A = sp.coo_matrix(
            (np.ones(self.ndarts, dtype=dtype), (self.src, self.dst)),
            shape=(self.nverts, self.nverts),
        )
        return A.tocsr()

    def bipartition(self) -> Optional[np.ndarray]:
        """0/1 colouring if the graph is bipartite, else None (BFS)."""
        from collections import deque

        colour = -np.ones(self.nverts, dtype=np.int64)
        adj = [[] for _ in range(self.nverts)]
        for u, w in zip(self.src.tolist(), self.dst.tolist()):
            adj[u].append(w)
        for s in range(self.nverts):
            if colour[s] >= 0:
                continue
            colour[s] = 0
            q = deque([s])
            while q:
                u = q.popleft()
                for w in adj[u]:
                    if colour[w] < 0:
                        colour[w] = 1 - colour[u]
                        q.append(w)
                    elif colour[w] == colour[u]:
                        return None
        return colour

    def label_of(self, d: int) -> Optional[str]:
        if self.label is None:
            return None
        return self.label_names[self.label[d]] if self.label_names else str(self.label[d])


def from_edges(nverts: int, edges: Sequence[tuple[int, int]], labels: Optional[Sequence[int]] = None,
               **kw) -> LabeledGraph:
    """Graph with darts 2e (u -> w) and 2e+1 (w -> u) for edge e = (u, w)."""
    e = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    src = np.empty(2 * len(e), dtype=np.int64)
    src[0::2] = e[:, 0]
    src[1::2] = e[:, 1]
    rev = np.arange(2 * len(e)) ^ 1
    lab = None
    if labels is not None:
        lab = np.repeat(np.asarray(labels, dtype=np.int64), 2)
    return LabeledGraph(nverts, src, rev, lab, **kw)


def handshake_ok(g: LabeledGraph) -> bool:
    return int(g.degrees().sum()) == 2 * g.nedges


# exports -----------------------------------------------------------------

def _header_lines(g: LabeledGraph, meta: Optional[dict]) -> list[str]:
    info = {"name": g.name, "n": g.nverts, "m": g.nedges}
    info.update(g.meta)
    if meta:
        info.update(meta)
    return [f"{k}: {v}" for k, v in info.items()]


def to_edgelist(g: LabeledGraph, meta: Optional[dict] = None) -> str:
    lines = ["# " + s for s in _header_lines(g, meta)]
    lines += [f"{u} {w}" for u, w in g.edges().tolist()]
    return "\n".join(lines) + "\n"


def from_edgelist(text: str) -> tuple[int, list[tuple[int, int]]]:
    n = None
    edges = []
    for line in text.splitlines():
        line = line.strip()
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("n:"):
                n = int(body[2:])
            continue
        if line:
            u, w = line.split()
            edges.append((int(u), int(w)))
    if n is None:
        n = 1 + max(max(e) for e in edges) if edges else 0
    return n, edges


def _g6_size(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])


def to_graph6(g: LabeledGraph) -> str:
    """graph6 string (simple graphs only, no header)."""
    if not g.is_simple():
        raise ValueError("graph6 only encodes simple graphs")
    n = g.nverts
    adj = np.zeros((n, n), dtype=bool)
    adj[g.src, g.dst] = True
    iu, ju = np.triu_indices(n, k=1)
    # graph6 orders the upper triangle column by column
    order = np.lexsort((iu, ju))
    bits = adj[iu[order], ju[order]].astype(np.uint8)
    pad = (-len(bits)) % 6
    bits = np.concatenate([bits, np.zeros(pad, dtype=np.uint8)]).reshape(-1, 6)
    vals = bits @ (1 << np.arange(5, -1, -1))
    return (_g6_size(n) + bytes((vals + 63).astype(np.uint8).tolist())).decode("ascii")


def from_graph6(s: str) -> tuple[int, list[tuple[int, int]]]:
    data = s.strip().encode("ascii")
    if data.startswith(b">>graph6<<"):
        data = data[10:]
    if data[0] != 126:
        n, pos = data[0] - 63, 1
    elif data[1] != 126:
        n = sum((data[1 + i] - 63) << (12 - 6 * i) for i in range(3))
        pos = 4
    else:
        n = sum((data[2 + i] - 63) << (30 - 6 * i) for i in range(6))
        pos = 8
    bits = []
    for c in data[pos:]:
        v = c - 63
        bits.extend((v >> s) & 1 for s in range(5, -1, -1))
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return n, edges


def to_dot(g: LabeledGraph, meta: Optional[dict] = None) -> str:
    lines = ["// " + s for s in _header_lines(g, meta)]
    lines.append(f'graph "{g.name or "G"}" {{')
    for v in range(g.nverts):
        attrs = ""
        if g.classes is not None:
            attrs = f' [class={int(g.classes[v])}, color="{"blue" if g.classes[v] == 0 else "green"}"]'
        lines.append(f"  {v}{attrs};")
    for d in g.edge_darts().tolist():
        u, w = int(g.src[d]), int(g.src[g.rev[d]])
        lab = g.label_of(d)
        attrs = f' [label="{lab}"]' if lab is not None else ""
        lines.append(f"  {u} -- {w}{attrs};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def iter_edges(g: LabeledGraph) -> Iterator[tuple[int, int]]:
    for u, w in g.edges().tolist():
        yield u, w
