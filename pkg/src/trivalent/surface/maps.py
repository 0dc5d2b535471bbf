"""Rotation systems, face tracing and genus."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from ..graphs.core import LabeledGraph

# cyclic label order of the darts at blue (old) and green (triangle) vertices of T_k
BLUE_ORDER = (0, 3, 1)
GREEN_ORDER = (1, 3, 0)


class MissingLabels(ValueError):
    pass


@dataclass(eq=False)
class OrientedMap:
    """A graph with a cyclic successor ``rotation[d]`` on each vertex star."""

    graph: LabeledGraph
    rotation: np.ndarray

    def __post_init__(self):
        g = self.graph
        rho = np.asarray(self.rotation, dtype=np.int64)
        self.rotation = rho
        if len(rho) != g.ndarts or not np.array_equal(np.sort(rho), np.arange(g.ndarts)):
            raise ValueError("rotation must be a permutation of the darts")
        if np.any(g.src[rho] != g.src):
            raise ValueError("rotation moves a dart to another vertex")
        # one cycle per vertex
        seen = np.zeros(g.ndarts, dtype=bool)
        deg = g.degrees()
        for d in range(g.ndarts):
            if seen[d]:
                continue
            n, x = 0, d
            while not seen[x]:
                seen[x] = True
                n += 1
                x = rho[x]
            if n != deg[g.src[d]]:
                raise ValueError(f"rotation at vertex {g.src[d]} is not a single cycle")

    @property
    def inverse_rotation(self) -> np.ndarray:
        inv = np.empty_like(self.rotation)
        inv[self.rotation] = np.arange(len(self.rotation))
        return inv


def from_cyclic_orders(g: LabeledGraph, orders: Sequence[Sequence[int]]) -> OrientedMap:
    """Rotation from per-vertex cyclic lists of darts."""
    rho = np.full(g.ndarts, -1, dtype=np.int64)
    for cyc in orders:
        for i, d in enumerate(cyc):
            rho[d] = cyc[(i + 1) % len(cyc)]
    if np.any(rho < 0):
        raise ValueError("some dart is missing from the cyclic orders")
    return OrientedMap(g, rho)


def orient_Tk(T: LabeledGraph) -> OrientedMap:
    """The orientation O_k: labels 0 -> 3 -> 1 at blue, 1 -> 3 -> 0 at green vertices."""
    if T.label is None or T.classes is None:
        raise MissingLabels("T_k needs edge labels and vertex classes")
    orders = []
    for v, star in enumerate(T.darts_at()):
        labs = T.label[star].tolist()
        if sorted(labs) != [0, 1, 3]:
            raise MissingLabels(f"vertex {v} has labels {labs}, expected one each of 0, 1, 3")
        seq = BLUE_ORDER if T.classes[v] == 0 else GREEN_ORDER
        orders.append([int(star[labs.index(l)]) for l in seq])
    return from_cyclic_orders(T, orders)


@dataclass(eq=False)
class FaceSet:
    """Faces as cyclic dart sequences; face i walks ``faces[i][0], faces[i][1], ...``."""

    faces: list[np.ndarray]
    face_of: np.ndarray
    turn: str
    nverts: int
    nedges: int
    tag: Optional[str] = None
    meta: dict = field(default_factory=dict)

    @property
    def nfaces(self) -> int:
        return len(self.faces)

    @property
    def lengths(self) -> np.ndarray:
        return np.array([len(f) for f in self.faces], dtype=np.int64)

    @property
    def euler(self) -> int:
        return self.nverts - self.nedges + self.nfaces

    @property
    def genus(self) -> int:
        chi = self.euler
        if chi % 2:
            raise ValueError(f"odd Euler characteristic {chi}: not an orientable closed surface")
        return (2 - chi) // 2

    def face_length(self) -> Optional[int]:
        """The common face length, or None when faces differ in length."""
        ls = set(self.lengths.tolist())
        return ls.pop() if len(ls) == 1 else None


def face_permutation(m: OrientedMap, turn: str = "left") -> np.ndarray:
    """d -> rho^-1(rev d) for left turns, rho(rev d) for right turns."""
    if turn == "left":
        return m.inverse_rotation[m.graph.rev]
    if turn == "right":
        return m.rotation[m.graph.rev]
    raise ValueError("turn must be 'left' or 'right'")


def trace_faces(m: OrientedMap, turn: str = "left") -> FaceSet:
    phi = face_permutation(m, turn)
    nd = m.graph.ndarts
    face_of = np.full(nd, -1, dtype=np.int64)
    faces = []
    for d in range(nd):
        if face_of[d] >= 0:
            continue
        walk = []
        x = d
        while face_of[x] < 0:
            face_of[x] = len(faces)
            walk.append(x)
            x = phi[x]
        faces.append(np.asarray(walk, dtype=np.int64))
    return FaceSet(faces, face_of, turn, m.graph.nverts, m.graph.nedges)


def tag_conventions(m: OrientedMap, expected_length: int) -> tuple[FaceSet, FaceSet]:
    """Trace both turn conventions and tag those whose faces all have the expected length.

    The left convention is tagged "left" when it matches.  Both always
    give the same multiset of face lengths (one permutation is conjugate to
    the inverse of the other), so a match on the right is recorded as well.
    """
    left, right = trace_faces(m, "left"), trace_faces(m, "right")
    for fs, tag in ((left, "left"), (right, "mirror")):
        if fs.face_length() == expected_length:
            fs.tag = tag
    return left, right


def dual(fs: FaceSet, g: LabeledGraph, name: str = "") -> LabeledGraph:
    """Dual graph: one vertex per face, one edge across each edge of g."""
    return LabeledGraph(fs.nfaces, fs.face_of.copy(), g.rev.copy(), None if g.label is None else g.label.copy(),
                        g.label_names, name=name or (g.name + "*"))


def cube_map() -> OrientedMap:
    """The 3-cube with its planar rotation system (orientation alternates with parity)."""
    from ..graphs.core import from_edges

    edges = [(u, u ^ b) for u in range(8) for b in (1, 2, 4) if u < u ^ b]
    g = from_edges(8, edges, name="Q_3")
    orders = []
    for v, star in enumerate(g.darts_at()):
        by_bit = {int(g.dst[d] ^ v): int(d) for d in star}
        seq = (1, 2, 4) if bin(v).count("1") % 2 == 0 else (1, 4, 2)
        orders.append([by_bit[b] for b in seq])
    return from_cyclic_orders(g, orders)
