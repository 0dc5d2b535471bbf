"""Patch of the universal cover in the Poincare disk, as SVG.

Tiles are images of a seed regular m-gon centred at 0 under Moebius maps in
SU(1,1).  The neighbour across side j is obtained by the half-turn about that
side's midpoint.  Each tile carries the face of the oriented map it covers and
the offset of its side numbering, and the corner labels are checked for
consistency with the rotation system as the patch grows.
"""

from __future__ import annotations

import cmath
import math
from typing import Optional

import numpy as np

from .maps import FaceSet, OrientedMap

MAX_RADIUS = 6
SIZE = 800


class RenderError(ValueError):
    pass


def _normalize(M: np.ndarray) -> np.ndarray:
    # project back to SU(1,1): [[a, b], [conj b, conj a]], |a|^2 - |b|^2 = 1
    a = (M[0, 0] + np.conj(M[1, 1])) / 2
    b = (M[0, 1] + np.conj(M[1, 0])) / 2
    s = math.sqrt(abs(a) ** 2 - abs(b) ** 2)
    a, b = a / s, b / s
    return np.array([[a, b], [np.conj(b), np.conj(a)]])


def _apply(M: np.ndarray, z: complex) -> complex:
    return (M[0, 0] * z + M[0, 1]) / (M[1, 0] * z + M[1, 1])


def _half_turn(p: complex) -> np.ndarray:
    s = math.sqrt(1 - abs(p) ** 2)
    T = np.array([[1, p], [np.conj(p), 1]]) / s
    Ti = np.array([[1, -p], [-np.conj(p), 1]]) / s
    R = np.array([[1j, 0], [0, -1j]])
    return _normalize(T @ R @ Ti)


def seed_polygon(m: int) -> tuple[list[complex], list[complex]]:
    """Corners and side midpoints of the regular m-gon with angles 2pi/3 centred at 0."""
    cosh_circ = 1 / (math.tan(math.pi / m) * math.tan(math.pi / 3))
    cosh_in = math.cos(math.pi / 3) / math.sin(math.pi / m)
    if cosh_circ <= 1:
        raise RenderError(f"{m}-gons with angle 2pi/3 are not hyperbolic")
    rc = math.tanh(math.acosh(cosh_circ) / 2)
    ri = math.tanh(math.acosh(cosh_in) / 2)
    corners = [rc * cmath.exp(2j * math.pi * i / m) for i in range(m)]
    mids = [ri * cmath.exp(1j * math.pi * (2 * i + 1) / m) for i in range(m)]
    return corners, mids


def _key(z: complex) -> tuple[int, int]:
    return (round(z.real * 1e7), round(z.imag * 1e7))


def tile_patch(omap: OrientedMap, faces: FaceSet, radius: int):
    """Tiles within combinatorial distance ``radius`` of the seed tile (face 0).

    Returns a list of (Moebius matrix, face id, offset, depth) in BFS order.
    """
    if not 0 <= radius <= MAX_RADIUS:
        raise RenderError(f"radius must lie in 0..{MAX_RADIUS}")
    m = faces.face_length()
    if m is None:
        raise RenderError("faces must all have the same length")
    corners, mids = seed_polygon(m)
    g = omap.graph
    pos = np.empty(g.ndarts, dtype=np.int64)
    for f in faces.faces:
        pos[f] = np.arange(len(f))
    turns = [_half_turn(p) for p in mids]
    seed = np.eye(2, dtype=complex)
    tiles = [(seed, 0, 0, 0)]
    seen = {_key(0j)}
    corner_vertex: dict[tuple[int, int], int] = {}

    def record(M, f, o):
        D = faces.faces[f]
        for i, z in enumerate(corners):
            key = _key(_apply(M, z))
            v = int(g.src[D[(i + o) % m]])
            if corner_vertex.setdefault(key, v) != v:
                raise RenderError("tiling corners disagree with the rotation system")

    record(seed, 0, 0)
    frontier = [tiles[0]]
    for depth in range(1, radius + 1):
        nxt = []
        for M, f, o, _ in frontier:
            D = faces.faces[f]
            for j in range(m):
                N = _normalize(M @ turns[j])
                key = _key(_apply(N, 0j))
                if key in seen:
                    continue
                seen.add(key)
                r = int(g.rev[D[(j + o) % m]])
                f2 = int(faces.face_of[r])
                # the shared side is side j of the new tile, walked backwards
                o2 = (int(pos[r]) - j) % m
                t = (N, f2, o2, depth)
                record(N, f2, o2)
                tiles.append(t)
                nxt.append(t)
        frontier = nxt
    return tiles


def _geodesic_arc(p: complex, q: complex) -> Optional[tuple[float, complex]]:
    """Radius and centre of the circle orthogonal to the unit circle through p and q."""
    a = p if abs(p) > abs(q) else q
    inv = a / abs(a) ** 2
    # circumcentre of p, q, inv
    ax, ay, bx, by, cx, cy = p.real, p.imag, q.real, q.imag, inv.real, inv.imag
    d = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    if abs(d) < 1e-14:
        return None
    ux = ((ax * ax + ay * ay) * (by - cy) + (bx * bx + by * by) * (cy - ay) + (cx * cx + cy * cy) * (ay - by)) / d
    uy = ((ax * ax + ay * ay) * (cx - bx) + (bx * bx + by * by) * (ax - cx) + (cx * cx + cy * cy) * (bx - ax)) / d
    c = complex(ux, uy)
    return abs(p - c), c


def _screen(z: complex) -> tuple[float, float]:
    h = SIZE / 2
    return h + (h - 10) * z.real, h - (h - 10) * z.imag


def render_disk(omap: OrientedMap, faces: FaceSet, radius: int = 1, title: str = "") -> str:
    tiles = tile_patch(omap, faces, radius)
    m = faces.face_length()
    corners, _ = seed_polygon(m)
    h = SIZE / 2
    scale = h - 10
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
    ]
    if title:
        out.append(f"<title>{title}</title>")
    out.append(f'<circle cx="{h:.1f}" cy="{h:.1f}" r="{scale:.1f}" fill="none" stroke="black" stroke-width="1"/>')
    for M, f, o, depth in tiles:
        pts = [_apply(M, z) for z in corners]
        x0, y0 = _screen(pts[0])
        path = [f"M {x0:.4f} {y0:.4f}"]
        for i in range(m):
            p, q = pts[i], pts[(i + 1) % m]
            x, y = _screen(q)
            arc = _geodesic_arc(p, q)
            if arc is None:
                path.append(f"L {x:.4f} {y:.4f}")
                continue
            r, c = arc
            sp, sq, sc = _screen(p), _screen(q), _screen(c)
            cross = (sp[0] - sc[0]) * (sq[1] - sc[1]) - (sp[1] - sc[1]) * (sq[0] - sc[0])
            sweep = 1 if cross > 0 else 0
            path.append(f"A {r * scale:.4f} {r * scale:.4f} 0 0 {sweep} {x:.4f} {y:.4f}")
        shade = "#dde6f5" if depth % 2 == 0 else "#f5ecd9"
        out.append(f'<path d="{" ".join(path)} Z" fill="{shade}" stroke="#333" stroke-width="0.6" '
                   f'data-face="{f}" data-depth="{depth}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
