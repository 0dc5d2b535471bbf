"""Platonic graphs Pi_N, PSL(2, Z_N), the subgroup <X, Y, Z> of PSL(2, Z_8) and Farey checks."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

import numpy as np

from .graphs.cayley import cayley_from_tables
from .graphs.core import LabeledGraph, from_edges
from .graphs.isomorphism import is_isomorphic, verify_isomorphism

PSL_CAP = 64


def prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


# projective pairs and Pi_N -------------------------------------------------

@dataclass(frozen=True, order=True)
class ProjectivePair:
    lam: int
    mu: int

    @classmethod
    def canonical(cls, lam: int, mu: int, N: int) -> "ProjectivePair":
        a = (lam % N, mu % N)
        b = ((-lam) % N, (-mu) % N)
        if gcd(gcd(a[0], a[1]), N) != 1:
            raise ValueError(f"gcd({lam}, {mu}, {N}) != 1")
        return cls(*min(a, b))


def projective_pairs(N: int) -> list[ProjectivePair]:
    if N < 2:
        raise ValueError("N must be >= 2")
    seen = set()
    for lam in range(N):
        for mu in range(N):
            if gcd(gcd(lam, mu), N) == 1:
                seen.add(ProjectivePair.canonical(lam, mu, N))
    return sorted(seen)


def build_platonic(N: int) -> LabeledGraph:
    """Pi_N: [lam, mu] ~ [om, nu] iff lam nu - mu om = +-1 mod N."""
    verts = projective_pairs(N)
    P = np.array([(v.lam, v.mu) for v in verts], dtype=np.int64)
    det = (np.outer(P[:, 0], P[:, 1]) - np.outer(P[:, 1], P[:, 0])) % N
    adj = (det == 1) | (det == (N - 1) % N)
    iu, ju = np.nonzero(np.triu(adj, 1))
    g = from_edges(len(verts), list(zip(iu.tolist(), ju.tolist())), name=f"Pi_{N}")
    g.meta["vertices"] = [(v.lam, v.mu) for v in verts]
    return g


def platonic_count(N: int) -> int:
    """Vertex count N^2/2 prod (1 - 1/p^2) over primes p | N.

    For N = 2 the pairs +-(lam, mu) coincide and no halving takes place.
    """
    if N < 2:
        raise ValueError("N must be >= 2")
    v = Fraction(N * N)
    for p in prime_factors(N):
        v *= Fraction(p * p - 1, p * p)
    if N > 2:
        v /= 2
    if v.denominator != 1:
        raise ArithmeticError("vertex count is not an integer")
    return int(v)


# PSL(2, Z_N) ---------------------------------------------------------------

Mat = tuple[int, int, int, int]


def canon(M: Sequence[int], N: int) -> Mat:
    a = tuple(int(x) % N for x in M)
    b = tuple((-int(x)) % N for x in M)
    return min(a, b)  # type: ignore[return-value]


def mat_mul(A: Mat, B: Mat, N: int) -> Mat:
    a, b, c, d = A
    e, f, g, h = B
    return canon((a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h), N)


def mat_inv(A: Mat, N: int) -> Mat:
    a, b, c, d = A
    return canon((d, -b, -c, a), N)


class PSL2:
    """PSL(2, Z_N) by enumeration; elements are canonical 4-tuples."""

    def __init__(self, N: int):
        if not 2 <= N <= PSL_CAP:
            raise ValueError(f"N must lie in 2..{PSL_CAP}")
        self.N = N
        r = np.arange(N)
        b, c, d = np.meshgrid(r, r, r, indexing="ij")
        found = set()
        for a in range(N):
            ok = (a * d - b * c) % N == 1
            for bb, cc, dd in zip(b[ok].tolist(), c[ok].tolist(), d[ok].tolist()):
                found.add(canon((a, bb, cc, dd), N))
        self.elements: list[Mat] = sorted(found)
        self.index = {m: i for i, m in enumerate(self.elements)}

    @property
    def order(self) -> int:
        return len(self.elements)

    def mul(self, A: Mat, B: Mat) -> Mat:
        return mat_mul(A, B, self.N)

    def inv(self, A: Mat) -> Mat:
        return mat_inv(A, self.N)

    def __contains__(self, A) -> bool:
        return canon(A, self.N) in self.index


def psl2(N: int) -> PSL2:
    return PSL2(N)


def psl2_order_formula(N: int) -> int:
    v = Fraction(N ** 3)
    for p in prime_factors(N):
        v *= Fraction(p * p - 1, p * p)
    return int(v / (2 if N > 2 else 1))


def closure(gens: Sequence[Mat], N: int) -> list[Mat]:
    """Subgroup generated by gens, in breadth-first order from the identity."""
    e = canon((1, 0, 0, 1), N)
    seen = {e: 0}
    order = [e]
    i = 0
    while i < len(order):
        g = order[i]
        for s in gens:
            h = mat_mul(g, s, N)
            if h not in seen:
                seen[h] = len(order)
                order.append(h)
        i += 1
    return order


# <X, Y, Z> in PSL(2, Z_8) ---------------------------------------------------

X_INT = (-1, 0, 2, -1)
Y_INT = (-1, 2, -2, 3)
Z_INT = (1, 2, 0, 1)
S_INT = (0, -1, 1, 0)
T_INT = (1, 1, 0, 1)


@dataclass
class XYZSubgroup:
    elements: list
    order: int
    index: int
    normal: bool
    xyz_identity: bool
    relators_vanish: bool
    ambient_order: int
    cayley: LabeledGraph


def evaluate_word(word, images: Sequence[Mat], N: int) -> Mat:
    invs = [mat_inv(m, N) for m in images]
    return word.evaluate(list(images), invs, lambda a, b: mat_mul(a, b, N), canon((1, 0, 0, 1), N))


def xyz_subgroup(N: int = 8) -> XYZSubgroup:
    from .group.words import relators

    X, Y, Z = (canon(m, N) for m in (X_INT, Y_INT, Z_INT))
    e = canon((1, 0, 0, 1), N)
    ambient = closure([canon(S_INT, N), canon(T_INT, N)], N)
    full = psl2(N)
    if sorted(ambient) != full.elements:
        raise AssertionError("S and T do not generate PSL(2, Z_N)")
    H = closure([X, Y, Z], N)
    Hs = set(H)
    normal = all(mat_mul(mat_mul(mat_inv(g, N), h, N), g, N) in Hs
                 for g in (canon(S_INT, N), canon(T_INT, N)) for h in (X, Y, Z))
    xyz = mat_mul(mat_mul(X, Y, N), Z, N) == e
    rel = all(evaluate_word(r, [X, Y], N) == e for r in relators())
    idx = {h: i for i, h in enumerate(H)}
    gens = [X, mat_inv(X, N), Y, mat_inv(Y, N), Z, mat_inv(Z, N)]
    tables = [np.array([idx[mat_mul(h, s, N)] for h in H], dtype=np.int64) for s in gens]
    cay = cayley_from_tables(tables, ("X", "X^-1", "Y", "Y^-1", "Z", "Z^-1"), (1, 0, 3, 2, 5, 4),
                             name="Cay(<X,Y,Z>)")
    out = XYZSubgroup(H, len(H), len(ambient) // len(H), normal, xyz, rel, len(ambient), cay)
    if N == 8:
        for ok, what in ((out.order == 32, "order 32"), (out.index == 6, "index 6"), (normal, "normality"),
                         (xyz, "XYZ = I"), (rel, "relators vanish")):
            if not ok:
                raise AssertionError(f"<X, Y, Z> fails: {what}")
    return out


# Farey tessellation ----------------------------------------------------------

def reduced(p: int, q: int) -> tuple[int, int]:
    """Normalise p/q (q >= 0, 1/0 for infinity); raises on unreduced input."""
    if gcd(p, q) != 1:
        raise ValueError(f"{p}/{q} is not in lowest terms")
    if q < 0 or (q == 0 and p < 0):
        p, q = -p, -q
    return p, q


def farey_adjacent(a: tuple[int, int], b: tuple[int, int]) -> bool:
    (p, q), (r, s) = reduced(*a), reduced(*b)
    return abs(p * s - q * r) == 1


def mobius(M: Sequence[int], x: tuple[int, int]) -> tuple[int, int]:
    """Image of the extended rational p/q under z -> (a z + b)/(c z + d)."""
    a, b, c, d = M
    p, q = x
    num, den = a * p + b * q, c * p + d * q
    g = gcd(num, den)
    return reduced(num // g, den // g)


def _third_vertex(u, v, not_w):
    """The vertex of the other Farey triangle on edge uv."""
    (p, q), (r, s) = u, v
    cands = [reduced(*_div(p + r, q + s)), reduced(*_div(p - r, q - s))]
    cands = [c for c in cands if c != not_w]
    return cands[0]


def _div(a, b):
    g = gcd(a, b)
    return a // g, b // g


def farey_generator_check() -> dict:
    """Images of the triangle (0, 1, inf) under X^+-1, Y^+-1, Z^+-1.

    Each image must be a Farey triangle different from the original that
    shares an edge with one of the three triangles adjacent to it.
    """
    T = [(0, 1), (1, 1), (1, 0)]
    white = []
    for i in range(3):
        u, v, w = T[i], T[(i + 1) % 3], T[(i + 2) % 3]
        white.append(frozenset([u, v, _third_vertex(u, v, w)]))
    images = []
    ok = True
    for M in (X_INT, Y_INT, Z_INT):
        a, b, c, d = M
        for mat in (M, (d, -b, -c, a)):
            tri = [mobius(mat, x) for x in T]
            s = frozenset(tri)
            adj = all(farey_adjacent(tri[i], tri[(i + 1) % 3]) for i in range(3))
            shares = any(len(s & w) == 2 and s != w for w in white)
            ok &= adj and shares and s != frozenset(T)
            images.append(tuple(tri))
    ok &= len(set(frozenset(t) for t in images)) == 6
    return {"images": images, "ok": bool(ok)}


# duality -------------------------------------------------------------------

def duality_verdict(k: int, search_limit_k: int = 4) -> dict:
    """Is the dual of T_k a Platonic graph?  Explicit witness for k = 1, 2."""
    from . import pipeline
    from .surface.report import n_formula

    pcp = pipeline.group(k)
    D = pipeline.tk_dual(k)
    fs = pipeline.faces(k)
    flen = fs.face_length()
    if flen is None:
        raise ValueError("faces of T_k do not all have the same length")
    N = flen  # degree of every dual vertex
    n = N.bit_length() - 2
    cert = {
        "k": k, "N": N, "n_k": n, "N_k": pcp.ngens, "N_k_formula": n_formula(k),
        "dual_vertices": D.nverts, "platonic_vertices": platonic_count(N),
        "3n_k": 3 * n, "N_k+1": pcp.ngens + 1,
    }
    arithmetic_ok = 3 * n == pcp.ngens + 1 and D.nverts == cert["platonic_vertices"]
    cert["arithmetic_allows"] = bool(arithmetic_ok)
    witness = None
    searched = False
    if k <= max(2, search_limit_k) and D.nverts <= 5000:
        P = build_platonic(N)
        searched = True
        if D.is_simple():
            witness = is_isomorphic(D, P)
        if witness is not None and not verify_isomorphism(D, P, witness):
            raise AssertionError("isomorphism witness failed verification")
    return {
        "isomorphic": witness is not None,
        "certificate": cert,
        "searched": searched,
        "witness": witness,
    }
