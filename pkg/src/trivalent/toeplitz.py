"""Period-3 upper unitriangular block-Toeplitz matrices over F_2.

A matrix ``M_l(a_{l+1}, ..., a_k)`` has identity blocks on the diagonal and
its j-th upper block diagonal is periodic: the block in block row r is slot
``r mod 3`` of the triple ``a_j``.  Only diagonals 1..k are kept, which is
arithmetic modulo the subgroup of matrices whose first k diagonals vanish.

Bit layout: a 3x3 F_2 matrix is 9 bits, entry (i, c) at bit ``3 i + c``.  A
BlockTriple packs slots 1, 2, 3 at bits 0, 9, 18 (27 bits).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

MASK9 = (1 << 9) - 1
IDENTITY3 = 0b100010001


def mat3_mul(a: int, b: int) -> int:
    """Product of two 9-bit 3x3 matrices over F_2."""
    out = 0
    for i in range(3):
        row = 0
        for c in range(3):
            if a >> (3 * i + c) & 1:
                row ^= (b >> (3 * c)) & 7
        out |= row << (3 * i)
    return out


def slot(t: int, s: int) -> int:
    """Slot s (0, 1, 2) of a 27-bit block triple."""
    return (t >> (9 * s)) & MASK9


def triple(slots: Sequence[int]) -> int:
    return slots[0] | slots[1] << 9 | slots[2] << 18


def triple_from_rows(rows: Sequence[Sequence[int]]) -> int:
    """Pack a 3x9 0/1 matrix (three 3x3 blocks side by side) into 27 bits."""
    if len(rows) != 3 or any(len(r) != 9 for r in rows):
        raise ValueError("need a 3x9 matrix")
    t = 0
    for i, r in enumerate(rows):
        for col, v in enumerate(r):
            if v not in (0, 1):
                raise ValueError("entries must be 0 or 1")
            s, c = divmod(col, 3)
            t |= v << (9 * s + 3 * i + c)
    return t


def triple_to_rows(t: int) -> list[list[int]]:
    return [[(t >> (9 * (col // 3) + 3 * i + col % 3)) & 1 for col in range(9)] for i in range(3)]


@dataclass(frozen=True)
class PeriodicMatrix:
    """Diagonals a_1..a_k as 27-bit ints; ``diagonals[j-1]`` is a_j."""

    k: int
    diagonals: tuple[int, ...]

    def __post_init__(self):
        if len(self.diagonals) != self.k:
            raise ValueError(f"expected {self.k} diagonals, got {len(self.diagonals)}")
        if any(not 0 <= d < 1 << 27 for d in self.diagonals):
            raise ValueError("diagonal entries must be 27-bit")

    @classmethod
    def identity(cls, k: int) -> "PeriodicMatrix":
        return cls(k, (0,) * k)

    @classmethod
    def make(cls, k: int, diags: Iterable[int], depth: int = 0) -> "PeriodicMatrix":
        """M_depth(a_{depth+1}, ...), padding with zeros and truncating at k."""
        d = [0] * depth + list(diags)
        d = (d + [0] * k)[:k]
        return cls(k, tuple(d))

    def leading(self) -> int:
        l = ptm_depth(self)
        return self.diagonals[l] if l < self.k else 0


class TruncationMismatch(ValueError):
    pass


def ptm_multiply(x: PeriodicMatrix, y: PeriodicMatrix) -> PeriodicMatrix:
    """c_{j,s} = sum_{p+q=j} a_{p,s} b_{q,(s+p) mod 3} (0-based slots, a_0 = b_0 = I)."""
    if x.k != y.k:
        raise TruncationMismatch(f"truncations differ: {x.k} vs {y.k}")
    k = x.k
    A = [triple([IDENTITY3] * 3)] + list(x.diagonals)
    B = [triple([IDENTITY3] * 3)] + list(y.diagonals)
    out = []
    for j in range(1, k + 1):
        c = [0, 0, 0]
        for p in range(j + 1):
            a, b = A[p], B[j - p]
            if not a or not b:
                continue
            for s in range(3):
                c[s] ^= mat3_mul(slot(a, s), slot(b, (s + p) % 3))
        out.append(triple(c))
    return PeriodicMatrix(k, tuple(out))


def ptm_power(x: PeriodicMatrix, e: int) -> PeriodicMatrix:
    """x^e for e a power of two, by repeated squaring."""
    if e < 1 or e & (e - 1):
        raise ValueError("exponent must be a power of 2")
    while e > 1:
        x = ptm_multiply(x, x)
        e >>= 1
    return x


def ptm_depth(x: PeriodicMatrix) -> int:
    """Number of leading zero diagonals; k when all stored diagonals vanish."""
    for j, d in enumerate(x.diagonals):
        if d:
            return j
    return x.k


# brute-force oracle ------------------------------------------------------

def instantiate(x: PeriodicMatrix, blocks: int | None = None) -> np.ndarray:
    """Top-left window of ``blocks`` block rows (default k + 3) as a 0/1 matrix."""
    nb = x.k + 3 if blocks is None else blocks
    n = 3 * nb
    M = np.eye(n, dtype=np.int64)
    for j, t in enumerate(x.diagonals, start=1):
        for r in range(nb - j):
            blk = slot(t, r % 3)
            for i in range(3):
                for c in range(3):
                    M[3 * r + i, 3 * (r + j) + c] = blk >> (3 * i + c) & 1
    return M


def read_back(M: np.ndarray, k: int) -> PeriodicMatrix:
    """Inverse of :func:`instantiate`; raises if the periodic pattern is broken."""
    nb = M.shape[0] // 3
    if np.any(np.tril(M, -1)) or np.any(np.diag(M) != 1):
        raise ValueError("not upper unitriangular")
    diags = []
    for j in range(1, k + 1):
        slots = []
        for r in range(nb - j):
            blk = 0
            for i in range(3):
                for c in range(3):
                    blk |= int(M[3 * r + i, 3 * (r + j) + c]) << (3 * i + c)
            if r < 3:
                slots.append(blk)
            elif blk != slots[r % 3]:
                raise ValueError(f"diagonal {j} is not period 3")
        diags.append(triple(slots))
    return PeriodicMatrix(k, tuple(diags))


def oracle_multiply(x: PeriodicMatrix, y: PeriodicMatrix) -> PeriodicMatrix:
    """Multiply instantiated matrices over F_2 and read the product back."""
    if x.k != y.k:
        raise TruncationMismatch(f"truncations differ: {x.k} vs {y.k}")
    P = (instantiate(x) @ instantiate(y)) % 2
    return read_back(P, x.k)


# the printed constants and their consequences ---------------------------

_PRINTED = {
    "alpha0": ((0, 0, 0, 0, 0, 0, 0, 0, 0), (0, 0, 1, 0, 0, 1, 0, 0, 1), (0, 1, 1, 0, 1, 1, 0, 1, 1)),
    "alpha1": ((0, 0, 0, 0, 1, 1, 0, 1, 0), (0, 1, 0, 1, 0, 0, 0, 0, 1), (1, 1, 1, 0, 0, 0, 0, 1, 0)),
    "alpha3": ((0, 0, 0, 0, 1, 1, 0, 1, 0), (0, 1, 1, 1, 0, 1, 0, 0, 0), (1, 0, 0, 0, 1, 1, 0, 0, 1)),
    "beta0": ((0, 0, 0, 0, 0, 0, 0, 0, 0), (0, 1, 1, 0, 1, 1, 0, 1, 1), (0, 1, 0, 0, 1, 0, 0, 1, 0)),
    "beta1": ((0, 0, 0, 0, 1, 1, 0, 1, 0), (0, 1, 0, 1, 0, 0, 0, 0, 1), (1, 1, 1, 0, 0, 0, 0, 1, 0)),
    "beta3": ((0, 0, 0, 0, 0, 1, 0, 1, 1), (1, 1, 0, 0, 1, 1, 0, 0, 0), (0, 1, 1, 0, 0, 1, 1, 0, 0)),
}
GENERATORS = ("x0", "x1", "x3")


def alpha_beta() -> dict[str, int]:
    """alpha_0, alpha_1, alpha_3, beta_0, beta_1, beta_3 exactly as printed (27-bit triples)."""
    return {name: triple_from_rows(rows) for name, rows in _PRINTED.items()}


def squared_leading(a: int, depth: int) -> int:
    """Leading diagonal (at depth 2 depth + 1) of the square of M_depth(a, ...)."""
    k = 2 * depth + 2
    x = PeriodicMatrix.make(k, [a], depth)
    return ptm_multiply(x, x).diagonals[k - 1]


def leading_chain(a: int, levels: int) -> list[tuple[int, int]]:
    """(depth, leading diagonal) of x^(2^l), l = 0..levels-1, for x = M_0(a, 0, ...).

    Over F_2, (I + N)^(2^l) = I + N^(2^l), whose leading diagonal only
    depends on the leading diagonal of N, so later diagonals of x are
    irrelevant here.
    """
    k = 2 ** levels
    x = PeriodicMatrix.make(k, [a])
    out = []
    for _ in range(levels):
        d = ptm_depth(x)
        out.append((d, x.diagonals[d] if d < k else 0))
        x = ptm_multiply(x, x)
    return out


def derived_beta() -> dict[str, int]:
    """Leading diagonals of x_i^2 computed from the printed alpha_i."""
    ab = alpha_beta()
    return {f"beta{i}": squared_leading(ab[f"alpha{i}"], 0) for i in (0, 1, 3)}


def lemma_check(diagonals: Sequence[int], alpha: int, beta: int, levels: int) -> list[dict]:
    """Depth and leading diagonal of x^(2^l) against M_{2^l - 1}(alpha or beta, ...)."""
    k = max(len(diagonals), 2 ** levels)
    x = PeriodicMatrix.make(k, diagonals)
    rows = []
    for l in range(levels):
        p = ptm_power(x, 2 ** l)
        d = ptm_depth(p)
        lead = p.diagonals[d] if d < k else 0
        want = alpha if l % 2 == 0 else beta
        rows.append({"l": l, "depth": d, "expected_depth": 2 ** l - 1, "leading_ok": lead == want,
                     "depth_ok": d == 2 ** l - 1})
    return rows


def order_mod(diagonals: Sequence[int], k: int) -> int:
    """Order of M_0(diagonals) modulo the matrices with k vanishing diagonals."""
    x = PeriodicMatrix.make(k, diagonals)
    e = 1
    while ptm_depth(x) < k:
        x = ptm_multiply(x, x)
        e *= 2
    return e


def load_generator_data(text: str) -> dict[str, list[int]]:
    """Parse generator JSON: one object or a list of {"generator", "diagonals": [hex, ...]}."""
    doc = json.loads(text)
    items = doc if isinstance(doc, list) else [doc]
    out = {}
    for it in items:
        g = it["generator"]
        if g not in GENERATORS:
            raise ValueError(f"unknown generator {g!r}")
        out[g] = [int(h, 16) for h in it["diagonals"]]
        if any(not 0 <= d < 1 << 27 for d in out[g]):
            raise ValueError("diagonals must be 27-bit values")
    return out


def dump_generator_data(data: dict[str, Sequence[int]]) -> str:
    return json.dumps([{"generator": g, "diagonals": [format(d, "07x") for d in ds]} for g, ds in data.items()],
                      indent=1)
