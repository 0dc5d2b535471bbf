"""Row reduction over GF(2) with rows packed into Python ints."""

from __future__ import annotations


def rref(rows: list[int]) -> tuple[list[int], list[int]]:
    """Reduced row echelon form; the pivot of a row is its lowest set bit.

    Returns ``(rows, pivots)`` with ``rows[i]`` having pivot column ``pivots[i]``.
    Low columns are eliminated first, so high columns tend to stay free.
    """
    basis: list[int] = []
    pivots: list[int] = []
    for r in rows:
        for b, p in zip(basis, pivots):
            if r >> p & 1:
                r ^= b
        if not r:
            continue
        p = (r & -r).bit_length() - 1
        for i, b in enumerate(basis):
            if b >> p & 1:
                basis[i] = b ^ r
        basis.append(r)
        pivots.append(p)
    order = sorted(range(len(basis)), key=pivots.__getitem__)
    return [basis[i] for i in order], [pivots[i] for i in order]


def rank(rows: list[int]) -> int:
    return len(rref(rows)[0])


def nullspace(rows: list[int], ncols: int) -> list[int]:
    """Basis of {x : r.x = 0 for all rows r} as packed ints."""
    red, piv = rref(rows)
    pivset = set(piv)
    out = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = 1 << f
        for r, p in zip(red, piv):
            if r >> f & 1:
                v |= 1 << p
        out.append(v)
    return out
