"""Edge Cheeger constant h(G) = min |dS| / |S| over 0 < |S| <= |V|/2."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import LabeledGraph

EXACT_LIMIT = 20


@dataclass(frozen=True)
class CheegerResult:
    exact: Optional[float]
    lower_bound: Optional[float]
    witness: Optional[tuple[int, ...]] = None


def cheeger_exact(g: LabeledGraph) -> tuple[float, tuple[int, ...]]:
    """Exhaustive minimum over all vertex subsets of size <= n/2.

    Vertex 0 is excluded from S when |S| = n/2 would otherwise count each
    balanced cut twice; that only halves the work, the minimum is unchanged.
    """
    n = g.nverts
    if n > EXACT_LIMIT:
        raise ValueError(f"exhaustive Cheeger needs <= {EXACT_LIMIT} vertices, got {n}")
    if n < 2:
        raise ValueError("Cheeger constant needs at least two vertices")
    masks = np.arange(1, 1 << n, dtype=np.int64)
    bits = (masks[:, None] >> np.arange(n)) & 1
    size = bits.sum(axis=1)
    ok = size <= n // 2
    masks, bits, size = masks[ok], bits[ok], size[ok]
    e = g.edges()
    boundary = (bits[:, e[:, 0]] != bits[:, e[:, 1]]).sum(axis=1)
    ratio = boundary / size
    i = int(np.argmin(ratio))
    return float(ratio[i]), tuple(int(v) for v in np.flatnonzero(bits[i]))


def cheeger(g: LabeledGraph, sigma: Optional[float] = None) -> CheegerResult:
    """Exact value for small graphs; the bound sigma/2 whenever sigma is given."""
    if not g.is_connected():
        raise ValueError("Cheeger constant is only meaningful for connected graphs")
    lb = None if sigma is None else sigma / 2.0
    if g.nverts <= EXACT_LIMIT:
        h, s = cheeger_exact(g)
        return CheegerResult(h, lb, s)
    return CheegerResult(None, lb)


def cheeger_bound_from_C(C: float) -> float:
    """h(T_k) >= (3 - sqrt(C + 3)) / 2 when every nontrivial eigenvalue of X_k is <= C."""
    if not -3 <= C < 6:
        raise ValueError("C must lie in [-3, 6) for a 6-regular Cayley graph")
    return (3 - math.sqrt(C + 3)) / 2
