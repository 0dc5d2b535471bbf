"""Power-commutator presentations of finite 2-groups and collection.

Elements are Python ints: bit ``i`` is the exponent (0 or 1) of pc-generator
``a_i``.  The normal form ``a_0^{e_0} a_1^{e_1} ... a_{N-1}^{e_{N-1}}`` is unique
for a consistent presentation, so element equality is int equality.

Relations are stored as

    a_i^2       = power[i]
    [a_j, a_i]  = comm[j][i]      (j > i, [a, b] = a^-1 b^-1 a b)

with right-hand sides in generators of strictly larger weight (hence larger
index).  Central "tails" used while building covering groups are carried as a
second int that multiplies by XOR.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence

from .words import Word

FORMAT_VERSION = 1


class InconsistentPresentation(RuntimeError):
    """Collection produced two different normal forms for the same element."""


class Collector:
    """Collection from the left for a presentation with relative orders 2."""

    def __init__(self, ngens, power, comm, power_tail=None, comm_tail=None):
        self.ngens = ngens
        self.power = list(power)
        self.power_tail = list(power_tail) if power_tail is not None else [0] * ngens
        # conj[i][j] (j > i): a_j^{a_i} = a_j [a_j, a_i], as (normal word, tail)
        self.conj: list[dict[int, tuple[int, int]]] = []
        for i in range(ngens):
            row = {}
            for j in range(i + 1, ngens):
                tail = comm_tail[j][i] if comm_tail is not None else 0
                row[j] = ((1 << j) | comm[j][i], tail)
            self.conj.append(row)

    def mul_word(self, e: int, t: int, w: int) -> tuple[int, int]:
        """(e, t) times the normal word ``w`` (letters in increasing order)."""
        while w:
            low = w & -w
            if e < low:
                return e | w, t
            w ^= low
            e, t = self.mul_gen(e, t, low.bit_length() - 1)
        return e, t

    def mul_gen(self, e: int, t: int, i: int) -> tuple[int, int]:
        bit = 1 << i
        if e < bit:
            return e | bit, t
        high = (e >> (i + 1)) << (i + 1)
        e ^= high
        if e & bit:
            e ^= bit
            t ^= self.power_tail[i]
            # e now lies below a_i, the power word above it
            e |= self.power[i]
        else:
            e |= bit
        conj = self.conj[i]
        while high:
            low = high & -high
            high ^= low
            w, tt = conj[low.bit_length() - 1]
            t ^= tt
            e, t = self.mul_word(e, t, w)
        return e, t

    def inverse(self, e: int, t: int = 0) -> tuple[int, int]:
        """Inverse of (e, t): right-multiply away the lowest generator until trivial."""
        r, rt = e, t
        h = 0
        while r:
            low = r & -r
            h |= low
            r, rt = self.mul_gen(r, rt, low.bit_length() - 1)
        # (e, t) * h = rt with rt central of order 2
        return h, rt

    def consistency_pairs(self) -> Iterator[tuple[tuple, tuple[int, int], tuple[int, int]]]:
        """Test words for relative order 2; yields (label, lhs, rhs)."""
        n = self.ngens
        one = lambda i: (1 << i, 0)  # noqa: E731

        def prod(x, y):
            e, t = self.mul_word(x[0], x[1], y[0])
            return e, t ^ y[1]

        def gen_times(i, x):
            return prod(one(i), x)

        for k in range(n):
            for j in range(k):
                for i in range(j):
                    # (a_k a_j) a_i = a_k (a_j a_i)
                    lhs = self.mul_gen(*self.mul_gen(1 << k, 0, j), i)
                    rhs = gen_times(k, self.mul_gen(1 << j, 0, i))
                    yield ("kji", k, j, i), lhs, rhs
        for j in range(n):
            sq = (self.power[j], self.power_tail[j])
            for i in range(j):
                # (a_j a_j) a_i = a_j (a_j a_i)
                lhs = self.mul_gen(sq[0], sq[1], i)
                rhs = gen_times(j, self.mul_gen(1 << j, 0, i))
                yield ("jji", j, i), lhs, rhs
                # (a_j a_i) a_i = a_j (a_i a_i)
                lhs = self.mul_gen(*self.mul_gen(1 << j, 0, i), i)
                rhs = gen_times(j, (self.power[i], self.power_tail[i]))
                yield ("jii", j, i), lhs, rhs
            # (a_j a_j) a_j = a_j (a_j a_j)
            lhs = self.mul_gen(sq[0], sq[1], j)
            rhs = gen_times(j, sq)
            yield ("jjj", j), lhs, rhs


@dataclass(frozen=True)
class PcPresentation:
    """Consistent weighted pc-presentation of G / P_k(G) for p = 2."""

    nclass: int
    weights: tuple[int, ...]
    power: tuple[int, ...]
    comm: tuple[tuple[int, ...], ...]
    images: tuple[int, ...]
    definitions: tuple[tuple, ...] = field(compare=False)

    @property
    def ngens(self) -> int:
        return len(self.weights)

    @property
    def order(self) -> int:
        return 1 << self.ngens

    def layer_sizes(self) -> list[int]:
        return [self.weights.count(w) for w in range(1, self.nclass + 1)]

    @cached_property
    def collector(self) -> Collector:
        return Collector(self.ngens, self.power, self.comm)

    def check_consistent(self) -> None:
        for label, lhs, rhs in self.collector.consistency_pairs():
            if lhs != rhs:
                raise InconsistentPresentation(f"test word {label}: {lhs} != {rhs}")

    def check_weights(self) -> None:
        w = self.weights
        for i, rhs in enumerate(self.power):
            if any(w[b] <= w[i] for b in _bits(rhs)):
                raise InconsistentPresentation(f"power relation of a_{i} is not weight-increasing")
        for j in range(self.ngens):
            for i in range(j):
                if any(w[b] <= max(w[i], w[j]) for b in _bits(self.comm[j][i])):
                    raise InconsistentPresentation(f"commutator [a_{j}, a_{i}] is not weight-increasing")

    # serialization -----------------------------------------------------

    def to_json(self) -> str:
        width = max(1, (self.ngens + 3) // 4)
        hx = lambda v: format(v, f"0{width}x")  # noqa: E731
        doc = {
            "format": "trivalent.pcp",
            "version": FORMAT_VERSION,
            "p": 2,
            "class": self.nclass,
            "ngens": self.ngens,
            "weights": list(self.weights),
            "power": [hx(v) for v in self.power],
            "comm": [[hx(v) for v in row] for row in self.comm],
            "images": [hx(v) for v in self.images],
            "definitions": [list(d) for d in self.definitions],
        }
        return json.dumps(doc, indent=1)

    @classmethod
    def from_json(cls, text: str) -> "PcPresentation":
        doc = json.loads(text)
        if doc.get("format") != "trivalent.pcp" or doc.get("version") != FORMAT_VERSION:
            raise ValueError("not a version-1 trivalent.pcp document")
        return cls(
            nclass=doc["class"],
            weights=tuple(doc["weights"]),
            power=tuple(int(v, 16) for v in doc["power"]),
            comm=tuple(tuple(int(v, 16) for v in row) for row in doc["comm"]),
            images=tuple(int(v, 16) for v in doc["images"]),
            definitions=tuple(tuple(d) for d in doc["definitions"]),
        )


def _bits(v: int) -> Iterator[int]:
    while v:
        low = v & -v
        yield low.bit_length() - 1
        v ^= low


def exponent_vector(pcp: PcPresentation, g: int) -> list[int]:
    return [(g >> i) & 1 for i in range(pcp.ngens)]


def multiply(pcp: PcPresentation, a: int, b: int) -> int:
    return pcp.collector.mul_word(a, 0, b)[0]


def inverse(pcp: PcPresentation, a: int) -> int:
    return pcp.collector.inverse(a)[0]


def power(pcp: PcPresentation, g: int, m: int) -> int:
    if m < 0:
        g, m = inverse(pcp, g), -m
    acc, base = 0, g
    while m:
        if m & 1:
            acc = multiply(pcp, acc, base)
        base = multiply(pcp, base, base)
        m >>= 1
    return acc


def element_order(pcp: PcPresentation, g: int) -> int:
    """Least 2^l with g^(2^l) = e, by repeated squaring."""
    m = 1
    while g:
        g = multiply(pcp, g, g)
        m *= 2
    return m


def evaluate(pcp: PcPresentation, word: Word) -> int:
    col = pcp.collector
    invs = [col.inverse(x)[0] for x in pcp.images]
    return word.evaluate(pcp.images, invs, lambda a, b: col.mul_word(a, 0, b)[0], 0)


def x3(pcp: PcPresentation) -> int:
    """x3 = x1^-1 x0^-1."""
    return multiply(pcp, inverse(pcp, pcp.images[1]), inverse(pcp, pcp.images[0]))


GENERATOR_LABELS = ("x0", "x0^-1", "x1", "x1^-1", "x3", "x3^-1")


def labelled_generators(pcp: PcPresentation) -> list[int]:
    """x0, x0^-1, x1, x1^-1, x3, x3^-1 in that order (repeats kept)."""
    x0, x1 = pcp.images[0], pcp.images[1]
    z = x3(pcp)
    return [x0, inverse(pcp, x0), x1, inverse(pcp, x1), z, inverse(pcp, z)]


def generator_set(pcp: PcPresentation) -> list[int]:
    """S = {x0^+-1, x1^+-1, x3^+-1}, collapsing elements that coincide."""
    out: list[int] = []
    for g in labelled_generators(pcp):
        if g not in out:
            out.append(g)
    return out


class EnumerationCapExceeded(RuntimeError):
    pass


DEFAULT_ENUM_CAP = 1 << 16


def enumerate_elements(pcp: PcPresentation, cap: int = DEFAULT_ENUM_CAP) -> range:
    """All elements; index = int value of the exponent vector (bit i <-> a_i)."""
    if pcp.order > cap:
        raise EnumerationCapExceeded(f"|G| = {pcp.order} exceeds cap {cap}")
    return range(pcp.order)


def project(pcp: PcPresentation) -> tuple[PcPresentation, list[int]]:
    """Drop the top weight layer: G_{k+1} -> G_k.

    Returns the class-k presentation and the images of the pc-generators
    (0 for the killed ones).  On elements the map is a bit mask.
    """
    if pcp.nclass < 2:
        raise ValueError("projection needs class >= 2")
    keep = sum(1 for w in pcp.weights if w < pcp.nclass)
    mask = (1 << keep) - 1
    low = PcPresentation(
        nclass=pcp.nclass - 1,
        weights=pcp.weights[:keep],
        power=tuple(v & mask for v in pcp.power[:keep]),
        comm=tuple(tuple(v & mask for v in row) for row in pcp.comm[:keep]),
        images=tuple(v & mask for v in pcp.images),
        definitions=pcp.definitions[:keep],
    )
    gen_map = [(1 << i) if i < keep else 0 for i in range(pcp.ngens)]
    return low, gen_map


def projection_mask(big: PcPresentation, small: PcPresentation) -> int:
    if big.weights[: small.ngens] != small.weights:
        raise ValueError("presentations are not a tower")
    return (1 << small.ngens) - 1


def right_multiplication_tables(pcp: PcPresentation, gens: Sequence[int]):
    """Arrays R[s][g] = g * gens[s] for all g, as numpy int arrays.

    The top weight layer is central, so only elements supported below it are
    collected and the layer is XORed back in.
    """
    import numpy as np

    enumerate_elements(pcp, cap=max(DEFAULT_ENUM_CAP, pcp.order))
    col = pcp.collector
    top = sum(1 for w in pcp.weights if w < pcp.nclass) if pcp.nclass > 1 else 0
    nlow = 1 << top
    allg = np.arange(pcp.order, dtype=np.int64)
    out = []
    for s in gens:
        base = np.fromiter((col.mul_word(h, 0, s)[0] for h in range(nlow)), dtype=np.int64, count=nlow)
        out.append(base[allg & (nlow - 1)] ^ (allg & ~(nlow - 1)))
    return out
