"""The 2-quotient algorithm: G / P_k(G) from a finite presentation.

Class 1 is the mod-2 abelianisation.  Each further step builds the 2-covering
group of the current quotient by attaching a central tail to every relation
that is not a definition, enforces consistency, kills the values of the
defining relators, and keeps a basis of the surviving tails as the next
weight layer.
"""

from __future__ import annotations

import logging

from . import gf2
from .pcp import Collector, InconsistentPresentation, PcPresentation
from .words import Presentation

log = logging.getLogger(__name__)

DEFAULT_MAX_GENS = 64


class ClassLimitExceeded(RuntimeError):
    pass


def _class_one(pres: Presentation) -> PcPresentation:
    rows = []
    for r in pres.relators:
        sums = r.exponent_sums(pres.ngens)
        rows.append(sum(1 << g for g, s in enumerate(sums) if s % 2))
    red, piv = gf2.rref(rows)
    free = [g for g in range(pres.ngens) if g not in piv]
    index = {g: i for i, g in enumerate(free)}
    images = []
    for g in range(pres.ngens):
        if g in index:
            images.append(1 << index[g])
        else:
            row = red[piv.index(g)]
            images.append(sum(1 << index[f] for f in free if row >> f & 1))
    n = len(free)
    return PcPresentation(
        nclass=1,
        weights=(1,) * n,
        power=(0,) * n,
        comm=tuple((0,) * j for j in range(n)),
        images=tuple(images),
        definitions=tuple(("image", g) for g in free),
    )


def _next_class(pres: Presentation, pcp: PcPresentation, max_gens: int) -> PcPresentation:
    n = pcp.ngens
    c = pcp.nclass
    defined = set(pcp.definitions)
    defining_images = {d[1] for d in pcp.definitions if d[0] == "image"}

    # tail variables, least preferred as new generators first (gf2.rref
    # eliminates low columns first)
    tails: list[tuple] = [("image", g) for g in range(pres.ngens) if g not in defining_images]
    comms = [("comm", j, i) for j in range(n) for i in range(j) if ("comm", j, i) not in defined]
    comms.sort(key=lambda d: (-(pcp.weights[d[1]] + pcp.weights[d[2]]), -d[1], -d[2]))
    powers = [("power", i) for i in range(n) if ("power", i) not in defined]
    powers.sort(key=lambda d: -d[1])
    tails += comms + powers
    var = {d: 1 << v for v, d in enumerate(tails)}

    power_tail = [var.get(("power", i), 0) for i in range(n)]
    comm_tail = [[var.get(("comm", j, i), 0) for i in range(j)] for j in range(n)]
    col = Collector(n, pcp.power, pcp.comm, power_tail, comm_tail)

    relations: list[int] = []
    for label, lhs, rhs in col.consistency_pairs():
        if lhs[0] != rhs[0]:
            raise InconsistentPresentation(f"class {c} presentation fails test word {label}")
        if lhs[1] != rhs[1]:
            relations.append(lhs[1] ^ rhs[1])

    images = [(pcp.images[g], var.get(("image", g), 0)) for g in range(pres.ngens)]
    inverses = [col.inverse(e, t) for e, t in images]

    def mul(x, y):
        e, t = col.mul_word(x[0], x[1], y[0])
        return e, t ^ y[1]

    for r in pres.relators:
        e, t = r.evaluate(images, inverses, mul, (0, 0))
        if e:
            raise InconsistentPresentation(f"relator {r} does not vanish in the class {c} quotient")
        if t:
            relations.append(t)

    red, piv = gf2.rref(relations)
    pivset = set(piv)
    free = [v for v in range(len(tails)) if v not in pivset]
    m = len(free)
    if n + m > max_gens:
        raise ClassLimitExceeded(f"class {c + 1} needs {n + m} pc-generators (limit {max_gens})")
    newbit = {v: 1 << (n + idx) for idx, v in enumerate(free)}

    def value(tailvec: int) -> int:
        """Express a tail combination in the new generators."""
        out = 0
        for v in range(len(tails)):
            if not tailvec >> v & 1:
                continue
            if v in newbit:
                out ^= newbit[v]
            else:
                row = red[piv.index(v)]
                for f in free:
                    if row >> f & 1:
                        out ^= newbit[f]
        return out

    N = n + m
    power = [pcp.power[i] | value(power_tail[i]) for i in range(n)] + [0] * m
    comm = [tuple(pcp.comm[j][i] | value(comm_tail[j][i]) for i in range(j)) for j in range(n)]
    comm += [(0,) * j for j in range(n, N)]
    new_images = tuple(e | value(t) for e, t in images)
    definitions = pcp.definitions + tuple(tails[v] for v in free)
    out = PcPresentation(
        nclass=c + 1,
        weights=pcp.weights + (c + 1,) * m,
        power=tuple(power),
        comm=tuple(comm),
        images=new_images,
        definitions=definitions,
    )
    log.debug("class %d: %d tails, %d relations, layer size %d", c + 1, len(tails), len(relations), m)
    return out


def pquotient(pres: Presentation, nclass: int, max_gens: int = DEFAULT_MAX_GENS,
              verify: bool = True) -> PcPresentation:
    """Consistent pc-presentation of G / P_k(G) for p = 2.

    With ``verify`` the result is re-checked: all consistency test words, the
    weight condition, and vanishing of every relator.
    """
    if nclass < 1:
        raise ValueError("class must be >= 1")
    if pres.ngens < 1:
        raise ValueError("presentation needs at least one generator")
    pcp = _class_one(pres)
    for _ in range(nclass - 1):
        pcp = _next_class(pres, pcp, max_gens)
    if verify:
        verify_pcp(pres, pcp)
    return pcp


def pquotient_tower(pres: Presentation, kmax: int, max_gens: int = DEFAULT_MAX_GENS,
                    verify: bool = True) -> list[PcPresentation]:
    """[G_1, ..., G_kmax], each step reusing the previous one."""
    out = [_class_one(pres)]
    for _ in range(kmax - 1):
        out.append(_next_class(pres, out[-1], max_gens))
    if verify:
        for pcp in out:
            verify_pcp(pres, pcp)
    return out


def verify_pcp(pres: Presentation, pcp: PcPresentation) -> None:
    from .pcp import evaluate

    pcp.check_weights()
    pcp.check_consistent()
    for r in pres.relators:
        if evaluate(pcp, r) != 0:
            raise InconsistentPresentation(f"relator {r} is not trivial in G_{pcp.nclass}")
