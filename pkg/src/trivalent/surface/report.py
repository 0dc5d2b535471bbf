"""Per-level surface reports: counts, genus two ways, non-flatness, CSV/JSON output."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Optional

from .. import pipeline
from ..group import pcp as P
from .geometry import NotHyperbolic, cusp_length_ok, hyperbolic_face_data
from .maps import tag_conventions


def n_formula(k: int) -> int:
    """Predicted number of pc-generators of G_k."""
    return 8 * (k // 3) + 3 * (k % 3) - 1


def order_exponent(k: int) -> int:
    """Predicted log2 of the generator orders in G_k."""
    return int(math.floor(math.log2(k))) + 1


def closed_form_counts(N: int, n: int) -> dict:
    return {
        "V": 2 ** (N + 1),
        "E": 3 * 2 ** N,
        "F": 3 * 2 ** (N - n),
        "face_len": 2 ** (n + 1),
        "genus": Fraction(1) + Fraction(2 ** N, 2 ** (n + 1)) * (2 ** n - 3),
    }


def hurwitz_genus(order: int, gen_orders) -> Fraction:
    """1 + (1 - mu)/2 |G| with mu the sum of reciprocal orders of x0, x1, x3."""
    mu = sum(Fraction(1, o) for o in gen_orders)
    return 1 + (1 - mu) / 2 * order


@dataclass
class SurfaceReport:
    k: int
    N: int
    n: int
    V: int
    E: int
    F: int
    face_len: Optional[int]
    genus: int
    genus_hurwitz: int
    mu: str
    ratio: str
    ratio_float: float
    isometry_lower: int
    hat_genus: int
    cusps: int
    cusp_length_ok: bool
    convention: str
    mirror_lengths_equal: bool
    face_data: Optional[dict] = None

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=1, sort_keys=True)


CSV_COLUMNS = ("k", "N_k", "n_k", "V", "E", "F", "face_len", "genus", "genus_hurwitz", "ratio", "hat_genus")


def surface_report(k: int) -> SurfaceReport:
    pcp = pipeline.group(k)
    N = pcp.ngens
    orders = [P.element_order(pcp, g) for g in P.labelled_generators(pcp)[0::2]]
    n = max(orders).bit_length() - 1
    T = pipeline.tk(k)
    left, right = tag_conventions(pipeline.oriented(k), 2 ** (n + 1))
    g = left.genus
    gh = hurwitz_genus(pcp.order, orders)
    if gh.denominator != 1:
        raise ArithmeticError(f"Hurwitz genus {gh} is not an integer")
    mu = sum(Fraction(1, o) for o in orders)
    ratio = Fraction(6 * g, T.nedges)
    fl = left.face_length()
    fd = None
    try:
        fd = hyperbolic_face_data(n, left.nfaces, 2 * pcp.order, g).to_dict()
    except NotHyperbolic:
        pass
    return SurfaceReport(
        k=k, N=N, n=n, V=T.nverts, E=T.nedges, F=left.nfaces, face_len=fl, genus=g,
        genus_hurwitz=int(gh), mu=str(mu), ratio=str(ratio), ratio_float=float(ratio),
        isometry_lower=pcp.order, hat_genus=1 + T.nverts // 2, cusps=left.nfaces,
        cusp_length_ok=bool(fl and cusp_length_ok(fl)), convention=left.tag or "unmatched",
        mirror_lengths_equal=sorted(left.lengths.tolist()) == sorted(right.lengths.tolist()),
        face_data=fd,
    )


def hat_surface_report(k: int) -> dict:
    """Genus 1 + |V_k|/2 of the compactified surface and the covering index to level k+1."""
    V = pipeline.tk(k).nverts
    V1 = pipeline.tk(k + 1).nverts
    idx, rem = divmod(V1, V)
    return {
        "k": k, "genus": 1 + V // 2, "index_to_next": idx,
        "index_is_power_of_2": rem == 0 and idx > 0 and idx & (idx - 1) == 0,
    }


def reports_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in reports:
        w.writerow([r.k, r.N, r.n, r.V, r.E, r.F, r.face_len, r.genus, r.genus_hurwitz, r.ratio, r.hat_genus])
    return buf.getvalue()
