"""Hyperbolic data of the regular tessellations and the eigenvalue bounds built on them."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Optional

REL_TOL = 1e-12
FACE_ANGLE = 2 * math.pi / 3


class NotHyperbolic(ValueError):
    pass


@dataclass(frozen=True)
class FaceData:
    n: int
    m: int
    interior_angle: float
    side_length: float
    circumradius: float
    inradius: float
    polygon_area: float
    triangle_angle: float
    triangle_side: float
    triangle_area: float
    total_area: Optional[float] = None

    def to_dict(self) -> dict:
        return asdict(self)


def _close(a: float, b: float, tol: float = REL_TOL) -> bool:
    return math.isclose(a, b, rel_tol=tol, abs_tol=tol)


def hyperbolic_face_data(n: int, nfaces: Optional[int] = None, ntriangles: Optional[int] = None,
                         genus: Optional[int] = None) -> FaceData:
    """Regular m-gon (m = 2^(n+1)) with angles 2pi/3, and the equilateral pi/2^n triangle.

    Side and radii are computed twice, from the polygon and from the
    triangle whose centres are the polygon's corners, and must agree.  With
    counts supplied the Gauss-Bonnet totals are checked as well.
    """
    m = 2 ** (n + 1)
    beta = math.pi / 2 ** n
    poly_area = (m - 2) * math.pi - m * FACE_ANGLE
    tri_area = math.pi - 3 * beta
    if poly_area <= 0 or tri_area <= 0:
        raise NotHyperbolic(f"n = {n}: m = {m} gons with angle 2pi/3 are not hyperbolic")

    # polygon: right triangle centre / edge midpoint / corner, angles pi/m and pi/3
    cosh_half_side = math.cos(math.pi / m) / math.sin(math.pi / 3)
    cosh_circ = 1 / (math.tan(math.pi / m) * math.tan(math.pi / 3))
    cosh_in = math.cos(math.pi / 3) / math.sin(math.pi / m)
    side = 2 * math.acosh(cosh_half_side)

    # triangle: equilateral with angle beta; its inradius is half a polygon side,
    # its circumradius the polygon's circumradius
    cosh_tri_side = math.cos(beta) / (1 - math.cos(beta))
    tri_in = math.acosh(math.cos(beta / 2) / math.sin(math.pi / 3))
    tri_circ = math.acosh(1 / (math.tan(math.pi / 3) * math.tan(beta / 2)))
    tri_side = math.acosh(cosh_tri_side)
    if not _close(2 * tri_in, side) or not _close(tri_circ, math.acosh(cosh_circ)):
        raise ArithmeticError("polygon and triangle routes disagree")
    # triangle side again, as twice a leg of the right triangle with angles
    # beta/2 and pi/3 (cosh a = cos A / sin B)
    half = math.acosh(math.cos(math.pi / 3) / math.sin(beta / 2))
    if not _close(2 * half, tri_side):
        raise ArithmeticError("triangle side routes disagree")

    total = None
    if nfaces is not None and ntriangles is not None:
        total = nfaces * poly_area
        if not _close(total, ntriangles * tri_area, 1e-9):
            raise ArithmeticError("face and triangle areas give different totals")
        if genus is not None and not _close(total, 2 * math.pi * (2 * genus - 2), 1e-9):
            raise ArithmeticError("total area contradicts Gauss-Bonnet")
    return FaceData(n, m, FACE_ANGLE, side, math.acosh(cosh_circ), math.acosh(cosh_in), poly_area,
                    beta, tri_side, tri_area, total)


def cusp_length_ok(face_length: int) -> bool:
    """Cusp condition: combinatorial face length exceeds 2 pi."""
    return face_length > 2 * math.pi


@dataclass(frozen=True)
class QuadBound:
    alpha: float
    cosh_h: float
    ell_lower: float
    ratio_lower: float


def quad_bound(alpha: float) -> QuadBound:
    """Distance bound across the quadrilateral Q(k) of opening angle alpha."""
    if not 0 < alpha <= math.pi / 4 + 1e-15:
        raise ValueError("alpha must lie in (0, pi/4]")
    cosh_h = math.cos(alpha) / math.sin(alpha / 2)
    # trirectangle: cosh(ell) >= cosh(h) sin(3 alpha / 2); closed form below
    via_h = cosh_h * math.sin(1.5 * alpha)
    closed = math.cos(alpha) * (1 + 2 * math.cos(alpha))
    if not _close(via_h, closed, 1e-12):
        raise ArithmeticError("trirectangle routes disagree")
    ell = math.acosh(closed)
    ratio = ell / math.pi
    if not ratio > 0.25:
        raise ArithmeticError(f"ratio {ratio} does not exceed 1/4")
    return QuadBound(alpha, cosh_h, ell, ratio)


@dataclass(frozen=True)
class LambdaBounds:
    sigma: float
    lambda1_S_lower: float
    h_T_lower: float
    lambda1_hatS_lower: float


def surface_lambda_bounds(sigma: float) -> LambdaBounds:
    """Lower bounds for lambda_1 of S_k, h(T_k) and lambda_1 of the compactified surface."""
    if not 0 <= sigma <= 3:
        raise ValueError("spectral gap of a trivalent graph lies in [0, 3]")
    h = sigma / 2
    return LambdaBounds(sigma, 0.25 * sigma / (24 + sigma), h, h / (144 * math.pi ** 2))
