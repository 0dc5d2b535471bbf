from __future__ import annotations

import math
import xml.etree.ElementTree as ET
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trivalent import pipeline
from trivalent.surface.geometry import (NotHyperbolic, cusp_length_ok, hyperbolic_face_data, quad_bound,
                                        surface_lambda_bounds)
from trivalent.surface.maps import (MissingLabels, OrientedMap, cube_map, dual, orient_Tk, tag_conventions,
                                    trace_faces)
from trivalent.surface.render import MAX_RADIUS, RenderError, render_disk, tile_patch
from trivalent.surface.report import (closed_form_counts, hat_surface_report, hurwitz_genus, n_formula,
                                      reports_csv, surface_report)

EXPECTED = {  # k: V, E, F, face length, genus
    1: (8, 12, 6, 4, 0),
    2: (64, 96, 24, 8, 5),
    3: (256, 384, 96, 8, 17),
    4: (2048, 3072, 384, 16, 321),
    5: (16384, 24576, 3072, 16, 2561),
}


def test_cube_is_a_sphere():
    fs = trace_faces(cube_map())
    assert fs.nfaces == 6 and fs.face_length() == 4 and fs.genus == 0


def test_rotation_validation():
    m = cube_map()
    bad = m.rotation.copy()
    bad[[0, 1]] = bad[[1, 0]]
    with pytest.raises(ValueError):
        OrientedMap(m.graph, bad)


def test_orient_needs_labels():
    with pytest.raises(MissingLabels):
        orient_Tk(cube_map().graph)


@pytest.mark.parametrize("k", sorted(EXPECTED))
def test_face_tracing_counts(k):
    fs = pipeline.faces(k)
    V, E, F, L, g = EXPECTED[k]
    assert (fs.nverts, fs.nedges, fs.nfaces, fs.face_length(), fs.genus) == (V, E, F, L, g)
    # every dart lies in exactly one face
    assert np.array_equal(np.sort(np.concatenate(fs.faces)), np.arange(2 * E))


@pytest.mark.parametrize("k", sorted(EXPECTED))
def test_both_conventions_agree_on_lengths(k):
    left, right = tag_conventions(pipeline.oriented(k), EXPECTED[k][3])
    assert left.tag == "left"
    assert sorted(left.lengths.tolist()) == sorted(right.lengths.tolist())


@pytest.mark.parametrize("k", sorted(EXPECTED))
def test_closed_forms_and_hurwitz(k):
    r = surface_report(k)
    cf = closed_form_counts(r.N, r.n)
    assert (cf["V"], cf["E"], cf["F"], cf["face_len"], cf["genus"]) == EXPECTED[k]
    assert r.genus == r.genus_hurwitz == EXPECTED[k][4]
    assert r.N == n_formula(k)
    assert r.cusps == r.F and r.cusp_length_ok == (k >= 2)


def test_k2_report():
    r = surface_report(2)
    assert r.mu == "3/4" and Fraction(r.ratio) == Fraction(5, 16) and r.hat_genus == 33
    assert r.face_data["m"] == 8 and r.convention == "left"


def test_ratio_values():
    ratios = [Fraction(surface_report(k).ratio) for k in range(2, 6)]
    assert ratios == [Fraction(5, 16), Fraction(17, 64), Fraction(321, 512), Fraction(2561, 4096)]
    assert all(r < 1 for r in ratios)


def test_hurwitz_formula():
    assert hurwitz_genus(32, [4, 4, 4]) == 5


def test_hat_surface_index():
    h = hat_surface_report(2)
    assert h["genus"] == 33 and h["index_to_next"] == 4 and h["index_is_power_of_2"]


def test_csv_column_order():
    text = reports_csv([surface_report(1), surface_report(2)])
    lines = text.splitlines()
    assert lines[0] == "k,N_k,n_k,V,E,F,face_len,genus,genus_hurwitz,ratio,hat_genus"
    assert lines[2] == "2,5,2,64,96,24,8,5,5,5/16,33"


def test_dual_of_t2():
    D = pipeline.tk_dual(2)
    assert D.nverts == 24 and np.all(D.degrees() == 8)
    D1 = pipeline.tk_dual(1)
    assert D1.nverts == 6 and np.all(D1.degrees() == 4)


def test_dual_of_dual_is_faces_of_vertices():
    fs = trace_faces(cube_map())
    D = dual(fs, cube_map().graph)
    assert D.nverts == 6 and D.nedges == 12


# geometry ----------------------------------------------------------------

@pytest.mark.parametrize("n", [2, 3, 4])
def test_face_data_gauss_bonnet(n):
    fd = hyperbolic_face_data(n)
    m = 2 ** (n + 1)
    assert fd.polygon_area == pytest.approx((m - 2) * math.pi - m * 2 * math.pi / 3)
    assert fd.circumradius > fd.inradius > 0


def test_face_data_with_counts():
    fd = hyperbolic_face_data(2, nfaces=24, ntriangles=64, genus=5)
    assert fd.total_area == pytest.approx(16 * math.pi)
    with pytest.raises(ArithmeticError):
        hyperbolic_face_data(2, nfaces=24, ntriangles=64, genus=6)


def test_face_data_not_hyperbolic():
    with pytest.raises(NotHyperbolic):
        hyperbolic_face_data(1)


def test_cusp_length():
    assert cusp_length_ok(8) and not cusp_length_ok(4)


def test_quad_bound_pi_over_4():
    q = quad_bound(math.pi / 4)
    assert q.ell_lower == pytest.approx(1.12838, abs=1e-5)
    assert q.cosh_h == pytest.approx(1.847759, abs=1e-6)


@settings(max_examples=80, deadline=None)
@given(st.floats(min_value=1e-6, max_value=math.pi / 4))
def test_quad_bound_ratio_exceeds_quarter(alpha):
    assert quad_bound(alpha).ratio_lower > 0.25


def test_quad_bound_domain():
    with pytest.raises(ValueError):
        quad_bound(1.0)


def test_lambda_bounds():
    b = surface_lambda_bounds(3 - (1 + math.sqrt(2)))
    assert b.lambda1_S_lower == pytest.approx(0.0059563, abs=1e-6)
    assert b.lambda1_hatS_lower == pytest.approx(2.0609e-4, abs=1e-6)
    with pytest.raises(ValueError):
        surface_lambda_bounds(4)


# rendering ---------------------------------------------------------------

def _paths(svg):
    root = ET.fromstring(svg.split("?>", 1)[1])
    return [el for el in root.iter() if el.tag.endswith("path")]


def test_render_seed_polygon():
    svg = render_disk(pipeline.oriented(2), pipeline.faces(2), radius=0)
    paths = _paths(svg)
    assert len(paths) == 1 and paths[0].get("d").count("A") == 8


def test_render_counts_and_determinism():
    a = render_disk(pipeline.oriented(2), pipeline.faces(2), radius=1)
    b = render_disk(pipeline.oriented(2), pipeline.faces(2), radius=1)
    assert a == b and len(_paths(a)) == 9
    assert len(_paths(render_disk(pipeline.oriented(2), pipeline.faces(2), radius=2))) == 41


def test_tiles_stay_in_disk():
    tiles = tile_patch(pipeline.oriented(3), pipeline.faces(3), 2)
    assert len(tiles) > 1


def test_render_radius_cap():
    with pytest.raises(RenderError):
        render_disk(pipeline.oriented(2), pipeline.faces(2), radius=MAX_RADIUS + 1)
