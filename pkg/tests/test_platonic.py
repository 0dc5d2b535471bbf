from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trivalent import pipeline
from trivalent.graphs.isomorphism import is_isomorphic, octahedron, verify_isomorphism
from trivalent.platonic import (build_platonic, closure, duality_verdict, farey_adjacent, farey_generator_check,
                                mat_inv, mat_mul, mobius, platonic_count, prime_factors, psl2,
                                psl2_order_formula, reduced, xyz_subgroup)


@pytest.mark.parametrize("N", range(2, 25))
def test_platonic_count(N):
    assert platonic_count(N) == build_platonic(N).nverts


@pytest.mark.parametrize("N", range(3, 17))
def test_platonic_regular(N):
    g = build_platonic(N)
    assert np.all(g.degrees() == N) and g.is_simple()


def test_pi4_is_octahedron():
    assert is_isomorphic(build_platonic(4), octahedron()) is not None


@pytest.mark.parametrize("N,order", [(2, 6), (3, 12), (4, 24), (8, 192)])
def test_psl2_orders(N, order):
    assert psl2(N).order == order == psl2_order_formula(N)


def test_prime_factors():
    assert prime_factors(360) == [2, 3, 5]
    assert prime_factors(1) == []


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 191), st.integers(0, 191), st.integers(0, 191))
def test_psl2_group_laws(i, j, l):
    G = psl2(8)
    a, b, c = G.elements[i], G.elements[j], G.elements[l]
    assert mat_mul(mat_mul(a, b, 8), c, 8) == mat_mul(a, mat_mul(b, c, 8), 8)
    assert mat_mul(a, mat_inv(a, 8), 8) == mat_mul(b, mat_inv(b, 8), 8)


def test_xyz_subgroup():
    s = xyz_subgroup(8)
    assert (s.order, s.index, s.normal, s.xyz_identity, s.relators_vanish) == (32, 6, True, True, True)
    assert s.ambient_order == 192


def test_cross_oracle_with_labels():
    s = xyz_subgroup(8)
    X2 = pipeline.cayley_graph(2)
    w = is_isomorphic(s.cayley, X2, use_labels=True)
    assert w is not None and verify_isomorphism(s.cayley, X2, w, use_labels=True)


def test_closure_of_identity():
    assert len(closure([(1, 0, 0, 1)], 8)) == 1


def test_farey():
    assert farey_adjacent((0, 1), (1, 0))
    assert farey_adjacent((0, 1), (1, 1)) and farey_adjacent((1, 1), (1, 0))
    assert not farey_adjacent((0, 1), (2, 1))
    assert reduced(-1, -2) == (1, 2)
    with pytest.raises(ValueError):
        reduced(2, 4)
    assert mobius((1, 1, 0, 1), (0, 1)) == (1, 1)
    assert farey_generator_check()["ok"]


@pytest.mark.parametrize("k", [1, 2])
def test_duality_holds(k):
    v = duality_verdict(k)
    assert v["isomorphic"] and v["witness"] is not None and v["certificate"]["arithmetic_allows"]


@pytest.mark.parametrize("k", [3, 4])
def test_duality_refuted(k):
    v = duality_verdict(k)
    assert not v["isomorphic"] and not v["certificate"]["arithmetic_allows"] and v["searched"]
