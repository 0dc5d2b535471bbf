from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trivalent import pipeline
from trivalent.group import pcp as P
from trivalent.group.gf2 import nullspace, rank, rref
from trivalent.group.pquotient import pquotient, pquotient_tower, verify_pcp
from trivalent.group.words import Presentation, Word, g_presentation


def test_word_parse_and_reduce():
    w = Word.parse("x0 x0^-1 x1^2")
    assert w == Word.parse("x1^2")
    assert (Word.parse("(x1 x0)^3") * Word.parse("x0^-1 x1^-1")) == Word.parse("(x1 x0)^2")
    assert Word.parse("x0 x1").inverse() == Word.parse("x1^-1 x0^-1")
    assert Word.parse("x0^3 x1^-1").exponent_sums(2) == [3, -1]


def test_presentation_rejects_foreign_generator():
    with pytest.raises(ValueError):
        Presentation(2, (Word.parse("x2"),))


@pytest.mark.parametrize("k,N", [(1, 2), (2, 5), (3, 7), (4, 10), (5, 13)])
def test_group_orders(k, N):
    assert pipeline.group(k).ngens == N
    assert pipeline.group(k).order == 2 ** N


@pytest.mark.parametrize("k,order", [(2, 4), (3, 4), (4, 8), (5, 8)])
def test_generator_orders(k, order):
    pcp = pipeline.group(k)
    assert [P.element_order(pcp, g) for g in P.labelled_generators(pcp)] == [order] * 6


def test_relators_vanish_and_consistency():
    pres = g_presentation()
    for k in range(1, 6):
        verify_pcp(pres, pipeline.group(k))


def test_tower_layers_and_projection():
    tower = pipeline.tower(5)
    for big, small in zip(tower[1:], tower[:-1]):
        low, gen_map = P.project(big)
        assert low.weights == small.weights
        mask = P.projection_mask(big, small)
        # projection is a homomorphism on generators
        for g, h in zip(big.images, small.images):
            assert g & mask == h


def test_pquotient_direct_matches_tower():
    direct = pquotient(g_presentation(), 3)
    assert direct.ngens == pipeline.group(3).ngens


def test_elementary_abelian_quotient():
    # Z^2 has class-k 2-quotient (Z/2^k)^2
    pres = Presentation(2, (Word.parse("x0 x1 x0^-1 x1^-1"),))
    for k, tw in enumerate(pquotient_tower(pres, 3), start=1):
        assert tw.order == 4 ** k


def test_enumeration_cap():
    with pytest.raises(P.EnumerationCapExceeded):
        P.enumerate_elements(pipeline.group(5), cap=100)


elements = st.integers(min_value=0, max_value=2 ** 13 - 1)


@settings(max_examples=150, deadline=None)
@given(elements, elements, elements)
def test_associativity(a, b, c):
    pcp = pipeline.group(5)
    assert P.multiply(pcp, P.multiply(pcp, a, b), c) == P.multiply(pcp, a, P.multiply(pcp, b, c))


@settings(max_examples=150, deadline=None)
@given(elements)
def test_inverse_and_identity(a):
    pcp = pipeline.group(5)
    assert P.multiply(pcp, a, P.inverse(pcp, a)) == 0
    assert P.multiply(pcp, 0, a) == a == P.multiply(pcp, a, 0)
    assert P.power(pcp, a, P.element_order(pcp, a)) == 0


@settings(max_examples=100, deadline=None)
@given(elements, elements)
def test_projection_is_homomorphism(a, b):
    big, small = pipeline.group(5), pipeline.group(4)
    mask = P.projection_mask(big, small)
    assert P.multiply(big, a, b) & mask == P.multiply(small, a & mask, b & mask)


def test_json_roundtrip():
    pcp = pipeline.group(4)
    back = P.PcPresentation.from_json(pcp.to_json())
    assert back == pcp


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(min_value=0, max_value=255), min_size=1, max_size=8))
def test_gf2_rank_nullity(rows):
    r = rank(rows)
    ns = nullspace(rows, 8)
    assert r + len(ns) == 8
    for v in ns:
        for row in rows:
            assert bin(row & v).count("1") % 2 == 0
    basis, pivots = rref(rows)
    assert len(basis) == r == len(pivots)
