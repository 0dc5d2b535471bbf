from __future__ import annotations

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trivalent import toeplitz as Tz

diag = st.integers(min_value=0, max_value=(1 << 27) - 1)


def ptm(k):
    return st.lists(diag, min_size=k, max_size=k).map(lambda d: Tz.PeriodicMatrix(k, tuple(d)))


@st.composite
def ptm_triples(draw):
    k = draw(st.integers(min_value=1, max_value=8))
    return draw(ptm(k)), draw(ptm(k)), draw(ptm(k))


@settings(max_examples=80, deadline=None)
@given(ptm_triples())
def test_multiply_matches_oracle(xyz):
    x, y, _ = xyz
    assert Tz.ptm_multiply(x, y) == Tz.oracle_multiply(x, y)


@settings(max_examples=60, deadline=None)
@given(ptm_triples())
def test_associativity_and_identity(xyz):
    x, y, z = xyz
    m = Tz.ptm_multiply
    assert m(m(x, y), z) == m(x, m(y, z))
    assert m(x, Tz.PeriodicMatrix.identity(x.k)) == x


def test_oracle_at_k6():
    import random

    rng = random.Random(6)
    for _ in range(200):
        x = Tz.PeriodicMatrix(6, tuple(rng.getrandbits(27) for _ in range(6)))
        y = Tz.PeriodicMatrix(6, tuple(rng.getrandbits(27) for _ in range(6)))
        assert Tz.ptm_multiply(x, y) == Tz.oracle_multiply(x, y)


def test_truncation_mismatch():
    with pytest.raises(Tz.TruncationMismatch):
        Tz.ptm_multiply(Tz.PeriodicMatrix.identity(2), Tz.PeriodicMatrix.identity(3))


def test_bad_diagonals():
    with pytest.raises(ValueError):
        Tz.PeriodicMatrix(2, (0,))
    with pytest.raises(ValueError):
        Tz.PeriodicMatrix(1, (1 << 27,))


def test_rows_roundtrip():
    for name, rows in Tz._PRINTED.items():
        assert tuple(map(tuple, Tz.triple_to_rows(Tz.alpha_beta()[name]))) == rows


def test_derived_beta():
    derived = Tz.derived_beta()
    ab = Tz.alpha_beta()
    assert derived["beta0"] == ab["beta0"]
    assert derived["beta3"] == ab["beta3"]
    # printed beta_1 repeats alpha_1; the computed square differs
    assert ab["beta1"] == ab["alpha1"]
    assert Tz.triple_to_rows(derived["beta1"]) == [
        [0, 0, 0, 0, 1, 1, 0, 1, 0], [1, 0, 0, 0, 1, 0, 1, 1, 1], [1, 1, 1, 0, 0, 0, 0, 1, 0]]


def test_leading_chain_alternates():
    ab = Tz.alpha_beta()
    chain = Tz.leading_chain(ab["alpha0"], 4)
    assert [d for d, _ in chain] == [0, 1, 3, 7]
    assert [v for _, v in chain] == [ab["alpha0"], ab["beta0"], ab["alpha0"], ab["beta0"]]


def test_lemma_check_rows():
    ab = Tz.alpha_beta()
    rows = Tz.lemma_check([ab["alpha0"]], ab["alpha0"], ab["beta0"], 4)
    assert all(r["depth_ok"] and r["leading_ok"] for r in rows)


def test_order_mod_matches_generator_orders():
    a = Tz.alpha_beta()["alpha0"]
    assert [Tz.order_mod([a], k) for k in range(1, 9)] == [2, 4, 4, 8, 8, 8, 8, 16]


def test_power_requires_power_of_two():
    with pytest.raises(ValueError):
        Tz.ptm_power(Tz.PeriodicMatrix.identity(2), 3)


def test_generator_json_roundtrip():
    data = {"x0": [1, 2, (1 << 27) - 1], "x1": [0]}
    text = Tz.dump_generator_data(data)
    assert Tz.load_generator_data(text) == data
    with pytest.raises(ValueError):
        Tz.load_generator_data(json.dumps({"generator": "x9", "diagonals": []}))
