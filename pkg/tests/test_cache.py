from __future__ import annotations

import numpy as np
import pytest

from trivalent import pipeline
from trivalent.cache import Cache, input_hash


@pytest.fixture(autouse=True)
def _reset():
    yield
    pipeline.configure(cache=None)


def test_input_hash_is_stable_and_sensitive():
    assert input_hash("x", k=1) == input_hash("x", k=1)
    assert input_hash("x", k=1) != input_hash("x", k=2)
    assert input_hash("x", k=1) != input_hash("y", k=1)


def test_text_roundtrip_and_corruption(tmp_path):
    c = Cache(tmp_path)
    c.put_text("a", "payload")
    assert c.get_text("a") == "payload"
    (tmp_path / "a.json").write_text('{"key": "a", "sha256": "0", "payload": "payload"}')
    assert c.get_text("a") is None
    (tmp_path / "a.json").write_text("not json")
    assert c.get_text("a") is None
    assert c.get_text("missing") is None


def test_array_roundtrip_and_corruption(tmp_path):
    c = Cache(tmp_path)
    arrays = {"t": np.arange(12).reshape(3, 4)}
    c.put_arrays("b", arrays)
    back = c.get_arrays("b")
    assert np.array_equal(back["t"], arrays["t"]) and back["t"].dtype == arrays["t"].dtype
    raw = (tmp_path / "b.npz").read_bytes()
    (tmp_path / "b.npz").write_bytes(raw[: len(raw) // 2])
    assert c.get_arrays("b") is None


def test_pipeline_warm_cache_identical(tmp_path):
    pipeline.configure(cache=Cache(tmp_path))
    cold = pipeline.cayley_graph(4)
    cold_src, cold_rev, cold_label = cold.src.copy(), cold.rev.copy(), cold.label.copy()
    g_cold = pipeline.group(4)
    pipeline.configure(cache=Cache(tmp_path))
    warm = pipeline.cayley_graph(4)
    assert pipeline.group(4) == g_cold
    assert np.array_equal(warm.src, cold_src) and np.array_equal(warm.rev, cold_rev)
    assert np.array_equal(warm.label, cold_label)


def test_pipeline_rebuilds_corrupt_entries(tmp_path):
    pipeline.configure(cache=Cache(tmp_path))
    ref = pipeline.tk(3).edges().copy()
    for p in tmp_path.iterdir():
        p.write_bytes(p.read_bytes()[:-7] + b"corrupt")
    pipeline.configure(cache=Cache(tmp_path))
    assert np.array_equal(pipeline.tk(3).edges(), ref)
