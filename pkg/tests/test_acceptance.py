"""One test per acceptance criterion, driven by the verification ledger."""

from __future__ import annotations

import pytest

from trivalent.verify import CRITERIA, verify_all

IDS = [cid for cid, _, _ in CRITERIA]
_RESULTS: dict[str, str] = {}


@pytest.fixture(scope="module")
def ledger():
    return {r.claim_id: r for r in verify_all(k_max=5, seed=0, dense_cap=2048, tol=1e-5).rows}


@pytest.mark.parametrize("cid", IDS)
def test_criterion(cid, ledger, capsys):
    row = ledger[cid]
    line = f"[acceptance] {cid} {'PASS' if row.passed else 'FAIL'}  {row.anchor}"
    _RESULTS[cid] = line
    with capsys.disabled():
        print("\n" + line)
    assert row.passed, f"{row.anchor}: expected {row.expected}, computed {row.computed} {row.error}"


def test_ledger_has_one_row_per_criterion(ledger):
    assert sorted(ledger) == [f"C{i:02d}" for i in range(1, 14)]


def test_warm_rerun_is_identical():
    a = verify_all(k_max=3, only=["C01", "C05", "C08", "C13"])
    b = verify_all(k_max=3, only=["C01", "C05", "C08", "C13"])
    assert a.to_json(runtimes=False) == b.to_json(runtimes=False)


def acceptance_lines() -> list[str]:
    return [_RESULTS[c] for c in IDS if c in _RESULTS]
