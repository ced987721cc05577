import json

import pytest

from alcovetorsion.errors import ComputationMismatch
from alcovetorsion.homology import HomologyGroup
from alcovetorsion.lie import LieType, all_types, catalog_facts
from alcovetorsion import torsion
from alcovetorsion.torsion import (
    OPEN,
    PROVED,
    conjecture_scan,
    detect_via_delta,
    detect_via_hocolim,
    detection_report,
    known_status,
    scan_csv,
    top_homology,
    verdict_label,
)

REPORT_KEYS = [
    "group", "type", "rank", "dim", "weyl_order", "prime", "r", "complexes", "delta_verdict",
    "delta_witness", "delta_label", "hocolim_invariant_factors", "hocolim_p_torsion",
    "hocolim_p_levels", "equivalence_ok", "paper_status", "morse",
]


@pytest.mark.parametrize("t, p", [("E6", 5), ("E6", 3), ("E6", 2), ("G2", 3), ("F4", 3), ("A4", 5), ("D5", 5), ("E8", 5)])
def test_known_detections(t, p):
    t = LieType.parse(t)
    assert detect_via_delta(t, p).detected
    assert detect_via_hocolim(t, p).detected


@pytest.mark.parametrize("t, p", [("D5", 3), ("E7", 5), ("E7", 7), ("E8", 7), ("B3", 3), ("C4", 3)])
def test_known_non_detections(t, p):
    t = LieType.parse(t)
    assert not detect_via_delta(t, p).detected
    assert not detect_via_hocolim(t, p).detected


def test_e6_p5_witness():
    d = detect_via_delta(LieType.parse("E6"), 5)
    assert (d.k, d.degree) == (0, 1)


def test_d5_p5_torsion_level():
    h = detect_via_hocolim(LieType.parse("D5"), 5)
    assert h.p_levels == (1,)
    assert 10 in h.homology[1].torsion


@pytest.mark.parametrize("t", all_types(6), ids=str)
def test_top_homology(t):
    even = top_homology(t, 2)
    odd = top_homology(t, 3)
    assert odd.group == HomologyGroup(1)
    if t.rank >= 2:
        assert even.group == HomologyGroup(0, (2,))
    dim = catalog_facts(t).dim
    assert even.degree == dim + t.rank - 1
    assert odd.degree == dim + 2 * t.rank


def test_top_degree_values():
    g2 = LieType.parse("G2")
    assert top_homology(g2, 2).degree == 14 + 2 - 1
    assert top_homology(g2, 3).degree == 14 + 2 * 2


def test_top_homology_mismatch_raises(monkeypatch):
    t = LieType.parse("A2")
    fake = type("H", (), {"__getitem__": lambda self, i: HomologyGroup(0, (3,))})()
    monkeypatch.setattr(torsion, "weighted_homology", lambda *a: fake)
    with pytest.raises(ComputationMismatch):
        top_homology(t, 2)


def test_status_table():
    assert known_status(LieType.parse("E7"), 5) == OPEN
    assert known_status(LieType.parse("E8"), 5) == PROVED
    assert known_status(LieType.parse("D5"), 5) == PROVED
    assert known_status(LieType.parse("D5"), 3) == OPEN
    assert known_status(LieType.parse("B4"), 3) == OPEN
    assert known_status(LieType.parse("B4"), 2) == PROVED
    assert verdict_label(False, OPEN) == "not detected (open)"
    assert verdict_label(False, PROVED, divides=False) == "no torsion"


def test_report_schema():
    rep = detection_report(LieType.parse("D5"), 3)
    data = json.loads(rep.to_json())
    assert list(data) == REPORT_KEYS
    assert data["delta_label"] == "not detected (open)"
    assert data["equivalence_ok"]
    assert data["morse"] and all(entry["found"] for entry in data["morse"])


def test_scan_is_order_preserving():
    types = all_types(3)
    serial = conjecture_scan(types, jobs=1)
    parallel = conjecture_scan(types, jobs=2)
    assert serial == parallel
    assert scan_csv(serial) == scan_csv(parallel)
    assert all(row.equivalence_ok for row in serial)
