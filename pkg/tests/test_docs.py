from pathlib import Path

import pytest

from alcovetorsion.lie import LieType, catalog_facts, extended_diagram

DOC = Path(__file__).resolve().parents[1] / "docs" / "catalog.md"


def table_rows():
    for line in DOC.read_text().splitlines():
        cells = [c.strip() for c in line.strip().strip("|").split("|")]
        if len(cells) == 6 and cells[0] not in ("type", "---"):
            yield cells


ROWS = list(table_rows())


def test_table_is_present():
    assert len(ROWS) >= 17


@pytest.mark.parametrize("cells", ROWS, ids=[r[0] for r in ROWS])
def test_catalog_doc_matches_code(cells):
    name, group, order, degrees, top, edges = cells
    t = LieType.parse(name)
    f = catalog_facts(t)
    g = extended_diagram(t)
    assert t.group_name == group
    assert f.weyl_order == int(order)
    assert f.degrees == tuple(int(d) for d in degrees.split())
    assert g.highest_root_vertex == int(top)
    want = " ".join(f"{i}-{j}" if m == 1 else f"{i}={j}({m})" for i, j, m in g.edges)
    assert edges == want
