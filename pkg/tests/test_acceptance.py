"""The thirteen reproduction criteria at full size, one test each.

Run with ``pytest tests/test_acceptance.py -s`` to see the pass/fail table.
"""
import pytest

from alcovetorsion import checks

CASES = [
    ("01_weyl_orders", checks.check_table1),
    ("02_face_sets", checks.check_fixtures),
    ("03_torsion_su", checks.check_torsion_su),
    ("04_torsion_spin", checks.check_torsion_spin),
    ("05_torsion_exceptional", checks.check_torsion_exceptional),
    ("06_contractible_complexes", checks.check_negative_results),
    ("07_detection_equivalence", checks.check_equivalence),
    ("08_top_homology", checks.check_top_homology),
    ("09_rational_acyclicity", checks.check_rational_acyclicity),
    ("10_euler_characteristics", checks.check_chi),
    ("11_cycle_graph_blocks", checks.check_cycle_graph),
    ("12_poincare_series", checks.check_poincare),
    ("13_matrix_and_complex_properties", checks.check_properties),
]


def test_every_check_is_listed():
    assert [fn for _, fn in CASES] == list(checks.CHECKS)


@pytest.mark.parametrize("fn", [fn for _, fn in CASES], ids=[name for name, _ in CASES])
def test_criterion(fn, capsys):
    result = fn()
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, "\n".join(result.detail)
