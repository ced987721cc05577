from math import factorial, prod

import pytest

from alcovetorsion.homology import determinant
from alcovetorsion.lie import (
    LieType,
    all_types,
    black_mask_order,
    catalog_facts,
    extended_diagram,
    finite_cartan_matrix,
    mask_of,
)
from oracles import diagram_cartan, weyl_group_matrices


def expected_order(t: LieType) -> int:
    n = t.rank
    return {
        "A": lambda: factorial(n + 1),
        "B": lambda: 2**n * factorial(n),
        "C": lambda: 2**n * factorial(n),
        "D": lambda: 2 ** (n - 1) * factorial(n),
        "G2": lambda: 12,
        "F4": lambda: 1152,
        "E6": lambda: 51840,
        "E7": lambda: 2903040,
        "E8": lambda: 696729600,
    }[t.family]()


DIMS = {"G2": 14, "F4": 52, "E6": 78, "E7": 133, "E8": 248}
CARTAN_DET = {"G2": 1, "F4": 1, "E6": 3, "E7": 2, "E8": 1}


def expected_dim(t):
    n = t.rank
    if t.family == "A":
        return n * (n + 2)
    if t.family in ("B", "C"):
        return n * (2 * n + 1)
    if t.family == "D":
        return n * (2 * n - 1)
    return DIMS[t.family]


@pytest.mark.parametrize("t", all_types(8), ids=str)
def test_weyl_order_dim_and_degrees(t):
    f = catalog_facts(t)
    assert f.weyl_order == expected_order(t)
    assert f.dim == expected_dim(t)
    assert prod(f.degrees) == f.weyl_order
    assert sum(2 * d - 1 for d in f.degrees) == f.dim
    assert len(f.degrees) == f.rank == t.rank


@pytest.mark.parametrize("t", all_types(8), ids=str)
def test_cartan_determinant(t):
    det = determinant(finite_cartan_matrix(t))
    want = {"A": t.rank + 1, "B": 2, "C": 2, "D": 4}.get(t.family, CARTAN_DET.get(t.family))
    assert det == want


@pytest.mark.parametrize("t", all_types(8), ids=str)
def test_extended_diagram_shape(t):
    g = extended_diagram(t)
    assert g.num_vertices == t.rank + 1
    # removing the extending vertex leaves the finite diagram
    top = g.highest_root_vertex
    if t.family != "A":
        assert black_mask_order(g, g.full_mask & ~mask_of([top])) == catalog_facts(t).weyl_order
    # every single-vertex removal gives a subgroup of |W| of finite order
    for v in g.vertices:
        order = black_mask_order(g, g.full_mask & ~mask_of([v]))
        assert catalog_facts(t).weyl_order % order == 0


@pytest.mark.parametrize("t", [LieType.parse(s) for s in ("A3", "B3", "C3", "D4", "G2", "F4", "B4")], ids=str)
def test_black_orders_against_enumeration(t):
    g = extended_diagram(t)
    for black in range(1, g.full_mask):
        verts = [v for v in g.vertices if black >> (v - 1) & 1]
        if len(verts) > 4:
            continue
        brute = len(weyl_group_matrices(diagram_cartan(verts, g.edges)))
        assert black_mask_order(g, black) == brute, verts


@pytest.mark.parametrize(
    "text, name",
    [("SU(4)", "A3"), ("Spin(10)", "D5"), ("Spin(7)", "B3"), ("Sp(3)", "C3"), ("Sp(2)", "B2"), ("e7", "E7")],
)
def test_parse_group_names(text, name):
    assert LieType.parse(text).name == name


def test_parse_rank_and_errors():
    assert LieType.parse("D", 6).name == "D6"
    for bad in ("D", "Z3", "D3", "SU(1)"):
        with pytest.raises(ValueError):
            LieType.parse(bad)


def test_catalog_numbering():
    assert extended_diagram(LieType.parse("E7")).edges == (
        (1, 2, 1), (2, 3, 1), (3, 4, 1), (4, 5, 1), (4, 8, 1), (5, 6, 1), (6, 7, 1),
    )
    d5 = extended_diagram(LieType.parse("D5"))
    assert d5.edges == ((1, 3, 1), (2, 3, 1), (3, 4, 1), (4, 5, 1), (4, 6, 1))
    assert extended_diagram(LieType.parse("A1")).edges == ((1, 2, 4),)
