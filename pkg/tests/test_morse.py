from graphlib import CycleError, TopologicalSorter

import pytest

from alcovetorsion.alcove import delta_p_k, full_alcove, parse_face_name
from alcovetorsion.homology import integral_homology, simplicial_chain_complex
from alcovetorsion.lie import LieType, mask_of
from alcovetorsion.morse import (
    FIXTURES,
    Matching,
    UnknownFace,
    collapsibility_search,
    cone_apex,
    fixture_facets_match,
    load_fixture,
    parse_fixture,
    validate_matching,
)


def reversal_graph_is_acyclic(c, matching: Matching) -> bool:
    """Independent check: Hasse diagram with matched edges flipped admits a topological order."""
    rank = c.lie_type.rank
    matched = {
        (mask_of(parse_face_name(a, rank)), mask_of(parse_face_name(b, rank))) for a, b in matching.pairs
    }
    deps: dict[int, set[int]] = {m: set() for m in c.by_mask}
    for big in c.by_mask:
        for small in c.by_mask:
            if small & ~big or bin(big).count("1") != bin(small).count("1") + 1:
                continue
            if (big, small) in matched:
                deps[big].add(small)  # edge small -> big
            else:
                deps[small].add(big)  # edge big -> small
    try:
        tuple(TopologicalSorter(deps).static_order())
    except CycleError:
        return False
    return True


@pytest.mark.parametrize("name", FIXTURES)
def test_fixture_facets(name):
    assert fixture_facets_match(load_fixture(name))


@pytest.mark.parametrize("name", ["spin10_delta3_0", "e7_delta5_0"])
def test_fixture_matchings_collapse(name):
    fx = load_fixture(name)
    c = fx.complex()
    m = fx.matching()
    cert = validate_matching(c, m)
    assert cert.is_partial_matching and cert.is_acyclic
    assert [f.name for f in cert.critical] == [fx.to_catalog(fx.critical)]
    assert cert.collapses_to_vertex is not None
    assert reversal_graph_is_acyclic(c, m)
    assert integral_homology(simplicial_chain_complex(c)).is_trivial()


def test_fixture_sizes():
    assert len(load_fixture("spin10_delta3_0").pairs) == 19
    assert len(load_fixture("e7_delta5_0").pairs) == 23


def test_cyclic_matching_is_rejected():
    c = full_alcove(LieType.parse("A2"))
    m = Matching((("12", "1"), ("23", "2"), ("13", "3")))
    cert = validate_matching(c, m)
    assert cert.is_partial_matching
    assert not cert.is_acyclic
    assert not reversal_graph_is_acyclic(c, m)
    assert cert.collapses_to_vertex is None


def test_double_match_and_bad_pairs():
    c = full_alcove(LieType.parse("A2"))
    cert = validate_matching(c, Matching((("12", "1"), ("13", "1"))))
    assert not cert.is_partial_matching
    assert validate_matching(c, Matching((("123", "1"),))).problems
    with pytest.raises(UnknownFace):
        validate_matching(delta_p_k(LieType.parse("E7"), 7, 0), Matching((("12", "1"),)))


@pytest.mark.parametrize("t, p, k", [("E7", 7, 0), ("E8", 7, 0), ("D5", 3, 0), ("A3", 2, 0), ("B3", 3, 0)])
def test_search_results_are_certified(t, p, k):
    c = delta_p_k(LieType.parse(t), p, k)
    found = collapsibility_search(c)
    if integral_homology(simplicial_chain_complex(c)).is_trivial() and found is None:
        pytest.fail("search found nothing on an acyclic complex this small")
    if found is not None:
        cert = validate_matching(c, found)
        assert cert.collapses_to_vertex is not None
        assert reversal_graph_is_acyclic(c, found)


def test_search_fails_on_non_contractible():
    # boundary of a triangle
    c = delta_p_k(LieType.parse("A2"), 3, 0)
    assert collapsibility_search(c) is None


def test_cone_apex():
    assert cone_apex(delta_p_k(LieType.parse("E7"), 7, 0)) == 8
    assert cone_apex(delta_p_k(LieType.parse("A2"), 3, 0)) is None
    # B and C at odd primes: every Delta_p(k) is a cone
    for n in range(3, 7):
        for fam in "BC":
            t = LieType(fam, n)
            assert cone_apex(delta_p_k(t, 3, 0)) is not None
            assert cone_apex(delta_p_k(t, 5, 0)) is not None


def test_parse_fixture_text():
    fx = parse_fixture("# demo\ntype A2\nprime 3\nk 1\nfacets 12 13 23\npairs\n12 1\n")
    assert fx.lie_type.name == "A2" and fx.k == 1 and fx.pairs == (("12", "1"),)
