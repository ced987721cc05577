import os
import subprocess
import sys
from collections import Counter

import numpy as np
import pytest

from alcovetorsion import kernels
from alcovetorsion.kernels import CapExceeded
from alcovetorsion.lie import LieType, catalog_facts, finite_cartan_matrix
from alcovetorsion.weyl_series import DEFAULT_CAP, CartanMatrix, generate_weyl_buckets
from oracles import integer_charpoly, weyl_group_matrices

SMALL = [LieType.parse(s) for s in ("A1", "A2", "A3", "B2", "B3", "C3", "G2", "D4", "A4", "F4")]
BACKENDS = [kernels.orbit_charpoly_counts_numba, kernels.orbit_charpoly_counts_numpy]


def brute_buckets(t):
    return Counter(integer_charpoly(w) for w in weyl_group_matrices(finite_cartan_matrix(t)))


@pytest.mark.parametrize("walk", BACKENDS, ids=["numba", "numpy"])
@pytest.mark.parametrize("t", SMALL, ids=str)
def test_charpoly_buckets_match_enumeration(walk, t):
    n = t.rank
    total, keyed = walk(CartanMatrix.for_type(t).to_numpy(), DEFAULT_CAP)
    assert total == catalog_facts(t).weyl_order
    got = Counter({kernels.decode_key(k, n): c for k, c in keyed.items()})
    assert got == brute_buckets(t)


def test_a2_has_three_classes():
    # identity, three reflections, two rotations of order 3
    b = generate_weyl_buckets(LieType.parse("A2"))
    assert b.counts == {(1, -2, 1): 1, (-1, 0, 1): 3, (1, 1, 1): 2}


@pytest.mark.parametrize("walk", BACKENDS, ids=["numba", "numpy"])
def test_cap_exceeded(walk):
    with pytest.raises(CapExceeded):
        walk(CartanMatrix.for_type(LieType.parse("B4")).to_numpy(), 100)


def test_e7_exceeds_default_cap():
    with pytest.raises(CapExceeded):
        generate_weyl_buckets(LieType.parse("E7"))


def test_backends_agree_on_e6():
    c = CartanMatrix.for_type(LieType.parse("E6")).to_numpy()
    assert kernels.orbit_charpoly_counts_numba(c, DEFAULT_CAP) == kernels.orbit_charpoly_counts_numpy(c, DEFAULT_CAP)


def test_rank_mod_p_rejects_huge_prime():
    with pytest.raises(ValueError):
        kernels.rank_mod_p(np.zeros((2, 2), dtype=np.int64), 2**31 + 11)


def test_backend_flag_selects_numpy():
    code = "from alcovetorsion._accel import backend_name; print(backend_name())"
    env = dict(os.environ, ALCOVETORSION_BACKEND="numpy")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
    env["ALCOVETORSION_BACKEND"] = "fortran"
    bad = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert bad.returncode != 0


def test_cartan_validation():
    with pytest.raises(ValueError):
        CartanMatrix(((2, -1), (0, 2)))
    with pytest.raises(ValueError):
        CartanMatrix(((2, -4), (-1, 2)))
