from itertools import product
from math import comb, factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from alcovetorsion import combinatorics as comb_mod
from alcovetorsion.errors import ComputationMismatch

PRIMES = [2, 3, 5, 7, 11]


@given(st.integers(1, 10**6), st.sampled_from(PRIMES))
def test_p_adic_digits(n, p):
    d = comb_mod.p_adic_digits(n, p)
    assert all(0 <= a < p for a in d.digits)
    assert d.top != 0
    assert int("".join(map(str, reversed(d.digits))), p) == n if p <= 10 else True


@given(st.integers(0, 300), st.integers(0, 300), st.sampled_from(PRIMES))
def test_lucas_matches_binomial(a, b, p):
    a, b = max(a, b), min(a, b)
    assert comb_mod.lucas_binom_mod_p(a, b, p) == comb(a, b) % p


def brute_f(n, p):
    """Walk every coloring of the cut cycle and measure each black run by its factorial."""
    f = [0] * (n + 1)
    for bits in product((0, 1), repeat=n):  # 1 = white, vertex 1 is white
        runs, run = [], 0
        for b in bits:
            if b:
                runs.append(run)
                run = 0
            else:
                run += 1
        runs.append(run)
        order = 1
        for r in runs:
            order *= factorial(r + 1)
        if order % p:
            f[sum(bits)] += 1
    return tuple(f)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
@pytest.mark.parametrize("n", range(2, 11))
def test_f_values_against_brute_force(n, p):
    want = brute_f(n, p)
    assert comb_mod.f_values(n, p) == want
    assert comb_mod.f_values_brute(n, p) == want


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_chi_closed_form(p):
    for n in range(1, 40):
        f, chi = comb_mod.f_chi_values(n, p)
        assert chi == sum((-1) ** i * x for i, x in enumerate(f))


def test_chi_example():
    assert comb_mod.f_values(3, 3) == (0, 1, 3, 1)
    assert comb_mod.chi_closed_form(3, 3) == 1


def test_mismatch_is_raised(monkeypatch):
    monkeypatch.setattr(comb_mod, "chi_closed_form", lambda n, p: 99)
    with pytest.raises(ComputationMismatch):
        comb_mod.f_chi_values(4, 3)


@pytest.mark.parametrize("n, p", [(n, p) for p in (2, 3, 5, 7) for n in range(max(2, p - 1), 11)])
def test_cycle_characterization(n, p):
    assert comb_mod.verify_cycle_characterization(n, p)


@pytest.mark.parametrize("n, p", [(n, p) for p in (3, 5, 7) for n in range(max(4, p), 12)])
def test_spin_tilde_chi_nonzero_iff_residue(n, p):
    assert (comb_mod.spin_tilde_chi(n, p) != 0) == (n % p in (0, 1))


def test_input_validation():
    with pytest.raises(ValueError):
        comb_mod.p_adic_digits(5, 4)
    with pytest.raises(ValueError):
        comb_mod.lucas_binom_mod_p(2, 3, 3)
    with pytest.raises(ValueError):
        comb_mod.spin_tilde_chi(6, 2)
    assert comb_mod.f_chi_csv([3], [3]).splitlines() == ["n,prime,f,chi", "3,3,0 1 3 1,1"]
