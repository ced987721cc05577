"""Counting on type A and type D extended diagrams.

p-adic digits and Lucas binomials, the block-gluing description of the
faces of Delta_p(0) for SU(n+1), the counts f_i(n, p) with their Euler
characteristic chi(n, p), and the type-D alternating sum chi~(n, p).
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from itertools import combinations
from math import comb

from .alcove import delta_p_k, euler_characteristic, p_valuation
from .errors import ComputationMismatch
from .lie import LieType, black_mask_order, catalog_facts, extended_diagram, mask_of


def _check_prime(p: int):
    if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
        raise ValueError(f"{p} is not prime")


@dataclass(frozen=True)
class PAdicDigits:
    n: int
    p: int
    digits: tuple[int, ...]  # a_0 .. a_l, a_l != 0

    def __post_init__(self):
        if sum(a * self.p**j for j, a in enumerate(self.digits)) != self.n:
            raise ValueError("digits do not expand to n")

    @property
    def top(self) -> int:
        return self.digits[-1]


def p_adic_digits(n: int, p: int) -> PAdicDigits:
    if n < 1:
        raise ValueError("n must be positive")
    _check_prime(p)
    digits = []
    m = n
    while m:
        m, a = divmod(m, p)
        digits.append(a)
    return PAdicDigits(n=n, p=p, digits=tuple(digits))


def lucas_binom_mod_p(a: int, b: int, p: int) -> int:
    """C(a, b) mod p as the product of digitwise binomials."""
    if not 0 <= b <= a:
        raise ValueError("need 0 <= b <= a")
    _check_prime(p)
    out = 1
    while a or b:
        a, ai = divmod(a, p)
        b, bi = divmod(b, p)
        if bi > ai:
            return 0
        out = out * comb(ai, bi) % p
    return out % p


def _multiset_orders(counts: list[int]):
    # distinct sequences using counts[j] copies of symbol j
    total = sum(counts)
    seq = []

    def rec():
        if len(seq) == total:
            yield tuple(seq)
            return
        for j, c in enumerate(counts):
            if c:
                counts[j] -= 1
                seq.append(j)
                yield from rec()
                seq.pop()
                counts[j] += 1

    yield from rec()


def block_gluings(n: int, p: int, i: int) -> set[frozenset[int]]:
    """White-vertex sets of the (n+1)-cycle built from blocks C(j).

    C(j) is p^j - 1 black vertices followed by a terminal; the blocks are laid
    around the cycle in every order and rotation, and exactly i + 1 terminals
    are white.  Vertices are 1..n+1 as in the type-A catalog numbering.
    """
    if n < 2:
        raise ValueError("block gluings need n >= 2")
    digits = p_adic_digits(n + 1, p).digits
    n1 = n + 1
    out: set[frozenset[int]] = set()
    for order in _multiset_orders(list(digits)):
        terminals = []
        pos = 0
        for j in order:
            pos += p**j
            terminals.append(pos - 1)  # 0-based offset of the terminal
        if i + 1 > len(terminals):
            continue
        for chosen in combinations(terminals, i + 1):
            for rot in range(n1):
                out.add(frozenset((t + rot) % n1 + 1 for t in chosen))
    return out


def delta_p0_white_sets(n: int, p: int, i: int) -> set[frozenset[int]]:
    c = delta_p_k(LieType("A", n), p, 0)
    return {frozenset(f.white) for f in c.faces_of_dim(i)}


def verify_cycle_characterization(n: int, p: int) -> bool:
    if n < 2 or p > n + 1:
        raise ValueError("need n >= 2 and p <= n + 1")
    return all(block_gluings(n, p, i) == delta_p0_white_sets(n, p, i) for i in range(n + 1))


def chi_closed_form(n: int, p: int) -> int:
    if n % p == p - 1:
        return -1
    if n % p == 0:
        return 1
    return 0


def f_values(n: int, p: int) -> tuple[int, ...]:
    """f_0..f_n: colorings of the (n+1)-cycle, fixed vertex white, |W_Gamma| prime to p.

    Cutting the cycle at the fixed white vertex leaves a path of n vertices;
    each maximal black run of length L is a component of type A_L with order
    (L+1)!, prime to p exactly when L <= p - 2.
    """
    _check_prime(p)
    cap = p - 2
    # ways[length][whites], counting strings that end in a black run (possibly empty)
    ways = [[0] * (n + 1) for _ in range(n + 1)]
    for length in range(min(cap, n) + 1):
        ways[length][0] = 1
    for length in range(1, n + 1):
        for w in range(1, n + 1):
            s = 0
            for run in range(min(cap, length - 1) + 1):
                s += ways[length - 1 - run][w - 1]
            ways[length][w] = s
    return tuple(ways[n][w] for w in range(n + 1))


def f_values_brute(n: int, p: int, v: int = 1) -> tuple[int, ...]:
    """Same counts by direct classification of every coloring; vertex ``v`` fixed white."""
    g = extended_diagram(LieType("A", n))
    full = g.full_mask
    bit = mask_of([v])
    f = [0] * (n + 1)
    for white in range(1, full + 1):
        if not white & bit:
            continue
        if black_mask_order(g, full & ~white) % p:
            f[bin(white).count("1") - 1] += 1
    return tuple(f)


def f_chi_values(n: int, p: int) -> tuple[tuple[int, ...], int]:
    f = f_values(n, p)
    chi = sum((-1) ** i * x for i, x in enumerate(f))
    if chi != chi_closed_form(n, p):
        raise ComputationMismatch(f"chi({n},{p}) = {chi}, closed form gives {chi_closed_form(n, p)}")
    return f, chi


def spin_tilde_chi(n: int, p: int) -> int:
    """Sum over i of (-1)^i (|P_i(Delta)| - |P_i(Delta_p(r-1))|) for Spin(2n)."""
    if n < 4:
        raise ValueError("type D needs n >= 4")
    _check_prime(p)
    if p == 2 or p > n:
        raise ValueError("need an odd prime p <= n")
    t = LieType("D", n)
    r = p_valuation(catalog_facts(t).weyl_order, p)
    return 1 - euler_characteristic(delta_p_k(t, p, r - 1))


def f_chi_csv(ns, primes) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "prime", "f", "chi"])
    for p in primes:
        for n in ns:
            f, chi = f_chi_values(n, p)
            w.writerow([n, p, " ".join(map(str, f)), chi])
    return buf.getvalue()


def spin_tilde_chi_csv(ns, primes) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "prime", "tilde_chi"])
    for p in primes:
        for n in ns:
            if 2 < p <= n:
                w.writerow([n, p, spin_tilde_chi(n, p)])
    return buf.getvalue()
