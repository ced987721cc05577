"""The reproduction checks run by ``alcovetorsion verify --all``.

Each check returns a :class:`CheckResult`; a failing check lists what
went wrong in ``detail`` rather than raising.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import factorial, gcd

from . import combinatorics as comb
from .alcove import (
    automorphism_orbits,
    delta_p_k,
    e6_rotation,
    euler_characteristic,
    facet_names,
    full_alcove,
    p_valuation,
    relabel_names,
    rotation,
)
from .errors import ComputationMismatch
from .homology import (
    IntegerMatrix,
    determinant,
    integral_homology,
    invariant_factors,
    mod_p_betti,
    prime_factors,
    simplicial_chain_complex,
    smith_normal_form,
    weighted_hocolim_complex,
)
from .kernels import CapExceeded
from .lie import LieType, all_types, catalog_facts
from .morse import (
    FIXTURES,
    cone_apex,
    collapsibility_search,
    fixture_facets_match,
    load_fixture,
    validate_matching,
)
from .torsion import conjecture_scan, detect_via_delta, detect_via_hocolim, top_homology, weighted_homology
from .weyl_series import DEFAULT_CAP, exterior_series, generate_weyl_buckets, poincare_series

SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31)

TABLE_1 = {
    "G2": 2**2 * 3,
    "F4": 2**7 * 3**2,
    "E6": 2**7 * 3**4 * 5,
    "E7": 2**10 * 3**4 * 5 * 7,
    "E8": 2**14 * 3**5 * 5**2 * 7,
}


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool = True
    detail: list[str] = field(default_factory=list)

    def require(self, cond: bool, msg: str):
        if not cond:
            self.passed = False
            self.detail.append(msg)

    def line(self) -> str:
        head = f"[{'PASS' if self.passed else 'FAIL'}] {self.number:2d}. {self.name}"
        if self.passed:
            return head
        return head + "\n" + "\n".join("      " + d for d in self.detail[:20])


def _table1_order(t: LieType) -> int:
    n = t.rank
    if t.family == "A":
        return factorial(n + 1)
    if t.family in ("B", "C"):
        return 2**n * factorial(n)
    if t.family == "D":
        return 2 ** (n - 1) * factorial(n)
    return TABLE_1[t.family]


def check_table1(max_rank: int = 10) -> CheckResult:
    res = CheckResult(1, "Weyl group orders and degree identities")
    for t in all_types(max_rank):
        f = catalog_facts(t)
        res.require(f.weyl_order == _table1_order(t), f"{t.name}: |W| = {f.weyl_order}")
        prod = 1
        for d in f.degrees:
            prod *= d
        res.require(prod == f.weyl_order, f"{t.name}: product of degrees {prod}")
        res.require(sum(2 * d - 1 for d in f.degrees) == f.dim, f"{t.name}: degree sum != dim")
        res.require(len(f.degrees) == f.rank, f"{t.name}: {len(f.degrees)} degrees")
    return res


def check_fixtures() -> CheckResult:
    res = CheckResult(2, "Delta_p(k) face sets")
    su3 = LieType("A", 2)
    full = full_alcove(su3)
    one_skel = {f.white for f in full if f.dim <= 1}
    zero_skel = {f.white for f in full if f.dim == 0}
    res.require({f.white for f in delta_p_k(su3, 2, 0)} == one_skel, "SU(3) Delta_2(0) is not the 1-skeleton")
    res.require({f.white for f in delta_p_k(su3, 3, 0)} == zero_skel, "SU(3) Delta_3(0) is not the 0-skeleton")
    g2 = delta_p_k(LieType("G2", 2), 3, 0)
    res.require([f.name for f in g2] == ["1", "3"], f"G2 Delta_3(0) = {[f.name for f in g2]}")
    spin10 = load_fixture("spin10_delta3_0")
    inverse = {v: k for k, v in spin10.labels.items()}
    got = relabel_names(facet_names(delta_p_k(LieType("D", 5), 3, 0)), inverse, 5)
    res.require(got == ["1234", "1236", "1346", "1456", "3456"], f"Spin(10) Delta_3(0) facets {got}")
    got = facet_names(delta_p_k(LieType("E7", 7), 5, 0))
    res.require(got == ["1237", "1238", "1278", "1567", "1678", "5678"], f"E7 Delta_5(0) facets {got}")
    got = facet_names(delta_p_k(LieType("E7", 7), 7, 0))
    res.require(got == ["18", "78"], f"E7 Delta_7(0) facets {got}")
    for name in FIXTURES:
        res.require(fixture_facets_match(load_fixture(name)), f"fixture {name} disagrees")
    return res


def check_torsion_su(max_n: int = 11) -> CheckResult:
    res = CheckResult(3, "SU(n+1): p-torsion detected for every p <= n+1")
    for n in range(1, max_n + 1):
        t = LieType("A", n)
        for p in prime_factors(factorial(n + 1)):
            det = detect_via_delta(t, p)
            res.require(det.detected, f"SU({n + 1}), p={p}: not detected")
            top = comb.p_adic_digits(n + 1, p).top
            q = (n + 1) // gcd(n + 1, top)
            c = delta_p_k(t, p, 0)
            fv = c.f_vector()
            res.require(all(x % q == 0 for x in fv), f"SU({n + 1}), p={p}: f-vector {fv} not divisible by {q}")
            res.require(euler_characteristic(c) % q == 0, f"SU({n + 1}), p={p}: chi not divisible by {q}")
            if n <= 8:
                orbits = automorphism_orbits(t, c, [rotation(t)])
                sizes = {s for per_dim in orbits.values() for s in per_dim}
                res.require(all(s % q == 0 for s in sizes), f"SU({n + 1}), p={p}: orbit sizes {sizes}")
    return res


def check_torsion_spin(lo: int = 4, hi: int = 10) -> CheckResult:
    res = CheckResult(4, "Spin(2n): detection at k = r-1 when n = 0, 1 mod p")
    for n in range(lo, hi + 1):
        t = LieType("D", n)
        w = catalog_facts(t).weyl_order
        for p in prime_factors(w):
            if p > n or n % p not in (0, 1):
                continue
            r = p_valuation(w, p)
            betti = mod_p_betti(simplicial_chain_complex(delta_p_k(t, p, r - 1)), p)
            res.require(any(betti.values()), f"Spin({2 * n}), p={p}: Delta_p(r-1) is mod-p acyclic")
            res.require(detect_via_delta(t, p).detected, f"Spin({2 * n}), p={p}: not detected")
    return res


def check_torsion_exceptional() -> CheckResult:
    res = CheckResult(5, "exceptional groups: G2, F4, E6 detections")
    cases = [("G2", 3), ("F4", 2), ("F4", 3), ("E6", 2), ("E6", 3), ("E6", 5)]
    for fam, p in cases:
        t = LieType.parse(fam)
        res.require(detect_via_delta(t, p).detected, f"({fam},{p}) not detected")
    e6 = LieType("E6", 6)
    c = delta_p_k(e6, 5, 0)
    chi = euler_characteristic(c)
    res.require(chi % 3 == 0, f"chi(E6 Delta_5(0)) = {chi}")
    orbits = automorphism_orbits(e6, c, [e6_rotation()])
    res.require(all(set(per) == {3} for per in orbits.values()), f"E6 Delta_5(0) orbits {orbits}")
    return res


def check_negative_results(max_rank: int = 8) -> CheckResult:
    res = CheckResult(6, "contractible Delta_p(k): matchings, cones, homology")
    for name in FIXTURES:
        fx = load_fixture(name)
        c = fx.complex()
        h = integral_homology(simplicial_chain_complex(c))
        res.require(h.is_trivial(), f"{name}: reduced integral homology {h}")
        for p in prime_factors(catalog_facts(fx.lie_type).weyl_order):
            b = mod_p_betti(simplicial_chain_complex(c), p)
            res.require(not any(b.values()), f"{name}: mod-{p} Betti {b}")
        if fx.pairs:
            cert = validate_matching(c, fx.matching())
            v = cert.collapses_to_vertex
            want = fx.to_catalog(fx.critical)
            res.require(v is not None and v.name == want, f"{name}: certificate {cert.to_dict()}")
        else:
            found = collapsibility_search(c)
            ok = found is not None and validate_matching(c, found).collapses_to_vertex is not None
            res.require(ok, f"{name}: no collapse found")
    for fam in ("B", "C"):
        for n in range(3, max_rank + 1):
            t = LieType(fam, n)
            w = catalog_facts(t).weyl_order
            for p in sorted(prime_factors(w) - {2}):
                for k in range(p_valuation(w, p) + 1):
                    res.require(cone_apex(delta_p_k(t, p, k)) is not None, f"{t.name}, p={p}, k={k}: no apex")
    return res


def check_equivalence(max_rank: int = 8, jobs: int = 1) -> CheckResult:
    res = CheckResult(7, "Delta_p(k) detection agrees with weighted-complex torsion")
    types = all_types(max_rank)
    for row in conjecture_scan(types, jobs=jobs):
        res.require(row.equivalence_ok, f"{row.lie_type.name}, p={row.prime}: delta {row.delta_verdict}, "
                    f"hocolim {row.hocolim_verdict}")
    for t in types:
        w = catalog_facts(t).weyl_order
        h = weighted_homology(t)
        res.require(h.torsion_primes() <= prime_factors(w), f"{t.name}: torsion primes {h.torsion_primes()}")
        for p in SMALL_PRIMES:
            if w % p:
                d, hc = detect_via_delta(t, p), detect_via_hocolim(t, p)
                res.require(not d.detected and not hc.detected, f"{t.name}, p={p} does not divide |W|")
    return res


def check_top_homology(max_rank: int = 8) -> CheckResult:
    res = CheckResult(8, "top homology: Z/2 for m even, Z for m odd")
    for t in all_types(max_rank):
        for m in (2, 3, 4, 5):
            try:
                top = top_homology(t, m)
            except ComputationMismatch as exc:
                res.require(False, str(exc))
                continue
            if m % 2:
                res.require(str(top.group) == "Z", f"{t.name}, m={m}: {top.group}")
            elif t.rank >= 2:
                res.require(str(top.group) == "Z/2", f"{t.name}, m={m}: {top.group}")
            else:
                res.require(str(top.group) == "Z ⊕ Z/2", f"{t.name}, m={m}: {top.group}")
    return res


def check_rational_acyclicity(max_rank: int = 8) -> CheckResult:
    res = CheckResult(9, "weighted complex free ranks are (1, 0, ..., 0)")
    for t in all_types(max_rank):
        h = weighted_homology(t)
        ranks = [h[i].free_rank for i in range(t.rank + 1)]
        res.require(ranks == [1] + [0] * t.rank, f"{t.name}: free ranks {ranks}")
    return res


def check_chi(max_n: int = 30) -> CheckResult:
    res = CheckResult(10, "chi(n,p) closed form and the type-D reduction")
    for p in (2, 3, 5, 7):
        for n in range(1, max_n + 1):
            try:
                comb.f_chi_values(n, p)
            except ComputationMismatch as exc:
                res.require(False, str(exc))
            if n <= 9:
                res.require(comb.f_values(n, p) == comb.f_values_brute(n, p), f"f({n},{p}) enumeration")
    res.require(comb.f_chi_values(3, 3) == ((0, 1, 3, 1), 1), f"f(3,3) = {comb.f_chi_values(3, 3)}")
    for p in (3, 5):
        for n in range(2 * p + 2, 13):
            got = comb.spin_tilde_chi(n, p)
            want = -comb.chi_closed_form(n - 2 * p - 1, p)
            res.require(got == want, f"tilde chi({n},{p}) = {got}, expected {want}")
    return res


def check_cycle_graph(max_n: int = 11) -> CheckResult:
    res = CheckResult(11, "block gluings give Delta_p(0) for SU(n+1)")
    for n in range(2, max_n + 1):
        for p in SMALL_PRIMES:
            if p <= n + 1:
                res.require(comb.verify_cycle_characterization(n, p), f"n={n}, p={p}")
    return res


def check_poincare(max_rank: int = 8, coeff_rank: int = 6) -> CheckResult:
    res = CheckResult(12, "Poincare series")
    a1 = LieType("A", 1)
    res.require(poincare_series(a1, 1, 8).as_integers() == [1, 0, 0, 1, 0, 0, 0, 0, 0], "(A1, m=1)")
    res.require(poincare_series(a1, 2, 8).as_integers() == [1, 0, 1, 2, 0, 0, 0, 0, 0], "(A1, m=2)")
    for t in all_types(max_rank):
        f = catalog_facts(t)
        if f.weyl_order > DEFAULT_CAP:
            continue  # rejected by the default cap; covered by the unit tests
        try:
            buckets = generate_weyl_buckets(t)
        except CapExceeded:
            res.require(False, f"{t.name}: cap hit with |W| = {f.weyl_order}")
            continue
        res.require(buckets.total == f.weyl_order, f"{t.name}: generated {buckets.total}")
        N = f.dim + 2
        s = poincare_series(t, 1, N, buckets=buckets).as_integers()
        res.require(s == exterior_series(t, N), f"{t.name}: m=1 series is not the exterior algebra")
        n = f.rank
        if 2 <= n <= coeff_rank:
            for m in (2, 3, 4, 5):
                q = f.dim + n * (m - 2)
                s = poincare_series(t, m, q + n + 1, buckets=buckets)
                res.require(s[q + n] == (m % 2), f"{t.name}, m={m}: t^(q+n) coefficient {s[q + n]}")
                res.require(s[q + n + 1] == 0, f"{t.name}, m={m}: nonzero above the top degree")
                if m % 2 == 0:
                    res.require(s[q + n - 1] == 0, f"{t.name}, m={m}: t^(q+n-1) coefficient {s[q + n - 1]}")
                    ranks = [weighted_homology(t)[i].free_rank for i in range(n + 1)]
                    res.require(all(ranks[i] <= s[q + i] for i in range(n + 1)), f"{t.name}: free ranks exceed Betti")
    return res


def _random_matrix(rng: random.Random, rows: int, cols: int, bound: int, density: float):
    return [[rng.randint(-bound, bound) if rng.random() < density else 0 for _ in range(cols)] for _ in range(rows)]


def check_properties(max_rank: int = 8, seed: int = 0, samples: int = 60) -> CheckResult:
    res = CheckResult(13, "SNF round trip, dd = 0, universal coefficients, closure")
    rng = random.Random(seed)
    for i in range(samples):
        size = 40 if i == 0 else rng.randint(1, 12)
        rows, cols = size, rng.randint(max(1, size - 3), size + 3)
        a = _random_matrix(rng, rows, cols, 10**6 if i % 2 else 9, rng.choice([0.2, 0.5, 1.0]))
        snf = smith_normal_form(a)
        L, R = IntegerMatrix.from_dense(snf.left), IntegerMatrix.from_dense(snf.right)
        prod = (L @ IntegerMatrix.from_dense(a) @ R).to_dense()
        diag = [[snf.diagonal[r] if r == c and r < len(snf.diagonal) else 0 for c in range(cols)] for r in range(rows)]
        res.require(prod == diag, f"sample {i}: left @ A @ right is not the diagonal")
        res.require(abs(determinant(snf.left)) == 1 and abs(determinant(snf.right)) == 1, f"sample {i}: transforms")
        res.require(all(b % a == 0 for a, b in zip(snf.diagonal, snf.diagonal[1:])), f"sample {i}: divisibility")
        res.require(snf.diagonal == invariant_factors(a), f"sample {i}: invariant factors differ")
    for t in all_types(max_rank):
        w = catalog_facts(t).weyl_order
        wc = weighted_hocolim_complex(t)
        res.require(wc.check_dd(), f"{t.name}: weighted dd != 0")
        h = weighted_homology(t)
        for p in prime_factors(w):
            res.require(h.predicted_mod_p_betti(p) == mod_p_betti(wc, p), f"{t.name}: weighted UC at p={p}")
            for k in range(p_valuation(w, p) + 1):
                c = delta_p_k(t, p, k)
                res.require(c.is_closed(), f"{t.name} Delta_{p}({k}) not closed")
                if k:
                    res.require(set(delta_p_k(t, p, k - 1).by_mask) <= set(c.by_mask), f"{t.name}: filtration")
                cc = simplicial_chain_complex(c)
                res.require(cc.check_dd(), f"{t.name} Delta_{p}({k}): dd != 0")
                hc = integral_homology(cc)
                for q in (2, 3, 5, 7):
                    res.require(hc.predicted_mod_p_betti(q) == mod_p_betti(cc, q), f"{t.name} Delta_{p}({k}): UC at {q}")
            res.require(len(delta_p_k(t, p, p_valuation(w, p))) == len(full_alcove(t)), f"{t.name}: top level")
    return res


CHECKS = (
    check_table1,
    check_fixtures,
    check_torsion_su,
    check_torsion_spin,
    check_torsion_exceptional,
    check_negative_results,
    check_equivalence,
    check_top_homology,
    check_rational_acyclicity,
    check_chi,
    check_cycle_graph,
    check_poincare,
    check_properties,
)


def run_all(max_rank: int = 8, jobs: int = 1, seed: int = 0) -> list[CheckResult]:
    """Every check; ``max_rank`` below 8 shrinks the type ranges for a quick run."""
    quick = max_rank < 8
    return [
        check_table1(10 if not quick else max_rank),
        check_fixtures(),
        check_torsion_su(11 if not quick else max_rank),
        check_torsion_spin(4, 10 if not quick else max(4, max_rank)),
        check_torsion_exceptional(),
        check_negative_results(max_rank),
        check_equivalence(max_rank, jobs=jobs),
        check_top_homology(max_rank),
        check_rational_acyclicity(max_rank),
        check_chi(30 if not quick else 12),
        check_cycle_graph(11 if not quick else max(2, max_rank)),
        check_poincare(max_rank),
        check_properties(max_rank, seed=seed, samples=60 if not quick else 15),
    ]
