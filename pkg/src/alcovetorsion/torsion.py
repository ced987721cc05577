"""p-torsion detection for Hom(Z^m, G)_1, m >= 2.

Two routes are computed separately and compared:

* the filtration Delta_p(0) <= ... <= Delta_p(r) of the alcove, looking for
  a subcomplex with nontrivial reduced mod-p homology (ranks over F_p);
* the weighted top-line chain complex, looking for p in an invariant factor
  of its integral homology (Smith form over Z).

Also here: the top homology groups and the per-type scan with the known
status of each (type, prime) pair.
"""
from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

from .alcove import SubcomplexSpec, delta_p_k, euler_characteristic, p_valuation
from .errors import ComputationMismatch
from .homology import (
    HomologyGroup,
    HomologySummary,
    integral_homology,
    mod_p_betti,
    prime_factors,
    q_m,
    simplicial_chain_complex,
    weighted_hocolim_complex,
)
from .lie import LieType, all_types, catalog_facts
from .morse import collapsibility_search, validate_matching

PROVED = "proved"
OPEN = "open"


@dataclass(frozen=True)
class DeltaRecord:
    k: int
    f_vector: tuple[int, ...]
    euler: int
    reduced_betti_mod_p: dict  # degree -> rank
    empty: bool = False

    @property
    def nontrivial(self) -> bool:
        return any(self.reduced_betti_mod_p.values())

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "f_vector": list(self.f_vector),
            "euler": self.euler,
            "reduced_betti_mod_p": {str(d): b for d, b in sorted(self.reduced_betti_mod_p.items())},
            "empty": self.empty,
        }


@dataclass(frozen=True)
class DeltaDetection:
    detected: bool
    k: int | None
    degree: int | None
    records: tuple[DeltaRecord, ...]


@dataclass(frozen=True)
class HocolimDetection:
    detected: bool
    homology: HomologySummary
    p_levels: tuple[int, ...]  # levels whose torsion has a p-part


def delta_records(t: LieType, p: int) -> list[DeltaRecord]:
    spec = SubcomplexSpec.for_type(t, p, 0)
    out = []
    for k in range(spec.r + 1):
        c = delta_p_k(t, p, k)
        betti = mod_p_betti(simplicial_chain_complex(c, reduced=True), p)
        out.append(DeltaRecord(k, c.f_vector(), euler_characteristic(c), betti, c.is_empty))
    return out


def detect_via_delta(t: LieType, p: int) -> DeltaDetection:
    """Least k, then least degree, with nontrivial reduced mod-p homology of Delta_p(k)."""
    records = tuple(delta_records(t, p))
    for rec in records:
        if rec.nontrivial:
            degree = min(d for d, b in rec.reduced_betti_mod_p.items() if b)
            return DeltaDetection(True, rec.k, degree, records)
    return DeltaDetection(False, None, None, records)


@lru_cache(maxsize=None)
def weighted_homology(t: LieType, parity: str = "even") -> HomologySummary:
    return integral_homology(weighted_hocolim_complex(t, parity))


def detect_via_hocolim(t: LieType, p: int) -> HocolimDetection:
    SubcomplexSpec(p, 0, 0)  # validates p
    h = weighted_homology(t, "even")
    levels = tuple(i for i, g in sorted(h.groups.items()) if any(x % p == 0 for x in g.torsion))
    return HocolimDetection(bool(levels), h, levels)


def equivalence_check(t: LieType, p: int) -> bool:
    return detect_via_delta(t, p).detected == detect_via_hocolim(t, p).detected


# ---------------------------------------------------------------- top homology

@dataclass(frozen=True)
class TopHomologyResult:
    lie_type: LieType
    m: int
    degree: int
    group: HomologyGroup
    levels: dict = field(default_factory=dict)  # model level -> computed group

    def to_dict(self) -> dict:
        return {
            "type": self.lie_type.name,
            "group": self.lie_type.group_name,
            "m": self.m,
            "degree": self.degree,
            "homology": str(self.group),
            "levels": {str(i): str(g) for i, g in sorted(self.levels.items())},
        }


def top_degree(t: LieType, m: int) -> int:
    f = catalog_facts(t)
    return f.dim + f.rank * (m - 1) - (1 if m % 2 == 0 else 0)


def top_homology(t: LieType, m: int) -> TopHomologyResult:
    """Top homology read off the chain model; raises if it disagrees with the expected groups."""
    if m < 2:
        raise ValueError("m must be at least 2")
    n = t.rank
    deg = top_degree(t, m)
    if m % 2:
        h = weighted_homology(t, "odd")
        levels = {n: h[n]}
        expected = {n: HomologyGroup(1)}
        group = h[n]
    else:
        h = weighted_homology(t, "even")
        if n >= 2:
            levels = {n - 1: h[n - 1], n: h[n]}
            expected = {n - 1: HomologyGroup(0, (2,)), n: HomologyGroup(0)}
            group = h[n - 1]
        else:
            levels = {0: h[0], 1: h[1]}
            expected = {0: HomologyGroup(1, (2,)), 1: HomologyGroup(0)}
            group = h[0]
    if levels != expected:
        got = ", ".join(f"level {i}: {g}" for i, g in sorted(levels.items()))
        raise ComputationMismatch(f"{t.name}, m={m}: computed {got}")
    assert deg == q_m(t, m) + (n if m % 2 else n - 1)
    return TopHomologyResult(t, m, deg, group, levels)


# ---------------------------------------------------------------- scan

def known_status(t: LieType, p: int) -> str:
    """Whether p-torsion is established for (type, p), for p dividing |W|."""
    if catalog_facts(t).weyl_order % p:
        return PROVED  # no p-torsion at all
    if p == 2 or t.family in ("A", "G2", "F4", "E6"):
        return PROVED
    if t.family == "D":
        n = t.rank
        return PROVED if p <= n and n % p in (0, 1) else OPEN
    if t.family == "E7":
        return PROVED if p in (2, 3) else OPEN
    if t.family == "E8":
        return PROVED if p in (2, 3, 5) else OPEN
    return OPEN  # B and C at odd primes


def verdict_label(detected: bool, status: str, divides: bool = True) -> str:
    if detected:
        return "detected"
    if not divides:
        return "no torsion"
    return "not detected (open)" if status == OPEN else "not detected"


@dataclass
class DetectionReport:
    lie_type: LieType
    prime: int
    r: int
    delta: DeltaDetection
    hocolim: HocolimDetection
    morse: list = field(default_factory=list)

    @property
    def equivalence_ok(self) -> bool:
        return self.delta.detected == self.hocolim.detected

    @property
    def status(self) -> str:
        return known_status(self.lie_type, self.prime)

    def to_dict(self) -> dict:
        f = catalog_facts(self.lie_type)
        divides = f.weyl_order % self.prime == 0
        return {
            "group": self.lie_type.group_name,
            "type": self.lie_type.name,
            "rank": f.rank,
            "dim": f.dim,
            "weyl_order": f.weyl_order,
            "prime": self.prime,
            "r": self.r,
            "complexes": [rec.to_dict() for rec in self.delta.records],
            "delta_verdict": self.delta.detected,
            "delta_witness": (
                {"k": self.delta.k, "degree": self.delta.degree} if self.delta.detected else None
            ),
            "delta_label": verdict_label(self.delta.detected, self.status, divides),
            "hocolim_invariant_factors": [
                {"level": i, "free_rank": g.free_rank, "torsion": list(g.torsion)}
                for i, g in sorted(self.hocolim.homology.groups.items())
            ],
            "hocolim_p_torsion": self.hocolim.detected,
            "hocolim_p_levels": list(self.hocolim.p_levels),
            "equivalence_ok": self.equivalence_ok,
            "paper_status": self.status,
            "morse": self.morse,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False) + "\n"


def detection_report(t: LieType, p: int, with_morse: bool = True, budget: int = 10**4) -> DetectionReport:
    delta = detect_via_delta(t, p)
    hoc = detect_via_hocolim(t, p)
    r = p_valuation(catalog_facts(t).weyl_order, p)
    morse = []
    if with_morse and not delta.detected:
        for k in range(r):
            c = delta_p_k(t, p, k)
            found = collapsibility_search(c, budget=budget)
            entry = {"k": k, "found": found is not None}
            if found is not None:
                entry.update(validate_matching(c, found).to_dict())
                entry["pairs"] = [list(pair) for pair in found.pairs]
            morse.append(entry)
    return DetectionReport(t, p, r, delta, hoc, morse)


@dataclass(frozen=True)
class ScanRow:
    lie_type: LieType
    prime: int
    delta_verdict: bool
    delta_k: int | None
    hocolim_verdict: bool
    status: str

    @property
    def equivalence_ok(self) -> bool:
        return self.delta_verdict == self.hocolim_verdict

    @property
    def label(self) -> str:
        return verdict_label(self.delta_verdict, self.status)


def _scan_one(job: tuple[LieType, int]) -> ScanRow:
    t, p = job
    d = detect_via_delta(t, p)
    h = detect_via_hocolim(t, p)
    return ScanRow(t, p, d.detected, d.k, h.detected, known_status(t, p))


def scan_jobs(types) -> list[tuple[LieType, int]]:
    return [(t, p) for t in types for p in sorted(prime_factors(catalog_facts(t).weyl_order))]


def conjecture_scan(types=None, jobs: int = 1) -> list[ScanRow]:
    """One row per (type, p | |W|); rows come back in input order whatever ``jobs`` is."""
    if types is None:
        types = all_types(8)
    work = scan_jobs(types)
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_scan_one, work, chunksize=1))
    else:
        rows = [_scan_one(job) for job in work]
    return rows


def scan_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["type", "group", "prime", "delta_verdict", "delta_k", "hocolim_verdict",
                "equivalence_ok", "verdict", "paper_status"])
    for row in rows:
        w.writerow([
            row.lie_type.name,
            row.lie_type.group_name,
            row.prime,
            str(row.delta_verdict).lower(),
            "" if row.delta_k is None else row.delta_k,
            str(row.hocolim_verdict).lower(),
            str(row.equivalence_ok).lower(),
            row.label,
            row.status,
        ])
    return buf.getvalue()
