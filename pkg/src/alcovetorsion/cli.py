"""Command-line interface: ``alcovetorsion <verb> [options]``.

Exit status is 0 on success, 1 when a computation disagrees with the
statement it checks, and 2 on a usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import checks
from ._accel import backend_name
from .alcove import (
    colored_diagram_dot,
    complex_dot,
    delta_p_k,
    euler_characteristic,
    f_vector_csv,
    facet_names,
    full_alcove,
    p_valuation,
)
from .errors import ComputationMismatch
from .homology import (
    integral_homology,
    mod_p_betti,
    prime_factors,
    q_m,
    simplicial_chain_complex,
    weighted_hocolim_complex,
)
from .kernels import CapExceeded
from .lie import LieType, all_types, catalog_facts, extended_diagram
from .morse import FIXTURES, collapsibility_search, cone_apex, load_fixture, validate_matching
from .torsion import conjecture_scan, detection_report, scan_csv, top_homology
from .weyl_series import DEFAULT_CAP, default_truncation, poincare_series, series_csv

FORMATS = ("json", "csv", "dot", "text")


class UsageError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, int(p**0.5) + 1))


def _lie_type(args) -> LieType:
    if not args.type:
        raise UsageError("--type is required")
    try:
        return LieType.parse(args.type, args.rank)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _prime(args, t: LieType, required: bool = True) -> int | None:
    if args.prime is None:
        if required:
            raise UsageError("--prime is required")
        return None
    if not _is_prime(args.prime):
        raise UsageError(f"--prime {args.prime} is not prime")
    return args.prime


def _k(args, t: LieType, p: int) -> int:
    r = p_valuation(catalog_facts(t).weyl_order, p)
    k = 0 if args.k is None else args.k
    if k < 0:
        raise UsageError("-k must be non-negative")
    if r and k > r:
        raise UsageError(f"-k {k} exceeds r = {r} for p = {p}")
    return k


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _choose(args, allowed, default):
    fmt = args.format or default
    if fmt not in allowed:
        raise UsageError(f"--format {fmt} is not available here; choose from {', '.join(allowed)}")
    return fmt


# ---------------------------------------------------------------- verbs

def cmd_facts(args) -> tuple[int, str]:
    t = _lie_type(args)
    f = catalog_facts(t)
    g = extended_diagram(t)
    fmt = _choose(args, ("json", "text", "dot"), "json")
    if fmt == "dot":
        return 0, colored_diagram_dot(t, g.vertices, title=t.name)
    data = {
        "type": t.name,
        "group": t.group_name,
        "rank": f.rank,
        "dim": f.dim,
        "weyl_order": f.weyl_order,
        "degrees": list(f.degrees),
        "edges": [list(e) for e in g.edges],
        "highest_root_vertex": g.highest_root_vertex,
    }
    if fmt == "json":
        return 0, _dump(data)
    lines = [f"{k}: {v}" for k, v in data.items()]
    return 0, "\n".join(lines) + "\n"


def cmd_complex(args) -> tuple[int, str]:
    t = _lie_type(args)
    p = _prime(args, t, required=False)
    if p is None:
        c, k = full_alcove(t), None
    else:
        k = _k(args, t, p)
        c = delta_p_k(t, p, k)
    fmt = _choose(args, FORMATS, "json")
    if fmt == "dot":
        return 0, complex_dot(c)
    if fmt == "csv":
        return 0, f_vector_csv([(t, p or "", "" if k is None else k, c)])
    data = {
        "type": t.name,
        "prime": p,
        "k": k,
        "f_vector": list(c.f_vector()),
        "euler": euler_characteristic(c),
        "facets": facet_names(c),
        "empty": c.is_empty,
    }
    if fmt == "json":
        return 0, _dump(data)
    return 0, "\n".join(f"{k_}: {v}" for k_, v in data.items()) + "\n"


def cmd_homology(args) -> tuple[int, str]:
    t = _lie_type(args)
    p = _prime(args, t, required=False)
    fmt = _choose(args, ("json", "text"), "text")
    if p is not None:
        k = _k(args, t, p)
        cc = simplicial_chain_complex(delta_p_k(t, p, k), reduced=True)
        h = integral_homology(cc)
        betti = mod_p_betti(cc, p)
        data = {
            "type": t.name,
            "complex": f"Delta_{p}({k})",
            "reduced": True,
            "integral": {str(i): str(g) for i, g in sorted(h.groups.items())},
            "betti_mod_p": {str(i): b for i, b in sorted(betti.items())},
        }
    else:
        m = 2 if args.m is None else args.m
        if m < 2:
            raise UsageError("--m must be at least 2")
        parity = "even" if m % 2 == 0 else "odd"
        h = integral_homology(weighted_hocolim_complex(t, parity))
        q = q_m(t, m)
        data = {
            "type": t.name,
            "complex": f"weighted-{parity}",
            "m": m,
            "q_m": q,
            "levels": {str(i): str(g) for i, g in sorted(h.groups.items())},
            "degrees": {str(q + i): str(g) for i, g in sorted(h.groups.items())},
        }
        try:
            data["top"] = top_homology(t, m).to_dict()
        except ComputationMismatch as exc:
            data["top"] = {"mismatch": str(exc)}
            return 1, _dump(data)
    if fmt == "json":
        return 0, _dump(data)
    out = [f"{data['type']} {data['complex']}"]
    for key in ("integral", "levels"):
        if key in data:
            out += [f"  H_{i} = {g}" for i, g in data[key].items()]
    if "betti_mod_p" in data:
        out.append("  mod-p Betti: " + " ".join(f"{i}:{b}" for i, b in data["betti_mod_p"].items()))
    return 0, "\n".join(out) + "\n"


def cmd_detect(args) -> tuple[int, str]:
    t = _lie_type(args)
    p = _prime(args, t, required=False)
    primes = [p] if p is not None else sorted(prime_factors(catalog_facts(t).weyl_order))
    reports = [detection_report(t, q) for q in primes]
    status = 0 if all(r.equivalence_ok for r in reports) else 1
    fmt = _choose(args, ("json", "csv"), "json")
    if fmt == "csv":
        rows = conjecture_scan([t])
        rows = [r for r in rows if r.prime in primes]
        return status, scan_csv(rows)
    if len(reports) == 1:
        return status, reports[0].to_json()
    return status, _dump([r.to_dict() for r in reports])


def cmd_verify(args) -> tuple[int, str]:
    max_rank = 8 if args.max_rank is None else args.max_rank
    if not args.all:
        raise UsageError("verify needs --all")
    if not 1 <= max_rank <= 8:
        raise UsageError("--max-rank must be between 1 and 8")
    results = checks.run_all(max_rank=max_rank, jobs=args.jobs, seed=args.seed or 0)
    lines = [r.line() for r in results]
    passed = sum(r.passed for r in results)
    lines.append(f"{passed}/{len(results)} checks passed (max rank {max_rank}, backend {backend_name()})")
    return (0 if passed == len(results) else 1), "\n".join(lines) + "\n"


def cmd_series(args) -> tuple[int, str]:
    t = _lie_type(args)
    m = 2 if args.m is None else args.m
    if m < 1:
        raise UsageError("--m must be positive")
    cap = DEFAULT_CAP if args.cap is None else args.cap
    N = default_truncation(t, m) if args.truncate is None else args.truncate
    try:
        s = poincare_series(t, m, N, cap=cap)
    except CapExceeded as exc:
        raise UsageError(f"{exc}; raise --cap to at least {catalog_facts(t).weyl_order}") from None
    fmt = _choose(args, ("json", "csv", "text"), "text")
    if fmt == "csv":
        return 0, series_csv([(t, m, s)])
    if fmt == "json":
        return 0, _dump({"type": t.name, "m": m, "truncation": N, "coefficients": s.as_integers()})
    return 0, f"{t.name} m={m}: {s}\n"


def cmd_morse(args) -> tuple[int, str]:
    t = _lie_type(args)
    p = _prime(args, t)
    k = _k(args, t, p)
    c = delta_p_k(t, p, k)
    data = {"type": t.name, "prime": p, "k": k, "cone_apex": cone_apex(c)}
    fixture = next(
        (fx for fx in map(load_fixture, FIXTURES) if (fx.lie_type, fx.prime, fx.k) == (t, p, k) and fx.pairs),
        None,
    )
    if fixture is not None:
        cert = validate_matching(c, fixture.matching())
        data["source"] = "fixture"
    else:
        found = collapsibility_search(c)
        cert = validate_matching(c, found) if found is not None else None
        data["source"] = "search"
    data["certificate"] = cert.to_dict() if cert else None
    fmt = _choose(args, ("json", "text"), "json")
    if fmt == "json":
        return 0, _dump(data)
    v = cert.collapses_to_vertex if cert else None
    verdict = f"collapses to vertex {v.name}" if v else "no collapse found (inconclusive)"
    return 0, f"{t.name} Delta_{p}({k}): {verdict}; cone apex {data['cone_apex']}\n"


def cmd_report(args) -> tuple[int, str]:
    max_rank = 8 if args.max_rank is None else args.max_rank
    types = [_lie_type(args)] if args.type else all_types(max_rank)
    rows = conjecture_scan(types, jobs=args.jobs)
    status = 0 if all(r.equivalence_ok for r in rows) else 1
    fmt = _choose(args, ("csv", "json"), "csv")
    if fmt == "csv":
        return status, scan_csv(rows)
    return status, _dump([
        {
            "type": r.lie_type.name,
            "group": r.lie_type.group_name,
            "prime": r.prime,
            "delta_verdict": r.delta_verdict,
            "delta_k": r.delta_k,
            "hocolim_verdict": r.hocolim_verdict,
            "equivalence_ok": r.equivalence_ok,
            "verdict": r.label,
            "paper_status": r.status,
        }
        for r in rows
    ])


VERBS = {
    "facts": cmd_facts,
    "complex": cmd_complex,
    "homology": cmd_homology,
    "detect": cmd_detect,
    "verify": cmd_verify,
    "series": cmd_series,
    "morse": cmd_morse,
    "report": cmd_report,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="alcovetorsion", description=__doc__.splitlines()[0])
    ap.add_argument("verb", choices=sorted(VERBS))
    ap.add_argument("--type", help="Lie type, e.g. E7, A3, SU(4), Spin(10), Sp(3)")
    ap.add_argument("--rank", type=int, help="rank for the classical families when --type is a letter")
    ap.add_argument("--prime", type=int)
    ap.add_argument("-k", type=int)
    ap.add_argument("--m", type=int, help="number of commuting elements")
    ap.add_argument("--truncate", type=int, help="highest degree kept in a series")
    ap.add_argument("--cap", type=int, help=f"largest Weyl group to enumerate (default {DEFAULT_CAP})")
    ap.add_argument("--format", choices=FORMATS)
    ap.add_argument("--out", type=Path, help="write output here instead of stdout")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--max-rank", type=int)
    ap.add_argument("--seed", type=int, help="seed for the randomized matrix checks in verify")
    ap.add_argument("--all", action="store_true", help="run every check (verify)")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.jobs < 1:
        ap.error("--jobs must be at least 1")
    try:
        status, text = VERBS[args.verb](args)
    except UsageError as exc:
        ap.print_usage(sys.stderr)
        print(f"{ap.prog}: error: {exc}", file=sys.stderr)
        return 2
    except ComputationMismatch as exc:
        print(f"mismatch: {exc}", file=sys.stderr)
        return 1
    if args.out:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
