"""Discrete Morse matchings on alcove complexes.

A matching pairs a face with one of its codimension-one faces.  It is a
Morse matching when the Hasse diagram, with matched edges reversed, has no
directed cycle; a Morse matching whose only unmatched face is a vertex
certifies that the complex collapses to that vertex.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources

from .alcove import AlcoveComplex, Face, delta_p_k, facet_names, relabel_names
from .lie import LieType, vertices_of


class UnknownFace(KeyError):
    """A matching names a face that is not in the complex."""


@dataclass(frozen=True)
class Matching:
    pairs: tuple[tuple[str, str], ...]  # (face, codimension-one face), catalog labels

    def __len__(self):
        return len(self.pairs)


@dataclass
class MorseCertificate:
    is_partial_matching: bool
    is_acyclic: bool
    critical: list[Face]
    problems: list[str] = field(default_factory=list)

    @property
    def collapses_to_vertex(self) -> Face | None:
        if self.is_partial_matching and self.is_acyclic and len(self.critical) == 1:
            (f,) = self.critical
            if f.dim == 0:
                return f
        return None

    def to_dict(self) -> dict:
        v = self.collapses_to_vertex
        return {
            "partial_matching": self.is_partial_matching,
            "acyclic": self.is_acyclic,
            "critical": [f.name for f in self.critical],
            "collapses_to": v.name if v else None,
            "problems": list(self.problems),
        }


def _resolve(c: AlcoveComplex, name: str) -> Face:
    try:
        return c.face(name)
    except (KeyError, ValueError):
        raise UnknownFace(f"{name!r} is not a face of {c.lie_type.name} {c.label}") from None


def _has_cycle(nodes, succ) -> bool:
    state = dict.fromkeys(nodes, 0)  # 0 new, 1 on stack, 2 done
    for root in nodes:
        if state[root]:
            continue
        stack = [(root, iter(succ[root]))]
        state[root] = 1
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                state[node] = 2
                stack.pop()
            elif state[nxt] == 1:
                return True
            elif state[nxt] == 0:
                state[nxt] = 1
                stack.append((nxt, iter(succ[nxt])))
    return False


def modified_hasse(c: AlcoveComplex, matched: dict[int, int]) -> dict[int, list[int]]:
    """Edges face -> facet, except matched pairs which point facet -> face."""
    succ: dict[int, list[int]] = {m: [] for m in c.by_mask}
    for m in c.by_mask:
        for v in vertices_of(m):
            sub = m & ~(1 << (v - 1))
            if not sub:
                continue
            if matched.get(m) == sub:
                succ[sub].append(m)
            else:
                succ[m].append(sub)
    return succ


def validate_matching(c: AlcoveComplex, m: Matching) -> MorseCertificate:
    problems = []
    used: set[int] = set()
    matched: dict[int, int] = {}
    for big_name, small_name in m.pairs:
        big, small = _resolve(c, big_name), _resolve(c, small_name)
        if small.mask & ~big.mask or big.dim != small.dim + 1:
            problems.append(f"({big.name},{small.name}) is not a codimension-one pair")
            continue
        for f in (big, small):
            if f.mask in used:
                problems.append(f"{f.name} is matched twice")
            used.add(f.mask)
        matched[big.mask] = small.mask
    succ = modified_hasse(c, matched)
    acyclic = not _has_cycle(sorted(succ), succ)
    critical = [f for f in c.faces if f.mask not in used]
    return MorseCertificate(
        is_partial_matching=not problems,
        is_acyclic=acyclic,
        critical=critical,
        problems=problems,
    )


def cone_apex(c: AlcoveComplex) -> int | None:
    """Least vertex v with sigma + v in c for every face sigma, if any."""
    if c.is_empty:
        return None
    masks = c.by_mask
    for v in range(1, c.lie_type.rank + 2):
        bit = 1 << (v - 1)
        if all(m | bit in masks for m in masks):
            return v
    return None


class _BudgetExhausted(Exception):
    pass


def collapsibility_search(c: AlcoveComplex, budget: int = 10**6) -> Matching | None:
    """Look for a sequence of elementary collapses down to one vertex.

    Free pairs are tried in lexicographic order with backtracking; states
    already shown to be dead ends are remembered.  ``None`` means no
    collapse was found within ``budget`` states, which proves nothing.
    """
    if c.is_empty:
        return None
    rank = c.lie_type.rank
    n1 = rank + 1
    dead: set[frozenset[int]] = set()
    visited = 0

    def name(mask):
        return Face(vertices_of(mask), 0, rank).name

    def free_pairs(alive: frozenset[int]):
        out = []
        for m in alive:
            cofaces = [m | (1 << b) for b in range(n1) if not m & (1 << b) and (m | (1 << b)) in alive]
            if len(cofaces) != 1:
                continue
            top = cofaces[0]
            # top must be maximal for the collapse to be elementary
            if any(not top & (1 << b) and (top | (1 << b)) in alive for b in range(n1)):
                continue
            out.append((top, m))
        out.sort(key=lambda tm: (-bin(tm[0]).count("1"), vertices_of(tm[0]), vertices_of(tm[1])))
        return out

    def rec(alive: frozenset[int], path: list):
        nonlocal visited
        visited += 1
        if visited > budget:
            raise _BudgetExhausted
        if len(alive) == 1:
            return list(path)
        if alive in dead:
            return None
        for top, m in free_pairs(alive):
            path.append((name(top), name(m)))
            found = rec(alive - {top, m}, path)
            if found is not None:
                return found
            path.pop()
        dead.add(alive)
        return None

    try:
        pairs = rec(frozenset(c.by_mask), [])
    except _BudgetExhausted:
        return None
    return None if pairs is None else Matching(tuple(pairs))


# ---------------------------------------------------------------- fixtures

@dataclass(frozen=True)
class ComplexFixture:
    """A shipped complex description; names are in the fixture's own labels."""

    lie_type: LieType
    prime: int
    k: int
    facets: tuple[str, ...]
    labels: dict = field(default_factory=dict, hash=False)  # fixture label -> catalog vertex
    critical: str | None = None
    pairs: tuple[tuple[str, str], ...] = ()

    def to_catalog(self, name: str) -> str:
        if not self.labels:
            return name
        return relabel_names([name], self.labels, self.lie_type.rank)[0]

    def from_catalog(self, name: str) -> str:
        if not self.labels:
            return name
        inverse = {v: k for k, v in self.labels.items()}
        return relabel_names([name], inverse, self.lie_type.rank)[0]

    def matching(self) -> Matching:
        return Matching(tuple((self.to_catalog(a), self.to_catalog(b)) for a, b in self.pairs))

    def complex(self) -> AlcoveComplex:
        return delta_p_k(self.lie_type, self.prime, self.k)


def parse_fixture(text: str) -> ComplexFixture:
    head: dict[str, str] = {}
    pairs = []
    in_pairs = False
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if in_pairs:
            a, b = line.split()
            pairs.append((a, b))
            continue
        key, _, rest = line.partition(" ")
        if key == "pairs":
            in_pairs = True
        else:
            head[key] = rest.strip()
    labels = {}
    if "labels" in head:
        for item in head["labels"].split():
            a, b = item.split(":")
            labels[int(a)] = int(b)
    return ComplexFixture(
        lie_type=LieType.parse(head["type"]),
        prime=int(head["prime"]),
        k=int(head["k"]),
        facets=tuple(head["facets"].split()),
        labels=labels,
        critical=head.get("critical"),
        pairs=tuple(pairs),
    )


FIXTURES = ("spin10_delta3_0", "e7_delta5_0", "e7_delta7_0", "e8_delta7_0")


def load_fixture(name: str) -> ComplexFixture:
    text = resources.files("alcovetorsion.fixtures").joinpath(f"{name}.txt").read_text()
    return parse_fixture(text)


def fixture_facets_match(fx: ComplexFixture) -> bool:
    """Facets of the computed complex, written in the fixture labels, equal the fixture's."""
    computed = [fx.from_catalog(s) for s in facet_names(fx.complex())]
    return sorted(computed) == sorted(fx.facets)

