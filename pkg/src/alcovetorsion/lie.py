"""Catalog of compact simply-connected simple Lie types.

Numeric facts (rank, dimension, Weyl order, characteristic degrees), the
extended Dynkin diagram of each type with a fixed vertex numbering, and
recognition of the finite Dynkin diagrams that appear as black components
of a colored extended diagram.

Vertices are numbered 1..n+1.  A coloring is stored as a bitmask over the
vertices, vertex ``v`` being bit ``v - 1``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from math import factorial, prod

FAMILIES = ("A", "B", "C", "D", "G2", "F4", "E6", "E7", "E8")
EXCEPTIONAL_RANKS = {"G2": 2, "F4": 4, "E6": 6, "E7": 7, "E8": 8}
MIN_RANK = {"A": 1, "B": 2, "C": 3, "D": 4}

GROUP_NAMES = {"A": "SU({})", "B": "Spin({})", "C": "Sp({})", "D": "Spin({})"}


class UnclassifiableSubgraph(ValueError):
    """Raised when an induced subgraph is not a finite Dynkin diagram."""


@dataclass(frozen=True, order=True)
class LieType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family in EXCEPTIONAL_RANKS:
            if self.rank != EXCEPTIONAL_RANKS[self.family]:
                raise ValueError(f"{self.family} has rank {EXCEPTIONAL_RANKS[self.family]}, got {self.rank}")
        elif self.family in MIN_RANK:
            if not isinstance(self.rank, int) or self.rank < MIN_RANK[self.family]:
                raise ValueError(f"type {self.family} needs rank >= {MIN_RANK[self.family]}, got {self.rank}")
        else:
            raise ValueError(f"unknown Lie family {self.family!r}")

    @classmethod
    def parse(cls, text: str, rank: int | None = None) -> "LieType":
        """Parse ``"E7"``, ``"A3"``, ``"D"`` + rank, or group names like ``"SU(3)"``."""
        s = text.strip().replace(" ", "")
        up = s.upper()
        if up in EXCEPTIONAL_RANKS:
            return cls(up, EXCEPTIONAL_RANKS[up])
        m = re.fullmatch(r"(SU|SPIN|SP)\((\d+)\)", up)
        if m:
            group, k = m.group(1), int(m.group(2))
            if group == "SU":
                return cls("A", k - 1)
            if group == "SP":
                return cls("C", k) if k >= 3 else cls("B", k)
            if k % 2:
                return cls("B", (k - 1) // 2)
            return cls("D", k // 2)
        m = re.fullmatch(r"([ABCD])(\d*)", up)
        if m:
            if m.group(2):
                return cls(m.group(1), int(m.group(2)))
            if rank is None:
                raise ValueError(f"type {up} needs a rank")
            return cls(m.group(1), rank)
        raise ValueError(f"cannot parse Lie type {text!r}")

    @property
    def name(self) -> str:
        if self.family in EXCEPTIONAL_RANKS:
            return self.family
        return f"{self.family}{self.rank}"

    @property
    def group_name(self) -> str:
        if self.family in EXCEPTIONAL_RANKS:
            return self.family
        n = self.rank
        size = {"A": n + 1, "B": 2 * n + 1, "C": n, "D": 2 * n}[self.family]
        return GROUP_NAMES[self.family].format(size)

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class GroupFacts:
    rank: int
    dim: int
    weyl_order: int
    degrees: tuple[int, ...]


@dataclass(frozen=True)
class DynkinGraph:
    """Extended Dynkin diagram on vertices 1..n+1.

    ``edges`` holds ``(i, j, multiplicity)`` with ``i < j``.
    """
    lie_type: LieType
    edges: tuple[tuple[int, int, int], ...]
    highest_root_vertex: int

    @property
    def num_vertices(self) -> int:
        return self.lie_type.rank + 1

    @property
    def vertices(self) -> range:
        return range(1, self.num_vertices + 1)

    @property
    def full_mask(self) -> int:
        return (1 << self.num_vertices) - 1

    def bond(self, i: int, j: int) -> int:
        return self._bonds.get((min(i, j), max(i, j)), 0)

    @property
    def _bonds(self) -> dict:
        return _bond_table(self)

    def neighbors(self, v: int) -> list[int]:
        return _adjacency(self)[v]

    def is_automorphism(self, perm: dict[int, int]) -> bool:
        if sorted(perm) != list(self.vertices) or sorted(perm.values()) != list(self.vertices):
            return False
        return all(self.bond(perm[i], perm[j]) == m for i, j, m in self.edges)


@lru_cache(maxsize=None)
def _bond_table(g: DynkinGraph) -> dict:
    return {(i, j): m for i, j, m in g.edges}


@lru_cache(maxsize=None)
def _adjacency(g: DynkinGraph) -> dict:
    adj = {v: [] for v in g.vertices}
    for i, j, _ in g.edges:
        adj[i].append(j)
        adj[j].append(i)
    return {v: sorted(ns) for v, ns in adj.items()}


@dataclass(frozen=True)
class ColoredDiagram:
    graph: DynkinGraph
    black: frozenset

    def __post_init__(self):
        if not set(self.black) <= set(self.graph.vertices):
            raise ValueError("black vertices outside the diagram")
        if len(self.black) == self.graph.num_vertices:
            raise ValueError("a colored diagram needs at least one white vertex")

    @property
    def white(self) -> frozenset:
        return frozenset(self.graph.vertices) - self.black


@dataclass(frozen=True)
class ComponentType:
    family: str  # "A", "B/C", "D", "E6", "E7", "E8", "F4", "G2"
    rank: int

    @property
    def weyl_order(self) -> int:
        return finite_weyl_order(self.family, self.rank)

    def __str__(self):
        if self.family in ("A", "B/C", "D"):
            return f"{self.family}{self.rank}"
        return self.family


def finite_weyl_order(family: str, rank: int) -> int:
    if family == "A":
        return factorial(rank + 1)
    if family in ("B", "C", "B/C"):
        return 2**rank * factorial(rank)
    if family == "D":
        return 2 ** (rank - 1) * factorial(rank)
    return {"G2": 12, "F4": 1152, "E6": 51840, "E7": 2903040, "E8": 696729600}[family]


_EXCEPTIONAL_FACTS = {
    "G2": (14, (2, 6)),
    "F4": (52, (2, 6, 8, 12)),
    "E6": (78, (2, 5, 6, 8, 9, 12)),
    "E7": (133, (2, 6, 8, 10, 12, 14, 18)),
    "E8": (248, (2, 8, 12, 14, 18, 20, 24, 30)),
}


def catalog_facts(t: LieType) -> GroupFacts:
    n = t.rank
    if t.family == "A":
        dim, degrees = n * (n + 2), tuple(range(2, n + 2))
    elif t.family in ("B", "C"):
        dim, degrees = n * (2 * n + 1), tuple(range(2, 2 * n + 1, 2))
    elif t.family == "D":
        dim, degrees = n * (2 * n - 1), tuple(sorted((*range(2, 2 * n - 1, 2), n)))
    else:
        dim, degrees = _EXCEPTIONAL_FACTS[t.family]
    return GroupFacts(rank=n, dim=dim, weyl_order=finite_weyl_order(t.family, n), degrees=degrees)


def _path(vertices, mult=1):
    return [(a, b, mult) for a, b in zip(vertices, vertices[1:])]


@lru_cache(maxsize=None)
def extended_diagram(t: LieType) -> DynkinGraph:
    """Extended Dynkin diagram with the catalog numbering (see docs/catalog.md)."""
    n = t.rank
    if t.family == "A":
        if n == 1:
            edges, top = [(1, 2, 4)], 2
        else:
            edges, top = _path(list(range(1, n + 2))) + [(1, n + 1, 1)], n + 1
    elif t.family == "B" and n >= 3:
        edges = [(1, 3, 1), (2, 3, 1)] + _path(list(range(3, n + 1))) + [(n, n + 1, 2)]
        top = 1
    elif t.family in ("B", "C"):
        edges = [(1, 2, 2)] + _path(list(range(2, n + 1))) + [(n, n + 1, 2)]
        top = 1
    elif t.family == "D":
        edges = [(1, 3, 1), (2, 3, 1)] + _path(list(range(3, n))) + [(n - 1, n, 1), (n - 1, n + 1, 1)]
        top = 1
    elif t.family == "G2":
        edges, top = [(1, 2, 3), (2, 3, 1)], 3
    elif t.family == "F4":
        edges, top = [(1, 2, 1), (2, 3, 1), (3, 4, 2), (4, 5, 1)], 1
    elif t.family == "E6":
        edges, top = _path([1, 2, 3, 4, 5]) + _path([3, 6, 7]), 7
    elif t.family == "E7":
        edges, top = _path(list(range(1, 8))) + [(4, 8, 1)], 1
    else:
        edges, top = _path(list(range(1, 9))) + [(6, 9, 1)], 1
    edges = tuple(sorted((min(i, j), max(i, j), m) for i, j, m in edges))
    return DynkinGraph(lie_type=t, edges=edges, highest_root_vertex=top)


def mask_of(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << (v - 1)
    return m


def vertices_of(mask: int) -> tuple[int, ...]:
    out = []
    v = 1
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def _components_of_mask(g: DynkinGraph, mask: int) -> list[tuple[int, ...]]:
    adj = _adjacency(g)
    remaining = set(vertices_of(mask))
    comps = []
    for start in sorted(remaining):
        if start not in remaining:
            continue
        stack, comp = [start], []
        remaining.discard(start)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adj[v]:
                if w in remaining:
                    remaining.discard(w)
                    stack.append(w)
        comps.append(tuple(sorted(comp)))
    return comps


def black_components(c: ColoredDiagram) -> list[tuple[int, ...]]:
    """Connected components of the subgraph induced on the black vertices."""
    return _components_of_mask(c.graph, mask_of(c.black))


def classify_component(g: DynkinGraph, vertices) -> ComponentType:
    vs = sorted(set(vertices))
    k = len(vs)
    if k == 0:
        raise UnclassifiableSubgraph("empty subgraph")
    inside = set(vs)
    edges = [(i, j, m) for i, j, m in g.edges if i in inside and j in inside]
    if k == 1:
        return ComponentType("A", 1)
    if len(edges) != k - 1 or len(_components_of_mask(g, mask_of(vs))) != 1:
        raise UnclassifiableSubgraph(f"vertices {vs} do not induce a tree")
    deg = {v: 0 for v in vs}
    for i, j, _ in edges:
        deg[i] += 1
        deg[j] += 1
    mults = sorted(m for _, _, m in edges)
    if mults[-1] == 4:
        raise UnclassifiableSubgraph("affine A1 bond cannot appear in a proper subgraph")
    if mults[-1] == 3:
        if k == 2:
            return ComponentType("G2", 2)
        raise UnclassifiableSubgraph(f"triple bond inside a {k}-vertex subgraph")
    branch = [v for v in vs if deg[v] >= 3]
    if mults[-1] == 2:
        if branch or mults.count(2) > 1:
            raise UnclassifiableSubgraph(f"vertices {vs}: bad double-bond shape")
        order = _path_order(vs, edges)
        pos = next(idx for idx, (a, b) in enumerate(zip(order, order[1:])) if g.bond(a, b) == 2)
        if pos in (0, k - 2):
            return ComponentType("B/C", k)
        if k == 4:
            return ComponentType("F4", 4)
        raise UnclassifiableSubgraph(f"vertices {vs}: double bond in the interior")
    if not branch:
        return ComponentType("A", k)
    if len(branch) > 1 or deg[branch[0]] != 3:
        raise UnclassifiableSubgraph(f"vertices {vs}: more than one branch point")
    arms = sorted(_arm_lengths(g, branch[0], inside))
    if arms[:2] == [1, 1]:
        return ComponentType("D", k)
    if arms in ([1, 2, 2], [1, 2, 3], [1, 2, 4]):
        return ComponentType(f"E{k}", k)
    raise UnclassifiableSubgraph(f"vertices {vs}: star with arms {arms}")


def _path_order(vs, edges):
    adj = {v: [] for v in vs}
    for i, j, _ in edges:
        adj[i].append(j)
        adj[j].append(i)
    start = min(v for v in vs if len(adj[v]) == 1)
    order, prev = [start], None
    while len(order) < len(vs):
        nxt = [w for w in adj[order[-1]] if w != prev][0]
        prev = order[-1]
        order.append(nxt)
    return order


def _arm_lengths(g, center, inside):
    lengths = []
    for first in g.neighbors(center):
        if first not in inside:
            continue
        length, prev, cur = 1, center, first
        while True:
            nxt = [w for w in g.neighbors(cur) if w in inside and w != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        lengths.append(length)
    return lengths


@lru_cache(maxsize=None)
def _order_of_black_mask(g: DynkinGraph, black_mask: int) -> int:
    return prod(classify_component(g, comp).weyl_order for comp in _components_of_mask(g, black_mask))


def black_mask_order(g: DynkinGraph, black_mask: int) -> int:
    """|W_Gamma| for the coloring whose black vertices are ``black_mask``."""
    return _order_of_black_mask(g, black_mask)


def subgroup_order(c: ColoredDiagram) -> int:
    return _order_of_black_mask(c.graph, mask_of(c.black))


def finite_cartan_matrix(t: LieType) -> list[list[int]]:
    """Cartan matrix of the finite diagram (extended diagram minus the highest root).

    Bond direction is not tracked by the catalog, so the long/short choice
    for multiple bonds is fixed arbitrarily; the Weyl group does not depend on it.
    """
    g = extended_diagram(t)
    verts = [v for v in g.vertices if v != g.highest_root_vertex]
    index = {v: i for i, v in enumerate(verts)}
    n = len(verts)
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j, m in g.edges:
        if i not in index or j not in index:
            continue
        r, s = index[i], index[j]
        a[r][s], a[s][r] = -1, -m
    return a


def all_types(max_rank: int, min_rank: int = 1) -> list[LieType]:
    """Every catalog type with ``min_rank <= rank <= max_rank``, in a fixed order."""
    out = []
    for fam in ("A", "B", "C", "D"):
        for n in range(max(MIN_RANK[fam], min_rank), max_rank + 1):
            out.append(LieType(fam, n))
    for fam, n in EXCEPTIONAL_RANKS.items():
        if min_rank <= n <= max_rank:
            out.append(LieType(fam, n))
    return out
