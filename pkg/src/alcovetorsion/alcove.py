"""Faces of the Weyl alcove as colorings of the extended Dynkin diagram.

A face is named by its white vertices; the black vertices generate the
isotropy subgroup W(sigma), whose order is cached on the face.  The
subcomplex Delta_p(k) keeps the faces for which p^(k+1) does not divide
|W| / |W(sigma)|.
"""
from __future__ import annotations

import csv
import io
from collections import Counter
from dataclasses import dataclass
from functools import cached_property, lru_cache

from .lie import (
    LieType,
    black_mask_order,
    catalog_facts,
    extended_diagram,
    mask_of,
    vertices_of,
)


class AutomorphismMismatch(ValueError):
    """A supplied permutation does not preserve the extended diagram."""


def p_valuation(x: int, p: int) -> int:
    if x == 0:
        raise ValueError("valuation of zero")
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def face_name(white, rank: int) -> str:
    labels = [str(v) for v in sorted(white)]
    return "".join(labels) if rank <= 8 else ",".join(labels)


@dataclass(frozen=True)
class Face:
    white: tuple[int, ...]
    order: int  # |W(sigma)|
    rank: int

    @property
    def dim(self) -> int:
        return len(self.white) - 1

    @property
    def mask(self) -> int:
        return mask_of(self.white)

    @property
    def name(self) -> str:
        return face_name(self.white, self.rank)

    def sort_key(self):
        return (self.dim, self.white)

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class SubcomplexSpec:
    p: int
    k: int
    r: int

    def __post_init__(self):
        if self.p < 2 or any(self.p % q == 0 for q in range(2, int(self.p**0.5) + 1)):
            raise ValueError(f"{self.p} is not prime")
        if self.k < 0:
            raise ValueError("k must be non-negative")

    @classmethod
    def for_type(cls, t: LieType, p: int, k: int) -> "SubcomplexSpec":
        return cls(p=p, k=k, r=p_valuation(catalog_facts(t).weyl_order, p))

    @property
    def vacuous(self) -> bool:
        """True when p does not divide |W|, so every Delta_p(k) is the full alcove."""
        return self.r == 0


class AlcoveComplex:
    """A face-closed family of alcove faces; faces sorted by (dim, white vertices)."""

    def __init__(self, lie_type: LieType, faces, label: str = ""):
        self.lie_type = lie_type
        self.faces: tuple[Face, ...] = tuple(sorted(faces, key=Face.sort_key))
        self.label = label

    @cached_property
    def by_mask(self) -> dict[int, Face]:
        return {f.mask: f for f in self.faces}

    def __contains__(self, face) -> bool:
        mask = face if isinstance(face, int) else face.mask
        return mask in self.by_mask

    def __len__(self):
        return len(self.faces)

    def __iter__(self):
        return iter(self.faces)

    @property
    def is_empty(self) -> bool:
        return not self.faces

    @property
    def dimension(self) -> int:
        return max((f.dim for f in self.faces), default=-1)

    def faces_of_dim(self, d: int) -> list[Face]:
        return [f for f in self.faces if f.dim == d]

    def f_vector(self) -> tuple[int, ...]:
        counts = Counter(f.dim for f in self.faces)
        return tuple(counts[d] for d in range(self.dimension + 1))

    def face(self, name_or_white) -> Face:
        if isinstance(name_or_white, str):
            white = parse_face_name(name_or_white, self.lie_type.rank)
        else:
            white = tuple(name_or_white)
        try:
            return self.by_mask[mask_of(white)]
        except KeyError:
            raise KeyError(f"face {name_or_white!r} is not in the complex") from None

    def is_closed(self) -> bool:
        masks = self.by_mask
        for m in masks:
            sub = (m - 1) & m
            while sub:
                if sub not in masks:
                    return False
                sub = (sub - 1) & m
        return True

    def __repr__(self):
        return f"AlcoveComplex({self.lie_type}, {self.label or 'faces'}, f={self.f_vector()})"


def parse_face_name(name: str, rank: int | None = None) -> tuple[int, ...]:
    """Inverse of :func:`face_name`; pass ``rank`` so that ``"10"`` reads as one vertex above rank 8."""
    name = name.strip()
    if "," in name or (rank is not None and rank > 8):
        return tuple(sorted(int(x) for x in name.split(",")))
    return tuple(sorted(int(ch) for ch in name))


@lru_cache(maxsize=None)
def full_alcove(t: LieType) -> AlcoveComplex:
    g = extended_diagram(t)
    full = g.full_mask
    faces = [
        Face(white=vertices_of(m), order=black_mask_order(g, full & ~m), rank=t.rank)
        for m in range(1, full + 1)
    ]
    return AlcoveComplex(t, faces, label="Delta")


def face_index(t: LieType, face: Face) -> int:
    """Index |W| / |W(sigma)|."""
    return catalog_facts(t).weyl_order // face.order


@lru_cache(maxsize=None)
def _delta_p_k(t: LieType, p: int, k: int) -> AlcoveComplex:
    order = catalog_facts(t).weyl_order
    faces = [f for f in full_alcove(t) if p_valuation(order // f.order, p) <= k]
    return AlcoveComplex(t, faces, label=f"Delta_{p}({k})")


def delta_p_k(t: LieType, spec: SubcomplexSpec | int, k: int | None = None) -> AlcoveComplex:
    """Delta_p(k); accepts a :class:`SubcomplexSpec` or ``(p, k)``."""
    if isinstance(spec, SubcomplexSpec):
        p, k = spec.p, spec.k
    else:
        p = spec
        SubcomplexSpec.for_type(t, p, k)
    return _delta_p_k(t, p, k)


def euler_characteristic(c: AlcoveComplex) -> int:
    return sum((-1) ** d * n for d, n in enumerate(c.f_vector()))


def facets(c: AlcoveComplex) -> list[Face]:
    masks = c.by_mask
    n = c.lie_type.rank + 1
    out = []
    for f in c.faces:
        m = f.mask
        if not any(not m & (1 << b) and (m | (1 << b)) in masks for b in range(n)):
            out.append(f)
    return sorted(out, key=lambda f: f.white)


def facet_names(c: AlcoveComplex) -> list[str]:
    return [f.name for f in facets(c)]


def relabel_names(names, mapping: dict[int, int], rank: int) -> list[str]:
    """Rename faces through a vertex map, e.g. into a figure's own numbering."""
    return sorted(face_name([mapping[v] for v in parse_face_name(s, rank)], rank) for s in names)


def rotation(t: LieType, step: int = 1) -> dict[int, int]:
    """Cyclic rotation of the type-A cycle."""
    if t.family != "A":
        raise ValueError("rotation is defined for type A cycles")
    n1 = t.rank + 1
    return {v: (v - 1 + step) % n1 + 1 for v in range(1, n1 + 1)}


def e6_rotation() -> dict[int, int]:
    """Order-3 symmetry of the extended E6 diagram about its branch vertex 3."""
    return {1: 5, 5: 7, 7: 1, 2: 4, 4: 6, 6: 2, 3: 3}


def automorphism_orbits(t: LieType, c: AlcoveComplex, generators=()) -> dict[int, dict[int, int]]:
    """Orbit sizes of faces under the group generated by ``generators``.

    Returns ``{dim: {orbit_size: number_of_orbits}}``.  With no generators
    the group is trivial and every face is its own orbit.
    """
    g = extended_diagram(t)
    gens = [dict(p) for p in generators]
    for perm in gens:
        if not g.is_automorphism(perm):
            raise AutomorphismMismatch(f"{perm} is not an automorphism of the {t} diagram")
    masks = set(c.by_mask)
    seen: set[int] = set()
    table: dict[int, Counter] = {}
    for f in c.faces:
        if f.mask in seen:
            continue
        orbit = {f.mask}
        frontier = [f.mask]
        while frontier:
            m = frontier.pop()
            for perm in gens:
                img = mask_of(perm[v] for v in vertices_of(m))
                if img not in orbit:
                    if img not in masks:
                        raise AutomorphismMismatch(f"complex is not invariant under {perm}")
                    orbit.add(img)
                    frontier.append(img)
        seen |= orbit
        table.setdefault(f.dim, Counter())[len(orbit)] += 1
    return {d: dict(sorted(cnt.items())) for d, cnt in sorted(table.items())}


def colored_diagram_dot(t: LieType, white, title: str = "") -> str:
    """DOT for a colored extended diagram: white nodes unfilled, black filled."""
    g = extended_diagram(t)
    white = set(white)
    lines = [f'graph "{title or t.name}" {{', "  node [shape=circle, style=filled];"]
    for v in g.vertices:
        fill = "white" if v in white else "black"
        font = "black" if v in white else "white"
        lines.append(f'  {v} [fillcolor={fill}, fontcolor={font}];')
    for i, j, m in g.edges:
        attr = f' [label="{m}"]' if m > 1 else ""
        lines.append(f"  {i} -- {j}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def complex_dot(c: AlcoveComplex) -> str:
    """DOT of the 1-skeleton of a complex on the diagram vertex labels."""
    lines = [f'graph "{c.lie_type.name} {c.label}" {{']
    for f in c.faces_of_dim(0):
        lines.append(f"  {f.white[0]};")
    for f in c.faces_of_dim(1):
        lines.append(f"  {f.white[0]} -- {f.white[1]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def f_vector_csv(rows) -> str:
    """CSV table; ``rows`` yields ``(type, p, k, complex)``."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["type", "prime", "k", "dim", "faces", "euler"])
    for t, p, k, c in rows:
        chi = euler_characteristic(c)
        for d, n in enumerate(c.f_vector()):
            w.writerow([t.name, p, k, d, n, chi])
    return buf.getvalue()
