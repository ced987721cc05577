"""Exact chain-complex machinery over the integers and over F_p.

Matrices are sparse maps ``(row, col) -> int`` with Python integers, so
nothing here ever overflows or rounds.  Only the F_p rank goes through the
numeric kernels, after reducing entries mod p.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import kernels
from .alcove import AlcoveComplex, Face, full_alcove
from .lie import LieType, catalog_facts


class IntegerMatrix:
    """Sparse exact integer matrix."""

    def __init__(self, rows: int, cols: int, entries=None):
        self.rows = rows
        self.cols = cols
        self.entries: dict[tuple[int, int], int] = {}
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError(f"entry {(i, j)} outside a {rows}x{cols} matrix")
            if v:
                self.entries[(i, j)] = int(v)

    @classmethod
    def from_dense(cls, rows_list) -> "IntegerMatrix":
        rows_list = [list(r) for r in rows_list]
        m = len(rows_list)
        n = len(rows_list[0]) if m else 0
        return cls(m, n, {(i, j): v for i, r in enumerate(rows_list) for j, v in enumerate(r) if v})

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def to_numpy_mod(self, p: int) -> np.ndarray:
        a = np.zeros((self.rows, self.cols), dtype=np.int64)
        for (i, j), v in self.entries.items():
            a[i, j] = v % p
        return a

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        by_row: dict[int, list] = {}
        for (k, j), v in other.entries.items():
            by_row.setdefault(k, []).append((j, v))
        acc: dict[tuple[int, int], int] = {}
        for (i, k), a in self.entries.items():
            for j, b in by_row.get(k, ()):
                acc[(i, j)] = acc.get((i, j), 0) + a * b
        return IntegerMatrix(self.rows, other.cols, acc)

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other):
        return isinstance(other, IntegerMatrix) and self.shape == other.shape and self.entries == other.entries

    def __repr__(self):
        return f"IntegerMatrix({self.rows}x{self.cols}, nnz={len(self.entries)})"


def _as_dense(a) -> list[list[int]]:
    if isinstance(a, IntegerMatrix):
        return a.to_dense()
    return [[int(x) for x in row] for row in a]


# ---------------------------------------------------------------- Smith form

@dataclass
class SmithForm:
    diagonal: list[int]
    left: list[list[int]]
    right: list[list[int]]


def smith_normal_form(a) -> SmithForm:
    """Smith normal form with unimodular transforms, ``left @ a @ right = diag``.

    Pivot is the entry of least nonzero absolute value, ties broken by lowest
    row and then lowest column.  Zeros are trimmed from ``diagonal``.
    """
    A = _as_dense(a)
    m = len(A)
    n = len(A[0]) if m else (a.cols if isinstance(a, IntegerMatrix) else 0)
    L = [[int(i == j) for j in range(m)] for i in range(m)]
    R = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        L[i], L[j] = L[j], L[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in R:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        A[dst] = [x + q * y for x, y in zip(A[dst], A[src])]
        L[dst] = [x + q * y for x, y in zip(L[dst], L[src])]

    def add_col(dst, src, q):
        for row in A:
            row[dst] += q * row[src]
        for row in R:
            row[dst] += q * row[src]

    diag = []
    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                row = A[i]
                for j in range(t, n):
                    v = row[j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
            if best is None:
                break
            _, i, j = best
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            piv = A[t][t]
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // piv))
                    clean = clean and A[i][t] == 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // piv))
                    clean = clean and A[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, m) if any(A[i][j] % piv for j in range(t + 1, n))),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if best is None:
            break
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            L[t] = [-x for x in L[t]]
        diag.append(A[t][t])
    return SmithForm(diagonal=diag, left=L, right=R)


def determinant(a) -> int:
    """Exact determinant of a square matrix by fraction-free (Bareiss) elimination."""
    A = _as_dense(a)
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def _dense_invariant_factors(A: list[list[int]]) -> list[int]:
    # least-|entry| pivot with remainder steps; no transforms kept
    m = len(A)
    n = len(A[0]) if m else 0
    diag = []
    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                row = A[i]
                for j in range(t, n):
                    v = row[j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
                        if best[0] == 1:
                            break
                if best is not None and best[0] == 1:
                    break
            if best is None:
                return diag
            _, i, j = best
            A[t], A[i] = A[i], A[t]
            if j != t:
                for row in A:
                    row[t], row[j] = row[j], row[t]
            piv = A[t][t]
            prow = A[t]
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // piv
                    A[i] = [x - q * y for x, y in zip(A[i], prow)]
                    clean = clean and A[i][t] == 0
            for j in range(t + 1, n):
                if prow[j]:
                    q = prow[j] // piv
                    for row in A:
                        if row[t]:
                            row[j] -= q * row[t]
                    clean = clean and prow[j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, m) if any(x % piv for x in A[i][t + 1 :])),
                None,
            )
            if bad is None:
                break
            A[t] = [x + y for x, y in zip(A[t], A[bad])]
        diag.append(abs(A[t][t]))
    return diag


def invariant_factors(a) -> list[int]:
    """Nonzero Smith diagonal (with 1s), computed without transforms.

    Unit pivots are eliminated sparsely first; whatever remains is reduced
    densely.  Agrees with :func:`smith_normal_form` by uniqueness.
    """
    mat = a if isinstance(a, IntegerMatrix) else IntegerMatrix.from_dense(a)
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, set] = {}
    for (i, j), v in mat.entries.items():
        rows.setdefault(i, {})[j] = v
        cols.setdefault(j, set()).add(i)
    units = 0
    progress = True
    while progress:
        progress = False
        for r in sorted(rows, key=lambda i: (len(rows[i]), i)):
            if r not in rows:
                continue
            row = rows[r]
            cand = [j for j, v in row.items() if v in (1, -1)]
            if not cand:
                continue
            c = min(cand, key=lambda j: (len(cols[j]), j))
            u = row[c]
            for i in sorted(cols[c] - {r}):
                other = rows[i]
                f = other[c] * u
                for j, v in row.items():
                    nv = other.get(j, 0) - f * v
                    if nv:
                        if j not in other:
                            cols[j].add(i)
                        other[j] = nv
                    elif j in other:
                        del other[j]
                        cols[j].discard(i)
                if not other:
                    del rows[i]
            for j in row:
                cols[j].discard(r)
            del rows[r]
            units += 1
            progress = True
    live_cols = sorted({j for row in rows.values() for j in row})
    index = {j: k for k, j in enumerate(live_cols)}
    dense = [[0] * len(live_cols) for _ in rows]
    for k, i in enumerate(sorted(rows)):
        for j, v in rows[i].items():
            dense[k][index[j]] = v
    return [1] * units + _dense_invariant_factors(dense)


# ---------------------------------------------------------------- chain complexes

@dataclass
class ChainComplex:
    """Graded free abelian groups with boundaries ``d[i]: C_i -> C_(i-1)``."""
    bases: dict[int, list[str]]
    boundaries: dict[int, IntegerMatrix]
    reduced: bool = False
    empty: bool = False
    meta: dict = field(default_factory=dict)

    @property
    def degrees(self) -> list[int]:
        return sorted(self.bases)

    def rank(self, i: int) -> int:
        return len(self.bases.get(i, ()))

    def boundary(self, i: int) -> IntegerMatrix:
        if i in self.boundaries:
            return self.boundaries[i]
        return IntegerMatrix(self.rank(i - 1), self.rank(i))

    def check_dd(self) -> bool:
        return all((self.boundary(i - 1) @ self.boundary(i)).is_zero() for i in self.degrees)


def _boundary_between(lower: list[Face], upper: list[Face], coeff) -> IntegerMatrix:
    index = {f.mask: k for k, f in enumerate(lower)}
    entries = {}
    for col, f in enumerate(upper):
        for pos, v in enumerate(f.white):
            sub = f.mask & ~(1 << (v - 1))
            entries[(index[sub], col)] = (-1) ** pos * coeff(f, sub)
    return IntegerMatrix(len(lower), len(upper), entries)


def simplicial_chain_complex(c: AlcoveComplex, reduced: bool = True) -> ChainComplex:
    """Simplicial chains; signs from ascending vertex order.

    The reduced version appends the augmentation to degree -1, so the empty
    complex has a single generator there.
    """
    by_dim = {d: c.faces_of_dim(d) for d in range(c.dimension + 1)}
    bases = {d: [f.name for f in fs] for d, fs in by_dim.items()}
    bounds = {}
    for d in range(1, c.dimension + 1):
        bounds[d] = _boundary_between(by_dim[d - 1], by_dim[d], lambda f, sub: 1)
    if reduced:
        bases[-1] = ["()"]
        n0 = len(by_dim.get(0, ()))
        bounds[0] = IntegerMatrix(1, n0, {(0, j): 1 for j in range(n0)})
    return ChainComplex(bases, bounds, reduced=reduced, empty=c.is_empty,
                        meta={"type": c.lie_type.name, "complex": c.label})


@lru_cache(maxsize=None)
def weighted_hocolim_complex(t: LieType, parity: str = "even") -> ChainComplex:
    """Top-line chain model of hocolim F_m on generators u x sigma.

    Level i holds the i-faces of the alcove.  For even m the boundary drops a
    white vertex s with coefficient (-1)^pos(s) |W(sigma - s)| / |W(sigma)|;
    for odd m only u x Delta survives, with zero boundary.
    """
    if parity not in ("even", "odd"):
        raise ValueError("parity must be 'even' or 'odd'")
    alc = full_alcove(t)
    n = t.rank
    meta = {"type": t.name, "complex": f"hocolim-{parity}"}
    if parity == "odd":
        top = alc.faces_of_dim(n)
        return ChainComplex({n: [f"u×{top[0].name}"]}, {}, meta=meta)
    by_dim = {d: alc.faces_of_dim(d) for d in range(n + 1)}
    orders = {f.mask: f.order for f in alc}
    bases = {d: [f"u×{f.name}" for f in fs] for d, fs in by_dim.items()}

    def weight(f, sub):
        q, r = divmod(orders[sub], f.order)
        if r:
            raise ArithmeticError(f"|W({f.name})| does not divide the order of its face")
        return q

    bounds = {d: _boundary_between(by_dim[d - 1], by_dim[d], weight) for d in range(1, n + 1)}
    return ChainComplex(bases, bounds, meta=meta)


def q_m(t: LieType, m: int) -> int:
    """Degree offset d + n(m - 2) of the top line."""
    return catalog_facts(t).dim + t.rank * (m - 2)


# ---------------------------------------------------------------- homology

@dataclass(frozen=True)
class HomologyGroup:
    free_rank: int
    torsion: tuple[int, ...] = ()

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self):
        parts = ["Z"] * self.free_rank + [f"Z/{t}" for t in self.torsion]
        return " ⊕ ".join(parts) if parts else "0"


@dataclass
class HomologySummary:
    groups: dict[int, HomologyGroup]
    reduced: bool = False
    empty: bool = False

    def __getitem__(self, i: int) -> HomologyGroup:
        return self.groups.get(i, HomologyGroup(0))

    def is_trivial(self) -> bool:
        return all(g.is_trivial for g in self.groups.values())

    def torsion_primes(self) -> set[int]:
        primes = set()
        for g in self.groups.values():
            for t in g.torsion:
                primes |= prime_factors(t)
        return primes

    def has_p_torsion(self, p: int) -> bool:
        return any(t % p == 0 for g in self.groups.values() for t in g.torsion)

    def predicted_mod_p_betti(self, p: int) -> dict[int, int]:
        """Mod-p Betti numbers implied by universal coefficients."""
        out = {}
        for i in self.groups:
            tors = sum(1 for t in self[i].torsion if t % p == 0)
            tors += sum(1 for t in self[i - 1].torsion if t % p == 0)
            out[i] = self[i].free_rank + tors
        return out

    def __str__(self):
        return ", ".join(f"H_{i} = {g}" for i, g in sorted(self.groups.items()))


def prime_factors(x: int) -> set[int]:
    out, d = set(), 2
    x = abs(x)
    while d * d <= x:
        while x % d == 0:
            out.add(d)
            x //= d
        d += 1
    if x > 1:
        out.add(x)
    return out


def integral_homology(cc: ChainComplex) -> HomologySummary:
    factors = {i: invariant_factors(cc.boundary(i)) for i in cc.degrees}
    groups = {}
    for i in cc.degrees:
        rank_out = len(factors[i])
        incoming = factors.get(i + 1, [])
        free = cc.rank(i) - rank_out - len(incoming)
        groups[i] = HomologyGroup(free, tuple(t for t in incoming if t > 1))
    return HomologySummary(groups, reduced=cc.reduced, empty=cc.empty)


def mod_p_betti(cc: ChainComplex, p: int) -> dict[int, int]:
    ranks = {}
    for i in cc.degrees:
        b = cc.boundary(i)
        ranks[i] = kernels.rank_mod_p(b.to_numpy_mod(p), p) if b.entries else 0
    return {i: cc.rank(i) - ranks[i] - ranks.get(i + 1, 0) for i in cc.degrees}


def dump_complex(cc: ChainComplex) -> str:
    """Plain-text dump: per degree the basis labels, then boundary triplets.

    Format::

        # <meta key>: <value>
        degree <i> rank <n>
        basis <label_0> <label_1> ...
        boundary <i> <rows> <cols>
        <row> <col> <value>
        ...
    """
    lines = [f"# {k}: {v}" for k, v in sorted(cc.meta.items())]
    lines.append(f"# reduced: {str(cc.reduced).lower()}")
    for i in cc.degrees:
        lines.append(f"degree {i} rank {cc.rank(i)}")
        lines.append("basis " + " ".join(cc.bases[i]))
    for i in cc.degrees:
        b = cc.boundary(i)
        if i - 1 not in cc.bases:
            continue
        lines.append(f"boundary {i} {b.rows} {b.cols}")
        for (r, c), v in sorted(b.entries.items(), key=lambda e: (e[0][1], e[0][0])):
            lines.append(f"{r} {c} {v}")
    return "\n".join(lines) + "\n"


def load_complex(text: str) -> ChainComplex:
    """Inverse of :func:`dump_complex`."""
    bases, bounds, meta, reduced = {}, {}, {}, False
    current = None
    for line in text.splitlines():
        if not line.strip():
            continue
        if line.startswith("#"):
            key, _, val = line[1:].partition(":")
            if key.strip() == "reduced":
                reduced = val.strip() == "true"
            else:
                meta[key.strip()] = val.strip()
            continue
        head, *rest = line.split()
        if head == "degree":
            deg = int(rest[0])
        elif head == "basis":
            bases[deg] = rest
        elif head == "boundary":
            i, r, c = map(int, rest)
            current = bounds[i] = IntegerMatrix(r, c)
        else:
            current.entries[(int(head), int(rest[0]))] = int(rest[1])
    return ChainComplex(bases, bounds, reduced=reduced, meta=meta)
