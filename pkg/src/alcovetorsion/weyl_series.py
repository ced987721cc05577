"""Rational Poincare series of Hom(Z^m, G)_1 from the Weyl group.

    P(t) = prod_i (1 - t^(2 d_i)) / |W| * sum_{w in W} det(1 + t w)^m / det(1 - t^2 w)

Both determinants depend on w only through its characteristic polynomial,
so the group is walked once and its elements are bucketed by that
polynomial.  Everything is exact: integer polynomials and Fractions.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .kernels import CapExceeded
from .lie import LieType, catalog_facts, finite_cartan_matrix

DEFAULT_CAP = 10**6


class NegativeCoefficient(ArithmeticError):
    """A Betti number came out negative or fractional."""


@dataclass(frozen=True)
class CartanMatrix:
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        a = self.entries
        n = len(a)
        for i in range(n):
            if len(a[i]) != n or a[i][i] != 2:
                raise ValueError("Cartan matrix needs a square shape and 2 on the diagonal")
            for j in range(n):
                if i == j:
                    continue
                if a[i][j] > 0 or (a[i][j] == 0) != (a[j][i] == 0):
                    raise ValueError(f"bad off-diagonal pair at ({i},{j})")
                if a[i][j] * a[j][i] not in (0, 1, 2, 3):
                    raise ValueError(f"bond ({i},{j}) is not of finite type")

    @classmethod
    def for_type(cls, t: LieType) -> "CartanMatrix":
        return cls(tuple(tuple(row) for row in finite_cartan_matrix(t)))

    @property
    def rank(self) -> int:
        return len(self.entries)

    def to_numpy(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64).reshape(self.rank, self.rank)


@dataclass(frozen=True)
class CharPolyBucket:
    """Multiplicity of each characteristic polynomial det(x - w), coefficients low to high."""

    rank: int
    counts: dict  # tuple[int, ...] -> int

    @property
    def total(self) -> int:
        return sum(self.counts.values())


def generate_weyl_buckets(t: LieType, cap: int = DEFAULT_CAP) -> CharPolyBucket:
    """Walk W in the simple-root representation and bucket by characteristic polynomial.

    Raises :class:`CapExceeded` once more than ``cap`` elements are produced.
    """
    cartan = CartanMatrix.for_type(t)
    total, keyed = kernels.orbit_charpoly_counts(cartan.to_numpy(), cap)
    counts = {kernels.decode_key(k, cartan.rank): c for k, c in sorted(keyed.items())}
    bucket = CharPolyBucket(rank=cartan.rank, counts=counts)
    assert bucket.total == total
    return bucket


@dataclass(frozen=True)
class RationalSeries:
    truncation: int
    coefficients: tuple[Fraction, ...]  # c_0 .. c_N

    def __getitem__(self, i: int) -> Fraction:
        if not 0 <= i <= self.truncation:
            raise IndexError(f"degree {i} is outside the truncation 0..{self.truncation}")
        return self.coefficients[i]

    def as_integers(self) -> list[int]:
        out = []
        for c in self.coefficients:
            if c.denominator != 1:
                raise NegativeCoefficient(f"non-integral coefficient {c}")
            out.append(int(c))
        return out

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coefficients):
            if c:
                coef = "" if c == 1 and i else str(c)
                var = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
                terms.append(f"{coef}{var}")
        return (" + ".join(terms) or "0") + f" + O(t^{self.truncation + 1})"


def _poly_mul(a, b, n):
    out = [0] * (n + 1)
    for i, x in enumerate(a[: n + 1]):
        if x:
            for j, y in enumerate(b[: n + 1 - i]):
                out[i + j] += x * y
    return out


def _poly_pow(a, e, n):
    out = [1] + [0] * n
    for _ in range(e):
        out = _poly_mul(out, a, n)
    return out


def _series_inverse(a, n):
    # a[0] == 1
    inv = [0] * (n + 1)
    inv[0] = 1
    for k in range(1, n + 1):
        s = 0
        for j in range(1, min(k, len(a) - 1) + 1):
            s += a[j] * inv[k - j]
        inv[k] = -s
    return inv


def det_one_plus_tw(charpoly) -> list[int]:
    """det(1 + t w) from det(x - w) = sum c_k x^k: coefficient of t^j is (-1)^j c_{n-j}."""
    n = len(charpoly) - 1
    return [(-1) ** j * charpoly[n - j] for j in range(n + 1)]


def det_one_minus_t2w(charpoly) -> list[int]:
    """det(1 - t^2 w): coefficient of t^(2j) is c_{n-j}."""
    n = len(charpoly) - 1
    out = [0] * (2 * n + 1)
    for j in range(n + 1):
        out[2 * j] = charpoly[n - j]
    return out


def default_truncation(t: LieType, m: int) -> int:
    f = catalog_facts(t)
    return f.dim + f.rank * (m - 2) + f.rank + 2


def poincare_series(
    t: LieType,
    m: int,
    truncation: int | None = None,
    cap: int = DEFAULT_CAP,
    buckets: CharPolyBucket | None = None,
) -> RationalSeries:
    if m < 1:
        raise ValueError("m must be positive")
    N = default_truncation(t, m) if truncation is None else truncation
    if N < 1:
        raise ValueError("truncation must be at least 1")
    if buckets is None:
        buckets = generate_weyl_buckets(t, cap)
    facts = catalog_facts(t)
    acc = [0] * (N + 1)
    for cp, mult in buckets.counts.items():
        num = _poly_pow(det_one_plus_tw(cp), m, N)
        term = _poly_mul(num, _series_inverse(det_one_minus_t2w(cp), N), N)
        for i, x in enumerate(term):
            acc[i] += mult * x
    for d in facts.degrees:
        factor = [0] * (N + 1)
        factor[0] = 1
        if 2 * d <= N:
            factor[2 * d] = -1
        acc = _poly_mul(acc, factor, N)
    coeffs = tuple(Fraction(x, facts.weyl_order) for x in acc)
    for i, c in enumerate(coeffs):
        if c < 0 or c.denominator != 1:
            raise NegativeCoefficient(f"{t.name}, m={m}: coefficient of t^{i} is {c}")
    return RationalSeries(truncation=N, coefficients=coeffs)


def exterior_series(t: LieType, truncation: int) -> list[int]:
    """prod_i (1 + t^(2 d_i - 1)), the rational cohomology of G, truncated."""
    out = [1] + [0] * truncation
    for d in catalog_facts(t).degrees:
        f = [0] * (truncation + 1)
        f[0] = 1
        if 2 * d - 1 <= truncation:
            f[2 * d - 1] = 1
        out = _poly_mul(out, f, truncation)
    return out


def series_csv(rows) -> str:
    """CSV of ``(type, m, series)`` rows, one line per degree."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["type", "m", "degree", "betti"])
    for t, m, s in rows:
        for i, c in enumerate(s.as_integers()):
            w.writerow([t.name, m, i, c])
    return buf.getvalue()


__all__ = [
    "CapExceeded",
    "CartanMatrix",
    "CharPolyBucket",
    "DEFAULT_CAP",
    "NegativeCoefficient",
    "RationalSeries",
    "default_truncation",
    "exterior_series",
    "generate_weyl_buckets",
    "poincare_series",
    "series_csv",
]
