"""Hot numeric kernels, each with a numba and a pure-numpy implementation.

``orbit_charpoly_counts`` walks the Weyl group of a Cartan matrix and
tallies characteristic polynomials of the group elements.
``rank_mod_p`` is Gaussian elimination over F_p.

The public functions dispatch on :data:`alcovetorsion._accel.USE_NUMBA`;
``*_numba`` / ``*_numpy`` are exposed for tests and the benchmark.
"""
from __future__ import annotations

from math import comb

import numpy as np

from . import _accel

TABLE_SIZE = 1 << 12  # open-addressing table; far above the number of conjugacy classes


class CapExceeded(RuntimeError):
    """The group has more elements than the caller allowed."""


def charpoly_base(n: int) -> int:
    """Radix used to pack a characteristic polynomial into one int64 key."""
    return 2 * comb(n, n // 2) + 1


def decode_key(key: int, n: int) -> tuple[int, ...]:
    """Inverse of the key packing: coefficients ``(c_0, ..., c_{n-1}, 1)`` of det(x - w)."""
    base = charpoly_base(n)
    off = base // 2
    coeffs = []
    for _ in range(n):
        key, digit = divmod(key, base)
        coeffs.append(digit - off)
    return tuple(coeffs) + (1,)


# ---------------------------------------------------------------- numba path

def _charpoly_key_scalar(m, n, base, work, tmp):
    # Faddeev-LeVerrier; work/tmp are n x n scratch buffers
    off = base // 2
    for a in range(n):
        for b in range(n):
            work[a, b] = 0
    key = 0
    c_prev = 1
    for k in range(1, n + 1):
        for a in range(n):
            work[a, a] += c_prev
        for a in range(n):
            for b in range(n):
                s = 0
                for l in range(n):
                    s += m[a, l] * work[l, b]
                tmp[a, b] = s
        tr = 0
        for a in range(n):
            tr += tmp[a, a]
        c = -tr // k
        for a in range(n):
            for b in range(n):
                work[a, b] = tmp[a, b]
        c_prev = c
        # c is the coefficient of x^(n-k)
        p = 1
        for _ in range(n - k):
            p *= base
        key += (c + off) * p
    return key


def _table_add(keys, counts, key):
    size = keys.shape[0]
    h = key % size
    while True:
        if counts[h] == 0:
            keys[h] = key
            counts[h] = 1
            return
        if keys[h] == key:
            counts[h] += 1
            return
        h = (h + 1) % size


def _make_walker(key_fn, add_fn):
    def walk(cartan, cap, base, keys, counts):
        # depth-first walk of the orbit of rho; each orbit point is reached from
        # its canonical parent s_j(nu), j = first negative coordinate of nu
        n = cartan.shape[0]
        maxdepth = 4 * n * n + 2
        mu = np.zeros((maxdepth, n), dtype=np.int64)
        mats = np.zeros((maxdepth, n, n), dtype=np.int64)
        nxt = np.zeros(maxdepth, dtype=np.int64)
        work = np.zeros((n, n), dtype=np.int64)
        tmp = np.zeros((n, n), dtype=np.int64)
        for a in range(n):
            mu[0, a] = 1
            mats[0, a, a] = 1
        add_fn(keys, counts, key_fn(mats[0], n, base, work, tmp))
        total = 1
        depth = 0
        while depth >= 0:
            i = nxt[depth]
            if i == n:
                depth -= 1
                continue
            nxt[depth] = i + 1
            c = mu[depth, i]
            if c <= 0:
                continue
            ok = True
            for k in range(i):
                if mu[depth, k] - c * cartan[i, k] < 0:
                    ok = False
                    break
            if not ok:
                continue
            d = depth + 1
            for k in range(n):
                mu[d, k] = mu[depth, k] - c * cartan[i, k]
                for l in range(n):
                    mats[d, k, l] = mats[depth, k, l] - cartan[i, k] * mats[depth, i, l]
            total += 1
            if total > cap:
                return -1
            add_fn(keys, counts, key_fn(mats[d], n, base, work, tmp))
            nxt[d] = 0
            depth = d
        return total

    return walk


_orbit_charpoly_py = _make_walker(_charpoly_key_scalar, _table_add)


def _rank_mod_p_py(a, p):
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, cols):
                t = a[r, j]
                a[r, j] = a[piv, j]
                a[piv, j] = t
        # inverse by Fermat
        inv = 1
        base = a[r, c]
        e = p - 2
        while e > 0:
            if e & 1:
                inv = (inv * base) % p
            base = (base * base) % p
            e >>= 1
        for j in range(c, cols):
            a[r, j] = (a[r, j] * inv) % p
        for i in range(r + 1, rows):
            f = a[i, c]
            if f != 0:
                for j in range(c, cols):
                    a[i, j] = (a[i, j] - f * a[r, j]) % p
        r += 1
    return r


if _accel.HAVE_NUMBA:
    _orbit_charpoly_jit = _accel.njit(cache=False)(
        _make_walker(_accel.njit()(_charpoly_key_scalar), _accel.njit()(_table_add))
    )
else:  # pragma: no cover
    _orbit_charpoly_jit = None
_rank_mod_p_jit = _accel.njit()(_rank_mod_p_py)


def orbit_charpoly_counts_numba(cartan, cap: int) -> tuple[int, dict[int, int]]:
    if _orbit_charpoly_jit is None:
        raise RuntimeError("numba is not available")
    cartan = np.ascontiguousarray(cartan, dtype=np.int64)
    n = cartan.shape[0]
    keys = np.zeros(TABLE_SIZE, dtype=np.int64)
    counts = np.zeros(TABLE_SIZE, dtype=np.int64)
    total = _orbit_charpoly_jit(cartan, int(cap), charpoly_base(n), keys, counts)
    if total < 0:
        raise CapExceeded(f"Weyl group has more than {cap} elements")
    return int(total), {int(k): int(c) for k, c in zip(keys, counts) if c}


# ---------------------------------------------------------------- numpy path

def _charpoly_keys_batch(mats: np.ndarray, base: int) -> np.ndarray:
    b, n, _ = mats.shape
    off = base // 2
    eye = np.eye(n, dtype=np.int64)
    work = np.zeros_like(mats)
    c_prev = np.ones(b, dtype=np.int64)
    keys = np.zeros(b, dtype=np.int64)
    for k in range(1, n + 1):
        work = work + c_prev[:, None, None] * eye
        prod = np.matmul(mats, work)
        tr = np.trace(prod, axis1=1, axis2=2)
        c = -tr // k
        keys += (c + off) * base ** (n - k)
        work = prod
        c_prev = c
    return keys


def orbit_charpoly_counts_numpy(cartan, cap: int) -> tuple[int, dict[int, int]]:
    """Level-by-level walk of the orbit of rho, vectorized over each level."""
    cartan = np.asarray(cartan, dtype=np.int64)
    n = cartan.shape[0]
    base = charpoly_base(n)
    mus = np.ones((1, n), dtype=np.int64)
    mats = np.eye(n, dtype=np.int64)[None, :, :]
    chunks = [_charpoly_keys_batch(mats, base)]
    total = 1
    while len(mus):
        new_mu, new_mat = [], []
        for i in range(n):
            c = mus[:, i]
            nu = mus - c[:, None] * cartan[i][None, :]
            ok = (c > 0) & np.all(nu[:, :i] >= 0, axis=1)
            if not ok.any():
                continue
            m = mats[ok]
            new_mu.append(nu[ok])
            new_mat.append(m - cartan[i][None, :, None] * m[:, i : i + 1, :])
        if not new_mu:
            break
        mus = np.concatenate(new_mu)
        mats = np.concatenate(new_mat)
        total += len(mus)
        if total > cap:
            raise CapExceeded(f"Weyl group has more than {cap} elements")
        chunks.append(_charpoly_keys_batch(mats, base))
    uniq, cnt = np.unique(np.concatenate(chunks), return_counts=True)
    return total, {int(k): int(c) for k, c in zip(uniq, cnt)}


def rank_mod_p_numba(matrix, p: int) -> int:
    if _rank_mod_p_jit is None:
        raise RuntimeError("numba is not available")
    a = np.array(matrix, dtype=np.int64) % p
    if a.size == 0:
        return 0
    return int(_rank_mod_p_jit(a, p))


def rank_mod_p_numpy(matrix, p: int) -> int:
    a = np.array(matrix, dtype=np.int64) % p
    if a.size == 0:
        return 0
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if not len(nz):
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = (a[r] * pow(int(a[r, c]), p - 2, p)) % p
        below = a[r + 1 :, c]
        hit = np.nonzero(below)[0] + r + 1
        if len(hit):
            a[hit] = (a[hit] - np.outer(a[hit, c], a[r])) % p
        r += 1
    return r


# ---------------------------------------------------------------- dispatch

def orbit_charpoly_counts(cartan, cap: int) -> tuple[int, dict[int, int]]:
    """Return ``(|W|, {packed charpoly key: multiplicity})``.

    Raises :class:`CapExceeded` as soon as more than ``cap`` elements are seen.
    """
    if _accel.USE_NUMBA:
        return orbit_charpoly_counts_numba(cartan, cap)
    return orbit_charpoly_counts_numpy(cartan, cap)


def rank_mod_p(matrix, p: int) -> int:
    if p >= 1 << 31:
        raise ValueError("rank_mod_p needs p < 2**31 to stay inside int64")
    if _accel.USE_NUMBA:
        return rank_mod_p_numba(matrix, p)
    return rank_mod_p_numpy(matrix, p)
