"""Time the numba kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 3] [--types E6 D6 B6]

Both backends are called directly, so the ALCOVETORSION_BACKEND flag does
not matter here.  The first numba call per kernel is a warm-up (compile or
cache load) and is reported separately.
"""
import argparse
import time

import numpy as np

from alcovetorsion import kernels
from alcovetorsion.homology import simplicial_chain_complex
from alcovetorsion.alcove import full_alcove
from alcovetorsion.lie import LieType
from alcovetorsion.weyl_series import DEFAULT_CAP, CartanMatrix


def best_of(fn, repeat):
    times = []
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def bench_orbit(names, repeat):
    print(f"{'orbit walk':<14}{'|W|':>12}{'numba s':>12}{'numpy s':>12}{'speedup':>10}")
    for name in names:
        c = CartanMatrix.for_type(LieType.parse(name)).to_numpy()
        kernels.orbit_charpoly_counts_numba(c, DEFAULT_CAP)  # warm-up
        tn, a = best_of(lambda: kernels.orbit_charpoly_counts_numba(c, DEFAULT_CAP), repeat)
        tp, b = best_of(lambda: kernels.orbit_charpoly_counts_numpy(c, DEFAULT_CAP), repeat)
        assert a == b, name
        print(f"{name:<14}{a[0]:>12}{tn:>12.4f}{tp:>12.4f}{tp / tn:>10.1f}")


def bench_rank(repeat):
    print(f"\n{'rank mod p':<14}{'shape':>12}{'numba s':>12}{'numpy s':>12}{'speedup':>10}")
    # the largest boundary matrix of the E8 alcove simplex, and a random dense one
    cc = simplicial_chain_complex(full_alcove(LieType.parse("E8")))
    big = max((cc.boundary(i) for i in cc.degrees), key=lambda b: b.rows * b.cols)
    rng = np.random.default_rng(0)
    cases = [("E8 boundary", big.to_numpy_mod(3)), ("random", rng.integers(0, 101, (400, 400)).astype(np.int64))]
    for label, m in cases:
        p = 3 if label != "random" else 101
        kernels.rank_mod_p_numba(m.copy(), p)
        tn, a = best_of(lambda: kernels.rank_mod_p_numba(m.copy(), p), repeat)
        tp, b = best_of(lambda: kernels.rank_mod_p_numpy(m.copy(), p), repeat)
        assert a == b, label
        shape = f"{m.shape[0]}x{m.shape[1]}"
        print(f"{label:<14}{shape:>12}{tn:>12.4f}{tp:>12.4f}{tp / tn:>10.1f}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--types", nargs="+", default=["B4", "F4", "D5", "B6", "E6", "D6"])
    args = ap.parse_args()
    t0 = time.perf_counter()
    c = CartanMatrix.for_type(LieType.parse("A2")).to_numpy()
    kernels.orbit_charpoly_counts_numba(c, 10)
    print(f"numba warm-up: {time.perf_counter() - t0:.2f}s\n")
    bench_orbit(args.types, args.repeat)
    bench_rank(args.repeat)


if __name__ == "__main__":
    main()
