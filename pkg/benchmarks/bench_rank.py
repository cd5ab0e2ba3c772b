"""Modular rank: numba kernel vs numpy fallback.

    python benchmarks/bench_rank.py --sizes 100 200 400 --repeat 3

Both kernels are also run on a differential matrix of G(4) to show they
agree on real input.
"""

import argparse
import time

import numpy as np

from framedgc import _kernels
from framedgc.engine import differential_matrix, enumerate_basis
from framedgc.linalg import _integer_rows

P = 2_147_483_629


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def dense_d_matrix(n, k, m):
    mat = differential_matrix(enumerate_basis(n, k, m), enumerate_basis(n, k + 1, m - 1))
    a = np.zeros((mat.nrows, mat.ncols), dtype=np.int64)
    for r, row in enumerate(_integer_rows(mat)):
        for c, v in row.items():
            a[r, c] = v
    return a


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[50, 100, 200, 400])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    if _kernels._rank_loop_jit is None:
        raise SystemExit("numba is not installed")
    # compile outside the timed region
    _kernels.rank_mod_p_numba(np.eye(3, dtype=np.int64), P)

    rng = np.random.default_rng(args.seed)
    print(f"{'input':>16} {'rank':>6} {'numpy s':>10} {'numba s':>10} {'speedup':>8}")
    inputs = []
    for size in args.sizes:
        a = rng.integers(-3, 4, size=(size, size)) * (rng.random((size, size)) < 0.1)
        inputs.append((f"random {size}", a))
    inputs.append(("d G(4) k=1 I=2", dense_d_matrix(4, 1, 2)))
    for label, a in inputs:
        t_np, r_np = best_of(lambda: _kernels.rank_mod_p_numpy(a, P), args.repeat)
        t_nb, r_nb = best_of(lambda: _kernels.rank_mod_p_numba(a, P), args.repeat)
        assert r_np == r_nb, (label, r_np, r_nb)
        print(f"{label:>16} {r_nb:>6} {t_np:>10.4f} {t_nb:>10.4f} {t_np / t_nb:>8.1f}x")


if __name__ == "__main__":
    main()
