"""Dense rank over a prime field, the hot loop behind the modular rank check.

The numba-compiled kernel is used when numba imports and the environment
variable ``FRAMEDGC_NO_NUMBA`` is unset (or ``0``); otherwise a vectorised
numpy elimination runs instead.  Both require ``p < 2**31`` so that every
intermediate product fits in int64.
"""

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

__all__ = ["USE_NUMBA", "rank_mod_p", "rank_mod_p_numpy", "rank_mod_p_numba"]

USE_NUMBA = numba is not None and os.environ.get(
    "FRAMEDGC_NO_NUMBA", "").strip().lower() in ("", "0", "false", "no")

MAX_PRIME = 2**31


def _modinv(a, p):
    t, new_t = 0, 1
    r, new_r = p, a
    while new_r != 0:
        q = r // new_r
        t, new_t = new_t, t - q * new_t
        r, new_r = new_r, r - q * new_r
    if t < 0:
        t += p
    return t


def _rank_loop(a, p):
    nr, nc = a.shape
    rank = 0
    for c in range(nc):
        if rank == nr:
            break
        piv = -1
        for i in range(rank, nr):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != rank:
            for j in range(c, nc):
                tmp = a[piv, j]
                a[piv, j] = a[rank, j]
                a[rank, j] = tmp
        inv = _modinv(a[rank, c], p)
        for j in range(c, nc):
            a[rank, j] = (a[rank, j] * inv) % p
        for i in range(rank + 1, nr):
            f = a[i, c]
            if f != 0:
                for j in range(c, nc):
                    a[i, j] = (a[i, j] - f * a[rank, j]) % p
        rank += 1
    return rank


if numba is not None:
    # rebinding the global lets the jitted loop resolve the jitted helper
    _modinv = numba.njit(cache=True)(_modinv)
    _rank_loop_jit = numba.njit(cache=True)(_rank_loop)
else:  # pragma: no cover
    _rank_loop_jit = None


def _prepare(a, p):
    if not 2 < p < MAX_PRIME:
        raise ValueError(f"prime {p} outside (2, 2**31)")
    return np.ascontiguousarray(np.mod(np.asarray(a, dtype=np.int64), p))


def rank_mod_p_numpy(a, p: int) -> int:
    a = _prepare(a, p)
    nr, nc = a.shape
    rank = 0
    for c in range(nc):
        if rank == nr:
            break
        nz = np.flatnonzero(a[rank:, c])
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        inv = pow(int(a[rank, c]), -1, p)
        a[rank, c:] = (a[rank, c:] * inv) % p
        below = rank + 1 + np.flatnonzero(a[rank + 1:, c])
        if below.size:
            f = a[below, c][:, None]
            a[np.ix_(below, np.arange(c, nc))] = (
                a[below, c:] - f * a[rank, c:]) % p
        rank += 1
    return rank


def rank_mod_p_numba(a, p: int) -> int:
    if _rank_loop_jit is None:  # pragma: no cover
        raise RuntimeError("numba is not available")
    return int(_rank_loop_jit(_prepare(a, p), np.int64(p)))


def rank_mod_p(a, p: int) -> int:
    """Rank of the integer matrix ``a`` reduced modulo the prime ``p``."""
    if USE_NUMBA:
        return rank_mod_p_numba(a, p)
    return rank_mod_p_numpy(a, p)
