import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from framedgc import _kernels
from framedgc.graph import alpha
from framedgc.linalg import (
    ArityMismatch,
    GraphVector,
    SparseRationalMatrix,
    TensorVector,
    random_prime,
    rank,
    rank_fraction_free,
    rank_modular,
)


def test_rank_zero_and_identity():
    assert rank(SparseRationalMatrix(3, 3)) == 0
    assert rank(SparseRationalMatrix(4, 4, {(i, i): 1 for i in range(4)})) == 4
    assert rank(SparseRationalMatrix(0, 5)) == 0


def test_rank_with_fractions():
    m = SparseRationalMatrix(2, 2, {(0, 0): Fraction(1, 2), (0, 1): Fraction(1, 3),
                                    (1, 0): Fraction(3, 2), (1, 1): 1})
    assert rank(m) == 1


def _random_matrix(rng, rows, cols, density=0.3, lo=-3, hi=3):
    entries = {}
    for r in range(rows):
        for c in range(cols):
            if rng.random() < density:
                v = Fraction(rng.randint(lo, hi), rng.randint(1, 4))
                if v:
                    entries[r, c] = v
    return SparseRationalMatrix(rows, cols, entries)


@st.composite
def matrices(draw):
    seed = draw(st.integers(0, 10**6))
    rows = draw(st.integers(0, 12))
    cols = draw(st.integers(0, 12))
    return _random_matrix(random.Random(seed), rows, cols, density=draw(st.floats(0.05, 0.9)))


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_of_transpose(m):
    assert rank_fraction_free(m) == rank_fraction_free(m.transpose())


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_modular_agrees_with_exact(m):
    p = random_prime(random.Random(1))
    assert rank_modular(m, p) == rank_fraction_free(m)


def test_low_rank_products():
    rng = random.Random(7)
    for k in range(6):
        a = _random_matrix(rng, 10, k, density=1.0, lo=1, hi=5)
        b = _random_matrix(rng, k, 9, density=1.0, lo=1, hi=5)
        prod = {}
        for (i, j), x in a.entries.items():
            for (j2, l), y in b.entries.items():
                if j == j2:
                    prod[i, l] = prod.get((i, l), 0) + x * y
        m = SparseRationalMatrix(10, 9, {k_: v for k_, v in prod.items() if v})
        assert rank(m) <= k
        assert rank(m) == np.linalg.matrix_rank(np.array(m.to_dense(), dtype=float))


def test_random_prime_range():
    p = random_prime(random.Random(3))
    assert 2**30 < p < 2**31
    assert all(p % q for q in range(2, 2000))


@pytest.mark.parametrize("seed", range(5))
def test_numba_and_numpy_kernels_agree(seed):
    rng = np.random.default_rng(seed)
    p = 2_147_483_629
    a = rng.integers(0, 4, size=(30, 25)) * (rng.random((30, 25)) < 0.4)
    a[:, 3] = a[:, 0] + a[:, 1]
    expected = np.linalg.matrix_rank(a.astype(float))
    assert _kernels.rank_mod_p_numpy(a, p) == expected
    assert _kernels.rank_mod_p_numba(a, p) == expected


def test_kernel_rejects_large_prime():
    with pytest.raises(ValueError):
        _kernels.rank_mod_p(np.eye(2, dtype=np.int64), 2**31 + 11)


def test_matrix_dump_roundtrip():
    m = SparseRationalMatrix(3, 4, {(0, 1): Fraction(-2, 3), (2, 3): 5})
    text = m.dumps()
    assert text.splitlines()[0] == "3 4 2"
    assert SparseRationalMatrix.loads(text) == m


def test_vector_add_and_scale():
    a12 = alpha(2, (1, 2))
    u = GraphVector.from_graph(a12)
    assert u + GraphVector(2) == u
    assert (u + u).coefficient(a12) == 2
    assert (Fraction(1, 2) * u).coefficient(a12) == Fraction(1, 2)
    assert u - u == 0
    assert u.scale(0) == 0


def test_swapped_edge_order_cancels():
    u = GraphVector.from_graph(alpha(3, (1, 3), (1, 2)))
    v = GraphVector.from_graph(alpha(3, (1, 2), (1, 3)))
    assert u + v == 0


def test_combining_mismatched_vectors_raises():
    with pytest.raises(ArityMismatch):
        GraphVector.from_graph(alpha(2, (1, 2))) + GraphVector.from_graph(alpha(3, (1, 2)))
    with pytest.raises(TypeError):
        GraphVector(2) + TensorVector((1, 2))


def test_env_flag_selects_numpy_kernel():
    import os
    import subprocess
    import sys

    code = "from framedgc import _kernels; print(_kernels.USE_NUMBA)"
    env = dict(os.environ, FRAMEDGC_NO_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                         text=True, check=True)
    assert out.stdout.strip() == "False"
