from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays
from scipy.sparse.csgraph import floyd_warshall

from gentle_lab import _kernels as K
from gentle_lab import exact


def fraction_rank(M):
    """Textbook elimination over Fractions."""
    A = [[Fraction(x) for x in row] for row in M]
    rank, rows = 0, len(A)
    cols = len(A[0]) if A else 0
    for c in range(cols):
        p = next((i for i in range(rank, rows) if A[i][c] != 0), None)
        if p is None:
            continue
        A[rank], A[p] = A[p], A[rank]
        for i in range(rows):
            if i != rank and A[i][c] != 0:
                f = A[i][c] / A[rank][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[rank])]
        rank += 1
    return rank


int_matrices = arrays(np.int64, st.tuples(st.integers(1, 7), st.integers(1, 7)),
                      elements=st.integers(-4, 4))


@given(int_matrices)
def test_rank_matches_fraction_elimination(M):
    assert exact.rank(M.astype(object)) == fraction_rank(M.tolist())


@given(int_matrices)
def test_numpy_and_numba_rref_agree(M):
    R1, p1 = K.rref_int_numpy(M.astype(object))
    R2, p2 = K.rref_int(M)
    assert p1 == p2
    assert (R1 == R2).all()


@given(int_matrices)
def test_nullspace(M):
    B, free = exact.nullspace(M.astype(object))
    assert len(free) == M.shape[1] - fraction_rank(M.tolist())
    if len(free):
        assert exact.is_zero(exact.matmul(M.astype(object), B.T))
        assert (B[:, free] == np.eye(len(free), dtype=int)).all()


def test_overflow_falls_back_to_python_ints():
    big = 1 << 40
    M = np.array([[big, 1], [1, big + 1]], dtype=object)
    R, piv = K.rref_int(M)
    assert piv == [0, 1]
    assert exact.rank(M) == 2


def test_fractions_are_exact():
    M = exact.as_exact([[Fraction(1, 3), Fraction(2, 3)], [1, 2]])
    assert exact.rank(M) == 1
    with pytest.raises(TypeError):
        exact.as_exact([[0.5]])


@given(arrays(bool, st.tuples(st.integers(1, 8), st.integers(1, 8)).map(lambda t: (t[0], t[0]))))
def test_bool_closure(adj):
    C = K.bool_closure(adj)
    assert (C == K.bool_closure_numpy(adj)).all()
    # reference: sum of powers
    n = adj.shape[0]
    P, acc = adj.astype(int), np.zeros_like(adj, dtype=int)
    for _ in range(n):
        acc += P
        P = np.minimum(P @ adj.astype(int), 1)
    assert (C == (acc > 0)).all()


def brute_minplus(W):
    """Lightest walk with 1..n edges by repeated min-plus products."""
    n = W.shape[0]
    inf = float("inf")
    A = np.where(W >= K.INF_WEIGHT, inf, W.astype(float))
    best, P = A.copy(), A.copy()
    for _ in range(n - 1):
        P = np.min(P[:, :, None] + A[None, :, :], axis=1)
        best = np.minimum(best, P)
    return best


weights = st.integers(1, 7).flatmap(lambda n: arrays(np.int64, (n, n), elements=st.integers(0, 9)))


@given(weights)
def test_minplus_closure_nonnegative(W):
    W = np.where(W > 6, K.INF_WEIGHT, W)
    D1 = K.minplus_closure(W)
    assert (D1 == K.minplus_closure_numpy(W)).all()
    ref = brute_minplus(W)
    assert ((D1 >= K.INF_WEIGHT) == np.isinf(ref)).all()
    assert (D1[~np.isinf(ref)] == ref[~np.isinf(ref)]).all()


@given(st.integers(2, 6), st.data())
def test_minplus_signed_weights_agree(n, data):
    # with a negative cycle the per-node values depend on update order; what
    # callers read is whether the lightest closed walk is < 0 or <= 0
    W = data.draw(arrays(np.int64, (n, n), elements=st.sampled_from([-1, 1, K.INF_WEIGHT])))
    D1, D2 = K.minplus_closure(W), K.minplus_closure_numpy(W)
    ref = np.min(np.diag(brute_minplus(W)))   # simple cycles have <= n edges
    for D in (D1, D2):
        lo = np.min(np.diag(D))
        assert (lo < 0) == (ref < 0)
        assert (lo <= 0) == (ref <= 0)
    if ref >= 0:
        assert (D1 == D2).all()


def test_numpy_minplus_keeps_missing_edges_missing():
    W = np.array([[K.INF_WEIGHT, -3], [K.INF_WEIGHT, K.INF_WEIGHT]], dtype=np.int64)
    D = K.minplus_closure_numpy(W)
    assert D[1, 0] >= K.INF_WEIGHT and D[0, 0] >= K.INF_WEIGHT and D[0, 1] == -3


def test_env_flag_selects_numpy():
    import os
    import subprocess
    import sys
    code = "from gentle_lab import _kernels as K; print(K.USE_NUMBA)"
    env = dict(os.environ, GENTLE_LAB_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "False"
