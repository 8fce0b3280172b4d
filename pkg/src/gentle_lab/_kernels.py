"""Hot loops: fraction-free row reduction, boolean closure, min-plus closure.

Each kernel has a numba version and a plain numpy version.  Setting the
environment variable ``GENTLE_LAB_DISABLE_NUMBA=1`` (or running without
numba installed) selects the numpy versions.  The integer row reduction
additionally falls back to exact Python integers whenever an entry would
leave the int64 safety window.
"""
import os

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is a declared dependency
    njit = None

USE_NUMBA = njit is not None and os.environ.get("GENTLE_LAB_DISABLE_NUMBA", "") not in ("1", "true", "yes")

# entries are kept below this bound so that a*x - b*y never overflows int64
_SAFE = 1 << 30
INF_WEIGHT = 1 << 40


def _gcd_py(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


# ---------------------------------------------------------------- numpy side

def _row_normalize(row):
    nz = row[row != 0]
    if len(nz) == 0:
        return row
    g = 0
    for x in nz:
        g = _gcd_py(g, int(x))
        if g == 1:
            break
    if g > 1:
        row = row // g
    if nz[0] < 0:
        row = -row
    return row


def rref_int_numpy(M):
    """Fraction-free reduced row echelon form over exact Python ints.

    Returns (R, pivots) where R has object dtype.  Pivot entries are
    positive and every pivot column is zero outside its pivot row.
    """
    R = np.array(M, dtype=object, copy=True)
    nrows, ncols = R.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        col = R[r:, c]
        nzr = np.nonzero(col != 0)[0]
        if len(nzr) == 0:
            continue
        p = r + int(nzr[0])
        if p != r:
            R[[r, p]] = R[[p, r]]
        R[r] = _row_normalize(R[r])
        a = R[r, c]
        for i in np.nonzero(R[:, c] != 0)[0]:
            if i == r:
                continue
            b = R[i, c]
            g = _gcd_py(a, b)
            R[i] = _row_normalize((a // g) * R[i] - (b // g) * R[r])
        pivots.append(c)
        r += 1
    return R, pivots


def bool_closure_numpy(adj):
    """Transitive closure (paths of length >= 1) of a boolean adjacency matrix."""
    C = np.array(adj, dtype=bool, copy=True)
    for k in range(C.shape[0]):
        C |= np.outer(C[:, k], C[k, :])
    return C


def minplus_closure_numpy(W):
    """Floyd-Warshall on int64 weights; INF_WEIGHT marks a missing edge.

    The diagonal starts at INF_WEIGHT unless a self-loop exists, so the
    final diagonal holds the lightest closed walk through each node (any
    negative value means a negative cycle).
    """
    D = np.array(W, dtype=np.int64, copy=True)
    n = D.shape[0]
    for k in range(n):
        cand = D[:, k, None] + D[None, k, :]
        cand[(D[:, k] >= INF_WEIGHT)[:, None] | (D[k, :] >= INF_WEIGHT)[None, :]] = INF_WEIGHT
        np.minimum(D, cand, out=D)
        np.clip(D, -INF_WEIGHT, INF_WEIGHT, out=D)
    return D


# ---------------------------------------------------------------- numba side

if njit is not None:

    @njit(cache=True)
    def _gcd_nb(a, b):
        if a < 0:
            a = -a
        if b < 0:
            b = -b
        while b != 0:
            a, b = b, a % b
        return a

    @njit(cache=True)
    def _normalize_nb(R, i, ncols):
        g = 0
        first = 0
        for j in range(ncols):
            x = R[i, j]
            if x != 0:
                if first == 0:
                    first = x
                g = _gcd_nb(g, x)
        if g > 1:
            for j in range(ncols):
                R[i, j] //= g
        if first < 0:
            for j in range(ncols):
                R[i, j] = -R[i, j]

    @njit(cache=True)
    def _rref_int64_nb(R, piv):
        """In-place reduction; returns rank, or -1 when entries grow too large."""
        nrows, ncols = R.shape
        r = 0
        for c in range(ncols):
            if r == nrows:
                break
            p = -1
            for i in range(r, nrows):
                if R[i, c] != 0:
                    p = i
                    break
            if p < 0:
                continue
            if p != r:
                for j in range(ncols):
                    t = R[r, j]
                    R[r, j] = R[p, j]
                    R[p, j] = t
            _normalize_nb(R, r, ncols)
            a = R[r, c]
            for i in range(nrows):
                if i == r or R[i, c] == 0:
                    continue
                b = R[i, c]
                g = _gcd_nb(a, b)
                fa = a // g
                fb = b // g
                for j in range(ncols):
                    R[i, j] = fa * R[i, j] - fb * R[r, j]
                _normalize_nb(R, i, ncols)
                for j in range(ncols):
                    if R[i, j] >= _SAFE or R[i, j] <= -_SAFE:
                        return -1
            piv[r] = c
            r += 1
        return r

    @njit(cache=True)
    def _bool_closure_nb(C):
        n = C.shape[0]
        for k in range(n):
            for i in range(n):
                if C[i, k]:
                    for j in range(n):
                        if C[k, j]:
                            C[i, j] = True
        return C

    @njit(cache=True)
    def _minplus_nb(D):
        n = D.shape[0]
        for k in range(n):
            for i in range(n):
                dik = D[i, k]
                if dik >= INF_WEIGHT:
                    continue
                for j in range(n):
                    dkj = D[k, j]
                    if dkj >= INF_WEIGHT:
                        continue
                    s = dik + dkj
                    if s < -INF_WEIGHT:
                        s = -INF_WEIGHT
                    if s < D[i, j]:
                        D[i, j] = s
        return D


def rref_int(M):
    """Fraction-free RREF of an integer matrix; see rref_int_numpy."""
    M = np.asarray(M)
    if M.size == 0:
        return np.array(M, dtype=object).reshape(M.shape), []
    if USE_NUMBA:
        try:
            small = int(np.max(np.abs(M.astype(object)))) < _SAFE
        except (TypeError, ValueError):
            small = False
        if small:
            R = M.astype(np.int64)
            piv = np.zeros(min(R.shape), dtype=np.int64)
            rank = _rref_int64_nb(R, piv)
            if rank >= 0:
                return R.astype(object), [int(c) for c in piv[:rank]]
    return rref_int_numpy(M)


def bool_closure(adj):
    adj = np.asarray(adj, dtype=bool)
    if USE_NUMBA and adj.size:
        return _bool_closure_nb(adj.copy())
    return bool_closure_numpy(adj)


def minplus_closure(W):
    W = np.asarray(W, dtype=np.int64)
    if USE_NUMBA and W.size:
        return _minplus_nb(W.copy())
    return minplus_closure_numpy(W)
