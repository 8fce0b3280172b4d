"""Exact rational linear algebra on numpy object arrays.

Entries are Python ints or ``fractions.Fraction``.  Row reduction is done
fraction-free on integer-scaled rows by the kernels in ``_kernels``.
"""
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from ._kernels import rref_int


def zeros(r, c):
    return np.zeros((r, c), dtype=object)


def identity(n):
    M = zeros(n, n)
    for i in range(n):
        M[i, i] = 1
    return M


def as_exact(M):
    """Copy into an object array of ints/Fractions."""
    A = np.array(M, dtype=object)
    if A.ndim != 2:
        raise ValueError("expected a matrix")
    out = zeros(*A.shape)
    for idx, x in np.ndenumerate(A):
        out[idx] = _clean(x)
    return out


def _clean(x):
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, float):
        if not x.is_integer():
            raise TypeError("floating point entries are not allowed")
        return int(x)
    return Fraction(x)


def _int_rows(M):
    """Scale each row by the lcm of its denominators."""
    M = np.asarray(M, dtype=object)
    if M.size == 0:
        return M
    if all(type(x) is int for x in M.flat):
        return M
    out = M.copy()
    for i in range(M.shape[0]):
        den = 1
        for x in M[i]:
            if isinstance(x, Fraction):
                den = den * x.denominator // math.gcd(den, x.denominator)
        if den != 1:
            out[i] = np.array([int(x * den) for x in M[i]], dtype=object)
    return out


def rref(M):
    """Integer RREF of M (rows scaled) and its pivot columns."""
    return rref_int(_int_rows(M))


def rank(M) -> int:
    M = np.asarray(M, dtype=object)
    if M.size == 0:
        return 0
    return len(rref(M)[1])


def nullspace(M):
    """Basis (as rows) of {x : M x = 0}, plus the free columns.

    Row k of the basis has a 1 in free column k and 0 in the other free
    columns, so the coordinates of any x in the span are x[free].
    """
    M = np.asarray(M, dtype=object)
    r, c = M.shape
    if c == 0:
        return zeros(0, 0), []
    if r == 0:
        return identity(c), list(range(c))
    R, piv = rref(M)
    free = [j for j in range(c) if j not in set(piv)]
    B = zeros(len(free), c)
    for k, f in enumerate(free):
        B[k, f] = 1
        for i, p in enumerate(piv):
            num = R[i, f]
            if num:
                B[k, p] = _clean(Fraction(-num, R[i, p]))
    return B, free


def left_nullspace(M):
    """Basis (rows) of {x : x M = 0} with free-column coordinates."""
    M = np.asarray(M, dtype=object)
    return nullspace(M.T)


def row_basis(M):
    """Rows of an echelon basis of the row space and their pivot columns."""
    M = np.asarray(M, dtype=object)
    if M.size == 0:
        return zeros(0, M.shape[1] if M.ndim == 2 else 0), []
    R, piv = rref(M)
    return R[:len(piv)], piv


def matmul(A, B):
    A = np.asarray(A, dtype=object)
    B = np.asarray(B, dtype=object)
    if A.shape[1] == 0 or A.shape[0] == 0 or B.shape[1] == 0:
        return zeros(A.shape[0], B.shape[1])
    C = A.dot(B)
    return C


def is_zero(M) -> bool:
    M = np.asarray(M, dtype=object)
    return M.size == 0 or not any(x != 0 for x in M.flat)


def is_invertible(M) -> bool:
    M = np.asarray(M, dtype=object)
    return M.shape[0] == M.shape[1] and rank(M) == M.shape[0]
