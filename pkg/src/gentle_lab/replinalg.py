"""Quiver representations over the rationals: the linear-algebra oracle.

Right-module convention: vectors are rows and the matrix of an arrow a has
shape dim(s(a)) x dim(t(a)).
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import exact
from .quiver_core import BoundQuiver, Path, multiply_paths, opposite
from .strings_bands import (BandWord, Letter, StringWord, band_defect, NotABandError,
                            letter_source, letter_target, require_string, walk_vertices)


class RepresentationError(ValueError):
    pass


class IsomorphismInconclusive(RuntimeError):
    pass


class CapReached:
    """Result of a resolution that did not stop within the depth cap."""
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "CAP_REACHED"


CAP_REACHED = CapReached()


@dataclass(frozen=True)
class JordanSpec:
    eigenvalue: Fraction
    size: int = 1

    def __post_init__(self):
        if self.eigenvalue == 0:
            raise RepresentationError("band eigenvalue must be nonzero")
        if self.size < 1:
            raise RepresentationError("Jordan block size must be positive")


@dataclass
class Representation:
    dims: dict
    mats: dict
    basis: dict = field(default=None, repr=False)  # optional labels per vertex

    @property
    def total_dim(self):
        return sum(self.dims.values())

    def dim_vector(self, bq):
        return tuple(self.dims[v] for v in bq.vertices)

    def is_zero(self):
        return self.total_dim == 0


def make_representation(bq: BoundQuiver, dims, mats, basis=None) -> Representation:
    """Validate shapes and relation vanishing."""
    dims = {v: int(dims.get(v, 0)) for v in bq.vertices}
    out = {}
    for a in bq.arrows:
        M = mats.get(a.name)
        shape = (dims[a.source], dims[a.target])
        M = exact.zeros(*shape) if M is None else exact.as_exact(np.asarray(M, dtype=object).reshape(shape))
        if M.shape != shape:
            raise RepresentationError(f"matrix of {a.name} has shape {M.shape}, expected {shape}")
        out[a.name] = M
    rep = Representation(dims, out, basis)
    for x, y in bq.relations:
        if not exact.is_zero(exact.matmul(out[x], out[y])):
            raise RepresentationError(f"relation {x}{y} does not vanish")
    return rep


def path_matrix(bq, M: Representation, arrows, start):
    """Matrix of a path acting on M (identity for the trivial path)."""
    P = exact.identity(M.dims[start])
    for a in arrows:
        P = exact.matmul(P, M.mats[a])
    return P


# ------------------------------------------------------------ constructions

def string_module(bq, s: StringWord) -> Representation:
    require_string(bq, s)
    verts = walk_vertices(bq, s)
    pos = {}
    basis = {v: [] for v in bq.vertices}
    for i, v in enumerate(verts):
        pos[i] = len(basis[v])
        basis[v].append(i)
    dims = {v: len(basis[v]) for v in bq.vertices}
    mats = {a.name: exact.zeros(dims[a.source], dims[a.target]) for a in bq.arrows}
    for i, u in enumerate(s.letters):
        if u.sign > 0:   # b_i . a = b_{i+1}
            mats[u.arrow][pos[i], pos[i + 1]] = 1
        else:            # b_{i+1} . a = b_i
            mats[u.arrow][pos[i + 1], pos[i]] = 1
    return make_representation(bq, dims, mats, basis)


def band_module(bq, b, j: JordanSpec) -> Representation:
    letters = b.letters if isinstance(b, BandWord) else tuple(b)
    why = band_defect(bq, letters)
    if why:
        raise NotABandError(why)
    n, m = len(letters), j.size
    verts = walk_vertices(bq, letters)[:n]
    pos = {}
    count = {v: 0 for v in bq.vertices}
    for i, v in enumerate(verts):
        pos[i] = count[v]
        count[v] += m
    dims = dict(count)
    mats = {a.name: exact.zeros(dims[a.source], dims[a.target]) for a in bq.arrows}
    J = exact.zeros(m, m)
    for k in range(m):
        J[k, k] = exact._clean(Fraction(j.eigenvalue))
        if k + 1 < m:
            J[k, k + 1] = 1
    for i, u in enumerate(letters):
        blk = J if i == 0 else exact.identity(m)
        src, tgt = (i, (i + 1) % n) if u.sign > 0 else ((i + 1) % n, i)
        r0, c0 = pos[src], pos[tgt]
        mats[u.arrow][r0:r0 + m, c0:c0 + m] += blk
    return make_representation(bq, dims, mats)


def projective_module(bq, v) -> Representation:
    """P(v): basis the nonzero paths starting at v, arrows act by concatenation."""
    paths = bq.paths_by_start[v]
    basis = {u: [] for u in bq.vertices}
    for p in paths:
        basis[p.end].append(p)
    index = {u: {p: i for i, p in enumerate(basis[u])} for u in bq.vertices}
    dims = {u: len(basis[u]) for u in bq.vertices}
    mats = {a.name: exact.zeros(dims[a.source], dims[a.target]) for a in bq.arrows}
    for a in bq.arrows:
        arrow = Path(a.source, a.target, (a.name,))
        for i, p in enumerate(basis[a.source]):
            q = multiply_paths(bq, p, arrow)
            if q is not None:
                mats[a.name][i, index[a.target][q]] = 1
    return make_representation(bq, dims, mats, basis)


def dual(M: Representation) -> Representation:
    """Vector-space dual: a module over the opposite algebra."""
    return Representation(dict(M.dims), {a: m.T.copy() for a, m in M.mats.items()})


def injective_module(bq, v) -> Representation:
    """E(v) as the dual of the projective P(v) over the opposite algebra."""
    return make_representation(bq, *_dims_mats(dual(projective_module(opposite(bq), v))))


def simple_module(bq, v) -> Representation:
    return string_module(bq, StringWord((), v))


def _dims_mats(M):
    return M.dims, M.mats


def direct_sum(bq, mods) -> Representation:
    dims = {v: sum(M.dims[v] for M in mods) for v in bq.vertices}
    mats = {}
    for a in bq.arrows:
        Z = exact.zeros(dims[a.source], dims[a.target])
        r = c = 0
        for M in mods:
            X = M.mats[a.name]
            Z[r:r + X.shape[0], c:c + X.shape[1]] = X
            r += X.shape[0]
            c += X.shape[1]
        mats[a.name] = Z
    return Representation(dims, mats)


# ------------------------------------------------------------ Hom spaces

@dataclass
class Homomorphism:
    maps: dict  # vertex -> matrix dim M_v x dim N_v


def hom_space(bq, M: Representation, N: Representation) -> list:
    """Basis of Hom(M, N): families f_v with M_a f_t = f_s N_a."""
    offs, n = {}, 0
    for v in bq.vertices:
        offs[v] = n
        n += M.dims[v] * N.dims[v]
    if n == 0:
        return []
    blocks = []
    for a in bq.arrows:
        s, t = a.source, a.target
        rows = M.dims[s] * N.dims[t]
        if rows == 0:
            continue
        E = exact.zeros(rows, n)
        # row-major vec: vec(A X B) = (A kron B^T) vec(X)
        if M.dims[t] and N.dims[t]:
            E[:, offs[t]:offs[t] + M.dims[t] * N.dims[t]] += np.kron(M.mats[a.name], exact.identity(N.dims[t]))
        if M.dims[s] and N.dims[s]:
            E[:, offs[s]:offs[s] + M.dims[s] * N.dims[s]] -= np.kron(exact.identity(M.dims[s]), N.mats[a.name].T)
        blocks.append(E)
    if blocks:
        B, _ = exact.nullspace(np.vstack(blocks))
    else:
        B = exact.identity(n)
    out = []
    for row in B:
        maps = {}
        for v in bq.vertices:
            k = M.dims[v] * N.dims[v]
            maps[v] = row[offs[v]:offs[v] + k].reshape(M.dims[v], N.dims[v])
        out.append(Homomorphism(maps))
    return out


def _combine(bq, basis, coeffs):
    return {v: sum((c * h.maps[v] for c, h in zip(coeffs, basis)), start=exact.zeros(*basis[0].maps[v].shape))
            for v in bq.vertices}


def _invertible_family(bq, maps):
    return all(exact.is_invertible(maps[v]) for v in bq.vertices if maps[v].shape[0])


def _never_bijective(bq, H, N):
    """Some vertex where all of Hom(M, N) misses part of N_v, or where all
    maps share a kernel vector; either rules out an isomorphism."""
    for v in bq.vertices:
        if N.dims[v] == 0:
            continue
        blocks = [h.maps[v] for h in H]
        if exact.rank(np.vstack(blocks)) < N.dims[v]:
            return True
        if exact.rank(np.hstack(blocks)) < blocks[0].shape[0]:
            return True
    return False


def is_isomorphic(bq, M: Representation, N: Representation, seed: int = 0) -> bool:
    """Exact isomorphism test.

    True needs an invertible homomorphism (a proof).  False is certified by
    different dimension vectors or by mismatched Hom dimensions among
    End(M), End(N), Hom(M,N), Hom(N,M), by a vertex where no map in
    Hom(M, N) can be bijective, or by different tops or socles.  Otherwise
    the search raises IsomorphismInconclusive.
    """
    if any(M.dims[v] != N.dims[v] for v in bq.vertices):
        return False
    if M.total_dim == 0:
        return True
    H = hom_space(bq, M, N)
    if not H:
        return False
    rng = random.Random(seed)
    for _ in range(20):
        coeffs = [rng.randint(-50, 50) for _ in H]
        if _invertible_family(bq, _combine(bq, H, coeffs)):
            return True
    if len(H) <= 6:
        for coeffs in itertools.product(range(-2, 3), repeat=len(H)):
            if any(coeffs) and _invertible_family(bq, _combine(bq, H, coeffs)):
                return True
    dims = {len(H), len(hom_space(bq, N, M)), len(hom_space(bq, M, M)), len(hom_space(bq, N, N))}
    if len(dims) > 1:
        return False
    if _never_bijective(bq, H, N):
        return False
    for v in bq.vertices:
        S = simple_module(bq, v)
        if len(hom_space(bq, M, S)) != len(hom_space(bq, N, S)):
            return False
        if len(hom_space(bq, S, M)) != len(hom_space(bq, S, N)):
            return False
    raise IsomorphismInconclusive("no invertible homomorphism found and Hom dimensions agree")


# ------------------------------------------------------------ syzygies

@dataclass
class CoverMap:
    """Projective cover: generators (vertex, vector in M_v) and the map per vertex."""
    generators: list
    cover: Representation
    maps: dict


def top_generators(bq, M: Representation) -> list:
    """(vertex, row vector) pairs spanning a complement of the radical."""
    gens = []
    for v in bq.vertices:
        d = M.dims[v]
        if d == 0:
            continue
        imgs = [M.mats[a] for a in bq.in_arrows[v] if M.mats[a].shape[0]]
        if imgs:
            _, piv = exact.row_basis(np.vstack(imgs))
        else:
            piv = []
        for j in range(d):
            if j not in piv:
                e = exact.zeros(1, d)[0]
                e[j] = 1
                gens.append((v, e))
    return gens


def projective_cover(bq, M: Representation) -> CoverMap:
    gens = top_generators(bq, M)
    projs = [projective_module(bq, v) for v, _ in gens]
    P = direct_sum(bq, projs)
    maps = {}
    for u in bq.vertices:
        rows = []
        for (v, g), Pv in zip(gens, projs):
            for p in Pv.basis[u]:
                rows.append(exact.matmul(g.reshape(1, -1), path_matrix(bq, M, p.arrows, v))[0])
        maps[u] = np.array(rows, dtype=object).reshape(len(rows), M.dims[u]) if rows else exact.zeros(0, M.dims[u])
    return CoverMap(gens, P, maps)


def kernel_representation(bq, P: Representation, maps: dict) -> Representation:
    """Kernel of a homomorphism P -> M given by per-vertex matrices."""
    K, free = {}, {}
    for u in bq.vertices:
        f = maps[u]
        if P.dims[u] == 0:
            K[u], free[u] = exact.zeros(0, 0), []
            continue
        if f.shape[1] == 0:
            K[u], free[u] = exact.identity(P.dims[u]), list(range(P.dims[u]))
        else:
            K[u], free[u] = exact.left_nullspace(f)
    dims = {u: K[u].shape[0] for u in bq.vertices}
    mats = {}
    for a in bq.arrows:
        s, t = a.source, a.target
        if dims[s] == 0 or dims[t] == 0:
            mats[a.name] = exact.zeros(dims[s], dims[t])
            continue
        img = exact.matmul(K[s], P.mats[a.name])
        mats[a.name] = img[:, free[t]]
    return Representation(dims, mats)


def projective_cover_and_syzygy(bq, M: Representation):
    cov = projective_cover(bq, M)
    return cov, kernel_representation(bq, cov.cover, cov.maps)


def syzygy(bq, M):
    return projective_cover_and_syzygy(bq, M)[1]


def resolve_pd(bq, M: Representation, cap: int = 16):
    """Projective dimension by iterated syzygies, or CAP_REACHED."""
    if M.is_zero():
        return 0
    for d in range(cap + 1):
        K = syzygy(bq, M)
        if K.is_zero():
            return d
        M = K
    return CAP_REACHED


def resolve_id(bq, M: Representation, cap: int = 16):
    """Injective dimension as projective dimension of the dual over the opposite."""
    return resolve_pd(opposite(bq), dual(M), cap)


# ------------------------------------------------------------ complexes

@dataclass
class ComplexOfReps:
    """terms[k] in degree k; diffs[k] maps degree k to k+1, per vertex."""
    terms: dict
    diffs: dict

    def degrees(self):
        return sorted(self.terms)


class ComplexError(ValueError):
    pass


def check_complex(bq, X: ComplexOfReps):
    for k, d in X.diffs.items():
        if k + 1 not in X.terms:
            raise ComplexError(f"differential from degree {k} has no target")
        A, B = X.terms[k], X.terms[k + 1]
        for a in bq.arrows:
            lhs = exact.matmul(A.mats[a.name], d[a.target])
            rhs = exact.matmul(d[a.source], B.mats[a.name])
            if lhs.size and not exact.is_zero(lhs - rhs):
                raise ComplexError(f"differential in degree {k} is not a homomorphism")
        if k + 1 in X.diffs:
            for v in bq.vertices:
                if not exact.is_zero(exact.matmul(d[v], X.diffs[k + 1][v])):
                    raise ComplexError(f"d o d is nonzero at degree {k}")


def cohomology_dims(bq, X: ComplexOfReps) -> dict:
    """degree -> dimension vector (dict vertex -> int) of H^k."""
    check_complex(bq, X)
    out = {}
    for k in X.degrees():
        T = X.terms[k]
        vec = {}
        for v in bq.vertices:
            r_out = exact.rank(X.diffs[k][v]) if k in X.diffs else 0
            r_in = exact.rank(X.diffs[k - 1][v]) if (k - 1) in X.diffs else 0
            vec[v] = T.dims[v] - r_out - r_in
        out[k] = vec
    return out
