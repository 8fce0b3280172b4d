from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import gentle_algebras
from gentle_lab import exact
from gentle_lab.quiver_core import make_bound_quiver
from gentle_lab.replinalg import (CAP_REACHED, ComplexError, ComplexOfReps, JordanSpec, RepresentationError,
                                  band_module, check_complex, cohomology_dims, direct_sum, hom_space,
                                  injective_module, is_isomorphic, make_representation, projective_cover,
                                  projective_module, resolve_id, resolve_pd, simple_module, string_module,
                                  syzygy)
from gentle_lab.strings_bands import StringWord, enumerate_bands, enumerate_strings, parse_string


def test_projective_dims(e1):
    P = projective_module(e1, "4")
    # paths from 4: e4, a41, a41.a12 ; a41.a12.a23 is zero? a12 a23 in I
    assert P.total_dim == len(e1.paths_by_start["4"])
    assert is_isomorphic(e1, P, string_module(e1, parse_string(e1, "a41 a12")))


def test_relations_enforced(corpus):
    bq = corpus["e2"]
    with pytest.raises(RepresentationError):
        make_representation(bq, {"1": 1, "2": 1, "3": 1}, {"a": [[1]], "b": [[1]]})


def test_simple_resolutions(e1):
    assert resolve_pd(e1, simple_module(e1, "4")) == 1
    assert resolve_id(e1, simple_module(e1, "4")) == 1
    assert resolve_pd(e1, simple_module(e1, "1"), cap=8) is CAP_REACHED


def test_syzygy_of_simple(e1):
    # the radical of P(4) is the string a12 (module 1\2), which is uniserial
    K = syzygy(e1, simple_module(e1, "4"))
    assert is_isomorphic(e1, K, string_module(e1, parse_string(e1, "a12")))


def test_projective_cover_is_surjective(e1):
    M = string_module(e1, parse_string(e1, "a74^-1 a78"))
    cov = projective_cover(e1, M)
    for v in e1.vertices:
        assert exact.rank(cov.maps[v]) == M.dims[v]


@given(gentle_algebras(max_vertices=5))
def test_hom_from_projective(bq):
    # dim Hom(P(v), M) = dim M_v
    for s in enumerate_strings(bq, 3)[:12]:
        M = string_module(bq, s)
        for v in bq.vertices:
            assert len(hom_space(bq, projective_module(bq, v), M)) == M.dims[v]


@given(gentle_algebras(max_vertices=5))
def test_hom_into_injective(bq):
    for s in enumerate_strings(bq, 3)[:12]:
        M = string_module(bq, s)
        for v in bq.vertices:
            assert len(hom_space(bq, M, injective_module(bq, v))) == M.dims[v]


@given(gentle_algebras(max_vertices=5))
def test_distinct_strings_not_isomorphic(bq):
    ss = enumerate_strings(bq, 3)[:10]
    mods = [string_module(bq, s) for s in ss]
    for i in range(len(mods)):
        assert is_isomorphic(bq, mods[i], mods[i])
        for j in range(i + 1, len(mods)):
            assert not is_isomorphic(bq, mods[i], mods[j])


@given(gentle_algebras(max_vertices=5))
def test_string_inverse_gives_same_module(bq):
    for s in enumerate_strings(bq, 3):
        assert is_isomorphic(bq, string_module(bq, s), string_module(bq, s.inverse()))


def test_kronecker_band_modules(corpus):
    bq = corpus["kronecker"]
    (b,) = enumerate_bands(bq, 4)
    M1 = band_module(bq, b, JordanSpec(Fraction(2), 1))
    M2 = band_module(bq, b, JordanSpec(Fraction(3), 1))
    assert M1.dims == {"1": 1, "2": 1}
    assert not is_isomorphic(bq, M1, M2)
    assert is_isomorphic(bq, M1, band_module(bq, b, JordanSpec(Fraction(2), 1)))
    with pytest.raises(RepresentationError):
        JordanSpec(0)


@pytest.mark.parametrize("lam,size", [(1, 1), (2, 1), (-1, 2), (Fraction(1, 2), 3)])
def test_band_modules_dims_one(corpus, lam, size):
    bq = corpus["kronecker"]
    (b,) = enumerate_bands(bq, 4)
    M = band_module(bq, b, JordanSpec(Fraction(lam), size))
    assert resolve_pd(bq, M) == 1 and resolve_id(bq, M) == 1


def test_direct_sum_dims(e1):
    S = direct_sum(e1, [simple_module(e1, "4"), simple_module(e1, "4")])
    assert S.dims["4"] == 2 and S.total_dim == 2


def test_complex_checks(corpus):
    bq = corpus["e2"]
    P1, P2, P3 = (projective_module(bq, v) for v in "123")
    # P(3) -> P(2) -> P(1) by left multiplication with b, then a
    f = {v: exact.zeros(P3.dims[v], P2.dims[v]) for v in bq.vertices}
    f["3"][0, 0] = 1   # e3 -> b
    g = {v: exact.zeros(P2.dims[v], P1.dims[v]) for v in bq.vertices}
    g["2"][0, 0] = 1   # e2 -> a
    X = ComplexOfReps({-2: P3, -1: P2, 0: P1}, {-2: f, -1: g})
    check_complex(bq, X)
    coh = {k: sum(v.values()) for k, v in cohomology_dims(bq, X).items()}
    assert coh == {-2: 0, -1: 0, 0: 1}
    # the identity composed with itself is not zero
    I2 = {v: exact.identity(P2.dims[v]) for v in bq.vertices}
    with pytest.raises(ComplexError):
        check_complex(bq, ComplexOfReps({-1: P2, 0: P2, 1: P2}, {-1: I2, 0: I2}))
    # e2 -> e2 with b -> 0 does not commute with the arrow b
    half = {v: exact.zeros(P2.dims[v], P2.dims[v]) for v in bq.vertices}
    half["2"][0, 0] = 1
    with pytest.raises(ComplexError):
        check_complex(bq, ComplexOfReps({0: P2, 1: P2}, {0: half}))
