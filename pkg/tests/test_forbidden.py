from hypothesis import given

from conftest import gentle_algebras
from gentle_lab.forbidden import (OnCycle, check_cycle_purity, extend_left_maximal, extend_right_maximal,
                                  find_forbidden_cycles, is_forbidden_module, is_relational_on_walk,
                                  maximal_forbidden_paths, strong_sources_sinks)
from gentle_lab.strings_bands import D, StringWord, parse_string


def test_e1_cycles(e1):
    assert set(find_forbidden_cycles(e1)) == {("a12", "a23", "a31"), ("a78", "a89", "a97")}


def test_e1_maximal_paths(e1):
    got = sorted(p.arrows for p in maximal_forbidden_paths(e1))
    assert got == [("a74", "a41"), ("a85", "a52"), ("a96", "a63")]


def test_extension_into_cycle(e1):
    assert isinstance(extend_right_maximal(e1, "a12"), OnCycle)
    p = extend_right_maximal(e1, "a74")
    assert p.arrows == ("a74", "a41") and p.right_maximal
    q = extend_left_maximal(e1, "a41")
    assert q.arrows == ("a74", "a41")


def test_e3_cycle(corpus):
    assert find_forbidden_cycles(corpus["e3"]) == (("a", "b"),)
    assert find_forbidden_cycles(corpus["kronecker"]) == ()


def test_forbidden_modules(e1):
    assert is_forbidden_module(e1, parse_string(e1, "a12"))
    assert not is_forbidden_module(e1, parse_string(e1, "a41"))
    assert not is_forbidden_module(e1, StringWord((), "1"))


def test_relational_on_walk(corpus):
    bq = corpus["e2"]
    w = (D("a"), D("b"))  # a walk, not a string
    assert is_relational_on_walk(bq, w, 1)
    assert not is_relational_on_walk(bq, w, 0)


def test_strong_sources_sinks(corpus):
    assert strong_sources_sinks(corpus["e2"]) == (("1",), ("3",))
    # both Kronecker arrows leave vertex 1
    assert strong_sources_sinks(corpus["kronecker"]) == ((), ())


def test_cycle_purity_on_corpus(corpus):
    for bq in corpus.values():
        assert check_cycle_purity(bq)


@given(gentle_algebras(max_vertices=8))
def test_cycle_purity(bq):
    v = check_cycle_purity(bq)
    assert v.ok, v.counterexample


@given(gentle_algebras(max_vertices=8))
def test_maximal_paths_avoid_cycles(bq):
    on = {a for c in find_forbidden_cycles(bq) for a in c}
    for p in maximal_forbidden_paths(bq):
        assert not on & set(p.arrows)
        assert p.left_maximal and p.right_maximal
