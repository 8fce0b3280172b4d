"""Quasi-tilted decision, the quasi-tilted criterion harness and
Krull-Gabriel dimension for gentle trees and one-cycle algebras."""
from __future__ import annotations

from dataclasses import dataclass

from .cma_recollement import build_cma, c_tilde, find_bound_quiver_isomorphism
from .derived_cat import homotopy_band_exists
from .forbidden import extend_right_maximal, find_forbidden_cycles, OnCycle
from .homodim import (INF, dimension_table, finitistic_dimension_witness, global_dimension)
from .quiver_core import BoundQuiver, connected_components, full_subquiver, structurally_equal


class UnsupportedShape(ValueError):
    pass


class CriterionDisagreement(AssertionError):
    """The two sides of an equivalence that should agree do not."""


@dataclass(frozen=True)
class Verdict:
    value: bool
    witness: object = None
    reason: str = ""

    def __bool__(self):
        return self.value


def _long_forbidden_witness(bq):
    for a in bq.arrows:
        r = extend_right_maximal(bq, a.name)
        if isinstance(r, OnCycle):
            return r
        if len(r) > 2:
            return r
    return None


def is_quasi_tilted(bq) -> Verdict:
    """gl.dim <= 2 and no indecomposable with pd >= 2 and id >= 2."""
    gd = global_dimension(bq)
    if gd > 2:
        return Verdict(False, _long_forbidden_witness(bq), "global dimension exceeds 2")
    for s, pd, idim in dimension_table(bq):
        if pd >= 2 and idim >= 2:
            return Verdict(False, s, "string module with pd >= 2 and id >= 2")
    return Verdict(True)


@dataclass(frozen=True)
class HomologicalConditions:
    cond1: bool
    cond2: bool
    fin_dim: object
    fin_dim_witness: object
    max_sum: int            # max pd + id over finite-finite non-forbidden strings
    cond2_witness: object
    stricter_reading: bool  # the stricter "pd + id <= 2" variant


def homological_conditions(bq) -> HomologicalConditions:
    fd = finitistic_dimension_witness(bq)
    best, wit = 0, None
    for s, pd, idim in dimension_table(bq, off_cycle_only=True):
        if pd != INF and idim != INF and pd + idim > best:
            best, wit = pd + idim, s
    return HomologicalConditions(fd.value <= 2, best <= 3, fd.value, fd.witness, best, wit, best <= 2)


@dataclass(frozen=True)
class CriterionReport:
    quasi_tilted: Verdict
    conditions: HomologicalConditions
    agree: bool
    c_tilde: BoundQuiver


def check_quasi_tilted_criterion(bq, strict=True) -> CriterionReport:
    ct = c_tilde(build_cma(bq))
    qt = is_quasi_tilted(ct)
    cond = homological_conditions(bq)
    agree = qt.value == (cond.cond1 and cond.cond2)
    if strict and not agree:
        raise CriterionDisagreement(
            f"quasi-tilted(C~) = {qt.value} but conditions = ({cond.cond1}, {cond.cond2})")
    return CriterionReport(qt, cond, agree, ct)


# ------------------------------------------------------------ shapes

@dataclass(frozen=True)
class ShapeClass:
    components: tuple      # vertex tuples
    cycle_counts: tuple    # per component: arrows - vertices + 1

    @property
    def tags(self):
        return tuple("tree" if c == 0 else "one-cycle" if c == 1 else "multi-cycle" for c in self.cycle_counts)

    @property
    def kind(self):
        if all(c == 0 for c in self.cycle_counts):
            return "forest" if len(self.cycle_counts) > 1 else "tree"
        if len(self.cycle_counts) == 1 and self.cycle_counts[0] == 1:
            return "one-cycle"
        return "other"


def shape_class(bq) -> ShapeClass:
    comps = connected_components(bq)
    counts = []
    for comp in comps:
        cs = set(comp)
        m = sum(1 for a in bq.arrows if a.source in cs)
        counts.append(m - len(comp) + 1)
    return ShapeClass(tuple(comps), tuple(counts))


def derived_discrete(bq) -> Verdict:
    d = homotopy_band_exists(bq)
    sc = shape_class(bq)
    caveat = "" if all(c <= 1 for c in sc.cycle_counts) else "reduction to band existence unlicensed beyond one cycle"
    return Verdict(not d.exists, d.witness, caveat)


def _components(bq):
    return [full_subquiver(bq, comp) for comp in connected_components(bq)]


def piecewise_hereditary_gentle(bq) -> bool:
    """Trees are piecewise hereditary; a one-cycle component is iff it carries
    a homotopy band."""
    out = True
    for comp in _components(bq):
        c = shape_class(comp).cycle_counts[0]
        if c == 0:
            continue
        if c == 1:
            out = out and homotopy_band_exists(comp).exists
            continue
        raise UnsupportedShape("piecewise hereditariness is only decided for trees and one-cycle algebras")
    return out


@dataclass(frozen=True)
class KgVerdict:
    kind: str     # "exactly" | "at_least"
    value: int
    provenance: str

    def __str__(self):
        return f"{'Exactly' if self.kind == 'exactly' else 'AtLeast'}({self.value})"

    @property
    def exact(self):
        return self.kind == "exactly"


def _kg_connected(bq) -> KgVerdict:
    c = shape_class(bq).cycle_counts[0]
    if c > 1:
        raise UnsupportedShape("Krull-Gabriel dimension is only classified for trees and one-cycle algebras")
    dd = not homotopy_band_exists(bq).exists
    if not dd:
        return KgVerdict("at_least", 2, "not derived discrete: homotopy band exists")
    ph = c == 0 or homotopy_band_exists(bq).exists
    if ph:
        return KgVerdict("exactly", 0, "derived discrete and piecewise hereditary")
    if global_dimension(bq) != INF:
        return KgVerdict("exactly", 2, "derived discrete, not piecewise hereditary, finite global dimension")
    return KgVerdict("exactly", 1, "derived discrete, not piecewise hereditary, infinite global dimension")


def kg_dimension(bq) -> KgVerdict:
    """Krull-Gabriel dimension; a disconnected algebra takes the maximum over
    its components."""
    parts = [_kg_connected(c) for c in _components(bq)]
    if not parts:
        return KgVerdict("exactly", 0, "empty")
    lower = [p for p in parts if not p.exact]
    if lower:
        return KgVerdict("at_least", max(p.value for p in parts), lower[0].provenance)
    best = max(parts, key=lambda p: p.value)
    return KgVerdict("exactly", best.value, best.provenance)


@dataclass
class KgComparisonReport:
    kg_a: KgVerdict
    kg_c: KgVerdict
    kg_c_tilde: KgVerdict
    a_iso_c: bool
    clauses: dict   # clause -> "holds" | "fails" | "skipped"


def check_kg_comparison(bq) -> KgComparisonReport:
    if shape_class(bq).kind not in ("one-cycle",):
        raise UnsupportedShape("the comparison is stated for connected one-cycle gentle algebras")
    cma = build_cma(bq)
    C = cma.bq
    kg_a, kg_c = kg_dimension(bq), kg_dimension(C)
    kg_t = kg_dimension(c_tilde(cma))
    iso = not cma.catalog_vertex and structurally_equal(bq, C)
    iso = iso or find_bound_quiver_isomorphism(bq, C) is not None
    clauses = {}
    if kg_a.exact and kg_c.exact:
        clauses["1"] = "holds" if kg_a.value <= 2 and kg_c.value <= 2 else "fails"
    else:
        clauses["1"] = "skipped"
    if kg_a.exact and kg_c.exact:
        clauses["2"] = "holds" if (kg_a.value == kg_c.value) == iso else "fails"
    elif iso:
        clauses["2"] = "holds" if kg_a == kg_c else "fails"
    else:
        clauses["2"] = "skipped"
    clauses["3"] = "holds" if kg_t.exact and kg_t.value == 0 else "fails"
    return KgComparisonReport(kg_a, kg_c, kg_t, iso, clauses)
