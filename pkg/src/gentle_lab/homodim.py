"""Projective and injective dimensions of string and band modules.

Each end of a string has a descending attachment (a forbidden path leaving
the end vertex that the module does not use) and an ascending one (a
forbidden path arriving at it).  With interior valleys (a direct letter
followed by an inverse one) and peaks (inverse then direct):

    pd M(s) = max(len(F_ld), len(F_rd), 1 if s has a valley else 0)
    id M(s) = max(len(F_lu), len(F_ru), 1 if s has a peak else 0)

where an attachment running into a forbidden cycle has infinite length.
A valley contributes the projective summand P(v) of the first syzygy,
which the pure end-attachment formula would miss.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from .forbidden import (ForbiddenPath, OnCycle, extend_left_maximal, extend_right_maximal,
                        find_forbidden_cycles, forbidden_path_length, maximal_forbidden_paths,
                        strong_sources_sinks)
from .strings_bands import (BandWord, Letter, StringAutomaton, StringWord, all_letters,
                            band_defect, NotABandError, valid_pair, require_string)

INF = math.inf


def fmt_dim(x):
    """Integer, or the string 'inf' for an infinite dimension."""
    return "inf" if x == INF else int(x)


@dataclass(frozen=True)
class EndAttachment:
    lu: object = None
    ru: object = None
    ld: object = None
    rd: object = None
    valley: bool = False
    peak: bool = False

    def lengths(self):
        return {k: forbidden_path_length(getattr(self, k)) for k in ("lu", "ru", "ld", "rd")}


# ------------------------------------------------------------ end analysis

def descending_seed(bq, first: Letter):
    """Arrow leaving the left end that the string does not use, or None."""
    if first.sign > 0:
        v = bq.source(first.arrow)
        cands = [c for c in bq.out_arrows[v] if c != first.arrow]
    else:
        v = bq.target(first.arrow)
        cands = [c for c in bq.out_arrows[v] if (first.arrow, c) not in bq.relations]
    assert len(cands) <= 1, "gentle algebras admit at most one descending junction"
    return cands[0] if cands else None


def ascending_seed(bq, first: Letter):
    """Arrow entering the left end that the string does not use, or None."""
    if first.sign < 0:
        v = bq.target(first.arrow)
        cands = [c for c in bq.in_arrows[v] if c != first.arrow]
    else:
        v = bq.source(first.arrow)
        cands = [c for c in bq.in_arrows[v] if (c, first.arrow) not in bq.relations]
    assert len(cands) <= 1, "gentle algebras admit at most one ascending junction"
    return cands[0] if cands else None


def _desc(bq, c):
    return None if c is None else extend_right_maximal(bq, c)


def _asc(bq, c):
    return None if c is None else extend_left_maximal(bq, c)


def end_attachments(bq, s: StringWord) -> EndAttachment:
    if s.is_trivial:
        outs = bq.out_arrows[s.vertex]
        ins = bq.in_arrows[s.vertex]
        pick = lambda xs, i: xs[i] if len(xs) > i else None
        return EndAttachment(lu=_asc(bq, pick(ins, 0)), ru=_asc(bq, pick(ins, 1)),
                             ld=_desc(bq, pick(outs, 0)), rd=_desc(bq, pick(outs, 1)))
    w = s.letters
    first, last = w[0], w[-1].inverse()
    valley = any(w[i - 1].sign > 0 and w[i].sign < 0 for i in range(1, len(w)))
    peak = any(w[i - 1].sign < 0 and w[i].sign > 0 for i in range(1, len(w)))
    return EndAttachment(lu=_asc(bq, ascending_seed(bq, first)),
                         ru=_asc(bq, ascending_seed(bq, last)),
                         ld=_desc(bq, descending_seed(bq, first)),
                         rd=_desc(bq, descending_seed(bq, last)),
                         valley=valley, peak=peak)


@lru_cache(maxsize=256)
def _letter_tables(bq):
    """Per letter u: lengths of the descending/ascending attachments at a left
    end whose first letter is u."""
    desc, asc = {}, {}
    for u in all_letters(bq):
        desc[u] = forbidden_path_length(_desc(bq, descending_seed(bq, u)))
        asc[u] = forbidden_path_length(_asc(bq, ascending_seed(bq, u)))
    return desc, asc


def proj_dim_string(bq, s: StringWord):
    require_string(bq, s)
    e = end_attachments(bq, s)
    return max(forbidden_path_length(e.ld), forbidden_path_length(e.rd), 1 if e.valley else 0)


def inj_dim_string(bq, s: StringWord):
    require_string(bq, s)
    e = end_attachments(bq, s)
    return max(forbidden_path_length(e.lu), forbidden_path_length(e.ru), 1 if e.peak else 0)


def band_dims(bq, b) -> tuple:
    letters = b.letters if isinstance(b, BandWord) else tuple(b)
    why = band_defect(bq, letters)
    if why:
        raise NotABandError(why)
    return (1, 1)


def global_dimension(bq):
    if find_forbidden_cycles(bq):
        return INF
    return max((len(extend_right_maximal(bq, a.name)) for a in bq.arrows), default=0)


# ------------------------------------------------------------ profiles

@dataclass(frozen=True)
class Profile:
    """First letter, last letter and interior valley/peak flags of a string."""
    first: Letter
    last: Letter
    valley: bool
    peak: bool


def profile_dims(bq, prof: Profile) -> tuple:
    desc, asc = _letter_tables(bq)
    r = prof.last.inverse()
    pd = max(desc[prof.first], desc[r], 1 if prof.valley else 0)
    idim = max(asc[prof.first], asc[r], 1 if prof.peak else 0)
    return pd, idim


def string_profiles(bq, letter_filter=None) -> dict:
    """Every realizable profile of a non-trivial string, with a shortest witness.

    Breadth-first search on (last letter, valley seen, peak seen) from
    every first letter; exact because string validity is two-local.
    """
    ok = (lambda u: True) if letter_filter is None else letter_filter
    letters = [u for u in all_letters(bq) if ok(u)]
    nxt = {u: [w for w in letters if valid_pair(bq, u, w)] for u in letters}
    out = {}
    for u0 in letters:
        start = (u0, False, False)
        parent = {start: None}
        queue = deque([start])
        while queue:
            st = queue.popleft()
            u, v, p = st
            prof = Profile(u0, u, v, p)
            if prof not in out:
                word = []
                x = st
                while x is not None:
                    word.append(x[0])
                    x = parent[x]
                out[prof] = StringWord(tuple(reversed(word)))
            for w in nxt[u]:
                ns = (w, v or (u.sign > 0 and w.sign < 0), p or (u.sign < 0 and w.sign > 0))
                if ns not in parent:
                    parent[ns] = st
                    queue.append(ns)
    return out


@lru_cache(maxsize=256)
def _profiles_cached(bq, off_cycle_only=False):
    if off_cycle_only:
        from .forbidden import off_cycle_letter
        return string_profiles(bq, off_cycle_letter(bq))
    return string_profiles(bq)


def band_exists(bq) -> bool:
    """Bands exist iff the string automaton has a cycle."""
    return StringAutomaton(bq).has_cycle()


def dimension_table(bq, off_cycle_only=False):
    """(string witness, pd, id) for trivial strings and every profile."""
    rows = []
    for v in bq.vertices:
        s = StringWord((), v)
        e = end_attachments(bq, s)
        pd = max(forbidden_path_length(e.ld), forbidden_path_length(e.rd))
        idim = max(forbidden_path_length(e.lu), forbidden_path_length(e.ru))
        rows.append((s, pd, idim))
    for prof, w in _profiles_cached(bq, off_cycle_only).items():
        pd, idim = profile_dims(bq, prof)
        rows.append((w, pd, idim))
    return rows


@dataclass(frozen=True)
class DimWitness:
    value: object
    witness: object = None


def finitistic_dimension(bq):
    return finitistic_dimension_witness(bq).value


def finitistic_dimension_witness(bq) -> DimWitness:
    """Largest finite projective dimension over strings and bands."""
    best = DimWitness(0, None)
    for s, pd, _ in dimension_table(bq):
        if pd != INF and pd > best.value:
            best = DimWitness(pd, s)
    if best.value < 1 and band_exists(bq):
        best = DimWitness(1, "band")
    return best


def dim2_predicates(bq, s: StringWord) -> tuple:
    """(all attachments have length <= 2, some ascending one has length 2,
    some descending one has length 2)."""
    L = end_attachments(bq, s).lengths()
    cond_a = all(x <= 2 for x in L.values())
    cond_b = L["lu"] == 2 or L["ru"] == 2
    cond_c = L["ld"] == 2 or L["rd"] == 2
    return cond_a, cond_b, cond_c


@dataclass(frozen=True)
class SumBoundVerdict:
    applicable: bool
    holds: bool | None
    bound: object = None
    supremum: object = None
    witness: object = None
    reason: str = ""


def sum_bound_hypothesis(bq) -> bool:
    long_paths = [p for p in maximal_forbidden_paths(bq) if len(p) >= 2]
    src, snk = strong_sources_sinks(bq)
    starts = all(bq.source(p.arrows[0]) in src for p in long_paths)
    ends = all(bq.target(p.arrows[-1]) in snk for p in long_paths)
    return starts or ends


def check_sum_bound(bq) -> SumBoundVerdict:
    """Homological bound: sup(pd + id) <= 2 gl.dim - 1 under the strong
    source/sink hypothesis."""
    gd = global_dimension(bq)
    if gd == INF:
        return SumBoundVerdict(False, None, reason="infinite global dimension")
    if gd <= 1:
        # hereditary: no forbidden path of length 2, and the bound 2*gd - 1
        # is already beaten by any module that is neither projective nor injective
        return SumBoundVerdict(False, None, reason="global dimension at most 1")
    if not sum_bound_hypothesis(bq):
        return SumBoundVerdict(False, None, reason="hypothesis on maximal forbidden paths fails")
    sup, wit = 0, None
    for s, pd, idim in dimension_table(bq):
        if pd + idim > sup:
            sup, wit = pd + idim, s
    if sup < 2 and band_exists(bq):
        sup, wit = 2, "band"
    bound = 2 * gd - 1
    return SumBoundVerdict(True, sup <= bound, bound, sup, wit)
