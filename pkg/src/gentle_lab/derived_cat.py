"""Homotopy strings and bands, string complexes and cohomological width.

A homotopy letter is a nonzero path of positive length (direct) or its
formal inverse.  Consecutive letters glue as follows (walks read left to
right):

    p q        end(p) = start(q) and last(p) first(q) in I
    p q^-1     end(p) = end(q) and last(p) != last(q)
    p^-1 q     start(p) = start(q) and first(p) != first(q)
    p^-1 q^-1  end(q) = start(p) and last(q) first(p) in I
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from . import exact
from ._kernels import INF_WEIGHT, minplus_closure
from .forbidden import cycle_arrow_index
from .quiver_core import Path, QuiverError, make_path, multiply_paths
from .replinalg import ComplexOfReps, Representation, cohomology_dims, direct_sum, projective_module


class ZeroPathError(ValueError):
    pass


@dataclass(frozen=True)
class HLetter:
    path: Path
    sign: int = 1

    @property
    def source(self):
        return self.path.start if self.sign > 0 else self.path.end

    @property
    def target(self):
        return self.path.end if self.sign > 0 else self.path.start

    def inverse(self):
        return HLetter(self.path, -self.sign)

    def __str__(self):
        body = ".".join(self.path.arrows)
        return body if self.sign > 0 else body + "^-1"


@dataclass(frozen=True)
class HomotopyWord:
    letters: tuple = ()
    vertex: str | None = None
    closed: bool = False

    @property
    def is_trivial(self):
        return not self.letters

    @property
    def balance(self):
        return sum(u.sign for u in self.letters)

    def inverse(self):
        if self.is_trivial:
            return self
        return HomotopyWord(tuple(u.inverse() for u in reversed(self.letters)), closed=self.closed)

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return "e:" + self.vertex if self.is_trivial else " ".join(str(u) for u in self.letters)


@dataclass(frozen=True)
class HVerdict:
    ok: bool
    index: int | None = None
    clause: str = ""

    def __bool__(self):
        return self.ok


def glue_defect(bq, u: HLetter, w: HLetter):
    p, q = u.path, w.path
    if u.sign > 0 and w.sign > 0:
        if p.end != q.start:
            return "not composable"
        if (p.arrows[-1], q.arrows[0]) not in bq.relations:
            return "direct-direct composition must lie in the relations"
    elif u.sign > 0 > w.sign:
        if p.end != q.end:
            return "not composable"
        if p.arrows[-1] == q.arrows[-1]:
            return "direct-inverse pair shares its last arrow"
    elif u.sign < 0 < w.sign:
        if p.start != q.start:
            return "not composable"
        if p.arrows[0] == q.arrows[0]:
            return "inverse-direct pair shares its first arrow"
    else:
        if q.end != p.start:
            return "not composable"
        if (q.arrows[-1], p.arrows[0]) not in bq.relations:
            return "inverse-inverse composition must lie in the relations"
    return None


def _as_letters(w):
    return w.letters if isinstance(w, HomotopyWord) else tuple(w)


def _check_paths(bq, letters):
    for u in letters:
        for a in u.path.arrows:
            if a not in bq.arrow:
                raise QuiverError(f"unknown arrow {a!r}")
        if not u.path.arrows or make_path(bq, u.path.arrows) is None:
            raise ZeroPathError(f"{'.'.join(u.path.arrows)} is zero in the algebra")


def is_homotopy_string(bq, w) -> HVerdict:
    if isinstance(w, HomotopyWord) and w.is_trivial:
        return HVerdict(w.vertex in bq.vertex_index, None, "" if w.vertex in bq.vertex_index else "unknown vertex")
    letters = _as_letters(w)
    _check_paths(bq, letters)
    if not letters:
        return HVerdict(False, 0, "empty word")
    for i in range(1, len(letters)):
        why = glue_defect(bq, letters[i - 1], letters[i])
        if why:
            return HVerdict(False, i, why)
    return HVerdict(True)


def is_homotopy_band(bq, w) -> HVerdict:
    letters = _as_letters(w)
    _check_paths(bq, letters)
    if not letters:
        return HVerdict(False, 0, "empty word")
    for i in range(len(letters)):
        why = glue_defect(bq, letters[i - 1], letters[i])
        if why:
            return HVerdict(False, i, why)
    if sum(u.sign for u in letters) != 0:
        return HVerdict(False, None, "unbalanced")
    n = len(letters)
    for d in range(1, n):
        if n % d == 0 and letters[:d] * (n // d) == letters:
            return HVerdict(False, None, "a proper power")
    return HVerdict(True)


def parse_homotopy(bq, text: str) -> HomotopyWord:
    """``a.b c^-1`` : letters separated by spaces, arrows of a path by dots."""
    text = text.strip()
    if text.startswith("e:"):
        v = text[2:].strip()
        if v not in bq.vertex_index:
            raise QuiverError(f"unknown vertex {v!r}")
        return HomotopyWord((), v)
    letters = []
    for tok in text.split():
        sign = 1
        if tok.endswith("^-1"):
            tok, sign = tok[:-3], -1
        arrows = tuple(x for x in tok.split(".") if x)
        for a in arrows:
            if a not in bq.arrow:
                raise QuiverError(f"unknown arrow {a!r}")
        p = make_path(bq, arrows)
        if p is None:
            raise ZeroPathError(f"{tok} is zero in the algebra")
        letters.append(HLetter(p, sign))
    w = HomotopyWord(tuple(letters))
    v = is_homotopy_string(bq, w)
    if not v:
        raise ValueError(f"not a homotopy string at index {v.index}: {v.clause}")
    return w


# ------------------------------------------------------------ letter graph

def homotopy_letters(bq, path_filter=None) -> list:
    ok = (lambda p: True) if path_filter is None else path_filter
    out = []
    for p in bq.nonzero_paths:
        if p.arrows and ok(p):
            out += [HLetter(p, 1), HLetter(p, -1)]
    return out


def letter_graph(bq, path_filter=None):
    letters = homotopy_letters(bq, path_filter)
    nxt = {u: [w for w in letters if glue_defect(bq, u, w) is None] for u in letters}
    return letters, nxt


def _word_key(letters):
    return tuple((u.path.arrows, -u.sign) for u in letters)


def canonical_homotopy(w: HomotopyWord) -> HomotopyWord:
    if w.is_trivial:
        return w
    inv = w.inverse()
    return w if _word_key(w.letters) <= _word_key(inv.letters) else inv


def enumerate_homotopy_strings(bq, max_letters: int, path_filter=None) -> list:
    """Homotopy string classes with at most max_letters letters, stalks included."""
    letters, nxt = letter_graph(bq, path_filter)
    found = {HomotopyWord((), v) for v in bq.vertices}
    stack = [(u,) for u in letters]
    while stack:
        w = stack.pop()
        found.add(canonical_homotopy(HomotopyWord(w)))
        if len(w) < max_letters:
            stack.extend(w + (x,) for x in nxt[w[-1]])
    return sorted(found, key=lambda h: (len(h), _word_key(h.letters), h.vertex or ""))


def closed_word_search(bq, max_len: int) -> bool:
    """Brute force: some balanced closed homotopy word of length <= max_len."""
    letters, nxt = letter_graph(bq)
    stack = [(u,) for u in letters]
    while stack:
        w = stack.pop()
        if sum(u.sign for u in w) == 0 and glue_defect(bq, w[-1], w[0]) is None:
            return True
        if len(w) < max_len:
            stack.extend(w + (x,) for x in nxt[w[-1]])
    return False


@dataclass(frozen=True)
class BandDecision:
    exists: bool
    witness: HomotopyWord | None = None


def homotopy_band_exists(bq, path_filter=None) -> BandDecision:
    """Decide whether a homotopy band exists.

    Letters are graph nodes with weight +1 (direct) or -1 (inverse).  A
    strongly connected component admits a closed walk of weight zero iff it
    carries cycles of weight <= 0 and of weight >= 0; the lightest and
    heaviest closed walks come from min-plus closures.
    """
    letters, nxt = letter_graph(bq, path_filter)
    n = len(letters)
    if n == 0:
        return BandDecision(False)
    idx = {u: i for i, u in enumerate(letters)}
    rows, cols = [], []
    for u in letters:
        for w in nxt[u]:
            rows.append(idx[u])
            cols.append(idx[w])
    A = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
    ncomp, label = connected_components(A, directed=True, connection="strong")
    sign = np.array([u.sign for u in letters], dtype=np.int64)
    for c in range(ncomp):
        members = np.nonzero(label == c)[0]
        sub = {int(m): k for k, m in enumerate(members)}
        W = np.full((len(members), len(members)), INF_WEIGHT, dtype=np.int64)
        has_edge = False
        for i in members:
            for w in nxt[letters[i]]:
                j = idx[w]
                if j in sub:
                    W[sub[int(i)], sub[j]] = sign[i]
                    has_edge = True
        if not has_edge:
            continue
        lo = np.min(np.diag(minplus_closure(W)))
        Wn = np.where(W >= INF_WEIGHT, INF_WEIGHT, -W)
        hi = -np.min(np.diag(minplus_closure(Wn)))
        if lo <= 0 <= hi:
            w = _zero_walk(letters, nxt, [int(m) for m in members], idx)
            return BandDecision(True, w)
    return BandDecision(False)


def _zero_walk(letters, nxt, members, idx):
    """Shortest balanced closed walk through the first member, made primitive."""
    inside = set(members)
    s = members[0]
    bound = 2 * len(members) + 2
    while True:
        start = (s, 0)
        parent = {start: None}
        queue = deque([start])
        while queue:
            node, wt = queue.popleft()
            for x in nxt[letters[node]]:
                j = idx[x]
                if j not in inside:
                    continue
                nw = wt + letters[node].sign
                if j == s and nw == 0:
                    walk = [node]
                    cur = (node, wt)
                    while parent[cur] is not None:
                        cur = parent[cur]
                        walk.append(cur[0])
                    walk.reverse()
                    w = tuple(letters[k] for k in walk)
                    n = len(w)
                    for d in range(1, n + 1):
                        if n % d == 0 and w[:d] * (n // d) == w:
                            return HomotopyWord(w[:d], closed=True)
                if abs(nw) <= bound and (j, nw) not in parent:
                    parent[(j, nw)] = (node, wt)
                    queue.append((j, nw))
        bound *= 2


# ------------------------------------------------------------ complexes

def walk_degrees(h: HomotopyWord, n: int = 0) -> list:
    """Degree of each walk vertex; direct letters step down by one."""
    degs = [n]
    for u in h.letters:
        degs.append(degs[-1] - u.sign)
    return degs


def walk_points(h: HomotopyWord) -> list:
    if h.is_trivial:
        return [h.vertex]
    pts = [h.letters[0].source]
    for u in h.letters:
        pts.append(u.target)
    return pts


def string_complex(bq, h: HomotopyWord, n: int = 0) -> ComplexOfReps:
    """Complex of projectives attached to a homotopy string, anchored so that
    the first walk vertex sits in degree n."""
    v = is_homotopy_string(bq, h)
    if not v:
        raise ValueError(f"not a homotopy string at index {v.index}: {v.clause}")
    pts = walk_points(h)
    degs = walk_degrees(h, n)
    by_deg = {}
    for i, d in enumerate(degs):
        by_deg.setdefault(d, []).append(i)
    proj = {}
    terms = {}
    offset = {}  # (point i, vertex u) -> row offset inside the degree term at u
    for d, pts_i in by_deg.items():
        mods = []
        run = {u: 0 for u in bq.vertices}
        for i in pts_i:
            P = proj.setdefault(pts[i], projective_module(bq, pts[i]))
            mods.append(P)
            for u in bq.vertices:
                offset[(i, u)] = run[u]
                run[u] += P.dims[u]
        terms[d] = direct_sum(bq, mods)
    lo, hi = min(by_deg), max(by_deg)
    diffs = {}
    for d in range(lo, hi):
        diffs[d] = {u: exact.zeros(terms[d].dims[u], terms[d + 1].dims[u]) for u in bq.vertices}
    for k, u in enumerate(h.letters):
        # the letter joins walk points k and k+1
        if u.sign > 0:
            src, dst = k + 1, k      # P(pts[k+1]) -> P(pts[k]), degree drops toward k+1
        else:
            src, dst = k, k + 1
        d = degs[src]
        assert degs[dst] == d + 1
        Psrc, Pdst = proj[pts[src]], proj[pts[dst]]
        for vtx in bq.vertices:
            index = {q: j for j, q in enumerate(Pdst.basis[vtx])}
            for r, q in enumerate(Psrc.basis[vtx]):
                img = multiply_paths(bq, u.path, q)
                if img is not None:
                    diffs[d][vtx][offset[(src, vtx)] + r, offset[(dst, vtx)] + index[img]] += 1
    return ComplexOfReps(terms, diffs)


@dataclass(frozen=True)
class WidthReport:
    cohomology: dict  # degree -> total dimension
    hw: int


def hw(bq, h: HomotopyWord, n: int = 0) -> WidthReport:
    X = string_complex(bq, h, n)
    coh = cohomology_dims(bq, X)
    totals = {k: sum(vec.values()) for k, vec in coh.items()}
    nz = [k for k, t in totals.items() if t]
    width = (max(nz) - min(nz) + 1) if nz else 0
    return WidthReport(dict(sorted(totals.items())), width)


def off_cycle_path_filter(bq):
    idx = cycle_arrow_index(bq)
    return lambda p: not any(a in idx for a in p.arrows)


@dataclass
class WidthCriterionReport:
    side1: bool
    side2: bool
    agree: bool
    max_hw: int
    witness: object
    strings_checked: int
    off_cycle_band: bool
    conditions: tuple


def check_width_criterion(bq, max_letters: int = 6) -> WidthCriterionReport:
    """Compare: every off-cycle homotopy string complex has hw <= 2, versus
    the two homological conditions on the algebra."""
    from .classify import homological_conditions
    filt = off_cycle_path_filter(bq)
    words = enumerate_homotopy_strings(bq, max_letters, filt)
    best, wit = 0, None
    for h in words:
        r = hw(bq, h)
        if r.hw > best:
            best, wit = r.hw, h
    cond = homological_conditions(bq)
    side1 = best <= 2
    side2 = cond.cond1 and cond.cond2
    band = homotopy_band_exists(bq, filt).exists
    return WidthCriterionReport(side1, side2, side1 == side2, best, wit, len(words), band, (cond.cond1, cond.cond2))
