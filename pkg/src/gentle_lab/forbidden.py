"""Forbidden paths: arrow sequences whose consecutive compositions are all zero."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .quiver_core import BoundQuiver, opposite
from .strings_bands import StringWord, Letter


@dataclass(frozen=True)
class ForbiddenPath:
    arrows: tuple
    vertex: str | None = None  # carried only by length-0 paths
    left_maximal: bool = False
    right_maximal: bool = False
    is_cycle: bool = False

    def __len__(self):
        return len(self.arrows)

    def __str__(self):
        return " ".join(self.arrows) if self.arrows else f"e:{self.vertex}"


@dataclass(frozen=True)
class OnCycle:
    """Marker: the extension ran into a forbidden cycle."""
    cycle: tuple

    def __str__(self):
        return "on-cycle(" + " ".join(self.cycle) + ")"


def forbidden_successor(bq: BoundQuiver, a: str):
    succ = bq.successor[a]
    return succ[0] if succ else None


def forbidden_predecessor(bq: BoundQuiver, a: str):
    pred = bq.predecessor[a]
    return pred[0] if pred else None


def _rotate_min(cyc, bq):
    i = min(range(len(cyc)), key=lambda k: bq.arrow_index[cyc[k]])
    return tuple(cyc[i:] + cyc[:i])


def extend_right_maximal(bq: BoundQuiver, seed: str):
    """Follow forbidden successors from seed until they stop or repeat."""
    path = [seed]
    seen = {seed: 0}
    while True:
        c = forbidden_successor(bq, path[-1])
        if c is None:
            left = forbidden_predecessor(bq, seed) is None
            return ForbiddenPath(tuple(path), left_maximal=left, right_maximal=True)
        if c in seen:
            return OnCycle(_rotate_min(path[seen[c]:], bq))
        seen[c] = len(path)
        path.append(c)


def extend_left_maximal(bq: BoundQuiver, seed: str):
    """Left-maximal extension, computed as right-maximal in the opposite quiver."""
    r = extend_right_maximal(opposite_cached(bq), seed)
    if isinstance(r, OnCycle):
        return OnCycle(_rotate_min(tuple(reversed(r.cycle)), bq))
    right = forbidden_successor(bq, seed) is None
    return ForbiddenPath(tuple(reversed(r.arrows)), left_maximal=True, right_maximal=right)


@lru_cache(maxsize=512)
def opposite_cached(bq):
    return opposite(bq)


@lru_cache(maxsize=512)
def find_forbidden_cycles(bq: BoundQuiver) -> tuple:
    """Cycles of the forbidden-successor map, minimal arrow first, sorted."""
    state = {}
    cycles = []
    for a in bq.arrows:
        if a.name in state:
            continue
        trail = []
        pos = {}
        x = a.name
        while x is not None and x not in state and x not in pos:
            pos[x] = len(trail)
            trail.append(x)
            x = forbidden_successor(bq, x)
        if x is not None and x in pos:
            cycles.append(_rotate_min(tuple(trail[pos[x]:]), bq))
        for y in trail:
            state[y] = True
    cycles.sort(key=lambda c: bq.arrow_index[c[0]])
    seen = set()
    for c in cycles:
        assert not (seen & set(c)), "forbidden cycles must be arrow-disjoint"
        seen |= set(c)
    return tuple(cycles)


@lru_cache(maxsize=512)
def cycle_arrow_index(bq) -> dict:
    """arrow -> (cycle id, position) for arrows on a forbidden cycle."""
    out = {}
    for i, cyc in enumerate(find_forbidden_cycles(bq)):
        for j, a in enumerate(cyc):
            out[a] = (i, j)
    return out


def on_cycle(bq, a) -> bool:
    return a in cycle_arrow_index(bq)


def off_cycle_letter(bq):
    idx = cycle_arrow_index(bq)
    return lambda u: u.arrow not in idx


def maximal_forbidden_paths(bq) -> list:
    """All finite forbidden paths that are both left and right maximal.

    Isolated arrows (no forbidden neighbours) are included as length-1 paths.
    """
    out = []
    for a in bq.arrows:
        if forbidden_predecessor(bq, a.name) is None:
            r = extend_right_maximal(bq, a.name)
            assert isinstance(r, ForbiddenPath)
            out.append(r)
    return out


def is_relational_vertex(bq, v) -> bool:
    """Some relation ab passes through v (t(a) = v = s(b))."""
    return any(bq.target(x) == v for x, _ in bq.relations)


def is_relational_on_walk(bq, w, position: int) -> bool:
    """Whether the vertex at ``position`` of the walk sits between two letters
    of the same direction composing to zero."""
    letters = w.letters if isinstance(w, StringWord) else tuple(w)
    n = len(letters)
    if position < 0 or position > n:
        raise IndexError(f"position {position} outside 0..{n}")
    if position == 0 or position == n:
        return False
    u, x = letters[position - 1], letters[position]
    if u.sign > 0 and x.sign > 0:
        return (u.arrow, x.arrow) in bq.relations
    if u.sign < 0 and x.sign < 0:
        return (x.arrow, u.arrow) in bq.relations
    return False


def is_forbidden_module(bq, s: StringWord) -> bool:
    idx = cycle_arrow_index(bq)
    return any(u.arrow in idx for u in s.letters)


@dataclass(frozen=True)
class PurityVerdict:
    ok: bool
    counterexample: tuple = ()

    def __bool__(self):
        return self.ok


def check_cycle_purity(bq) -> PurityVerdict:
    """Every forbidden path lies on one forbidden cycle or avoids all of them.

    Checked on every forbidden path of length up to |Q1| + 1, obtained by
    brute-force extension of the relation graph (not via the successor map).
    """
    idx = cycle_arrow_index(bq)
    succ = {}
    for x, y in bq.relations:
        succ.setdefault(x, []).append(y)
    limit = len(bq.arrows) + 1
    frontier = [(a.name,) for a in bq.arrows]
    while frontier:
        nxt = []
        for p in frontier:
            ids = {idx[a][0] if a in idx else None for a in p}
            if len(ids) > 1:
                return PurityVerdict(False, p)
            if len(p) < limit:
                nxt.extend(p + (y,) for y in succ.get(p[-1], ()))
        frontier = nxt
    return PurityVerdict(True)


def strong_sources_sinks(bq) -> tuple:
    """(strong sources, strong sinks).

    A strong source has no incoming arrow and at most one outgoing arrow;
    strong sinks are dual.
    """
    src = tuple(v for v in bq.vertices if not bq.in_arrows[v] and len(bq.out_arrows[v]) <= 1)
    snk = tuple(v for v in bq.vertices if not bq.out_arrows[v] and len(bq.in_arrows[v]) <= 1)
    return src, snk


def forbidden_path_length(x) -> float:
    """Length contribution: None -> 0, finite path -> its length, cycle -> inf."""
    if x is None:
        return 0
    if isinstance(x, OnCycle):
        return float("inf")
    return len(x)
