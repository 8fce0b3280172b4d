"""Bound quivers with length-two monomial relations.

A bound quiver is a finite quiver together with a set of forbidden
compositions ``(a, b)`` meaning the path ``ab`` (first ``a``, then ``b``)
is zero.  Paths are written left to right.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

IDENT = re.compile(r"[A-Za-z0-9_]+$")


class QuiverError(ValueError):
    """Malformed or inconsistent bound-quiver data."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class InfiniteDimensionError(ValueError):
    """Raised when an oriented cycle avoids every relation."""

    def __init__(self, cycle):
        self.cycle = tuple(cycle)
        super().__init__("oriented cycle avoiding the relations: " + " ".join(self.cycle))


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class BoundQuiver:
    vertices: tuple
    arrows: tuple
    relations: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("duplicate vertex identifier")
        vs = set(self.vertices)
        names = set()
        for a in self.arrows:
            if a.name in names:
                raise QuiverError(f"duplicate arrow identifier {a.name!r}")
            names.add(a.name)
            for end in (a.source, a.target):
                if end not in vs:
                    raise QuiverError(f"arrow {a.name!r} uses undeclared vertex {end!r}")
        if not isinstance(self.relations, frozenset):
            object.__setattr__(self, "relations", frozenset(self.relations))
        lookup = {a.name: a for a in self.arrows}
        for x, y in self.relations:
            if x not in lookup or y not in lookup:
                raise QuiverError(f"relation {x}*{y} names an undeclared arrow")
            if lookup[x].target != lookup[y].source:
                raise QuiverError(f"relation {x}*{y} is not composable")

    @cached_property
    def arrow(self) -> dict:
        return {a.name: a for a in self.arrows}

    @cached_property
    def arrow_index(self) -> dict:
        return {a.name: i for i, a in enumerate(self.arrows)}

    @cached_property
    def vertex_index(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def out_arrows(self) -> dict:
        out = {v: [] for v in self.vertices}
        for a in self.arrows:
            out[a.source].append(a.name)
        return {v: tuple(x) for v, x in out.items()}

    @cached_property
    def in_arrows(self) -> dict:
        inc = {v: [] for v in self.vertices}
        for a in self.arrows:
            inc[a.target].append(a.name)
        return {v: tuple(x) for v, x in inc.items()}

    @cached_property
    def successor(self) -> dict:
        """Map arrow -> tuple of arrows c with (arrow, c) a relation."""
        succ = {a.name: [] for a in self.arrows}
        for x, y in sorted(self.relations, key=self._rel_key):
            succ[x].append(y)
        return {k: tuple(v) for k, v in succ.items()}

    @cached_property
    def predecessor(self) -> dict:
        pred = {a.name: [] for a in self.arrows}
        for x, y in sorted(self.relations, key=self._rel_key):
            pred[y].append(x)
        return {k: tuple(v) for k, v in pred.items()}

    @cached_property
    def nonzero_paths(self) -> tuple:
        return tuple(enumerate_nonzero_paths(self))

    @cached_property
    def paths_by_start(self) -> dict:
        out = {v: [] for v in self.vertices}
        for p in self.nonzero_paths:
            out[p.start].append(p)
        return out

    @cached_property
    def paths_by_end(self) -> dict:
        out = {v: [] for v in self.vertices}
        for p in self.nonzero_paths:
            out[p.end].append(p)
        return out

    def _rel_key(self, rel):
        return (self.arrow_index[rel[0]], self.arrow_index[rel[1]])

    def source(self, name):
        return self.arrow[name].source

    def target(self, name):
        return self.arrow[name].target

    def is_zero_pair(self, a, b):
        return (a, b) in self.relations


@dataclass(frozen=True)
class Path:
    """A nonzero path: start vertex, end vertex and its arrows."""
    start: str
    end: str
    arrows: tuple = ()

    def __len__(self):
        return len(self.arrows)

    @property
    def is_trivial(self):
        return not self.arrows

    def __str__(self):
        return "e:" + self.start if not self.arrows else " ".join(self.arrows)


@dataclass(frozen=True)
class Violation:
    condition: str
    witnesses: tuple
    message: str


@dataclass(frozen=True)
class GentleVerdict:
    violations: tuple = ()

    @property
    def ok(self):
        return not self.violations

    def __bool__(self):
        return self.ok


def make_bound_quiver(vertices, arrows, relations=()) -> BoundQuiver:
    """Build from plain data: arrows as (name, source, target) triples."""
    arrs = tuple(a if isinstance(a, Arrow) else Arrow(*a) for a in arrows)
    return BoundQuiver(tuple(vertices), arrs, frozenset(tuple(r) for r in relations))


def trivial_path(v) -> Path:
    return Path(v, v, ())


def arrow_path(bq, name) -> Path:
    a = bq.arrow[name]
    return Path(a.source, a.target, (name,))


def make_path(bq, arrows, start=None) -> Path | None:
    """Path from an arrow sequence, or None if it is zero or not composable."""
    arrows = tuple(arrows)
    if not arrows:
        if start is None:
            raise ValueError("a trivial path needs its vertex")
        return trivial_path(start)
    for x, y in zip(arrows, arrows[1:]):
        if bq.target(x) != bq.source(y) or (x, y) in bq.relations:
            return None
    return Path(bq.source(arrows[0]), bq.target(arrows[-1]), arrows)


# ------------------------------------------------------------------ parsing

_VERT = re.compile(r"\s*vertices\s*:(.*)$")
_ARROW = re.compile(r"\s*arrow\s+([^:\s]+)\s*:\s*(\S+)\s*->\s*(\S+)\s*$")
_REL = re.compile(r"\s*relations\s*:(.*)$")


def _check_ident(tok, lineno, col):
    if not IDENT.match(tok):
        raise QuiverError(f"bad identifier {tok!r}", lineno, col)


def parse_bound_quiver(text: str) -> BoundQuiver:
    """Parse the line-oriented bound-quiver format.

    vertices: 1 2 3
    arrow a: 1 -> 2
    relations: a*b
    """
    vertices = None
    arrows = []
    relations = []
    seen_rel = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        if m := _VERT.match(line):
            if vertices is not None:
                raise QuiverError("vertices declared twice", lineno, 1)
            vertices = []
            col = m.start(1)
            for tok in m.group(1).split():
                _check_ident(tok, lineno, line.index(tok, col) + 1)
                if tok in vertices:
                    raise QuiverError(f"duplicate vertex {tok!r}", lineno)
                vertices.append(tok)
            if not vertices:
                raise QuiverError("no vertices declared", lineno)
            continue
        if vertices is None:
            raise QuiverError("expected 'vertices:' first", lineno, 1)
        if m := _ARROW.match(line):
            if seen_rel:
                raise QuiverError("arrow declared after relations", lineno, 1)
            name, src, tgt = m.groups()
            for g in (1, 2, 3):
                _check_ident(m.group(g), lineno, m.start(g) + 1)
            for g in (2, 3):
                if m.group(g) not in vertices:
                    raise QuiverError(f"undeclared vertex {m.group(g)!r}", lineno, m.start(g) + 1)
            if any(a.name == name for a in arrows):
                raise QuiverError(f"duplicate identifier {name!r}", lineno, m.start(1) + 1)
            arrows.append(Arrow(name, src, tgt))
            continue
        if m := _REL.match(line):
            if seen_rel:
                raise QuiverError("relations declared twice", lineno, 1)
            seen_rel = True
            body = m.group(1)
            offset = m.start(1)
            names = {a.name: a for a in arrows}
            for chunk in body.split(","):
                col = offset + 1
                offset += len(chunk) + 1
                if not chunk.strip():
                    continue
                parts = [p.strip() for p in chunk.split("*")]
                if len(parts) != 2:
                    raise QuiverError(f"relation {chunk.strip()!r} must have the form x*y", lineno, col)
                for p in parts:
                    _check_ident(p, lineno, col)
                    if p not in names:
                        raise QuiverError(f"undeclared arrow {p!r} in relation", lineno, col)
                x, y = parts
                if names[x].target != names[y].source:
                    raise QuiverError(f"relation {x}*{y} is not composable", lineno, col)
                if (x, y) in relations:
                    raise QuiverError(f"duplicate relation {x}*{y}", lineno, col)
                relations.append((x, y))
            continue
        raise QuiverError(f"cannot parse {line.strip()!r}", lineno, 1)
    if vertices is None:
        raise QuiverError("no 'vertices:' line")
    return BoundQuiver(tuple(vertices), tuple(arrows), frozenset(relations))


def _natural_key(s):
    return [(0, int(t), "") if t.isdigit() else (1, 0, t) for t in re.findall(r"\d+|\D+", s)]


def serialize_bound_quiver(bq: BoundQuiver) -> str:
    lines = [("vertices: " + " ".join(sorted(bq.vertices, key=_natural_key))).rstrip()]
    for a in bq.arrows:
        lines.append(f"arrow {a.name}: {a.source} -> {a.target}")
    if bq.relations:
        rels = sorted(bq.relations, key=lambda r: (_natural_key(r[0]), _natural_key(r[1])))
        lines.append("relations: " + ", ".join(f"{x}*{y}" for x, y in rels))
    return "\n".join(lines) + "\n"


def structurally_equal(bq1, bq2) -> bool:
    return (set(bq1.vertices) == set(bq2.vertices)
            and set(bq1.arrows) == set(bq2.arrows)
            and bq1.relations == bq2.relations)


# --------------------------------------------------------------- gentleness

def validate_gentle(bq: BoundQuiver) -> GentleVerdict:
    """Check the four gentle conditions, collecting every violation."""
    out = []
    for v in bq.vertices:
        if len(bq.out_arrows[v]) > 2:
            out.append(Violation("G1", (v,), f"vertex {v} has {len(bq.out_arrows[v])} outgoing arrows"))
        if len(bq.in_arrows[v]) > 2:
            out.append(Violation("G1", (v,), f"vertex {v} has {len(bq.in_arrows[v])} incoming arrows"))
    rel = bq.relations
    for c in bq.arrows:
        # two arrows a, b ending where c starts: exactly one of ac, bc in I
        ins = bq.in_arrows[c.source]
        for i in range(len(ins)):
            for j in range(i + 1, len(ins)):
                a, b = ins[i], ins[j]
                n = ((a, c.name) in rel) + ((b, c.name) in rel)
                if n != 1:
                    out.append(Violation("G2", (a, b, c.name),
                                         f"exactly one of {a}{c.name}, {b}{c.name} must be a relation, found {n}"))
        outs = bq.out_arrows[c.target]
        for i in range(len(outs)):
            for j in range(i + 1, len(outs)):
                a, b = outs[i], outs[j]
                n = ((c.name, a) in rel) + ((c.name, b) in rel)
                if n != 1:
                    out.append(Violation("G3", (c.name, a, b),
                                         f"exactly one of {c.name}{a}, {c.name}{b} must be a relation, found {n}"))
    # uniqueness of forbidden successors and predecessors
    for a in bq.arrows:
        if len(bq.successor[a.name]) > 1:
            out.append(Violation("G2", (a.name,) + bq.successor[a.name],
                                 f"arrow {a.name} has several forbidden successors"))
        if len(bq.predecessor[a.name]) > 1:
            out.append(Violation("G3", bq.predecessor[a.name] + (a.name,),
                                 f"arrow {a.name} has several forbidden predecessors"))
    return GentleVerdict(tuple(out))


def require_gentle(bq):
    verdict = validate_gentle(bq)
    if not verdict.ok:
        raise QuiverError("not gentle: " + "; ".join(v.message for v in verdict.violations))
    return bq


# --------------------------------------------------------------- paths

def multiply_paths(bq, p: Path, q: Path) -> Path | None:
    """Product pq, or None when it is zero (not composable or hits I)."""
    if p.end != q.start:
        return None
    if p.arrows and q.arrows and (p.arrows[-1], q.arrows[0]) in bq.relations:
        return None
    return Path(p.start, q.end, p.arrows + q.arrows)


def opposite(bq: BoundQuiver) -> BoundQuiver:
    """Opposite bound quiver: arrows keep their names, relation ab becomes ba."""
    arrows = tuple(Arrow(a.name, a.target, a.source) for a in bq.arrows)
    return BoundQuiver(bq.vertices, arrows, frozenset((y, x) for x, y in bq.relations))


def _find_free_cycle(bq):
    """An oriented cycle with no consecutive pair in I, if one exists."""
    # nodes are arrows, edges are nonzero compositions
    color = {}
    for a0 in bq.arrows:
        if a0.name in color:
            continue
        stack = [(a0.name, iter(_nonzero_next(bq, a0.name)))]
        trail = [a0.name]
        color[a0.name] = 1
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                color[node] = 2
                stack.pop()
                trail.pop()
                continue
            if color.get(nxt) == 1:
                return tuple(trail[trail.index(nxt):])
            if nxt not in color:
                color[nxt] = 1
                trail.append(nxt)
                stack.append((nxt, iter(_nonzero_next(bq, nxt))))
    return None


def _nonzero_next(bq, a):
    return [b for b in bq.out_arrows[bq.target(a)] if (a, b) not in bq.relations]


def enumerate_nonzero_paths(bq) -> list:
    """All nonzero paths: trivial ones first, then by length."""
    cyc = _find_free_cycle(bq)
    if cyc is not None:
        raise InfiniteDimensionError(cyc)
    out = [trivial_path(v) for v in bq.vertices]
    frontier = [arrow_path(bq, a.name) for a in bq.arrows]
    while frontier:
        out.extend(frontier)
        nxt = []
        for p in frontier:
            for b in _nonzero_next(bq, p.arrows[-1]):
                nxt.append(Path(p.start, bq.target(b), p.arrows + (b,)))
        frontier = nxt
    return out


def paths_from(bq, v) -> list:
    """Nonzero paths starting at v (trivial path first)."""
    return bq.paths_by_start[v]


def paths_to(bq, v) -> list:
    return bq.paths_by_end[v]


def connected_components(bq) -> list:
    """Vertex sets of the connected components of the underlying graph."""
    parent = {v: v for v in bq.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in bq.arrows:
        ra, rb = find(a.source), find(a.target)
        if ra != rb:
            parent[ra] = rb
    groups = {}
    for v in bq.vertices:
        groups.setdefault(find(v), []).append(v)
    return [tuple(g) for g in groups.values()]


def full_subquiver(bq, keep: Iterable) -> BoundQuiver:
    """Delete every vertex outside keep together with incident arrows and relations."""
    keep = set(keep)
    verts = tuple(v for v in bq.vertices if v in keep)
    arrows = tuple(a for a in bq.arrows if a.source in keep and a.target in keep)
    names = {a.name for a in arrows}
    rels = frozenset(r for r in bq.relations if r[0] in names and r[1] in names)
    return BoundQuiver(verts, arrows, rels)
