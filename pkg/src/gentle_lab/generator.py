"""Seeded random gentle bound quivers, by rejection sampling."""
from __future__ import annotations

import random
from dataclasses import dataclass

from .quiver_core import (Arrow, BoundQuiver, InfiniteDimensionError, connected_components,
                          enumerate_nonzero_paths, validate_gentle)


class GeneratorError(ValueError):
    pass


@dataclass(frozen=True)
class GeneratorConfig:
    min_vertices: int = 2
    max_vertices: int = 8
    arrow_density: float = 1.0   # arrows per vertex, used by shape "any"
    relation_density: float = 0.5
    seed: int = 0
    shape: str = "any"           # any | tree | one-cycle
    max_attempts: int = 5000

    def arrow_count(self, n):
        if self.shape == "tree":
            return n - 1
        if self.shape == "one-cycle":
            return n
        return max(0, round(self.arrow_density * n))


def _pair_relations(rng, ins, outs, density):
    """Relations at one vertex that satisfy the gentle alternatives."""
    if not ins or not outs:
        return []
    if len(ins) == 2 and len(outs) == 2:
        if rng.random() < 0.5:
            return [(ins[0], outs[0]), (ins[1], outs[1])]
        return [(ins[0], outs[1]), (ins[1], outs[0])]
    if len(ins) == 2:
        return [(rng.choice(ins), outs[0])]
    if len(outs) == 2:
        return [(ins[0], rng.choice(outs))]
    return [(ins[0], outs[0])] if rng.random() < density else []


def _random_arrows(rng, n, m, shape):
    outdeg = [0] * n
    indeg = [0] * n
    edges = []

    def ok(s, t):
        return outdeg[s] < 2 and indeg[t] < 2

    def add(s, t):
        edges.append((s, t))
        outdeg[s] += 1
        indeg[t] += 1

    if shape in ("tree", "one-cycle"):
        for i in range(1, n):
            opts = [(j, i) for j in range(i) if ok(j, i)] + [(i, j) for j in range(i) if ok(i, j)]
            if not opts:
                return None
            add(*rng.choice(opts))
        if shape == "one-cycle":
            opts = [(s, t) for s in range(n) for t in range(n) if ok(s, t)]
            if not opts:
                return None
            add(*rng.choice(opts))
        return edges
    for _ in range(m):
        opts = [(s, t) for s in range(n) for t in range(n) if ok(s, t)]
        if not opts:
            return None
        add(*rng.choice(opts))
    return edges


def generate(config: GeneratorConfig) -> BoundQuiver:
    if config.min_vertices < 1 or config.max_vertices < config.min_vertices:
        raise GeneratorError("bad vertex range")
    if config.shape not in ("any", "tree", "one-cycle"):
        raise GeneratorError(f"unknown shape {config.shape!r}")
    if all(config.arrow_count(n) > 2 * n for n in range(config.min_vertices, config.max_vertices + 1)):
        raise GeneratorError("unsatisfiable: more than two outgoing arrows per vertex would be needed")
    rng = random.Random(config.seed)
    for _ in range(config.max_attempts):
        n = rng.randint(config.min_vertices, config.max_vertices)
        m = config.arrow_count(n)
        if m > 2 * n or (config.shape == "tree" and n < 1):
            continue
        edges = _random_arrows(rng, n, m, config.shape)
        if edges is None:
            continue
        verts = tuple(str(i + 1) for i in range(n))
        arrows = tuple(Arrow(f"x{k + 1}", verts[s], verts[t]) for k, (s, t) in enumerate(edges))
        ins = {v: [a.name for a in arrows if a.target == v] for v in verts}
        outs = {v: [a.name for a in arrows if a.source == v] for v in verts}
        rels = []
        for v in verts:
            rels += _pair_relations(rng, ins[v], outs[v], config.relation_density)
        bq = BoundQuiver(verts, arrows, frozenset(rels))
        if not validate_gentle(bq).ok:
            continue
        try:
            enumerate_nonzero_paths(bq)
        except InfiniteDimensionError:
            continue
        if config.shape != "any" and len(connected_components(bq)) != 1:
            continue
        return bq
    raise GeneratorError("no gentle quiver found within the attempt budget")


def random_sample(count=50, seed=0, max_vertices=8):
    """The fixed sample of random gentle algebras used by the test-suite."""
    out = []
    for i in range(count):
        cfg = GeneratorConfig(min_vertices=2, max_vertices=max_vertices, arrow_density=1.0,
                              relation_density=0.6, seed=seed * 1000 + i, shape="any")
        out.append(generate(cfg))
    return out
