"""Gorenstein-projective catalog, the CM-Auslander algebra and idempotent
quotients and corners.

Every arrow c on a forbidden cycle gives a non-projective indecomposable
Gorenstein-projective module cA.  The CM-Auslander algebra adds one vertex
G_c per such module and splits c into c_minus: s(c) -> G_c and
c_plus: G_c -> t(c).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import networkx as nx
from networkx.algorithms import isomorphism as nxiso

from .forbidden import cycle_arrow_index, find_forbidden_cycles
from .quiver_core import (Arrow, BoundQuiver, InfiniteDimensionError, Path, QuiverError,
                          enumerate_nonzero_paths, full_subquiver, multiply_paths,
                          require_gentle, validate_gentle)
from .replinalg import (Representation, is_isomorphic, make_representation, path_matrix,
                        projective_module, syzygy)
from . import exact


class NotACycleArrow(ValueError):
    pass


# ------------------------------------------------------------ catalog

@dataclass
class GprojEntry:
    arrow: str
    module: Representation
    basis: dict = field(repr=False)


def ideal_module(bq, prefix: Path) -> Representation:
    """Right ideal pA inside P(s(p)): basis the nonzero paths starting with p."""
    n = len(prefix.arrows)
    basis = {u: [] for u in bq.vertices}
    for q in bq.paths_by_start[prefix.start]:
        if q.arrows[:n] == prefix.arrows and len(q.arrows) >= n:
            basis[q.end].append(q)
    index = {u: {q: i for i, q in enumerate(basis[u])} for u in bq.vertices}
    dims = {u: len(basis[u]) for u in bq.vertices}
    mats = {a.name: exact.zeros(dims[a.source], dims[a.target]) for a in bq.arrows}
    for a in bq.arrows:
        step = Path(a.source, a.target, (a.name,))
        for i, q in enumerate(basis[a.source]):
            r = multiply_paths(bq, q, step)
            if r is not None:
                mats[a.name][i, index[a.target][r]] = 1
    return make_representation(bq, dims, mats, basis)


def gproj_catalog(bq) -> list:
    """One entry cA per arrow c on a forbidden cycle, in arrow order."""
    idx = cycle_arrow_index(bq)
    out = []
    for a in bq.arrows:
        if a.name in idx:
            M = ideal_module(bq, Path(a.source, a.target, (a.name,)))
            assert not syzygy(bq, M).is_zero(), f"{a.name}A should not be projective"
            out.append(GprojEntry(a.name, M, M.basis))
    return out


# ------------------------------------------------------------ CMA

@dataclass
class CmaPresentation:
    bq: BoundQuiver
    base: BoundQuiver
    vertex_map: dict      # CMA vertex -> ("vertex", v) or ("gproj", c)
    arrow_map: dict       # original arrow -> name, or (minus, plus)
    catalog_vertex: dict  # cycle arrow -> its new vertex

    @property
    def catalog_vertices(self):
        return frozenset(self.catalog_vertex.values())

    @property
    def epsilon_star(self):
        return frozenset(v for v, (kind, _) in self.vertex_map.items() if kind == "vertex")


def _fresh(name, taken):
    while name in taken:
        name += "_"
    taken.add(name)
    return name


def build_cma(bq) -> CmaPresentation:
    require_gentle(bq)
    idx = cycle_arrow_index(bq)
    taken = set(bq.vertices) | {a.name for a in bq.arrows}
    catalog_vertex = {a.name: _fresh(f"G_{a.name}", taken) for a in bq.arrows if a.name in idx}
    vertex_map = {v: ("vertex", v) for v in bq.vertices}
    vertex_map.update({g: ("gproj", c) for c, g in catalog_vertex.items()})
    arrows, arrow_map = [], {}
    for a in bq.arrows:
        if a.name not in idx:
            arrows.append(a)
            arrow_map[a.name] = a.name
            continue
        g = catalog_vertex[a.name]
        m = _fresh(a.name + "_minus", taken)
        p = _fresh(a.name + "_plus", taken)
        arrows += [Arrow(m, a.source, g), Arrow(p, g, a.target)]
        arrow_map[a.name] = (m, p)
    rels = set()
    for x, y in bq.relations:
        on_x, on_y = x in idx, y in idx
        if not on_x and not on_y:
            rels.add((x, y))
        elif on_x and on_y:
            rels.add((arrow_map[x][1], arrow_map[y][0]))
        else:
            raise AssertionError(f"relation {x}{y} mixes cycle and non-cycle arrows")
    verts = tuple(bq.vertices) + tuple(catalog_vertex.values())
    C = BoundQuiver(verts, tuple(arrows), frozenset(rels))
    assert validate_gentle(C).ok, "the CM-Auslander algebra must be gentle"
    return CmaPresentation(C, bq, vertex_map, arrow_map, catalog_vertex)


def quotient_by_idempotent(bq, delete) -> BoundQuiver:
    """A/AeA where e is the sum of the trivial paths at the vertices in delete."""
    delete = set(delete)
    return full_subquiver(bq, [v for v in bq.vertices if v not in delete])


def c_tilde(cma: CmaPresentation) -> BoundQuiver:
    return quotient_by_idempotent(cma.bq, cma.catalog_vertices)


def c_bar(cma: CmaPresentation) -> BoundQuiver:
    return quotient_by_idempotent(cma.bq, cma.epsilon_star)


# ------------------------------------------------------------ corners

@dataclass
class CornerAlgebra:
    ambient: BoundQuiver
    keep: tuple
    basis: list
    table: dict  # (i, j) -> k for nonzero products

    @property
    def dim(self):
        return len(self.basis)

    def product(self, i, j):
        return self.table.get((i, j))


def corner_algebra(bq, keep) -> CornerAlgebra:
    keep_set = set(keep)
    paths = enumerate_nonzero_paths(bq)
    basis = [p for p in paths if p.start in keep_set and p.end in keep_set]
    index = {p: i for i, p in enumerate(basis)}
    table = {}
    for i, p in enumerate(basis):
        for j, q in enumerate(basis):
            r = multiply_paths(bq, p, q)
            if r is not None:
                table[(i, j)] = index[r]
    return CornerAlgebra(bq, tuple(v for v in bq.vertices if v in keep_set), basis, table)


@dataclass
class Recovered:
    bq: BoundQuiver
    generators: dict      # arrow name -> ambient path
    gentle: bool
    isomorphic: bool | None = None


def _gen_name(p: Path):
    return p.arrows[0] if len(p.arrows) == 1 else "__".join(p.arrows)


def recover_gentle_presentation(ca: CornerAlgebra, reference: BoundQuiver | None = None) -> Recovered:
    """Quiver and quadratic monomial relations presenting a corner algebra.

    Generators are the non-trivial basis paths that do not pass through a
    retained vertex in their interior, i.e. the indecomposable ones.
    """
    keep = set(ca.keep)
    bq = ca.ambient
    gens = []
    for p in ca.basis:
        if p.is_trivial:
            continue
        interior = [bq.target(a) for a in p.arrows[:-1]]
        if not any(v in keep for v in interior):
            gens.append(p)
    arrows = tuple(Arrow(_gen_name(p), p.start, p.end) for p in gens)
    genmap = {_gen_name(p): p for p in gens}
    rels = set()
    for g in gens:
        for h in gens:
            if g.end == h.start and multiply_paths(bq, g, h) is None:
                rels.add((_gen_name(g), _gen_name(h)))
    R = BoundQuiver(ca.keep, arrows, frozenset(rels))
    try:
        rpaths = enumerate_nonzero_paths(R)
    except InfiniteDimensionError as exc:
        raise QuiverError("corner is not presented by quadratic monomial relations") from exc
    images = set()
    for p in rpaths:
        q = Path(p.start, p.start, ())
        for a in p.arrows:
            q = multiply_paths(bq, q, genmap[a])
            if q is None:
                raise QuiverError("corner is not presented by quadratic monomial relations")
        images.add(q)
    if images != set(ca.basis) or len(rpaths) != ca.dim:
        raise QuiverError("recovered presentation has the wrong dimension")
    iso = None if reference is None else find_bound_quiver_isomorphism(R, reference) is not None
    return Recovered(R, genmap, validate_gentle(R).ok, iso)


def _encode(bq):
    G = nx.DiGraph()
    for v in bq.vertices:
        G.add_node(("v", v), kind="vertex")
    for a in bq.arrows:
        G.add_node(("a", a.name), kind="arrow")
        G.add_edge(("v", a.source), ("a", a.name), kind="out")
        G.add_edge(("a", a.name), ("v", a.target), kind="in")
    for x, y in bq.relations:
        G.add_edge(("a", x), ("a", y), kind="rel")
    return G


def find_bound_quiver_isomorphism(bq1, bq2):
    """Exact isomorphism of bound quivers: (vertex map, arrow map) or None."""
    if (len(bq1.vertices), len(bq1.arrows), len(bq1.relations)) != \
            (len(bq2.vertices), len(bq2.arrows), len(bq2.relations)):
        return None
    m = nxiso.DiGraphMatcher(_encode(bq1), _encode(bq2),
                             node_match=lambda a, b: a["kind"] == b["kind"],
                             edge_match=lambda a, b: a["kind"] == b["kind"])
    for mapping in m.isomorphisms_iter():
        vmap = {k[1]: v[1] for k, v in mapping.items() if k[0] == "v"}
        amap = {k[1]: v[1] for k, v in mapping.items() if k[0] == "a"}
        return vmap, amap
    return None


def is_isomorphic_bound_quivers(bq1, bq2) -> bool:
    return find_bound_quiver_isomorphism(bq1, bq2) is not None


def disjoint_union(parts, prefix="c") -> BoundQuiver:
    verts, arrows, rels = [], [], set()
    for i, P in enumerate(parts):
        tag = f"{prefix}{i}_"
        verts += [tag + v for v in P.vertices]
        arrows += [Arrow(tag + a.name, tag + a.source, tag + a.target) for a in P.arrows]
        rels |= {(tag + x, tag + y) for x, y in P.relations}
    return BoundQuiver(tuple(verts), tuple(arrows), frozenset(rels))


# ------------------------------------------------------------ modules

def restrict_module(ambient, keep, M: Representation):
    """Restriction to the corner at keep: (recovered presentation, module)."""
    rec = recover_gentle_presentation(corner_algebra(ambient, keep))
    dims = {v: M.dims[v] for v in rec.bq.vertices}
    mats = {name: path_matrix(ambient, M, p.arrows, p.start) for name, p in rec.generators.items()}
    return rec, make_representation(rec.bq, dims, mats)


def transport_module(M: Representation, vmap: dict, amap: dict, target: BoundQuiver) -> Representation:
    dims = {vmap[v]: d for v, d in M.dims.items()}
    mats = {amap[a]: m for a, m in M.mats.items()}
    return make_representation(target, dims, mats)


def natural_identification(cma: CmaPresentation, rec: Recovered):
    """Vertex/arrow maps from the corner at epsilon-star back to the base quiver."""
    vmap = {v: v for v in rec.bq.vertices}
    amap = {}
    back = {}
    for a, img in cma.arrow_map.items():
        back[img if isinstance(img, str) else "__".join(img)] = a
    for name in rec.generators:
        if name not in back:
            return None
        amap[name] = back[name]
    return vmap, amap


def tensor_image_module(cma: CmaPresentation, alpha: str) -> Representation:
    """The right ideal generated by alpha_minus alpha_plus inside P_C(s(alpha))."""
    img = cma.arrow_map.get(alpha)
    if not isinstance(img, tuple):
        raise NotACycleArrow(f"{alpha} is not on a forbidden cycle")
    C = cma.bq
    m, p = img
    return ideal_module(C, Path(C.source(m), C.target(p), (m, p)))


def is_projective(bq, M) -> bool:
    return syzygy(bq, M).is_zero()


@dataclass
class RecollementReport:
    items: dict
    witnesses: dict

    @property
    def ok(self):
        return all(self.items.values())


def verify_recollement_package(bq) -> RecollementReport:
    cma = build_cma(bq)
    C = cma.bq
    eps = cma.epsilon_star
    witnesses = {}
    rec = recover_gentle_presentation(corner_algebra(C, eps), reference=bq)
    ident = natural_identification(cma, rec)
    item1 = bool(rec.isomorphic) and ident is not None
    if ident is not None:
        vmap, amap = ident
        renamed = BoundQuiver(rec.bq.vertices,
                              tuple(Arrow(amap[a.name], a.source, a.target) for a in rec.bq.arrows),
                              frozenset((amap[x], amap[y]) for x, y in rec.bq.relations))
        item1 = item1 and set(renamed.arrows) == set(bq.arrows) and renamed.relations == bq.relations
    witnesses["corner"] = {"arrows": len(rec.bq.arrows), "relations": len(rec.bq.relations)}
    item2 = item3 = True
    catalog = {e.arrow: e for e in gproj_catalog(bq)}
    for c, g in cma.catalog_vertex.items():
        G = catalog[c].module
        _, res = restrict_module(C, eps, projective_module(C, g))
        ok2 = ident is not None and is_isomorphic(bq, transport_module(res, *ident, bq), G)
        X = tensor_image_module(cma, c)
        nonproj = not is_projective(C, X)
        _, resX = restrict_module(C, eps, X)
        ok3 = nonproj and ident is not None and is_isomorphic(bq, transport_module(resX, *ident, bq), G)
        witnesses[c] = {"restriction_of_projective": ok2, "tensor_image_nonprojective": nonproj,
                        "tensor_image_restricts_back": ok3}
        item2 = item2 and ok2
        item3 = item3 and ok3
    item4 = not c_bar(cma).arrows
    items = {"corner_is_base_algebra": item1, "restricted_projectives_are_gproj": item2,
             "tensor_images": item3, "quotient_semisimple": item4}
    return RecollementReport(items, witnesses)
