"""Command-line interface: ``gentle-lab <command> --input FILE``.

Exit status 0 means the computation ran (whatever the mathematical verdict),
1 means bad input, 2 means an internal cross-check failed.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys

from . import __version__
from .classify import (CriterionDisagreement, UnsupportedShape, check_kg_comparison, check_quasi_tilted_criterion,
                       derived_discrete, is_quasi_tilted, kg_dimension, piecewise_hereditary_gentle,
                       shape_class, homological_conditions)
from .cma_recollement import (build_cma, c_bar, c_tilde, corner_algebra, quotient_by_idempotent,
                              recover_gentle_presentation, verify_recollement_package)
from .derived_cat import check_width_criterion, hw, parse_homotopy
from .forbidden import (OnCycle, find_forbidden_cycles, maximal_forbidden_paths, strong_sources_sinks)
from .generator import GeneratorConfig, GeneratorError, generate
from .homodim import (band_dims, end_attachments, finitistic_dimension_witness, fmt_dim, global_dimension,
                      inj_dim_string, dim2_predicates, proj_dim_string)
from .quiver_core import (InfiniteDimensionError, QuiverError, parse_bound_quiver, serialize_bound_quiver,
                          validate_gentle)
from .replinalg import CAP_REACHED, resolve_id, resolve_pd, string_module
from .strings_bands import (InvalidStringError, NotABandError, enumerate_bands, enumerate_strings,
                            parse_string)


class InputError(Exception):
    pass


class CrossCheckFailure(AssertionError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _attachment(x):
    if x is None:
        return {"path": None, "length": 0}
    if isinstance(x, OnCycle):
        return {"path": "on-cycle", "cycle": list(x.cycle), "length": "inf"}
    return {"path": list(x.arrows), "length": len(x)}


def _dim(x):
    return "cap-reached" if x is CAP_REACHED else fmt_dim(x)


def _word(x):
    return None if x is None else str(x)


def _kg(v):
    return {"verdict": str(v), "kind": v.kind, "value": v.value, "provenance": v.provenance}


# ------------------------------------------------------------ commands

def cmd_validate(bq, args, out):
    v = validate_gentle(bq)
    try:
        bq.nonzero_paths
        finite = True
    except InfiniteDimensionError:
        finite = False
    out.append("gentle: " + ("yes" if v.ok else "no"))
    for x in v.violations:
        out.append(f"  {x.condition}: {x.message}")
    out.append("finite dimensional: " + ("yes" if finite else "no"))
    return {"gentle": v.ok, "finite_dimensional": finite,
            "violations": [{"condition": x.condition, "witnesses": list(x.witnesses), "message": x.message}
                           for x in v.violations]}


def cmd_info(bq, args, out):
    cycles = find_forbidden_cycles(bq)
    paths = maximal_forbidden_paths(bq)
    gd = global_dimension(bq)
    fd = finitistic_dimension_witness(bq)
    src, snk = strong_sources_sinks(bq)
    sc = shape_class(bq)
    out.append(f"vertices: {len(bq.vertices)}  arrows: {len(bq.arrows)}  relations: {len(bq.relations)}")
    out.append(f"forbidden cycles: {len(cycles)}")
    for c in cycles:
        out.append("  " + " ".join(c))
    out.append("maximal forbidden paths: " + ", ".join(" ".join(p.arrows) for p in paths))
    out.append(f"gl.dim: {fmt_dim(gd)}")
    out.append(f"fin.dim: {fmt_dim(fd.value)}" + (f"  (witness {fd.witness})" if fd.witness else ""))
    out.append("shape: " + " ".join(sc.tags))
    return {"vertices": len(bq.vertices), "arrows": len(bq.arrows), "relations": len(bq.relations),
            "forbidden_cycles": [list(c) for c in cycles],
            "maximal_forbidden_paths": [list(p.arrows) for p in paths],
            "global_dimension": fmt_dim(gd), "finitistic_dimension": fmt_dim(fd.value),
            "finitistic_witness": _word(fd.witness), "strong_sources": list(src), "strong_sinks": list(snk),
            "shape": list(sc.tags)}


def cmd_strings(bq, args, out):
    ss = enumerate_strings(bq, args.max_len)
    out.extend(str(s) for s in ss)
    out.append(f"{len(ss)} string classes of length <= {args.max_len}")
    return {"max_len": args.max_len, "count": len(ss), "strings": [str(s) for s in ss]}


def cmd_bands(bq, args, out):
    bs = enumerate_bands(bq, args.max_len)
    out.extend(str(b) for b in bs)
    out.append(f"{len(bs)} band classes of length <= {args.max_len}")
    return {"max_len": args.max_len, "count": len(bs), "bands": [str(b) for b in bs]}


def _need_string(bq, args):
    if not args.string:
        raise InputError("--string is required")
    return parse_string(bq, args.string)


def cmd_dims(bq, args, out):
    s = _need_string(bq, args)
    pd, idim = proj_dim_string(bq, s), inj_dim_string(bq, s)
    e = end_attachments(bq, s)
    preds = dim2_predicates(bq, s)
    M = string_module(bq, s)
    opd, oid = resolve_pd(bq, M, args.cap), resolve_id(bq, M, args.cap)
    out.append(f"string: {s}")
    out.append(f"pd: {fmt_dim(pd)}  id: {fmt_dim(idim)}")
    for k in ("lu", "ru", "ld", "rd"):
        a = _attachment(getattr(e, k))
        out.append(f"  F_{k}: {a['path'] if a['path'] is not None else '-'} (length {a['length']})")
    out.append(f"predicates A/B/C: {preds[0]} {preds[1]} {preds[2]}")
    out.append(f"oracle pd: {_dim(opd)}  oracle id: {_dim(oid)}")
    report = {"string": str(s), "pd": fmt_dim(pd), "id": fmt_dim(idim),
              "attachments": {k: _attachment(getattr(e, k)) for k in ("lu", "ru", "ld", "rd")},
              "valley": e.valley, "peak": e.peak,
              "predicates": {"A": preds[0], "B": preds[1], "C": preds[2]},
              "oracle": {"pd": _dim(opd), "id": _dim(oid), "cap": args.cap}}
    for name, f, o in (("pd", pd, opd), ("id", idim, oid)):
        if not (f == float("inf") and o is CAP_REACHED) and f != o:
            raise CrossCheckFailure(f"{name} of {s}: formula {fmt_dim(f)} but oracle {_dim(o)}")
    return report


def cmd_resolve(bq, args, out):
    s = _need_string(bq, args)
    M = string_module(bq, s)
    opd, oid = resolve_pd(bq, M, args.cap), resolve_id(bq, M, args.cap)
    out.append(f"string: {s}  pd: {_dim(opd)}  id: {_dim(oid)}  (cap {args.cap})")
    return {"string": str(s), "pd": _dim(opd), "id": _dim(oid), "cap": args.cap}


def cmd_cma(bq, args, out):
    cma = build_cma(bq)
    out.append(serialize_bound_quiver(cma.bq).rstrip("\n"))
    for g, (kind, x) in sorted(cma.vertex_map.items()):
        if kind == "gproj":
            out.append(f"# {g} = {x}A")
    return {"presentation": serialize_bound_quiver(cma.bq),
            "catalog": {c: g for c, g in cma.catalog_vertex.items()},
            "vertices": len(cma.bq.vertices), "arrows": len(cma.bq.arrows),
            "relations": len(cma.bq.relations), "gentle": validate_gentle(cma.bq).ok}


def _vertex_list(text, bq):
    vs = [x for x in (text or "").replace(",", " ").split() if x]
    for v in vs:
        if v not in bq.vertex_index:
            raise InputError(f"unknown vertex {v!r}")
    return vs


def cmd_quotient(bq, args, out):
    if args.delete is None:
        cma = build_cma(bq)
        Q = c_tilde(cma) if args.side == "tilde" else c_bar(cma)
        label = f"quotient of the CM-Auslander algebra ({args.side})"
    else:
        Q = quotient_by_idempotent(bq, _vertex_list(args.delete, bq))
        label = "quotient"
    out.append("# " + label)
    out.append(serialize_bound_quiver(Q).rstrip("\n"))
    return {"presentation": serialize_bound_quiver(Q), "arrows": len(Q.arrows), "vertices": len(Q.vertices)}


def cmd_corner(bq, args, out):
    keep = _vertex_list(args.keep, bq) if args.keep else list(bq.vertices)
    ca = corner_algebra(bq, keep)
    rec = recover_gentle_presentation(ca)
    out.append(f"corner dimension: {ca.dim}")
    out.append(serialize_bound_quiver(rec.bq).rstrip("\n"))
    return {"keep": keep, "dimension": ca.dim, "presentation": serialize_bound_quiver(rec.bq),
            "gentle": rec.gentle}


def cmd_recollement(bq, args, out):
    r = verify_recollement_package(bq)
    for k, v in r.items.items():
        out.append(f"{k}: {'pass' if v else 'fail'}")
    return {"items": r.items, "witnesses": r.witnesses, "ok": r.ok}


def cmd_hw(bq, args, out):
    if not args.homotopy:
        raise InputError("--homotopy is required")
    h = parse_homotopy(bq, args.homotopy)
    r = hw(bq, h, args.anchor)
    out.append(f"homotopy string: {h}")
    out.append("cohomology: " + ", ".join(f"H^{k}={d}" for k, d in r.cohomology.items()))
    out.append(f"hw: {r.hw}")
    return {"homotopy": str(h), "anchor": args.anchor,
            "cohomology": {str(k): d for k, d in r.cohomology.items()}, "hw": r.hw}


def cmd_quasi_tilted(bq, args, out):
    v = is_quasi_tilted(bq)
    out.append("quasi-tilted: " + ("yes" if v.value else "no") + (f" ({v.reason}: {v.witness})" if not v else ""))
    return {"quasi_tilted": v.value, "reason": v.reason, "witness": _word(v.witness)}


def cmd_quasi_tilted_criterion(bq, args, out):
    r = check_quasi_tilted_criterion(bq, strict=False)
    c = r.conditions
    out.append(f"quasi-tilted(C~): {r.quasi_tilted.value}")
    out.append(f"fin.dim <= 2: {c.cond1} (fin.dim {fmt_dim(c.fin_dim)})")
    out.append(f"non-forbidden pd+id <= 3: {c.cond2} (max {c.max_sum})")
    out.append(f"agree: {r.agree}")
    report = {"quasi_tilted_c_tilde": r.quasi_tilted.value, "c_tilde_witness": _word(r.quasi_tilted.witness),
              "cond1": c.cond1, "cond2": c.cond2, "fin_dim": fmt_dim(c.fin_dim),
              "fin_dim_witness": _word(c.fin_dim_witness), "max_pd_plus_id": c.max_sum,
              "cond2_witness": _word(c.cond2_witness), "stricter_reading_holds": c.stricter_reading,
              "readings_diverge": c.cond2 != c.stricter_reading, "agree": r.agree}
    if not r.agree:
        raise CriterionDisagreement(json.dumps(report, sort_keys=True))
    return report


def cmd_width_criterion(bq, args, out):
    r = check_width_criterion(bq, args.max_letters)
    out.append(f"max hw over {r.strings_checked} off-cycle homotopy strings: {r.max_hw} (witness {r.witness})")
    out.append(f"side 1 (hw <= 2): {r.side1}  side 2 (conditions): {r.side2}  agree: {r.agree}")
    report = {"max_letters": args.max_letters, "max_hw": r.max_hw, "witness": _word(r.witness),
            "strings_checked": r.strings_checked, "side1": r.side1, "side2": r.side2, "agree": r.agree,
            "off_cycle_homotopy_band": r.off_cycle_band,
            "conditions": {"cond1": r.conditions[0], "cond2": r.conditions[1]}}
    if not r.agree:
        raise CriterionDisagreement(json.dumps(report, sort_keys=True))
    return report


def cmd_kg(bq, args, out):
    v = kg_dimension(bq)
    dd = derived_discrete(bq)
    out.append(f"KG dimension: {v}  ({v.provenance})")
    rep = {"kg": _kg(v), "derived_discrete": dd.value, "shape": list(shape_class(bq).tags)}
    try:
        rep["piecewise_hereditary"] = piecewise_hereditary_gentle(bq)
    except UnsupportedShape:
        rep["piecewise_hereditary"] = None
    return rep


def cmd_kg_comparison(bq, args, out):
    r = check_kg_comparison(bq)
    out.append(f"KG(A) = {r.kg_a}  KG(C) = {r.kg_c}  KG(C~) = {r.kg_c_tilde}  A iso C: {r.a_iso_c}")
    for k, v in r.clauses.items():
        out.append(f"clause {k}: {v}")
    return {"kg_a": _kg(r.kg_a), "kg_c": _kg(r.kg_c), "kg_c_tilde": _kg(r.kg_c_tilde),
            "a_iso_c": r.a_iso_c, "clauses": r.clauses}


COMMANDS = {
    "validate": cmd_validate, "info": cmd_info, "strings": cmd_strings, "bands": cmd_bands,
    "dims": cmd_dims, "resolve": cmd_resolve, "cma": cmd_cma, "quotient": cmd_quotient,
    "corner": cmd_corner, "recollement-verify": cmd_recollement, "hw": cmd_hw, "kg-dim": cmd_kg,
}
CHECKS = {
    "quasi-tilted": cmd_quasi_tilted, "theorem-main": cmd_quasi_tilted_criterion,
    "theorem-main2": cmd_width_criterion, "corollary-main3": cmd_kg_comparison,
}


def _common(p):
    p.add_argument("--input", help="bound-quiver file (default: standard input)")
    p.add_argument("--report", help="write the JSON report here")
    p.add_argument("--max-len", type=int, default=6)
    p.add_argument("--max-letters", type=int, default=6)
    p.add_argument("--cap", type=int, default=16)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--string")
    p.add_argument("--homotopy")
    p.add_argument("--anchor", type=int, default=0)
    p.add_argument("--delete", help="vertices to delete, comma or space separated")
    p.add_argument("--side", choices=("tilde", "bar"), default="tilde")
    p.add_argument("--keep", help="vertices to keep, comma or space separated")


def build_parser():
    parser = _Parser(prog="gentle-lab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        _common(sub.add_parser(name))
    chk = sub.add_parser("check")
    csub = chk.add_subparsers(dest="check", required=True, parser_class=_Parser)
    for name in CHECKS:
        _common(csub.add_parser(name))
    gen = sub.add_parser("generate")
    gen.add_argument("--seed", type=int, default=1)
    gen.add_argument("--shape", choices=("any", "tree", "one-cycle"), default="any")
    gen.add_argument("--min-vertices", type=int, default=2)
    gen.add_argument("--max-vertices", type=int, default=8)
    gen.add_argument("--arrow-density", type=float, default=1.0)
    gen.add_argument("--relation-density", type=float, default=0.5)
    gen.add_argument("--report")
    return parser


def _write_report(path, command, digest, result):
    doc = {"command": command, "input_digest": digest, "result": result, "tool_version": __version__}
    text = json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def run(argv, stdout=None, stdin=None):
    """Execute one command; returns the exit status."""
    stdout = stdout or sys.stdout
    stdin = stdin or sys.stdin
    out = []
    try:
        args = build_parser().parse_args(argv)
        if args.command == "generate":
            cfg = GeneratorConfig(min_vertices=args.min_vertices, max_vertices=args.max_vertices,
                                  arrow_density=args.arrow_density, relation_density=args.relation_density,
                                  seed=args.seed, shape=args.shape)
            text = serialize_bound_quiver(generate(cfg))
            stdout.write(text)
            if args.report:
                _write_report(args.report, "generate", None, {"presentation": text, "seed": args.seed,
                                                             "shape": args.shape})
            return 0
        if args.input:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        else:
            text = stdin.read()
        digest = "sha256:" + hashlib.sha256(text.encode("utf-8")).hexdigest()
        bq = parse_bound_quiver(text)
        if args.command == "check":
            name, fn = "check " + args.check, CHECKS[args.check]
        else:
            name, fn = args.command, COMMANDS[args.command]
        if name != "validate":
            v = validate_gentle(bq)
            if not v.ok:
                raise InputError("not gentle: " + "; ".join(x.message for x in v.violations))
            bq.nonzero_paths  # raises on infinite dimension
        try:
            result = fn(bq, args, out)
        except (CriterionDisagreement, CrossCheckFailure, AssertionError) as exc:
            out.append(f"internal check failed: {exc}")
            stdout.write("\n".join(out) + "\n")
            if args.report:
                _write_report(args.report, name, digest, {"error": "internal", "message": str(exc)})
            return 2
        stdout.write("\n".join(out) + "\n")
        if args.report:
            _write_report(args.report, name, digest, result)
        return 0
    except (InputError, QuiverError, InvalidStringError, NotABandError, GeneratorError,
            InfiniteDimensionError, UnsupportedShape, OSError, ValueError) as exc:
        sys.stderr.write(f"gentle-lab: error: {exc}\n")
        return 1


def main(argv=None):
    return run(sys.argv[1:] if argv is None else argv)
