"""Command-line surface: parse a workspace file and run checks over it.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage or parse error.
Every command accepts --bounds (arity/size/dim/steps caps), --json, and
--out.
"""

from __future__ import annotations

import argparse
import json
import sys

from .colors import Profile
from .diagrams import (
    canonical_form,
    certificate,
    diagram_to_dot,
    diagram_to_json,
)
from .dsl import DslError, parse
from .filtration import decoration_multiset, filtration_degree
from .linear import check_model, evaluate_diagram
from .operads import check_UF_identity, free_prop_on_operad
from .presentations import Budget, eq_modulo_relations, image_diagram
from .sset import FiniteSimplicialSet, pi0_classes

DEFAULT_BOUNDS = {"arity": 2, "size": 3, "dim": 2, "steps": 4,
                  "vertices": 12, "visited": 4000}


class CliError(Exception):
    def __init__(self, message, code=2):
        super().__init__(message)
        self.code = code


def _parse_bounds(text):
    bounds = dict(DEFAULT_BOUNDS)
    if not text:
        return bounds
    for part in text.split(","):
        if not part:
            continue
        if "=" not in part:
            raise CliError(f"bad bound {part!r}; expected key=value")
        k, v = part.split("=", 1)
        if k not in bounds:
            raise CliError(f"unknown bound {k!r}; "
                           f"known: {', '.join(sorted(bounds))}")
        try:
            bounds[k] = int(v)
        except ValueError:
            raise CliError(f"bound {k!r} needs an integer, got {v!r}")
    return bounds


def _budget(bounds):
    return Budget(max_steps=bounds["steps"], max_vertices=bounds["vertices"],
                  max_visited=bounds["visited"])


def _load(path):
    try:
        with open(path) as fh:
            src = fh.read()
    except OSError as e:
        raise CliError(f"cannot read {path}: {e}")
    ws = parse(src)
    if ws.errors:
        msgs = "\n".join(f"{path}:{d}" for d in ws.errors)
        raise CliError(msgs)
    return ws


def _get(ws, name, kinds):
    try:
        return ws.require(name, kinds, (0, 0)).obj
    except DslError as e:
        raise CliError(e.message)


def _term_decl(ws, name):
    d = ws.find(name, ("term",))
    if d is None:
        raise CliError(f"no term named {name!r}")
    return d


def _pres_of_term(ws, decl):
    return _get(ws, decl.data["prop"], ("prop",))


def _emit(args, text, obj):
    out = json.dumps(obj, sort_keys=True, indent=2) if args.json else text
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out + "\n")
    else:
        print(out)


def _profile_str(d):
    return f"({' '.join(d.inputs)}) -> ({' '.join(d.outputs)})"


def _pres_summary(pres):
    return {
        "colors": sorted(pres.base.objects),
        "generators": {
            name: {"inputs": list(p.inputs), "outputs": list(p.outputs)}
            for name, p in pres.base.generators
        },
        "relations": [r.name for r in pres.relations],
    }


def _pres_text(pres, title):
    lines = [title,
             "  colors: " + " ".join(sorted(pres.base.objects))]
    for name, p in pres.base.generators:
        lines.append(f"  gen {name} : ({' '.join(p.inputs)}) -> "
                     f"({' '.join(p.outputs)})")
    for r in pres.relations:
        lines.append(f"  rel {r.name} ({r.lhs.n_vertices} = "
                     f"{r.rhs.n_vertices} vertices)")
    return "\n".join(lines)


# -- hom tabulation (shared by classify / rlp) -------------------------------


def _tabulated(pres, bounds):
    from .finite import prop_of_presentation

    return prop_of_presentation(pres, bounds["arity"], bounds["size"],
                                _budget(bounds))


def _finite_map_of_hom(hom, bounds):
    """Tabulate src and dst and transport each source op along the hom."""
    from .finite import FinitePropMap

    budget = _budget(bounds)
    src, src_rep = _tabulated(hom.src, bounds)
    dst, dst_rep = _tabulated(hom.dst, bounds)
    op_map = {}
    for f in src.all_ops():
        img = image_diagram(hom, src_rep[f])
        pf = src.profile_of[f]
        prof = Profile(tuple(hom.color_map[c] for c in pf.inputs),
                       tuple(hom.color_map[c] for c in pf.outputs))
        cert = certificate(img)
        hit = None
        for g in dst.ops.get(prof, ()):
            if certificate(dst_rep[g]) == cert or \
                    eq_modulo_relations(hom.dst, dst_rep[g], img, budget):
                hit = g
                break
        if hit is None:
            raise CliError(
                f"image of op {f!r} not identified in the target tables; "
                "raise --bounds", code=1
            )
        op_map[f] = hit
    return FinitePropMap(src, dst, dict(hom.color_map), op_map).check()


# -- commands ----------------------------------------------------------------


def cmd_normalize(ws, args, bounds):
    decl = _term_decl(ws, args.term)
    canon, cert, _ = canonical_form(decl.obj)
    text = (f"{args.term} : {_profile_str(canon)}\n"
            f"vertices: {canon.n_vertices}\ncertificate: {cert}")
    _emit(args, text, {"term": args.term, "profile": _profile_str(canon),
                       "vertices": canon.n_vertices, "certificate": str(cert)})
    return 0


def cmd_eq(ws, args, bounds):
    d1 = _term_decl(ws, args.term1)
    d2 = _term_decl(ws, args.term2)
    if d1.data["prop"] != d2.data["prop"]:
        raise CliError("terms live in different props")
    pres = _pres_of_term(ws, d1)
    verdict = eq_modulo_relations(pres, d1.obj, d2.obj, _budget(bounds))
    if verdict.kind == "equal":
        how = "certificates match" if not pres.relations or \
            certificate(d1.obj) == certificate(d2.obj) else "relation chain"
        text = f"Equal ({'free' if not pres.relations else 'modulo'}): {how}"
    elif verdict.kind == "distinct":
        text = f"Distinct: {verdict.reason}"
    else:
        text = "Unknown within budget"
    _emit(args, text, {"verdict": verdict.kind, "reason": verdict.reason})
    return 0 if verdict.kind == "equal" else 1


def cmd_compose(ws, args, bounds):
    from .diagrams import compose_horizontal, compose_vertical

    d1 = _term_decl(ws, args.term1).obj
    d2 = _term_decl(ws, args.term2).obj
    try:
        comp = compose_vertical(d1, d2) if args.how == "v" else \
            compose_horizontal(d1, d2)
    except Exception as e:
        raise CliError(str(e), code=1)
    canon, cert, _ = canonical_form(comp)
    _emit(args,
          f"{_profile_str(canon)} with {canon.n_vertices} vertices\n"
          f"certificate: {cert}",
          {"profile": _profile_str(canon), "vertices": canon.n_vertices,
           "certificate": str(cert), "diagram": diagram_to_json(canon)})
    return 0


def cmd_pushout(ws, args, bounds):
    from .colimits import pushout

    j = _get(ws, args.left, ("hom",))
    f = _get(ws, args.right, ("hom",))
    try:
        S, legQ, legR = pushout(j, f)
    except Exception as e:
        raise CliError(str(e), code=1)
    _emit(args, _pres_text(S, "pushout:"), _pres_summary(S))
    return 0


def cmd_coproduct(ws, args, bounds):
    from .colimits import coproduct

    P = _get(ws, args.left, ("prop",))
    Q = _get(ws, args.right, ("prop",))
    S, _, _ = coproduct(P, Q)
    _emit(args, _pres_text(S, "coproduct:"), _pres_summary(S))
    return 0


def cmd_verify_pushout(ws, args, bounds):
    from .colimits import pushout, verify_pushout_universal
    from .finite import terminal_prop

    j = _get(ws, args.left, ("hom",))
    f = _get(ws, args.right, ("hom",))
    S, legQ, legR = pushout(j, f)
    targets = [terminal_prop(("*",), bounds["arity"]),
               terminal_prop(("*", "o"), bounds["arity"])]
    report = verify_pushout_universal(j, f, S, legQ, legR, targets)
    ok = all(e["ok"] for e in report)
    lines = [
        f"target on colors {list(e['colors'])}: "
        f"{e['cocones']} cocones, {'ok' if e['ok'] else 'FAIL'}"
        for e in report
    ]
    _emit(args, "\n".join(lines + ["pass" if ok else "FAIL"]),
          {"ok": ok,
           "targets": [{"colors": list(e["colors"]),
                        "cocones": e["cocones"], "ok": e["ok"]}
                       for e in report]})
    return 0 if ok else 1


def cmd_forget(ws, args, bounds):
    from .operads import forget_to_operad

    pres = _get(ws, args.prop, ("prop",))
    try:
        T, _ = _tabulated(pres, bounds)
        O = forget_to_operad(T)
    except Exception as e:
        raise CliError(str(e), code=1)
    counts = {f"({' '.join(w)}) -> {c}": len(vals)
              for (w, c), vals in sorted(O.ops.items())}
    text = "\n".join([f"colors: {' '.join(O.colors)}"] +
                     [f"  {k}: {v} ops" for k, v in counts.items()])
    _emit(args, text, {"colors": list(O.colors), "ops": counts})
    return 0


def cmd_free_prop(ws, args, bounds):
    O = _get(ws, args.operad, ("operad",))
    P = free_prop_on_operad(O)
    _emit(args, _pres_text(P, "free prop on operad:"), _pres_summary(P))
    return 0


def cmd_check_uf(ws, args, bounds):
    O = _get(ws, args.operad, ("operad",))
    report = check_UF_identity(O, size_bound=bounds["size"],
                               budget=_budget(bounds))
    lines = [f"  {prof}: {got} classes vs {want} ops"
             for prof, (got, want) in sorted(report["profiles"].items())]
    text = "\n".join(lines + ["pass" if report["ok"] else "FAIL"])
    _emit(args, text, {"ok": report["ok"],
                       "profiles": {k: list(v)
                                    for k, v in report["profiles"].items()}})
    return 0 if report["ok"] else 1


def cmd_classify(ws, args, bounds):
    from .sprops import classify_prop_map, discrete_sprop_map

    hom = _get(ws, args.hom, ("hom",))
    spm = discrete_sprop_map(_finite_map_of_hom(hom, bounds))
    rep = classify_prop_map(spm, n_max=bounds["dim"])
    flags = {
        "F1": rep["F1"]["ok"], "F2": rep["F2"],
        "W1_necessary": rep["W1_necessary"]["ok"], "W2": rep["W2"],
    }
    text = "\n".join([f"  {k}: {'yes' if v else 'no'}"
                      for k, v in flags.items()] +
                     [f"  ({rep['W1_necessary']['qualifier']})"])
    _emit(args, text, {**flags,
                       "qualifier": rep["W1_necessary"]["qualifier"]})
    return 0


def cmd_rlp(ws, args, bounds):
    from .sprops import discrete_sprop_map, rlp_against_generators

    hom = _get(ws, args.hom, ("hom",))
    spm = discrete_sprop_map(_finite_map_of_hom(hom, bounds))
    rep = rlp_against_generators(spm, args.set, ell_max=bounds["dim"])
    ok = rep["ok"]
    text = (f"rlp against {args.set} up to dimension {bounds['dim']}: "
            f"{'pass' if ok else 'FAIL'}\nnote: {rep['note']}")
    _emit(args, text, {"ok": ok, "set": args.set, "note": rep["note"]})
    return 0 if ok else 1


def cmd_pi0(ws, args, bounds):
    d = ws.find(args.name, ("sset", "prop"))
    if d is None:
        raise CliError(f"no sset or prop named {args.name!r}")
    if d.kind == "sset":
        reps = pi0_classes(d.obj)
        text = "\n".join(f"  component of {r}" for r in reps)
        _emit(args, f"{len(reps)} components\n{text}",
              {"components": [str(r) for r in reps]})
        return 0
    from .sprops import discrete_sprop, pi0_prop

    T, _ = _tabulated(d.obj, bounds)
    C = pi0_prop(discrete_sprop(T))
    homs = {}
    for m, a, b in C.morphisms:
        homs[f"{a} -> {b}"] = homs.get(f"{a} -> {b}", 0) + 1
    text = "\n".join([f"objects: {' '.join(C.objects)}"] +
                     [f"  {k}: {v}" for k, v in sorted(homs.items())])
    _emit(args, text, {"objects": list(C.objects), "homs": homs})
    return 0


def cmd_filtration_degree(ws, args, bounds):
    decl = _term_decl(ws, args.term)
    pres = _pres_of_term(ws, decl)
    counted = set(args.count.split(",")) if args.count else \
        {g for g, _ in pres.base.generators}
    unknown = counted - {g for g, _ in pres.base.generators}
    if unknown:
        raise CliError(f"unknown generators: {sorted(unknown)}")
    k, witness = filtration_degree(pres, counted, decl.obj, _budget(bounds))
    _emit(args,
          f"degree <= {k} (witness with {witness.n_vertices} vertices)",
          {"term": args.term, "degree_bound": k,
           "witness_vertices": witness.n_vertices,
           "counted": sorted(counted)})
    return 0


def cmd_sp(ws, args, bounds):
    decl = _term_decl(ws, args.term)
    sp = decoration_multiset(decl.obj)
    text = " ".join(f"{g}^{k}" if k > 1 else g for g, k in sp.counts) or "1"
    _emit(args, text, {"term": args.term, "multiset": dict(sp.counts)})
    return 0


def cmd_eval(ws, args, bounds):
    decl = _term_decl(ws, args.term)
    model = _get(ws, args.model, ("model",))
    try:
        M = evaluate_diagram(model, decl.obj)
    except Exception as e:
        raise CliError(str(e), code=1)
    rows = [[str(x) for x in row] for row in M]
    text = "\n".join("[" + "  ".join(r) + "]" for r in rows) or "[]"
    _emit(args, text, {"term": args.term, "model": args.model,
                       "matrix": rows})
    return 0


def cmd_check_model(ws, args, bounds):
    mdecl = ws.find(args.model, ("model",))
    if mdecl is None:
        raise CliError(f"no model named {args.model!r}")
    pres = _get(ws, mdecl.data["prop"], ("prop",))
    rep = check_model(mdecl.obj, pres)
    failed = {f["relation"] for f in rep["failures"]}
    lines = [f"  {r.name}: {'FAIL' if r.name in failed else 'pass'}"
             for r in pres.relations]
    text = "\n".join(lines + ["pass" if rep["ok"] else "FAIL"])
    _emit(args, text,
          {"ok": rep["ok"],
           "relations": {r.name: r.name not in failed
                         for r in pres.relations}})
    return 0 if rep["ok"] else 1


def cmd_export_dot(ws, args, bounds):
    decl = _term_decl(ws, args.term)
    dot = diagram_to_dot(decl.obj, args.term)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(dot + "\n")
    else:
        print(dot)
    return 0


# -- dispatch ----------------------------------------------------------------


def _build_parser():
    p = argparse.ArgumentParser(
        prog="propkit",
        description="checks and exports over .prp workspace files",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, *specs, **kw):
        sp = sub.add_parser(name, **kw)
        sp.add_argument("file", help="workspace file (.prp)")
        for spec in specs:
            sp.add_argument(*spec[0], **spec[1])
        sp.add_argument("--bounds", default="",
                        help="comma list of key=value caps "
                             "(arity,size,dim,steps,vertices,visited)")
        sp.add_argument("--json", action="store_true")
        sp.add_argument("--out", default=None)
        sp.set_defaults(fn=fn)
        return sp

    add("normalize", cmd_normalize, (("term",), {}),
        help="canonical form and certificate of a term")
    add("eq", cmd_eq, (("term1",), {}), (("term2",), {}),
        help="decide equality of two terms modulo their prop's relations")
    add("compose", cmd_compose, (("term1",), {}), (("term2",), {}),
        (("--how",), {"choices": ["v", "h"], "default": "v"}),
        help="compose two terms")
    add("pushout", cmd_pushout, (("left",), {}), (("right",), {}),
        help="pushout presentation of two homs out of a shared source")
    add("coproduct", cmd_coproduct, (("left",), {}), (("right",), {}),
        help="coproduct presentation of two props")
    add("verify-pushout", cmd_verify_pushout, (("left",), {}),
        (("right",), {}),
        help="check the pushout universal property against small targets")
    add("forget", cmd_forget, (("prop",), {}),
        help="one-output operations of the tabulated prop")
    add("free-prop", cmd_free_prop, (("operad",), {}),
        help="presentation of the prop generated by an operad")
    add("check-uf", cmd_check_uf, (("operad",), {}),
        help="compare the operad's tables with its generated prop")
    add("classify", cmd_classify, (("hom",), {}),
        help="fibration/equivalence flags of a hom")
    add("rlp", cmd_rlp, (("hom",), {}),
        (("--set",), {"choices": ["I", "J"], "default": "J"}),
        help="right lifting property against a generating set")
    add("pi0", cmd_pi0, (("name",), {}),
        help="path components of an sset, or the component category of a prop")
    add("filtration-degree", cmd_filtration_degree, (("term",), {}),
        (("--count",), {"default": ""}),
        help="budgeted minimum count of designated generators")
    add("sp", cmd_sp, (("term",), {}),
        help="decoration multiset of a term")
    add("eval", cmd_eval, (("term",), {}),
        (("--model",), {"required": True}),
        help="exact matrix of a term under a linear model")
    add("check-model", cmd_check_model, (("model",), {}),
        help="verify every relation of the model's prop")
    add("export-dot", cmd_export_dot, (("term",), {}),
        help="DOT rendering of a term")
    return p


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        bounds = _parse_bounds(args.bounds)
        ws = _load(args.file)
        return args.fn(ws, args, bounds)
    except CliError as e:
        print(str(e), file=sys.stderr)
        return e.code
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
