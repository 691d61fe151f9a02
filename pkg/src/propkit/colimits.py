"""Change of colors and finite colimits for presented props.

The recoloring adjunction pairs a pushforward on presentations with a
pullback on finite tables.  Coproducts and pushouts are computed on
presentations (a pushout of props has no canonical diagram-level
representative); universal properties are then verified against finite
target props by exhaustive model enumeration.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .colors import Profile, make_megagraph
from .diagrams import WiringDiagram, generator_diagram
from .finite import (
    ArityBoundExceeded,
    FiniteProp,
    FinitePropMap,
    PropModel,
    enumerate_models,
)
from .presentations import (
    Budget,
    PropHom,
    PropPresentation,
    Relation,
    image_diagram,
)


@dataclass(frozen=True)
class ColorMap:
    source: frozenset
    target: frozenset
    table: tuple  # sorted (color, image) pairs

    def __call__(self, c):
        return dict(self.table)[c]

    def as_dict(self):
        return dict(self.table)

    def violations(self) -> list[str]:
        t = self.as_dict()
        out = []
        for c in sorted(self.source):
            if c not in t:
                out.append(f"color {c} unmapped")
            elif t[c] not in self.target:
                out.append(f"image of {c} outside target")
        for c in t:
            if c not in self.source:
                out.append(f"table mentions {c} outside source")
        return out

    def is_injective(self) -> bool:
        vals = [v for _, v in self.table]
        return len(set(vals)) == len(vals)

    def complement(self):
        return sorted(self.target - {v for _, v in self.table})


def color_map(source, target, table) -> ColorMap:
    cm = ColorMap(
        frozenset(source), frozenset(target), tuple(sorted(table.items()))
    )
    errs = cm.violations()
    if errs:
        raise ValueError("; ".join(errs))
    return cm


def identity_color_map(colors) -> ColorMap:
    return color_map(colors, colors, {c: c for c in colors})


def recolor_diagram(d: WiringDiagram, cmap: dict) -> WiringDiagram:
    f = lambda c: cmap.get(c, c)
    return WiringDiagram(
        tuple(f(c) for c in d.inputs),
        tuple(f(c) for c in d.outputs),
        dict(d.vertices),
        d.edges,
        {
            g: Profile(tuple(f(c) for c in p.inputs), tuple(f(c) for c in p.outputs))
            for g, p in d.gen_profiles.items()
        },
    )


# -- pushforward / pullback -------------------------------------------------


def pushforward(alpha: ColorMap, P: PropPresentation) -> PropPresentation:
    """Recolor the presentation along alpha; colors of the target not in the
    image appear as free colors."""
    t = alpha.as_dict()
    gens = [
        (name, Profile(tuple(t[c] for c in p.inputs), tuple(t[c] for c in p.outputs)))
        for name, p in P.base.generators
    ]
    mega = make_megagraph(alpha.target, gens)
    rels = tuple(
        Relation(r.name, recolor_diagram(r.lhs, t), recolor_diagram(r.rhs, t))
        for r in P.relations
    )
    return PropPresentation(mega, rels).check()


def pushforward_unit(alpha: ColorMap, P: PropPresentation) -> PropHom:
    """The canonical hom P -> pushforward(alpha, P) with color map alpha."""
    Q = pushforward(alpha, P)
    return PropHom(
        P, Q, alpha.as_dict(),
        {name: generator_diagram(Q.base, name) for name, _ in P.base.generators},
    ).check()


def pullback_colors(alpha: ColorMap, T: FiniteProp, deep_check: bool = True):
    """The finite prop with hom tables reindexed along alpha, together with
    the canonical map into T whose color function is alpha."""
    t = alpha.as_dict()
    colors = tuple(sorted(alpha.source))
    bound = T.arity_bound

    def push_prof(prof: Profile) -> Profile:
        return Profile(
            tuple(t[c] for c in prof.inputs), tuple(t[c] for c in prof.outputs)
        )

    ops = {}
    for n in range(bound + 1):
        for m in range(bound + 1):
            for ins in itertools.product(colors, repeat=n):
                for outs in itertools.product(colors, repeat=m):
                    prof = Profile(ins, outs)
                    vals = T.ops.get(push_prof(prof), ())
                    if vals:
                        ops[prof] = tuple((prof, v) for v in vals)

    def lift(prof, v):
        return (prof, v)

    identities = {}
    for n in range(bound + 1):
        for w in itertools.product(colors, repeat=n):
            identities[w] = (
                Profile(w, w), T.identities[tuple(t[c] for c in w)]
            )
    vtable, htable, inact, outact = {}, {}, {}, {}
    allops = [op for vals in ops.values() for op in vals]
    for f in allops:
        pf, vf = f
        for g in allops:
            pg, vg = g
            if pg.outputs == pf.inputs:
                vtable[(f, g)] = (
                    Profile(pg.inputs, pf.outputs), T.vtable[(vf, vg)]
                )
            hp = Profile(pf.inputs + pg.inputs, pf.outputs + pg.outputs)
            if len(hp.inputs) <= bound and len(hp.outputs) <= bound:
                htable[(f, g)] = (hp, T.htable[(vf, vg)])
        from .perms import all_permutations

        for s in all_permutations(len(pf.inputs)):
            inact[(f, s.image)] = (
                Profile(tuple(s.inverse().apply(pf.inputs)), pf.outputs),
                T.in_act[(vf, s.image)],
            )
        for s in all_permutations(len(pf.outputs)):
            outact[(f, s.image)] = (
                Profile(pf.inputs, tuple(s.apply(pf.outputs))),
                T.out_act[(vf, s.image)],
            )
    pulled = FiniteProp(
        colors, bound, ops, identities, vtable, htable, inact, outact
    ).check(deep_check)
    canonical = FinitePropMap(
        pulled, T, t, {op: op[1] for op in allops}
    ).check()
    return pulled, canonical


# -- factorizations ---------------------------------------------------------


def compose_model_hom(m: PropModel, h: PropHom) -> PropModel:
    """Restrict a model of h's target along h."""
    return PropModel(
        h.src, m.prop,
        {c: m.color_map[d] for c, d in h.color_map.items()},
        {name: m.value(img) for name, img in h.gen_images.items()},
    )


def models_agree(a: PropModel, b: PropModel) -> bool:
    return a.color_map == b.color_map and a.gen_assign == b.gen_assign


def factor_through_pullback(m: PropModel):
    """Factor a model R -> T as R -> alpha*T -> T where alpha is the model's
    color function.  The first factor has the identity color map."""
    alpha = color_map(
        set(m.pres.base.objects) or set(m.color_map),
        m.prop.colors,
        {c: m.color_map[c] for c in m.pres.base.objects},
    )
    pulled, canonical = pullback_colors(alpha, m.prop)
    t = alpha.as_dict()
    assign = {}
    for name, prof in m.pres.base.generators:
        assign[name] = (prof, m.gen_assign[name])
    first = PropModel(
        m.pres, pulled, {c: c for c in m.pres.base.objects}, assign
    ).check()
    return first, canonical


def factor_through_pushforward(h: PropHom, alpha: Optional[ColorMap] = None):
    """Factor h: B -> R through the recoloring of B along h's color
    function: returns ht with identity color map such that ht after the
    canonical B -> alpha_!B equals h."""
    if alpha is None:
        alpha = color_map(
            h.src.base.objects, h.dst.base.objects,
            {c: h.color_map[c] for c in h.src.base.objects},
        )
    B2 = pushforward(alpha, h.src)
    return PropHom(
        B2, h.dst,
        {c: c for c in B2.base.objects},
        dict(h.gen_images),
    ).check()


def restrict_model_along_pushforward(alpha: ColorMap, m: PropModel,
                                     B: PropPresentation) -> PropModel:
    """The adjoint direction: a model of alpha_!B gives a model of B with
    color function factoring through alpha."""
    return PropModel(
        B, m.prop,
        {c: m.color_map[alpha(c)] for c in B.base.objects},
        dict(m.gen_assign),
    )


def extend_model_along_pushforward(alpha: ColorMap, m: PropModel,
                                   free_color_images: dict) -> PropModel:
    """Inverse adjoint direction: a model of B whose color function factors
    as beta after alpha extends to a model of alpha_!B; colors outside the
    image need chosen images (free_color_images)."""
    B2 = pushforward(alpha, m.pres)
    cmap = dict(free_color_images)
    for c in m.pres.base.objects:
        d = alpha(c)
        if d in cmap and cmap[d] != m.color_map[c]:
            raise ValueError("color function does not factor through alpha")
        cmap[d] = m.color_map[c]
    return PropModel(B2, m.prop, cmap, dict(m.gen_assign)).check()


# -- coproduct and pushout --------------------------------------------------


def _tagged(P: PropPresentation, tag: str):
    cmap = {c: f"{tag}{c}" for c in P.base.objects}
    gmap = {name: f"{tag}{name}" for name, _ in P.base.generators}

    def redo(d: WiringDiagram) -> WiringDiagram:
        d2 = recolor_diagram(d, cmap)
        return WiringDiagram(
            d2.inputs, d2.outputs,
            {v: gmap[g] for v, g in d2.vertices.items()},
            d2.edges,
            {gmap.get(g, g): p for g, p in d2.gen_profiles.items()},
        )

    gens = [
        (gmap[name],
         Profile(tuple(cmap[c] for c in p.inputs), tuple(cmap[c] for c in p.outputs)))
        for name, p in P.base.generators
    ]
    rels = [Relation(f"{tag}{r.name}", redo(r.lhs), redo(r.rhs)) for r in P.relations]
    return cmap, gmap, gens, rels, redo


def coproduct(P: PropPresentation, Q: PropPresentation):
    """Disjoint union of presentations, with the two inclusion homs."""
    cP, gP, gensP, relsP, _ = _tagged(P, "0.")
    cQ, gQ, gensQ, relsQ, _ = _tagged(Q, "1.")
    mega = make_megagraph(
        list(cP.values()) + list(cQ.values()), gensP + gensQ
    )
    S = PropPresentation(mega, tuple(relsP + relsQ)).check()
    inl = PropHom(
        P, S, cP, {n: generator_diagram(mega, gP[n]) for n, _ in P.base.generators}
    ).check()
    inr = PropHom(
        Q, S, cQ, {n: generator_diagram(mega, gQ[n]) for n, _ in Q.base.generators}
    ).check()
    return S, inl, inr


def pushout(j: PropHom, f: PropHom):
    """Pushout of Q <- P -> R on presentations: glue colors along the two
    color maps and impose image_j(g) = image_f(g) for each generator of P.

    Returns (S, legQ, legR) with legQ after j == legR after f.
    """
    if j.src is not f.src and j.src.base != f.src.base:
        raise ValueError("pushout legs must share their source presentation")
    P, Q, R = j.src, j.dst, f.dst
    cQ, gQ, gensQ, relsQ, redoQ = _tagged(Q, "0.")
    cR, gR, gensR, relsR, redoR = _tagged(R, "1.")

    # glue colors with a union-find over the tagged color set
    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            # deterministic representative: smallest name
            lo, hi = sorted((rx, ry))
            parent[hi] = lo

    for c in list(cQ.values()) + list(cR.values()):
        find(c)
    for c in P.base.objects:
        union(cQ[j.color_map[c]], cR[f.color_map[c]])
    quot = {c: find(c) for c in list(cQ.values()) + list(cR.values())}

    gens = [
        (name,
         Profile(tuple(quot[x] for x in p.inputs), tuple(quot[x] for x in p.outputs)))
        for name, p in gensQ + gensR
    ]
    mega = make_megagraph(sorted(set(quot.values())), gens)

    def q(d):
        return recolor_diagram(d, quot)

    rels = [Relation(r.name, q(r.lhs), q(r.rhs)) for r in relsQ + relsR]
    legQ_map = {c: quot[cQ[c]] for c in Q.base.objects}
    legR_map = {c: quot[cR[c]] for c in R.base.objects}
    legQ_imgs = {
        n: recolor_diagram(redoQ(generator_diagram(Q.base, n)), quot)
        for n, _ in Q.base.generators
    }
    legR_imgs = {
        n: recolor_diagram(redoR(generator_diagram(R.base, n)), quot)
        for n, _ in R.base.generators
    }
    # gluing relations: both images of each generator of P agree
    glue = []
    for name, _ in P.base.generators:
        g = generator_diagram(P.base, name)
        left = recolor_diagram(redoQ(image_diagram(j, g)), quot)
        right = recolor_diagram(redoR(image_diagram(f, g)), quot)
        glue.append(Relation(f"glue.{name}", left, right))
    S = PropPresentation(mega, tuple(rels + glue)).check()
    legQ = PropHom(Q, S, legQ_map, legQ_imgs).check()
    legR = PropHom(R, S, legR_map, legR_imgs).check()
    return S, legQ, legR


# -- pullbacks of finite props ----------------------------------------------


def pullback_props(g: FinitePropMap, k: FinitePropMap):
    """Hom-wise fiber product of finite props over a common target."""
    if g.dst is not k.dst and g.dst.colors != k.dst.colors:
        raise ValueError("pullback legs must share their target")
    R, B, T = g.src, k.src, g.dst
    bound = min(R.arity_bound, B.arity_bound)
    pairs = [
        (c, d)
        for c in R.colors
        for d in B.colors
        if g.color_map[c] == k.color_map[d]
    ]
    colors = tuple(f"{c}|{d}" for c, d in pairs)
    split = {f"{c}|{d}": (c, d) for c, d in pairs}

    def proj(word, i):
        return tuple(split[x][i] for x in word)

    ops = {}
    for n in range(bound + 1):
        for m in range(bound + 1):
            for ins in itertools.product(colors, repeat=n):
                for outs in itertools.product(colors, repeat=m):
                    prof = Profile(ins, outs)
                    pR = Profile(proj(ins, 0), proj(outs, 0))
                    pB = Profile(proj(ins, 1), proj(outs, 1))
                    vals = tuple(
                        (prof, a, b)
                        for a in R.ops.get(pR, ())
                        for b in B.ops.get(pB, ())
                        if g.op_map[a] == k.op_map[b]
                    )
                    if vals:
                        ops[prof] = vals
    identities = {}
    for n in range(bound + 1):
        for w in itertools.product(colors, repeat=n):
            identities[w] = (
                Profile(w, w),
                R.identities[proj(w, 0)],
                B.identities[proj(w, 1)],
            )
    from .perms import all_permutations

    vtable, htable, inact, outact = {}, {}, {}, {}
    allops = [op for vals in ops.values() for op in vals]
    for fo in allops:
        pf, fa, fb = fo
        for go in allops:
            pg, ga, gb = go
            if pg.outputs == pf.inputs:
                vtable[(fo, go)] = (
                    Profile(pg.inputs, pf.outputs),
                    R.vtable[(fa, ga)], B.vtable[(fb, gb)],
                )
            hp = Profile(pf.inputs + pg.inputs, pf.outputs + pg.outputs)
            if len(hp.inputs) <= bound and len(hp.outputs) <= bound:
                htable[(fo, go)] = (hp, R.htable[(fa, ga)], B.htable[(fb, gb)])
        for s in all_permutations(len(pf.inputs)):
            inact[(fo, s.image)] = (
                Profile(tuple(s.inverse().apply(pf.inputs)), pf.outputs),
                R.in_act[(fa, s.image)], B.in_act[(fb, s.image)],
            )
        for s in all_permutations(len(pf.outputs)):
            outact[(fo, s.image)] = (
                Profile(pf.inputs, tuple(s.apply(pf.outputs))),
                R.out_act[(fa, s.image)], B.out_act[(fb, s.image)],
            )
    PB = FiniteProp(
        colors, bound, ops, identities, vtable, htable, inact, outact
    ).check()
    pr1 = FinitePropMap(
        PB, R, {x: split[x][0] for x in colors}, {op: op[1] for op in allops}
    ).check()
    pr2 = FinitePropMap(
        PB, B, {x: split[x][1] for x in colors}, {op: op[2] for op in allops}
    ).check()
    return PB, pr1, pr2


# -- universal-property verification ----------------------------------------


def verify_pushout_universal(j: PropHom, f: PropHom, S: PropPresentation,
                             legQ: PropHom, legR: PropHom, targets):
    """Check the pushout universal property against each finite target:
    every cocone extends through S along a unique mediating model.

    Returns a report list, one entry per target, with any witness cocone
    that fails existence or uniqueness.  Enumeration overflow is reported
    per target, not raised.
    """
    report = []
    for T in targets:
        entry = {"colors": T.colors, "cocones": 0, "ok": True,
                 "witness": None, "overflow": False}
        try:
            modelsQ = enumerate_models(j.dst, T)
            modelsR = enumerate_models(f.dst, T)
            modelsS = enumerate_models(S, T)
            mediated = [
                (compose_model_hom(m, legQ), compose_model_hom(m, legR))
                for m in modelsS
            ]
            for mQ in modelsQ:
                viaQ = compose_model_hom(mQ, j)
                for mR in modelsR:
                    viaR = compose_model_hom(mR, f)
                    if not models_agree(viaQ, viaR):
                        continue
                    entry["cocones"] += 1
                    hits = [
                        i for i, (a, b) in enumerate(mediated)
                        if models_agree(a, mQ) and models_agree(b, mR)
                    ]
                    if len(hits) != 1:
                        entry["ok"] = False
                        entry["witness"] = {
                            "coconeQ": (mQ.color_map, mQ.gen_assign),
                            "coconeR": (mR.color_map, mR.gen_assign),
                            "mediators": len(hits),
                        }
        except ArityBoundExceeded as exc:
            entry["overflow"] = True
            entry["ok"] = False
            entry["witness"] = str(exc)
        report.append(entry)
    return report


# -- presentation isomorphism -----------------------------------------------


@dataclass
class IsoVerdict:
    kind: str                      # "iso" | "no" | "unknown"
    color_bij: Optional[dict] = None
    gen_bij: Optional[dict] = None

    def __bool__(self):
        return self.kind == "iso"


def presentation_isomorphic(P: PropPresentation, Q: PropPresentation,
                            budget: Optional[Budget] = None) -> IsoVerdict:
    """Search for an isomorphism sending generators to generators: a color
    bijection plus a profile-compatible generator bijection under which
    each presentation's relations provably hold in the other."""
    from .presentations import simplify_presentation

    budget = budget or Budget()
    P, _ = simplify_presentation(P)
    Q, _ = simplify_presentation(Q)
    pc, qc = sorted(P.base.objects), sorted(Q.base.objects)
    pg, qg = list(P.base.generators), list(Q.base.generators)
    if len(pc) != len(qc) or len(pg) != len(qg):
        return IsoVerdict("no")
    saw_unknown = False
    for perm in itertools.permutations(qc):
        cbij = dict(zip(pc, perm))
        pools = []
        for name, prof in pg:
            want = Profile(
                tuple(cbij[c] for c in prof.inputs),
                tuple(cbij[c] for c in prof.outputs),
            )
            pools.append([(name, n2) for n2, p2 in qg if p2 == want])
        ok_any = False
        for pick in itertools.product(*pools):
            gbij = dict(pick)
            if len(set(gbij.values())) != len(gbij):
                continue
            fwd = PropHom(
                P, Q, cbij,
                {n: generator_diagram(Q.base, gbij[n]) for n, _ in pg},
            )
            inv_c = {v: k for k, v in cbij.items()}
            inv_g = {v: k for k, v in gbij.items()}
            bwd = PropHom(
                Q, P, inv_c,
                {n: generator_diagram(P.base, inv_g[n]) for n, _ in qg},
            )
            verdicts = [v for _, v in fwd.relation_report(budget)]
            verdicts += [v for _, v in bwd.relation_report(budget)]
            if all(v.kind == "equal" for v in verdicts):
                return IsoVerdict("iso", cbij, gbij)
            if any(v.kind == "unknown" for v in verdicts) and \
                    not any(v.kind == "distinct" for v in verdicts):
                saw_unknown = True
    return IsoVerdict("unknown" if saw_unknown else "no")
