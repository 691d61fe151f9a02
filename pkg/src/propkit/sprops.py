"""Finite props enriched in simplicial sets.

An enriched prop is stored as a finite simplicial set per profile together
with a vertex-level table prop; the structure maps on higher cells are given
by a per-family rule (discrete, congruence-thickened, or corolla-decorated)
and are validated dimension-by-dimension up to an explicit bound.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .colors import Profile, make_megagraph
from .diagrams import (
    WiringDiagram,
    act_input,
    act_output,
    canonical_form,
    compose_horizontal,
    compose_vertical,
    generator_diagram,
    identity_diagram,
)
from .finite import (
    ArityBoundExceeded,
    FiniteCategory,
    FiniteProp,
    FinitePropMap,
    Functor,
    is_equivalence,
    is_isofibration,
    tabulate_prop,
)
from .interp import Target, evaluate
from .perms import Permutation, all_permutations
from .presentations import enumerate_diagrams
from .sset import (
    FiniteSimplicialSet,
    SSetMap,
    _compose,
    boundary_inclusion,
    fibration_up_to,
    has_rlp,
    homology_up_to,
    horn_inclusion,
    joint_normalize,
    pi0_sset,
)


# -- cell-level structure rules ---------------------------------------------


class DiscreteStructure:
    """Every hom is discrete; cells are degeneracies of vertices and the
    structure maps are degeneracies of the vertex tables."""

    def __init__(self, vprop: FiniteProp):
        self.vprop = vprop

    def id_cell(self, word, q):
        return ((0,) * (q + 1), self.vprop.identities[tuple(word)])

    def vcomp(self, pf, cf, pg, cg):
        return (cf[0], self.vprop.vtable[(cf[1], cg[1])])

    def hcomp(self, pf, cf, pg, cg):
        key = (cf[1], cg[1])
        if key not in self.vprop.htable:
            raise ArityBoundExceeded("horizontal composite outside arity bound")
        return (cf[0], self.vprop.htable[key])

    def act_in(self, pf, c, s: Permutation):
        return (c[0], self.vprop.in_act[(c[1], s.image)])

    def act_out(self, pf, c, t: Permutation):
        return (c[0], self.vprop.out_act[(c[1], t.image)])


class ThickenedStructure:
    """Homs are 1-truncated chaotic thickenings of a congruence: ops in the
    same class of the same profile are joined by edges both ways.  A q-cell
    is a monotone word of at most two ops; structure maps act pointwise on
    the word."""

    def __init__(self, vprop: FiniteProp, label: dict):
        self.vprop = vprop
        self.label = dict(label)

    @staticmethod
    def _word(cell):
        alpha, x = cell
        if isinstance(x, tuple) and len(x) == 3 and x[0] == "~":
            return tuple(x[1] if a == 0 else x[2] for a in alpha)
        return tuple(x for _ in alpha)

    @staticmethod
    def _cell(word):
        core = [word[0]]
        alpha = [0]
        for w in word[1:]:
            if w != core[-1]:
                core.append(w)
            alpha.append(len(core) - 1)
        if len(core) == 1:
            return (tuple(alpha), core[0])
        if len(core) == 2:
            return (tuple(alpha), ("~", core[0], core[1]))
        raise ArityBoundExceeded(
            "cell outside the 1-truncated thickening (raise the dim bound)"
        )

    def id_cell(self, word, q):
        return ((0,) * (q + 1), self.vprop.identities[tuple(word)])

    def vcomp(self, pf, cf, pg, cg):
        return self._cell(tuple(
            self.vprop.vtable[(a, b)]
            for a, b in zip(self._word(cf), self._word(cg))
        ))

    def hcomp(self, pf, cf, pg, cg):
        try:
            return self._cell(tuple(
                self.vprop.htable[(a, b)]
                for a, b in zip(self._word(cf), self._word(cg))
            ))
        except KeyError:
            raise ArityBoundExceeded(
                "horizontal composite outside arity bound"
            ) from None

    def act_in(self, pf, c, s: Permutation):
        return self._cell(tuple(
            self.vprop.in_act[(a, s.image)] for a in self._word(c)
        ))

    def act_out(self, pf, c, t: Permutation):
        return self._cell(tuple(
            self.vprop.out_act[(a, t.image)] for a in self._word(c)
        ))


class CorollaStructure:
    """Structure rule for the free prop on one generator with each vertex
    decorated by a cell of a fixed simplicial set X.  A nondegenerate
    q-simplex of a hom is (diagram certificate, jointly nondegenerate tuple
    of q-cells of X indexed by the diagram's canonical vertices)."""

    def __init__(self, X: FiniteSimplicialSet, rep_by_cert: dict,
                 profile_of_cert: dict):
        self.X = X
        self.rep_by_cert = rep_by_cert
        self.profile_of_cert = profile_of_cert

    def _expand(self, cell):
        """A cell as (certificate, per-vertex tuple of equal-dim X-cells)."""
        alpha, (cert, core) = cell
        return cert, tuple(
            self.X.normalize(_compose(beta, alpha), x) for beta, x in core
        )

    def _cell(self, cert, cells, q):
        if cert not in self.rep_by_cert:
            raise ArityBoundExceeded(
                "composite diagram outside the enumerated size bound"
            )
        s, core = joint_normalize(cells, q)
        return (s, (cert, core))

    def _binary(self, cf, cg, combine, f_shifted_after_g: bool):
        q = len(cf[0]) - 1
        cert_f, tf = self._expand(cf)
        cert_g, tg = self._expand(cg)
        Df = self.rep_by_cert[cert_f]
        Dg = self.rep_by_cert[cert_g]
        comp = combine(Df, Dg)
        _, cert, relab = canonical_form(comp)
        if f_shifted_after_g:
            shift = (max(Dg.vertices) + 1) if Dg.vertices else 0
            decor = {relab[v]: tg[v] for v in Dg.vertices}
            decor.update({relab[v + shift]: tf[v] for v in Df.vertices})
        else:
            shift = (max(Df.vertices) + 1) if Df.vertices else 0
            decor = {relab[v]: tf[v] for v in Df.vertices}
            decor.update({relab[v + shift]: tg[v] for v in Dg.vertices})
        cells = tuple(decor[i] for i in range(len(decor)))
        return self._cell(cert, cells, q)

    def id_cell(self, word, q):
        _, cert, _ = canonical_form(identity_diagram(list(word)))
        if cert not in self.rep_by_cert:
            raise ArityBoundExceeded("identity profile outside arity bound")
        return ((0,) * (q + 1), (cert, ()))

    def vcomp(self, pf, cf, pg, cg):
        return self._binary(cf, cg, compose_vertical, True)

    def hcomp(self, pf, cf, pg, cg):
        return self._binary(cf, cg, compose_horizontal, False)

    def _unary(self, c, transform):
        q = len(c[0]) - 1
        cert0, t = self._expand(c)
        D = self.rep_by_cert[cert0]
        _, cert, relab = canonical_form(transform(D))
        decor = {relab[v]: t[v] for v in D.vertices}
        cells = tuple(decor[i] for i in range(len(decor)))
        return self._cell(cert, cells, q)

    def act_in(self, pf, c, s: Permutation):
        return self._unary(c, lambda D: act_input(s, D))

    def act_out(self, pf, c, t: Permutation):
        return self._unary(c, lambda D: act_output(t, D))


# -- the enriched prop -------------------------------------------------------


@dataclass
class SimplicialFiniteProp:
    vprop: FiniteProp
    homs: dict[Profile, FiniteSimplicialSet]
    structure: object

    @property
    def colors(self):
        return self.vprop.colors

    @property
    def arity_bound(self):
        return self.vprop.arity_bound

    def hom(self, prof: Profile) -> FiniteSimplicialSet:
        return self.homs.get(prof) or FiniteSimplicialSet({}, {})

    def violations(self, deep=True, dim_bound=1) -> list[str]:
        out = list(self.vprop.violations(deep))
        if set(self.homs) != set(self.vprop.ops):
            out.append("hom objects and vertex profiles disagree")
            return out
        for prof, hom in self.homs.items():
            out.extend(f"hom {prof}: {e}" for e in hom.violations())
            if set(hom.nondeg(0)) != set(self.vprop.ops[prof]):
                out.append(f"hom {prof}: vertices differ from the table ops")
        if out:
            return out
        # vertex-level agreement between the cell rule and the tables
        for (f, g), h in self.vprop.vtable.items():
            pf = self.vprop.profile_of[f]
            pg = self.vprop.profile_of[g]
            if self.structure.vcomp(pf, ((0,), f), pg, ((0,), g)) != ((0,), h):
                out.append(f"cell rule disagrees with vcomp on ({f!r},{g!r})")
        for (f, s), h in self.vprop.in_act.items():
            pf = self.vprop.profile_of[f]
            if self.structure.act_in(pf, ((0,), f), Permutation(s)) != ((0,), h):
                out.append(f"cell rule disagrees with input action on {f!r}")
        if out or not deep:
            return out
        out.extend(self._check_cells(dim_bound))
        return out

    def _check_cells(self, dim_bound) -> list[str]:
        """Face-compatibility of the structure maps on cells of positive
        dimension, up to dim_bound."""
        out = []
        profs = list(self.homs)
        for q in range(1, dim_bound + 1):
            cells = {p: self.homs[p].cells(q) for p in profs}
            for pf in profs:
                for pg in profs:
                    if pg.outputs != pf.inputs:
                        continue
                    tprof = Profile(pg.inputs, pf.outputs)
                    for cf in cells[pf]:
                        for cg in cells[pg]:
                            try:
                                r = self.structure.vcomp(pf, cf, pg, cg)
                            except ArityBoundExceeded:
                                continue
                            if r[1] not in self.hom(tprof).dim_of:
                                out.append(
                                    f"composite cell escapes hom {tprof}"
                                )
                                continue
                            for i in range(q + 1):
                                want = self.hom(tprof).face(r, i)
                                got = self.structure.vcomp(
                                    pf, self.homs[pf].face(cf, i),
                                    pg, self.homs[pg].face(cg, i),
                                )
                                if want != got:
                                    out.append(
                                        "composition does not commute with "
                                        f"face {i} at {tprof}"
                                    )
            for prof in profs:
                n = len(prof.inputs)
                for c in cells[prof]:
                    for s in all_permutations(n):
                        try:
                            r = self.structure.act_in(prof, c, s)
                        except ArityBoundExceeded:
                            continue
                        sprof = Profile(
                            tuple(s.inverse().apply(prof.inputs)), prof.outputs
                        )
                        for i in range(q + 1):
                            if self.hom(sprof).face(r, i) != \
                                    self.structure.act_in(
                                        prof, self.homs[prof].face(c, i), s):
                                out.append(
                                    f"input action breaks face {i} at {prof}"
                                )
        return out

    def check(self, deep=True, dim_bound=1) -> "SimplicialFiniteProp":
        errs = self.violations(deep, dim_bound)
        if errs:
            raise ValueError("; ".join(errs[:10]))
        return self


def discrete_sprop(T: FiniteProp) -> SimplicialFiniteProp:
    homs = {
        prof: FiniteSimplicialSet({0: tuple(vals)}, {})
        for prof, vals in T.ops.items()
    }
    return SimplicialFiniteProp(T, homs, DiscreteStructure(T))


def kernel_labels(f: FinitePropMap) -> dict:
    """The congruence identifying ops with equal image."""
    return {op: f.op_map[op] for op in f.src.all_ops()}


def congruence_violations(T: FiniteProp, label: dict) -> list[str]:
    out = []
    by_class: dict = {}
    for op in T.all_ops():
        by_class.setdefault((T.profile_of[op], label[op]), []).append(op)
    classes = list(by_class.values())
    for c1 in classes:
        for c2 in classes:
            pf = T.profile_of[c1[0]]
            pg = T.profile_of[c2[0]]
            if pg.outputs == pf.inputs:
                vals = {label[T.vtable[(f, g)]] for f in c1 for g in c2}
                if len(vals) > 1:
                    out.append(f"congruence broken by vcomp at {pf},{pg}")
            if (c1[0], c2[0]) in T.htable:
                vals = {label[T.htable[(f, g)]] for f in c1 for g in c2
                        if (f, g) in T.htable}
                if len(vals) > 1:
                    out.append(f"congruence broken by hcomp at {pf},{pg}")
    for c1 in classes:
        pf = T.profile_of[c1[0]]
        for s in all_permutations(len(pf.inputs)):
            if len({label[T.in_act[(f, s.image)]] for f in c1}) > 1:
                out.append(f"congruence broken by input action at {pf}")
        for t in all_permutations(len(pf.outputs)):
            if len({label[T.out_act[(f, t.image)]] for f in c1}) > 1:
                out.append(f"congruence broken by output action at {pf}")
    return out


def congruence_thickened_sprop(T: FiniteProp, label: dict) -> SimplicialFiniteProp:
    """Join ops with the same label by edges (both directions)."""
    errs = congruence_violations(T, label)
    if errs:
        raise ValueError("; ".join(errs[:5]))
    homs = {}
    for prof, vals in T.ops.items():
        edges = [
            ("~", u, v)
            for u in vals for v in vals
            if u != v and label[u] == label[v]
        ]
        simplices = {0: tuple(vals)}
        faces = {}
        if edges:
            simplices[1] = tuple(edges)
            for e in edges:
                faces[e] = (((0,), e[2]), ((0,), e[1]))
        homs[prof] = FiniteSimplicialSet(simplices, faces)
    return SimplicialFiniteProp(T, homs, ThickenedStructure(T, label))


# -- the corolla prop G_{n,m}[X] --------------------------------------------


def corolla_prop(n: int, m: int, X: FiniteSimplicialSet, arity_bound=None,
                 size_bound=None, deep_check=True) -> SimplicialFiniteProp:
    """The free prop on one (n;m) generator over n+m distinct colors, with
    each diagram vertex decorated by X; a k-vertex diagram class contributes
    a copy of X^k to its hom object."""
    if n < 0 or m < 0 or n + m == 0:
        raise ValueError("corolla needs n + m >= 1")
    if not X.nondeg(0):
        raise ValueError("decorating object must be nonempty")
    colors = tuple(f"a{i + 1}" for i in range(n)) + \
        tuple(f"b{j + 1}" for j in range(m))
    gen_profile = Profile(colors[:n], colors[n:])
    mega = make_megagraph(colors, [("g", gen_profile)])
    arity_bound = arity_bound if arity_bound is not None else max(n, m, 1)
    size_bound = size_bound if size_bound is not None else arity_bound

    rep_by_cert = {}
    profile_of_cert = {}
    certs_by_profile = {}
    for p in range(arity_bound + 1):
        for q in range(arity_bound + 1):
            for ins in itertools.product(colors, repeat=p):
                for outs in itertools.product(colors, repeat=q):
                    prof = Profile(ins, outs)
                    reps = enumerate_diagrams(mega, prof, size_bound)
                    if not reps:
                        continue
                    certs_by_profile[prof] = []
                    for d in reps:
                        canon, cert, _ = canonical_form(d)
                        rep_by_cert[cert] = canon
                        profile_of_cert[cert] = prof
                        certs_by_profile[prof].append(cert)

    xdim = max(X.dimension, 0)
    homs = {}
    for prof, certs in certs_by_profile.items():
        simplices: dict[int, list] = {}
        faces = {}
        for cert in certs:
            k = rep_by_cert[cert].n_vertices
            top = xdim * k if k else 0
            for d in range(top + 1):
                xcells = X.cells(d)
                for combo in itertools.product(xcells, repeat=k):
                    s, core = joint_normalize(combo, d)
                    if len(s) != len(set(s)):
                        continue   # jointly degenerate
                    name = (cert, combo)
                    simplices.setdefault(d, []).append(name)
                    if d > 0:
                        fs = []
                        for i in range(d + 1):
                            fcells = tuple(X.face(c, i) for c in combo)
                            fs.append(_corolla_face(cert, fcells, d - 1))
                        faces[name] = tuple(fs)
        homs[prof] = FiniteSimplicialSet(
            {d: tuple(xs) for d, xs in simplices.items()}, faces
        )

    structure = CorollaStructure(X, rep_by_cert, profile_of_cert)
    vprop = tabulate_prop(
        colors, arity_bound,
        elements=lambda prof: homs[prof].nondeg(0) if prof in homs else (),
        vcomp=lambda f, g: structure.vcomp(
            profile_of_cert[f[0]], ((0,), f),
            profile_of_cert[g[0]], ((0,), g))[1],
        hcomp=lambda f, g: structure.hcomp(
            profile_of_cert[f[0]], ((0,), f),
            profile_of_cert[g[0]], ((0,), g))[1],
        identity_of=lambda w: structure.id_cell(w, 0)[1],
        act_in=lambda f, s: structure.act_in(
            profile_of_cert[f[0]], ((0,), f), s)[1],
        act_out=lambda f, t: structure.act_out(
            profile_of_cert[f[0]], ((0,), f), t)[1],
        deep_check=deep_check,
    )
    G = SimplicialFiniteProp(vprop, homs, structure)
    G.gen_profile = gen_profile
    G.X = X
    _, G.gen_cert, _ = canonical_form(generator_diagram(mega, "g"))
    G.rep_by_cert = rep_by_cert
    return G


def _corolla_face(cert, fcells, d):
    s, core = joint_normalize(fcells, d)
    return (s, (cert, core))


# -- maps of enriched props --------------------------------------------------


@dataclass
class SPropMap:
    src: SimplicialFiniteProp
    dst: SimplicialFiniteProp
    color_map: dict
    hom_maps: dict[Profile, SSetMap]

    def image_profile(self, prof: Profile) -> Profile:
        return Profile(
            tuple(self.color_map[c] for c in prof.inputs),
            tuple(self.color_map[c] for c in prof.outputs),
        )

    def vertex_map(self) -> FinitePropMap:
        op_map = {}
        for prof, hmap in self.hom_maps.items():
            for v in self.src.homs[prof].nondeg(0):
                op_map[v] = hmap.mapping[v][1]
        return FinitePropMap(self.src.vprop, self.dst.vprop,
                             dict(self.color_map), op_map)

    def violations(self, dim_bound=1) -> list[str]:
        out = []
        for prof in self.src.homs:
            hmap = self.hom_maps.get(prof)
            if hmap is None:
                out.append(f"no hom map at {prof}")
                continue
            iprof = self.image_profile(prof)
            if iprof not in self.dst.homs:
                out.append(f"target has no operations at {iprof}")
                continue
            out.extend(f"hom map {prof}: {e}" for e in hmap.violations())
        if out:
            return out
        out.extend(self.vertex_map().violations())
        if out:
            return out
        # structure preservation on positive-dimensional cells
        profs = list(self.src.homs)
        for q in range(1, dim_bound + 1):
            cells = {p: self.src.homs[p].cells(q) for p in profs}
            for pf in profs:
                for pg in profs:
                    if pg.outputs != pf.inputs:
                        continue
                    tprof = Profile(pg.inputs, pf.outputs)
                    for cf in cells[pf]:
                        for cg in cells[pg]:
                            try:
                                r = self.src.structure.vcomp(pf, cf, pg, cg)
                                r2 = self.dst.structure.vcomp(
                                    self.image_profile(pf),
                                    self.hom_maps[pf].cell_image(cf),
                                    self.image_profile(pg),
                                    self.hom_maps[pg].cell_image(cg),
                                )
                            except ArityBoundExceeded:
                                continue
                            if self.hom_maps[tprof].cell_image(r) != r2:
                                out.append(
                                    f"composition of cells not preserved at {tprof}"
                                )
        return out

    def check(self, dim_bound=1) -> "SPropMap":
        errs = self.violations(dim_bound)
        if errs:
            raise ValueError("; ".join(errs[:10]))
        return self


def identity_sprop_map(T: SimplicialFiniteProp) -> SPropMap:
    return SPropMap(
        T, T, {c: c for c in T.colors},
        {prof: SSetMap(hom, hom, {x: hom.cell_of(x) for x in hom.dim_of})
         for prof, hom in T.homs.items()},
    )


def compose_sprop_maps(g: SPropMap, f: SPropMap) -> SPropMap:
    hom_maps = {}
    for prof, fm in f.hom_maps.items():
        gm = g.hom_maps[f.image_profile(prof)]
        hom_maps[prof] = SSetMap(
            fm.src, gm.dst, {x: gm.cell_image(c) for x, c in fm.mapping.items()}
        )
    return SPropMap(
        f.src, g.dst,
        {c: g.color_map[d] for c, d in f.color_map.items()},
        hom_maps,
    )


def discrete_sprop_map(f: FinitePropMap) -> SPropMap:
    S, T = discrete_sprop(f.src), discrete_sprop(f.dst)
    hom_maps = {}
    for prof, hom in S.homs.items():
        iprof = Profile(
            tuple(f.color_map[c] for c in prof.inputs),
            tuple(f.color_map[c] for c in prof.outputs),
        )
        hom_maps[prof] = SSetMap(
            hom, T.homs[iprof],
            {v: ((0,), f.op_map[v]) for v in hom.nondeg(0)},
        )
    return SPropMap(S, T, dict(f.color_map), hom_maps)


# -- the hom characterization for corolla props ------------------------------


class CellTarget(Target):
    """Evaluate a wiring diagram whose vertices are decorated with q-cells
    of a simplicial prop's homs; values are (profile, cell) pairs."""

    def __init__(self, T: SimplicialFiniteProp, q: int, color_map,
                 vertex_cells):
        self.T = T
        self.q = q
        self.cmap = dict(color_map)
        self.vertex_cells = dict(vertex_cells)

    def color_of(self, c):
        return self.cmap.get(c, c)

    def id_value(self, colors):
        w = tuple(colors)
        return (Profile(w, w), self.T.structure.id_cell(w, self.q))

    def gen_value(self, name, profile):
        return self.vertex_cells[name]

    def perm_value(self, perm, colors):
        w = tuple(colors)
        prof, ident = self.id_value(w)
        inv = perm.inverse()
        return (
            Profile(w, tuple(inv.apply(w))),
            self.T.structure.act_out(prof, ident, inv),
        )

    def vcomp(self, f, g):
        (pf, cf), (pg, cg) = f, g
        return (Profile(pg.inputs, pf.outputs),
                self.T.structure.vcomp(pf, cf, pg, cg))

    def hcomp(self, f, g):
        (pf, cf), (pg, cg) = f, g
        return (Profile(pf.inputs + pg.inputs, pf.outputs + pg.outputs),
                self.T.structure.hcomp(pf, cf, pg, cg))


def _decorated(D: WiringDiagram, gen_profile: Profile) -> WiringDiagram:
    """Give each vertex its own generator name so evaluation can decorate
    vertices independently."""
    return WiringDiagram(
        D.inputs, D.outputs,
        {v: f"g@{v}" for v in D.vertices},
        D.edges,
        {f"g@{v}": gen_profile for v in D.vertices},
    )


def decode_prop_map(G: SimplicialFiniteProp, T: SimplicialFiniteProp,
                    kappa: dict, phi: SSetMap) -> SPropMap:
    """The prop map G_{n,m}[X] -> T determined by a boundary color
    assignment and a simplicial map X -> T(assigned profile)."""
    genprof = G.gen_profile
    igen = Profile(
        tuple(kappa[c] for c in genprof.inputs),
        tuple(kappa[c] for c in genprof.outputs),
    )
    if phi.dst is not T.homs.get(igen) and \
            phi.dst.dim_of != T.hom(igen).dim_of:
        raise ValueError("simplicial map does not land in the assigned hom")
    hom_maps = {}
    for prof, hom in G.homs.items():
        iprof = Profile(
            tuple(kappa[c] for c in prof.inputs),
            tuple(kappa[c] for c in prof.outputs),
        )
        dst_hom = T.homs.get(iprof)
        if dst_hom is None:
            raise ValueError(f"target has no operations at {iprof}")
        mapping = {}
        for d, names in hom.simplices.items():
            for name in names:
                cert, combo = name
                D = G.rep_by_cert[cert]
                dd = _decorated(D, genprof)
                cells = {
                    f"g@{v}": (igen, phi.cell_image(combo[v]))
                    for v in D.vertices
                }
                prof_out, cell = evaluate(
                    dd, CellTarget(T, d, kappa, cells)
                )
                if prof_out != iprof:
                    raise ValueError("profile mismatch during decoding")
                mapping[name] = cell
        hom_maps[prof] = SSetMap(hom, dst_hom, mapping)
    return SPropMap(G, T, dict(kappa), hom_maps)


def encode_prop_map(f: SPropMap):
    """The (color assignment, simplicial map) pair underlying a prop map out
    of a corolla prop."""
    G = f.src
    kappa = dict(f.color_map)
    hmap = f.hom_maps[G.gen_profile]
    mapping = {
        x: hmap.mapping[(G.gen_cert, (G.X.cell_of(x),))]
        for x in G.X.dim_of
    }
    return kappa, SSetMap(G.X, hmap.dst, mapping)


# -- path components ---------------------------------------------------------


def _pi0_with_classes(T: SimplicialFiniteProp):
    class_of = {}
    morphisms = []
    identities = {}
    for c in T.colors:
        for d in T.colors:
            prof = Profile((c,), (d,))
            hom = T.homs.get(prof)
            if hom is None:
                continue
            comp = pi0_sset(hom)
            reps = sorted(set(comp.values()), key=repr)
            for v, r in comp.items():
                class_of[v] = r
            for r in reps:
                morphisms.append((r, c, d))
        identities[c] = class_of[T.vprop.identities[(c,)]]
    compose = {}
    for g, c1, d1 in morphisms:
        for f, c0, d0 in morphisms:
            if d0 != c1:
                continue
            compose[(g, f)] = class_of[T.vprop.vtable[(g, f)]]
            # representative independence
            pf = Profile((c1,), (d1,))
            pg = Profile((c0,), (d0,))
            for u in T.vprop.ops[pf]:
                if class_of[u] != g:
                    continue
                for v in T.vprop.ops[pg]:
                    if class_of[v] != f:
                        continue
                    if class_of[T.vprop.vtable[(u, v)]] != compose[(g, f)]:
                        raise ValueError(
                            "path-component composition is not well defined"
                        )
    cat = FiniteCategory(
        tuple(T.colors), tuple(morphisms), identities, compose
    ).check()
    return cat, class_of


def pi0_prop(T: SimplicialFiniteProp) -> FiniteCategory:
    return _pi0_with_classes(T)[0]


def pi0_functor(f: SPropMap) -> Functor:
    src_cat, src_cls = _pi0_with_classes(f.src)
    dst_cat, dst_cls = _pi0_with_classes(f.dst)
    mor_map = {}
    for r, c, d in src_cat.morphisms:
        prof = Profile((c,), (d,))
        image_vertex = f.hom_maps[prof].mapping[r][1]
        mor_map[r] = dst_cls[image_vertex]
    return Functor(src_cat, dst_cat, dict(f.color_map), mor_map).check()


# -- classification and lifting ----------------------------------------------


W1_QUALIFIER = ("necessary condition only: path components plus bounded "
                "homology; not a proof of weak equivalence")
A2_NOTE = ("the countable interval-object generators are replaced by the "
           "equivalent direct isofibration check on path components")


def classify_prop_map(f: SPropMap, n_max: int = 2) -> dict:
    f1 = {"bound": n_max, "ok": True, "failures": []}
    w1 = {"bound": n_max, "ok": True, "qualifier": W1_QUALIFIER,
          "failures": []}
    for prof in sorted(f.src.homs, key=repr):
        hmap = f.hom_maps[prof]
        rep = fibration_up_to(hmap, n_max)
        if not rep["ok"]:
            f1["ok"] = False
            f1["failures"].append((str(prof), rep["failures"]))
        src_comp = pi0_sset(hmap.src)
        dst_comp = pi0_sset(hmap.dst)
        induced = {
            src_comp[v]: dst_comp[hmap.mapping[v][1]]
            for v in hmap.src.vertices()
        }
        bijective = (
            len(set(induced.values())) == len(set(induced)) and
            set(induced.values()) == set(dst_comp.values())
        )
        if not bijective or \
                homology_up_to(hmap.src, n_max) != homology_up_to(hmap.dst, n_max):
            w1["ok"] = False
            w1["failures"].append(str(prof))
    F = pi0_functor(f)
    return {
        "F1": f1,
        "F2": is_isofibration(F),
        "W1_necessary": w1,
        "W2": is_equivalence(F),
    }


def rlp_against_generators(f: SPropMap, which_set: str,
                           ell_max: int = 1) -> dict:
    """RLP of f against the boundary-type (I) or horn-type (J) generating
    maps, reduced hom-wise to simplicial lifting."""
    if which_set not in ("I", "J"):
        raise ValueError("which_set must be 'I' or 'J'")
    report = {"set": which_set, "bound": ell_max, "ok": True, "failures": [],
              "note": "prop lifting reduced to hom-wise simplicial lifting"}
    if which_set == "I":
        tests = [boundary_inclusion(ell) for ell in range(ell_max + 1)]
    else:
        tests = [horn_inclusion(ell, k)
                 for ell in range(1, ell_max + 1) for k in range(ell + 1)]
    for prof in sorted(f.src.homs, key=repr):
        hmap = f.hom_maps[prof]
        for i in tests:
            if not has_rlp(hmap, i):
                report["ok"] = False
                report["failures"].append(
                    (str(prof), i.dst.dimension,
                     "boundary" if which_set == "I" else "horn")
                )
    if which_set == "I":
        surj = set(f.color_map.values()) >= set(f.dst.colors)
        report["color_surjectivity"] = surj
        report["ok"] = report["ok"] and surj
    else:
        iso = is_isofibration(pi0_functor(f))
        report["isofibration_on_components"] = iso
        report["note"] += "; " + A2_NOTE
        report["ok"] = report["ok"] and iso
    return report
