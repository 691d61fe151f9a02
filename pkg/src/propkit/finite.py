"""Finite categories and table-based finite props.

Finite props carry explicit hom sets per profile up to an arity bound and
explicit tables for both compositions, both symmetric-group actions, and
identities.  Construction validates every axiom exhaustively up to the
bound, so these serve as trustworthy targets for universal-property checks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from .colors import Profile
from .diagrams import WiringDiagram, canonical_form, certificate
from .interp import Target
from .perms import Permutation, all_permutations, block_sum, identity_perm


# -- finite categories ------------------------------------------------------


@dataclass
class FiniteCategory:
    objects: tuple[str, ...]
    morphisms: tuple[tuple[str, str, str], ...]   # (name, src, dst)
    identities: dict[str, str]                    # object -> identity name
    compose: dict[tuple[str, str], str]           # (g, f) -> g.f  (g after f)

    def __post_init__(self):
        self._end = {name: (s, t) for name, s, t in self.morphisms}

    def src(self, m: str) -> str:
        return self._end[m][0]

    def dst(self, m: str) -> str:
        return self._end[m][1]

    def hom(self, a: str, b: str) -> list[str]:
        return [n for n, s, t in self.morphisms if s == a and t == b]

    def is_identity(self, m: str) -> bool:
        return self.identities.get(self.src(m)) == m

    def violations(self) -> list[str]:
        out = []
        names = [n for n, _, _ in self.morphisms]
        if len(set(names)) != len(names):
            out.append("duplicate morphism names")
        for x in self.objects:
            i = self.identities.get(x)
            if i is None or i not in self._end:
                out.append(f"missing identity for {x}")
            elif self._end[i] != (x, x):
                out.append(f"identity of {x} has wrong endpoints")
        for g, s1, t1 in self.morphisms:
            for f, s0, t0 in self.morphisms:
                if t0 != s1:
                    if (g, f) in self.compose:
                        out.append(f"compose defined on non-composable ({g},{f})")
                    continue
                h = self.compose.get((g, f))
                if h is None:
                    out.append(f"compose missing on ({g},{f})")
                elif self._end[h] != (s0, t1):
                    out.append(f"compose ({g},{f}) has wrong endpoints")
        if out:
            return out
        for f, s0, t0 in self.morphisms:
            if self.compose[(self.identities[t0], f)] != f:
                out.append(f"left unit fails on {f}")
            if self.compose[(f, self.identities[s0])] != f:
                out.append(f"right unit fails on {f}")
        for h, _, _ in self.morphisms:
            for g, _, _ in self.morphisms:
                if self.dst(g) != self.src(h):
                    continue
                for f, _, _ in self.morphisms:
                    if self.dst(f) != self.src(g):
                        continue
                    if self.compose[(h, self.compose[(g, f)])] != \
                            self.compose[(self.compose[(h, g)], f)]:
                        out.append(f"associativity fails on ({h},{g},{f})")
        return out

    def check(self) -> "FiniteCategory":
        errs = self.violations()
        if errs:
            raise ValueError("; ".join(errs))
        return self

    def inverse_of(self, m: str) -> Optional[str]:
        a, b = self._end[m]
        for n in self.hom(b, a):
            if self.compose[(n, m)] == self.identities[a] and \
                    self.compose[(m, n)] == self.identities[b]:
                return n
        return None

    def is_iso(self, m: str) -> bool:
        return self.inverse_of(m) is not None

    def isos_from(self, a: str) -> list[str]:
        return [n for n, s, _ in self.morphisms if s == a and self.is_iso(n)]


def discrete_category(objects) -> FiniteCategory:
    objects = tuple(objects)
    return FiniteCategory(
        objects,
        tuple((f"id_{x}", x, x) for x in objects),
        {x: f"id_{x}" for x in objects},
        {(f"id_{x}", f"id_{x}"): f"id_{x}" for x in objects},
    ).check()


def arrow_category() -> FiniteCategory:
    """The free-living arrow 0 -> 1."""
    return FiniteCategory(
        ("0", "1"),
        (("id_0", "0", "0"), ("id_1", "1", "1"), ("f", "0", "1")),
        {"0": "id_0", "1": "id_1"},
        {
            ("id_0", "id_0"): "id_0",
            ("id_1", "id_1"): "id_1",
            ("f", "id_0"): "f",
            ("id_1", "f"): "f",
        },
    ).check()


def iso_pair_category() -> FiniteCategory:
    """The free-living isomorphism: two objects, inverse arrows a, b."""
    return FiniteCategory(
        ("x", "y"),
        (("id_x", "x", "x"), ("id_y", "y", "y"), ("a", "x", "y"), ("b", "y", "x")),
        {"x": "id_x", "y": "id_y"},
        {
            ("id_x", "id_x"): "id_x",
            ("id_y", "id_y"): "id_y",
            ("a", "id_x"): "a",
            ("id_y", "a"): "a",
            ("b", "id_y"): "b",
            ("id_x", "b"): "b",
            ("b", "a"): "id_x",
            ("a", "b"): "id_y",
        },
    ).check()


def cyclic_group_category(n: int) -> FiniteCategory:
    """One object with automorphism group Z/n."""
    names = [f"g{k}" for k in range(n)]
    return FiniteCategory(
        ("*",),
        tuple((g, "*", "*") for g in names),
        {"*": "g0"},
        {(f"g{i}", f"g{j}"): f"g{(i + j) % n}" for i in range(n) for j in range(n)},
    ).check()


@dataclass
class Functor:
    src: FiniteCategory
    dst: FiniteCategory
    obj_map: dict[str, str]
    mor_map: dict[str, str]

    def violations(self) -> list[str]:
        out = []
        for x in self.src.objects:
            if x not in self.obj_map or self.obj_map[x] not in self.dst.objects:
                out.append(f"object {x} not mapped into target")
        for m, a, b in self.src.morphisms:
            im = self.mor_map.get(m)
            if im is None or im not in self.dst._end:
                out.append(f"morphism {m} not mapped")
                continue
            if self.dst._end[im] != (self.obj_map[a], self.obj_map[b]):
                out.append(f"morphism {m}: endpoints not preserved")
        if out:
            return out
        for x in self.src.objects:
            if self.mor_map[self.src.identities[x]] != \
                    self.dst.identities[self.obj_map[x]]:
                out.append(f"identity of {x} not preserved")
        for (g, f), h in self.src.compose.items():
            if self.dst.compose[(self.mor_map[g], self.mor_map[f])] != self.mor_map[h]:
                out.append(f"composition ({g},{f}) not preserved")
        return out

    def check(self) -> "Functor":
        errs = self.violations()
        if errs:
            raise ValueError("; ".join(errs))
        return self


def identity_functor(C: FiniteCategory) -> Functor:
    return Functor(C, C, {x: x for x in C.objects}, {n: n for n, _, _ in C.morphisms})


def is_isofibration(F: Functor) -> bool:
    """Every isomorphism out of an image object lifts to an isomorphism."""
    for c in F.src.objects:
        fc = F.obj_map[c]
        for phi in F.dst.isos_from(fc):
            if not any(
                F.mor_map[psi] == phi for psi in F.src.isos_from(c)
            ):
                return False
    return True


def is_fully_faithful(F: Functor) -> bool:
    for a in F.src.objects:
        for b in F.src.objects:
            images = [F.mor_map[m] for m in F.src.hom(a, b)]
            target = F.dst.hom(F.obj_map[a], F.obj_map[b])
            if len(set(images)) != len(images) or set(images) != set(target):
                return False
    return True


def is_essentially_surjective(F: Functor) -> bool:
    hit = set()
    for x in F.src.objects:
        fx = F.obj_map[x]
        hit.add(fx)
        for m in F.dst.isos_from(fx):
            hit.add(F.dst.dst(m))
    return hit >= set(F.dst.objects)


def is_equivalence(F: Functor) -> bool:
    return is_fully_faithful(F) and is_essentially_surjective(F)


def enumerate_functors(C: FiniteCategory, D: FiniteCategory) -> list[Functor]:
    """All functors C -> D (exhaustive; keep both categories small)."""
    out = []
    for objs in itertools.product(D.objects, repeat=len(C.objects)):
        obj_map = dict(zip(C.objects, objs))
        choices = []
        for m, a, b in C.morphisms:
            cand = D.hom(obj_map[a], obj_map[b])
            if C.is_identity(m):
                cand = [D.identities[obj_map[a]]]
            choices.append([(m, x) for x in cand])
        for pick in itertools.product(*choices):
            F = Functor(C, D, obj_map, dict(pick))
            if not F.violations():
                out.append(F)
    return out


# -- finite props -----------------------------------------------------------


@dataclass
class FiniteProp:
    """A prop given by explicit tables up to an arity bound.

    Ops are arbitrary hashable values, globally distinct across profiles.
    vtable[(f, g)] is f after g; htable[(f, g)] is f beside g (f first).
    in_act[(f, sigma)] routes input wire j to slot sigma(j); out_act[(f,
    tau)] fills output position k from wire tau(k).  Tables are total within
    the arity bound and partial outside it.
    """

    colors: tuple[str, ...]
    arity_bound: int
    ops: dict[Profile, tuple]
    identities: dict[tuple, object]
    vtable: dict
    htable: dict
    in_act: dict
    out_act: dict

    def __post_init__(self):
        self.profile_of = {}
        for prof, vals in self.ops.items():
            for v in vals:
                if v in self.profile_of:
                    raise ValueError(f"op {v!r} appears in two profiles")
                self.profile_of[v] = prof

    def profiles(self):
        return sorted(self.ops, key=lambda p: (p.inputs, p.outputs))

    def all_ops(self):
        for prof in self.profiles():
            yield from self.ops[prof]

    def within_bound(self, prof: Profile) -> bool:
        return len(prof.inputs) <= self.arity_bound and \
            len(prof.outputs) <= self.arity_bound

    # -- axiom checking ----------------------------------------------------

    def violations(self, deep: bool = True) -> list[str]:
        out = []
        out.extend(self._check_shapes())
        if out or not deep:
            return out
        out.extend(self._check_units())
        out.extend(self._check_actions())
        out.extend(self._check_assoc_interchange())
        out.extend(self._check_equivariance())
        return out

    def _words(self):
        for n in range(self.arity_bound + 1):
            yield from itertools.product(self.colors, repeat=n)

    def _check_shapes(self):
        out = []
        for w in self._words():
            i = self.identities.get(tuple(w))
            if i is None:
                out.append(f"missing identity for word {w}")
            elif self.profile_of.get(i) != Profile(tuple(w), tuple(w)):
                out.append(f"identity for {w} has wrong profile")
        for f in self.all_ops():
            pf = self.profile_of[f]
            for g in self.all_ops():
                pg = self.profile_of[g]
                if pg.outputs == pf.inputs:
                    h = self.vtable.get((f, g))
                    if h is None:
                        out.append(f"vcomp missing on ({f!r},{g!r})")
                    elif self.profile_of.get(h) != Profile(pg.inputs, pf.outputs):
                        out.append(f"vcomp ({f!r},{g!r}) has wrong profile")
                hp = Profile(pf.inputs + pg.inputs, pf.outputs + pg.outputs)
                if self.within_bound(hp):
                    h = self.htable.get((f, g))
                    if h is None:
                        out.append(f"hcomp missing on ({f!r},{g!r})")
                    elif self.profile_of.get(h) != hp:
                        out.append(f"hcomp ({f!r},{g!r}) has wrong profile")
            for s in all_permutations(len(pf.inputs)):
                h = self.in_act.get((f, s.image))
                if h is None:
                    out.append(f"input action missing on ({f!r},{s.image})")
                elif self.profile_of.get(h) != Profile(
                    tuple(s.inverse().apply(pf.inputs)), pf.outputs
                ):
                    out.append(f"input action ({f!r},{s.image}) wrong profile")
            for t in all_permutations(len(pf.outputs)):
                h = self.out_act.get((f, t.image))
                if h is None:
                    out.append(f"output action missing on ({f!r},{t.image})")
                elif self.profile_of.get(h) != Profile(
                    pf.inputs, tuple(t.apply(pf.outputs))
                ):
                    out.append(f"output action ({f!r},{t.image}) wrong profile")
        return out

    def _check_units(self):
        out = []
        empty = self.identities[()]
        for f in self.all_ops():
            pf = self.profile_of[f]
            if self.vtable[(f, self.identities[pf.inputs])] != f:
                out.append(f"right vertical unit fails on {f!r}")
            if self.vtable[(self.identities[pf.outputs], f)] != f:
                out.append(f"left vertical unit fails on {f!r}")
            if self.htable.get((f, empty)) != f or self.htable.get((empty, f)) != f:
                out.append(f"horizontal unit fails on {f!r}")
        return out

    def _check_actions(self):
        out = []
        for f in self.all_ops():
            pf = self.profile_of[f]
            n, m = len(pf.inputs), len(pf.outputs)
            if self.in_act[(f, identity_perm(n).image)] != f:
                out.append(f"trivial input action moves {f!r}")
            if self.out_act[(f, identity_perm(m).image)] != f:
                out.append(f"trivial output action moves {f!r}")
            for s1 in all_permutations(n):
                for s2 in all_permutations(n):
                    if self.in_act[(self.in_act[(f, s2.image)], s1.image)] != \
                            self.in_act[(f, (s1 * s2).image)]:
                        out.append(f"input action not an action on {f!r}")
            for t1 in all_permutations(m):
                for t2 in all_permutations(m):
                    if self.out_act[(self.out_act[(f, t2.image)], t1.image)] != \
                            self.out_act[(f, (t2 * t1).image)]:
                        out.append(f"output action not an action on {f!r}")
            for s in all_permutations(n):
                for t in all_permutations(m):
                    if self.out_act[(self.in_act[(f, s.image)], t.image)] != \
                            self.in_act[(self.out_act[(f, t.image)], s.image)]:
                        out.append(f"actions do not commute on {f!r}")
        return out

    def _check_assoc_interchange(self):
        out = []
        ops = list(self.all_ops())
        for f in ops:
            for g in ops:
                if self.profile_of[g].outputs != self.profile_of[f].inputs:
                    continue
                for h in ops:
                    if self.profile_of[h].outputs != self.profile_of[g].inputs:
                        continue
                    if self.vtable[(self.vtable[(f, g)], h)] != \
                            self.vtable[(f, self.vtable[(g, h)])]:
                        out.append(f"vertical associativity fails ({f!r},{g!r},{h!r})")
        for f in ops:
            for g in ops:
                fg = self.htable.get((f, g))
                if fg is None:
                    continue
                for h in ops:
                    l = self.htable.get((fg, h))
                    gh = self.htable.get((g, h))
                    r = None if gh is None else self.htable.get((f, gh))
                    if l is not None and r is not None and l != r:
                        out.append(f"horizontal associativity fails ({f!r},{g!r},{h!r})")
        for f in ops:
            for g in ops:
                if self.profile_of[g].outputs != self.profile_of[f].inputs:
                    continue
                for f2 in ops:
                    for g2 in ops:
                        if self.profile_of[g2].outputs != self.profile_of[f2].inputs:
                            continue
                        a = self.htable.get((self.vtable[(f, g)],
                                             self.vtable[(f2, g2)]))
                        ff = self.htable.get((f, f2))
                        gg = self.htable.get((g, g2))
                        if a is None or ff is None or gg is None:
                            continue
                        if self.vtable[(ff, gg)] != a:
                            out.append(
                                f"interchange fails ({f!r},{g!r},{f2!r},{g2!r})"
                            )
        return out

    def _check_equivariance(self):
        out = []
        ops = list(self.all_ops())
        for f in ops:
            pf = self.profile_of[f]
            for g in ops:
                pg = self.profile_of[g]
                if pg.outputs != pf.inputs:
                    continue
                for s in all_permutations(len(pg.inputs)):
                    if self.in_act[(self.vtable[(f, g)], s.image)] != \
                            self.vtable[(f, self.in_act[(g, s.image)])]:
                        out.append(f"input equivariance fails ({f!r},{g!r})")
                for t in all_permutations(len(pf.outputs)):
                    if self.out_act[(self.vtable[(f, g)], t.image)] != \
                            self.vtable[(self.out_act[(f, t.image)], g)]:
                        out.append(f"output equivariance fails ({f!r},{g!r})")
            for g in ops:
                # middle equivariance: f after (s acting on g's outputs)
                # equals (s acting on f's inputs) after g
                pg = self.profile_of[g]
                if len(pg.outputs) == len(pf.inputs):
                    for s in all_permutations(len(pf.inputs)):
                        if tuple(s.apply(pg.outputs)) != pf.inputs:
                            continue
                        if self.vtable[(self.in_act[(f, s.image)], g)] != \
                                self.vtable[(f, self.out_act[(g, s.image)])]:
                            out.append(f"middle equivariance fails ({f!r},{g!r})")
                fg = self.htable.get((f, g))
                gf = self.htable.get((g, f))
                if fg is None or gf is None:
                    continue
                n, m = len(pf.inputs), len(pf.outputs)
                p, q = len(pg.inputs), len(pg.outputs)
                from .perms import block_transposition

                if self.in_act[
                    (self.out_act[(fg, block_transposition(m, q).image)],
                     block_transposition(p, n).image)
                ] != gf:
                    out.append(f"horizontal swap fails ({f!r},{g!r})")
        return out

    def check(self, deep: bool = True) -> "FiniteProp":
        errs = self.violations(deep)
        if errs:
            raise ValueError("; ".join(errs[:10]))
        return self


def tabulate_prop(colors, arity_bound, elements, vcomp, hcomp, identity_of,
                  act_in, act_out, deep_check=True) -> FiniteProp:
    """Build a FiniteProp from callables and validate it.

    elements(profile) -> iterable of ops; the remaining callables compute
    the structure on ops directly.
    """
    colors = tuple(colors)
    ops = {}
    for n in range(arity_bound + 1):
        for m in range(arity_bound + 1):
            for ins in itertools.product(colors, repeat=n):
                for outs in itertools.product(colors, repeat=m):
                    prof = Profile(ins, outs)
                    vals = tuple(elements(prof))
                    if vals:
                        ops[prof] = vals
    profile_of = {v: p for p, vs in ops.items() for v in vs}
    identities = {}
    for n in range(arity_bound + 1):
        for w in itertools.product(colors, repeat=n):
            identities[w] = identity_of(w)
    vtable, htable, inact, outact = {}, {}, {}, {}
    for f, pf in profile_of.items():
        for g, pg in profile_of.items():
            if pg.outputs == pf.inputs:
                vtable[(f, g)] = vcomp(f, g)
            hp = Profile(pf.inputs + pg.inputs, pf.outputs + pg.outputs)
            if len(hp.inputs) <= arity_bound and len(hp.outputs) <= arity_bound:
                htable[(f, g)] = hcomp(f, g)
        for s in all_permutations(len(pf.inputs)):
            inact[(f, s.image)] = act_in(f, s)
        for t in all_permutations(len(pf.outputs)):
            outact[(f, t.image)] = act_out(f, t)
    return FiniteProp(
        colors, arity_bound, ops, identities, vtable, htable, inact, outact
    ).check(deep_check)


def terminal_prop(colors=("*",), arity_bound=2) -> FiniteProp:
    """One operation in every profile."""
    return tabulate_prop(
        colors, arity_bound,
        elements=lambda prof: [("t", prof)],
        vcomp=lambda f, g: ("t", Profile(g[1].inputs, f[1].outputs)),
        hcomp=lambda f, g: ("t", Profile(f[1].inputs + g[1].inputs,
                                         f[1].outputs + g[1].outputs)),
        identity_of=lambda w: ("t", Profile(w, w)),
        act_in=lambda f, s: ("t", Profile(tuple(s.inverse().apply(f[1].inputs)),
                                          f[1].outputs)),
        act_out=lambda f, t: ("t", Profile(f[1].inputs,
                                           tuple(t.apply(f[1].outputs)))),
    )


def perm_prop_of_category(C: FiniteCategory, arity_bound=2) -> FiniteProp:
    """Ops in profile (a1..an; b1..bn) are pairs (kappa, (m1..mn)) of a
    bijection and morphisms m_i : a_i -> b_{kappa(i)}; empty when n != m."""

    def elements(prof: Profile):
        n, m = len(prof.inputs), len(prof.outputs)
        if n != m:
            return
        for kappa in all_permutations(n):
            pools = [C.hom(prof.inputs[i], prof.outputs[kappa(i)]) for i in range(n)]
            for ms in itertools.product(*pools):
                yield (kappa.image, ms)

    def vcomp(f, g):
        kf, mf = Permutation(f[0]), f[1]
        kg, mg = Permutation(g[0]), g[1]
        n = len(g[1])
        return ((kf * kg).image,
                tuple(C.compose[(mf[kg(i)], mg[i])] for i in range(n)))

    def hcomp(f, g):
        return (block_sum(Permutation(f[0]), Permutation(g[0])).image,
                f[1] + g[1])

    def identity_of(w):
        return (identity_perm(len(w)).image, tuple(C.identities[c] for c in w))

    def act_in(f, s):
        k, ms = Permutation(f[0]), f[1]
        si = s.inverse()
        n = len(ms)
        return (tuple(k(si(i)) for i in range(n)),
                tuple(ms[si(i)] for i in range(n)))

    def act_out(f, t):
        k, ms = Permutation(f[0]), f[1]
        ti = t.inverse()
        n = len(ms)
        return (tuple(ti(k(i)) for i in range(n)), ms)

    return tabulate_prop(
        C.objects, arity_bound, elements, vcomp, hcomp, identity_of,
        act_in, act_out,
    )


# -- evaluating diagrams in a finite prop -----------------------------------


class ArityBoundExceeded(ValueError):
    pass


class FinitePropTarget(Target):
    """Evaluate wiring diagrams into a finite prop via a generator
    assignment and a color map."""

    def __init__(self, prop: FiniteProp, gen_assign: dict, color_map=None):
        self.prop = prop
        self.gen_assign = dict(gen_assign)
        self.cmap = dict(color_map or {})

    def color_of(self, c):
        return self.cmap.get(c, c)

    def _lookup(self, table, key, what):
        try:
            return table[key]
        except KeyError:
            raise ArityBoundExceeded(
                f"{what} outside tabulated arity bound {self.prop.arity_bound}"
            ) from None

    def id_value(self, colors):
        return self._lookup(self.prop.identities, tuple(colors), "identity")

    def gen_value(self, name, profile):
        if name not in self.gen_assign:
            raise KeyError(f"no operation assigned to generator {name}")
        return self.gen_assign[name]

    def perm_value(self, perm, colors):
        ident = self.id_value(colors)
        return self._lookup(
            self.prop.out_act, (ident, perm.inverse().image), "permutation"
        )

    def vcomp(self, f, g):
        return self._lookup(self.prop.vtable, (f, g), "vertical composite")

    def hcomp(self, f, g):
        return self._lookup(self.prop.htable, (f, g), "horizontal composite")


def evaluate_in_prop(d: WiringDiagram, prop: FiniteProp, gen_assign,
                     color_map=None):
    from .interp import evaluate

    return evaluate(d, FinitePropTarget(prop, gen_assign, color_map))


@dataclass
class FinitePropMap:
    src: FiniteProp
    dst: FiniteProp
    color_map: dict
    op_map: dict

    def violations(self) -> list[str]:
        out = []
        for f in self.src.all_ops():
            if f not in self.op_map:
                out.append(f"op {f!r} not mapped")
                continue
            pf = self.src.profile_of[f]
            want = Profile(
                tuple(self.color_map[c] for c in pf.inputs),
                tuple(self.color_map[c] for c in pf.outputs),
            )
            if self.dst.profile_of.get(self.op_map[f]) != want:
                out.append(f"op {f!r}: image profile mismatch")
        if out:
            return out
        for w, i in self.src.identities.items():
            wi = tuple(self.color_map[c] for c in w)
            if self.op_map[i] != self.dst.identities[wi]:
                out.append(f"identity for {w} not preserved")
        for (f, g), h in self.src.vtable.items():
            if self.dst.vtable[(self.op_map[f], self.op_map[g])] != self.op_map[h]:
                out.append(f"vcomp not preserved on ({f!r},{g!r})")
        for (f, g), h in self.src.htable.items():
            key = (self.op_map[f], self.op_map[g])
            if key in self.dst.htable and self.dst.htable[key] != self.op_map[h]:
                out.append(f"hcomp not preserved on ({f!r},{g!r})")
        for (f, s), h in self.src.in_act.items():
            if self.dst.in_act[(self.op_map[f], s)] != self.op_map[h]:
                out.append(f"input action not preserved on ({f!r},{s})")
        for (f, t), h in self.src.out_act.items():
            if self.dst.out_act[(self.op_map[f], t)] != self.op_map[h]:
                out.append(f"output action not preserved on ({f!r},{t})")
        return out

    def check(self) -> "FinitePropMap":
        errs = self.violations()
        if errs:
            raise ValueError("; ".join(errs[:10]))
        return self


def identity_prop_map(T: FiniteProp) -> FinitePropMap:
    return FinitePropMap(
        T, T, {c: c for c in T.colors}, {f: f for f in T.all_ops()}
    )


def compose_prop_maps(g: FinitePropMap, f: FinitePropMap) -> FinitePropMap:
    return FinitePropMap(
        f.src, g.dst,
        {c: g.color_map[d] for c, d in f.color_map.items()},
        {x: g.op_map[y] for x, y in f.op_map.items()},
    )


@dataclass
class PropModel:
    """A strict model of a presentation in a finite prop: a color assignment
    plus an operation per generator making every relation a table equality."""

    pres: object          # PropPresentation
    prop: FiniteProp
    color_map: dict
    gen_assign: dict

    def value(self, d: WiringDiagram):
        return evaluate_in_prop(d, self.prop, self.gen_assign, self.color_map)

    def violations(self) -> list[str]:
        out = []
        for name, prof in self.pres.base.generators:
            op = self.gen_assign.get(name)
            if op is None:
                out.append(f"generator {name} unassigned")
                continue
            want = Profile(
                tuple(self.color_map[c] for c in prof.inputs),
                tuple(self.color_map[c] for c in prof.outputs),
            )
            if self.prop.profile_of.get(op) != want:
                out.append(f"generator {name}: operation has wrong profile")
        if out:
            return out
        for rel in self.pres.relations:
            try:
                if self.value(rel.lhs) != self.value(rel.rhs):
                    out.append(f"relation {rel.name} broken")
            except ArityBoundExceeded:
                out.append(f"relation {rel.name} not checkable at this bound")
        return out

    def check(self) -> "PropModel":
        errs = self.violations()
        if errs:
            raise ValueError("; ".join(errs))
        return self


def enumerate_models(P, T: FiniteProp, color_maps=None) -> list[PropModel]:
    """All strict models of a presentation P in the finite prop T."""
    pcolors = sorted(P.base.objects)
    if color_maps is None:
        color_maps = [
            dict(zip(pcolors, combo))
            for combo in itertools.product(T.colors, repeat=len(pcolors))
        ]
    models = []
    for cmap in color_maps:
        pools = []
        ok = True
        for name, prof in P.base.generators:
            want = Profile(
                tuple(cmap[c] for c in prof.inputs),
                tuple(cmap[c] for c in prof.outputs),
            )
            cand = T.ops.get(want, ())
            if not cand:
                ok = False
                break
            pools.append([(name, op) for op in cand])
        if not ok:
            continue
        for pick in itertools.product(*pools):
            assign = dict(pick)
            good = True
            for rel in P.relations:
                try:
                    lv = evaluate_in_prop(rel.lhs, T, assign, cmap)
                    rv = evaluate_in_prop(rel.rhs, T, assign, cmap)
                except ArityBoundExceeded:
                    good = False
                    break
                if lv != rv:
                    good = False
                    break
            if good:
                models.append(PropModel(P, T, cmap, assign))
    return models


# -- table completion of a presentation -------------------------------------


def prop_of_presentation(P, arity_bound, size_bound, budget=None):
    """Tabulate the prop presented by P up to the arity bound, with hom sets
    given by enumerate_morphisms at the size bound.

    Returns (FiniteProp, rep) where ops are opaque indices and rep maps each
    op to its representative diagram.  Raises if a composite cannot be
    identified with any enumerated class within budget, or if any verdict
    comes back Unknown (the bounds are then too small to tabulate honestly).
    """
    from .presentations import Budget, enumerate_morphisms, eq_modulo_relations

    budget = budget or Budget()
    colors = tuple(sorted(P.base.objects))
    classes = {}     # profile -> list of representative diagrams
    for n in range(arity_bound + 1):
        for m in range(arity_bound + 1):
            for ins in itertools.product(colors, repeat=n):
                for outs in itertools.product(colors, repeat=m):
                    prof = Profile(ins, outs)
                    reps = enumerate_morphisms(P, prof, size_bound, budget)
                    if reps:
                        classes[prof] = reps
    rep = {}
    cert_to_op = {}
    ops = {}
    for prof, reps in classes.items():
        vals = []
        for i, d in enumerate(reps):
            op = (prof, i)
            vals.append(op)
            rep[op] = d
            cert_to_op[certificate(d)] = op
        ops[prof] = tuple(vals)

    def classify(d: WiringDiagram):
        canon, cert, _ = canonical_form(d)
        if cert in cert_to_op:
            return cert_to_op[cert]
        prof = d.profile
        for op in ops.get(prof, ()):
            verdict = eq_modulo_relations(P, canon, rep[op], budget)
            if verdict.kind == "equal":
                cert_to_op[cert] = op
                return op
        raise ValueError(
            f"composite in profile {prof} not identified within bounds "
            "(raise size_bound or budget)"
        )

    from .diagrams import (
        act_input,
        act_output,
        compose_horizontal,
        compose_vertical,
        identity_diagram,
    )

    identities = {}
    vtable, htable, inact, outact = {}, {}, {}, {}
    for n in range(arity_bound + 1):
        for w in itertools.product(colors, repeat=n):
            identities[w] = classify(identity_diagram(list(w)))
    allops = [op for vals in ops.values() for op in vals]
    for f in allops:
        pf = f[0]
        for g in allops:
            pg = g[0]
            if pg.outputs == pf.inputs:
                vtable[(f, g)] = classify(compose_vertical(rep[f], rep[g]))
            hp = Profile(pf.inputs + pg.inputs, pf.outputs + pg.outputs)
            if len(hp.inputs) <= arity_bound and len(hp.outputs) <= arity_bound:
                htable[(f, g)] = classify(compose_horizontal(rep[f], rep[g]))
        for s in all_permutations(len(pf.inputs)):
            inact[(f, s.image)] = classify(act_input(s, rep[f]))
        for t in all_permutations(len(pf.outputs)):
            outact[(f, t.image)] = classify(act_output(t, rep[f]))
    prop = FiniteProp(
        colors, arity_bound, ops, identities, vtable, htable, inact, outact
    ).check()
    return prop, rep


# -- the unary adjunction with categories -----------------------------------


def underlying_category(T: FiniteProp) -> FiniteCategory:
    """Objects are colors; morphisms are the unary one-output operations
    with vertical composition."""
    morphisms = []
    for c in T.colors:
        for d in T.colors:
            for op in T.ops.get(Profile((c,), (d,)), ()):
                morphisms.append((op, c, d))
    identities = {c: T.identities[(c,)] for c in T.colors}
    compose = {}
    for g, _, _ in morphisms:
        for f, _, _ in morphisms:
            if T.profile_of[f].outputs == T.profile_of[g].inputs:
                compose[(g, f)] = T.vtable[(g, f)]
    return FiniteCategory(
        tuple(T.colors), tuple(morphisms), identities, compose
    ).check()


def free_prop_of_category(C: FiniteCategory):
    """Present the prop whose generators are the non-identity morphisms,
    with the composition table as relations."""
    from .colors import make_megagraph
    from .diagrams import compose_vertical, generator_diagram, identity_diagram
    from .presentations import PropPresentation, Relation

    gens = [
        (m, Profile((a,), (b,)))
        for m, a, b in C.morphisms
        if not C.is_identity(m)
    ]
    mega = make_megagraph(C.objects, gens)

    def as_diagram(m):
        if C.is_identity(m):
            return identity_diagram([C.src(m)])
        return generator_diagram(mega, m)

    relations = []
    for (g, f), h in C.compose.items():
        if C.is_identity(g) or C.is_identity(f):
            continue
        lhs = compose_vertical(as_diagram(g), as_diagram(f))
        relations.append(Relation(f"comp_{g}_{f}", lhs, as_diagram(h)))
    return PropPresentation(mega, tuple(relations)).check()
