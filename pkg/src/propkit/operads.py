"""The bridge between props and colored operads.

A prop restricts to an operad on its one-output part, with operadic
composition gamma(g, <f_i>) = g after (f_1 beside ... beside f_n); in the
other direction an operad presents a prop on its operations.  Round-tripping
an operad through the presented prop changes nothing, which is verified
here by budgeted enumeration.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .colors import Profile, make_megagraph
from .diagrams import (
    WiringDiagram,
    act_input,
    compose_horizontal,
    compose_vertical,
    diagrams_equal,
    generator_diagram,
    identity_diagram,
)
from .finite import FiniteProp
from .perms import (
    Permutation,
    all_permutations,
    block_permutation,
    identity_perm,
)
from .presentations import (
    Budget,
    PropPresentation,
    Relation,
    enumerate_morphisms,
)


@dataclass
class FiniteOperad:
    """A colored operad as explicit tables up to an input-arity bound.

    ops maps (input word, output color) to a tuple of operation values;
    gamma[(g, fs)] is the total composite where its input arity stays within
    the bound; act[(f, sigma)] routes input wire j to slot sigma(j).
    """

    colors: tuple[str, ...]
    arity_bound: int
    ops: dict
    units: dict
    gamma: dict
    act: dict

    def __post_init__(self):
        self.signature_of = {}
        for key, vals in self.ops.items():
            for v in vals:
                if v in self.signature_of:
                    raise ValueError(f"operation {v!r} appears twice")
                self.signature_of[v] = key

    def all_ops(self):
        for key in sorted(self.ops):
            yield from self.ops[key]

    def gamma_of(self, g, fs):
        key = (g, tuple(fs))
        if key not in self.gamma:
            raise ValueError(
                f"gamma undefined (arity bound {self.arity_bound} exceeded "
                "or ill-typed arguments)"
            )
        return self.gamma[key]

    def violations(self) -> list[str]:
        out = []
        for c in self.colors:
            u = self.units.get(c)
            if u is None or self.signature_of.get(u) != ((c,), c):
                out.append(f"missing or mistyped unit for {c}")
        if out:
            return out
        for g in self.all_ops():
            word, c = self.signature_of[g]
            n = len(word)
            # unit laws
            if self.gamma.get((self.units[c], (g,))) != g:
                out.append(f"outer unit fails on {g!r}")
            if self.gamma.get((g, tuple(self.units[a] for a in word))) != g:
                out.append(f"inner unit fails on {g!r}")
            # action laws
            if self.act[(g, identity_perm(n).image)] != g:
                out.append(f"trivial action moves {g!r}")
            for s1 in all_permutations(n):
                for s2 in all_permutations(n):
                    if self.act[(self.act[(g, s2.image)], s1.image)] != \
                            self.act[(g, (s1 * s2).image)]:
                        out.append(f"action composition fails on {g!r}")
        out.extend(self._check_gamma_tables())
        return out

    def _typed_tuples(self, word):
        pools = [
            [f for f in self.all_ops() if self.signature_of[f][1] == c]
            for c in word
        ]
        for fs in itertools.product(*pools):
            total = sum(len(self.signature_of[f][0]) for f in fs)
            if total <= self.arity_bound:
                yield fs

    def _check_gamma_tables(self):
        out = []
        for g in self.all_ops():
            word, c = self.signature_of[g]
            n = len(word)
            for fs in self._typed_tuples(word):
                key = (g, fs)
                h = self.gamma.get(key)
                if h is None:
                    out.append(f"gamma missing on {key!r}")
                    continue
                hw = tuple(
                    x for f in fs for x in self.signature_of[f][0]
                )
                if self.signature_of[h] != (hw, c):
                    out.append(f"gamma mistyped on {key!r}")
                    continue
                # equivariance: permuting g's inputs permutes argument
                # blocks of the composite
                sizes = [len(self.signature_of[f][0]) for f in fs]
                for s in all_permutations(n):
                    inv = s.inverse()
                    left = self.gamma.get(
                        (self.act[(g, s.image)],
                         tuple(fs[inv(i)] for i in range(n)))
                    )
                    right = self.act[
                        (h, block_permutation(s, sizes).image)
                    ]
                    if left is not None and left != right:
                        out.append(f"equivariance fails on {key!r}")
                # associativity against one further level
                for hs in self._typed_tuples(hw):
                    outer = self.gamma.get((h, hs))
                    if outer is None:
                        continue
                    inner = []
                    pos = 0
                    ok = True
                    for f in fs:
                        k = len(self.signature_of[f][0])
                        sub = self.gamma.get((f, hs[pos:pos + k]))
                        pos += k
                        if sub is None:
                            ok = False
                            break
                        inner.append(sub)
                    if ok:
                        other = self.gamma.get((g, tuple(inner)))
                        if other is not None and other != outer:
                            out.append(f"associativity fails on {key!r}")
        return out

    def check(self) -> "FiniteOperad":
        errs = self.violations()
        if errs:
            raise ValueError("; ".join(errs[:10]))
        return self


def trivial_operad(colors=("*",), arity_bound=2) -> FiniteOperad:
    """Only the unit operations."""
    colors = tuple(colors)
    ops = {((c,), c): ((c, "1"),) for c in colors}
    units = {c: (c, "1") for c in colors}
    gamma = {((c, "1"), ((c, "1"),)): (c, "1") for c in colors}
    act = {((c, "1"), (0,)): (c, "1") for c in colors}
    return FiniteOperad(colors, arity_bound, ops, units, gamma, act).check()


# -- the forgetful functor ---------------------------------------------------


def forget_to_operad(T: FiniteProp) -> FiniteOperad:
    """One-output operations of a finite prop, with gamma computed as a
    vertical composite of a horizontal stack."""
    bound = T.arity_bound
    ops = {}
    for prof, vals in T.ops.items():
        if len(prof.outputs) == 1:
            ops[(prof.inputs, prof.outputs[0])] = vals
    units = {c: T.identities[(c,)] for c in T.colors}
    sig = {v: k for k, vals in ops.items() for v in vals}
    gamma = {}
    for g, (word, c) in sig.items():
        pools = [[f for f, (w2, c2) in sig.items() if c2 == a] for a in word]
        for fs in itertools.product(*pools):
            total = sum(len(sig[f][0]) for f in fs)
            if total > bound:
                continue
            stack = None
            ok = True
            for f in fs:
                stack = f if stack is None else T.htable.get((stack, f))
                if stack is None:
                    ok = False
                    break
            if not ok:
                continue
            if stack is None:  # nullary g
                stack = T.identities[()]
            gamma[(g, fs)] = T.vtable[(g, stack)]
    act = {
        (f, s.image): T.in_act[(f, s.image)]
        for f in sig
        for s in all_permutations(len(sig[f][0]))
    }
    return FiniteOperad(tuple(T.colors), bound, ops, units, gamma, act).check()


# -- the free prop on an operad ---------------------------------------------


def free_prop_on_operad(O: FiniteOperad) -> PropPresentation:
    """Present the prop generated by the operad's non-unit operations, with
    the gamma table, unit collapses, and equivariance as relations."""
    names = {}
    gens = []
    for i, f in enumerate(O.all_ops()):
        if f in O.units.values():
            continue
        word, c = O.signature_of[f]
        names[f] = f"op{i}"
        gens.append((f"op{i}", Profile(tuple(word), (c,))))
    mega = make_megagraph(O.colors, gens)

    def as_diagram(f) -> WiringDiagram:
        if f in names:
            return generator_diagram(mega, names[f])
        word, c = O.signature_of[f]
        return identity_diagram([c])

    rels = []
    for (g, fs), h in sorted(O.gamma.items(), key=repr):
        if all(f in O.units.values() for f in fs) and g in O.units.values():
            continue
        stack = identity_diagram([])
        for f in fs:
            stack = compose_horizontal(stack, as_diagram(f))
        lhs = compose_vertical(as_diagram(g), stack)
        rhs = as_diagram(h)
        if not diagrams_equal(lhs, rhs):
            rels.append(Relation(f"gamma.{len(rels)}", lhs, rhs))
    for f in O.all_ops():
        word, _ = O.signature_of[f]
        for s in all_permutations(len(word)):
            if s.is_identity():
                continue
            lhs = act_input(s, as_diagram(f))
            rhs = as_diagram(O.act[(f, s.image)])
            if not diagrams_equal(lhs, rhs):
                rels.append(Relation(f"equiv.{len(rels)}", lhs, rhs))
    return PropPresentation(mega, tuple(rels)).check()


def check_UF_identity(O: FiniteOperad, arity_bound: Optional[int] = None,
                      size_bound: int = 3,
                      budget: Optional[Budget] = None) -> dict:
    """Compare one-output hom sets of the prop presented by the operad with
    the operad's own tables, profile by profile.

    Returns a report {profile: (enumerated classes, operad count)} plus an
    overall "ok" flag; class counts are budget-dependent, so a mismatch
    where classes > count may mean the budget was too small rather than a
    genuine failure, and is flagged as "suspect" instead of a failure only
    when relations exist that the budget could not apply.
    """
    arity_bound = arity_bound if arity_bound is not None else O.arity_bound
    budget = budget or Budget()
    P = free_prop_on_operad(O)
    report = {"profiles": {}, "ok": True}
    for n in range(arity_bound + 1):
        for word in itertools.product(O.colors, repeat=n):
            for c in O.colors:
                prof = Profile(tuple(word), (c,))
                classes = enumerate_morphisms(P, prof, size_bound, budget)
                expected = len(O.ops.get((tuple(word), c), ()))
                report["profiles"][str(prof)] = (len(classes), expected)
                if len(classes) != expected:
                    report["ok"] = False
    return report


# -- operad maps and the adjunction -----------------------------------------


@dataclass
class OperadMap:
    src: FiniteOperad
    dst: FiniteOperad
    color_map: dict
    op_map: dict

    def violations(self) -> list[str]:
        out = []
        for f in self.src.all_ops():
            word, c = self.src.signature_of[f]
            im = self.op_map.get(f)
            want = (tuple(self.color_map[a] for a in word), self.color_map[c])
            if im is None or self.dst.signature_of.get(im) != want:
                out.append(f"operation {f!r} not mapped compatibly")
        if out:
            return out
        for c, u in self.src.units.items():
            if self.op_map[u] != self.dst.units[self.color_map[c]]:
                out.append(f"unit for {c} not preserved")
        for (g, fs), h in self.src.gamma.items():
            key = (self.op_map[g], tuple(self.op_map[f] for f in fs))
            if key in self.dst.gamma and self.dst.gamma[key] != self.op_map[h]:
                out.append(f"gamma not preserved on {(g, fs)!r}")
        for (f, s), h in self.src.act.items():
            if self.dst.act[(self.op_map[f], s)] != self.op_map[h]:
                out.append(f"action not preserved on {f!r}")
        return out


def enumerate_operad_maps(O: FiniteOperad, Q: FiniteOperad) -> list[OperadMap]:
    out = []
    for combo in itertools.product(Q.colors, repeat=len(O.colors)):
        cmap = dict(zip(O.colors, combo))
        pools = []
        for f in O.all_ops():
            word, c = O.signature_of[f]
            want = (tuple(cmap[a] for a in word), cmap[c])
            if f in O.units.values():
                cand = [Q.units[cmap[c]]]
            else:
                cand = list(Q.ops.get(want, ()))
            pools.append([(f, x) for x in cand])
        for pick in itertools.product(*pools):
            m = OperadMap(O, Q, cmap, dict(pick))
            if not m.violations():
                out.append(m)
    return out
