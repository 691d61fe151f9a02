"""Finitely presented props: relations, rewriting, and budgeted word problem.

A presentation is a megagraph of generators plus relation pairs of wiring
diagrams.  Relation application is subdiagram replacement: an embedding of
one side is excised and the other side grafted in along the boundary
correspondence.  Equality of presented-prop morphisms is therefore only
semidecidable; verdicts are three-valued with explicit budgets.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from .colors import Megagraph, Profile
from .diagrams import (
    DiagramError,
    WiringDiagram,
    canonical_form,
    certificate,
)
from .interp import RecoloringTarget, evaluate


@dataclass(frozen=True)
class Relation:
    name: str
    lhs: WiringDiagram
    rhs: WiringDiagram


@dataclass
class PropPresentation:
    base: Megagraph
    relations: tuple[Relation, ...] = ()

    def violations(self) -> list[str]:
        from .colors import validate_megagraph

        out = list(validate_megagraph(self.base))
        profs = self.base.gen_profiles
        for rel in self.relations:
            if rel.lhs.profile != rel.rhs.profile:
                out.append(f"relation {rel.name}: sides have different profiles")
            for side, d in (("lhs", rel.lhs), ("rhs", rel.rhs)):
                out.extend(f"relation {rel.name} {side}: {v}" for v in d.violations())
                for g in set(d.vertices.values()):
                    if profs.get(g) != d.gen_profiles.get(g):
                        out.append(
                            f"relation {rel.name} {side}: generator {g} "
                            "not over the base megagraph"
                        )
        return out

    def check(self) -> "PropPresentation":
        errs = self.violations()
        if errs:
            raise ValueError("; ".join(errs))
        return self


def free_presentation(base: Megagraph) -> PropPresentation:
    return PropPresentation(base, ())


@dataclass
class Budget:
    max_steps: int = 4          # BFS depth in relation applications
    max_vertices: int = 12      # size cap on intermediate diagrams
    max_visited: int = 4000     # cap on explored canonical forms

    def scaled(self, **kw) -> "Budget":
        d = {"max_steps": self.max_steps, "max_vertices": self.max_vertices,
             "max_visited": self.max_visited}
        d.update(kw)
        return Budget(**d)


# -- homomorphisms ----------------------------------------------------------


@dataclass
class PropHom:
    """A homomorphism between presented props: a color map plus a diagram
    image for each generator."""

    src: PropPresentation
    dst: PropPresentation
    color_map: dict[str, str]
    gen_images: dict[str, WiringDiagram]

    def image_profile(self, prof: Profile) -> Profile:
        return Profile(
            tuple(self.color_map[c] for c in prof.inputs),
            tuple(self.color_map[c] for c in prof.outputs),
        )

    def violations(self) -> list[str]:
        out = []
        for c in sorted({x for _, p in self.src.base.generators
                         for x in p.inputs + p.outputs} | set(self.src.base.objects)):
            if c not in self.color_map:
                out.append(f"color {c} has no image")
        for name, prof in self.src.base.generators:
            img = self.gen_images.get(name)
            if img is None:
                out.append(f"generator {name} has no image")
                continue
            want = self.image_profile(prof)
            if img.profile != want:
                out.append(
                    f"generator {name}: image profile {img.profile} != {want}"
                )
        return out

    def check(self) -> "PropHom":
        errs = self.violations()
        if errs:
            raise ValueError("; ".join(errs))
        return self

    def relation_report(self, budget: Optional[Budget] = None):
        """Verdict per source relation that its image holds in the target."""
        budget = budget or Budget()
        report = []
        for rel in self.src.relations:
            li = image_diagram(self, rel.lhs)
            ri = image_diagram(self, rel.rhs)
            report.append((rel.name, eq_modulo_relations(self.dst, li, ri, budget)))
        return report


def identity_hom(P: PropPresentation) -> PropHom:
    from .diagrams import generator_diagram

    return PropHom(
        P, P,
        {c: c for c in P.base.objects},
        {name: generator_diagram(P.base, name) for name, _ in P.base.generators},
    )


def image_diagram(h: PropHom, f: WiringDiagram) -> WiringDiagram:
    """Push a diagram through a homomorphism by structural evaluation."""
    target = RecoloringTarget(h.color_map, h.gen_images, h.dst.base.gen_profiles)
    return evaluate(f, target)


def compose_homs(g: PropHom, f: PropHom) -> PropHom:
    """g after f."""
    return PropHom(
        f.src, g.dst,
        {c: g.color_map[d] for c, d in f.color_map.items()},
        {name: image_diagram(g, img) for name, img in f.gen_images.items()},
    )


# -- relation rewriting -----------------------------------------------------


def _internal_edges(d: WiringDiagram):
    return [(s, t) for s, t in d.edges if s[0] == "vo" and t[0] == "vi"]


def _pass_edges(d: WiringDiagram):
    return [(s, t) for s, t in d.edges if s[0] == "in" and t[0] == "out"]


def find_matches(host: WiringDiagram, pattern: WiringDiagram):
    """All embeddings of pattern into host.

    A match is (vmap, passmap): an injective generator-preserving vertex map
    under which internal pattern edges map to host edges and no extra host
    edge joins two matched vertices, plus an injective assignment of the
    pattern's pass-through wires to host edges disjoint from the matched
    region.
    """
    pverts = sorted(pattern.vertices)
    internal = _internal_edges(pattern)
    passes = _pass_edges(pattern)

    host_internal = {
        (s[1], s[2], t[1], t[2]) for s, t in host.edges
        if s[0] == "vo" and t[0] == "vi"
    }

    def extend(i, vmap, used):
        if i == len(pverts):
            # no extra host edges inside the matched region
            region = set(vmap.values())
            for (u, us, w, ws) in host_internal:
                if u in region and w in region:
                    pu = rmap[u]
                    if (("vo", pu, us), ("vi", rmap[w], ws)) not in pattern.edges:
                        return
            yield dict(vmap)
            return
        pv = pverts[i]
        for hv in sorted(host.vertices):
            if hv in used or host.vertices[hv] != pattern.vertices[pv]:
                continue
            ok = True
            for s, t in internal:
                u, w = s[1], t[1]
                if u == pv and w in vmap:
                    if (hv, s[2], vmap[w], t[2]) not in host_internal:
                        ok = False
                        break
                if w == pv and u in vmap:
                    if (vmap[u], s[2], hv, t[2]) not in host_internal:
                        ok = False
                        break
                if u == pv and w == pv:
                    if (hv, s[2], hv, t[2]) not in host_internal:
                        ok = False
                        break
            if not ok:
                continue
            vmap[pv] = hv
            rmap[hv] = pv
            used.add(hv)
            yield from extend(i + 1, vmap, used)
            del vmap[pv]
            del rmap[hv]
            used.discard(hv)

    rmap: dict[int, int] = {}
    for vmap in extend(0, {}, set()):
        region_ports = set(vmap.values())
        eligible = [
            e for e in host.edges
            if not (e[0][0] in ("vo", "vi") and e[0][1] in region_ports)
            and not (e[1][0] in ("vo", "vi") and e[1][1] in region_ports)
        ]
        if not passes:
            yield vmap, {}
            continue
        colored = [
            [e for e in eligible if host.port_color(e[0]) == pattern.port_color(p[0])]
            for p in passes
        ]
        for combo in itertools.product(*colored):
            if len(set(combo)) != len(combo):
                continue
            yield vmap, dict(zip(passes, combo))


def apply_relation_at(
    host: WiringDiagram,
    lhs: WiringDiagram,
    rhs: WiringDiagram,
    vmap: dict[int, int],
    passmap: dict,
) -> Optional[WiringDiagram]:
    """Replace the matched copy of lhs in host by rhs; None if the result is
    not a valid diagram (non-convex match)."""
    n_in = len(lhs.inputs)
    n_out = len(lhs.outputs)
    src_at: dict[int, tuple] = {}
    dst_at: dict[int, tuple] = {}
    for s, t in lhs.edges:
        if s[0] == "in" and t[0] == "vi":
            src_at[s[1]] = host.source_of(("vi", vmap[t[1]], t[2]))
        elif s[0] == "vo" and t[0] == "out":
            dst_at[t[1]] = host.target_of(("vo", vmap[s[1]], s[2]))
        elif s[0] == "in" and t[0] == "out":
            e = passmap[(s, t)]
            src_at[s[1]] = e[0]
            dst_at[t[1]] = e[1]
    if len(src_at) != n_in or len(dst_at) != n_out:
        raise DiagramError("pattern boundary not fully wired")

    region = set(vmap.values())
    removed_edges = set(passmap.values())
    for e in host.edges:
        for p in e:
            if p[0] in ("vi", "vo") and p[1] in region:
                removed_edges.add(e)

    fresh = (max(host.vertices) + 1) if host.vertices else 0
    rhs_ids = {v: fresh + i for i, v in enumerate(sorted(rhs.vertices))}
    vertices = {v: g for v, g in host.vertices.items() if v not in region}
    for v, g in rhs.vertices.items():
        vertices[rhs_ids[v]] = g

    def rhs_port(p):
        return (p[0], rhs_ids[p[1]], p[2])

    edges = set(host.edges) - removed_edges
    for s, t in rhs.edges:
        if s[0] == "in":
            src = src_at[s[1]]
        else:
            src = rhs_port(s)
        if t[0] == "out":
            dst = dst_at[t[1]]
        else:
            dst = rhs_port(t)
        edges.add((src, dst))

    profs = dict(host.gen_profiles)
    for g, p in rhs.gen_profiles.items():
        profs.setdefault(g, p)
    out = WiringDiagram(host.inputs, host.outputs, vertices, frozenset(edges), profs)
    if out.violations():
        return None
    return out


def one_step_rewrites(
    P: PropPresentation, d: WiringDiagram, max_vertices: int
) -> Iterable[WiringDiagram]:
    """All diagrams reachable from d by one relation application (either
    direction) within the size cap."""
    for rel in P.relations:
        for lhs, rhs in ((rel.lhs, rel.rhs), (rel.rhs, rel.lhs)):
            grow = d.n_vertices - lhs.n_vertices + rhs.n_vertices
            if grow > max_vertices:
                continue
            for vmap, passmap in find_matches(d, lhs):
                res = apply_relation_at(d, lhs, rhs, vmap, passmap)
                if res is not None:
                    yield res


# -- word problem -----------------------------------------------------------


@dataclass
class EqVerdict:
    kind: str                       # "equal" | "distinct" | "unknown"
    chain: Optional[list] = None    # certificates along a connecting path
    reason: Optional[str] = None

    def __bool__(self):
        return self.kind == "equal"


Separator = Callable[[WiringDiagram], object]


def _signed_delta(rel: Relation, gens: list[str]) -> list[int]:
    cl = Counter(rel.lhs.vertices.values())
    cr = Counter(rel.rhs.vertices.values())
    return [cl.get(g, 0) - cr.get(g, 0) for g in gens]


def _integer_in_span(cols: list[list[int]], target: list[int]) -> bool:
    """Is target an integer combination of the columns?  Small dense SNF."""
    m = len(target)
    n = len(cols)
    if all(x == 0 for x in target):
        return True
    if n == 0:
        return False
    A = [[cols[j][i] for j in range(n)] for i in range(m)]
    b = list(target)
    # row-reduce over Z, allowing row ops on [A|b] and column ops on A only
    rows, colx = m, n
    r = c = 0
    while r < rows and c < colx:
        # find pivot with smallest nonzero absolute value
        piv = None
        for i in range(r, rows):
            for j in range(c, colx):
                if A[i][j] != 0 and (piv is None or abs(A[i][j]) < abs(A[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        i0, j0 = piv
        A[r], A[i0] = A[i0], A[r]
        b[r], b[i0] = b[i0], b[r]
        for row in A:
            row[c], row[j0] = row[j0], row[c]
        reduced = False
        for i in range(rows):
            if i != r and A[i][c] % A[r][c] != 0:
                q = A[i][c] // A[r][c]
                A[i] = [x - q * y for x, y in zip(A[i], A[r])]
                b[i] -= q * b[r]
                reduced = True
            elif i != r and A[i][c] != 0:
                q = A[i][c] // A[r][c]
                A[i] = [x - q * y for x, y in zip(A[i], A[r])]
                b[i] -= q * b[r]
        for j in range(colx):
            if j != c and A[r][j] != 0:
                q = A[r][j] // A[r][c]
                for i in range(rows):
                    A[i][j] -= q * A[i][c]
        if reduced:
            continue
        r += 1
        c += 1
    # now rows beyond r must have b == 0; pivot rows need divisibility
    for i in range(rows):
        pivots = [j for j in range(colx) if A[i][j] != 0]
        if not pivots:
            if b[i] != 0:
                return False
        else:
            if b[i] % A[i][pivots[0]] != 0:
                return False
    return True


def counting_separates(P: PropPresentation, f: WiringDiagram, g: WiringDiagram) -> bool:
    """True if the generator-count invariant certifies f != g: the count
    difference is not an integer combination of the relation deltas."""
    gens = sorted({name for name, _ in P.base.generators})
    cf = Counter(f.vertices.values())
    cg = Counter(g.vertices.values())
    target = [cf.get(x, 0) - cg.get(x, 0) for x in gens]
    cols = [_signed_delta(rel, gens) for rel in P.relations]
    return not _integer_in_span(cols, target)


def eq_modulo_relations(
    P: PropPresentation,
    f: WiringDiagram,
    g: WiringDiagram,
    budget: Optional[Budget] = None,
    separators: Iterable[Separator] = (),
) -> EqVerdict:
    """Decide f = g in the presented prop, within budget.

    Equal verdicts carry a replayable certificate chain; Distinct verdicts
    name the separating invariant; otherwise Unknown.
    """
    budget = budget or Budget()
    if f.profile != g.profile:
        return EqVerdict("distinct", reason="profiles differ")
    fc, cf, _ = canonical_form(f)
    gc, cg, _ = canonical_form(g)
    if cf == cg:
        return EqVerdict("equal", chain=[fc])
    if counting_separates(P, f, g):
        return EqVerdict("distinct", reason="generator-count invariant")
    for sep in separators:
        if sep(f) != sep(g):
            return EqVerdict("distinct", reason=f"separator {sep}")
    # bidirectional BFS on canonical forms; chains carry the diagrams so an
    # Equal verdict can be replayed step by step
    diag_of = {cf: fc, cg: gc}
    sides = [
        ({cf: None}, [fc]),
        ({cg: None}, [gc]),
    ]
    visited_total = 2
    for depth in range(2 * budget.max_steps):
        idx = depth % 2
        seen, frontier = sides[idx]
        other_seen = sides[1 - idx][0]
        new_frontier = []
        for d in frontier:
            dc = certificate(d)
            for nb in one_step_rewrites(P, d, budget.max_vertices):
                nbc_diag, nc, _ = canonical_form(nb)
                if nc in seen:
                    continue
                seen[nc] = dc
                diag_of.setdefault(nc, nbc_diag)
                visited_total += 1
                if nc in other_seen:
                    chain = _join_chain(sides, idx, nc)
                    return EqVerdict("equal", chain=[diag_of[c] for c in chain])
                new_frontier.append(nbc_diag)
                if visited_total > budget.max_visited:
                    return EqVerdict("unknown", reason="visited cap reached")
        sides[idx] = (seen, new_frontier)
        if not new_frontier and not sides[1 - idx][1]:
            # both frontiers exhausted: the budget-reachable classes are
            # disjoint, but relations may still connect through larger
            # diagrams than the cap allows
            return EqVerdict("unknown", reason="frontiers exhausted under size cap")
    return EqVerdict("unknown", reason="step budget exhausted")


def _join_chain(sides, idx, meet):
    def walk(seen, start):
        chain = [start]
        while seen[chain[-1]] is not None:
            chain.append(seen[chain[-1]])
        return chain

    left = walk(sides[idx][0], meet)
    right = walk(sides[1 - idx][0], meet)
    if idx == 0:
        return list(reversed(left)) + right[1:]
    return list(reversed(right)) + left[1:]


# -- presentation simplification --------------------------------------------


def _as_generator_name(d: WiringDiagram, base: Megagraph):
    """The generator name g if d is exactly the corolla of g, else None."""
    if d.n_vertices != 1:
        return None
    [g] = d.vertices.values()
    from .diagrams import diagrams_equal, generator_diagram

    if diagrams_equal(d, generator_diagram(base, g)):
        return g
    return None


def simplify_presentation(P: PropPresentation):
    """Eliminate generators that a relation defines in terms of the others,
    and drop duplicate or trivial relations.

    Returns (Q, h) with h: P -> Q the substitution hom; Q presents the same
    prop as P.
    """
    from .colors import make_megagraph
    from .diagrams import generator_diagram

    base = P.base
    rels = list(P.relations)
    eliminated: dict[str, WiringDiagram] = {}
    while True:
        # drop trivial and duplicate relations
        seen_pairs = set()
        kept = []
        for r in rels:
            cl = certificate(canonical_form(r.lhs)[0])
            cr = certificate(canonical_form(r.rhs)[0])
            if cl == cr:
                continue
            key = frozenset((cl, cr))
            if key in seen_pairs:
                continue
            seen_pairs.add(key)
            kept.append(r)
        rels = kept
        found = None
        for r in rels:
            for side, other in ((r.lhs, r.rhs), (r.rhs, r.lhs)):
                g = _as_generator_name(side, base)
                if g is not None and g not in set(other.vertices.values()):
                    found = (r, g, other)
                    break
            if found:
                break
        if not found:
            break
        rel, g, image = found
        new_gens = [(n, p) for n, p in base.generators if n != g]
        new_base = make_megagraph(base.objects, new_gens)
        sub = PropHom(
            PropPresentation(base, ()),
            PropPresentation(new_base, ()),
            {c: c for c in base.objects},
            {
                **{n: generator_diagram(new_base, n) for n, _ in new_gens},
                g: image,
            },
        )
        rels = [
            Relation(r2.name, image_diagram(sub, r2.lhs), image_diagram(sub, r2.rhs))
            for r2 in rels
            if r2 is not rel
        ]
        eliminated = {
            n: image_diagram(sub, d) for n, d in eliminated.items()
        }
        eliminated[g] = image
        base = new_base
    Q = PropPresentation(base, tuple(rels))
    h = PropHom(
        P, Q,
        {c: c for c in P.base.objects},
        {
            **{n: generator_diagram(base, n) for n, _ in base.generators},
            **eliminated,
        },
    )
    return Q, h


# -- enumeration ------------------------------------------------------------


def enumerate_diagrams(
    base: Megagraph, profile: Profile, size_bound: int
) -> list[WiringDiagram]:
    """All canonical diagrams over base with the given profile and at most
    size_bound vertices (free equality: up to isomorphism)."""
    gens = [name for name, _ in base.generators]
    seen: dict[str, WiringDiagram] = {}
    for k in range(size_bound + 1):
        for combo in itertools.combinations_with_replacement(gens, k):
            vertices = {i: g for i, g in enumerate(combo)}
            sources = [("in", i) for i in range(len(profile.inputs))]
            targets = [("out", j) for j in range(len(profile.outputs))]
            for v, g in vertices.items():
                p = base.profile_of(g)
                sources += [("vo", v, s) for s in range(len(p.outputs))]
                targets += [("vi", v, s) for s in range(len(p.inputs))]
            if len(sources) != len(targets):
                continue
            shell = WiringDiagram(
                profile.inputs, profile.outputs, vertices, frozenset(),
                base.gen_profiles,
            )
            for edges in _color_matchings(shell, sources, targets):
                d = WiringDiagram(
                    profile.inputs, profile.outputs, dict(vertices),
                    frozenset(edges), base.gen_profiles,
                )
                if d.violations():
                    continue
                canon, cert, _ = canonical_form(d)
                if cert not in seen:
                    seen[cert] = canon
    return list(seen.values())


def _color_matchings(shell, sources, targets, partial=None):
    partial = partial or []
    if not sources:
        yield list(partial)
        return
    s = sources[0]
    cs = shell.port_color(s)
    for i, t in enumerate(targets):
        if cs != shell.port_color(t):
            continue
        partial.append((s, t))
        yield from _color_matchings(shell, sources[1:], targets[:i] + targets[i + 1:], partial)
        partial.pop()


def enumerate_morphisms(
    P: PropPresentation,
    profile: Profile,
    size_bound: int,
    budget: Optional[Budget] = None,
) -> list[WiringDiagram]:
    """Representatives of budget-equivalence classes of morphisms with at
    most size_bound vertices in the given profile."""
    budget = budget or Budget()
    free = enumerate_diagrams(P.base, profile, size_bound)
    if not P.relations:
        return free
    certs = {certificate(d): i for i, d in enumerate(free)}
    parent = list(range(len(free)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)

    for i, d in enumerate(free):
        seen = {certificate(d)}
        frontier = [d]
        for _ in range(budget.max_steps):
            nxt = []
            for cur in frontier:
                for nb in one_step_rewrites(P, cur, budget.max_vertices):
                    c = certificate(canonical_form(nb)[0])
                    if c in seen:
                        continue
                    seen.add(c)
                    if c in certs:
                        union(i, certs[c])
                    nxt.append(nb)
                    if len(seen) > budget.max_visited:
                        nxt = []
                        frontier = []
                        break
            frontier = nxt
            if not frontier:
                break
    reps = {}
    for i, d in enumerate(free):
        reps.setdefault(find(i), d)
    return [reps[k] for k in sorted(reps)]
