"""The symmetric-product filtration on morphisms of a presented prop.

Forgetting the wiring of a diagram leaves the unordered multiset of
generator names decorating its vertices; designating a subset H of the
generators as the counted ones grades morphisms by how many H-vertices a
representative needs.  Over a presented prop the minimum is taken over a
budgeted search, so the reported degree is an upper bound with a witness.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Optional

from .diagrams import (
    WiringDiagram,
    certificate,
    compose_horizontal,
    compose_vertical,
    identity_diagram,
)
from .presentations import (
    Budget,
    PropPresentation,
    enumerate_morphisms,
    one_step_rewrites,
)


@dataclass(frozen=True)
class SPElement:
    """An unordered list of generator names."""

    counts: tuple[tuple[str, int], ...]

    @classmethod
    def of(cls, names: Iterable[str]) -> "SPElement":
        return cls(tuple(sorted(Counter(names).items())))

    @property
    def size(self) -> int:
        return sum(k for _, k in self.counts)

    def union(self, other: "SPElement") -> "SPElement":
        c = Counter(dict(self.counts))
        c.update(dict(other.counts))
        return SPElement(tuple(sorted(c.items())))

    def count_in(self, names) -> int:
        names = set(names)
        return sum(k for g, k in self.counts if g in names)


def decoration_multiset(f: WiringDiagram) -> SPElement:
    """Forget the wiring: the multiset of generator names at f's vertices."""
    return SPElement.of(f.vertices.values())


def filtration_degree(P: PropPresentation, H, f: WiringDiagram,
                      budget: Optional[Budget] = None):
    """Budgeted minimum number of H-vertices over representatives of f.

    Returns (degree, witness); the degree is an upper bound for the true
    minimum (the search is cut off by the budget), attained by the witness.
    """
    budget = budget or Budget()
    H = set(H)
    start = f.check()
    best = decoration_multiset(start).count_in(H)
    witness = start
    seen = {certificate(start)}
    frontier = [start]
    for _ in range(budget.max_steps):
        if not frontier or len(seen) > budget.max_visited:
            break
        nxt = []
        for d in frontier:
            for r in one_step_rewrites(P, d, budget.max_vertices):
                c = certificate(r)
                if c in seen:
                    continue
                seen.add(c)
                k = decoration_multiset(r).count_in(H)
                if k < best:
                    best, witness = k, r
                nxt.append(r)
        frontier = nxt
    return best, witness


def degree_zero_morphisms(P: PropPresentation, H, profile, size_bound,
                          budget: Optional[Budget] = None):
    """Representatives whose filtration degree comes out 0 at this budget."""
    budget = budget or Budget()
    out = []
    for d in enumerate_morphisms(P, profile, size_bound, budget):
        k, _ = filtration_degree(P, H, d, budget)
        if k == 0:
            out.append(d)
    return out


def restricted_presentation(P: PropPresentation, H) -> PropPresentation:
    """The sub-presentation on the generators outside H, keeping only the
    relations that avoid H on both sides."""
    from .colors import make_megagraph

    H = set(H)
    gens = [(g, prof) for g, prof in P.base.generators if g not in H]
    mega = make_megagraph(P.base.objects, gens)
    rels = tuple(
        rel for rel in P.relations
        if not (set(rel.lhs.vertices.values()) |
                set(rel.rhs.vertices.values())) & H
    )
    return PropPresentation(mega, rels)


def filtration_additivity_check(P: PropPresentation, H, samples,
                                budget: Optional[Budget] = None,
                                rng: Optional[random.Random] = None) -> dict:
    """Subadditivity of the degree bound under both compositions on sampled
    typed pairs, plus exactness against identities.

    samples: iterable of (f, g, kind) with kind "v" or "h"; pairs must be
    composable for "v".
    """
    budget = budget or Budget()
    report = {"checked": 0, "violations": []}
    for f, g, kind in samples:
        df, _ = filtration_degree(P, H, f, budget)
        dg, _ = filtration_degree(P, H, g, budget)
        comp = compose_vertical(f, g) if kind == "v" else \
            compose_horizontal(f, g)
        dc, _ = filtration_degree(P, H, comp, budget)
        report["checked"] += 1
        if dc > df + dg:
            report["violations"].append((kind, df, dg, dc))
        # composing with an identity never moves the degree
        id_comp = compose_vertical(identity_diagram(f.outputs), f)
        di, _ = filtration_degree(P, H, id_comp, budget)
        if di != df:
            report["violations"].append(("id", df, di))
    report["ok"] = not report["violations"]
    return report
