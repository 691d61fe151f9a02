import random

import pytest

from propkit.colors import Profile, make_megagraph
from propkit.diagrams import (
    act_input,
    act_output,
    canonical_form,
    certificate,
    compose_horizontal,
    compose_vertical,
    generator_diagram,
    identity_diagram,
    permutation_diagram,
)
from propkit.filtration import (
    SPElement,
    decoration_multiset,
    degree_zero_morphisms,
    filtration_additivity_check,
    filtration_degree,
    restricted_presentation,
)
from propkit.perms import Permutation, all_permutations
from propkit.presentations import (
    Budget,
    PropPresentation,
    Relation,
    enumerate_diagrams,
    enumerate_morphisms,
    free_presentation,
)


def glued_presentation():
    """A base idempotent generator t with an extra counted generator h whose
    composite with t collapses back to h."""
    mega = make_megagraph(["x"], [
        ("t", Profile(("x",), ("x",))),
        ("h", Profile(("x",), ("x",))),
    ])
    t = generator_diagram(mega, "t")
    h = generator_diagram(mega, "h")
    rels = (
        Relation("t.idem", compose_vertical(t, t), t),
        Relation("h.absorb", compose_vertical(h, t), h),
    )
    return PropPresentation(mega, rels).check(), mega


def cancelling_presentation():
    """h and its retraction: hr . h = id."""
    mega = make_megagraph(["x", "y"], [
        ("h", Profile(("x",), ("y",))),
        ("hr", Profile(("y",), ("x",))),
    ])
    h = generator_diagram(mega, "h")
    hr = generator_diagram(mega, "hr")
    rel = Relation("retract", compose_vertical(hr, h), identity_diagram(["x"]))
    return PropPresentation(mega, (rel,)).check(), mega


def test_decorations_of_wire_diagrams_empty():
    assert decoration_multiset(identity_diagram(["x", "y"])) == SPElement.of([])
    p = permutation_diagram(Permutation((1, 0)), ["x", "x"])
    assert decoration_multiset(p).size == 0


def test_decoration_counts_vertices():
    P, mega = glued_presentation()
    t = generator_diagram(mega, "t")
    h = generator_diagram(mega, "h")
    d = compose_vertical(t, compose_vertical(h, t))
    assert decoration_multiset(d) == SPElement.of(["t", "t", "h"])
    assert decoration_multiset(d).size == d.n_vertices


def test_decoration_invariance():
    mega = make_megagraph(["x"], [("m", Profile(("x", "x"), ("x", "x")))])
    m = generator_diagram(mega, "m")
    d = compose_vertical(m, compose_horizontal(m, identity_diagram([])))
    base = decoration_multiset(d)
    for s in all_permutations(2):
        assert decoration_multiset(act_input(s, d)) == base
        assert decoration_multiset(act_output(s, d)) == base
    canon, _, _ = canonical_form(d)
    assert decoration_multiset(canon) == base


def test_decoration_union_under_compositions():
    P, mega = glued_presentation()
    rng = random.Random(7)
    pool = enumerate_diagrams(mega, Profile(("x",), ("x",)), 3)
    for _ in range(20):
        f, g = rng.choice(pool), rng.choice(pool)
        assert decoration_multiset(compose_vertical(f, g)) == \
            decoration_multiset(f).union(decoration_multiset(g))
        assert decoration_multiset(compose_horizontal(f, g)) == \
            decoration_multiset(f).union(decoration_multiset(g))


def test_degree_zero_and_one():
    P, mega = glued_presentation()
    t = generator_diagram(mega, "t")
    h = generator_diagram(mega, "h")
    k, w = filtration_degree(P, {"h"}, compose_vertical(t, t))
    assert k == 0 and w.n_vertices >= 1
    k, w = filtration_degree(P, {"h"}, h)
    assert k == 1
    # the absorb relation removes t-vertices but no h-vertex
    k, w = filtration_degree(P, {"h"}, compose_vertical(h, t))
    assert k == 1 and decoration_multiset(w).count_in({"h"}) == 1


def test_degree_drops_through_cancellation():
    P, mega = cancelling_presentation()
    h = generator_diagram(mega, "h")
    hr = generator_diagram(mega, "hr")
    d = compose_vertical(hr, h)
    assert decoration_multiset(d).count_in({"h", "hr"}) == 2
    k, w = filtration_degree(P, {"h", "hr"}, d)
    assert k == 0 and w.n_vertices == 0


def test_degree_exact_on_free_part():
    mega = make_megagraph(["x"], [("h", Profile(("x",), ("x",)))])
    P = free_presentation(mega)
    h = generator_diagram(mega, "h")
    rng = random.Random(3)
    for _ in range(10):
        n = rng.randrange(4)
        d = identity_diagram(["x"])
        for _ in range(n):
            d = compose_vertical(h, d)
        k, _ = filtration_degree(P, {"h"}, d)
        assert k == n


def test_additivity_report():
    P, mega = glued_presentation()
    rng = random.Random(11)
    pool = enumerate_diagrams(mega, Profile(("x",), ("x",)), 2)
    samples = []
    for _ in range(12):
        samples.append((rng.choice(pool), rng.choice(pool),
                        rng.choice(["v", "h"])))
    rep = filtration_additivity_check(P, {"h"}, samples)
    assert rep["ok"], rep
    assert rep["checked"] == 12


def test_degree_zero_matches_restricted_presentation():
    P, mega = glued_presentation()
    prof = Profile(("x",), ("x",))
    Q = restricted_presentation(P, {"h"})
    assert [g for g, _ in Q.base.generators] == ["t"]
    assert len(Q.relations) == 1
    lhs = degree_zero_morphisms(P, {"h"}, prof, 2)
    rhs = enumerate_morphisms(Q, prof, 2)
    assert len(lhs) == len(rhs) == 2
    assert {certificate(d) for d in lhs} == {certificate(d) for d in rhs}


def test_budget_limits_are_honest():
    P, mega = cancelling_presentation()
    h = generator_diagram(mega, "h")
    hr = generator_diagram(mega, "hr")
    d = compose_vertical(hr, h)
    # with no search steps the bound stays at the raw count
    k, _ = filtration_degree(P, {"h", "hr"}, d, Budget(max_steps=0))
    assert k == 2
