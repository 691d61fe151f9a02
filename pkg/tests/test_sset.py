import itertools

import pytest

from propkit.sset import (
    FiniteSimplicialSet,
    SSetMap,
    boundary_delta,
    boundary_inclusion,
    boundary_matrix,
    compose_sset_maps,
    constant_map,
    delta,
    enumerate_sset_maps,
    fiber_product_sset,
    fibration_up_to,
    find_lift,
    has_rlp,
    homology_up_to,
    horn,
    horn_inclusion,
    identity_sset_map,
    inclusion_map,
    is_nondegenerate,
    monotone_surjections,
    pi0_classes,
    pi0_sset,
    point,
    product_sset,
    _smith_diagonal,
)


def test_standard_simplices_cell_counts():
    D2 = delta(2)
    assert len(D2.nondeg(0)) == 3
    assert len(D2.nondeg(1)) == 3
    assert len(D2.nondeg(2)) == 1
    assert not D2.violations()
    B1 = boundary_delta(1)
    assert len(B1.nondeg(0)) == 2
    assert not B1.nondeg(1)
    B2 = boundary_delta(2)
    assert len(B2.nondeg(1)) == 3 and not B2.nondeg(2)


def test_horns():
    L = horn(2, 1)
    assert len(L.nondeg(0)) == 3
    assert sorted(L.nondeg(1)) == ["0.1", "1.2"]
    # an outer horn of Delta[1] is a single endpoint
    assert horn(1, 0).nondeg(0) == ("0",)
    assert horn(1, 1).nondeg(0) == ("1",)
    for n, k in [(2, 0), (3, 1), (3, 3)]:
        assert not horn(n, k).violations()


def test_degenerate_faces_normalize():
    D1 = delta(1)
    # x.s0 in dimension 1 over a vertex: both faces are that vertex
    c = ((0, 0), "0")
    assert D1.face(c, 0) == ((0,), "0")
    # the degenerate 2-cell on the edge: faces are edge, edge, vertex
    z = ((0, 0, 1), "0.1")
    assert D1.face(z, 0) == ((0, 1), "0.1")
    assert D1.face(z, 1) == ((0, 1), "0.1")
    assert D1.face(z, 2) == ((0, 0), "0")
    assert not is_nondegenerate(z) and is_nondegenerate(D1.face(z, 0))


def test_cells_count_degenerate():
    D1 = delta(1)
    # dim 1 cells: the edge plus two degenerate edges
    assert len(D1.cells(1)) == 3
    # dim 2 cells: 2 over the edge, 2 over the vertices... plus none else
    assert len(D1.cells(2)) == 2 + 2
    assert list(monotone_surjections(2, 1)) == [(0, 0, 1), (0, 1, 1)]


def test_simplicial_identity_enforced():
    D2 = delta(2)
    bad = FiniteSimplicialSet(
        D2.simplices,
        {**D2.faces,
         "0.1.2": (D2.faces["0.1.2"][1], D2.faces["0.1.2"][0],
                   D2.faces["0.1.2"][2])},
    )
    assert bad.violations()


def test_map_enumeration_counts():
    # maps Delta[0] -> Delta[n] are the n+1 vertices
    assert len(enumerate_sset_maps(delta(0), delta(2))) == 3
    # maps Delta[1] -> Delta[1] are monotone maps [1] -> [1]
    assert len(enumerate_sset_maps(delta(1), delta(1))) == 3
    assert len(enumerate_sset_maps(delta(1), delta(0))) == 1
    # no map out of a point into the empty object's boundary
    assert enumerate_sset_maps(delta(0), boundary_delta(0)) == []


def test_map_validation_and_composition():
    D1, D2 = delta(1), delta(2)
    f = SSetMap(D1, D2, {"0": ((0,), "0"), "1": ((0,), "2"),
                         "0.1": ((0, 1), "0.2")}).check()
    g = constant_map(D2, D1, "1")
    gf = compose_sset_maps(g, f)
    assert gf.mapping["0.1"] == ((0, 0), "1")
    bad = SSetMap(D1, D2, {"0": ((0,), "0"), "1": ((0,), "1"),
                           "0.1": ((0, 1), "0.2")})
    assert bad.violations()


def test_pi0():
    assert len(pi0_classes(boundary_delta(1))) == 2
    assert len(pi0_classes(delta(2))) == 1
    assert len(pi0_classes(boundary_delta(2))) == 1
    comp = pi0_sset(boundary_delta(2))
    assert comp["0"] == comp["2"]


def test_smith_diagonal():
    assert _smith_diagonal([[2, 4], [6, 8]]) == [2, 4]
    assert _smith_diagonal([[1, 0], [0, 1]]) == [1, 1]
    assert _smith_diagonal([[0, 0]]) == []
    assert _smith_diagonal([[2]]) == [2]


def test_homology_circle_and_disk():
    circle = boundary_delta(2)
    assert homology_up_to(circle, 2) == [(1, ()), (1, ()), (0, ())]
    assert homology_up_to(delta(2), 2) == [(1, ()), (0, ()), (0, ())]
    sphere = boundary_delta(3)
    assert homology_up_to(sphere, 2) == [(1, ()), (0, ()), (1, ())]
    two_points = boundary_delta(1)
    assert homology_up_to(two_points, 1) == [(2, ()), (0, ())]


def test_torsion_detected():
    # glue both faces of a degenerate-free "projective plane" chain level
    # example: a 2-simplex whose boundary runs twice around a circle
    X = FiniteSimplicialSet(
        {0: ("v",), 1: ("a",), 2: ("T",)},
        {
            "a": (((0,), "v"), ((0,), "v")),
            "T": (((0, 1), "a"), ((0, 0), "v"), ((0, 1), "a")),
        },
    )
    assert not X.violations()
    M = boundary_matrix(X, 2)
    assert M == [[2]]
    assert homology_up_to(X, 2) == [(1, ()), (0, (2,)), (0, ())]


def test_product_square():
    P, p1, p2 = product_sset(delta(1), delta(1))
    assert len(P.nondeg(0)) == 4
    assert len(P.nondeg(1)) == 5
    assert len(P.nondeg(2)) == 2
    assert not P.nondeg(3)
    assert not P.violations()
    assert not p1.violations() and not p2.violations()
    # the square is contractible
    assert homology_up_to(P, 2) == [(1, ()), (0, ()), (0, ())]


def test_product_with_point():
    P, p1, _ = product_sset(delta(2), point())
    assert len(P.nondeg(2)) == 1
    assert len(enumerate_sset_maps(P, delta(2))) == \
        len(enumerate_sset_maps(delta(2), delta(2)))


def test_fiber_product():
    D1 = delta(1)
    v0 = constant_map(point(), D1, "0")
    fp, _, _ = fiber_product_sset(v0, identity_sset_map(D1))
    # the fiber of the identity over a vertex is that vertex
    assert len(fp.nondeg(0)) == 1 and not fp.nondeg(1)
    # fiber product over the point is the product
    t = constant_map(D1, point(), "*")
    fp2, _, _ = fiber_product_sset(t, t)
    assert len(fp2.nondeg(2)) == 2


def test_find_lift_inner_horn():
    i = horn_inclusion(2, 1)
    E, B = delta(1), point()
    p = constant_map(E, B, "*")
    top = SSetMap(i.src, E, {
        "0": ((0,), "0"), "1": ((0,), "0"), "2": ((0,), "1"),
        "0.1": ((0, 0), "0"), "1.2": ((0, 1), "0.1"),
    }).check()
    bottom = constant_map(i.dst, B, "*")
    lift = find_lift(i, top, p, bottom)
    assert lift is not None
    assert compose_sset_maps(p, lift).mapping == bottom.mapping
    for x in i.src.dim_of:
        assert lift.mapping[x] == top.mapping[x]


def test_find_lift_outer_horn_fails():
    # the interval is not fibrant: an outer horn with no filler
    i = horn_inclusion(2, 0)
    E, B = delta(1), point()
    p = constant_map(E, B, "*")
    top = SSetMap(i.src, E, {
        "0": ((0,), "0"), "1": ((0,), "1"), "2": ((0,), "0"),
        "0.1": ((0, 1), "0.1"), "0.2": ((0, 0), "0"),
    }).check()
    bottom = constant_map(i.dst, B, "*")
    assert find_lift(i, top, p, bottom) is None


def test_fibration_report():
    rep = fibration_up_to(constant_map(delta(1), point(), "*"), 2)
    assert not rep["ok"]
    assert (2, 0) in rep["failures"] and (2, 2) in rep["failures"]
    assert (2, 1) not in rep["failures"]
    # discrete objects are fibrant
    rep2 = fibration_up_to(constant_map(boundary_delta(1), point(), "*"), 2)
    assert rep2["ok"]
    # an identity is always a fibration
    rep3 = fibration_up_to(identity_sset_map(boundary_delta(2)), 2)
    assert rep3["ok"]


def test_rlp_boundary_inclusions():
    # the point has the lifting property against nothing but surjections on
    # simplices; against boundary inclusions it fails in positive dimension
    p = constant_map(delta(0), point(), "*")
    assert has_rlp(p, boundary_inclusion(0))
    assert not has_rlp(constant_map(boundary_delta(1), point(), "*"),
                       boundary_inclusion(1))


def test_inclusion_maps_validate():
    for n in range(4):
        assert not boundary_inclusion(n).violations()
    for n in (1, 2, 3):
        for k in range(n + 1):
            assert not horn_inclusion(n, k).violations()
