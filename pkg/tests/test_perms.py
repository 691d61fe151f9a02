import pytest

from propkit.perms import (
    Permutation,
    all_permutations,
    block_sum,
    block_transposition,
    from_cycles,
    identity_perm,
)


def test_block_transposition_examples():
    assert block_transposition(1, 1).image == (1, 0)
    # sigma_{2,1}: 1->3, 2->1, 3->2 in one-based terms
    assert block_transposition(2, 1).image == (2, 0, 1)
    assert block_transposition(3, 0) == identity_perm(3)
    assert block_transposition(0, 3) == identity_perm(3)


def test_inverse_and_product():
    for p in all_permutations(4):
        assert p * p.inverse() == identity_perm(4)
        assert p.inverse() * p == identity_perm(4)
    p = Permutation((1, 2, 0))
    q = Permutation((0, 2, 1))
    assert all((p * q)(i) == p(q(i)) for i in range(3))


def test_apply_contravariance():
    p = Permutation((2, 0, 1))
    assert p.apply("abc") == ("c", "a", "b")


def test_block_sum():
    p = Permutation((1, 0))
    q = Permutation((0, 2, 1))
    assert block_sum(p, q).image == (1, 0, 2, 4, 3)


def test_from_cycles():
    assert from_cycles(3, [(0, 1)]).image == (1, 0, 2)
    assert from_cycles(4, [(0, 1, 2)]).image == (1, 2, 0, 3)


def test_bad_permutation():
    with pytest.raises(ValueError):
        Permutation((0, 0, 1))
