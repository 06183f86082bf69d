import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from xmod.groups import (FiniteGroup, GroupAction, GroupError, GroupHom, GroupSizeError,
                         MAX_ORDER, all_actions, all_homomorphisms, automorphisms,
                         check_action, check_hom, conjugation_action, cycles_to_perm,
                         direct_product, from_permutations, generators, is_normal,
                         make_cyclic, make_dihedral, make_symmetric, pair_index, split_index,
                         subgroup, trivial_group)

SMALL = [trivial_group(), make_cyclic(2), make_cyclic(3), make_cyclic(4), make_symmetric(3),
         make_dihedral(4), direct_product(make_cyclic(2), make_cyclic(2))]


def brute_associative(G):
    n = G.order
    return all(G.table[G.table[a, b], c] == G.table[a, G.table[b, c]]
               for a, b, c in itertools.product(range(n), repeat=3))


@pytest.mark.parametrize("G", SMALL, ids=lambda G: G.name)
def test_group_laws_by_brute_force(G):
    assert brute_associative(G)
    e = G.identity
    for a in range(G.order):
        assert G.mul(e, a) == a == G.mul(a, e)
        assert G.mul(a, G.inv(a)) == e
    assert sorted(G.table[0]) == list(range(G.order))


@pytest.mark.parametrize("n,order,abelian", [(2, 2, True), (3, 6, False), (4, 24, False)])
def test_symmetric_groups(n, order, abelian):
    G = make_symmetric(n)
    assert G.order == order
    assert G.is_abelian() == abelian


def test_dihedral_and_cyclic_orders():
    assert make_dihedral(4).order == 8
    assert not make_dihedral(4).is_abelian()
    assert [make_cyclic(6).element_order(x) for x in range(6)] == [1, 6, 3, 2, 3, 6]


def test_rejects_non_groups():
    with pytest.raises(GroupError):
        FiniteGroup([[0, 1], [0, 1]])
    with pytest.raises(GroupError):
        FiniteGroup([[0, 1, 2], [1, 2, 0]])
    # a Latin square with identity that is not associative
    loop = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    assert not brute_associative(FiniteGroup(loop, check=False))
    with pytest.raises(GroupError):
        FiniteGroup(loop)


def test_max_order_guard():
    with pytest.raises(GroupSizeError):
        direct_product(make_cyclic(80), make_cyclic(80))
    assert MAX_ORDER == 5000


@given(st.integers(1, 7), st.integers(1, 7), st.data())
def test_direct_product_indexing(m, n, data):
    A, B = make_cyclic(m), make_cyclic(n)
    P = direct_product(A, B)
    a1, a2 = data.draw(st.integers(0, m - 1)), data.draw(st.integers(0, m - 1))
    b1, b2 = data.draw(st.integers(0, n - 1)), data.draw(st.integers(0, n - 1))
    x, y = pair_index(B, a1, b1), pair_index(B, a2, b2)
    assert split_index(B, P.mul(x, y)) == (A.mul(a1, a2), B.mul(b1, b2))
    assert x == a1 * n + b1


@given(st.sampled_from(SMALL), st.data())
def test_conj_and_commutator(G, data):
    a = data.draw(st.integers(0, G.order - 1))
    x = data.draw(st.integers(0, G.order - 1))
    assert G.conj(a, x) == G.prod(a, x, G.inv(a))
    assert G.commutator(a, x) == G.prod(a, x, G.inv(a), G.inv(x))
    assert G.power(a, G.element_order(a)) == G.identity


def test_permutation_helpers():
    assert cycles_to_perm([[0, 1, 2]], 4) == (1, 2, 0, 3)
    Q = from_permutations([[[0, 1, 2, 3]], [[0, 2]]], 4)
    assert Q.order == 8


def test_subgroup_helper():
    S3 = make_symmetric(3)
    a3 = [x for x in range(6) if S3.element_order(x) in (1, 3)]
    A3 = subgroup(S3, a3)
    assert A3.order == 3 and A3.is_abelian()
    assert is_normal(S3, a3)
    two = [0, next(x for x in range(6) if S3.element_order(x) == 2)]
    assert not is_normal(S3, two)
    with pytest.raises(GroupError):
        subgroup(S3, [0, 1, 2, 3])


def test_subgroup_closure_and_generators():
    for G in SMALL:
        assert len(G.subgroup_closure(generators(G))) == G.order


def brute_hom_count(A, B):
    n = 0
    for imgs in itertools.product(range(B.order), repeat=A.order):
        f = np.array(imgs)
        if all(f[A.mul(x, y)] == B.mul(f[x], f[y]) for x in range(A.order) for y in range(A.order)):
            n += 1
    return n


@pytest.mark.parametrize("A,B", [(make_cyclic(2), make_cyclic(4)), (make_cyclic(4), make_cyclic(2)),
                                 (make_cyclic(3), make_symmetric(3)),
                                 (make_symmetric(3), make_cyclic(2)),
                                 (direct_product(make_cyclic(2), make_cyclic(2)), make_cyclic(2))])
def test_homomorphism_enumeration_matches_brute_force(A, B):
    homs = all_homomorphisms(A, B)
    assert len(homs) == brute_hom_count(A, B)
    assert len({f.map.tobytes() for f in homs}) == len(homs)
    assert all(check_hom(f).ok for f in homs)


def test_automorphism_counts():
    # |Aut(Z4)| = 2, |Aut(V4)| = 6, |Aut(S3)| = 6, counted by brute force over bijections
    for G in (make_cyclic(4), direct_product(make_cyclic(2), make_cyclic(2)), make_symmetric(3)):
        brute = sum(1 for p in itertools.permutations(range(G.order))
                    if all(p[G.mul(x, y)] == G.mul(p[x], p[y])
                           for x in range(G.order) for y in range(G.order)))
        assert len(automorphisms(G)) == brute


def test_actions_are_actions():
    Z2, V4 = make_cyclic(2), direct_product(make_cyclic(2), make_cyclic(2))
    acts = all_actions(Z2, V4)
    # involutions of Aut(V4) = S3 plus the identity
    assert len(acts) == 4
    assert all(check_action(a).ok for a in acts)
    assert check_action(conjugation_action(make_symmetric(3))).ok


def test_bad_hom_and_action_are_reported():
    Z2, Z3 = make_cyclic(2), make_cyclic(3)
    f = GroupHom(Z3, Z2, [0, 1, 1], check=False)
    assert not check_hom(f).ok
    with pytest.raises(GroupError):
        GroupHom(Z3, Z2, [0, 1, 1])
    bad = GroupAction(Z2, Z3, [[0, 1, 2], [0, 1, 1]], check=False)
    assert not check_action(bad).ok


def test_hom_kernel_image_compose():
    Z4, Z2 = make_cyclic(4), make_cyclic(2)
    f = GroupHom(Z4, Z2, [0, 1, 0, 1])
    assert list(f.kernel()) == [0, 2]
    assert list(f.image()) == [0, 1]
    assert f.compose(GroupHom.identity(Z4)) == f
    assert GroupHom.trivial(Z4, Z2).is_trivial()
