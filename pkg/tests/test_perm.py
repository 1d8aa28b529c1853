import random

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from cforge.backtrack import centralizer, conjugating_element, conjugacy_class
from cforge.errors import NotInGroup, SizeCapExceeded
from cforge.perm import Perm, bsgs_build, derived_subgroup, generated_subgroup, is_solvable, normal_closure

perms7 = st.permutations(list(range(7))).map(Perm)


def sym(n):
    return bsgs_build([Perm.from_cycles(n, (0, 1)), Perm.from_cycles(n, tuple(range(n)))])


def test_right_action():
    a = Perm([1, 0, 2])
    b = Perm([0, 2, 1])
    # apply a first, then b
    assert (a * b).images == (2, 0, 1)
    assert a.conj(b) == b.inverse() * a * b


@given(perms7, perms7, perms7)
def test_group_laws(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * a.inverse() == Perm.identity(7)
    assert (a * b).inverse() == b.inverse() * a.inverse()
    assert a ** a.order() == Perm.identity(7)
    assert a.commutator(b) == a.inverse() * b.inverse() * a * b
    assert a.cycle_type() == a.conj(b).cycle_type()


@pytest.mark.parametrize("n,order", [(3, 6), (4, 24), (5, 120), (6, 720), (8, 40320)])
def test_symmetric_orders(n, order):
    assert sym(n).order() == order


def test_orders_match_enumeration():
    rng = random.Random(5)
    for _ in range(10):
        gens = [Perm(rng.sample(range(6), 6)) for _ in range(2)]
        g = bsgs_build(gens, 6)
        elems = oracles.elements([x.images for x in gens], 6)
        assert g.order() == len(elems)
        assert {x.images for x in g.elements()} == elems
        outside = Perm(rng.sample(range(6), 6))
        assert g.contains(outside) == (outside.images in elems)


@settings(max_examples=25, deadline=None)
@given(st.permutations(list(range(6))))
def test_centralizer_brute_force(img):
    g = sym(6)
    x = Perm(img)
    c = centralizer(g, x)
    brute = sum(1 for y in g.elements() if x * y == y * x)
    assert c.order() == brute
    assert all(x * s == s * x for s in c.gens)


def test_transporter():
    g = sym(6)
    rng = random.Random(2)
    for _ in range(20):
        x = g.random_element(rng)
        h = g.random_element(rng)
        y = x.conj(h)
        t = conjugating_element(g, x, y)
        assert t is not None and x.conj(t) == y
    a5 = bsgs_build([Perm.from_cycles(5, (0, 1, 2)), Perm.from_cycles(5, (0, 1, 2, 3, 4))])
    # the two 5-cycle classes of A5 do not fuse
    x = Perm.from_cycles(5, (0, 1, 2, 3, 4))
    assert conjugating_element(a5, x, x ** 2) is None
    assert len(conjugacy_class(a5, x)) == 12


def test_subgroup_constructions():
    s5 = sym(5)
    a5 = derived_subgroup(s5)
    assert a5.order() == 60
    assert derived_subgroup(a5).order() == 60
    assert not is_solvable(s5)
    assert is_solvable(sym(4))
    v4 = normal_closure(sym(4), [Perm.from_cycles(4, (0, 1), (2, 3))])
    assert v4.order() == 4
    with pytest.raises(NotInGroup):
        generated_subgroup(a5, [Perm.from_cycles(5, (0, 1))])


def test_order_cap():
    with pytest.raises(SizeCapExceeded):
        bsgs_build([Perm.from_cycles(9, (0, 1)), Perm.from_cycles(9, tuple(range(9)))], max_order=1000)


def test_cycles_and_support():
    x = Perm.from_cycles(6, (0, 2, 4), (1, 3))
    assert sorted(x.cycle_type()) == [1, 2, 3]
    assert x.order() == 6
    assert x.support() == [0, 1, 2, 3, 4]
    assert x.fixed_points() == 1
    assert Perm(x.to_json()) == x
