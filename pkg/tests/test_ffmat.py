import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st
from sympy import GF, Poly, symbols

from cforge.errors import FormViolation, NotPrime, Singular, SizeCapExceeded
from cforge.ffmat import (
    Matrix,
    field_make,
    field_of_order,
    form_value_vanishes,
    mat_inv,
    mat_mul,
    nonzero_vectors,
    preserves_form,
    projective_points,
    symmetric_form,
    symplectic_form,
)

X = symbols("x")


def sympy_irreducible(coeffs, p):
    return Poly(list(reversed(coeffs)), X, domain=GF(p)).is_irreducible


@pytest.mark.parametrize("p,k", [(2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (5, 2), (7, 2), (2, 8)])
def test_modulus_is_least_irreducible(p, k):
    F = field_make(p, k)
    assert sympy_irreducible(F.modulus, p)
    # every monic polynomial listed before it is reducible
    for n in range(p**k):
        cand = [(n // p**i) % p for i in range(k)] + [1]
        if cand == F.modulus:
            break
        assert not sympy_irreducible(cand, p)


def test_small_fields():
    assert field_make(5, 1).q == 5
    assert field_make(2, 2).modulus == [1, 1, 1]
    assert field_make(3, 2).modulus == [1, 0, 1]
    with pytest.raises(NotPrime):
        field_make(6, 1)
    with pytest.raises(SizeCapExceeded):
        field_make(2, 21)
    with pytest.raises(NotPrime):
        field_of_order(12)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 8, 9, 16, 25, 27, 32])
def test_multiplicative_group_cyclic(q):
    F = field_of_order(q)
    w = F.primitive_element
    assert F.order_of(w) == q - 1
    seen = {F.pow(w, i) for i in range(q - 1)}
    assert seen == set(range(1, q))
    for a in range(1, q):
        assert F.mul(a, F.inv(a)) == 1
    # Frobenius is a field automorphism
    for a, b in itertools.product(range(q), repeat=2):
        assert F.frob(F.mul(a, b)) == F.mul(F.frob(a), F.frob(b))
        assert F.frob(F.add(a, b)) == F.add(F.frob(a), F.frob(b))


def test_matrix_examples():
    F = field_make(5)
    a = Matrix(F, [[1, 2], [3, 4]])
    assert mat_mul(Matrix.identity(F, 2), a) == a
    assert mat_inv(Matrix.diag(F, [2, 3])) == Matrix.diag(F, [3, 2])
    with pytest.raises(Singular):
        mat_inv(Matrix(F, [[1, 2], [2, 4]]))


def _gauss_inverse(rows, p):
    # plain Gauss-Jordan over a prime field, used as the oracle
    n = len(rows)
    m = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(rows)]
    for c in range(n):
        piv = next(r for r in range(c, n) if m[r][c] % p)
        m[c], m[piv] = m[piv], m[c]
        inv = pow(m[c][c], p - 2, p)
        m[c] = [x * inv % p for x in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [(x - f * y) % p for x, y in zip(m[r], m[c])]
    return [r[n:] for r in m]


def test_random_inverse_gf3():
    F = field_make(3)
    rng = random.Random(1)
    done = 0
    while done < 20:
        rows = [[rng.randrange(3) for _ in range(4)] for _ in range(4)]
        a = Matrix(F, rows)
        if a.det() == 0:
            continue
        done += 1
        inv = mat_inv(a)
        assert a * inv == Matrix.identity(F, 4)
        assert [list(r) for r in inv.rows] == _gauss_inverse(rows, 3)


def test_preserves_form_examples():
    F = field_make(5)
    sp = symplectic_form(F, 2)
    assert preserves_form(Matrix.identity(F, 2), sp)
    assert preserves_form(Matrix.diag(F, [2, 3]), sp)
    assert sp.gram == Matrix(F, [[0, 1], [4, 0]])
    F3 = field_make(3)
    assert not preserves_form(Matrix(F3, [[1, 1], [0, 1]]), symmetric_form(F3, 2))


def _sp_transvection(F, form, w):
    # v -> v + (v, w) w, as a matrix acting on columns
    n = form.gram.dim
    cols = []
    for i in range(n):
        e = tuple(int(i == j) for j in range(n))
        c = form.value(e, w)
        cols.append(tuple(F.add(e[j], F.mul(c, w[j])) for j in range(n)))
    return Matrix(F, [[cols[j][i] for j in range(n)] for i in range(n)])


def test_form_value_vanishes_examples():
    F = field_make(2)
    f = symplectic_form(F, 4)
    assert form_value_vanishes(Matrix.identity(F, 4), f)
    t = _sp_transvection(F, f, (1, 0, 0, 0))
    assert preserves_form(t, f)
    assert not form_value_vanishes(t, f)
    with pytest.raises(FormViolation):
        form_value_vanishes(Matrix(F, [[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]), f)


def test_vanishing_agrees_with_all_vectors():
    # the basis-plus-pairwise-sums shortcut against evaluation on all 15 vectors
    F = field_make(2)
    f = symplectic_form(F, 4)
    vecs = nonzero_vectors(F, 4)
    rng = random.Random(3)
    gens = [_sp_transvection(F, f, v) for v in vecs]
    elems = [Matrix.identity(F, 4)]
    for _ in range(200):
        elems.append(elems[-1] * rng.choice(gens))
    for a in elems:
        full = all(f.value(a.apply_col(v), v) == 0 for v in vecs)
        assert form_value_vanishes(a, f) == full


@settings(max_examples=40, deadline=None)
@given(st.lists(st.sampled_from(range(30)), min_size=1, max_size=6), st.lists(st.sampled_from(range(30)), min_size=1, max_size=6))
def test_form_preservation_closed(w1, w2):
    F = field_make(3)
    f = symplectic_form(F, 4)
    vecs = nonzero_vectors(F, 4)[:30]
    gens = [_sp_transvection(F, f, v) for v in vecs]
    a = Matrix.identity(F, 4)
    for i in w1:
        a = a * gens[i]
    b = Matrix.identity(F, 4)
    for i in w2:
        b = b * gens[i]
    assert preserves_form(a, f) and preserves_form(b, f)
    assert preserves_form(a * b, f)
    assert preserves_form(a.inverse(), f)


def test_vanishing_is_conjugation_invariant():
    F = field_make(2)
    f = symplectic_form(F, 4)
    vecs = nonzero_vectors(F, 4)
    gens = [_sp_transvection(F, f, v) for v in vecs]
    group = {Matrix.identity(F, 4)}
    frontier = list(group)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in group:
                    group.add(y)
                    nxt.append(y)
        frontier = nxt
    assert len(group) == 720
    van = [a for a in group if form_value_vanishes(a, f)]
    for a in van[:20]:
        for g in gens:
            assert form_value_vanishes(g.inverse() * a * g, f)
    # the property is not closed under products
    assert any(not form_value_vanishes(a * b, f) for a in van for b in van)


def test_projective_points_normalized():
    F = field_of_order(4)
    pts = projective_points(F, 3)
    assert len(pts) == 21
    assert all(next(x for x in v if x) == 1 for v in pts)
