import random

import pytest

import oracles
from cforge.errors import BadSpec, NotInGroup, SizeCapExceeded
from cforge.ffmat import form_value_vanishes, preserves_form
from cforge.perm import Perm
from cforge.zoo import classify_element, family_order, make_group, special_element, zsigmondy

ORDERS = [
    ({"family": "GL", "d": 2, "q": 4}, 180),
    ({"family": "SL", "d": 2, "q": 5}, 120),
    ({"family": "PGL", "d": 2, "q": 5}, 120),
    ({"family": "PSL", "d": 2, "q": 7}, 168),
    ({"family": "PSL", "d": 3, "q": 2}, 168),
    ({"family": "PSL", "d": 4, "q": 2}, 20160),
    ({"family": "GU", "d": 2, "q": 2}, 18),
    ({"family": "PSU", "d": 3, "q": 3}, 6048),
    ({"family": "Sp", "d": 4, "q": 2}, 720),
    ({"family": "PSp", "d": 4, "q": 3}, 25920),
    ({"family": "SO", "d": 3, "q": 3}, 24),
    ({"family": "Alt", "n": 6}, 360),
    ({"family": "Sym", "n": 5}, 120),
    ({"family": "Cyclic", "n": 9}, 9),
    ({"family": "Wreath", "inner": {"family": "Alt", "n": 5}, "m": 2}, 7200),
    ({"family": "Direct", "factors": [{"family": "Alt", "n": 5}, {"family": "Cyclic", "n": 5}]}, 300),
    ({"family": "Derived", "base": {"family": "Sp", "d": 4, "q": 2}}, 360),
    ({"family": "Explicit", "name": "M11"}, 7920),
    ({"family": "AutExtension", "base": {"family": "PSL", "d": 2, "q": 8}, "aut": "field-phi^1"}, 1512),
    ({"family": "AutExtension", "base": {"family": "PSL", "d": 2, "q": 9}, "aut": "diagonal"}, 720),
    ({"family": "AutExtension", "base": {"family": "GL", "d": 2, "q": 4}, "aut": "graph-tau"}, 360),
]


@pytest.mark.parametrize("spec,order", ORDERS, ids=lambda x: x["family"] if isinstance(x, dict) else str(x))
def test_orders(spec, order):
    assert make_group(spec).order == order


def test_order_formula_small_cases():
    # brute-force count of invertible 2x2 and 3x3 matrices over GF(2), GF(3)
    import itertools

    def count(d, p):
        n = 0
        for entries in itertools.product(range(p), repeat=d * d):
            rows = [entries[i * d:(i + 1) * d] for i in range(d)]
            m = [list(r) for r in rows]
            det_nonzero = _rank(m, p) == d
            n += det_nonzero
        return n

    assert family_order("GL", 2, 3) == count(2, 3)
    assert family_order("GL", 3, 2) == count(3, 2)


def _rank(m, p):
    m = [r[:] for r in m]
    rank = 0
    for c in range(len(m[0])):
        piv = next((r for r in range(rank, len(m)) if m[r][c] % p), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][c], p - 2, p)
        m[rank] = [x * inv % p for x in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][c]:
                f = m[r][c]
                m[r] = [(x - f * y) % p for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


@pytest.mark.parametrize("spec", [{"family": "Sp", "d": 4, "q": 3}, {"family": "GU", "d": 3, "q": 2}, {"family": "SO", "d": 3, "q": 5}])
def test_generators_preserve_form(spec):
    m = make_group(spec)
    assert m.gen_matrices
    for a in m.gen_matrices:
        assert preserves_form(a, m.form)


def test_matrix_roundtrip():
    m = make_group({"family": "Sp", "d": 4, "q": 3})
    rng = random.Random(4)
    for _ in range(10):
        x = m.group.random_element(rng)
        a = m.matrix_of(x)
        assert preserves_form(a, m.form)
        assert m.perm_of(a) == x
    with pytest.raises(NotInGroup):
        m.matrix_of(Perm.from_cycles(m.group.degree, (0, 1)))


def test_special_elements():
    sp = make_group({"family": "Sp", "d": 4, "q": 2})
    t = special_element(sp, "transvection")
    a2 = special_element(sp, "a2-involution")
    assert t.order() == 2 and a2.order() == 2
    assert form_value_vanishes(sp.matrix_of(a2), sp.form)
    assert not form_value_vanishes(sp.matrix_of(t), sp.form)
    assert classify_element(sp, t) == "unipotent"
    sp3 = make_group({"family": "Sp", "d": 4, "q": 3})
    inv = special_element(sp3, "involution")
    assert classify_element(sp3, inv) == "semisimple"
    with pytest.raises(BadSpec):
        special_element(sp3, "a2-involution")
    gl = make_group({"family": "AutExtension", "base": {"family": "GL", "d": 2, "q": 4}, "aut": "graph-tau"})
    tau = special_element(gl, "graph-involution-class-rep")
    assert tau.order() == 2 and gl.extras["base"].group.degree != gl.group.degree


def test_classify_mixed():
    m = make_group({"family": "PSL", "d": 2, "q": 9})
    rng = random.Random(0)
    kinds = {classify_element(m, m.group.random_element(rng)) for _ in range(200)}
    assert kinds <= {"semisimple", "unipotent", "mixed"}
    assert "unipotent" in kinds and "semisimple" in kinds
    assert classify_element(make_group({"family": "Alt", "n": 5}), Perm.identity(5)) == "na"


def test_aut_spellings_agree():
    base = {"family": "PSL", "d": 2, "q": 8}
    orders = {make_group({"family": "AutExtension", "base": base, "aut": a}).order for a in ("field-phi^1", "field-φ^1")}
    orders.add(make_group({"family": "AutExtension", "base": base, "aut": "field-phi", "k": 1}).order)
    assert orders == {1512}
    g1 = make_group({"family": "AutExtension", "base": {"family": "GL", "d": 2, "q": 4}, "aut": "graph-τ"})
    assert g1.order == 360


def test_bad_specs():
    for spec in ({"family": "Nope"}, {"family": "PSL", "d": 2, "q": 6}, {"family": "Sp", "d": 3, "q": 3},
                 {"family": "AutExtension", "base": {"family": "PSL", "d": 2, "q": 7}, "aut": "field-phi^1"}, {}):
        with pytest.raises(BadSpec):
            make_group(spec)
    with pytest.raises(SizeCapExceeded):
        make_group({"family": "GL", "d": 6, "q": 5})


def test_zsigmondy_examples():
    assert zsigmondy(2, 4) == 5
    assert zsigmondy(2, 6) is None
    assert zsigmondy(3, 2) is None
    assert zsigmondy(5, 3) == 31
    for q in range(2, 8):
        for n in range(2, 8):
            assert zsigmondy(q, n) == oracles.zsigmondy(q, n)
    with pytest.raises(ValueError):
        zsigmondy(2, 1)
