"""Deterministic constructions of the finite groups used by the verifiers.

Every family is delivered as a permutation group.  Matrix families act on the
right of row vectors (v -> v A), so A -> perm(A) is a homomorphism; generators
are picked greedily from a fixed candidate list until the order reaches the
closed-form value for the family.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from importlib import resources

from .errors import BadSpec, InvariantViolation, NotInGroup, SizeCapExceeded
from .ffmat import (
    Field,
    FormSpec,
    Matrix,
    field_of_order,
    form_value_vanishes,
    hermitian_form,
    nonzero_vectors,
    normalize,
    preserves_form,
    projective_points,
    symmetric_form,
    symplectic_form,
)
from .numtheory import factorint, is_prime_power_of
from .perm import CAPS, Perm, PermGroup, derived_subgroup

MATRIX_FAMILIES = ("GL", "SL", "PGL", "PSL", "GU", "SU", "PSU", "Sp", "PSp", "SO")
FAMILIES = ("Sym", "Alt", "Cyclic", "Wreath", "Direct", "Derived", "AutExtension", "Explicit") + MATRIX_FAMILIES
_ALIASES = {"SOplus-odd": "SO", "ExplicitGens": "Explicit"}


def canonical_spec(spec: dict) -> str:
    return json.dumps(spec, sort_keys=True, separators=(",", ":"))


def _prime_power(q) -> tuple[int, int]:
    if not isinstance(q, int) or q < 2:
        raise BadSpec(f"q must be a prime power, got {q!r}")
    fs = factorint(q)
    if len(fs) != 1:
        raise BadSpec(f"q must be a prime power, got {q}")
    (p, k), = fs.items()
    return p, k


def family_order(family: str, d: int, q: int) -> int:
    """Closed-form order of a classical family."""
    if family in ("GL", "SL", "PGL", "PSL"):
        gl = q ** (d * (d - 1) // 2)
        for i in range(1, d + 1):
            gl *= q**i - 1
        return {"GL": gl, "SL": gl // (q - 1), "PGL": gl // (q - 1), "PSL": gl // (q - 1) // math.gcd(d, q - 1)}[family]
    if family in ("GU", "SU", "PSU"):
        gu = q ** (d * (d - 1) // 2)
        for i in range(1, d + 1):
            gu *= q**i - (-1) ** i
        return {"GU": gu, "SU": gu // (q + 1), "PSU": gu // (q + 1) // math.gcd(d, q + 1)}[family]
    if family in ("Sp", "PSp", "SO"):
        n = d // 2
        sp = q ** (n * n)
        for i in range(1, n + 1):
            sp *= q ** (2 * i) - 1
        if family == "PSp":
            return sp // math.gcd(2, q - 1)
        return sp
    raise BadSpec(f"no order formula for {family}")


@dataclass
class GroupMeta:
    spec: dict
    group: PermGroup
    p: int = 0
    action: str = "points"
    field: Field | None = None
    form: FormSpec | None = None
    dim: int = 0
    points: list | None = None
    gen_matrices: list | None = None
    extras: dict = dc_field(default_factory=dict)

    @property
    def order(self) -> int:
        return self.group.order()

    @property
    def family(self) -> str:
        return self.spec["family"]

    def key(self) -> str:
        return canonical_spec(self.spec)

    # -- matrix <-> permutation
    def perm_of(self, a: Matrix) -> Perm:
        idx = self.extras["index"]
        F = self.field
        if self.action == "vectors":
            return Perm([idx[a.apply_row(v)] for v in self.points])
        if self.action in ("projective", "isotropic"):
            return Perm([idx[normalize(F, a.apply_row(v))] for v in self.points])
        if self.action in ("points+hyperplanes", "vectors+duals"):
            ait = a.inverse().transpose()
            half = len(self.points) // 2
            proj = self.action == "points+hyperplanes"
            out = []
            for i, v in enumerate(self.points):
                w = (a if i < half else ait).apply_row(v[1])
                if proj:
                    w = normalize(F, w)
                out.append(idx[(v[0], w)])
            return Perm(out)
        raise BadSpec(f"no matrix action for {self.family}")

    def matrix_of(self, x: Perm) -> Matrix:
        """A matrix inducing x (unique for vector actions, up to scalars otherwise)."""
        F = self.field
        d = self.dim
        if self.action not in ("vectors", "projective", "isotropic") or F is None:
            raise BadSpec("matrix preimages need a vector or projective action")
        if not self.group.contains(x):
            raise NotInGroup("element not in group")
        idx = self.extras["index"]
        basis = [tuple(1 if i == j else 0 for j in range(d)) for i in range(d)]
        if self.action == "vectors":
            return Matrix(F, [self.points[x[idx[e]]] for e in basis])
        rows = [self.points[x[idx[e]]] for e in basis]
        ones = tuple([1] * d)
        s = self.points[x[idx[ones]]]
        lam = Matrix(F, rows).inverse().apply_row(s)
        a = Matrix(F, [[F.mul(l, c) for c in r] for l, r in zip(lam, rows)])
        if self.perm_of(a) != x:
            raise InvariantViolation("matrix recovery failed")
        return a


def _mathieu() -> dict:
    return json.loads(resources.files("cforge").joinpath("data/mathieu.json").read_text())


def _cycle(n: int) -> Perm:
    return Perm(list(range(1, n)) + [0])


def _build(gens, degree: int, target: int | None = None) -> PermGroup:
    if target is not None and target > CAPS.max_order:
        raise SizeCapExceeded(f"order {target} exceeds cap {CAPS.max_order}")
    g = PermGroup(gens, degree)
    if target is not None and g.order() != target:
        raise InvariantViolation(f"built order {g.order()} differs from formula {target}")
    return g


# ---------------------------------------------------------------- candidates

def _basis(d):
    return [tuple(1 if i == j else 0 for j in range(d)) for i in range(d)]


def _elementary(F: Field, d: int, i: int, j: int, c: int) -> Matrix:
    rows = [[1 if r == s else 0 for s in range(d)] for r in range(d)]
    rows[i][j] = c
    return Matrix(F, rows)


def _outer(F: Field, u, v) -> list[list[int]]:
    return [[F.mul(a, b) for b in v] for a in u]


def _symplectic_transvection(F: Field, form: FormSpec, v, c: int) -> Matrix:
    """Column action x -> x + c (x, v) v, i.e. I + c v (G v)^T."""
    gv = form.gram.apply_col(v)
    m = _outer(F, v, gv)
    d = len(v)
    return Matrix(F, [[F.add(1 if i == j else 0, F.mul(c, m[i][j])) for j in range(d)] for i in range(d)])


def _reflection(F: Field, v) -> Matrix:
    """x -> x - 2 (x, v)/(v, v) v for the identity symmetric form."""
    vv = 0
    for a in v:
        vv = F.add(vv, F.mul(a, a))
    c = F.div(F.neg(F.from_int(2)), vv)
    d = len(v)
    m = _outer(F, v, v)
    return Matrix(F, [[F.add(1 if i == j else 0, F.mul(c, m[i][j])) for j in range(d)] for i in range(d)])


def _small_vectors(F: Field, d: int):
    w = F.primitive_element
    out = list(_basis(d))
    for i, j in itertools.combinations(range(d), 2):
        for c in (1, w):
            v = [0] * d
            v[i] = 1
            v[j] = c
            out.append(tuple(v))
    return out


def _candidates(family: str, F: Field, d: int, form: FormSpec | None):
    w = F.primitive_element
    base = family.lstrip("P")
    if base in ("GL", "SL"):
        for c in (1, w):
            for i in range(d):
                for j in range(d):
                    if i != j:
                        yield _elementary(F, d, i, j, c)
        if base == "GL":
            yield Matrix.diag(F, [w] + [1] * (d - 1))
    elif base == "Sp":
        for v in _small_vectors(F, d):
            for c in (1, w):
                yield _symplectic_transvection(F, form, v, c)
    elif base in ("GU", "SU"):
        q0 = int(round(F.q ** 0.5))
        norm = lambda x: F.pow(x, q0 + 1)
        sig = lambda x: F.pow(x, q0)
        if base == "GU":
            yield Matrix.diag(F, [F.pow(w, q0 - 1)] + [1] * (d - 1))
        for i in range(d - 1):
            rows = [[1 if r == s else 0 for s in range(d)] for r in range(d)]
            rows[i][i], rows[i][i + 1], rows[i + 1][i], rows[i + 1][i + 1] = 0, 1, F.neg(1), 0
            yield Matrix(F, rows)
        for i in range(d - 1):
            u = F.pow(w, q0 - 1)
            yield Matrix.diag(F, [1] * i + [u, F.inv(u)] + [1] * (d - i - 2))
        blocks = 0
        for a in F.elements():
            for b in F.elements():
                if a == 0 or b == 0 or F.add(norm(a), norm(b)) != 1:
                    continue
                for i in range(d - 1):
                    rows = [[1 if r == s else 0 for s in range(d)] for r in range(d)]
                    rows[i][i], rows[i][i + 1] = a, b
                    rows[i + 1][i], rows[i + 1][i + 1] = F.neg(sig(b)), sig(a)
                    yield Matrix(F, rows)
                blocks += 1
                if blocks > 6:
                    break
            if blocks > 6:
                break
        # unitary transvections x -> x + c (x, v) v, v isotropic, c^sigma = -c
        cs = [c for c in F.elements() if c and sig(c) == F.neg(c)][:2]
        iso = [v for v in projective_points(F, d) if form.value(v, v) == 0][:40]
        for v in iso:
            vs = [sig(x) for x in v]
            for c in cs:
                m = _outer(F, v, vs)
                yield Matrix(F, [[F.add(1 if i == j else 0, F.mul(c, m[i][j])) for j in range(d)] for i in range(d)])
        # last resort for tiny fields: orthonormal frames in lexicographic order
        unit = [v for v in itertools.product(F.elements(), repeat=d) if form.value(v, v) == 1]

        def frames(rows):
            if len(rows) == d:
                yield Matrix(F, rows)
                return
            for v in unit:
                if all(form.value(v, r) == 0 for r in rows):
                    yield from frames(rows + [v])

        yield from frames([])
    elif base == "SO":
        e0 = _basis(d)[0]
        r0 = _reflection(F, e0)
        for v in _small_vectors(F, d) + [tuple([1] * d)]:
            vv = 0
            for a in v:
                vv = F.add(vv, F.mul(a, a))
            if vv:
                yield _reflection(F, v) * r0


def _accept(family: str, a: Matrix, form: FormSpec | None) -> bool:
    base = family.lstrip("P")
    if a.det() == 0:
        return False
    if base in ("SL", "SU", "SO") and a.det() != 1:
        return False
    if form is not None and not preserves_form(a, form):
        return False
    return True


def _family_form(family: str, F: Field, d: int) -> FormSpec | None:
    base = family.lstrip("P")
    if base == "Sp":
        return symplectic_form(F, d)
    if base in ("GU", "SU"):
        return hermitian_form(F, d)
    if base == "SO":
        return symmetric_form(F, d)
    return None


def _isotropic_points(F: Field, form: FormSpec, d: int):
    return [v for v in projective_points(F, d) if form.value(v, v) == 0]


def _matrix_group(spec: dict) -> GroupMeta:
    family = spec["family"]
    d, q = spec.get("d"), spec.get("q")
    if not isinstance(d, int) or d < 1:
        raise BadSpec(f"bad dimension {d!r}")
    p, k = _prime_power(q)
    base = family.lstrip("P")
    if base == "Sp" and d % 2:
        raise BadSpec("symplectic groups need even dimension")
    if base == "SO" and (d % 2 == 0 or p == 2):
        raise BadSpec("SO is supported in odd dimension over odd q only")
    if base in ("SL", "GL", "SU", "GU") and d < 2 and family.startswith("P"):
        raise BadSpec("projective group of dimension 1 is trivial")
    target = family_order(family, d, q)
    if target > CAPS.max_order:
        raise SizeCapExceeded(f"|{family}({d},{q})| = {target} exceeds cap {CAPS.max_order}")
    F = field_of_order(q * q if base in ("GU", "SU") else q)
    form = _family_form(family, F, d)
    if family.startswith("P") or base == "SO":
        if family == "PSU":
            pts, action = _isotropic_points(F, form, d), "isotropic"
        else:
            pts, action = projective_points(F, d), "projective"
    else:
        pts, action = nonzero_vectors(F, d), "vectors"
    meta = GroupMeta(dict(spec), None, p, action, F, form, d, pts, [], {"index": {v: i for i, v in enumerate(pts)}})
    if len(pts) > CAPS.max_degree:
        raise SizeCapExceeded(f"action degree {len(pts)} exceeds cap")
    g = PermGroup([], len(pts), max_order=target)
    for a in _candidates(family, F, d, form):
        if g.order() == target:
            break
        if not _accept(family, a, form):
            continue
        x = meta.perm_of(a)
        if not g.contains(x):
            g._add_generators([x])
            meta.gen_matrices.append(a)
    if g.order() != target:
        raise InvariantViolation(f"generators reached order {g.order()}, expected {target}")
    meta.group = g
    return meta


def _aut_tag(aut, spec: dict):
    # accepted spellings: "field" with k, "field-phi^k" / "field-φ^k", "graph-tau" / "graph-τ"
    if not isinstance(aut, str):
        raise BadSpec("AutExtension needs an 'aut' tag")
    aut = aut.replace("\u03c6", "phi").replace("\u03c4", "tau")
    if aut.startswith("field-phi"):
        rest = aut[len("field-phi"):].lstrip("^")
        try:
            k = int(rest) if rest not in ("", "k") else spec.get("k", 1)
        except ValueError as exc:
            raise BadSpec(f"bad field automorphism tag {aut!r}") from exc
        spec = dict(spec, k=k)
        aut = "field"
    return aut, spec


def _extension(spec: dict) -> GroupMeta:
    base_spec = spec.get("base")
    aut = spec.get("aut")
    if not isinstance(base_spec, dict):
        raise BadSpec("AutExtension needs a base spec")
    aut, spec = _aut_tag(aut, spec)
    bm = make_group(base_spec)
    if bm.family not in MATRIX_FAMILIES or bm.field is None:
        raise BadSpec("automorphisms are supported for matrix families only")
    F, d = bm.field, bm.dim
    if aut == "field":
        k = spec.get("k", 1)
        f = F.k
        if not isinstance(k, int) or k < 1 or f // math.gcd(k, f) == 1:
            raise BadSpec("field automorphism is trivial for this field")
        phi = Perm([bm.extras["index"][normalize(F, tuple(F.frob(c, k) for c in v)) if bm.action != "vectors"
                                         else tuple(F.frob(c, k) for c in v)] for v in bm.points])
        g = _build(list(bm.group.gens) + [phi], bm.group.degree, bm.order * (f // math.gcd(k, f)))
        meta = GroupMeta(dict(spec), g, bm.p, bm.action, F, bm.form, d, bm.points, bm.gen_matrices, dict(bm.extras))
        meta.extras["aut"] = phi
        return meta
    if aut == "diagonal":
        if bm.family not in ("PSL", "SL"):
            raise BadSpec("diagonal extension needs a PSL or SL base")
        w = F.primitive_element
        x = bm.perm_of(Matrix.diag(F, [w] + [1] * (d - 1)))
        target = family_order("PGL" if bm.family == "PSL" else "GL", d, F.q)
        g = _build(list(bm.group.gens) + [x], bm.group.degree, target)
        meta = GroupMeta(dict(spec), g, bm.p, bm.action, F, None, d, bm.points, bm.gen_matrices + [None], dict(bm.extras))
        return meta
    if aut == "graph-tau":
        if bm.family not in ("GL", "SL", "PGL", "PSL") or d < 2:
            raise BadSpec("graph automorphism needs a linear base of dimension >= 2")
        proj = bm.action == "projective"
        pts = [(0, v) for v in bm.points] + [(1, v) for v in bm.points]
        idx = {v: i for i, v in enumerate(pts)}
        meta = GroupMeta(dict(spec), None, bm.p, "points+hyperplanes" if proj else "vectors+duals", F, None, d, pts,
                         list(bm.gen_matrices), {"index": idx, "base": bm})
        j = symplectic_form(F, d).gram if d % 2 == 0 else Matrix.identity(F, d)
        jinv = j.inverse()
        img = []
        for side, v in pts:
            wv = (j if side == 0 else jinv).apply_row(v)
            if proj:
                wv = normalize(F, wv)
            img.append(idx[(1 - side, wv)])
        tau = Perm(img)
        gens = [meta.perm_of(a) for a in bm.gen_matrices] + [tau]
        meta.group = _build(gens, len(pts), 2 * bm.order)
        meta.extras["tau"] = tau
        meta.extras["gram_J"] = j
        return meta
    raise BadSpec(f"unknown automorphism tag {aut!r}")


def _wreath(spec: dict) -> GroupMeta:
    inner = make_group(spec.get("inner", {}))
    m = spec.get("m")
    if not isinstance(m, int) or m < 1:
        raise BadSpec("wreath needs a cycle length m >= 1")
    n = inner.group.degree
    gens = [Perm(list(g.images) + list(range(n, n * m))) for g in inner.group.gens]
    if m > 1:
        gens.append(Perm([(i + n) % (n * m) for i in range(n * m)]))
    g = _build(gens, n * m, inner.order**m * m)
    return GroupMeta(dict(spec), g, 0, "copies", extras={"inner": inner})


def _direct(spec: dict) -> GroupMeta:
    facs = spec.get("factors")
    if not isinstance(facs, list) or not facs:
        raise BadSpec("Direct needs a non-empty factor list")
    metas = [make_group(f) for f in facs]
    degree = sum(mm.group.degree for mm in metas)
    gens, off = [], 0
    for mm in metas:
        n = mm.group.degree
        for g in mm.group.gens:
            gens.append(Perm(list(range(off)) + [x + off for x in g.images] + list(range(off + n, degree))))
        off += n
    target = 1
    for mm in metas:
        target *= mm.order
    return GroupMeta(dict(spec), _build(gens, degree, target), 0, "copies", extras={"factors": metas})


def _spec_n(spec: dict, lo: int) -> int:
    n = spec.get("n")
    if not isinstance(n, int) or n < lo:
        raise BadSpec(f"{spec['family']} needs integer n >= {lo}")
    return n


def make_group(spec: dict) -> GroupMeta:
    """Build the group described by a JSON-style spec."""
    if not isinstance(spec, dict) or "family" not in spec:
        raise BadSpec("group spec must be an object with a 'family' key")
    spec = dict(spec)
    spec["family"] = _ALIASES.get(spec["family"], spec["family"])
    return _make_cached(canonical_spec(spec))


@lru_cache(maxsize=64)
def _make_cached(key: str) -> GroupMeta:
    spec = json.loads(key)
    fam = spec["family"]
    if fam == "Sym":
        n = _spec_n(spec, 1)
        gens = [_cycle(n), Perm.from_cycles(n, [0, 1])] if n > 1 else []
        return GroupMeta(spec, _build(gens, n, math.factorial(n)))
    if fam == "Alt":
        n = _spec_n(spec, 1)
        gens = [Perm.from_cycles(n, [0, 1, i]) for i in range(2, n)]
        return GroupMeta(spec, _build(gens, n, max(1, math.factorial(n) // 2)))
    if fam == "Cyclic":
        n = _spec_n(spec, 1)
        return GroupMeta(spec, _build([_cycle(n)] if n > 1 else [], n, n))
    if fam == "Explicit":
        data = _mathieu()
        name = spec.get("name")
        if name not in data:
            gens = spec.get("generators")
            if not isinstance(gens, list) or not gens:
                raise BadSpec(f"unknown explicit group {name!r}")
            try:
                perms = [Perm(g) for g in gens]
            except ValueError as exc:
                raise BadSpec(str(exc)) from exc
            return GroupMeta(spec, _build(perms, perms[0].degree))
        entry = data[name]
        return GroupMeta(spec, _build([Perm(g) for g in entry["generators"]], entry["degree"], entry["order"]))
    if fam in MATRIX_FAMILIES:
        return _matrix_group(spec)
    if fam == "AutExtension":
        return _extension(spec)
    if fam == "Wreath":
        return _wreath(spec)
    if fam == "Direct":
        return _direct(spec)
    if fam == "Derived":
        bm = make_group(spec.get("base", {}))
        g = derived_subgroup(bm.group)
        return GroupMeta(spec, g, bm.p, bm.action, bm.field, bm.form, bm.dim, bm.points, None, dict(bm.extras))
    raise BadSpec(f"unknown family {fam!r}")


# ---------------------------------------------------------------- element data

def classify_element(meta: GroupMeta, x: Perm) -> str:
    if not meta.group.contains(x):
        raise NotInGroup("element not in group")
    if meta.p == 0:
        return "na"
    o = x.order()
    if o == 1 or o % meta.p:
        return "semisimple"
    return "unipotent" if is_prime_power_of(o, meta.p) else "mixed"


def special_element(meta: GroupMeta, tag: str) -> Perm:
    fam = meta.family
    F, d = meta.field, meta.dim
    if tag == "graph-involution-class-rep":
        if "tau" not in meta.extras:
            raise BadSpec("no graph automorphism in this group")
        return meta.extras["tau"]
    if F is None:
        raise BadSpec(f"tag {tag!r} needs a matrix family")
    base = fam if fam != "AutExtension" else meta.extras.get("base", meta).family
    kind = base.lstrip("P")
    if tag == "transvection":
        if kind == "Sp":
            a = _symplectic_transvection(F, meta.form, _basis(d)[0], 1)
        elif kind in ("GL", "SL"):
            a = _elementary(F, d, 0, 1, 1)
        else:
            raise BadSpec(f"no canonical transvection for {base}")
    elif tag == "a2-involution":
        if kind != "Sp" or F.p != 2 or d < 4:
            raise BadSpec("a2-involution needs Sp(2n, q) with q even and 2n >= 4")
        # I + N with N x = (x, w') w + (x, w) w' for perpendicular w, w'; a plain
        # product t_w t_w' would give (a v, v) = (v, w + w')^2, which is not zero
        e = _basis(d)
        gram = meta.form.gram
        w, w2 = e[0], e[1]
        m1 = _outer(F, w, gram.apply_col(w2))
        m2 = _outer(F, w2, gram.apply_col(w))
        a = Matrix(F, [[F.add(1 if i == j else 0, F.add(m1[i][j], m2[i][j])) for j in range(d)] for i in range(d)])
        if not form_value_vanishes(a, meta.form):
            raise InvariantViolation("a2-involution must satisfy the form condition")
    elif tag == "involution":
        if kind != "Sp" or F.p == 2:
            raise BadSpec("involution tag needs Sp(2n, q) with q odd")
        m1 = F.neg(1)
        a = Matrix.diag(F, [m1] + [1] * (d - 2) + [m1])
    elif tag == "pseudoreflection-image":
        if kind not in ("GL", "PGL"):
            raise BadSpec("pseudoreflections need a GL or PGL base")
        a = Matrix.diag(F, [F.primitive_element] + [1] * (d - 1))
    else:
        raise BadSpec(f"unknown element tag {tag!r}")
    if meta.form is not None and not preserves_form(a, meta.form):
        raise InvariantViolation("canonical element leaves the form")
    x = meta.perm_of(a)
    if not meta.group.contains(x):
        raise BadSpec(f"tag {tag!r} is not an element of {fam}")
    return x


def zsigmondy(q: int, n: int) -> int | None:
    """Least prime l dividing q^n - 1 with multiplicative order of q mod l equal to n."""
    if q < 2 or n < 2:
        raise ValueError("need q >= 2 and n >= 2")
    for l in factorint(q**n - 1):
        if q % l == 0:
            continue
        o, r = 1, q % l
        while r != 1:
            r = r * q % l
            o += 1
        if o == n:
            return l
    return None


def is_simple_by_closure(meta: GroupMeta, table=None) -> bool:
    """Non-abelian simplicity: every nontrivial class normally generates G."""
    from .classes import conjugacy_classes
    from .perm import normal_closure

    t = table or conjugacy_classes(meta.group)
    if len(t) == t.order:
        return False
    return all(normal_closure(meta.group, [r]).order() == t.order for r in t.reps[1:])
