"""Irreducible character tables by the Dixon-Schneider method.

Class sums K_j act on the centre of the group algebra; the central characters
w_chi = (|C_s| chi(g_s) / chi(1))_s are the common eigenvectors of the class
matrices (M_j)[r][s] = c_jrs.  Everything runs modulo a prime l = 1 (mod e)
with l > 2 sqrt|G|, and values are lifted back to Z[zeta_e] through the
eigenvalue multiplicities of each element.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from .classes import ClassTable, FusionMap, conjugacy_classes
from .cyclo import Cyclo, as_cyclo, verification_primes
from .errors import InvariantViolation, SizeCapExceeded, SteinbergNotIdentified
from .numtheory import p_part, primes_one_mod, root_of_unity_mod, sqrt_mod_small
from .perm import PermGroup

MAX_CLASSES = 200


def _charpoly_mod(a: list[list[int]], p: int) -> list[int]:
    """Characteristic polynomial (constant term first) via Hessenberg reduction."""
    n = len(a)
    h = [row[:] for row in a]
    for m in range(1, n - 1):
        piv = next((i for i in range(m, n) if h[i][m - 1] % p), None)
        if piv is None:
            continue
        if piv != m:
            h[piv], h[m] = h[m], h[piv]
            for row in h:
                row[piv], row[m] = row[m], row[piv]
        inv = pow(h[m][m - 1], p - 2, p)
        for i in range(m + 1, n):
            u = h[i][m - 1] * inv % p
            if u:
                hm, hi = h[m], h[i]
                for c in range(n):
                    hi[c] = (hi[c] - u * hm[c]) % p
                for row in h:
                    row[m] = (row[m] + u * row[i]) % p
    # recurrence on leading principal submatrices (1-based in the usual statement)
    polys = [[1]]
    for m in range(1, n + 1):
        prev = polys[m - 1]
        cur = [0] + prev  # x * p_{m-1}
        hmm = h[m - 1][m - 1]
        for i, c in enumerate(prev):
            cur[i] = (cur[i] - hmm * c) % p
        t = 1
        for i in range(1, m):
            t = t * h[m - i][m - i - 1] % p
            coef = h[m - i - 1][m - 1] * t % p
            if coef:
                for idx, c in enumerate(polys[m - i - 1]):
                    cur[idx] = (cur[idx] - coef * c) % p
        polys.append(cur)
    return polys[n]


def _roots_mod(poly: list[int], p: int) -> list[int]:
    out = []
    rev = poly[::-1]
    for x in range(p):
        acc = 0
        for c in rev:
            acc = (acc * x + c) % p
        if acc == 0:
            out.append(x)
    return out


def _nullspace_mod(a: list[list[int]], p: int) -> list[list[int]]:
    rows = [r[:] for r in a]
    n = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [v * inv % p for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(v - f * w) % p for v, w in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = -rows[i][f] % p
        basis.append(v)
    return basis


def _echelon(vectors: list[list[int]], p: int):
    """Reduced row echelon basis and its pivot columns."""
    rows = [v[:] for v in vectors]
    n = len(rows[0])
    out, pivots = [], []
    for c in range(n):
        piv = next((i for i, v in enumerate(rows) if v[c] % p), None)
        if piv is None:
            continue
        v = rows.pop(piv)
        inv = pow(v[c], p - 2, p)
        v = [x * inv % p for x in v]
        for lst in (rows, out):
            for i, w in enumerate(lst):
                if w[c]:
                    f = w[c]
                    lst[i] = [(x - f * y) % p for x, y in zip(w, v)]
        out.append(v)
        pivots.append(c)
    return out, pivots


class CharTable:
    """Exact character table; ``values[chi][k]`` is a Cyclo of conductor ``e``."""

    def __init__(self, classes: ClassTable, values: list[list[Cyclo]], ell: int):
        self.classes = classes
        self.values = values
        self.e = classes.exponent()
        self.ell = ell
        self.primes = verification_primes(self.e)
        self.degrees = [row[0].rational() for row in values]
        self._mod: dict[int, list[list[int]]] = {}

    def __len__(self):
        return len(self.values)

    @property
    def order(self) -> int:
        return self.classes.order

    def modular(self, p: int) -> list[list[int]]:
        m = self._mod.get(p)
        if m is None:
            m = self._mod[p] = [[v.eval_mod(p) for v in row] for row in self.values]
        return m

    def check_orthogonality(self, columns=None) -> bool:
        """Both orthogonality relations at each verification prime.

        ``columns`` restricts the column relation to the given class indices
        (used for spot checks); rows are always checked in full.
        """
        t = self.classes
        k = len(t)
        n = t.order
        inv = t.inverse_map
        cols = range(k) if columns is None else columns
        for p in self.primes:
            v = self.modular(p)
            if len(v) != k:
                return False
            for a in range(k):
                for b in range(a, k):
                    s = sum(t.sizes[s_] * v[a][s_] * v[b][inv[s_]] for s_ in range(k)) % p
                    if s != (n % p if a == b else 0):
                        return False
            for i in cols:
                for j in range(k):
                    s = sum(v[c][i] * v[c][inv[j]] for c in range(k)) % p
                    if s != (t.centralizer_orders[i] % p if i == j else 0):
                        return False
        return True

    def check_degrees(self) -> bool:
        n = self.order
        return sum(d * d for d in self.degrees) == n and all(n % d == 0 for d in self.degrees)

    def to_json(self) -> dict:
        return {
            "order": str(self.order),
            "conductor": self.e,
            "dixon_prime": self.ell,
            "verification_primes": list(self.primes),
            "degrees": self.degrees,
            "mults": [[v.mults for v in row] for row in self.values],
        }

    @classmethod
    def from_json(cls, classes: ClassTable, data: dict) -> "CharTable":
        e = data["conductor"]
        if e != classes.exponent():
            raise InvariantViolation("stored conductor disagrees with the class table")
        vals = [[Cyclo(e, m) for m in row] for row in data["mults"]]
        return cls(classes, vals, data["dixon_prime"])


def dixon_prime(order: int, e: int) -> int:
    return primes_one_mod(e, isqrt(4 * order), 1)[0]


def character_table(g, seed: int = 0) -> CharTable:
    """Full irreducible table of a PermGroup (or of an existing ClassTable)."""
    from .algebra import product_histogram

    t = g if isinstance(g, ClassTable) else conjugacy_classes(g, seed=seed)
    k = len(t)
    if k > MAX_CLASSES:
        raise SizeCapExceeded(f"{k} classes exceed the table cap {MAX_CLASSES}")
    n = t.order
    e = t.exponent()
    ell = dixon_prime(n, e)
    sizes = t.sizes

    rows: dict[tuple[int, int], list[int]] = {}

    def mrow(j: int, r: int) -> list[int]:
        key = (j, r)
        if key not in rows:
            out = [0] * k
            for s, cnt in product_histogram(t, j, t.reps[r]).items():
                num = sizes[r] * cnt
                if num % sizes[s]:
                    raise InvariantViolation("class matrix entry is not integral")
                out[s] = num // sizes[s]
            rows[key] = out
        return rows[key]

    spaces = [[[1 if i == c else 0 for i in range(k)] for c in range(k)]]
    done: list[list[int]] = []
    order = sorted(range(1, k), key=lambda j: (sizes[j], j))
    for j in order:
        if not spaces:
            break
        nxt = []
        for basis in spaces:
            basis, piv = _echelon(basis, ell)
            d = len(basis)
            mr = {pl: mrow(j, pl) for pl in piv}
            # R[l][i] = (M_j v_i)[p_l]
            R = [[sum(a * b for a, b in zip(mr[pl], v)) % ell for v in basis] for pl in piv]
            roots = _roots_mod(_charpoly_mod(R, ell), ell)
            pieces = []
            for lam in roots:
                shifted = [[(R[a][b] - (lam if a == b else 0)) % ell for b in range(d)] for a in range(d)]
                coords = _nullspace_mod(shifted, ell)
                if coords:
                    pieces.append([[sum(ci * v[s] for ci, v in zip(cv, basis)) % ell for s in range(k)] for cv in coords])
            if sum(len(pc) for pc in pieces) != d:
                raise InvariantViolation("class matrix restriction is not split semisimple mod l")
            for pc in pieces:
                (done if len(pc) == 1 else nxt).append(pc if len(pc) > 1 else pc[0])
        spaces = nxt
    if spaces:
        raise InvariantViolation("class matrices failed to separate the characters")
    if len(done) != k:
        raise InvariantViolation(f"found {len(done)} characters for {k} classes")

    inv = t.inverse_map
    z = root_of_unity_mod(e, ell)
    table = []
    for w in done:
        c0 = pow(w[0], ell - 2, ell)
        w = [x * c0 % ell for x in w]
        ssum = sum(w[s] * w[inv[s]] * pow(sizes[s], ell - 2, ell) for s in range(k)) % ell
        d2 = n % ell * pow(ssum, ell - 2, ell) % ell
        d = sqrt_mod_small(d2, ell, isqrt(n))
        if d is None or n % d:
            raise InvariantViolation("no admissible degree for an eigenvector")
        chi = [w[s] * d % ell * pow(sizes[s], ell - 2, ell) % ell for s in range(k)]
        row = []
        for s in range(k):
            o = t.fps[s][0]
            zo = pow(z, e // o, ell)
            vals = [chi[t.power_class(s, u)] for u in range(o)]
            inv_o = pow(o, ell - 2, ell)
            terms = {}
            for i in range(o):
                zi = pow(zo, (o - i) % o, ell)
                acc = 0
                zp = 1
                for u in range(o):
                    acc += vals[u] * zp
                    zp = zp * zi % ell
                m = acc % ell * inv_o % ell
                if m > d:
                    raise InvariantViolation("eigenvalue multiplicity out of range")
                if m:
                    terms[i * (e // o)] = m
            if sum(terms.values()) != d:
                raise InvariantViolation("multiplicities do not sum to the degree")
            row.append(Cyclo(e, terms=terms))
        table.append((d, row))

    def key(item):
        d, row = item
        trivial = d == 1 and all(v.terms == {0: 1} for v in row)
        return (not trivial, d, tuple(tuple(sorted(v.terms.items())) for v in row))

    table.sort(key=key)
    ct = CharTable(t, [row for _, row in table], ell)
    if not (ct.check_degrees() and ct.check_orthogonality()):
        raise InvariantViolation("computed table fails orthogonality")
    return ct


def inner_product(t: CharTable, phi, psi) -> Fraction:
    """(1/|G|) sum_k |C_k| phi(g_k) psi(g_k^-1), exactly."""
    ct = t.classes
    e = t.e
    acc = Cyclo(e)
    for s in range(len(ct)):
        acc = acc + as_cyclo(e, phi[s]) * as_cyclo(e, psi[ct.inverse_map[s]]) * ct.sizes[s]
    r = acc.rational()
    if r is None:
        raise ValueError("inner product is not rational")
    return Fraction(r, ct.order)


def class_function_inner(classes: ClassTable, e: int, phi, psi) -> Fraction:
    acc = Cyclo(e)
    for s in range(len(classes)):
        acc = acc + as_cyclo(e, phi[s]) * as_cyclo(e, psi[classes.inverse_map[s]]) * classes.sizes[s]
    r = acc.rational()
    if r is None:
        raise ValueError("inner product is not rational")
    return Fraction(r, classes.order)


def restrict(t: CharTable, fusion: FusionMap, chi: int) -> list:
    return [t.values[chi][k] for k in fusion.images]


def restriction_is_irreducible(gtab: CharTable, h: PermGroup, fusion: FusionMap, chi: int) -> bool:
    ht = fusion.subgroup
    if ht.group is not h and not ht.group.same_group(h):
        raise ValueError("fusion map belongs to a different subgroup")
    res = restrict(gtab, fusion, chi)
    e = gtab.e
    # values live in Q(zeta_e); the subgroup exponent divides e
    res_inv = [res[ht.inverse_map[s]] for s in range(len(ht))]
    acc = Cyclo(e)
    for s in range(len(ht)):
        acc = acc + res[s] * res_inv[s] * ht.sizes[s]
    r = acc.rational()
    if r is None:
        raise InvariantViolation("norm of a restricted character is irrational")
    return Fraction(r, ht.order) == 1


def fixed_point_character(g, degree: int | None = None) -> list[int]:
    """Fixed-point counts of the class representatives in the given action."""
    t = g if isinstance(g, ClassTable) else conjugacy_classes(g)
    if degree is not None and degree != t.group.degree:
        raise ValueError("action degree does not match the group")
    return [r.fixed_points() for r in t.reps]


def steinberg_character(t: CharTable, p: int) -> int:
    ct = t.classes
    target = p_part(t.order, p)
    hits = []
    for chi, d in enumerate(t.degrees):
        if d != target:
            continue
        if all(t.values[chi][s].rational() == 0 for s in range(len(ct)) if ct.fps[s][0] % p == 0):
            hits.append(chi)
    if len(hits) != 1:
        raise SteinbergNotIdentified(f"{len(hits)} candidate rows of degree {target}")
    return hits[0]


def nonconstancy_witness(t: CharTable, chi: int, support) -> tuple[int, int] | None:
    ks = [k for k, _ in support.entries]
    if not ks:
        return None
    first = t.values[chi][ks[0]]
    for k in ks[1:]:
        if t.values[chi][k] != first:
            return (ks[0], k)
    return None
