"""Finite fields GF(p^k), square matrices over them, and classical forms.

Field elements are plain ints in ``range(q)``: the base-p digits of the int are
the coefficients (low degree first) of a polynomial reduced modulo the field's
defining polynomial.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .errors import FormViolation, NotPrime, Singular, SizeCapExceeded
from .numtheory import is_prime, prime_divisors

MAX_FIELD_SIZE = 2**20
_TABLE_LIMIT = 64


def _poly_divides(f: list[int], g: list[int], p: int) -> bool:
    """True iff monic f divides g over GF(p) (coefficient lists, low degree first)."""
    r = list(g)
    df = len(f) - 1
    while len(r) - 1 >= df:
        c = r[-1]
        if c:
            shift = len(r) - 1 - df
            for i, fi in enumerate(f):
                r[shift + i] = (r[shift + i] - c * fi) % p
        r.pop()
        while r and r[-1] == 0:
            r.pop()
    return not any(r)


def _monic_polys(p: int, d: int):
    """Monic degree-d polynomials in increasing order of their lower coefficients."""
    for n in range(p**d):
        coeffs = []
        for _ in range(d):
            coeffs.append(n % p)
            n //= p
        yield coeffs + [1]


def is_irreducible(f: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg(f)/2."""
    d = len(f) - 1
    if d <= 1:
        return d == 1
    for e in range(1, d // 2 + 1):
        for g in _monic_polys(p, e):
            if _poly_divides(g, f, p):
                return False
    return True


class Field:
    """GF(p^k) with a deterministic modulus: the least monic irreducible of degree k."""

    def __init__(self, p: int, k: int = 1):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be >= 1")
        if p**k > MAX_FIELD_SIZE:
            raise SizeCapExceeded(f"GF({p}^{k}) exceeds 2^20 elements")
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = next(f for f in _monic_polys(p, k) if is_irreducible(f, p))
        self._inv_cache: dict[int, int] = {}
        if self.q <= _TABLE_LIMIT:
            self._add = [[self._add_raw(a, b) for b in range(self.q)] for a in range(self.q)]
            self._mul = [[self._mul_raw(a, b) for b in range(self.q)] for a in range(self.q)]
        else:
            self._add = self._mul = None

    def __repr__(self):
        return f"GF({self.q})"

    def __eq__(self, other):
        return isinstance(other, Field) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self):
        return hash((self.p, self.k))

    # -- digit <-> polynomial helpers
    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return out

    def _undigits(self, ds) -> int:
        n = 0
        for c in reversed(ds):
            n = n * self.p + c
        return n

    def _add_raw(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return self._undigits([(x + y) % self.p for x, y in zip(self._digits(a), self._digits(b))])

    def _mul_raw(self, a: int, b: int) -> int:
        p, k = self.p, self.k
        if k == 1:
            return a * b % p
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        f = self.modulus
        for top in range(2 * k - 2, k - 1, -1):
            c = prod[top]
            if c:
                for i in range(k + 1):
                    prod[top - k + i] = (prod[top - k + i] - c * f[i]) % p
        return self._undigits(prod[:k])

    # -- public arithmetic
    def add(self, a: int, b: int) -> int:
        return self._add[a][b] if self._add else self._add_raw(a, b)

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.k == 1:
            return (-a) % self.p
        return self._undigits([(-x) % self.p for x in self._digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b] if self._mul else self._mul_raw(a, b)

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.inv(a), -n
        r = 1
        while n:
            if n & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            n >>= 1
        return r

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        r = self._inv_cache.get(a)
        if r is None:
            r = self.pow(a, self.q - 2)
            self._inv_cache[a] = r
        return r

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def frob(self, a: int, times: int = 1) -> int:
        """a -> a^(p^times)."""
        return self.pow(a, self.p**times % (self.q - 1) if self.q > 2 else 1) if a else 0

    def from_int(self, n: int) -> int:
        return n % self.p

    def elements(self) -> range:
        return range(self.q)

    def order_of(self, a: int) -> int:
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        n = self.q - 1
        for r in prime_divisors(self.q - 1):
            while n % r == 0 and self.pow(a, n // r) == 1:
                n //= r
        return n

    @cached_property
    def primitive_element(self) -> int:
        """Least generator of the multiplicative group (certified by its order)."""
        for a in range(1, self.q):
            if self.order_of(a) == self.q - 1:
                return a
        raise AssertionError("no primitive element")  # pragma: no cover


def field_make(p: int, k: int = 1) -> Field:
    return _field_cache(p, k)


_FIELDS: dict[tuple[int, int], Field] = {}


def _field_cache(p: int, k: int) -> Field:
    key = (p, k)
    if key not in _FIELDS:
        _FIELDS[key] = Field(p, k)
    return _FIELDS[key]


def field_of_order(q: int) -> Field:
    ps = prime_divisors(q)
    if len(ps) != 1:
        raise NotPrime(f"{q} is not a prime power")
    p = ps[0]
    k = 0
    while q > 1:
        q //= p
        k += 1
    return field_make(p, k)


class Matrix:
    """Immutable n x n matrix over a Field; rows are tuples of field ints."""

    __slots__ = ("field", "rows", "_hash")

    def __init__(self, field: Field, rows):
        self.field = field
        self.rows = tuple(tuple(r) for r in rows)
        n = len(self.rows)
        if any(len(r) != n for r in self.rows):
            raise ValueError("matrix must be square")
        if any(not 0 <= x < field.q for r in self.rows for x in r):
            raise ValueError("entry outside the field")
        self._hash = None

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, field: Field, entries) -> "Matrix":
        n = len(entries)
        return cls(field, [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.field == other.field and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __repr__(self):
        return f"Matrix({self.field!r}, {[list(r) for r in self.rows]})"

    def __mul__(self, other: "Matrix") -> "Matrix":
        if self.field != other.field or self.dim != other.dim:
            raise ValueError("dimension or field mismatch")
        F = self.field
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                s = 0
                for x, y in zip(r, c):
                    if x and y:
                        s = F.add(s, F.mul(x, y))
                row.append(s)
            out.append(row)
        return Matrix(F, out)

    def __add__(self, other: "Matrix") -> "Matrix":
        F = self.field
        return Matrix(F, [[F.add(x, y) for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        F = self.field
        return Matrix(F, [[F.sub(x, y) for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def scale(self, c: int) -> "Matrix":
        F = self.field
        return Matrix(F, [[F.mul(c, x) for x in r] for r in self.rows])

    def __pow__(self, n: int) -> "Matrix":
        if n < 0:
            return self.inverse() ** (-n)
        result = Matrix.identity(self.field, self.dim)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def transpose(self) -> "Matrix":
        return Matrix(self.field, list(zip(*self.rows)))

    def map_entries(self, fn) -> "Matrix":
        return Matrix(self.field, [[fn(x) for x in r] for r in self.rows])

    def frobenius(self, times: int = 1) -> "Matrix":
        F = self.field
        return self.map_entries(lambda x: F.frob(x, times))

    def is_identity(self) -> bool:
        return all(x == (1 if i == j else 0) for i, r in enumerate(self.rows) for j, x in enumerate(r))

    def _echelon(self):
        """Row-reduce a copy; return (rows, rank, det)."""
        F = self.field
        m = [list(r) for r in self.rows]
        n = self.dim
        det = 1
        rank = 0
        for col in range(n):
            piv = next((i for i in range(rank, n) if m[i][col]), None)
            if piv is None:
                det = 0
                continue
            if piv != rank:
                m[rank], m[piv] = m[piv], m[rank]
                det = F.neg(det)
            pv = m[rank][col]
            det = F.mul(det, pv)
            ipv = F.inv(pv)
            m[rank] = [F.mul(ipv, x) for x in m[rank]]
            for i in range(n):
                if i != rank and m[i][col]:
                    c = m[i][col]
                    m[i] = [F.sub(x, F.mul(c, y)) for x, y in zip(m[i], m[rank])]
            rank += 1
        return m, rank, det if rank == n else 0

    def det(self) -> int:
        return self._echelon()[2]

    def rank(self) -> int:
        return self._echelon()[1]

    def inverse(self) -> "Matrix":
        F = self.field
        n = self.dim
        aug = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(self.rows)]
        for col in range(n):
            piv = next((i for i in range(col, n) if aug[i][col]), None)
            if piv is None:
                raise Singular("matrix is singular")
            aug[col], aug[piv] = aug[piv], aug[col]
            ipv = F.inv(aug[col][col])
            aug[col] = [F.mul(ipv, x) for x in aug[col]]
            for i in range(n):
                if i != col and aug[i][col]:
                    c = aug[i][col]
                    aug[i] = [F.sub(x, F.mul(c, y)) for x, y in zip(aug[i], aug[col])]
        return Matrix(F, [r[n:] for r in aug])

    def apply_row(self, v) -> tuple:
        """Row vector times matrix: the right action v -> v*A."""
        F = self.field
        out = []
        for j in range(self.dim):
            s = 0
            for i, x in enumerate(v):
                if x:
                    y = self.rows[i][j]
                    if y:
                        s = F.add(s, F.mul(x, y))
            out.append(s)
        return tuple(out)

    def apply_col(self, v) -> tuple:
        """Matrix times column vector."""
        F = self.field
        out = []
        for r in self.rows:
            s = 0
            for x, y in zip(r, v):
                if x and y:
                    s = F.add(s, F.mul(x, y))
            out.append(s)
        return tuple(out)

    def order(self) -> int:
        m = self
        k = 1
        while not m.is_identity():
            m = m * self
            k += 1
        return k


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    return a * b


def mat_inv(a: Matrix) -> Matrix:
    return a.inverse()


@dataclass(frozen=True)
class FormSpec:
    """A bilinear or sesquilinear form given by its Gram matrix.

    ``twist`` is the order of the field automorphism applied to the second
    argument: 2 for hermitian forms over GF(q^2) (x -> x^q), 1 otherwise.
    """

    kind: str
    gram: Matrix
    twist: int = 1

    def __post_init__(self):
        g = self.gram
        F = g.field
        n = g.dim
        if self.kind == "symplectic":
            alt = all(g[i, i] == 0 for i in range(n)) and all(
                g[i, j] == F.neg(g[j, i]) for i in range(n) for j in range(n)
            )
            if not alt or g.det() == 0:
                raise ValueError("symplectic Gram must be alternating and nondegenerate")
        elif self.kind == "hermitian":
            if self.twist != 2 or F.k % 2:
                raise ValueError("hermitian forms live over GF(q^2) with twist 2")
            if g.transpose().map_entries(self.sigma) != g:
                raise ValueError("hermitian Gram must equal its conjugate transpose")
        elif self.kind == "symmetric":
            if g.transpose() != g or g.det() == 0:
                raise ValueError("symmetric Gram must be symmetric and nondegenerate")
        elif self.kind != "none":
            raise ValueError(f"unknown form kind {self.kind!r}")

    def sigma(self, x: int) -> int:
        F = self.gram.field
        if self.twist == 1:
            return x
        return F.frob(x, F.k // 2)

    def value(self, u, v) -> int:
        """(u, v) = u^T G v^sigma for column vectors u, v."""
        F = self.gram.field
        gv = self.gram.apply_col([self.sigma(x) for x in v])
        s = 0
        for x, y in zip(u, gv):
            if x and y:
                s = F.add(s, F.mul(x, y))
        return s


def symplectic_form(field: Field, d: int) -> FormSpec:
    """Antidiagonal Gram antidiag(1,...,1,-1,...,-1)."""
    if d % 2:
        raise ValueError("symplectic forms need even dimension")
    h = d // 2
    rows = [[0] * d for _ in range(d)]
    for i in range(d):
        rows[i][d - 1 - i] = 1 if i < h else field.neg(1)
    return FormSpec("symplectic", Matrix(field, rows))


def hermitian_form(field: Field, d: int) -> FormSpec:
    return FormSpec("hermitian", Matrix.identity(field, d), twist=2)


def symmetric_form(field: Field, d: int) -> FormSpec:
    return FormSpec("symmetric", Matrix.identity(field, d))


def preserves_form(a: Matrix, f: FormSpec) -> bool:
    """a^T * G * a^sigma == G."""
    if a.dim != f.gram.dim:
        raise ValueError("dimension mismatch")
    if f.kind == "none":
        return True
    return a.transpose() * f.gram * a.map_entries(f.sigma) == f.gram


def form_value_vanishes(a: Matrix, f: FormSpec) -> bool:
    """True iff (a v, v) = 0 for every vector v.

    Checked on basis vectors and pairwise sums: in characteristic 2 the map
    v -> (av, v) is a quadratic form whose polar form is bilinear, so these
    values determine it.
    """
    if not preserves_form(a, f):
        raise FormViolation("matrix does not preserve the form")
    n = a.dim
    F = a.field
    basis = [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
    vecs = list(basis)
    for i, j in itertools.combinations(range(n), 2):
        vecs.append(tuple(F.add(x, y) for x, y in zip(basis[i], basis[j])))
    return all(f.value(a.apply_col(v), v) == 0 for v in vecs)


def projective_points(field: Field, d: int) -> list[tuple]:
    """Normalized representatives (first nonzero coordinate 1) of the 1-spaces of GF(q)^d."""
    pts = []
    for lead in range(d):
        for tail in itertools.product(field.elements(), repeat=d - lead - 1):
            pts.append((0,) * lead + (1,) + tail)
    return pts


def nonzero_vectors(field: Field, d: int) -> list[tuple]:
    return [v for v in itertools.product(field.elements(), repeat=d) if any(v)]


def normalize(field: Field, v) -> tuple:
    lead = next(x for x in v if x)
    if lead == 1:
        return tuple(v)
    il = field.inv(lead)
    return tuple(field.mul(il, x) for x in v)
