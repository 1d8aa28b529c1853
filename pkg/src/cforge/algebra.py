"""Class algebra: structure constants, product supports, centralizer double cosets."""

from __future__ import annotations

from dataclasses import dataclass, field

from .backtrack import centralizer, centralizer_in, conjugacy_class
from .classes import ClassTable
from .errors import InvariantViolation, NotInGroup, SizeCapExceeded
from .perm import CAPS, Perm, PermGroup


# running tally of counting-identity checks made by product_support
IDENTITY_CHECKS = {"checked": 0, "failed": 0}


def _class_members(t: ClassTable, i: int):
    if t.sizes[i] > CAPS.max_class:
        raise SizeCapExceeded(f"class {i} has {t.sizes[i]} elements (cap {CAPS.max_class})")
    return t.class_elements(i)


def product_histogram(t: ClassTable, i: int, y: Perm) -> dict[int, int]:
    """{k: #{x in C_i : x*y in C_k}}."""
    out: dict[int, int] = {}
    ident = t.identify
    for x in _class_members(t, i):
        k = ident(x * y, check=False)
        out[k] = out.get(k, 0) + 1
    return out


@dataclass
class ProductSupport:
    i: int
    j: int
    entries: list[tuple[int, int]]
    method: str = "counting"

    @property
    def classes(self) -> list[int]:
        return [k for k, _ in self.entries]

    def __len__(self):
        return len(self.entries)

    def check_identity(self, t: ClassTable) -> bool:
        """sum_k a_ijk |C_k| == |C_i| |C_j|."""
        return sum(a * t.sizes[k] for k, a in self.entries) == t.sizes[self.i] * t.sizes[self.j]

    def to_json(self) -> dict:
        return {"i": self.i, "j": self.j, "entries": [[k, a] for k, a in self.entries], "method": self.method}


def _counting_support(t: ClassTable, i: int, j: int) -> list[tuple[int, int]]:
    # a_ijk = a_jik, so enumerate whichever class is smaller
    if t.sizes[i] > t.sizes[j]:
        i, j = j, i
    hist = product_histogram(t, i, t.reps[j])
    out = []
    for k, cnt in sorted(hist.items()):
        num = t.sizes[j] * cnt
        if num % t.sizes[k]:
            raise InvariantViolation("structure constant is not integral")
        out.append((k, num // t.sizes[k]))
    return out


def _counting_constant(t: ClassTable, i: int, j: int, k: int) -> int:
    if t.sizes[i] > t.sizes[j]:
        i, j = j, i
    g = t.reps[k]
    return sum(1 for x in _class_members(t, i) if t.identify(x.inverse() * g, check=False) == j)


def character_constant(ct, i: int, j: int, k: int) -> int:
    """a_ijk from the character table, computed modulo the verification primes."""
    t = ct.classes
    n = t.order
    kinv = t.inverse_map[k]
    bound = t.sizes[i] * t.sizes[j] // t.sizes[k]
    vals = []
    for p in ct.primes:
        v = ct.modular(p)
        s = 0
        for c, d in enumerate(ct.degrees):
            s += v[c][i] * v[c][j] % p * v[c][kinv] % p * pow(d, p - 2, p)
        r = s % p * (t.sizes[i] * t.sizes[j] % p) % p * pow(n, p - 2, p) % p
        if r > bound:
            raise InvariantViolation(f"character formula gives a non-integral a_{i}{j}{k}")
        vals.append(r)
    if len(set(vals)) != 1:
        raise InvariantViolation("character formula disagrees between primes")
    approx = sum(
        complex(ct.values[c][i]) * complex(ct.values[c][j]) * complex(ct.values[c][kinv]) / d
        for c, d in enumerate(ct.degrees)
    ) * t.sizes[i] * t.sizes[j] / n
    if abs(approx - vals[0]) > 1e-6 * max(1.0, abs(approx)):
        raise InvariantViolation("floating check of the character formula failed")
    return vals[0]


def structure_constant(t: ClassTable, i: int, j: int, k: int, chartab=None, method: str = "auto") -> int:
    """#{(x, y) in C_i x C_j : x y = reps[k]}.

    method: "counting", "character", "both" (must agree) or "auto" (character
    formula when a table is supplied, counting otherwise).
    """
    if method == "auto":
        method = "character" if chartab is not None else "counting"
    if method in ("character", "both") and chartab is None:
        raise ValueError("character method needs a table")
    if method == "counting":
        return _counting_constant(t, i, j, k)
    a = character_constant(chartab, i, j, k)
    if method == "both" and _counting_constant(t, i, j, k) != a:
        raise InvariantViolation(f"methods disagree on a_{i}{j}{k}")
    return a


def product_support(t: ClassTable, i: int, j: int, chartab=None) -> ProductSupport:
    if chartab is not None and min(t.sizes[i], t.sizes[j]) > CAPS.max_class:
        entries = [(k, a) for k in range(len(t)) if (a := character_constant(chartab, i, j, k))]
        sup = ProductSupport(i, j, entries, "character")
    else:
        sup = ProductSupport(i, j, _counting_support(t, i, j), "counting")
    IDENTITY_CHECKS["checked"] += 1
    if not sup.check_identity(t):
        IDENTITY_CHECKS["failed"] += 1
        raise InvariantViolation(f"counting identity fails for classes {i}, {j}")
    return sup


def is_single_class_product(t: ClassTable, i: int, j: int) -> tuple[bool, tuple[int, int] | None]:
    sup = product_support(t, i, j)
    ks = sup.classes
    return (len(ks) == 1, None if len(ks) == 1 else (ks[0], ks[1]))


@dataclass
class DoubleCosetCount:
    a: Perm
    b: Perm
    count: int
    orbit_sizes: list[int] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"a": self.a.to_json(), "b": self.b.to_json(), "count": self.count, "orbit_sizes": self.orbit_sizes}


def centralizer_orbit_count(g: PermGroup, a: Perm, b: Perm) -> DoubleCosetCount:
    """Orbits of C_G(a) acting by conjugation on the class b^G."""
    if not (g.contains(a) and g.contains(b)):
        raise NotInGroup("both elements must lie in the group")
    ca = centralizer(g, a)
    cls = conjugacy_class(g, b)
    seen: set[Perm] = set()
    sizes = []
    gens = ca.gens
    for x in cls:
        if x in seen:
            continue
        seen.add(x)
        orbit = [x]
        for y in orbit:
            for s in gens:
                z = y.conj(s)
                if z not in seen:
                    seen.add(z)
                    orbit.append(z)
        sizes.append(len(orbit))
    if sum(sizes) != len(cls):
        raise InvariantViolation("orbit sizes do not cover the class")
    return DoubleCosetCount(a, b, len(sizes), sorted(sizes))


@dataclass
class SzepResult:
    factors: bool
    product_size: int
    centralizer_orders: tuple[int, int, int]

    def to_json(self) -> dict:
        return {
            "factors": self.factors,
            "product_size": str(self.product_size),
            "centralizer_orders": [str(c) for c in self.centralizer_orders],
        }


def szep_factorization(g: PermGroup, a: Perm, b: Perm) -> SzepResult:
    """Whether G = C_G(a) C_G(b); |C(a)C(b)| = |C(a)||C(b)|/|C(a) & C(b)|."""
    if not (g.contains(a) and g.contains(b)):
        raise NotInGroup("both elements must lie in the group")
    ca = centralizer(g, a)
    cb = centralizer(g, b)
    both = centralizer_in(ca, b)
    size = ca.order() * cb.order() // both.order()
    return SzepResult(size == g.order(), size, (ca.order(), cb.order(), both.order()))
