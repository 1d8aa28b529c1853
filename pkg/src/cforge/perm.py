"""Permutations and stabilizer-chain permutation groups.

Convention: permutations act on the right of points, ``(g * h)`` applies g
first and then h, and conjugation is ``x ** g == g**-1 * x * g`` (spelled
``x.conj(g)`` here).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import reduce

from .errors import NotInGroup, SizeCapExceeded
from .numtheory import is_prime_power_of, prime_divisors


@dataclass
class Caps:
    max_degree: int = 5000
    max_order: int = 10**8
    max_class: int = 5 * 10**6


CAPS = Caps()

_PAD: dict[int, bytes] = {}
_IDENT: dict[int, bytes] = {}


def _pad(n: int) -> bytes:
    b = _PAD.get(n)
    if b is None:
        b = _PAD[n] = bytes(range(n, 256))
    return b


class Perm:
    """A permutation of {0, ..., n-1} stored as its image array.

    Degrees up to 256 use a ``bytes`` image array so that composition runs
    through ``bytes.translate``; larger degrees fall back to tuples.
    """

    __slots__ = ("_img", "_tab", "_inv", "_hash")

    def __init__(self, images):
        imgs = list(images)
        n = len(imgs)
        if sorted(imgs) != list(range(n)):
            raise ValueError("images must be a bijection on range(n)")
        if n > CAPS.max_degree:
            raise SizeCapExceeded(f"degree {n} exceeds {CAPS.max_degree}")
        self._img = bytes(imgs) if n <= 256 else tuple(imgs)
        self._tab = None
        self._inv = None
        self._hash = None

    @classmethod
    def _raw(cls, img) -> "Perm":
        p = object.__new__(cls)
        p._img = img
        p._tab = None
        p._inv = None
        p._hash = None
        return p

    @classmethod
    def identity(cls, n: int) -> "Perm":
        if n <= 256:
            b = _IDENT.get(n)
            if b is None:
                b = _IDENT[n] = bytes(range(n))
            return cls._raw(b)
        return cls._raw(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, *cycles) -> "Perm":
        img = list(range(n))
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[a] = b
        return cls(img)

    @property
    def degree(self) -> int:
        return len(self._img)

    @property
    def images(self) -> tuple:
        return tuple(self._img)

    def __getitem__(self, i: int) -> int:
        return self._img[i]

    __call__ = __getitem__

    def __len__(self):
        return len(self._img)

    def _table(self):
        t = self._tab
        if t is None:
            t = self._tab = self._img + _pad(len(self._img))
        return t

    def __mul__(self, other: "Perm") -> "Perm":
        a = self._img
        if len(a) != len(other._img):
            raise ValueError("degree mismatch")
        if type(a) is bytes:
            t = other._tab
            if t is None:
                t = other._table()
            return Perm._raw(a.translate(t))
        b = other._img
        return Perm._raw(tuple([b[i] for i in a]))

    def inverse(self) -> "Perm":
        inv = self._inv
        if inv is None:
            a = self._img
            out = [0] * len(a)
            for i, j in enumerate(a):
                out[j] = i
            inv = Perm._raw(bytes(out) if type(a) is bytes else tuple(out))
            inv._inv = self
            self._inv = inv
        return inv

    __invert__ = inverse

    def __pow__(self, k: int) -> "Perm":
        if k < 0:
            return self.inverse() ** (-k)
        result = Perm.identity(len(self._img))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self, g: "Perm") -> "Perm":
        """g^-1 * self * g."""
        return g.inverse() * self * g

    def commutator(self, other: "Perm") -> "Perm":
        """[self, other] = self^-1 other^-1 self other."""
        return self.inverse() * other.inverse() * self * other

    def __eq__(self, other):
        return isinstance(other, Perm) and self._img == other._img

    def __hash__(self):
        h = self._hash
        if h is None:
            h = self._hash = hash(self._img)
        return h

    def __lt__(self, other: "Perm"):
        return tuple(self._img) < tuple(other._img)

    def is_identity(self) -> bool:
        a = self._img
        if type(a) is bytes:
            return a == Perm.identity(len(a))._img
        return all(i == x for i, x in enumerate(a))

    def first_moved(self) -> int | None:
        for i, x in enumerate(self._img):
            if i != x:
                return i
        return None

    def support(self) -> list[int]:
        return [i for i, x in enumerate(self._img) if i != x]

    def fixed_points(self) -> int:
        return sum(1 for i, x in enumerate(self._img) if i == x)

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        a = self._img
        seen = bytearray(len(a))
        out = []
        for i in range(len(a)):
            if seen[i]:
                continue
            cyc = [i]
            seen[i] = 1
            j = a[i]
            while j != i:
                cyc.append(j)
                seen[j] = 1
                j = a[j]
            if include_fixed or len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        """Cycle lengths, fixed points included, in decreasing order."""
        a = self._img
        seen = bytearray(len(a))
        lens = []
        for i in range(len(a)):
            if seen[i]:
                continue
            seen[i] = 1
            j = a[i]
            ln = 1
            while j != i:
                seen[j] = 1
                j = a[j]
                ln += 1
            lens.append(ln)
        lens.sort(reverse=True)
        return tuple(lens)

    def order(self) -> int:
        return reduce(lambda a, b: a * b // math.gcd(a, b), self.cycle_type(), 1)

    def to_json(self) -> list[int]:
        return list(self._img)

    def __repr__(self):
        cyc = "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles())
        return f"Perm({self.degree}, {cyc or '()'})"


def _prod(xs) -> int:
    r = 1
    for x in xs:
        r *= x
    return r


class PermGroup:
    """A permutation group together with a verified base and strong generating set.

    Level ``i`` of the chain holds the base point ``base[i]``, the generators
    of the pointwise stabilizer of ``base[:i]`` and a transversal dict mapping
    each orbit point ``d`` to an element sending ``base[i]`` to ``d``.
    """

    def __init__(self, gens, degree: int | None = None, *, max_order: int | None = None):
        gens = list(gens)
        if degree is None:
            if not gens:
                raise ValueError("degree required for an empty generator list")
            degree = gens[0].degree
        if degree > CAPS.max_degree:
            raise SizeCapExceeded(f"degree {degree} exceeds {CAPS.max_degree}")
        if any(g.degree != degree for g in gens):
            raise ValueError("generators must share one degree")
        self.degree = degree
        self.max_order = CAPS.max_order if max_order is None else max_order
        self.identity = Perm.identity(degree)
        seen = set()
        self.gens: list[Perm] = []
        for g in gens:
            if not g.is_identity() and g not in seen:
                seen.add(g)
                self.gens.append(g)
        self.base: list[int] = []
        self._S: list[list[Perm]] = []
        self._T: list[dict[int, Perm]] = []
        self._Tinv: list[dict[int, Perm]] = []
        self._checked: list[set] = []
        self._add_generators(self.gens, initial=True)
        self._order = _prod(len(t) for t in self._T)
        self._tlists = None

    # -- Schreier-Sims machinery
    def _new_level(self, point: int):
        self.base.append(point)
        self._S.append([])
        self._T.append({point: self.identity})
        self._Tinv.append({point: self.identity})
        self._checked.append(set())

    def _check_cap(self):
        if _prod(len(t) for t in self._T) > self.max_order:
            raise SizeCapExceeded(f"group order exceeds cap {self.max_order}")

    def _extend_orbit(self, lvl: int, new_gens):
        """Grow the level-lvl orbit after ``new_gens`` were appended to its generators."""
        T, Ti, S = self._T[lvl], self._Tinv[lvl], self._S[lvl]
        queue = []
        for d in list(T):
            u = T[d]
            for s in new_gens:
                e = s[d]
                if e not in T:
                    v = u * s
                    T[e] = v
                    Ti[e] = v.inverse()
                    queue.append(e)
        while queue:
            d = queue.pop()
            u = T[d]
            for s in S:
                e = s[d]
                if e not in T:
                    v = u * s
                    T[e] = v
                    Ti[e] = v.inverse()
                    queue.append(e)
        self._check_cap()

    def _strip(self, h: Perm, start: int):
        base, T, Ti = self.base, self._T, self._Tinv
        for lvl in range(start, len(base)):
            b = h[base[lvl]]
            if b not in T[lvl]:
                return h, lvl
            h = h * Ti[lvl][b]
        return h, len(base)

    def _insert(self, h: Perm, upto: int):
        """Add h as strong generator on levels 0..upto (h fixes base[:upto])."""
        if upto == len(self.base):
            self._new_level(h.first_moved())
        for lvl in range(upto + 1):
            self._S[lvl].append(h)
            self._extend_orbit(lvl, [h])

    def _add_generators(self, gens, initial: bool = False):
        for g in gens:
            if g.is_identity():
                continue
            if not initial:
                r, j = self._strip(g, 0)
                if j == len(self.base) and r.is_identity():
                    continue
            lvl = 0
            while lvl < len(self.base) and g[self.base[lvl]] == self.base[lvl]:
                lvl += 1
            if lvl == len(self.base):
                self._new_level(g.first_moved())
            for l in range(lvl + 1):
                self._S[l].append(g)
                self._extend_orbit(l, [g])
            if not initial:
                self.gens.append(g)
        self._schreier_sims_loop()
        self._order = _prod(len(t) for t in self._T)
        self._tlists = None

    def _schreier_sims_loop(self):
        i = len(self.base) - 1
        while i >= 0:
            restart = False
            T, Ti, S, checked = self._T[i], self._Tinv[i], self._S[i], self._checked[i]
            for d in list(T):
                u = T[d]
                for si, s in enumerate(S):
                    key = (d, si)
                    if key in checked:
                        continue
                    checked.add(key)
                    e = s[d]
                    h = u * s * Ti[e]
                    if h.is_identity():
                        continue
                    h, j = self._strip(h, i + 1)
                    if j < len(self.base) or not h.is_identity():
                        if j == len(self.base):
                            self._new_level(h.first_moved())
                        for l in range(i + 1, j + 1):
                            self._S[l].append(h)
                            self._extend_orbit(l, [h])
                        i = j
                        restart = True
                        break
                if restart:
                    break
            if not restart:
                i -= 1

    # -- queries
    def order(self) -> int:
        return self._order

    @property
    def strong_gens(self) -> list[Perm]:
        return self._S[0] if self._S else []

    @property
    def transversals(self) -> list[dict[int, Perm]]:
        return self._T

    def basic_orbit_sizes(self) -> list[int]:
        return [len(t) for t in self._T]

    def stabilizer_gens(self, lvl: int) -> list[Perm]:
        return list(self._S[lvl]) if lvl < len(self._S) else []

    def contains(self, x: Perm) -> bool:
        if x.degree != self.degree:
            return False
        r, j = self._strip(x, 0)
        return j == len(self.base) and r.is_identity()

    __contains__ = contains

    def random_element(self, rng: random.Random) -> Perm:
        """Uniformly random element: a product of random transversal elements."""
        if self._tlists is None:
            self._tlists = [list(t.values()) for t in self._T]
        g = self.identity
        for tl in reversed(self._tlists):
            g = g * rng.choice(tl)
        return g

    def elements(self):
        """Iterate over all elements (only sensible for small groups)."""
        levels = [list(t.values()) for t in self._T]

        def rec(lvl, acc):
            if lvl < 0:
                yield acc
                return
            for u in levels[lvl]:
                yield from rec(lvl - 1, acc * u)

        yield from rec(len(levels) - 1, self.identity)

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return all(other.contains(g) for g in self.gens)

    def same_group(self, other: "PermGroup") -> bool:
        return self.order() == other.order() and self.is_subgroup_of(other)

    def is_trivial(self) -> bool:
        return self._order == 1

    def orbit(self, point: int) -> list[int]:
        seen = {point}
        out = [point]
        for x in out:
            for g in self.gens:
                y = g[x]
                if y not in seen:
                    seen.add(y)
                    out.append(y)
        return out

    def exponent(self) -> int:
        """Lcm of element orders, from class representatives is preferred; this
        fallback uses all elements and is meant for small groups."""
        return reduce(lambda a, b: a * b // math.gcd(a, b), (g.order() for g in self.elements()), 1)

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, order={self._order}, ngens={len(self.gens)})"


def bsgs_build(gens, degree: int | None = None, *, max_order: int | None = None) -> PermGroup:
    return PermGroup(gens, degree, max_order=max_order)


def contains(g: PermGroup, x: Perm) -> bool:
    return g.contains(x)


def _require_members(g: PermGroup, elems):
    for e in elems:
        if not g.contains(e):
            raise NotInGroup(f"{e!r} is not in the group")


def generated_subgroup(g: PermGroup, elems) -> PermGroup:
    elems = list(elems)
    _require_members(g, elems)
    return PermGroup(elems, g.degree)


def closure_under_conjugation(g_gens, seeds, degree: int, max_order=None) -> PermGroup:
    """Smallest subgroup containing seeds and normalized by every element of g_gens."""
    n = PermGroup(seeds, degree, max_order=max_order)
    changed = True
    while changed:
        changed = False
        for x in list(n.gens):
            for s in g_gens:
                c = x.conj(s)
                if not n.contains(c):
                    n._add_generators([c])
                    changed = True
    return n


def normal_closure(g: PermGroup, seeds) -> PermGroup:
    seeds = list(seeds)
    _require_members(g, seeds)
    return closure_under_conjugation(g.gens, seeds, g.degree)


def derived_subgroup(g: PermGroup) -> PermGroup:
    comms = [a.commutator(b) for i, a in enumerate(g.gens) for b in g.gens[i + 1:]]
    return closure_under_conjugation(g.gens, comms, g.degree)


def derived_series(g: PermGroup) -> list[PermGroup]:
    series = [g]
    while True:
        d = derived_subgroup(series[-1])
        if d.order() == series[-1].order():
            return series
        series.append(d)
        if d.is_trivial():
            return series


def is_solvable(g: PermGroup) -> bool:
    return derived_series(g)[-1].is_trivial()


def structure_flags(h: PermGroup, p: int) -> dict:
    return {
        "is_p_group": is_prime_power_of(h.order(), p),
        "is_solvable": is_solvable(h),
        "is_nilpotent_skipped": True,
    }


def _is_p_element(x: Perm, p: int) -> bool:
    return is_prime_power_of(x.order(), p)


def generates_p_group(elems, p: int, degree: int) -> bool:
    """True iff <elems> is a p-group; cheap element-order filters run first."""
    elems = [e for e in elems if not e.is_identity()]
    if not elems:
        return True
    probes = list(elems)
    for i, a in enumerate(elems):
        for b in elems[i + 1:]:
            probes.extend((a * b, a * b * b, a * a * b, a.commutator(b)))
    if not all(_is_p_element(x, p) for x in probes):
        return False
    return is_prime_power_of(PermGroup(elems, degree).order(), p)


def group_exponent_from_orders(orders) -> int:
    return reduce(lambda a, b: a * b // math.gcd(a, b), orders, 1)


def prime_divisors_of_order(g: PermGroup) -> list[int]:
    return prime_divisors(g.order())
