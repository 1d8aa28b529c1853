"""Conjugacy classes: discovery, canonical ordering, identification, power maps."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from .backtrack import centralizer, conjugacy_class, conjugating_element
from .errors import InvariantViolation, NotInGroup, SizeCapExceeded
from .numtheory import prime_divisors
from .perm import CAPS, Perm, PermGroup

# classes up to this size get materialized when fingerprints tie
MEMO_CAP = 100_000


@lru_cache(maxsize=None)
def _divisors(n: int) -> tuple[int, ...]:
    return tuple(d for d in range(2, n) if n % d == 0)


def element_fingerprint(x: Perm) -> tuple:
    """Cheap conjugation invariant: order, cycle type, cycle types of proper powers."""
    o = x.order()
    return (o, x.cycle_type(), tuple((x ** d).cycle_type() for d in _divisors(o)))


class _Classifier:
    """Shared membership logic for complete and partial class lists."""

    def __init__(self, group: PermGroup, memo_cap: int):
        self.group = group
        self.memo_cap = memo_cap
        self.reps: list[Perm] = []
        self.fps: list[tuple] = []
        self.sizes: list[int] = []
        self._by_fp: dict[tuple, list[int]] = {}
        self._members: dict[int, set] = {}
        self._memo: dict[Perm, int] = {}

    def _register(self, rep: Perm, fp: tuple, size: int) -> int:
        idx = len(self.reps)
        self.reps.append(rep)
        self.fps.append(fp)
        self.sizes.append(size)
        self._by_fp.setdefault(fp, []).append(idx)
        return idx

    def _materialize(self, i: int) -> set:
        m = self._members.get(i)
        if m is None:
            m = set(conjugacy_class(self.group, self.reps[i]))
            self._members[i] = m
            if len(self._memo) + len(m) <= 4 * self.memo_cap:
                for e in m:
                    self._memo[e] = i
        return m

    def _locate(self, x: Perm, complete: bool) -> int | None:
        i = self._memo.get(x)
        if i is not None:
            return i
        cands = self._by_fp.get(element_fingerprint(x), [])
        if not cands:
            return None
        if complete and len(cands) == 1:
            return cands[0]
        # with a complete list the largest candidate can be settled by elimination
        order = sorted(cands, key=lambda c: self.sizes[c])
        check = order[:-1] if complete else order
        if complete and sum(self.sizes[c] for c in check) <= self.memo_cap:
            for c in check:
                if x in self._materialize(c):
                    return c
        else:
            for c in check:
                if c in self._members:
                    if x in self._members[c]:
                        return c
                elif conjugating_element(self.group, self.reps[c], x) is not None:
                    return c
        return order[-1] if complete else None


class ClassTable(_Classifier):
    """Complete list of conjugacy classes of a permutation group.

    Classes are ordered by (element order, class size, fingerprint, rep images),
    so class 0 is always the identity class.
    """

    def __init__(self, group: PermGroup, reps, cent_orders, memo_cap: int = MEMO_CAP):
        super().__init__(group, memo_cap)
        n = group.order()
        rows = []
        for r, c in zip(reps, cent_orders):
            if n % c:
                raise InvariantViolation("centralizer order does not divide |G|")
            rows.append((r, c, element_fingerprint(r)))
        rows.sort(key=lambda t: (t[2][0], n // t[1], t[2], tuple(t[0].images)))
        for r, c, fp in rows:
            self._register(r, fp, n // c)
        self.centralizer_orders = [c for _, c, _ in rows]
        if sum(self.sizes) != n:
            raise InvariantViolation(f"class sizes sum to {sum(self.sizes)}, not {n}")
        self._cent: dict[int, PermGroup] = {}
        self._powers: dict[tuple[int, int], int] = {}
        self.inverse_map = [self.power_class(i, -1) for i in range(len(self))]
        self.power_maps = {p: [self.power_class(i, p) for i in range(len(self))] for p in prime_divisors(n)}

    def __len__(self):
        return len(self.reps)

    @property
    def order(self) -> int:
        return self.group.order()

    @property
    def element_orders(self) -> list[int]:
        return [fp[0] for fp in self.fps]

    @property
    def fingerprints(self) -> list[tuple]:
        """Element fingerprint extended by the centralizer order."""
        return [fp + (c,) for fp, c in zip(self.fps, self.centralizer_orders)]

    def exponent(self) -> int:
        from math import lcm

        return lcm(*self.element_orders)

    def identify(self, x: Perm, check: bool = True) -> int:
        if check and not self.group.contains(x):
            raise NotInGroup(f"{x!r} is not in the group")
        i = self._locate(x, complete=True)
        if i is None:
            raise InvariantViolation("element matches no class of a complete table")
        return i

    def power_class(self, i: int, t: int) -> int:
        key = (i, t % self.fps[i][0])
        r = self._powers.get(key)
        if r is None:
            r = self._powers[key] = self.identify(self.reps[i] ** t, check=False)
        return r

    def centralizer(self, i: int) -> PermGroup:
        c = self._cent.get(i)
        if c is None:
            c = self._cent[i] = centralizer(self.group, self.reps[i])
        return c

    def class_elements(self, i: int) -> set:
        if self.sizes[i] > CAPS.max_class:
            raise SizeCapExceeded(f"class {i} has {self.sizes[i]} elements")
        return self._materialize(i)

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "reps": [r.to_json() for r in self.reps],
            "sizes": [str(x) for x in self.sizes],
            "centralizer_orders": [str(x) for x in self.centralizer_orders],
            "element_orders": self.element_orders,
            "inverse_map": list(self.inverse_map),
            "power_maps": {str(p): m for p, m in self.power_maps.items()},
        }

    @classmethod
    def from_json(cls, group: PermGroup, data: dict) -> "ClassTable":
        """Rebuild from stored reps; the constructor re-runs the class sum check."""
        if data.get("order") != group.order():
            raise InvariantViolation("stored table is for a group of another order")
        reps = [Perm(r) for r in data["reps"]]
        for r in reps:
            if not group.contains(r):
                raise InvariantViolation("stored representative not in group")
        t = cls(group, reps, [int(c) for c in data["centralizer_orders"]])
        if t.sizes != [int(x) for x in data["sizes"]]:
            raise InvariantViolation("stored class sizes disagree with reps")
        return t


def conjugacy_classes(group: PermGroup, seed: int = 0, memo_cap: int = MEMO_CAP) -> ClassTable:
    """All classes, by seeded random search certified through centralizer orders."""
    n = group.order()
    rng = random.Random(seed)
    part = _Classifier(group, memo_cap)
    cents: list[PermGroup] = []
    total = 0
    queue = [group.identity] + list(group.gens)
    while total < n:
        if queue:
            x = queue.pop()
        elif cents and rng.random() < 0.5:
            x = rng.choice(cents).random_element(rng)
        else:
            x = group.random_element(rng)
        if part._locate(x, complete=False) is not None:
            continue
        c = centralizer(group, x)
        size = n // c.order()
        part._register(x, element_fingerprint(x), size)
        cents.append(c)
        total += size
        o = part.fps[-1][0]
        queue.extend(x ** d for d in _divisors(o))
    if total != n:
        raise InvariantViolation(f"classes overshoot: {total} > {n}")
    return ClassTable(group, part.reps, [c.order() for c in cents], memo_cap)


def identify_class(table: ClassTable, x: Perm) -> int:
    return table.identify(x)


def power_map(table: ClassTable, p: int) -> list[int]:
    if p in table.power_maps:
        return table.power_maps[p]
    return [table.power_class(i, p) for i in range(len(table))]


@dataclass
class FusionMap:
    subgroup: ClassTable
    group: ClassTable
    images: list[int]


def class_fusion(h, g) -> FusionMap:
    """Map each class of the subgroup H to the class of G containing it."""
    ht = h if isinstance(h, ClassTable) else conjugacy_classes(h)
    gt = g if isinstance(g, ClassTable) else conjugacy_classes(g)
    from .errors import NotASubgroup

    if not ht.group.is_subgroup_of(gt.group):
        raise NotASubgroup("first group is not contained in the second")
    return FusionMap(ht, gt, [gt.identify(r, check=False) for r in ht.reps])
