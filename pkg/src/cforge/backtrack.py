"""Backtrack search over a stabilizer chain: centralizers and conjugating elements.

An element of G is written g = u_{k-1} ... u_1 u_0 with u_i taken from the
level-i transversal, so choosing u_0 fixes the image of base[0], then u_1 the
image of base[1], and so on.  A partial map pi (forced to respect x^g = y)
prunes the tree: fixing the image of a point fixes the images of its whole
x-cycle, which must land on a y-cycle of the same length.
"""

from __future__ import annotations

from .errors import NotInGroup, SizeCapExceeded
from .perm import CAPS, Perm, PermGroup


def _cycle_lengths(x: Perm) -> list[int]:
    out = [0] * x.degree
    for cyc in x.cycles(include_fixed=True):
        for p in cyc:
            out[p] = len(cyc)
    return out


class _Search:
    def __init__(self, g: PermGroup, x: Perm, y: Perm):
        self.g = g
        self.x = x
        self.y = y
        n = g.degree
        self.xl = _cycle_lengths(x)
        self.yl = self.xl if x is y else _cycle_lengths(y)
        self.pi = [-1] * n
        self.pinv = [-1] * n
        self.base = g.base
        self.T = g.transversals
        self.order_pts = [sorted(t) for t in self.T]

    def assign(self, b: int, c: int):
        pi = self.pi
        if pi[b] != -1:
            return [] if pi[b] == c else None
        if self.pinv[c] != -1 or self.xl[b] != self.yl[c]:
            return None
        x, y, pinv = self.x, self.y, self.pinv
        done = []
        p, q = b, c
        for _ in range(self.xl[b]):
            pi[p] = q
            pinv[q] = p
            done.append(p)
            p = x[p]
            q = y[q]
        return done

    def undo(self, done):
        pi, pinv = self.pi, self.pinv
        for p in done:
            pinv[pi[p]] = -1
            pi[p] = -1

    def dfs(self, lvl: int, tail: Perm, tail_inv: Perm):
        if lvl == len(self.base):
            if self.x * tail == tail * self.y:
                return tail
            return None
        b = self.base[lvl]
        T = self.T[lvl]
        forced = self.pi[b]
        if forced != -1:
            d = tail_inv[forced]
            u = T.get(d)
            if u is None:
                return None
            return self.dfs(lvl + 1, u * tail, tail_inv * self.g._Tinv[lvl][d])
        Ti = self.g._Tinv[lvl]
        for d in self.order_pts[lvl]:
            done = self.assign(b, tail[d])
            if done is None:
                continue
            r = self.dfs(lvl + 1, T[d] * tail, tail_inv * Ti[d])
            self.undo(done)
            if r is not None:
                return r
        return None


def conjugating_element(g: PermGroup, x: Perm, y: Perm) -> Perm | None:
    """Some t in G with t^-1 x t == y, or None when x and y are not G-conjugate."""
    if not (g.contains(x) and g.contains(y)):
        raise NotInGroup("both elements must lie in the group")
    if x.cycle_type() != y.cycle_type():
        return None
    s = _Search(g, x, y)
    return s.dfs(0, g.identity, g.identity)


def _orbit_under(point: int, gens) -> set[int]:
    seen = {point}
    stack = [point]
    while stack:
        p = stack.pop()
        for s in gens:
            q = s[p]
            if q not in seen:
                seen.add(q)
                stack.append(q)
    return seen


def centralizer(g: PermGroup, x: Perm) -> PermGroup:
    """C_G(x), built level by level from the bottom of the stabilizer chain."""
    if not g.contains(x):
        raise NotInGroup("element not in group")
    return centralizer_in(g, x)


def centralizer_in(g: PermGroup, x: Perm) -> PermGroup:
    """Elements of g commuting with x, where x need not lie in g."""
    k = len(g.base)
    found: list[Perm] = []
    orbit_sizes = [1] * k
    for i in reversed(range(k)):
        lower = list(found)
        b = g.base[i]
        orbit = _orbit_under(b, found)
        excluded: set[int] = set()
        s = _Search(g, x, x)
        for j in range(i):
            if s.assign(g.base[j], g.base[j]) is None:
                raise AssertionError("identity prefix must be consistent")
        for d in s.order_pts[i]:
            if d in orbit or d in excluded:
                continue
            done = s.assign(b, d)
            r = None
            if done is not None:
                r = s.dfs(i + 1, g.transversals[i][d], g._Tinv[i][d])
                s.undo(done)
            if r is not None:
                found.append(r)
                orbit = _orbit_under(b, found)
            else:
                excluded |= _orbit_under(d, lower)
        orbit_sizes[i] = len(orbit)
    expected = 1
    for o in orbit_sizes:
        expected *= o
    c = PermGroup(found, g.degree)
    if c.order() != expected:
        from .errors import InvariantViolation

        raise InvariantViolation("centralizer order does not match its chain")
    return c


# Orbit-based routines: simple and independent of the tree search above, used as
# a cross-check and for small classes.

def conjugacy_class(g: PermGroup, x: Perm, cap: int | None = None) -> list[Perm]:
    cap = CAPS.max_class if cap is None else cap
    seen = {x}
    out = [x]
    gens = g.gens
    for y in out:
        for s in gens:
            z = y.conj(s)
            if z not in seen:
                seen.add(z)
                out.append(z)
                if len(out) > cap:
                    raise SizeCapExceeded(f"class larger than {cap}")
    return out


def conjugating_element_by_orbit(g: PermGroup, x: Perm, y: Perm, cap: int | None = None) -> Perm | None:
    cap = CAPS.max_class if cap is None else cap
    parent: dict[Perm, tuple] = {x: None}
    queue = [x]
    gens = g.gens
    for z in queue:
        if z == y:
            break
        for idx, s in enumerate(gens):
            w = z.conj(s)
            if w not in parent:
                parent[w] = (z, idx)
                queue.append(w)
                if len(parent) > cap:
                    raise SizeCapExceeded(f"class larger than {cap}")
    if y not in parent:
        return None
    word = []
    z = y
    while parent[z] is not None:
        z, idx = parent[z]
        word.append(gens[idx])
    t = g.identity
    for s in reversed(word):
        t = t * s
    return t


def centralizer_by_orbit(g: PermGroup, x: Perm, seed: int = 0) -> PermGroup:
    """C_G(x) from the class orbit: random Schreier generators until the order fits."""
    import random

    cls = conjugacy_class(g, x)
    target = g.order() // len(cls)
    rng = random.Random(seed)
    rep = {x: g.identity}
    queue = [x]
    for z in queue:
        for s in g.gens:
            w = z.conj(s)
            if w not in rep:
                rep[w] = rep[z] * s
                queue.append(w)
    c = PermGroup([], g.degree)
    while c.order() < target:
        h = g.random_element(rng)
        z = x.conj(h)
        # h * rep[z]^-1 centralizes x
        cand = h * rep[z].inverse()
        if not c.contains(cand):
            c._add_generators([cand])
    return c
