"""Brute-force reference computations, independent of the engine's algorithms.

Groups are enumerated as sets of image tuples by closure under the
generators; classes are conjugation orbits.  Only suitable for small groups.
"""

from __future__ import annotations

from collections import Counter


def compose(a, b):
    # right action, matching Perm: apply a, then b
    return tuple(b[i] for i in a)


def inverse(a):
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def elements(gens, degree):
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    gens = [tuple(g) for g in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = compose(x, s)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def classes(elems, gens):
    gens = [tuple(g) for g in gens]
    left = set(elems)
    out = []
    while left:
        x = min(left)
        orbit = {x}
        stack = [x]
        while stack:
            y = stack.pop()
            for s in gens:
                z = compose(compose(inverse(s), y), s)
                if z not in orbit:
                    orbit.add(z)
                    stack.append(z)
        out.append(frozenset(orbit))
        left -= orbit
    return out


def class_index(cls):
    return {x: i for i, c in enumerate(cls) for x in c}


def structure_constants(cls, i, j):
    """Counter {k: a_ijk} where a_ijk = #{(x, y) in C_i x C_j : x y = fixed rep of C_k}."""
    idx = class_index(cls)
    hits = Counter()
    for x in cls[i]:
        for y in cls[j]:
            hits[idx[compose(x, y)]] += 1
    # each element of C_k is hit equally often
    return {k: n // len(cls[k]) for k, n in hits.items()}


def order_of(a):
    ident = tuple(range(len(a)))
    x, n = a, 1
    while x != ident:
        x = compose(x, a)
        n += 1
    return n


def fixed_points(a):
    return sum(1 for i, x in enumerate(a) if i == x)


def zsigmondy(q, n):
    from sympy import factorint

    for ell in sorted(factorint(q**n - 1)):
        if all((q**m - 1) % ell for m in range(1, n)):
            return ell
    return None
