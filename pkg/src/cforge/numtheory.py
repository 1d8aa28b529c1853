"""Small exact integer utilities: primality, factorization, roots of unity mod p."""

from __future__ import annotations

import math
import random
from functools import lru_cache

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24; probabilistic beyond."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int, rng: random.Random) -> int:
    if n % 2 == 0:
        return 2
    while True:
        c = rng.randrange(1, n)
        f = lambda x: (x * x + c) % n
        x = y = rng.randrange(2, n)
        d = 1
        while d == 1:
            x = f(x)
            y = f(f(y))
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d


def factorint(n: int) -> dict[int, int]:
    """Prime factorization {p: e} of a positive integer."""
    if n < 1:
        raise ValueError("factorint needs a positive integer")
    out: dict[int, int] = {}
    for p in (2, 3, 5, 7, 11, 13):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    rng = random.Random(n)
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_rho(m, rng)
        stack.extend((d, m // d))
    return dict(sorted(out.items()))


def prime_divisors(n: int) -> list[int]:
    return list(factorint(n)) if n > 1 else []


def p_part(n: int, p: int) -> int:
    """Largest power of p dividing n."""
    r = 1
    while n % p == 0:
        n //= p
        r *= p
    return r


def is_prime_power_of(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def primitive_root(p: int) -> int:
    """Least generator of (Z/p)^*."""
    if p == 2:
        return 1
    qs = prime_divisors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in qs):
            return g
    raise ValueError(f"{p} is not prime")


@lru_cache(maxsize=None)
def root_of_unity_mod(e: int, p: int) -> int:
    """A primitive e-th root of unity modulo the prime p (needs p = 1 mod e)."""
    if (p - 1) % e:
        raise ValueError(f"{p} is not 1 mod {e}")
    return pow(primitive_root(p), (p - 1) // e, p)


def primes_one_mod(e: int, above: int, count: int = 1) -> list[int]:
    """The `count` least primes p = 1 (mod e) with p > above."""
    t = above // e + 1
    out = []
    while len(out) < count:
        p = t * e + 1
        if is_prime(p):
            out.append(p)
        t += 1
    return out


def sqrt_mod_small(a: int, p: int, bound: int) -> int | None:
    """The root r of r^2 = a (mod p) with 0 < r <= bound, by search (bound small)."""
    a %= p
    for r in range(1, bound + 1):
        if r * r % p == a:
            return r
    return None
