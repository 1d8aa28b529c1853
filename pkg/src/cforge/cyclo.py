"""Elements of Z[zeta_e] stored as exponent-multiplicity vectors.

A value sum_j mults[j] * zeta_e**j is not unique as a vector (the powers of
zeta are linearly dependent), so equality goes through evaluation: at a
primitive e-th root of unity modulo two large primes p = 1 (mod e), with a
floating-point check on top.  ``canonical()`` gives an exact normal form by
reduction modulo the cyclotomic polynomial, used for hashing and rationals.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache

from .numtheory import primes_one_mod, root_of_unity_mod

FLOAT_TOL = 1e-9


@lru_cache(maxsize=None)
def verification_primes(e: int) -> tuple[int, int]:
    return tuple(primes_one_mod(e, 2**31, 2))


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients (constant term first) of the n-th cyclotomic polynomial."""
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _poly_divexact(num, list(cyclotomic_poly(d)))
    return tuple(num)


def _poly_divexact(a: list[int], b: list[int]) -> list[int]:
    a = list(a)
    db = len(b) - 1
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]  # b is monic
        if c:
            q[i - db] = c
            for j, bj in enumerate(b):
                a[i - db + j] -= c * bj
    if any(a[:db]):
        raise ArithmeticError("inexact polynomial division")
    return q


class Cyclo:
    __slots__ = ("e", "terms")

    def __init__(self, e: int, mults=None, *, terms: dict[int, int] | None = None):
        self.e = e
        if terms is None:
            terms = {}
            if mults is not None:
                for j, m in enumerate(mults):
                    if m:
                        terms[j % e] = terms.get(j % e, 0) + m
        self.terms = {j: m for j, m in terms.items() if m}

    @classmethod
    def from_int(cls, e: int, n: int) -> "Cyclo":
        return cls(e, terms={0: n} if n else {})

    @property
    def mults(self) -> list[int]:
        out = [0] * self.e
        for j, m in self.terms.items():
            out[j] = m
        return out

    def _coerce(self, other) -> "Cyclo":
        if isinstance(other, Cyclo):
            if other.e != self.e:
                raise ValueError("conductor mismatch")
            return other
        if isinstance(other, int):
            return Cyclo.from_int(self.e, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        t = dict(self.terms)
        for j, m in o.terms.items():
            t[j] = t.get(j, 0) + m
        return Cyclo(self.e, terms=t)

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.e, terms={j: -m for j, m in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return Cyclo(self.e, terms={j: m * other for j, m in self.terms.items()})
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        e = self.e
        t: dict[int, int] = {}
        for j, m in self.terms.items():
            for i, n in o.terms.items():
                s = (i + j) % e
                t[s] = t.get(s, 0) + m * n
        return Cyclo(e, terms=t)

    __rmul__ = __mul__

    def conj(self) -> "Cyclo":
        e = self.e
        return Cyclo(e, terms={(-j) % e: m for j, m in self.terms.items()})

    def galois(self, t: int) -> "Cyclo":
        e = self.e
        out: dict[int, int] = {}
        for j, m in self.terms.items():
            s = (j * t) % e
            out[s] = out.get(s, 0) + m
        return Cyclo(e, terms=out)

    def eval_mod(self, p: int) -> int:
        z = root_of_unity_mod(self.e, p)
        return sum(m * pow(z, j, p) for j, m in self.terms.items()) % p

    def __complex__(self):
        e = self.e
        return sum((m * cmath.exp(2j * cmath.pi * j / e) for j, m in self.terms.items()), 0j)

    def canonical(self) -> tuple[int, ...]:
        """Exact normal form: coefficients modulo the e-th cyclotomic polynomial."""
        phi = cyclotomic_poly(self.e)
        deg = len(phi) - 1
        if not self.terms:
            return (0,) * deg
        a = [0] * (max(self.terms) + 1)
        for j, m in self.terms.items():
            a[j] = m
        for i in range(len(a) - 1, deg - 1, -1):
            c = a[i]
            if c:
                for j, pj in enumerate(phi):
                    a[i - deg + j] -= c * pj
        a = a[:deg] + [0] * max(0, deg - len(a))
        return tuple(a)

    def rational(self) -> int | None:
        """The integer value when the element is rational, else None."""
        c = self.canonical()
        return c[0] if not any(c[1:]) else None

    def __eq__(self, other):
        if isinstance(other, int):
            other = Cyclo.from_int(self.e, other)
        if not isinstance(other, Cyclo):
            return NotImplemented
        if other.e != self.e:
            return False
        d = self - other
        if not all(d.eval_mod(p) == 0 for p in verification_primes(self.e)):
            return False
        if abs(complex(d)) > FLOAT_TOL * max(1, sum(abs(m) for m in d.terms.values())):
            from .errors import InvariantViolation

            raise InvariantViolation("modular and floating equality disagree")
        return True

    def __hash__(self):
        return hash((self.e, self.canonical()))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for j in sorted(self.terms):
            m = self.terms[j]
            parts.append(f"{m}" if j == 0 else f"{m}*z{self.e}^{j}")
        return " + ".join(parts)

    def to_json(self) -> list[int]:
        return self.mults


def as_cyclo(e: int, v) -> Cyclo:
    return v if isinstance(v, Cyclo) else Cyclo.from_int(e, int(v))


def to_fraction(c: Cyclo, denom: int) -> Fraction:
    r = c.rational()
    if r is None:
        raise ValueError("value is not rational")
    return Fraction(r, denom)
