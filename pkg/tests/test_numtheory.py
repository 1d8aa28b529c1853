import pytest
import sympy
from hypothesis import given, strategies as st

from cforge.numtheory import (
    factorint,
    is_prime,
    is_prime_power_of,
    p_part,
    prime_divisors,
    primes_one_mod,
    primitive_root,
    root_of_unity_mod,
    sqrt_mod_small,
)


@given(st.integers(min_value=0, max_value=10**12))
def test_is_prime_matches_sympy(n):
    assert is_prime(n) == sympy.isprime(n)


@given(st.integers(min_value=1, max_value=10**15))
def test_factorint_matches_sympy(n):
    assert factorint(n) == sympy.factorint(n)


def test_large_factorization():
    n = (2**61 - 1) * 1000003
    assert factorint(n) == {2**61 - 1: 1, 1000003: 1}
    assert prime_divisors(360) == [2, 3, 5]


def test_p_parts():
    assert p_part(720, 2) == 16
    assert p_part(720, 7) == 1
    assert is_prime_power_of(1, 3)
    assert is_prime_power_of(27, 3)
    assert not is_prime_power_of(12, 2)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 101, 65537])
def test_primitive_root(p):
    assert primitive_root(p) == sympy.primitive_root(p)


def test_roots_of_unity():
    for e, p in [(8, 17), (12, 13), (5, 11)]:
        z = root_of_unity_mod(e, p)
        assert pow(z, e, p) == 1
        assert all(pow(z, k, p) != 1 for k in range(1, e))
    with pytest.raises(ValueError):
        root_of_unity_mod(5, 13)


def test_primes_one_mod():
    ps = primes_one_mod(60, 2**31, 2)
    assert all(p > 2**31 and p % 60 == 1 and sympy.isprime(p) for p in ps)
    assert ps[0] < ps[1]
    assert not any(sympy.isprime(t) for t in range(ps[0] + 60, ps[1], 60))


def test_sqrt_mod_small():
    assert sqrt_mod_small(4, 13, 10) == 2
    assert sqrt_mod_small(2, 5, 4) is None
