import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from flagspread.gf import (
    AutPower,
    bracket,
    field_of_order,
    is_irreducible,
    make_field,
    mult_subgroup,
    prime_power,
    twist,
)

ORDERS = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49, 64, 81, 125, 243]


def _brute_irreducible(f, p):
    """No root-free factorisation check: trial division by every monic poly of lower degree."""
    d = len(f) - 1
    for k in range(1, d // 2 + 1):
        for tail in itertools.product(range(p), repeat=k):
            g = list(tail) + [1]
            r = list(f)
            while len(r) - 1 >= k:
                c = r[-1]
                shift = len(r) - 1 - k
                for i, gi in enumerate(g):
                    r[shift + i] = (r[shift + i] - c * gi) % p
                r.pop()
            if not any(r):
                return False
    return True


def test_prime_field_modulus():
    F = make_field(2, 1)
    assert F.modulus == (0, 1)
    assert F.generator == 1


def test_known_moduli():
    assert make_field(3, 2).modulus == (1, 0, 1)
    assert make_field(2, 3).modulus == (1, 1, 0, 1)


@pytest.mark.parametrize("p,d", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (2, 5)])
def test_modulus_is_least_irreducible(p, d):
    F = make_field(p, d)
    assert _brute_irreducible(list(F.modulus), p)
    for code in range(p ** d):
        cand = [(code // p ** i) % p for i in range(d)] + [1]
        if tuple(cand) == F.modulus:
            break
        assert not _brute_irreducible(cand, p)
    assert is_irreducible(list(F.modulus), p)


@pytest.mark.parametrize("q", ORDERS)
def test_generator_is_primitive(q):
    F = field_of_order(q)
    assert F.order(F.generator) == q - 1
    assert sorted(F.exp(i) for i in range(q - 1)) == list(range(1, q))
    for g in range(1, F.generator):
        assert F.order(g) < q - 1


def test_gf9_examples():
    F = field_of_order(9)
    assert (F(1) + F(2)).index == 0
    x = F(3)
    assert (x * x).index == 2


@pytest.mark.parametrize("q", [4, 8, 9, 16, 25, 27, 49, 64, 81])
def test_field_axioms_exhaustive(q):
    F = field_of_order(q)
    for a in range(q):
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
    for a, b, c in itertools.product(range(q), repeat=3):
        assert F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.add(a, F.add(b, c)) == F.add(F.add(a, b), c)


@pytest.mark.parametrize("q", [125, 243, 256, 343, 1024])
def test_field_axioms_random(q):
    F = field_of_order(q)
    rng = random.Random(q)
    for _ in range(10_000):
        a, b, c = (rng.randrange(q) for _ in range(3))
        assert F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


def test_prime_power():
    assert prime_power(27) == (3, 3)
    assert prime_power(7) == (7, 1)
    with pytest.raises(ValueError):
        prime_power(12)


def test_suzuki_sigma_squares_to_frobenius_gf8():
    F = field_of_order(8)
    s = AutPower(2)
    for x in F.elements():
        assert twist(twist(x, s), s) == x * x


def test_twist_identity_and_bar():
    F = field_of_order(9)
    for x in F.elements():
        assert twist(x, 0) == x
        assert twist(twist(x, 1), 1) == x


@given(st.sampled_from(ORDERS), st.data())
def test_twist_is_automorphism(q, data):
    F = field_of_order(q)
    p, d = prime_power(q)
    k = data.draw(st.integers(0, d - 1))
    x, y = (F(data.draw(st.integers(0, q - 1))) for _ in range(2))
    assert twist(x * y, k) == twist(x, k) * twist(y, k)
    assert twist(x + y, k) == twist(x, k) + twist(y, k)


def test_mult_subgroup_examples():
    assert sorted(mult_subgroup(field_of_order(7), 1)) == [1, 2, 3, 4, 5, 6]
    assert sorted(mult_subgroup(field_of_order(7), 2)) == [1, 2, 4]
    F9 = field_of_order(9)
    assert sorted(mult_subgroup(F9, 4)) == sorted([1, F9.neg(1)])


def test_bracket_values():
    assert bracket(1, 0, 3) == 0
    assert bracket(1, 2, 3) == 4


@given(st.sampled_from([8, 9, 16, 27, 64, 81]), st.data())
def test_bracket_is_twisted_product(q, data):
    F = field_of_order(q)
    p, d = prime_power(q)
    n = data.draw(st.integers(1, d))
    i = data.draw(st.integers(0, 6))
    x = F(data.draw(st.integers(1, q - 1)))
    prod = F.one
    for j in range(i):
        prod = prod * twist(x, n * j)
    assert F.pow(x.index, bracket(n, i, p)) == prod.index
