from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from flagspread import numtheory as nt
from flagspread.gf import prime_power


def _prime_powers(lo, hi):
    out = []
    for q in range(lo, hi + 1):
        try:
            prime_power(q)
        except ValueError:
            continue
        out.append(q)
    return out


def test_order_of_5_mod_16():
    assert nt.order_mod(5, 16) == 4


def test_lemma_3q_example():
    assert nt.lemma_3q_solutions(5) == [0, 15]


def test_geometric_example():
    assert nt.geometric_solutions(2, 3) == [1, 3, 7]


@pytest.mark.parametrize("q", [q for q in _prime_powers(3, 128) if (q + 1) % 3 == 0])
def test_lemma_3_families(q):
    assert nt.lemma_3q_solutions(q) == [0, 3 * q]
    assert nt.lemma_3_solutions(q) == [0, 3]


@pytest.mark.parametrize("q", _prime_powers(3, 128))
def test_geometric_family(q):
    for n in (1, 2, 3):
        assert nt.geometric_solutions(q, n) == nt.geometric_closed_form(q, n)


@pytest.mark.parametrize("q", [3, 27])
def test_half_shift_has_no_solutions(q):
    for n in (1, 2, 3):
        assert nt.half_shift_solutions(q, n) == []


def test_side_conditions_enforced():
    with pytest.raises(ValueError):
        nt.lemma_3q_solutions(4)
    with pytest.raises(ValueError):
        nt.half_shift_solutions(9, 1)


def test_order_criterion_matches_brute_force():
    for a in range(2, 51):
        for m in range(2, 25):
            if gcd(a, m) == 1:
                assert nt.order_criterion(a, m) == nt.has_order_m(a, m), (a, m)


def test_three_has_order_two_mod_four():
    assert nt.has_order_m(3, 2)
    assert nt.order_criterion(3, 2)
    assert not nt.order_criterion_even_rule(3, 2)


def test_even_rule_fails_exactly_when_m_is_2_mod_4():
    for a in range(2, 51):
        for m in range(2, 25):
            if gcd(a, m) != 1:
                continue
            wrong = nt.order_criterion_even_rule(a, m) != nt.has_order_m(a, m)
            predicted = (a % 4 == 3 and m % 4 == 2
                         and nt.prime_divisors(m) <= nt.prime_divisors(a - 1))
            assert wrong == predicted, (a, m)


@given(st.integers(2, 400), st.integers(2, 400))
def test_order_mod_is_minimal(a, c):
    if gcd(a, c) != 1:
        return
    k = nt.order_mod(a, c)
    assert pow(a, k, c) == 1 % c
    assert all(pow(a, j, c) != 1 for j in range(1, k))


@given(st.integers(2, 7), st.integers(1, 10**6))
def test_ord_p_valuation(p, n):
    if p in (4, 6):
        return
    v = nt.ord_p(p, n)
    assert n % p ** v == 0 and n % p ** (v + 1) != 0
