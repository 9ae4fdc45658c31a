import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from flagspread import octonion as oc
from flagspread.gf import field_of_order

F4 = field_of_order(4)
PERP = [oc.symbol(F4, s) for s in oc.PERP_ORDER]

coords = st.lists(st.integers(0, 3), min_size=8, max_size=8).map(lambda c: oc.Octonion(F4, tuple(c)))
perp = st.lists(st.integers(0, 3), min_size=7, max_size=7).map(lambda c: oc.from_perp_coords(F4, c))


def x(i):
    return oc.basis(F4, i)


def test_table_entries():
    assert x(1) * x(8) == x(4)
    assert x(8) * x(1) == oc.identity(F4) + x(4)


@given(coords)
def test_identity_two_sided(a):
    e = oc.identity(F4)
    assert e * a == a and a * e == a


def test_bilinear_rule():
    assert oc.bilinear(x(1), x(8)) == 1
    assert oc.bilinear(x(1), x(2)) == 0
    for i, j in itertools.product(range(1, 9), repeat=2):
        assert oc.bilinear(x(i), x(j)) == (1 if i + j == 9 else 0)


def test_trilinear_example():
    assert oc.trilinear(x(2), x(3), x(8)) == 1


@given(perp, perp, perp)
def test_trilinear_symmetric(a, b, c):
    v = oc.trilinear(a, b, c)
    for p in itertools.permutations((a, b, c)):
        assert oc.trilinear(*p) == v


def test_master_identity_on_basis():
    for a, b, c in itertools.product(PERP, repeat=3):
        assert oc.trilinear(a, b, c) == oc.bilinear(a * b, c)


@given(perp, perp, perp)
def test_master_identity_random(a, b, c):
    assert oc.trilinear(a, b, c) == oc.bilinear(a * b, c)


@given(coords, coords)
def test_norm_multiplicative(a, b):
    assert oc.norm(a * b) == F4.mul(oc.norm(a), oc.norm(b))


def test_tables_consistent():
    assert oc.table_b_mismatches(F4) == []
    assert oc.table_b_mismatches(2) == []


def test_delta_sets():
    assert oc.span_rref(oc.delta_set(x(1))) == oc.span_rref([x(1), x(2), x(3)])
    assert oc.span_rref(oc.delta_set(x(2))) == oc.span_rref([x(1), x(2), x(6)])
    assert len(oc.span_rref(oc.delta_set(oc.zero(F4)))) == 7


@given(perp)
def test_perp_coordinates_roundtrip(a):
    assert oc.in_e_perp(a)
    assert oc.from_perp_coords(F4, oc.perp_coords(a)) == a


def test_odd_characteristic_rejected():
    with pytest.raises(ValueError):
        oc.zero(field_of_order(9))
