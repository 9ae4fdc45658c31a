import pytest
from hypothesis import given
from hypothesis import strategies as st

from flagspread import agammal as ag
from flagspread.families import build_agammal1
from flagspread.gf import field_of_order, mult_subgroup
from flagspread.permgrp import is_block, point_stabilizer

QS = (5, 7, 8, 9, 11, 16, 25, 27)
CLASS_COUNTS = {5: 1, 7: 1, 8: 2, 9: 3, 11: 1, 16: 3, 25: 3, 27: 2}


def _structures(q):
    F = field_of_order(q)
    for els in ag.transitive_g0_bruteforce(q):
        yield ag.structure_from_elements(F, els)


@given(st.sampled_from([8, 9, 16, 27]), st.data())
def test_compose_is_left_to_right(q, data):
    F = field_of_order(q)
    pair = st.tuples(st.integers(1, q - 1), st.integers(0, F.d - 1))
    g, h = data.draw(pair), data.draw(pair)
    z = data.draw(st.integers(0, q - 1))
    assert ag.apply(F, ag.compose(F, g, h), z) == ag.apply(F, h, ag.apply(F, g, z))


@pytest.mark.parametrize("q", QS)
def test_transitive_subgroups_closed_form(q):
    brute = ag.transitive_g0_bruteforce(q)
    assert set(ag.transitive_g0_closed_form(q)) == set(brute)
    assert len(brute) == CLASS_COUNTS[q]


@pytest.mark.parametrize("q", QS)
def test_structure_invariants(q):
    F = field_of_order(q)
    gl = {(a, 0) for a in range(1, q)}
    for s in _structures(q):
        assert F.d % s.s == 0 and (q - 1) % s.m == 0
        assert len(s.H) == (q - 1) // s.m
        assert (s.m == 1) == (gl <= s.elements)
        assert ag.is_transitive_g0(F, s.elements)


def test_agl17_structure():
    s = ag.analyze(build_agammal1(7))
    assert (s.s, s.d, s.m, len(s.H)) == (1, 1, 1, 6)


def test_agl17_blocks():
    assert sorted(ag.block_census_generic(build_agammal1(7)), key=len) == [(1, 6), (1, 2, 4)]


@pytest.mark.parametrize("q", QS)
def test_block_census_and_predictions(q):
    for s in _structures(q):
        group = ag.group_of(s)
        census = ag.block_census_from_params(s)
        assert census == ag.block_census_generic(group)
        for bp in ag.enumerate_block_params(s):
            assert ag.membership_direct(s, bp)
            assert ag.membership_closed_form(s, bp)
        for P in census:
            row = ag.block_report(s, group, P)
            assert row["lambda"] == row["lambda_pred"]
            assert row["components"] == row["components_pred"]
            if s.m == 1:
                assert row["subgroup"]
            if not row["subfield"]:
                assert (row["components"] == 1) == ag.connectivity_criterion(s, P)
                assert ag.connectivity_verdict(s, P) == (row["components"] == 1)
            if "P_eq_minus_P" in row:
                assert row["P_eq_minus_P"] == (row["K_order"] % 2 == 0)


def _row(q, P):
    group = build_agammal1(q)
    return ag.block_report(ag.analyze(group), group, P)


def test_q7_quadratic_residues_connected():
    r = _row(7, [1, 2, 4])
    assert (r["components"], r["order"], r["valency"]) == (1, 14, 3)


def test_q5_two_components():
    assert _row(5, [1, 4])["components"] == 2


def test_q27_index_two_connected():
    r = _row(27, mult_subgroup(field_of_order(27), 2))
    assert (r["components"], r["order"], r["valency"]) == (1, 54, 13)


@pytest.mark.parametrize("q,sub,comps,size", [(9, 3, 12, 3), (16, 4, 20, 4)])
def test_subfield_case(q, sub, comps, size):
    F = field_of_order(q)
    L = [x for x in range(q) if F.pow(x, sub) == x]
    s = ag.analyze(build_agammal1(q))
    v = ag.subfield_case(s, L)
    assert (v.is_subfield, v.lam, v.components, v.component_size) == (True, 1, comps, size)
    r = _row(q, [x for x in L if x])
    assert (r["lambda"], r["components"], r["component_sizes"]) == (1, comps, [size])


def test_gf2_subfield_is_degenerate():
    assert ag.is_subfield(field_of_order(8), [0, 1])
    with pytest.raises(ValueError):
        _row(8, [1])


def test_non_subgroup_blocks_exist():
    F = field_of_order(64)
    group = build_agammal1(64, [(F.exp(3), 0), (F.exp(1), 2)])
    s = ag.analyze(group)
    assert (s.s, s.m) == (2, 3)
    census = ag.block_census_from_params(s)
    S = point_stabilizer(group.group, 0)
    odd = [P for P in census if not ag._is_subgroup(F, P)]
    assert odd
    for P in odd:
        assert is_block(S, P)
        r = ag.block_report(s, group, P)
        assert r["lambda"] == r["lambda_pred"] and r["components"] == r["components_pred"]


def test_analyze_report_shape():
    rep = ag.analyze_report(build_agammal1(9, "gammal"))
    assert rep["census_match"]
    assert rep["structure"]["g0_order"] == 16
