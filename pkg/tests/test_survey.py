import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from flagspread import survey as sv
from flagspread.permgrp import is_block, point_stabilizer


@pytest.fixture(scope="module")
def classes5():
    return sv.transitive_classes(2, 5)


@pytest.fixture(scope="module")
def triples5(classes5):
    return {c.label: sv.representative_blocks(c) for c in classes5}


mats = st.tuples(*[st.integers(0, 6)] * 4)


@given(mats, mats)
def test_det_multiplicative(A, B):
    p = 7
    assert sv.mat_det(sv.mat_mul(A, B, 2, p), 2, p) == sv.mat_det(A, 2, p) * sv.mat_det(B, 2, p) % p


@given(mats)
def test_inverse(A):
    p = 7
    if sv.mat_det(A, 2, p) == 0:
        return
    assert sv.mat_mul(A, sv.mat_inv(A, 2, p), 2, p) == sv.mat_identity(2)


def test_base_groups():
    for p in (5, 7, 11):
        Q = sv.quaternion_base(p)
        assert Q.order == 8
    assert sv.sl25_base(5).order == 120
    assert sv.sl25_base(11).order == 120
    assert sv.sl25_base(7) is None


def test_class_orders_p5(classes5):
    assert sorted({c.group.order for c in classes5}) == [24, 48, 96, 120, 240, 480]
    for c in classes5:
        assert sv.transitive_on_nonzero(c.group)
        assert sv.has_normal_sl23(c.group) or sv.has_normal_sl25(c.group)


def test_class_orders_p7():
    assert sorted({c.group.order for c in sv.transitive_classes(2, 7)}) == [48, 144]


def test_full_gl_excluded_unless_socle_holds(classes5):
    assert 480 in {c.group.order for c in classes5}
    GL7 = sv.MatGroup(2, 7, [(3, 0, 0, 1), (1, 1, 0, 1), (0, 1, 6, 0)])
    assert GL7.order == 2016
    assert sv.transitive_on_nonzero(GL7)
    assert not sv.has_normal_sl23(GL7) and not sv.has_normal_sl25(GL7)
    assert 2016 not in {c.group.order for c in sv.transitive_classes(2, 7)}


def test_p5_order_24_rows(triples5):
    (label,) = [k for k in triples5 if ":24:" in k]
    assert sv.rows_of(triples5[label]) == [[3, 3, 1], [4, 4, 1], [5, 5, 1], [5, 1, 1], [7, 7, 1], [9, 9, 1]]


def test_triple_invariants(classes5, triples5):
    for c in classes5:
        G0p = point_stabilizer(sv.g0_perm_group(c.group), 0)
        for t in triples5[c.label]:
            assert is_block(G0p, t.block)
            assert t.lam in (1, t.r_plus_1)
            assert (t.lam == 1) == t.is_line
            assert t.components > 1
            x = t.witness
            Gx = {g for g in c.group.elements if sv.vec_mat(x, g, 2, 5) == x}
            assert t.H_order % len(Gx) == 0


def test_dedup_soundness_p5(classes5, triples5):
    V = sv.vectors(2, 5)
    for c in classes5:
        ts = triples5[c.label]
        systems = []
        for t in ts:
            P = [V[i] for i in t.block]
            systems.append({frozenset(sv.vec_mat(y, g, 2, 5) for y in P) for g in c.group.elements})
        for i in range(len(ts)):
            for j in range(i + 1, len(ts)):
                if len(ts[i].block) != len(ts[j].block):
                    continue
                Pi = [V[k] for k in ts[i].block]
                for n in c.normalizer.elements:
                    assert frozenset(sv.vec_mat(y, n, 2, 5) for y in Pi) not in systems[j]


@pytest.mark.parametrize("p,total", [(5, 19), (7, 21)])
def test_emit_table(p, total):
    r = sv.emit_table(p)
    assert r.passed, r.discrepancies
    assert r.total == total
    assert r.to_json()["all_disconnected"]


def test_p7_order_48_rows():
    r = sv.emit_table(7)
    rows48 = [c["rows"] for c in r.classes if c["g0_order"] == 48]
    assert any(len(rows) == 9 and sum(k for *_, k in rows) == 15 and [25, 25, 1] in rows for rows in rows48)


def test_stretch_guard():
    with pytest.raises(ValueError):
        sv.emit_table(11)


def test_vector_index_roundtrip():
    rng = random.Random(3)
    V = sv.vectors(2, 7)
    for _ in range(20):
        i = rng.randrange(len(V))
        assert sv.vector_index(V[i], 7) == i


@pytest.mark.stretch
def test_emit_table_p11():
    r = sv.emit_table(11, stretch=True)
    assert r.passed, r.discrepancies
    assert r.total == 60
