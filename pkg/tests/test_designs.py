from collections import Counter, deque
from itertools import combinations

import pytest

from flagspread.designs import (
    analyze_block,
    block_stabilizer_transitive,
    design_from_block,
    flag_orbits,
)
from flagspread.families import build_agammal1, build_psl, build_psu3, build_ree, build_suzuki, canonical_block
from flagspread.gf import field_of_order


def _naive_edges(design, flags):
    """Xi straight from the definition: both points lie on both blocks."""
    blocks = [set(design.blocks[b]) for _, b in flags]
    out = set()
    for i, j in combinations(range(len(flags)), 2):
        (s, _), (t, _) = flags[i], flags[j]
        if s != t and {s, t} <= blocks[i] and {s, t} <= blocks[j]:
            out.add((i, j))
    return out


def _bfs_components(n, edges):
    adj = [[] for _ in range(n)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    seen, sizes = [False] * n, []
    for v in range(n):
        if seen[v]:
            continue
        seen[v], queue, size = True, deque([v]), 0
        while queue:
            x = queue.popleft()
            size += 1
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    queue.append(y)
        sizes.append(size)
    return sorted(sizes)


def _brute_lambda(design):
    count = Counter()
    for B in design.blocks:
        for pair in combinations(sorted(B), 2):
            count[pair] += 1
    values = set(count[pair] for pair in combinations(range(design.point_count), 2))
    assert len(values) == 1
    return values.pop()


CASES = {
    "suzuki8": (lambda: build_suzuki(8), lambda: canonical_block("suzuki", 8), (65, 9, 9), 520, 8, 1),
    "ree3-i": (lambda: build_ree(3), lambda: canonical_block("ree", 3, "i"), (28, 4, 1), 252, 3, 63),
    "ree3-ii": (lambda: build_ree(3), lambda: canonical_block("ree", 3, "ii"), (28, 4, 4), 252, 3, 3),
    "ree3-iii": (lambda: build_ree(3), lambda: canonical_block("ree", 3, "iii"), (28, 10, 10), 84, 9, 1),
    "ree3-iv": (lambda: build_ree(3), lambda: canonical_block("ree", 3, "iv"), (28, 10, 10), 84, 9, 3),
    "psu33": (lambda: build_psu3(3), lambda: canonical_block("psu3", 3), (28, 4, 1), 252, 3, 63),
    "psl32": (lambda: build_psl(3, 2), lambda: canonical_block("psl", 2, d=3), (7, 3, 1), 21, 2, 7),
    "psl33": (lambda: build_psl(3, 3), lambda: canonical_block("psl", 3, d=3), (13, 4, 1), 52, 3, 13),
    "agl7": (lambda: build_agammal1(7), lambda: [1, 2, 4], (7, 4, 4), 14, 3, 1),
}


@pytest.fixture(scope="module", params=sorted(CASES))
def instance(request):
    build, block, design, order, valency, comps = CASES[request.param]
    ag = build()
    return ag, analyze_block(ag, block()), design, order, valency, comps


def test_design_parameters(instance):
    ag, inst, design, *_ = instance
    d = inst.design
    assert (d.point_count, d.k, d.lam) == design
    assert all(len(B) == d.k for B in d.blocks)
    assert _brute_lambda(d) == d.lam
    assert d.b * d.k * (d.k - 1) == d.lam * d.point_count * (d.point_count - 1)


def test_graph_shape(instance):
    ag, inst, _, order, valency, comps = instance
    g = inst.graph
    assert (g.order, g.valency, g.components) == (order, valency, comps)
    assert len(g.edges) == g.order * g.valency // 2
    deg = Counter()
    for a, b in g.edges:
        deg[a] += 1
        deg[b] += 1
    assert set(deg.values()) == {inst.design.k - 1}


def test_edges_match_definition(instance):
    ag, inst, *_ = instance
    naive = _naive_edges(inst.design, inst.graph.vertices)
    assert {tuple(sorted(e)) for e in inst.graph.edges} == naive
    assert _bfs_components(inst.graph.order, naive) == sorted(inst.graph.component_sizes)


def test_coset_prediction(instance):
    ag, inst, *_ = instance
    assert inst.coset.predicted_components == inst.graph.components


def test_spread(instance):
    ag, inst, *_ = instance
    u = inst.design.point_count
    assert inst.spread.k == 1
    assert inst.spread.v * u == inst.graph.order
    assert inst.spread.quotient_edges == u * (u - 1) // 2


def test_lambda_dichotomy(instance):
    ag, inst, *_ = instance
    d = inst.design
    assert d.lam in (1, d.k)
    assert inst.lam.lam == d.lam
    bi = inst.omega.rep[1]
    assert block_stabilizer_transitive(ag, d, bi) == (d.lam == 1)


def test_at_most_one_strongly_feasible(instance):
    ag, inst, *_ = instance
    assert sum(o.strongly_feasible for o in inst.orbits) == 1
    for o in inst.orbits:
        assert o.feasible or not o.strongly_feasible
    if inst.design.lam == 1:
        assert len(inst.omega.flags) == inst.design.b * inst.design.k


def test_lambda_one_gives_complete_components(instance):
    ag, inst, *_ = instance
    d = inst.design
    if d.lam == 1:
        assert set(inst.graph.component_sizes) == {d.k}
        assert inst.graph.order == d.b * d.k


def test_suzuki_spread_numbers():
    inst = analyze_block(build_suzuki(8), canonical_block("suzuki", 8))
    assert (inst.spread.v, inst.spread.r) == (8, 8)
    assert inst.lam.branch == "lambda=r+1"
    assert inst.coset.subgroup_order == 29120


def test_ree_case_ii_index_three():
    inst = analyze_block(build_ree(3), canonical_block("ree", 3, "ii"))
    assert inst.coset.subgroup_order == 504


def test_ree_case_iii_spread():
    inst = analyze_block(build_ree(3), canonical_block("ree", 3, "iii"))
    assert (inst.spread.v, inst.spread.r) == (3, 9)


def test_subfield_design_q9():
    ag = build_agammal1(9)
    F = field_of_order(9)
    P = [x for x in range(1, 9) if F.pow(x, 3) == x]
    assert ag.points[ag.sigma].coords == (0,) and len(P) == 2
    inst = analyze_block(ag, P)
    assert inst.design.lam == 1
    assert inst.graph.components == 12 and set(inst.graph.component_sizes) == {3}


def test_design_from_block_rejects_nothing_extra():
    ag = build_psl(3, 2)
    d = design_from_block(ag.group, sorted(set(canonical_block("psl", 2, d=3)) | {ag.sigma}))
    assert d.b == 7
    assert len(flag_orbits(ag.group, d, ag.sigma)) == 1


def test_dot_and_edge_list_deterministic():
    a = analyze_block(build_psl(3, 2), canonical_block("psl", 2, d=3)).graph
    b = analyze_block(build_psl(3, 2), canonical_block("psl", 2, d=3)).graph
    assert a.to_dot() == b.to_dot()
    assert a.to_dot().startswith("graph flaggraph {")
    assert len(a.to_edge_list().splitlines()) == len(a.edges) == 21


@pytest.mark.parametrize("P", [[], [0], [1], list(range(1, 7))])
def test_trivial_blocks_rejected(P):
    with pytest.raises(ValueError):
        analyze_block(build_psl(3, 2), P)
