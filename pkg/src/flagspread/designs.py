"""Block designs from a 2-transitive group, their flag orbits and flag graphs.

Given a group G on V, a point sigma and a block P of G_sigma, the design
has block set L^G with L = P + {sigma}.  A flag is a pair (point, block)
with the point on the block.  For a strongly feasible orbit Omega of
flags, two flags (s, L) and (t, N) are adjacent when s != t and both s
and t lie on both L and N.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .permgrp import (
    Perm,
    PermGroup,
    image_set,
    is_transitive_on,
    mul,
    orbit_transversal,
    point_stabilizer,
    reduce_generators,
    set_orbit,
    set_stabilizer,
)

EXHAUSTIVE_LAMBDA_LIMIT = 200

Flag = tuple[int, int]


class InvariantError(AssertionError):
    """A structural property that the theory guarantees has failed."""


@dataclass
class IncidenceDesign:
    point_count: int
    blocks: list[tuple[int, ...]]
    k: int
    lam: int
    block_index: dict[tuple[int, ...], int] = field(repr=False)

    @property
    def b(self) -> int:
        return len(self.blocks)

    @property
    def replication(self) -> int:
        return self.b * self.k // self.point_count

    def params(self) -> dict:
        return {"u": self.point_count, "k": self.k, "lambda": self.lam, "b": self.b,
                "replication": self.replication}


@dataclass
class FlagOrbit:
    flags: list[Flag]
    feasible: bool
    strongly_feasible: bool
    sigma: int
    rep: Flag

    def at(self, point: int) -> list[Flag]:
        return [f for f in self.flags if f[0] == point]


@dataclass
class FlagGraph:
    vertices: list[Flag]
    edges: list[tuple[int, int]]
    valency: int
    component_sizes: list[int]
    labels: np.ndarray = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.vertices)

    @property
    def components(self) -> int:
        return len(self.component_sizes)

    def to_dot(self) -> str:
        lines = ["graph flaggraph {"]
        for i, (s, b) in enumerate(self.vertices):
            lines.append(f'  {i} [label="{s}|{b}"];')
        for a, c in self.edges:
            lines.append(f"  {a} -- {c};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_edge_list(self) -> str:
        return "".join(f"{a} {c}\n" for a, c in self.edges)


def _group(g) -> PermGroup:
    return g.group if hasattr(g, "group") else g


def design_from_block(group, L: Sequence[int]) -> IncidenceDesign:
    """The design (V, L^G) with its constant pair count lambda."""
    G = _group(group)
    L = tuple(sorted(set(L)))
    if len(L) < 2:
        raise ValueError("a block needs at least two points")
    u = G.degree
    blocks = sorted(set_orbit(G, L))
    k = len(L)
    counts: Counter = Counter()
    if u <= EXHAUSTIVE_LAMBDA_LIMIT:
        for B in blocks:
            counts.update(combinations(B, 2))
        values = set(counts.values())
        if len(counts) != u * (u - 1) // 2 or len(values) != 1:
            raise InvariantError("pair counts are not constant: the group is not 2-transitive")
        lam = values.pop()
    else:
        from .families import check_two_transitive
        if not check_two_transitive(G, 0):
            raise InvariantError("lambda certification needs a 2-transitive group")
        lam = sum(1 for B in blocks if 0 in B and 1 in B)
    if len(blocks) * k * (k - 1) != lam * u * (u - 1):
        raise InvariantError("b k (k-1) != lambda u (u-1)")
    return IncidenceDesign(u, blocks, k, lam, {B: i for i, B in enumerate(blocks)})


def block_permutations(group, design: IncidenceDesign) -> list[Perm]:
    """Action of each generator on block indices."""
    G = _group(group)
    out = []
    for g in G.generators:
        out.append(tuple(design.block_index[image_set(B, g)] for B in design.blocks))
    return out


def _flag_orbit_lists(group, design: IncidenceDesign) -> list[list[Flag]]:
    G = _group(group)
    bperms = block_permutations(G, design)
    seen: set[Flag] = set()
    orbits = []
    for bi, B in enumerate(design.blocks):
        for x in B:
            start = (x, bi)
            if start in seen:
                continue
            seen.add(start)
            comp = [start]
            i = 0
            while i < len(comp):
                pt, blk = comp[i]
                i += 1
                for g, bp in zip(G.generators, bperms):
                    f = (g[pt], bp[blk])
                    if f not in seen:
                        seen.add(f)
                        comp.append(f)
            orbits.append(sorted(comp))
    return sorted(orbits)


def _stabilizer_cache(G: PermGroup) -> dict:
    cache = getattr(G, "_flag_cache", None)
    if cache is None:
        cache = {}
        G._flag_cache = cache
    return cache


def point_stab(G: PermGroup, sigma: int) -> PermGroup:
    cache = _stabilizer_cache(G)
    key = ("point", sigma)
    if key not in cache:
        cache[key] = point_stabilizer(G, sigma)
    return cache[key]


def flag_stabilizer(group, design: IncidenceDesign, flag: Flag) -> PermGroup:
    """G_{sigma, L} for the flag (sigma, L)."""
    G = _group(group)
    sigma, bi = flag
    return set_stabilizer(point_stab(G, sigma), design.blocks[bi])


def classify_orbit(group, design: IncidenceDesign, flags: list[Flag], sigma: int | None = None) -> FlagOrbit:
    G = _group(group)
    if sigma is None:
        sigma = flags[0][0]
    at = [f for f in flags if f[0] == sigma]
    rep = at[0]
    cond_a = len(at) >= 2
    cond_b = False
    if cond_a:
        T = flag_stabilizer(G, design, rep)
        rest = [x for x in design.blocks[rep[1]] if x != sigma]
        cond_b = is_transitive_on(T, rest)
    cond_c = True
    for (_, b1), (_, b2) in combinations(at, 2):
        if set(design.blocks[b1]) & set(design.blocks[b2]) != {sigma}:
            cond_c = False
            break
    feasible = cond_a and cond_b
    return FlagOrbit(flags, feasible, feasible and cond_c, sigma, rep)


def flag_orbits(group, design: IncidenceDesign, sigma: int | None = None) -> list[FlagOrbit]:
    """All G-orbits on flags, each classified as feasible / strongly feasible."""
    G = _group(group)
    if sigma is None:
        sigma = getattr(group, "sigma", 0)
    orbits = [classify_orbit(G, design, fl, sigma) for fl in _flag_orbit_lists(G, design)]
    if sum(o.strongly_feasible for o in orbits) > 1:
        raise InvariantError("more than one strongly feasible flag orbit")
    return orbits


def orbit_of_flag(group, design: IncidenceDesign, flag: Flag, sigma: int | None = None) -> FlagOrbit:
    """The classified orbit of a single flag."""
    G = _group(group)
    bperms = block_permutations(G, design)
    seen = {flag}
    comp = [flag]
    i = 0
    while i < len(comp):
        pt, blk = comp[i]
        i += 1
        for g, bp in zip(G.generators, bperms):
            f = (g[pt], bp[blk])
            if f not in seen:
                seen.add(f)
                comp.append(f)
    return classify_orbit(G, design, sorted(comp), flag[0] if sigma is None else sigma)


def flag_graph(group, design: IncidenceDesign, omega: FlagOrbit) -> FlagGraph:
    """Vertices are the flags of omega; edges join partner flags."""
    if not omega.strongly_feasible:
        raise ValueError("flag graphs are built only for strongly feasible orbits")
    verts = omega.flags
    # partner[t][s] = the flag (t, N) of omega with s on N
    partner: dict[int, dict[int, int]] = {}
    for i, (t, bi) in enumerate(verts):
        row = partner.setdefault(t, {})
        for s in design.blocks[bi]:
            if s == t:
                continue
            if s in row:
                raise InvariantError(f"two flags at point {t} contain {s}")
            row[s] = i
    edges = set()
    for i, (s, bi) in enumerate(verts):
        for t in design.blocks[bi]:
            if t == s:
                continue
            j = partner[t].get(s)
            if j is None:
                raise InvariantError(f"no partner flag at {t} for flag {(s, bi)}")
            t_flag = verts[j]
            if s not in design.blocks[t_flag[1]] or t not in design.blocks[bi]:
                raise InvariantError("partner flag is not incident")
            edges.add((min(i, j), max(i, j)))
    edges_sorted = sorted(edges)
    deg = Counter()
    for a, c in edges_sorted:
        deg[a] += 1
        deg[c] += 1
    valencies = {deg[i] for i in range(len(verts))}
    if len(valencies) != 1:
        raise InvariantError("flag graph is not regular")
    valency = valencies.pop()
    if valency != design.k - 1:
        raise InvariantError(f"valency {valency} != block size - 1")
    n = len(verts)
    if edges_sorted:
        rows = np.array([a for a, _ in edges_sorted])
        cols = np.array([c for _, c in edges_sorted])
        adj = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n))
    else:
        adj = coo_matrix((n, n), dtype=np.int8)
    ncomp, labels = connected_components(adj, directed=False)
    sizes = sorted(Counter(labels.tolist()).values())
    return FlagGraph(verts, edges_sorted, valency, sizes, labels)


@dataclass
class SpreadReport:
    v: int
    r: int
    b: int
    k: int
    quotient_edges: int

    def to_json(self) -> dict:
        return {"v": self.v, "r": self.r, "b": self.b, "k": self.k}


def spread_check(graph: FlagGraph, omega: FlagOrbit, point_count: int) -> SpreadReport:
    """Check that the cells Omega(s) are independent and pairwise joined by one edge."""
    cell = [f[0] for f in graph.vertices]
    cell_sizes = Counter(cell)
    if len(cell_sizes) != point_count or len(set(cell_sizes.values())) != 1:
        raise InvariantError("cells Omega(s) are not of equal size on every point")
    between: Counter = Counter()
    for a, c in graph.edges:
        x, y = cell[a], cell[c]
        if x == y:
            raise InvariantError(f"edge inside cell {x}")
        between[(min(x, y), max(x, y))] += 1
    for pair, cnt in between.items():
        if cnt != 1:
            raise InvariantError(f"cells {pair} joined by {cnt} edges")
    expected = point_count * (point_count - 1) // 2
    if len(between) != expected:
        missing = next((x, y) for x in range(point_count) for y in range(x + 1, point_count)
                       if (x, y) not in between)
        raise InvariantError(f"cells {missing} are not adjacent; quotient is not complete")
    v = next(iter(cell_sizes.values()))
    return SpreadReport(v=v, r=graph.valency, b=v * graph.valency, k=1, quotient_edges=len(between))


@dataclass
class CosetReport:
    group_order: int
    flag_stabilizer_order: int
    subgroup_order: int
    predicted_components: int
    witness: Perm = field(repr=False)

    def to_json(self) -> dict:
        return {"group_order": self.group_order, "flag_stabilizer_order": self.flag_stabilizer_order,
                "generated_order": self.subgroup_order, "predicted_components": self.predicted_components}


def swapping_element(G: PermGroup, s: int, t: int) -> Perm:
    """An element exchanging points ``s`` and ``t``, from orbit transversals."""
    u = orbit_transversal(G, s)[t]
    x = u[t]
    v = orbit_transversal(point_stab(G, t), x)[s]
    g = mul(u, v)
    assert g[s] == t and g[t] == s
    return g


def coset_cross_check(group, design: IncidenceDesign, omega: FlagOrbit, graph: FlagGraph) -> CosetReport:
    """Predict the component count as |G| / |<G_{s,L}, g>|."""
    G = _group(group)
    s, bi = omega.rep
    t = next(x for x in design.blocks[bi] if x != s)
    T = flag_stabilizer(G, design, omega.rep)
    g = swapping_element(G, s, t)
    H = reduce_generators(G.degree, list(T.generators) + [g])
    order = G.order()
    if order // T.order() != len(omega.flags):
        raise InvariantError("|Omega| != |G| / |G_{s,L}|")
    predicted = order // H.order()
    if predicted != graph.components:
        raise InvariantError(f"coset prediction {predicted} != {graph.components} components")
    return CosetReport(order, T.order(), H.order(), predicted, g)


@dataclass
class LambdaVerdict:
    branch: str
    lam: int
    transitive_on_block: bool


def lambda_dichotomy(group, design: IncidenceDesign, omega: FlagOrbit) -> LambdaVerdict:
    """Decide lambda = 1 or lambda = r + 1 from the stabilizer of L.

    G_L is transitive on L exactly when every flag (x, L) with x on L lies
    in omega, since the G_L-orbit of s on L is {x : (x, L) in omega}.
    """
    if not omega.strongly_feasible:
        raise ValueError("lambda dichotomy applies to strongly feasible orbits")
    s, bi = omega.rep
    L = design.blocks[bi]
    flags = set(omega.flags)
    transitive = all((x, bi) in flags for x in L)
    r = design.k - 1
    lam = 1 if transitive else r + 1
    if lam != design.lam:
        raise InvariantError(f"lambda dichotomy predicts {lam}, design has {design.lam}")
    return LambdaVerdict("lambda=1" if transitive else "lambda=r+1", lam, transitive)


def block_stabilizer_transitive(group, design: IncidenceDesign, bi: int) -> bool:
    """Direct check: is the setwise stabilizer of a block transitive on it?"""
    G = _group(group)
    GL = set_stabilizer(G, design.blocks[bi])
    return is_transitive_on(GL, design.blocks[bi])


@dataclass
class FlagGraphInstance:
    """Everything computed for one block P of G_sigma."""

    design: IncidenceDesign
    omega: FlagOrbit
    graph: FlagGraph
    spread: SpreadReport
    coset: CosetReport
    lam: LambdaVerdict
    orbits: list[FlagOrbit]

    def report(self, **head) -> dict:
        d = self.design
        out = dict(head)
        out.update({
            "u": d.point_count,
            "k": d.k,
            "lambda": d.lam,
            "b": d.b,
            "omega_size": self.graph.order,
            "valency": self.graph.valency,
            "components": self.graph.component_sizes,
            "spread": self.spread.to_json(),
            "flag_orbits": len(self.orbits),
            "lambda_branch": self.lam.branch,
            "coset": self.coset.to_json(),
        })
        return out


def analyze_block(group, P: Sequence[int], sigma: int | None = None, all_orbits: bool = True) -> FlagGraphInstance:
    """Run the full pipeline for the block ``P`` of the stabilizer of ``sigma``."""
    G = _group(group)
    if sigma is None:
        sigma = getattr(group, "sigma", 0)
    L = sorted(set(P) | {sigma})
    if not 3 <= len(L) < G.degree:
        raise ValueError("P must be a nontrivial block: 1 < |P| < degree - 1")
    design = design_from_block(G, L)
    rep = (sigma, design.block_index[tuple(L)])
    if all_orbits:
        orbits = flag_orbits(G, design, sigma)
        omega = next(o for o in orbits if rep in set(o.flags))
    else:
        omega = orbit_of_flag(G, design, rep, sigma)
        orbits = [omega]
    if not omega.strongly_feasible:
        raise InvariantError("the flag (sigma, L) does not lie in a strongly feasible orbit")
    if omega.rep != rep:
        omega.rep = rep
    graph = flag_graph(G, design, omega)
    spread = spread_check(graph, omega, design.point_count)
    coset = coset_cross_check(G, design, omega, graph)
    lam = lambda_dichotomy(G, design, omega)
    return FlagGraphInstance(design, omega, graph, spread, coset, lam, orbits)
