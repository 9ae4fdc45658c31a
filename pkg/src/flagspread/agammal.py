"""Structure, blocks and flag-graph components for 2-transitive G <= AGammaL(1, q).

An element of G_0 <= GammaL(1, q) is stored as a pair ``(a, j)`` meaning
``t(a, j): z -> a z^(p^j)``, with ``j`` taken mod d.  Products follow the
left-to-right convention: ``t(a1, j1) t(a2, j2) = t(a2 a1^(p^j2), j1 + j2)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

from .families import ActionGroup, build_agammal1
from .gf import FieldSpec, bracket, field_of_order, mult_subgroup
from .linalg import rank
from .numtheory import has_order_m, prime_divisors
from .permgrp import blocks_containing, point_stabilizer

Pair = tuple[int, int]


def compose(F: FieldSpec, g: Pair, h: Pair) -> Pair:
    a1, j1 = g
    a2, j2 = h
    return F.mul(a2, F.frob(a1, j2)), (j1 + j2) % F.d


def apply(F: FieldSpec, g: Pair, z: int) -> int:
    return F.mul(g[0], F.frob(z, g[1]))


def pair_closure(F: FieldSpec, gens: Iterable[Pair]) -> frozenset[Pair]:
    gens = [(a, j % F.d) for a, j in gens]
    seen = {(1, 0)}
    frontier = [(1, 0)]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(F, x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def is_transitive_g0(F: FieldSpec, elements: Iterable[Pair]) -> bool:
    return len({apply(F, g, 1) for g in elements}) == F.q - 1


@dataclass
class GammaLStructure:
    field: FieldSpec
    s: int
    m: int
    H: list[int]
    x: int
    ell: int
    elements: frozenset[Pair] = field(repr=False)

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def d(self) -> int:
        return self.field.d

    @property
    def order(self) -> int:
        return len(self.elements)

    def coset(self, i: int) -> list[int]:
        """H_i = {a : t(a, i s) in G_0}."""
        j = (i * self.s) % self.d
        return sorted(a for a, k in self.elements if k == j)

    def to_json(self) -> dict:
        return {"q": self.q, "p": self.p, "d": self.d, "s": self.s, "m": self.m,
                "H_order": len(self.H), "x": self.x, "ell": self.ell, "g0_order": self.order}


def structure_from_elements(F: FieldSpec, elements: frozenset[Pair]) -> GammaLStructure:
    """Derive (s, m, H, x) of a transitive G_0 and check the order condition."""
    if not is_transitive_g0(F, elements):
        raise ValueError("G_0 is not transitive on the nonzero field elements")
    twists = {j for _, j in elements if j}
    s = min(twists) if twists else F.d
    if F.d % s:
        raise AssertionError("minimal twist does not divide d")
    H = sorted(a for a, j in elements if j == 0)
    if (F.q - 1) % len(H):
        raise AssertionError("scalar part is not a subgroup")
    m = (F.q - 1) // len(H)
    if mult_subgroup(F, m) != H:
        raise AssertionError("scalar part differs from the index-m subgroup")
    x = min(a for a, j in elements if j == s % F.d)
    ell = F.log(x) % m if m > 1 else 1
    st = GammaLStructure(F, s, m, H, x, ell, elements)
    if m > 1:
        ps = F.p**s
        if not prime_divisors(m) <= prime_divisors(ps - 1):
            raise AssertionError("S(m) is not contained in S(p^s - 1)")
        if not has_order_m(ps, m):
            raise AssertionError("p^s does not have order m mod m(p^s - 1)")
        if gcd(ell, m) != 1:
            raise AssertionError("the twisting coset is not a generator of F^x / H")
    if bracket(s, m, F.p) % m:
        raise AssertionError("m does not divide [phi, m]")
    return st


def analyze(ag: ActionGroup) -> GammaLStructure:
    """The (s, m, H) structure of the G_0 of an AGammaL(1, q) action group."""
    F = ag.field
    return structure_from_elements(F, pair_closure(F, ag.extra["g0_pairs"]))


def structure_generators(st: GammaLStructure) -> list[Pair]:
    F = st.field
    gens = [(F.exp(st.m), 0)]
    if st.s != st.d:
        gens.append((st.x, st.s))
    return gens


def group_of(st: GammaLStructure) -> ActionGroup:
    return build_agammal1(st.q, structure_generators(st))


# --- enumeration of the transitive G_0 ---

@lru_cache(maxsize=None)
def transitive_g0_bruteforce(q: int) -> tuple[frozenset[Pair], ...]:
    """Every subgroup of GammaL(1, q) transitive on F^x.

    Each subgroup is generated by its scalar part and one element of
    minimal positive twist, so scanning those generator pairs is complete.
    """
    F = field_of_order(q)
    found = set()
    for h in _divisors(q - 1):
        scal = F.exp((q - 1) // h)
        for s in _divisors(F.d):
            for x in range(1, q):
                gens = [(scal, 0)] if s == F.d else [(scal, 0), (x, s)]
                if s == F.d and x > 1:
                    break
                els = pair_closure(F, gens)
                if is_transitive_g0(F, els):
                    found.add(els)
    return tuple(sorted(found, key=lambda e: (len(e), sorted(e))))


@lru_cache(maxsize=None)
def transitive_g0_closed_form(q: int) -> tuple[frozenset[Pair], ...]:
    """The transitive G_0 from the (s, m, l) description.

    For m = 1, G_0 = <GL(1,q), t(1, s)>.  For m > 1 the conditions are that
    p^s has order m mod m(p^s-1) and G_0 = <t(xi^m, 0), t(xi^l, s)> with
    l coprime to m; groups whose twist power leaves H are discarded since
    their actual structure has a different (s, m).
    """
    F = field_of_order(q)
    out = set()
    for s in _divisors(F.d):
        if s == F.d:
            out.add(pair_closure(F, [(F.exp(1), 0)]))
            continue
        out.add(pair_closure(F, [(F.exp(1), 0), (1, s)]))
        ps = F.p**s
        for m in _divisors(q - 1):
            if m == 1 or not has_order_m(ps, m):
                continue
            for l in range(1, m):
                if gcd(l, m) != 1:
                    continue
                els = pair_closure(F, [(F.exp(m), 0), (F.exp(l), s)])
                st = structure_from_elements(F, els)
                if (st.s, st.m) == (s, m):
                    out.add(els)
    return tuple(sorted(out, key=lambda e: (len(e), sorted(e))))


def _divisors(n: int) -> list[int]:
    return [k for k in range(1, n + 1) if n % k == 0]


# --- blocks ---

@dataclass(frozen=True)
class BlockParam:
    e: int
    K_order: int
    n: int
    j: int
    w: int

    def to_json(self) -> dict:
        return {"e": self.e, "K_order": self.K_order, "n": self.n, "j": self.j, "w": self.w}


def blocks_from_params(st: GammaLStructure, bp: BlockParam) -> tuple[int, ...]:
    """P = K u w^[psi,1] K u ... u w^[psi, m/e - 1] K with psi = zeta^(e s)."""
    F = st.field
    K = mult_subgroup(F, (F.q - 1) // bp.K_order)
    es = bp.e * st.s
    P = set()
    for i in range(st.m // bp.e):
        c = F.pow(bp.w, bracket(es, i, F.p))
        P.update(F.mul(c, k) for k in K)
    return tuple(sorted(P))


def membership_direct(st: GammaLStructure, bp: BlockParam) -> bool:
    """w^[psi, m/e] lies in K."""
    F = st.field
    v = F.pow(bp.w, bracket(bp.e * st.s, st.m // bp.e, F.p))
    return F.pow(v, bp.K_order) == 1


def membership_closed_form(st: GammaLStructure, bp: BlockParam) -> bool:
    """|H/K| divides j [psi, m/e] / m."""
    num = bp.j * bracket(bp.e * st.s, st.m // bp.e, st.p)
    if num % st.m:
        raise AssertionError("m does not divide j [psi, m/e]")
    return (num // st.m) % (len(st.H) // bp.K_order) == 0


def enumerate_block_params(st: GammaLStructure) -> list[BlockParam]:
    """All parameter choices giving a block, with w = xi^(n m + l [phi, e])."""
    F = st.field
    Hn = len(st.H)
    out = []
    for e in _divisors(st.m):
        base = st.ell * bracket(st.s, e, st.p)
        for k_order in _divisors(Hn):
            for n in range(Hn):
                j = n * st.m + base
                bp = BlockParam(e, k_order, n, j, F.exp(j))
                if membership_direct(st, bp):
                    out.append(bp)
    return out


def block_census_from_params(st: GammaLStructure) -> list[tuple[int, ...]]:
    """Distinct nontrivial blocks containing 1 produced by the parametrization."""
    q = st.q
    blocks = {blocks_from_params(st, bp) for bp in enumerate_block_params(st)}
    return sorted(b for b in blocks if 1 < len(b) < q - 1)


def block_census_generic(ag: ActionGroup) -> list[tuple[int, ...]]:
    stab = point_stabilizer(ag.group, ag.sigma)
    return sorted(blocks_containing(stab, ag.tau))


# --- closed forms for lambda and components ---

def additive_span_size(F: FieldSpec, xs: Iterable[int]) -> int:
    """Order of the additive subgroup generated by ``xs``, as a power of p."""
    from .gf import make_field
    Fp = make_field(F.p, 1)
    rows = [F.digits(x) for x in xs]
    return F.p ** rank(Fp, rows) if rows else 1


def is_subfield(F: FieldSpec, L: Iterable[int]) -> bool:
    L = set(L)
    if 0 not in L or 1 not in L:
        return False
    return all(F.add(a, b) in L and F.mul(a, b) in L for a in L for b in L)


def _stabilizer_pairs(st: GammaLStructure, P: Sequence[int]) -> list[Pair]:
    F = st.field
    Pset = set(P)
    return [g for g in st.elements if {apply(F, g, z) for z in P} == Pset]


def block_invariants(st: GammaLStructure, P: Sequence[int]) -> dict:
    """K, e, and the additive spans attached to a block P."""
    F = st.field
    stab = _stabilizer_pairs(st, P)
    K = sorted(a for a, j in stab if j == 0)
    twists = sorted({j for _, j in stab if j})
    e = (twists[0] // st.s) if twists else st.d // st.s
    T1 = additive_span_size(F, [F.sub(a, 1) for a in P])
    T2 = additive_span_size(F, P)
    return {"K_order": len(K), "e": e, "T1": T1, "T2": T2, "stabilizer_order": len(stab)}


def predict_lambda(st: GammaLStructure, P: Sequence[int]) -> int:
    L = set(P) | {0}
    return 1 if is_subfield(st.field, L) else len(P) + 1


def predict_components(st: GammaLStructure, P: Sequence[int]) -> int:
    """Component count |H/K| e p^(d - c) / 2^(2 - i) of the flag graph."""
    F = st.field
    if not 1 < len(P) < F.q - 1:
        raise ValueError("requires 1 < |P| < q - 1")
    if is_subfield(F, set(P) | {0}):
        raise ValueError("L is a subfield; use subfield_case")
    inv = block_invariants(st, P)
    if inv["K_order"] * st.m // inv["e"] != len(P):
        raise AssertionError("|P| != |K| m / e")
    hk = len(st.H) // inv["K_order"]
    # in characteristic 2, -1 = 1 and z -> z + 1 already lies in J, so J meets T2
    if F.p == 2 or inv["K_order"] % 2 == 0:
        return hk * inv["e"] * F.q // inv["T2"]
    num = hk * inv["e"] * F.q // inv["T1"]
    if num % 2:
        raise AssertionError("odd numerator in the component formula")
    return num // 2


def connectivity_verdict(st: GammaLStructure, P: Sequence[int]) -> bool:
    return predict_components(st, P) == 1


def connectivity_criterion(st: GammaLStructure, P: Sequence[int]) -> bool:
    """p = 3 mod 4, d odd, and P is the index-2 subgroup of F^x."""
    F = st.field
    if F.p % 4 != 3 or F.d % 2 == 0:
        return False
    return list(P) == mult_subgroup(F, 2)


@dataclass
class SubfieldVerdict:
    is_subfield: bool
    lam: int | None = None
    components: int | None = None
    component_size: int | None = None

    def to_json(self) -> dict:
        return {"is_subfield": self.is_subfield, "lambda": self.lam,
                "components": self.components, "component_size": self.component_size}


def subfield_case(st: GammaLStructure, L: Sequence[int]) -> SubfieldVerdict:
    F = st.field
    if not is_subfield(F, L):
        return SubfieldVerdict(False)
    pt = len(set(L))
    return SubfieldVerdict(True, 1, F.q * (F.q - 1) // (pt * (pt - 1)), pt)


def block_report(st: GammaLStructure, ag: ActionGroup, P: Sequence[int], build_graph: bool = True) -> dict:
    """Closed-form predictions for one block, optionally checked against the built flag graph."""
    from .designs import analyze_block
    F = st.field
    L = sorted(set(P) | {0})
    sub = subfield_case(st, L)
    row: dict = {"P": list(P), "size": len(P), "subgroup": _is_subgroup(F, P), "subfield": sub.is_subfield,
                 "lambda_pred": predict_lambda(st, P)}
    if sub.is_subfield:
        row["components_pred"] = sub.components
    else:
        row["components_pred"] = predict_components(st, P)
        inv = block_invariants(st, P)
        row.update({"K_order": inv["K_order"], "e": inv["e"]})
        if F.p % 2:
            row["P_eq_minus_P"] = sorted(F.neg(a) for a in P) == sorted(P)
    if build_graph:
        inst = analyze_block(ag, P, sigma=0, all_orbits=False)
        row.update({"lambda": inst.design.lam, "components": inst.graph.components,
                    "component_sizes": sorted(set(inst.graph.component_sizes)),
                    "order": inst.graph.order, "valency": inst.graph.valency})
    return row


def _is_subgroup(F: FieldSpec, P: Sequence[int]) -> bool:
    Pset = set(P)
    return all(F.mul(a, b) in Pset for a in P for b in P)


def analyze_report(ag: ActionGroup, build_graph: bool = True) -> dict:
    st = analyze(ag)
    generic = block_census_generic(ag)
    param = block_census_from_params(st)
    blocks = [block_report(st, ag, P, build_graph) for P in param]
    return {"structure": st.to_json(), "census_match": generic == param,
            "blocks": blocks}
