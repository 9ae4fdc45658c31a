"""The acceptance suite, shared by the CLI and the test-suite."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from math import comb
from typing import Callable

from . import agammal, numtheory, octonion, survey
from .designs import analyze_block
from .families import (
    AutPower,
    build_agammal1,
    build_affine_matrix,
    build_psl,
    build_psu3,
    build_ree,
    build_suzuki,
    canonical_block,
    ree_case_iv_criterion,
    ree_case_iv_translation_witness,
    sigma_squares_to_frobenius,
    suzuki_sigma,
)
from .gf import field_of_order, mult_subgroup, prime_power
from .permgrp import blocks_containing, is_block, point_stabilizer


@dataclass
class CheckResult:
    cid: int
    name: str
    budget_s: float
    failures: list[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)
    seconds: float = 0.0
    stretch: bool = False

    @property
    def passed(self) -> bool:
        return not self.failures and self.seconds <= self.budget_s

    def expect(self, label: str, got, want) -> None:
        self.details[label] = got
        if got != want:
            self.failures.append(f"{label}: got {got!r}, expected {want!r}")

    def require(self, label: str, ok: bool) -> None:
        if not ok:
            self.failures.append(label)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = "" if not self.failures else " | " + "; ".join(self.failures[:3])
        if self.seconds > self.budget_s:
            extra += f" | over budget ({self.seconds:.1f}s > {self.budget_s:.0f}s)"
        return f"{status} [{self.cid}] {self.name} ({self.seconds:.2f}s){extra}"

    def to_json(self) -> dict:
        return {"id": self.cid, "name": self.name, "passed": self.passed, "seconds": round(self.seconds, 3),
                "budget_s": self.budget_s, "stretch": self.stretch, "failures": self.failures}


def check_suzuki(res: CheckResult, q: int = 8, fault: str | None = None) -> None:
    F = field_of_order(q)
    sigma = suzuki_sigma(q)
    if fault == "suzuki-sigma":
        sigma = AutPower(sigma.k + 1)
    if not sigma_squares_to_frobenius(F, sigma):
        res.failures.append("sigma^2 != Frobenius")
        return
    ag = build_suzuki(q, None if fault is None else sigma.k)
    res.expect("degree", ag.degree, q * q + 1)
    P = canonical_block("suzuki", q)
    if q <= 8:
        stab = point_stabilizer(ag.group, ag.sigma)
        blocks = blocks_containing(stab, ag.tau)
        res.expect("blocks", [len(b) for b in blocks], [q])
        res.expect("block is canonical", blocks[0] == tuple(P) if blocks else False, True)
    inst = analyze_block(ag, P, all_orbits=q <= 8)
    d = inst.design
    res.expect("design", (d.point_count, d.k, d.lam), (q * q + 1, q + 1, q + 1))
    if q <= 8:
        res.expect("strongly feasible orbits", sum(o.strongly_feasible for o in inst.orbits), 1)
    res.expect("omega", inst.graph.order, q * (q * q + 1))
    res.expect("components", inst.graph.components, 1)
    res.expect("valency", inst.graph.valency, q)
    res.expect("spread", inst.spread.to_json(), {"v": q, "r": q, "b": q * q, "k": 1})
    res.expect("quotient edges", inst.spread.quotient_edges, comb(q * q + 1, 2))
    res.expect("lambda branch", inst.lam.branch, "lambda=r+1")


def check_ree(res: CheckResult) -> None:
    ag = build_ree(3)
    res.expect("degree", ag.degree, 28)
    stab = point_stabilizer(ag.group, ag.sigma)
    blocks = blocks_containing(stab, ag.tau)
    res.expect("block sizes", sorted(len(b) for b in blocks), [3, 3, 9, 9])
    want = {
        "i": ((28, 4, 1), 252, 3, 63, [4]),
        "ii": ((28, 4, 4), 252, 3, 3, None),
        "iii": ((28, 10, 10), 84, 9, 1, None),
        "iv": ((28, 10, 10), 84, 9, 3, None),
    }
    for case, (des, order, val, comps, sizes) in want.items():
        P = canonical_block("ree", 3, case)
        res.require(f"case {case}: canonical block not among the enumerated blocks", tuple(P) in blocks)
        inst = analyze_block(ag, P)
        d = inst.design
        res.expect(f"{case}: design", (d.point_count, d.k, d.lam), des)
        res.expect(f"{case}: order", inst.graph.order, order)
        res.expect(f"{case}: valency", inst.graph.valency, val)
        res.expect(f"{case}: components", inst.graph.components, comps)
        if sizes:
            res.expect(f"{case}: component sizes", sorted(set(inst.graph.component_sizes)), sizes)
        res.expect(f"{case}: coset prediction", inst.coset.predicted_components, comps)
    res.expect("case iv criterion q=3", ree_case_iv_criterion(3), True)
    res.expect("case iv criterion q=27", ree_case_iv_criterion(27), False)
    res.expect("case iv translation witness q=3", ree_case_iv_translation_witness(3), None)
    res.require("case iv q=27: no overlapping translate found", ree_case_iv_translation_witness(27) is not None)


def check_psu(res: CheckResult) -> None:
    ag = build_psu3(3)
    res.expect("degree", ag.degree, 28)
    stab = point_stabilizer(ag.group, ag.sigma)
    blocks = blocks_containing(stab, ag.tau)
    res.expect("block sizes", [len(b) for b in blocks], [3])
    res.expect("no block of size 9", any(len(b) == 9 for b in blocks), False)
    P = canonical_block("psu3", 3)
    res.expect("block is canonical", blocks[0] == tuple(P) if blocks else False, True)
    inst = analyze_block(ag, P)
    d = inst.design
    res.expect("design", (d.point_count, d.k, d.lam), (28, 4, 1))
    res.expect("graph", (inst.graph.components, sorted(set(inst.graph.component_sizes)), inst.graph.valency),
               (63, [4], 3))


def check_psl(res: CheckResult) -> None:
    for q, comps, size in ((2, 7, 3), (3, 13, 4)):
        ag = build_psl(3, q)
        inst = analyze_block(ag, canonical_block("psl", q, d=3))
        res.expect(f"PSL(3,{q}) lambda", inst.design.lam, 1)
        res.expect(f"PSL(3,{q}) graph", (inst.graph.components, sorted(set(inst.graph.component_sizes)),
                                         inst.graph.valency), (comps, [size], size - 1))


AGAMMAL_QS = (5, 7, 8, 9, 11, 16, 25, 27)


def check_agammal(res: CheckResult) -> None:
    n_groups = n_blocks = 0
    for q in AGAMMAL_QS:
        F = field_of_order(q)
        brute = agammal.transitive_g0_bruteforce(q)
        res.expect(f"q={q}: transitive G_0 closed form", set(agammal.transitive_g0_closed_form(q)), set(brute))
        for els in brute:
            st = agammal.structure_from_elements(F, els)
            ag = agammal.group_of(st)
            n_groups += 1
            param = agammal.block_census_from_params(st)
            generic = agammal.block_census_generic(ag)
            res.require(f"q={q} s={st.s} m={st.m}: block census differs", param == generic)
            for bp in agammal.enumerate_block_params(st):
                res.require(f"q={q}: membership closed form fails for {bp}", agammal.membership_closed_form(st, bp))
            for P in param:
                n_blocks += 1
                row = agammal.block_report(st, ag, P)
                tag = f"q={q} s={st.s} m={st.m} |P|={len(P)}"
                res.require(f"{tag}: lambda {row['lambda']} != {row['lambda_pred']}",
                            row["lambda"] == row["lambda_pred"])
                res.require(f"{tag}: components {row['components']} != {row['components_pred']}",
                            row["components"] == row["components_pred"])
                if not row["subfield"]:
                    res.require(f"{tag}: connectivity criterion disagrees",
                                (row["components"] == 1) == agammal.connectivity_criterion(st, P))
                if "P_eq_minus_P" in row:
                    res.require(f"{tag}: P = -P parity rule fails", row["P_eq_minus_P"] == (row["K_order"] % 2 == 0))
    res.details["groups"] = n_groups
    res.details["blocks"] = n_blocks

    def single(q: int, P) -> dict:
        ag = build_agammal1(q, "gl")
        st = agammal.analyze(ag)
        return agammal.block_report(st, ag, P)

    r7 = single(7, [1, 2, 4])
    res.expect("q=7 P={1,2,4}", (r7["components"], r7["order"], r7["valency"]), (1, 14, 3))
    F27 = field_of_order(27)
    r27 = single(27, mult_subgroup(F27, 2))
    res.expect("q=27 index-2 subgroup", (r27["components"], r27["order"], r27["valency"]), (1, 54, 13))
    r9 = single(9, [1, 2])
    res.expect("q=9 subfield F_3", (r9["lambda"], r9["components"], r9["component_sizes"]), (1, 12, [3]))


def _scalar_set(ag, block) -> list[int] | None:
    """Scalars a with a e1 in the block, or None if the block leaves <e1>."""
    out = []
    for i in block:
        v = ag.points[i].coords
        if any(v[1:]):
            return None
        out.append(v[0])
    return sorted(out)


def _is_mult_subgroup(F, xs: list[int]) -> bool:
    s = set(xs)
    return 1 in s and all(F.mul(a, b) in s for a in s for b in s)


def check_affine(res: CheckResult) -> None:
    ag = build_affine_matrix("SL", 2, 5)
    stab = point_stabilizer(ag.group, ag.sigma)
    blocks = blocks_containing(stab, ag.tau)
    res.expect("SL(2,5) block sizes", sorted(len(b) for b in blocks), [2, 4])
    for b in blocks:
        sc = _scalar_set(ag, b)
        res.require(f"SL(2,5) block {b} leaves <e1> or is not a subgroup",
                    sc is not None and _is_mult_subgroup(ag.field, sc))
        inst = analyze_block(ag, b, all_orbits=False)
        res.require(f"SL(2,5) block {b}: flag graph connected", inst.graph.components > 1)

    ag = build_affine_matrix("Sp", 4, 3)
    stab = point_stabilizer(ag.group, ag.sigma)
    blocks = blocks_containing(stab, ag.tau)
    res.details["Sp(4,3) block sizes"] = sorted(len(b) for b in blocks)
    res.require("Sp(4,3): no nontrivial block found", bool(blocks))
    for b in blocks:
        sc = _scalar_set(ag, b)
        res.require(f"Sp(4,3) block {b} leaves <e1> or is not a subgroup",
                    sc is not None and _is_mult_subgroup(ag.field, sc))
        inst = analyze_block(ag, b, all_orbits=False)
        res.require(f"Sp(4,3) block {b}: flag graph connected", inst.graph.components > 1)
    rng = random.Random(20)
    line = {i for i in range(ag.degree) if i and not any(ag.points[i].coords[1:])}
    outside = [i for i in range(1, ag.degree) if i not in line]
    sizes = [k for k in range(2, 41) if 80 % k == 0]
    stab_rest = stab
    for _ in range(50):
        k = rng.choice(sizes)
        extra = rng.sample(outside, 1)
        others = rng.sample([i for i in range(1, ag.degree) if i not in (ag.tau, extra[0])], k - 2)
        cand = sorted({ag.tau, extra[0], *others})
        res.require(f"Sp(4,3): candidate {cand} outside <e1> passes is_block", not is_block(stab_rest, cand))


def check_octonion(res: CheckResult) -> None:
    F = field_of_order(4)
    B = [octonion.symbol(F, s) for s in octonion.PERP_ORDER]
    bad = sum(octonion.trilinear(x, y, z) != octonion.bilinear(x * y, z) for x in B for y in B for z in B)
    res.expect("basis triples failing t = f(xy,z)", bad, 0)
    rng = random.Random(7)

    def rnd():
        return octonion.from_perp_coords(F, [rng.randrange(4) for _ in range(7)])

    bad = 0
    for _ in range(1000):
        x, y, z = rnd(), rnd(), rnd()
        bad += octonion.trilinear(x, y, z) != octonion.bilinear(x * y, z)
    res.expect("random triples failing t = f(xy,z)", bad, 0)
    res.expect("table mismatches", octonion.table_b_mismatches(F), [])
    x1D = octonion.span_rref(octonion.delta_set(octonion.basis(F, 1)))
    x2D = octonion.span_rref(octonion.delta_set(octonion.basis(F, 2)))
    res.expect("x1 Delta", x1D, octonion.span_rref([octonion.basis(F, i) for i in (1, 2, 3)]))
    res.expect("x2 Delta", x2D, octonion.span_rref([octonion.basis(F, i) for i in (1, 2, 6)]))


def check_survey(res: CheckResult, primes=(5, 7), expected_totals=None, stretch=False) -> None:
    expected_totals = expected_totals or {5: 19, 7: 21}
    for p in primes:
        r = survey.emit_table(p, stretch=stretch)
        res.expect(f"p={p} total", r.total, expected_totals.get(p, r.total))
        res.expect(f"p={p} class orders", sorted({c["g0_order"] for c in r.classes}),
                   sorted({c["g0_order"] for c in r.expected or []}))
        if p == 5:
            res.expect("p=5 order classes", sorted({c["g0_order"] for c in r.classes}), [24, 48, 96, 120, 240, 480])
        res.expect(f"p={p} all flag graphs disconnected", r.to_json()["all_disconnected"], True)
        for msg in r.discrepancies:
            res.failures.append(f"p={p}: {msg}")


def _admissible_qs(limit: int = 128) -> list[int]:
    out = []
    for q in range(3, limit + 1):
        try:
            prime_power(q)
        except ValueError:
            continue
        out.append(q)
    return out


def check_numtheory(res: CheckResult) -> None:
    qs = _admissible_qs()
    counted = 0
    even_rule_misses: list[tuple[int, int]] = []
    for q in qs:
        if (q + 1) % 3 == 0:
            res.expect(f"q={q} l(q^2-1)/3+q", numtheory.lemma_3q_solutions(q), numtheory.lemma_3q_closed_form(q))
            res.expect(f"q={q} l(q^2-1)/3+1", numtheory.lemma_3_solutions(q), numtheory.lemma_3_closed_form(q))
            counted += 2
        for n in (1, 2, 3):
            got = numtheory.geometric_solutions(q, n)
            if got != numtheory.geometric_closed_form(q, n):
                res.failures.append(f"q={q} n={n}: geometric {got}")
            counted += 1
        p, e = prime_power(q)
        if p == 3 and e % 2 == 1:
            for n in (1, 2, 3, 4):
                got = numtheory.half_shift_solutions(q, n)
                if got:
                    res.failures.append(f"q={q} n={n}: half-shift divisors {got}")
                counted += 1
    for a in range(2, 51):
        for m in range(2, 25):
            if numtheory.gcd(a, m) != 1:
                continue
            truth = numtheory.has_order_m(a, m)
            if numtheory.order_criterion(a, m) != truth:
                res.failures.append(f"order criterion disagrees at a={a}, m={m}")
            if numtheory.order_criterion_even_rule(a, m) != truth:
                even_rule_misses.append((a, m))
            counted += 1
    predicted = [(a, m) for a in range(2, 51) for m in range(2, 25)
                 if numtheory.gcd(a, m) == 1 and a % 4 == 3 and m % 4 == 2
                 and numtheory.prime_divisors(m) <= numtheory.prime_divisors(a - 1)]
    res.expect("even-m rule misses", even_rule_misses, predicted)
    res.expect("order of 5 mod 16", numtheory.order_mod(5, 16), 4)
    res.details["cases"] = counted


def check_stretch(res: CheckResult) -> None:
    check_suzuki(res, 32)
    check_survey(res, primes=(11,), expected_totals={11: 60}, stretch=True)


@dataclass
class Criterion:
    cid: int
    name: str
    budget_s: float
    run: Callable[[CheckResult], None]
    stretch: bool = False


CRITERIA = [
    Criterion(1, "Suzuki q=8 block, design and connected flag graph", 10, check_suzuki),
    Criterion(2, "Ree q=3 block cases i-iv", 30, check_ree),
    Criterion(3, "PSU(3,3) block, design and 63 K4", 10, check_psu),
    Criterion(4, "PSL(3,2) and PSL(3,3) flag graphs", 5, check_psl),
    Criterion(5, "AGammaL(1,q) closed forms against brute force", 60, check_agammal),
    Criterion(6, "SL(2,5) and Sp(4,3) affine blocks", 120, check_affine),
    Criterion(7, "octonion trilinear identity and Delta sets", 5, check_octonion),
    Criterion(8, "survey tables p=5 and p=7", 600, check_survey),
    Criterion(9, "divisor lemmas and the order criterion", 10, check_numtheory),
    Criterion(10, "stretch: Suzuki q=32 and survey p=11", 900, check_stretch, stretch=True),
]


def run_criterion(c: Criterion, fault: str | None = None) -> CheckResult:
    res = CheckResult(c.cid, c.name, c.budget_s, stretch=c.stretch)
    t0 = time.perf_counter()
    try:
        if c.cid == 1:
            check_suzuki(res, fault=fault)
        else:
            c.run(res)
    except AssertionError as exc:
        res.failures.append(f"invariant breach: {exc}")
    res.seconds = time.perf_counter() - t0
    return res


def run_all(level: str = "mandatory", fault: str | None = None) -> list[CheckResult]:
    out = []
    for c in CRITERIA:
        if c.stretch and level != "stretch":
            continue
        out.append(run_criterion(c, fault))
    return out
