"""Representative proper triples for 2-transitive G <= AGL(2, p) with G_0
containing a normal SL(2,3) or SL(2,5).

Matrices over the prime field are flat row-major tuples of length n*n and
act on row vectors from the right.  Candidate G_0 are the subgroups between
a fixed base group S (Q8 or SL(2,5)) and its normalizer in GL(n, p).  For
each G_0 the blocks come from subgroups H containing a point stabilizer,
taken up to conjugacy in N = N_GL(G_0); block representatives are orbit
representatives of N_N(H) on {x : (G_0)_x <= H}.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from itertools import product
from typing import Iterable, Sequence

from .designs import analyze_block
from .gf import is_prime
from .permgrp import BudgetExceeded, PermGroup, is_block, point_stabilizer

Mat = tuple[int, ...]

MAX_GL_ORDER = 2 * 10**5
MAX_G0_ORDER = 10**4
MANDATORY_PRIMES = (5, 7)


# --- matrices over F_p ---

def mat_mul(A: Mat, B: Mat, n: int, p: int) -> Mat:
    if n == 2:
        a, b, c, d = A
        e, f, g, h = B
        return ((a * e + b * g) % p, (a * f + b * h) % p, (c * e + d * g) % p, (c * f + d * h) % p)
    return tuple(sum(A[i * n + k] * B[k * n + j] for k in range(n)) % p
                 for i in range(n) for j in range(n))


def mat_identity(n: int) -> Mat:
    return tuple(1 if i == j else 0 for i in range(n) for j in range(n))


def mat_det(A: Mat, n: int, p: int) -> int:
    if n == 1:
        return A[0] % p
    if n == 2:
        return (A[0] * A[3] - A[1] * A[2]) % p
    total = 0
    for j in range(n):
        minor = tuple(A[r * n + c] for r in range(1, n) for c in range(n) if c != j)
        total += (-1) ** j * A[j] * mat_det(minor, n - 1, p)
    return total % p


def mat_inv(A: Mat, n: int, p: int) -> Mat:
    if n == 2:
        di = pow(mat_det(A, n, p), -1, p)
        a, b, c, d = A
        return (d * di % p, -b * di % p, -c * di % p, a * di % p)
    # small groups only: the inverse is the last power before the identity
    e = mat_identity(n)
    g, prev = A, e
    while g != e:
        prev = g
        g = mat_mul(g, A, n, p)
    return prev


def vec_mat(x: Sequence[int], A: Mat, n: int, p: int) -> tuple[int, ...]:
    return tuple(sum(x[i] * A[i * n + j] for i in range(n)) % p for j in range(n))


def mat_order(A: Mat, n: int, p: int) -> int:
    k, g, e = 1, A, mat_identity(n)
    while g != e:
        g = mat_mul(g, A, n, p)
        k += 1
    return k


def gl_elements(n: int, p: int) -> list[Mat]:
    order = 1
    for i in range(n):
        order *= p**n - p**i
    if order > MAX_GL_ORDER:
        raise BudgetExceeded(f"|GL({n},{p})| = {order} exceeds the scan budget")
    return [A for A in product(range(p), repeat=n * n) if mat_det(A, n, p)]


class MatGroup:
    """A finite matrix group stored by its full element set."""

    def __init__(self, n: int, p: int, generators: Iterable[Mat], elements: frozenset[Mat] | None = None):
        self.n, self.p = n, p
        self.generators = tuple(sorted(set(generators)))
        self.elements = elements if elements is not None else self._close()

    def _close(self) -> frozenset[Mat]:
        e = mat_identity(self.n)
        seen = {e}
        frontier = [e]
        while frontier:
            nxt = []
            for x in frontier:
                for g in self.generators:
                    y = mat_mul(x, g, self.n, self.p)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            if len(seen) > MAX_G0_ORDER * 20:
                raise BudgetExceeded("matrix group closure exceeds budget")
            frontier = nxt
        return frozenset(seen)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, A: Mat) -> bool:
        return A in self.elements

    def with_element(self, g: Mat) -> "MatGroup":
        return MatGroup(self.n, self.p, self.generators + (g,))

    def conjugate(self, g: Mat) -> frozenset[Mat]:
        n, p = self.n, self.p
        gi = mat_inv(g, n, p)
        return frozenset(mat_mul(mat_mul(gi, a, n, p), g, n, p) for a in self.elements)

    def normalized_by(self, g: Mat) -> bool:
        n, p = self.n, self.p
        gi = mat_inv(g, n, p)
        return all(mat_mul(mat_mul(gi, a, n, p), g, n, p) in self.elements for a in self.generators)

    def is_subgroup_of(self, other: "MatGroup") -> bool:
        return self.elements <= other.elements

    def order_histogram(self) -> Counter:
        return Counter(mat_order(a, self.n, self.p) for a in self.elements)


def normal_closure(G: MatGroup, x: Mat) -> MatGroup:
    n, p = G.n, G.p
    cls = {mat_mul(mat_mul(mat_inv(g, n, p), x, n, p), g, n, p) for g in G.elements}
    return MatGroup(n, p, cls)


def normalizer_in(big: Iterable[Mat], G: MatGroup) -> MatGroup:
    gens = [g for g in big if G.normalized_by(g)]
    return MatGroup(G.n, G.p, _reduce(G.n, G.p, gens))


def _reduce(n: int, p: int, gens: Sequence[Mat]) -> list[Mat]:
    kept: list[Mat] = []
    cur = frozenset([mat_identity(n)])
    for g in gens:
        if g not in cur:
            kept.append(g)
            cur = MatGroup(n, p, kept).elements
    return kept


def subgroups_between(lower: MatGroup, upper: MatGroup) -> list[MatGroup]:
    """All subgroups X with lower <= X <= upper, by one-element extensions."""
    found = {lower.elements: lower}
    queue = [lower]
    while queue:
        X = queue.pop()
        covered = set(X.elements)
        for g in sorted(upper.elements - X.elements):
            # <X, g> depends only on the coset Xg
            if g in covered:
                continue
            covered.update(mat_mul(x, g, X.n, X.p) for x in X.elements)
            Y = X.with_element(g)
            if Y.elements not in found:
                found[Y.elements] = Y
                queue.append(Y)
    return sorted(found.values(), key=lambda X: (X.order, sorted(X.elements)))


# --- socle types ---

SL23_SIGNATURE = Counter({1: 1, 2: 1, 3: 8, 4: 6, 6: 8})
SL25_SIGNATURE = Counter({1: 1, 2: 1, 3: 20, 4: 30, 5: 24, 6: 20, 10: 24})


def has_normal_sl23(G: MatGroup) -> bool:
    """G has a normal SL(2,3); it is then the normal closure of an element of order 3."""
    for x in G.elements:
        if mat_order(x, G.n, G.p) == 3:
            S = normal_closure(G, x)
            if S.order == 24 and S.order_histogram() == SL23_SIGNATURE:
                return True
    return False


def has_normal_sl25(G: MatGroup) -> bool:
    """G has a normal SL(2,5); it is then the normal closure of an element of order 5."""
    for x in G.elements:
        if mat_order(x, G.n, G.p) == 5:
            S = normal_closure(G, x)
            if S.order == 120 and S.order_histogram() == SL25_SIGNATURE:
                return True
    return False


def quaternion_base(p: int) -> MatGroup:
    """Q8 = <[[0,1],[-1,0]], [[a,b],[b,-a]]> with a^2 + b^2 = -1."""
    i = (0, 1, p - 1, 0)
    for a, b in product(range(p), repeat=2):
        if (a * a + b * b + 1) % p == 0:
            Q = MatGroup(2, p, [i, (a, b, b, (-a) % p)])
            if Q.order == 8:
                return Q
    raise ValueError(f"no quaternion subgroup found for p={p}")


def sl25_base(p: int) -> MatGroup | None:
    """A subgroup of SL(2, p) isomorphic to SL(2, 5), or None if none exists."""
    if p == 5:
        return MatGroup(2, 5, [(1, 1, 0, 1), (1, 0, 1, 1)])
    if p % 10 not in (1, 9):
        return None
    a = (0, 1, p - 1, 0)
    for b in product(range(p), repeat=4):
        if mat_det(b, 2, p) != 1 or mat_order(b, 2, p) != 6:
            continue
        if mat_order(mat_mul(a, b, 2, p), 2, p) != 10:
            continue
        S = MatGroup(2, p, [a, b])
        if S.order == 120:
            return S
    return None


def transitive_on_nonzero(G: MatGroup) -> bool:
    n, p = G.n, G.p
    start = tuple([1] + [0] * (n - 1))
    return len({vec_mat(start, g, n, p) for g in G.elements}) == p**n - 1


def is_conjugate_in(big: Sequence[Mat], A: MatGroup, B: MatGroup) -> bool:
    if A.order != B.order:
        return False
    n, p = A.n, A.p
    for g in big:
        gi = mat_inv(g, n, p)
        if all(mat_mul(mat_mul(gi, a, n, p), g, n, p) in B.elements for a in A.generators):
            return True
    return False


@dataclass
class G0Class:
    group: MatGroup
    normalizer: MatGroup
    socle: str
    label: str = ""


def transitive_classes(d: int, p: int, socle_condition: str = "both") -> list[G0Class]:
    """GL-conjugacy class representatives of transitive G_0 with the socle condition."""
    if not is_prime(p) or p == 2:
        raise ValueError("p must be an odd prime")
    if d != 2:
        raise ValueError("only d = 2 is supported")
    GL = gl_elements(d, p)
    bases = []
    if socle_condition in ("both", "sl23"):
        bases.append(("SL(2,3)", quaternion_base(p), has_normal_sl23))
    if socle_condition in ("both", "sl25"):
        S = sl25_base(p)
        if S is not None:
            bases.append(("SL(2,5)", S, has_normal_sl25))
    reps: list[G0Class] = []
    for name, S, test in bases:
        N = normalizer_in(GL, S)
        for X in subgroups_between(S, N):
            if X.order > MAX_G0_ORDER:
                raise BudgetExceeded(f"|G_0| = {X.order} exceeds {MAX_G0_ORDER}")
            if not transitive_on_nonzero(X) or not test(X):
                continue
            if any(is_conjugate_in(GL, X, R.group) for R in reps):
                continue
            reps.append(G0Class(X, normalizer_in(GL, X), name))
    reps.sort(key=lambda R: (R.group.order, R.socle))
    for i, R in enumerate(reps):
        R.label = f"{R.socle}:{R.group.order}:{i}"
    return reps


# --- blocks ---

@dataclass
class ProperTriple:
    g0_order: int
    g0_id: str
    r_plus_1: int
    lam: int
    block: tuple[int, ...]
    witness: tuple[int, ...]
    H_order: int
    components: int
    is_line: bool

    def to_json(self) -> dict:
        return {"g0_order": self.g0_order, "g0_id": self.g0_id, "r_plus_1": self.r_plus_1,
                "lambda": self.lam, "block": list(self.block), "witness": list(self.witness),
                "H_order": self.H_order, "components": self.components, "is_line": self.is_line}


def vectors(n: int, p: int) -> list[tuple[int, ...]]:
    return list(product(range(p), repeat=n))


def vector_index(x: Sequence[int], p: int) -> int:
    k = 0
    for c in x:
        k = k * p + c
    return k


def affine_perm_group(G0: MatGroup) -> PermGroup:
    """T x G_0 acting on F_p^n, vectors indexed lexicographically."""
    n, p = G0.n, G0.p
    V = vectors(n, p)
    gens = []
    for A in G0.generators:
        gens.append(tuple(vector_index(vec_mat(x, A, n, p), p) for x in V))
    e1 = tuple([1] + [0] * (n - 1))
    gens.append(tuple(vector_index(tuple((a + b) % p for a, b in zip(x, e1)), p) for x in V))
    return PermGroup(p**n, gens, order=p**n * G0.order)


def g0_perm_group(G0: MatGroup) -> PermGroup:
    n, p = G0.n, G0.p
    V = vectors(n, p)
    return PermGroup(p**n, [tuple(vector_index(vec_mat(x, A, n, p), p) for x in V) for A in G0.generators],
                     order=G0.order)


def _stabilizer(G: MatGroup, x: tuple[int, ...]) -> frozenset[Mat]:
    return frozenset(g for g in G.elements if vec_mat(x, g, G.n, G.p) == x)


def _is_line(block: Iterable[tuple[int, ...]], p: int) -> bool:
    pts = list(block)
    if len(pts) != p - 1:
        return False
    x = pts[0]
    return {tuple(c * a % p for a in x) for c in range(1, p)} == set(pts)


def representative_blocks(cls: G0Class) -> list[ProperTriple]:
    """One proper triple per flag-isomorphism class for this G_0."""
    G, N = cls.group, cls.normalizer
    n, p = G.n, G.p
    if G.order > MAX_G0_ORDER:
        raise BudgetExceeded(f"|G_0| = {G.order} exceeds {MAX_G0_ORDER}")
    V = vectors(n, p)
    nonzero = V[1:]
    stabs = {x: _stabilizer(G, x) for x in nonzero}
    e1 = tuple([1] + [0] * (n - 1))
    Gx = MatGroup(n, p, _reduce(n, p, sorted(stabs[e1])), stabs[e1])
    Hs = subgroups_between(Gx, G)
    # N-conjugacy classes of the H's
    classes: list[MatGroup] = []
    seen: set[frozenset[Mat]] = set()
    for H in Hs:
        if H.elements in seen:
            continue
        classes.append(H)
        for g in N.elements:
            seen.add(H.conjugate(g))
    G_perm = affine_perm_group(G)
    G0_perm = g0_perm_group(G)
    out = []
    for H in classes:
        M = [g for g in N.elements if H.normalized_by(g)]
        delta = [x for x in nonzero if stabs[x] <= H.elements]
        done: set[tuple[int, ...]] = set()
        for x in delta:
            if x in done:
                continue
            done.update(vec_mat(x, g, n, p) for g in M)
            P = sorted({vec_mat(x, h, n, p) for h in H.elements})
            if not 1 < len(P) < p**n - 1:
                continue
            Pidx = tuple(sorted(vector_index(y, p) for y in P))
            if not is_block(point_stabilizer(G0_perm, 0), Pidx):
                raise AssertionError("x^H is not a block")
            inst = analyze_block(G_perm, Pidx, sigma=0, all_orbits=False)
            out.append(ProperTriple(G.order, cls.label, len(P) + 1, inst.design.lam, Pidx, x, H.order,
                                    inst.graph.components, _is_line(P, p)))
    out.sort(key=lambda t: (t.r_plus_1, -t.lam, t.block))
    return out


# --- tables ---

def expected_tables() -> dict:
    text = resources.files("flagspread").joinpath("data/survey_tables.json").read_text()
    return json.loads(text)


def rows_of(triples: Iterable[ProperTriple]) -> list[list[int]]:
    c = Counter((t.r_plus_1, t.lam) for t in triples)
    return [[r, lam, k] for (r, lam), k in sorted(c.items(), key=lambda kv: (kv[0][0], -kv[0][1]))]


def _canon(classes: Iterable[dict]) -> list:
    return sorted((c["g0_order"], sorted(map(tuple, c["rows"]))) for c in classes)


@dataclass
class SurveyResult:
    p: int
    classes: list[dict]
    triples: list[ProperTriple] = field(repr=False)
    expected: list[dict] | None
    discrepancies: list[str]

    @property
    def total(self) -> int:
        return len(self.triples)

    @property
    def passed(self) -> bool:
        return self.expected is not None and not self.discrepancies

    def to_json(self) -> dict:
        return {"p": self.p, "total_triples": self.total, "classes": self.classes,
                "all_disconnected": all(t.components > 1 for t in self.triples),
                "verdict": "PASS" if self.passed else "FAIL", "discrepancies": self.discrepancies}


def emit_table(p: int, stretch: bool = False) -> SurveyResult:
    """Run the survey for F_p^2 and compare against the embedded table."""
    if p not in MANDATORY_PRIMES and not stretch:
        raise ValueError(f"p={p} is outside the mandatory set {MANDATORY_PRIMES}; pass stretch=True")
    classes = []
    triples: list[ProperTriple] = []
    for cls in transitive_classes(2, p):
        ts = representative_blocks(cls)
        triples.extend(ts)
        classes.append({"g0_order": cls.group.order, "g0_id": cls.label, "rows": rows_of(ts)})
    table = expected_tables()["tables"].get(str(p))
    problems = []
    if table is None:
        problems.append(f"no embedded table for p={p}")
    else:
        got, want = _canon(classes), _canon(table)
        for item in want:
            if item not in got:
                problems.append(f"expected class missing: |G_0|={item[0]} rows={item[1]}")
        for item in got:
            if item not in want:
                problems.append(f"unexpected class: |G_0|={item[0]} rows={item[1]}")
    for t in triples:
        if t.lam not in (1, t.r_plus_1):
            problems.append(f"lambda {t.lam} not in {{1, r+1}} for block {t.block}")
        if (t.lam == 1) != t.is_line:
            problems.append(f"lambda=1 does not match the line test for block {t.block}")
        if t.components <= 1:
            problems.append(f"connected flag graph for block {t.block}")
    return SurveyResult(p, classes, triples, table, problems)
