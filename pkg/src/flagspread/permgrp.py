"""Permutation groups: orbits, stabilizer chains, stabilizers and blocks.

A permutation of degree n is a tuple ``g`` with ``g[i]`` the image of ``i``.
Products act left to right: ``mul(g, h)`` applies ``g`` first.
"""

from __future__ import annotations

from collections import deque
from itertools import combinations
from typing import Iterable, Iterator, Sequence

Perm = tuple[int, ...]

MAX_DEGREE = 4096
MAX_SET_STAB_ORDER = 10**8
MAX_SCAN_ORDER = 10**7
MAX_BLOCK_CANDIDATES = 2**20


class BudgetExceeded(RuntimeError):
    """A computation would exceed one of the documented size caps."""


def identity(n: int) -> Perm:
    return tuple(range(n))


def is_identity(g: Perm) -> bool:
    return all(i == x for i, x in enumerate(g))


def mul(g: Perm, h: Perm) -> Perm:
    """Apply ``g`` then ``h``."""
    return tuple([h[x] for x in g])


def inv(g: Perm) -> Perm:
    out = [0] * len(g)
    for i, x in enumerate(g):
        out[x] = i
    return tuple(out)


def conj(g: Perm, h: Perm) -> Perm:
    """``h^-1 g h``."""
    return mul(mul(inv(h), g), h)


def perm_power(g: Perm, k: int) -> Perm:
    r = identity(len(g))
    for _ in range(k):
        r = mul(r, g)
    return r


def perm_order(g: Perm) -> int:
    from math import lcm
    seen = [False] * len(g)
    o = 1
    for i in range(len(g)):
        if not seen[i]:
            c = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = g[j]
                c += 1
            o = lcm(o, c)
    return o


def image_set(cell: Iterable[int], g: Perm) -> tuple[int, ...]:
    return tuple(sorted(g[x] for x in cell))


def check_perm(images: Sequence[int]) -> Perm:
    g = tuple(int(x) for x in images)
    if sorted(g) != list(range(len(g))):
        raise ValueError("not a permutation of 0..n-1")
    return g


class StabChain:
    """Deterministic base and strong generating set.

    Base points are taken as the least point moved by whichever element
    first requires a new level.  Transversals are extended in place so that
    coset representatives never change once assigned.
    """

    def __init__(self, degree: int, generators: Iterable[Perm] = ()):
        if degree > MAX_DEGREE:
            raise BudgetExceeded(f"degree {degree} exceeds {MAX_DEGREE}")
        self.degree = degree
        self.base: list[int] = []
        self.gens: list[list[Perm]] = []
        self.trans: list[dict[int, Perm]] = []
        self.orbit_order: list[list[int]] = []
        self._checked: list[set[tuple[int, int]]] = []
        self._inv_cache: dict[Perm, Perm] = {}
        for g in generators:
            self.add_generator(g)

    # -- internals --

    def _inv(self, g: Perm) -> Perm:
        r = self._inv_cache.get(g)
        if r is None:
            r = inv(g)
            self._inv_cache[g] = r
        return r

    def _new_level(self, point: int) -> None:
        self.base.append(point)
        self.gens.append([])
        self.trans.append({point: identity(self.degree)})
        self.orbit_order.append([point])
        self._checked.append(set())

    def _extend_transversal(self, i: int) -> None:
        trans = self.trans[i]
        order = self.orbit_order[i]
        queue = deque(order)
        while queue:
            b = queue.popleft()
            u = trans[b]
            for g in self.gens[i]:
                c = g[b]
                if c not in trans:
                    trans[c] = mul(u, g)
                    order.append(c)
                    queue.append(c)

    def _place(self, h: Perm, start: int) -> None:
        # h fixes base[0..start-1]; add it at levels start.. until it moves a base point
        j = start
        while True:
            if j == len(self.base):
                moved = next(x for x in range(self.degree) if h[x] != x)
                self._new_level(moved)
            self.gens[j].append(h)
            self._extend_transversal(j)
            if h[self.base[j]] != self.base[j]:
                break
            j += 1

    def strip(self, h: Perm, start: int = 0) -> tuple[Perm, int]:
        for i in range(start, len(self.base)):
            b = h[self.base[i]]
            u = self.trans[i].get(b)
            if u is None:
                return h, i
            h = mul(h, self._inv(u))
        return h, len(self.base)

    def _complete(self) -> None:
        i = len(self.base) - 1
        while i >= 0:
            changed = False
            checked = self._checked[i]
            trans = self.trans[i]
            for b in list(self.orbit_order[i]):
                u = trans[b]
                for gi, g in enumerate(self.gens[i]):
                    if (b, gi) in checked:
                        continue
                    checked.add((b, gi))
                    h = mul(mul(u, g), self._inv(trans[g[b]]))
                    if is_identity(h):
                        continue
                    r, j = self.strip(h, i + 1)
                    if j < len(self.base) or not is_identity(r):
                        self._place(r, i + 1)
                        changed = True
                        break
                if changed:
                    break
            if changed:
                i = len(self.base) - 1
            else:
                i -= 1

    # -- public --

    def contains(self, g: Perm) -> bool:
        r, j = self.strip(g)
        return j == len(self.base) and is_identity(r)

    def add_generator(self, g: Perm) -> bool:
        """Add ``g``; return False if it was already in the group."""
        if len(g) != self.degree:
            raise ValueError("degree mismatch")
        if self.contains(g):
            return False
        self._place(g, 0)
        self._complete()
        return True

    def order(self) -> int:
        n = 1
        for t in self.trans:
            n *= len(t)
        return n

    def elements(self) -> Iterator[Perm]:
        """Every group element exactly once, in a fixed order."""
        levels = len(self.base)

        def rec(i: int) -> Iterator[Perm]:
            if i == levels:
                yield identity(self.degree)
                return
            reps = [self.trans[i][b] for b in self.orbit_order[i]]
            for g in rec(i + 1):
                for u in reps:
                    yield mul(g, u)

        return rec(0)


class PermGroup:
    """A finitely generated permutation group with a lazily built chain."""

    def __init__(self, degree: int, generators: Iterable[Sequence[int]], order: int | None = None):
        if degree > MAX_DEGREE:
            raise BudgetExceeded(f"degree {degree} exceeds {MAX_DEGREE}")
        gens: list[Perm] = []
        seen = set()
        for g in generators:
            g = tuple(g)
            if len(g) != degree:
                raise ValueError("generator degree mismatch")
            if not is_identity(g) and g not in seen:
                seen.add(g)
                gens.append(g)
        self.degree = degree
        self.generators: tuple[Perm, ...] = tuple(gens)
        self._chain: StabChain | None = None
        self._order_hint = order

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, ngens={len(self.generators)})"

    @property
    def chain(self) -> StabChain:
        if self._chain is None:
            self._chain = StabChain(self.degree, self.generators)
            if self._order_hint is not None and self._order_hint != self._chain.order():
                raise AssertionError("cached order disagrees with stabilizer chain")
        return self._chain

    def order(self) -> int:
        return self.chain.order()

    def contains(self, g: Sequence[int]) -> bool:
        return self.chain.contains(tuple(g))

    def elements(self) -> Iterator[Perm]:
        return self.chain.elements()

    def is_trivial(self) -> bool:
        return not self.generators

    def to_json(self) -> dict:
        return {"degree": self.degree, "generators": [list(g) for g in self.generators]}


def trivial_group(degree: int) -> PermGroup:
    return PermGroup(degree, [])


def group_order(group: PermGroup) -> int:
    return group.order()


def orbit(group: PermGroup, point: int) -> list[int]:
    """The orbit of ``point``, sorted."""
    seen = {point}
    queue = deque([point])
    while queue:
        x = queue.popleft()
        for g in group.generators:
            y = g[x]
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return sorted(seen)


def orbit_transversal(group: PermGroup, point: int) -> dict[int, Perm]:
    """Map each orbit point ``y`` to an element sending ``point`` to ``y``."""
    trans = {point: identity(group.degree)}
    queue = deque([point])
    while queue:
        x = queue.popleft()
        u = trans[x]
        for g in group.generators:
            y = g[x]
            if y not in trans:
                trans[y] = mul(u, g)
                queue.append(y)
    return trans


def orbits_on(group: PermGroup, subset: Iterable[int] | None = None) -> list[list[int]]:
    """Orbits meeting ``subset`` (default: all points), ordered by least point."""
    pts = sorted(set(range(group.degree) if subset is None else subset))
    done: set[int] = set()
    out = []
    for x in pts:
        if x not in done:
            o = orbit(group, x)
            done.update(o)
            out.append(o)
    return out


def is_transitive_on(group: PermGroup, points: Iterable[int]) -> bool:
    pts = sorted(set(points))
    if not pts:
        return True
    return orbit(group, pts[0]) == pts


def reduce_generators(degree: int, candidates: Iterable[Perm], target_order: int | None = None) -> PermGroup:
    """Greedily keep candidates that enlarge the group generated so far."""
    chain = StabChain(degree)
    kept: list[Perm] = []
    for c in candidates:
        if target_order is not None and chain.order() == target_order:
            break
        if is_identity(c):
            continue
        if chain.add_generator(c):
            kept.append(c)
    grp = PermGroup(degree, kept)
    grp._chain = chain
    if target_order is not None and chain.order() != target_order:
        raise AssertionError(f"stabilizer order {chain.order()} != expected {target_order}")
    return grp


def point_stabilizer(group: PermGroup, point: int) -> PermGroup:
    """Stabilizer of ``point`` from Schreier generators, reduced."""
    trans = orbit_transversal(group, point)
    target = group.order() // len(trans)

    def schreier() -> Iterator[Perm]:
        for x in sorted(trans):
            u = trans[x]
            for g in group.generators:
                yield mul(mul(u, g), inv(trans[g[x]]))

    return reduce_generators(group.degree, schreier(), target)


def set_orbit(group: PermGroup, cell: Iterable[int]) -> list[tuple[int, ...]]:
    """The images of ``cell`` under the group, in BFS order."""
    start = tuple(sorted(cell))
    seen = {start}
    out = [start]
    queue = deque([start])
    while queue:
        s = queue.popleft()
        for g in group.generators:
            t = image_set(s, g)
            if t not in seen:
                seen.add(t)
                out.append(t)
                queue.append(t)
    return out


def set_stabilizer(group: PermGroup, cell: Iterable[int]) -> PermGroup:
    """Setwise stabilizer of ``cell``."""
    order = group.order()
    if order > MAX_SET_STAB_ORDER:
        raise BudgetExceeded(f"group order {order} exceeds {MAX_SET_STAB_ORDER}")
    start = tuple(sorted(cell))
    trans = {start: identity(group.degree)}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        u = trans[s]
        for g in group.generators:
            t = image_set(s, g)
            if t not in trans:
                trans[t] = mul(u, g)
                queue.append(t)
    target = order // len(trans)

    def schreier() -> Iterator[Perm]:
        for s in sorted(trans):
            u = trans[s]
            for g in group.generators:
                yield mul(mul(u, g), inv(trans[image_set(s, g)]))

    return reduce_generators(group.degree, schreier(), target)


def is_block(group: PermGroup, candidate: Iterable[int]) -> bool:
    """True iff the images of ``candidate`` are pairwise equal or disjoint."""
    start = tuple(sorted(set(candidate)))
    if len(start) <= 1:
        return True
    owner: dict[int, tuple[int, ...]] = {x: start for x in start}
    queue = deque([start])
    seen = {start}
    while queue:
        s = queue.popleft()
        for g in group.generators:
            t = image_set(s, g)
            if t in seen:
                continue
            for x in t:
                if x in owner:
                    return False
            for x in t:
                owner[x] = t
            seen.add(t)
            queue.append(t)
    return True


def minimal_block(group: PermGroup, seed: Iterable[int]) -> list[int]:
    """Smallest block containing ``seed`` (Atkinson's union-find closure).

    ``seed`` must lie in one orbit on which the group acts transitively.
    """
    seed = sorted(set(seed))
    parent = list(range(group.degree))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a: int, b: int) -> bool:
        a, b = find(a), find(b)
        if a == b:
            return False
        if b < a:
            a, b = b, a
        parent[b] = a
        return True

    queue = []
    a0 = seed[0]
    for b in seed[1:]:
        if union(a0, b):
            queue.append((a0, b))
    while queue:
        a, b = queue.pop()
        for g in group.generators:
            x, y = find(g[a]), find(g[b])
            if x != y:
                union(x, y)
                queue.append((x, y))
    root = find(a0)
    return [x for x in orbit(group, a0) if find(x) == root]


def blocks_containing(stab: PermGroup, tau: int) -> list[tuple[int, ...]]:
    """All nontrivial blocks of ``stab`` on the orbit of ``tau`` that contain ``tau``.

    Every block containing ``tau`` is invariant under the stabilizer of
    ``tau``, so it is the join of the minimal blocks generated by ``tau``
    and one representative of each suborbit.  The join lattice is closed by
    repeated pairwise joins.  Sorted by size, then lexicographically.
    """
    domain = orbit(stab, tau)
    n = len(domain)
    sub = point_stabilizer(stab, tau)
    reps = [o[0] for o in orbits_on(sub, domain) if o != [tau]]
    found = {tuple(minimal_block(stab, [tau, b])) for b in reps}
    frontier = list(found)
    while frontier:
        new = []
        current = sorted(found)
        for b1 in frontier:
            for b2 in current:
                if set(b1) <= set(b2) or set(b2) <= set(b1):
                    continue
                j = tuple(minimal_block(stab, set(b1) | set(b2)))
                if j not in found:
                    found.add(j)
                    new.append(j)
        frontier = new
    out = [b for b in found if 1 < len(b) < n]
    return sorted(out, key=lambda b: (len(b), b))


def blocks_containing_bruteforce(stab: PermGroup, tau: int) -> list[tuple[int, ...]]:
    """Blocks containing ``tau`` by testing unions of suborbits.

    Candidates are ``{tau}`` together with subsets of the other orbits of
    the stabilizer of ``tau`` whose total size divides the domain size.
    """
    domain = orbit(stab, tau)
    n = len(domain)
    sub = point_stabilizer(stab, tau)
    others = [o for o in orbits_on(sub, domain) if o != [tau]]
    if 2 ** len(others) > MAX_BLOCK_CANDIDATES:
        raise BudgetExceeded(f"{2 ** len(others)} candidate sets exceed {MAX_BLOCK_CANDIDATES}")
    out = []
    for k in range(1, len(others) + 1):
        for combo in combinations(others, k):
            size = 1 + sum(len(o) for o in combo)
            if size >= n or n % size:
                continue
            cand = tuple(sorted([tau] + [x for o in combo for x in o]))
            if is_block(stab, cand):
                out.append(cand)
    return sorted(out, key=lambda b: (len(b), b))


def closure(degree: int, generators: Iterable[Perm]) -> frozenset[Perm]:
    """All elements of a small group as a set."""
    gens = [tuple(g) for g in generators]
    e = identity(degree)
    seen = {e}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = mul(x, g)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def _scan_guard(big: PermGroup) -> None:
    if big.order() > MAX_SCAN_ORDER:
        raise BudgetExceeded(f"group order {big.order()} exceeds element-scan cap")


def normalizes(g: Perm, sub: PermGroup) -> bool:
    return all(sub.contains(conj(s, g)) for s in sub.generators)


def normalizer(big: PermGroup, sub: PermGroup) -> PermGroup:
    """Normalizer of ``sub`` in ``big`` by scanning all elements of ``big``."""
    _scan_guard(big)
    elts = [g for g in big.elements() if normalizes(g, sub)]
    return reduce_generators(big.degree, elts, len(elts))


def conjugating_element(big: PermGroup, a: PermGroup, b: PermGroup) -> Perm | None:
    """Some ``g`` in ``big`` with ``a^g = b``, or None."""
    _scan_guard(big)
    if a.order() != b.order():
        return None
    for g in big.elements():
        if all(b.contains(conj(s, g)) for s in a.generators):
            return g
    return None


def is_conjugate(big: PermGroup, a: PermGroup, b: PermGroup) -> bool:
    return conjugating_element(big, a, b) is not None


# --- generator files ---

def format_generators(group: PermGroup) -> str:
    return "".join(" ".join(map(str, g)) + "\n" for g in group.generators)


def parse_generators(text: str) -> PermGroup:
    gens = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            gens.append(check_perm(line.split()))
    if not gens:
        raise ValueError("no generators found")
    degree = len(gens[0])
    if any(len(g) != degree for g in gens):
        raise ValueError("generators have different degrees")
    return PermGroup(degree, gens)
