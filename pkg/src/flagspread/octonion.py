"""Split octonions over GF(2^k) with the basis x1..x8 and e = x4 + x5.

Signs are dropped throughout since the characteristic is 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .gf import FieldSpec, field_of_order
from .linalg import nullspace, rref

# x_i * x_j = x_k, keyed by (i, j) with 1-based indices; missing pairs give 0
_PRODUCTS = {
    (1, 5): 1, (1, 6): 2, (1, 7): 3, (1, 8): 4,
    (2, 3): 1, (2, 4): 2, (2, 7): 5, (2, 8): 6,
    (3, 2): 1, (3, 4): 3, (3, 6): 5, (3, 8): 7,
    (4, 1): 1, (4, 4): 4, (4, 6): 6, (4, 7): 7,
    (5, 2): 2, (5, 3): 3, (5, 5): 5, (5, 8): 8,
    (6, 1): 2, (6, 3): 4, (6, 5): 6, (6, 7): 8,
    (7, 1): 3, (7, 2): 4, (7, 5): 7, (7, 6): 8,
    (8, 1): 5, (8, 2): 6, (8, 3): 7, (8, 4): 8,
}

# the second table, over the basis e, x1, x8, x2, x7, x3, x6, x4;
# entries are sets of symbols summed, "e" allowed
TABLE_B_ORDER = ("e", 1, 8, 2, 7, 3, 6, 4)
TABLE_B = {
    "e": ({"e"}, {1}, {8}, {2}, {7}, {3}, {6}, {4}),
    1: ({1}, set(), {4}, set(), {3}, set(), {2}, set()),
    8: ({8}, {"e", 4}, set(), {6}, set(), {7}, set(), {8}),
    2: ({2}, set(), {6}, set(), {"e", 4}, {1}, set(), {2}),
    7: ({7}, {3}, set(), {4}, set(), set(), {8}, set()),
    3: ({3}, set(), {7}, {1}, set(), set(), {"e", 4}, {3}),
    6: ({6}, {2}, set(), set(), {8}, {4}, set(), set()),
    4: ({4}, {1}, set(), set(), {7}, set(), {6}, {4}),
}

# basis of e-perp in the order used for trilinear coordinates
PERP_ORDER = ("e", 1, 8, 2, 7, 3, 6)
_T_ONES = [("e", 1, 8), ("e", 2, 7), ("e", 3, 6), (1, 6, 7), (2, 3, 8)]


@dataclass(frozen=True)
class Octonion:
    field: FieldSpec
    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.field.p != 2:
            raise ValueError("octonions are implemented in characteristic 2 only")
        if len(self.coords) != 8:
            raise ValueError("an octonion has 8 coordinates")

    def __add__(self, other: "Octonion") -> "Octonion":
        F = self.field
        return Octonion(F, tuple(F.add(a, b) for a, b in zip(self.coords, other.coords)))

    def __mul__(self, other: "Octonion") -> "Octonion":
        return oct_mul(self, other)

    def scale(self, c: int) -> "Octonion":
        F = self.field
        return Octonion(F, tuple(F.mul(c, a) for a in self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)


def _field(q_or_field) -> FieldSpec:
    F = q_or_field if isinstance(q_or_field, FieldSpec) else field_of_order(q_or_field)
    if F.p != 2:
        raise ValueError("octonions are implemented in characteristic 2 only")
    return F


def zero(F) -> Octonion:
    return Octonion(_field(F), (0,) * 8)


def basis(F, i: int) -> Octonion:
    """The basis vector x_i, 1 <= i <= 8."""
    F = _field(F)
    c = [0] * 8
    c[i - 1] = 1
    return Octonion(F, tuple(c))


def identity(F) -> Octonion:
    return basis(F, 4) + basis(F, 5)


def symbol(F, s) -> Octonion:
    return identity(F) if s == "e" else basis(F, s)


def oct_mul(a: Octonion, b: Octonion) -> Octonion:
    F = a.field
    out = [0] * 8
    for (i, j), k in _PRODUCTS.items():
        ai, bj = a.coords[i - 1], b.coords[j - 1]
        if ai and bj:
            out[k - 1] = F.add(out[k - 1], F.mul(ai, bj))
    return Octonion(F, tuple(out))


def bilinear(a: Octonion, b: Octonion) -> int:
    """f(a, b) with f(x_i, x_j) = 1 exactly when i + j = 9."""
    F = a.field
    return F.sum(F.mul(a.coords[i], b.coords[7 - i]) for i in range(8))


def norm(a: Octonion) -> int:
    """The quadratic form N with N(x_i) = 0 and polar form f."""
    F = a.field
    c = a.coords
    return F.sum(F.mul(c[i], c[7 - i]) for i in range(4))


def in_e_perp(a: Octonion) -> bool:
    return bilinear(a, identity(a.field)) == 0


def perp_coords(a: Octonion) -> tuple[int, ...]:
    """Coordinates of ``a`` in the basis e, x1, x8, x2, x7, x3, x6 of e-perp."""
    if not in_e_perp(a):
        raise ValueError("argument is not orthogonal to e")
    c = a.coords
    ce = c[3]
    return (ce, c[0], c[7], c[1], c[6], c[2], c[5])


def from_perp_coords(F, v: Sequence[int]) -> Octonion:
    F = _field(F)
    out = zero(F)
    for s, c in zip(PERP_ORDER, v):
        if c:
            out = out + symbol(F, s).scale(c)
    return out


def _t_table() -> dict[tuple[int, int, int], int]:
    pos = {s: i for i, s in enumerate(PERP_ORDER)}
    table = {}
    for trip in _T_ONES:
        idx = [pos[s] for s in trip]
        for perm in product(range(3), repeat=3):
            if sorted(perm) == [0, 1, 2]:
                table[tuple(idx[k] for k in perm)] = 1
    return table


_T = _t_table()


def trilinear(a: Octonion, b: Octonion, c: Octonion) -> int:
    """The symmetric trilinear form t on e-perp."""
    F = a.field
    u, v, w = perp_coords(a), perp_coords(b), perp_coords(c)
    return F.sum(F.mul(F.mul(u[i], v[j]), w[k]) for (i, j, k) in _T)


def delta_set(x: Octonion) -> list[Octonion]:
    """Basis of {y in e-perp : t(x, y, z) = 0 for all z in e-perp}."""
    F = x.field
    perp_basis = [symbol(F, s) for s in PERP_ORDER]
    rows = [[trilinear(x, y, z) for y in perp_basis] for z in perp_basis]
    return [from_perp_coords(F, v) for v in nullspace(F, rows, len(PERP_ORDER))]


def span_rref(vectors: Sequence[Octonion]) -> list[tuple[int, ...]]:
    """Canonical form of the span, for comparing subspaces."""
    if not vectors:
        return []
    return rref(vectors[0].field, [v.coords for v in vectors])


def table_b_mismatches(F=2) -> list[tuple]:
    """Cells of the second table that disagree with the first; empty when consistent."""
    F = _field(F)
    bad = []
    for row in TABLE_B_ORDER:
        for col, entry in zip(TABLE_B_ORDER, TABLE_B[row]):
            expected = zero(F)
            for s in entry:
                expected = expected + symbol(F, s)
            got = symbol(F, row) * symbol(F, col)
            if got != expected:
                bad.append((row, col))
    return bad
