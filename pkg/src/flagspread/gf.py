"""Exact arithmetic in GF(p^d).

Elements are integers in ``[0, p^d)``.  The base-p digits of an index are
the coefficients of a polynomial (constant term first) reduced modulo the
field's defining polynomial.  Multiplication goes through exp/log tables
built once per field, addition in odd characteristic through a Zech table.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

MAX_FIELD_SIZE = 2**20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime divisors of ``n`` in ascending order."""
    out = []
    i = 2
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            while n % i == 0:
                n //= i
        i += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, d)`` with ``q = p**d``; raise if ``q`` is not a prime power."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    ps = prime_factors(q)
    if len(ps) != 1:
        raise ValueError(f"{q} is not a prime power")
    p = ps[0]
    d = 0
    while q > 1:
        q //= p
        d += 1
    return p, d


# --- polynomials over GF(p), coefficient lists with constant term first ---

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p) if p > 2 else 1
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _trim(a)
    return a


def _monic_polys(p: int, deg: int) -> Iterator[list[int]]:
    # constant-term-first lexicographic order
    for n in range(p**deg):
        coeffs = []
        for _ in range(deg):
            coeffs.append(n % p)
            n //= p
        yield coeffs + [1]



def is_irreducible(f: list[int], p: int) -> bool:
    """Irreducibility over GF(p) by exhaustive search for monic factors."""
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    for k in range(1, d // 2 + 1):
        for g in _monic_polys(p, k):
            if not _poly_mod(f, g, p):
                return False
    return True


def _candidate_moduli(p: int, d: int) -> Iterator[list[int]]:
    # ordered by the integer sum(c_i p^i), so x^3+x+1 precedes x^3+x^2+1
    return _monic_polys(p, d)


@dataclass(frozen=True)
class AutPower:
    """The field automorphism x -> x^(p^k)."""

    k: int

    def __mul__(self, other: "AutPower") -> "AutPower":
        return AutPower(self.k + other.k)


class FieldSpec:
    """GF(p^d) with a canonical modulus and generator.

    Instances are cached per ``(p, d)`` by :func:`make_field` and are treated
    as immutable.
    """

    def __init__(self, p: int, d: int, modulus: tuple[int, ...], generator: int,
                 exp: list[int], log: list[int], zech: list[int] | None):
        self.p = p
        self.d = d
        self.q = p**d
        self.modulus = modulus
        self.generator = generator
        self._exp = exp
        self._log = log
        self._zech = zech
        self._minus_one = 1 if p == 2 else exp[(self.q - 1) // 2]

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.d})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FieldSpec) and (self.p, self.d, self.modulus) == (
            other.p, other.d, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.d, self.modulus))

    def to_json(self) -> dict:
        return {"p": self.p, "d": self.d, "modulus": list(self.modulus)}

    # integer-level arithmetic

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if a == 0:
            return b
        if b == 0:
            return a
        la, lb = self._log[a], self._log[b]
        z = self._zech[(lb - la) % (self.q - 1)]
        if z == 0:
            return 0
        return self._exp[(la + self._log[z]) % (self.q - 1)]

    def neg(self, a: int) -> int:
        return self.mul(a, self._minus_one)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            if n < 0:
                raise ZeroDivisionError("inverse of zero in " + repr(self))
            return 1 if n == 0 else 0
        return self._exp[(self._log[a] * n) % (self.q - 1)]

    def frob(self, a: int, k: int) -> int:
        """``a ** (p ** k)``, with ``k`` taken mod ``d``."""
        return self.pow(a, self.p ** (k % self.d))

    def log(self, a: int) -> int:
        """Discrete log to the canonical generator."""
        if a == 0:
            raise ValueError("log of zero")
        return self._log[a]

    def exp(self, n: int) -> int:
        return self._exp[n % (self.q - 1)]

    def sum(self, xs: Iterable[int]) -> int:
        s = 0
        for x in xs:
            s = self.add(s, x)
        return s

    def from_int(self, n: int) -> int:
        """Image of the integer ``n`` in the prime field."""
        return n % self.p

    def digits(self, a: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.d):
            out.append(a % self.p)
            a //= self.p
        return tuple(out)

    def order(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        from math import gcd
        return (self.q - 1) // gcd(self.log(a), self.q - 1)

    # element-level convenience

    def __call__(self, index: int) -> "FieldElement":
        return FieldElement(self, index)

    def elements(self) -> list["FieldElement"]:
        return [FieldElement(self, i) for i in range(self.q)]

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @property
    def gen(self) -> "FieldElement":
        return FieldElement(self, self.generator)


class FieldElement:
    """An element of a :class:`FieldSpec` with operator overloading."""

    __slots__ = ("field", "index")

    def __init__(self, field: FieldSpec, index: int):
        self.field = field
        self.index = index

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            return other.index
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.index, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.index, self._coerce(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._coerce(other), self.index))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.index))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.index, self._coerce(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.index, self._coerce(other)))

    def __rtruediv__(self, other):
        return FieldElement(self.field, self.field.div(self._coerce(other), self.index))

    def __pow__(self, n: int):
        return FieldElement(self.field, self.field.pow(self.index, n))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.index))

    def twist(self, a: AutPower | int) -> "FieldElement":
        k = a.k if isinstance(a, AutPower) else a
        return FieldElement(self.field, self.field.frob(self.index, k))

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.index == other.index and self.field == other.field
        if isinstance(other, int):
            return self.index == self.field.from_int(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.index)

    def __lt__(self, other: "FieldElement") -> bool:
        return self.index < other.index

    def __bool__(self) -> bool:
        return self.index != 0

    def __int__(self) -> int:
        return self.index

    def __repr__(self) -> str:
        return f"{self.field!r}({self.index})"


def twist(x: FieldElement, a: AutPower | int) -> FieldElement:
    """Apply ``x -> x^(p^k)``."""
    return x.twist(a)


# --- construction ---

def _slow_mul(a: int, b: int, p: int, d: int, modulus: list[int]) -> int:
    da = [(a // p**i) % p for i in range(d)]
    db = [(b // p**i) % p for i in range(d)]
    prod = [0] * (2 * d - 1)
    for i, x in enumerate(da):
        if x:
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % p
    r = _poly_mod(prod, modulus, p)
    return sum(c * p**i for i, c in enumerate(r))


def _slow_pow(a: int, n: int, p: int, d: int, modulus: list[int]) -> int:
    result = 1
    while n:
        if n & 1:
            result = _slow_mul(result, a, p, d, modulus)
        a = _slow_mul(a, a, p, d, modulus)
        n >>= 1
    return result


def _digit_add(a: int, b: int, p: int, d: int) -> int:
    out = 0
    for i in range(d):
        out += ((a % p + b % p) % p) * p**i
        a //= p
        b //= p
    return out


@lru_cache(maxsize=None)
def make_field(p: int, d: int = 1) -> FieldSpec:
    """Return GF(p^d) with canonical modulus and generator."""
    if not is_prime(p):
        raise ValueError(f"characteristic {p} is not prime")
    if d < 1:
        raise ValueError("extension degree must be at least 1")
    q = p**d
    if q > MAX_FIELD_SIZE:
        raise ValueError(f"field size {q} exceeds {MAX_FIELD_SIZE}")
    modulus = next(f for f in _candidate_moduli(p, d) if is_irreducible(f, p))
    primes = prime_factors(q - 1)
    generator = 1
    if q > 2:
        for g in range(1, q):
            if all(_slow_pow(g, (q - 1) // r, p, d, modulus) != 1 for r in primes):
                generator = g
                break
    exp = [0] * (q - 1)
    log = [0] * q
    x = 1
    for i in range(q - 1):
        exp[i] = x
        log[x] = i
        x = _slow_mul(x, generator, p, d, modulus)
    zech = None
    if p != 2:
        # zech[z] = 1 + g^z
        zech = [_digit_add(1, exp[z], p, d) for z in range(q - 1)]
    return FieldSpec(p, d, tuple(modulus), generator, exp, log, zech)


def field_of_order(q: int) -> FieldSpec:
    return make_field(*prime_power(q))


def mult_subgroup(spec: FieldSpec, m: int) -> list[int]:
    """The index-``m`` subgroup of the multiplicative group, sorted by index."""
    if m < 1 or (spec.q - 1) % m:
        raise ValueError(f"{m} does not divide {spec.q - 1}")
    return sorted(spec.exp(m * i) for i in range((spec.q - 1) // m))


def subgroup_cosets(spec: FieldSpec, m: int) -> list[list[int]]:
    """Cosets ``g^j H`` for ``j = 0..m-1`` of the index-``m`` subgroup ``H``."""
    h = mult_subgroup(spec, m)
    return [sorted(spec.mul(spec.exp(j), x) for x in h) for j in range(m)]


def bracket(n: int, i: int, p: int) -> int:
    """``(p^(n*i) - 1) / (p^n - 1)``."""
    if i < 0 or n < 1:
        raise ValueError("need i >= 0 and n >= 1")
    return (p ** (n * i) - 1) // (p**n - 1)
