"""Small divisibility facts used by the affine and exceptional-group analyses.

Each ``*_solutions`` function scans ``l`` directly; the matching
``*_closed_form`` function states the answer the scan should produce.
"""

from __future__ import annotations

from math import gcd

from .gf import prime_factors, prime_power


def ord_p(p: int, a: int) -> int:
    """The exponent of the prime ``p`` in ``a``."""
    if a == 0:
        raise ValueError("ord_p(0) is undefined")
    k = 0
    while a % p == 0:
        a //= p
        k += 1
    return k


def prime_divisors(n: int) -> frozenset[int]:
    """The set S(n) of prime divisors of ``n``."""
    return frozenset(prime_factors(n)) if n > 1 else frozenset()


def order_mod(a: int, c: int) -> int:
    """Multiplicative order of ``a`` modulo ``c``."""
    if c < 1 or gcd(a, c) != 1:
        raise ValueError(f"{a} is not a unit modulo {c}")
    if c == 1:
        return 1
    k, x = 1, a % c
    while x != 1:
        x = x * a % c
        k += 1
    return k


def _check_q(q: int) -> None:
    prime_power(q)
    if q <= 2:
        raise ValueError("q must exceed 2")


def _divisors_scan(q: int, n: int, value) -> list[int]:
    # value(l) is increasing in l, so stop once it passes q^n
    bound = q**n
    out = []
    l = 0
    while True:
        v = value(l)
        if v > bound:
            return out
        if v > 0 and bound % v == 0:
            out.append(l)
        l += 1


def lemma_3q_solutions(q: int) -> list[int]:
    """All l >= 0 with (l(q^2-1)/3 + q) dividing q^3."""
    _check_q(q)
    if (q + 1) % 3:
        raise ValueError("requires 3 | q+1")
    return _divisors_scan(q, 3, lambda l: l * (q * q - 1) // 3 + q)


def lemma_3q_closed_form(q: int) -> list[int]:
    return [0, 3 * q]


def lemma_3_solutions(q: int) -> list[int]:
    """All l >= 0 with (l(q^2-1)/3 + 1) dividing q^3."""
    _check_q(q)
    if (q + 1) % 3:
        raise ValueError("requires 3 | q+1")
    return _divisors_scan(q, 3, lambda l: l * (q * q - 1) // 3 + 1)


def lemma_3_closed_form(q: int) -> list[int]:
    return [0, 3]


def geometric_solutions(q: int, n: int) -> list[int]:
    """All l > 0 with (l(q-1) + 1) dividing q^n."""
    prime_power(q)
    return [l for l in _divisors_scan(q, n, lambda l: l * (q - 1) + 1) if l > 0]


def geometric_closed_form(q: int, n: int) -> list[int]:
    return [(q**i - 1) // (q - 1) for i in range(1, n + 1)]


def half_shift_solutions(q: int, n: int) -> list[int]:
    """All l >= 0 with (l(q-1) + (q-1)/2 + 1) dividing q^n; q an odd power of 3."""
    p, e = prime_power(q)
    if p != 3 or e % 2 == 0:
        raise ValueError("requires q an odd power of 3")
    return _divisors_scan(q, n, lambda l: l * (q - 1) + (q - 1) // 2 + 1)


def order_criterion(a: int, m: int) -> bool:
    """Closed-form test for ``a`` having order ``m`` modulo ``(a-1)m``.

    True iff every prime divisor of ``m`` divides ``a-1`` and, when ``4 | m``,
    ``a = 1 (mod 4)``.  For ``m = 2 (mod 4)`` no condition mod 4 is needed:
    3 has order 2 modulo 4.
    """
    if not prime_divisors(m) <= prime_divisors(a - 1):
        return False
    if m % 4 == 0 and a % 4 != 1:
        return False
    return True


def order_criterion_even_rule(a: int, m: int) -> bool:
    """Variant demanding ``a = 1 (mod 4)`` for every even ``m``.

    Stricter than the truth; it wrongly rejects exactly the pairs with
    ``a = 3 (mod 4)``, ``m = 2 (mod 4)`` and ``S(m)`` inside ``S(a-1)``.
    """
    if not prime_divisors(m) <= prime_divisors(a - 1):
        return False
    return m % 2 == 1 or a % 4 == 1


def has_order_m(a: int, m: int) -> bool:
    """Direct check that ``a`` has order ``m`` modulo ``(a-1)m``."""
    c = (a - 1) * m
    if gcd(a, c) != 1:
        return False
    return order_mod(a, c) == m
