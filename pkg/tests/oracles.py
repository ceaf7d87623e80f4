"""Slow, obviously-correct reference computations used by the tests.

Nothing here imports the arithmetic it is meant to check.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb


def naive_product(a: dict, b: dict, keep) -> dict:
    """Cauchy product of ``{(n, e2): c}`` dicts, keeping keys where ``keep(n, e2)``."""
    out: dict = {}
    for (n1, e1), c1 in a.items():
        for (n2, e2), c2 in b.items():
            k = (n1 + n2, e1 + e2)
            if keep(*k):
                out[k] = out.get(k, 0) + c1 * c2
    return {k: v for k, v in out.items() if v}


def euler_product(gens: dict, keep, t_max: int) -> dict:
    """``prod (1 - t^n q^(e2/2))^(-c)`` expanded literally, one factor at a time.

    Each factor is a binomial series ``sum_k C(c+k-1, k) x^k`` (negative
    ``c`` gives the finite product ``(1 - x)^|c|``).
    """
    out = {(0, 0): 1}
    for (n, e2), c in sorted(gens.items()):
        factor = {}
        k = 0
        while k * n <= t_max:
            coef = comb(c + k - 1, k) if c > 0 else (-1) ** k * comb(-c, k)
            if coef:
                factor[(k * n, k * e2)] = coef
            k += 1
        out = naive_product(out, factor, keep)
    return out


def mobius(n: int) -> int:
    out, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            out = -out
        p += 1
    return -out if n > 1 else out


def necklaces(k: int, n: int) -> int:
    """Witt's formula: dimension of the degree-``n`` part of the free Lie algebra on ``k`` generators."""
    total = sum(mobius(d) * k ** (n // d) for d in range(1, n + 1) if n % d == 0)
    assert total % n == 0
    return total // n


def char_poly_coeffs(values) -> list[Fraction]:
    """Elementary symmetric values from ``prod (x - v)``: ``e_k = (-1)^k [x^(m-k)]``."""
    poly = [Fraction(1)]  # highest degree first
    for v in values:
        v = Fraction(v)
        poly = [a - v * b for a, b in zip(poly + [Fraction(0)], [Fraction(0)] + poly)]
    return [(-1) ** k * poly[k] for k in range(1, len(poly))]


def power_sums(values, count: int) -> list[Fraction]:
    return [sum((Fraction(v) ** k for v in values), Fraction(0)) for k in range(1, count + 1)]


def partitions_max_part(n: int, k: int) -> int:
    """Partitions of ``n`` with parts at most ``k``."""
    if n == 0:
        return 1
    if k == 0:
        return 0
    return sum(partitions_max_part(n - j * k, k - 1) for j in range(n // k + 1))
