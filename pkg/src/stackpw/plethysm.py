"""Plethystic exponential/logarithm, Adams operations and Newton identities."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .series import GradedSeries, TruncationPolicy, WindowError


class IntegralityError(ArithmeticError):
    """A plethystic result that must be integral was not; signals an arithmetic bug."""


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius is defined for n >= 1")
    result, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    if m > 1:
        result = -result
    return result


def _adams_raw(pol: TruncationPolicy, coeffs, k: int, strict: bool = False) -> dict:
    out = {}
    for (n, e2), c in coeffs.items():
        m, e = k * n, k * e2
        if m > pol.t_max or e > pol.band(m)[1]:
            if strict:
                raise WindowError(f"adams({k}) sends t^{n} q^{Fraction(e2, 2)} out of the window")
            continue
        out[(m, e)] = out.get((m, e), 0) + c
    return out


def adams(f: GradedSeries, n: int, strict: bool = False) -> GradedSeries:
    """Substitute ``t -> t**n, q -> q**n``.

    Images above the window are truncated (they lie in the truncation ideal);
    pass ``strict=True`` to make that an error instead.
    """
    if n < 1:
        raise ValueError("adams operations need n >= 1")
    return GradedSeries(f.policy, _adams_raw(f.policy, f.coeffs, n, strict))


def _by_rank(coeffs, t_max: int) -> list[dict[int, Fraction]]:
    parts: list[dict[int, Fraction]] = [dict() for _ in range(t_max + 1)]
    for (n, e2), c in coeffs.items():
        parts[n][e2] = parts[n].get(e2, 0) + c
    return parts


def _mul_part(a: dict, b: dict, hi: int, acc: dict, scale=1) -> None:
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = e1 + e2
            if e <= hi:
                acc[e] = acc.get(e, 0) + scale * c1 * c2


def _exp_parts(F: list[dict], pol: TruncationPolicy) -> list[dict]:
    # n G_n = sum_{k=1}^{n} k F_k G_{n-k}
    G: list[dict] = [{0: Fraction(1)}]
    for n in range(1, pol.t_max + 1):
        hi = pol.band(n)[1]
        acc: dict = {}
        for k in range(1, n + 1):
            if F[k]:
                _mul_part(F[k], G[n - k], hi, acc, k)
        G.append({e: Fraction(c, n) for e, c in acc.items() if c})
    return G


def _log_parts(G: list[dict], pol: TruncationPolicy) -> list[dict]:
    # n L_n = n G_n - sum_{k=1}^{n-1} k L_k G_{n-k}
    L: list[dict] = [{}]
    for n in range(1, pol.t_max + 1):
        hi = pol.band(n)[1]
        acc = {e: n * c for e, c in G[n].items()}
        for k in range(1, n):
            if L[k]:
                _mul_part(L[k], G[n - k], hi, acc, -k)
        L.append({e: Fraction(c, n) for e, c in acc.items() if c})
    return L


def _to_integral(parts: list[dict], pol: TruncationPolicy, what: str) -> GradedSeries:
    out = {}
    for n, part in enumerate(parts):
        for e2, c in part.items():
            c = Fraction(c)
            if c.denominator != 1:
                raise IntegralityError(f"{what}: coefficient {c} at t^{n} q^{Fraction(e2, 2)}")
            if c:
                out[(n, e2)] = c.numerator
    return GradedSeries(pol, out)


def pexp(f: GradedSeries) -> GradedSeries:
    """Plethystic exponential ``prod (1 - t^n q^e)^(-c)`` as ``exp(sum_k psi_k(f)/k)``."""
    if f.t_part(0):
        raise ValueError("pexp needs a series with zero rank-0 part")
    pol = f.policy
    F = [dict() for _ in range(pol.t_max + 1)]
    for k in range(1, pol.t_max + 1):
        for (n, e2), c in _adams_raw(pol, f.coeffs, k).items():
            F[n][e2] = F[n].get(e2, 0) + Fraction(c, k)
    return _to_integral(_exp_parts(F, pol), pol, "pexp")


def plog(f: GradedSeries) -> GradedSeries:
    """Inverse of :func:`pexp`."""
    if f.t_part(0) != {0: 1}:
        raise ValueError("plog needs rank-0 part exactly 1")
    pol = f.policy
    L = _log_parts(_by_rank(f.coeffs, pol.t_max), pol)
    raw = {(n, e2): c for n, part in enumerate(L) for e2, c in part.items()}
    out = [dict() for _ in range(pol.t_max + 1)]
    for k in range(1, pol.t_max + 1):
        mu = mobius(k)
        if not mu:
            continue
        for (n, e2), c in _adams_raw(pol, raw, k).items():
            out[n][e2] = out[n].get(e2, 0) + Fraction(mu, k) * c
    return _to_integral(out, pol, "plog")


# -- symmetric functions ------------------------------------------------------


@dataclass(frozen=True)
class SpectrumTuple:
    """Elementary symmetric values ``(s_1, ..., s_r)`` of an eigenvalue multiset."""

    entries: tuple[Fraction, ...]

    def __init__(self, entries: Sequence = ()):
        object.__setattr__(self, "entries", tuple(Fraction(x) for x in entries))

    @property
    def rank(self) -> int:
        return len(self.entries)

    @classmethod
    def from_multiset(cls, values: Sequence) -> "SpectrumTuple":
        """Elementary symmetric functions of ``values`` by expanding ``prod (x + v)``."""
        e = [Fraction(1)]
        for v in values:
            v = Fraction(v)
            e = [a + (v * e[i - 1] if i else 0) for i, a in enumerate(e + [Fraction(0)])]
        return cls(e[1:])


def _power_sums(e: Sequence[Fraction], count: int) -> list[Fraction]:
    r = len(e)
    p: list[Fraction] = []
    for k in range(1, count + 1):
        total = Fraction(0)
        for i in range(1, min(k - 1, r) + 1):
            total += (-1) ** (i - 1) * e[i - 1] * p[k - i - 1]
        if k <= r:
            total += (-1) ** (k - 1) * k * e[k - 1]
        p.append(total)
    return p


def elem_to_power(s: SpectrumTuple) -> tuple[Fraction, ...]:
    return tuple(_power_sums(s.entries, s.rank))


def power_to_elem(p: Sequence, r: int) -> SpectrumTuple:
    if len(p) < r:
        raise ValueError(f"need at least {r} power sums, got {len(p)}")
    p = [Fraction(x) for x in p]
    e = [Fraction(1)]
    for k in range(1, r + 1):
        total = sum(((-1) ** (i - 1) * e[k - i] * p[i - 1] for i in range(1, k + 1)), Fraction(0))
        e.append(total / k)
    return SpectrumTuple(e[1:])


def spectrum_cup(a: SpectrumTuple, b: SpectrumTuple) -> SpectrumTuple:
    """Elementary symmetric values of the union of two eigenvalue multisets.

    Both sides are pushed to power sums of length ``m + n`` (where the power
    sums of an ``m``-element multiset are extended by Newton's recursion),
    added, and converted back.
    """
    total = a.rank + b.rank
    pa = _power_sums(a.entries, total)
    pb = _power_sums(b.entries, total)
    return power_to_elem([x + y for x, y in zip(pa, pb)], total)
