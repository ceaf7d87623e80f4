"""Exact truncated series in a rank variable ``t`` and a weight variable ``q``.

Exponents of ``q`` may be half-integers; they are stored doubled, so the key
of a term ``c * t**n * q**(e2/2)`` is ``(n, e2)``.

Truncation model
----------------
A :class:`TruncationPolicy` ``(t_max, q_min, q_max)`` retains, in t-degree
``n``, the q-exponents in the band ``[n*q_min, n*q_min + q_max]``.  For
``q_min == 0`` this is the plain window ``[0, q_max]`` in every t-degree.
A negative ``q_min`` lets rank-``n`` coefficients reach down to ``q**(n*q_min)``
while keeping the retained region closed under multiplication: monomials
outside the band form an ideal, so truncated arithmetic is an honest quotient
ring and every product is exact on the window.  Terms below the floor are
never silently dropped; constructing one is an error.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

HalfInt = Union[int, Fraction, str]


class WindowError(ValueError):
    """A term or query falls outside the truncation window."""


class PolicyMismatch(ValueError):
    """Two series cannot be combined on a common window."""


def double(x: HalfInt) -> int:
    """Return ``2*x`` as an int, rejecting anything that is not a half-integer."""
    fx = Fraction(x)
    d = 2 * fx
    if d.denominator != 1:
        raise ValueError(f"{x!r} is not a half-integer")
    return int(d)


@dataclass(frozen=True)
class TruncationPolicy:
    t_max: int
    q_min: Fraction
    q_max: Fraction

    def __init__(self, t_max: int, q_min: HalfInt = 0, q_max: HalfInt = 20):
        if t_max < 0:
            raise ValueError("t_max must be >= 0")
        q_min2, q_max2 = double(q_min), double(q_max)
        if q_max2 < 0 or q_min2 > q_max2:
            raise ValueError(f"bad q window ({q_min}, {q_max})")
        object.__setattr__(self, "t_max", int(t_max))
        object.__setattr__(self, "q_min", Fraction(q_min2, 2))
        object.__setattr__(self, "q_max", Fraction(q_max2, 2))

    @property
    def q_min2(self) -> int:
        return int(2 * self.q_min)

    @property
    def q_max2(self) -> int:
        return int(2 * self.q_max)

    def band(self, n: int) -> tuple[int, int]:
        """Doubled exponent range ``(lo, hi)`` retained in t-degree ``n``."""
        lo = n * self.q_min2
        return lo, lo + self.q_max2

    def contains(self, n: int, e2: int) -> bool:
        if not 0 <= n <= self.t_max:
            return False
        lo, hi = self.band(n)
        return lo <= e2 <= hi

    def merge(self, other: "TruncationPolicy") -> "TruncationPolicy":
        if self == other:
            return self
        if self.q_min != other.q_min:
            raise PolicyMismatch(
                f"cannot intersect windows with different q floors {self.q_min} and {other.q_min}"
            )
        return TruncationPolicy(
            min(self.t_max, other.t_max), self.q_min, min(self.q_max, other.q_max)
        )

    def to_dict(self) -> dict:
        return {"t_max": self.t_max, "q_min2": self.q_min2, "q_max2": self.q_max2}

    @classmethod
    def from_dict(cls, d: Mapping) -> "TruncationPolicy":
        return cls(d["t_max"], Fraction(d["q_min2"], 2), Fraction(d["q_max2"], 2))


class GradedSeries:
    """Immutable truncated series with integer coefficients.

    Build with :func:`make_series` or the classmethods; arithmetic works with
    the usual operators.  Coefficients are keyed by ``(n, e2)``.
    """

    __slots__ = ("policy", "_coeffs")

    def __init__(self, policy: TruncationPolicy, coeffs: Mapping[tuple[int, int], int] = ()):
        clean = {}
        for (n, e2), c in dict(coeffs).items():
            if c == 0:
                continue
            if not policy.contains(n, e2):
                raise WindowError(
                    f"term t^{n} q^{Fraction(e2, 2)} (coefficient {c}) outside window {policy}"
                )
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    raise ValueError(f"non-integral coefficient {c} at t^{n} q^{Fraction(e2, 2)}")
                c = c.numerator
            clean[(int(n), int(e2))] = int(c)
        self.policy = policy
        self._coeffs = clean

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, policy: TruncationPolicy) -> "GradedSeries":
        return cls(policy)

    @classmethod
    def one(cls, policy: TruncationPolicy) -> "GradedSeries":
        return cls(policy, {(0, 0): 1})

    @classmethod
    def truncating(cls, policy: TruncationPolicy, coeffs: Mapping[tuple[int, int], int]) -> "GradedSeries":
        """Drop terms above the window; terms below the floor are still an error."""
        kept = {}
        for (n, e2), c in coeffs.items():
            if n > policy.t_max or n < 0:
                continue
            lo, hi = policy.band(n)
            if e2 > hi:
                continue
            if e2 < lo and c != 0:
                raise WindowError(
                    f"term t^{n} q^{Fraction(e2, 2)} lies below the window floor {Fraction(lo, 2)}"
                )
            kept[(n, e2)] = c
        return cls(policy, kept)

    # -- access -----------------------------------------------------------
    @property
    def coeffs(self) -> dict[tuple[int, int], int]:
        return dict(self._coeffs)

    def items(self):
        return sorted(self._coeffs.items())

    def coeff(self, n: int, q_exp: HalfInt) -> int:
        e2 = double(q_exp)
        if not self.policy.contains(n, e2):
            raise WindowError(f"t^{n} q^{q_exp} is in the truncated region of {self.policy}")
        return self._coeffs.get((n, e2), 0)

    def t_part(self, n: int) -> dict[int, int]:
        """Coefficients of ``t**n`` as a map doubled-exponent -> coefficient."""
        return {e2: c for (m, e2), c in self._coeffs.items() if m == n}

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedSeries):
            return NotImplemented
        return self.policy == other.policy and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((self.policy, frozenset(self._coeffs.items())))

    def __repr__(self) -> str:
        return f"GradedSeries({self.policy}, {format_series(self)})"

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, int):
            other = GradedSeries(self.policy, {(0, 0): other})
        return add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return GradedSeries(self.policy, {k: -c for k, c in self._coeffs.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = GradedSeries(self.policy, {(0, 0): other})
        return add(self, -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return GradedSeries(self.policy, {k: other * c for k, c in self._coeffs.items()})
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers: use invert_geometric")
        out = GradedSeries.one(self.policy)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def restrict(self, policy: TruncationPolicy) -> "GradedSeries":
        """Re-window onto a policy no larger than the current one."""
        merged = self.policy.merge(policy)
        if merged != policy:
            raise PolicyMismatch(f"{policy} is not contained in {self.policy}")
        return GradedSeries.truncating(policy, self._coeffs)

    def shift(self, dn: int = 0, dq: HalfInt = 0) -> "GradedSeries":
        """Multiply by ``t**dn * q**dq`` and truncate."""
        d2 = double(dq)
        return GradedSeries.truncating(
            self.policy, {(n + dn, e2 + d2): c for (n, e2), c in self._coeffs.items()}
        )

    def map_coefficients(self, fn) -> "GradedSeries":
        return GradedSeries(self.policy, {k: fn(k, c) for k, c in self._coeffs.items()})


def make_series(terms: Iterable[tuple[int, HalfInt, int]], policy: TruncationPolicy) -> GradedSeries:
    """Build a series from ``(n, q_exponent, coefficient)`` triples; duplicates add up."""
    acc: dict[tuple[int, int], int] = {}
    for n, qe, c in terms:
        e2 = double(qe)
        if not policy.contains(n, e2):
            raise WindowError(f"term ({n}, {qe}, {c}) outside window {policy}")
        acc[(n, e2)] = acc.get((n, e2), 0) + c
    return GradedSeries(policy, acc)


def _merge(a: GradedSeries, b: GradedSeries) -> tuple[TruncationPolicy, GradedSeries, GradedSeries]:
    pol = a.policy.merge(b.policy)
    if a.policy != pol:
        a = GradedSeries.truncating(pol, a._coeffs)
    if b.policy != pol:
        b = GradedSeries.truncating(pol, b._coeffs)
    return pol, a, b


def add(a: GradedSeries, b: GradedSeries) -> GradedSeries:
    pol, a, b = _merge(a, b)
    out = dict(a._coeffs)
    for k, c in b._coeffs.items():
        out[k] = out.get(k, 0) + c
    return GradedSeries(pol, out)


def mul_parts(pol: TruncationPolicy, a: Mapping[tuple[int, int], object],
              b: Mapping[tuple[int, int], object]) -> dict[tuple[int, int], object]:
    """Truncated Cauchy product of raw coefficient maps (int or Fraction values)."""
    out: dict[tuple[int, int], object] = {}
    t_max = pol.t_max
    by_n: dict[int, list[tuple[int, object]]] = {}
    for (n, e2), c in b.items():
        by_n.setdefault(n, []).append((e2, c))
    for (n1, e1), c1 in a.items():
        for n2, terms in by_n.items():
            n = n1 + n2
            if n > t_max:
                continue
            hi = pol.band(n)[1]
            for e2, c2 in terms:
                e = e1 + e2
                if e <= hi:
                    key = (n, e)
                    out[key] = out.get(key, 0) + c1 * c2
    return out


def mul(a: GradedSeries, b: GradedSeries) -> GradedSeries:
    pol, a, b = _merge(a, b)
    return GradedSeries(pol, mul_parts(pol, a._coeffs, b._coeffs))


def invert_geometric(f: GradedSeries) -> GradedSeries:
    """Inverse of a series whose rank-0 part is exactly 1."""
    if f.t_part(0) != {0: 1}:
        raise ValueError("not a unit for geometric inversion: rank-0 part must be exactly 1")
    pol = f.policy
    rest = {k: c for k, c in f._coeffs.items() if k[0] > 0}
    # g_n = -sum_{k>=1} f_k g_{n-k}
    g: dict[tuple[int, int], int] = {(0, 0): 1}
    for n in range(1, pol.t_max + 1):
        lo, hi = pol.band(n)
        acc: dict[int, int] = {}
        for (k, e1), c1 in rest.items():
            if k > n:
                continue
            for (m, e2), c2 in g.items():
                if m != n - k:
                    continue
                e = e1 + e2
                if e <= hi:
                    acc[e] = acc.get(e, 0) - c1 * c2
        for e, c in acc.items():
            if c:
                g[(n, e)] = c
    return GradedSeries(pol, g)


def coeff(f: GradedSeries, n: int, q_exp: HalfInt) -> int:
    return f.coeff(n, q_exp)


def first_difference(a: GradedSeries, b: GradedSeries):
    """Smallest ``(n, q_exponent, a_coeff, b_coeff)`` where the series differ, or None."""
    pol, a, b = _merge(a, b)
    keys = sorted(set(a._coeffs) | set(b._coeffs))
    for k in keys:
        ca, cb = a._coeffs.get(k, 0), b._coeffs.get(k, 0)
        if ca != cb:
            return k[0], Fraction(k[1], 2), ca, cb
    return None


def format_series(f: GradedSeries, var_t: str = "t", var_q: str = "q") -> str:
    if not f._coeffs:
        return "0"
    parts = []
    for (n, e2), c in f.items():
        mon = []
        if n:
            mon.append(var_t if n == 1 else f"{var_t}^{n}")
        if e2:
            e = Fraction(e2, 2)
            mon.append(var_q if e == 1 else (f"{var_q}^{e}" if e.denominator == 1 and e > 0 else f"{var_q}^({e})"))
        body = "*".join(mon)
        if not body:
            parts.append(str(c))
        elif c == 1:
            parts.append(body)
        elif c == -1:
            parts.append("-" + body)
        else:
            parts.append(f"{c}*{body}")
    return " + ".join(parts).replace("+ -", "- ")


def to_json(f: GradedSeries) -> str:
    payload = {"policy": f.policy.to_dict(), "terms": [[n, e2, c] for (n, e2), c in f.items()]}
    return json.dumps(payload, sort_keys=True)


def from_json(text: str) -> GradedSeries:
    d = json.loads(text)
    pol = TruncationPolicy.from_dict(d["policy"])
    coeffs: dict[tuple[int, int], int] = {}
    for n, e2, c in d["terms"]:
        coeffs[(n, e2)] = coeffs.get((n, e2), 0) + c
    return GradedSeries(pol, coeffs)
