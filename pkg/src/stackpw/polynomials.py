"""Univariate polynomials in ``q`` over the rationals, and reduced ratios of them."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


class Poly:
    """Dense polynomial, coefficients listed from the constant term upward."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable = ()):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.c = tuple(c)

    @classmethod
    def q(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def const(cls, a) -> "Poly":
        return cls([a])

    @property
    def degree(self) -> int:
        return len(self.c) - 1  # zero polynomial has degree -1

    def lead(self) -> Fraction:
        return self.c[-1] if self.c else Fraction(0)

    def low_degree(self) -> int:
        for i, a in enumerate(self.c):
            if a:
                return i
        return -1

    def is_zero(self) -> bool:
        return not self.c

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self.c)

    def __call__(self, x):
        acc = 0
        for a in reversed(self.c):
            acc = acc * x + a
        return acc

    def _lift(self, other) -> "Poly":
        return other if isinstance(other, Poly) else Poly([other])

    def __add__(self, other):
        other = self._lift(other)
        n = max(len(self.c), len(other.c))
        a = self.c + (Fraction(0),) * (n - len(self.c))
        b = other.c + (Fraction(0),) * (n - len(other.c))
        return Poly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-a for a in self.c)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        if not self.c or not other.c:
            return Poly()
        out = [Fraction(0)] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(other.c):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly([1])
        for _ in range(k):
            out = out * self
        return out

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.c)
        quo = [Fraction(0)] * max(len(rem) - len(other.c) + 1, 0)
        lead = other.c[-1]
        for i in range(len(quo) - 1, -1, -1):
            f = rem[i + len(other.c) - 1] / lead
            quo[i] = f
            if f:
                for j, b in enumerate(other.c):
                    rem[i + j] -= f * b
        return Poly(quo), Poly(rem)

    def __floordiv__(self, other):
        return self.divmod(self._lift(other))[0]

    def __mod__(self, other):
        return self.divmod(self._lift(other))[1]

    def exact_div(self, other) -> "Poly":
        quo, rem = self.divmod(self._lift(other))
        if not rem.is_zero():
            raise ArithmeticError(f"{self} is not divisible by {other}")
        return quo

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly([other])
        if not isinstance(other, Poly):
            return NotImplemented
        return self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def monic(self) -> "Poly":
        return Poly(a / self.lead() for a in self.c) if self.c else self

    def reversed_coeffs(self) -> "Poly":
        return Poly(reversed(self.c))

    def int_coeffs(self) -> list[int]:
        if not self.is_integral():
            raise ArithmeticError(f"{self} has non-integral coefficients")
        return [int(a) for a in self.c]

    def __repr__(self):
        return f"Poly({format_poly(self)})"

    def __str__(self):
        return format_poly(self)


def format_poly(p: Poly, var: str = "q") -> str:
    if p.is_zero():
        return "0"
    terms = []
    for i in range(len(p.c) - 1, -1, -1):
        a = p.c[i]
        if not a:
            continue
        mon = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mon:
            terms.append(str(a))
        elif a == 1:
            terms.append(mon)
        elif a == -1:
            terms.append("-" + mon)
        else:
            terms.append(f"{a}*{mon}")
    return " + ".join(terms).replace("+ -", "- ")


def gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def interpolate(points: Sequence[tuple[int, object]]) -> Poly:
    """Lagrange interpolation through ``(x, y)`` pairs, exact over the rationals."""
    result = Poly()
    for i, (xi, yi) in enumerate(points):
        basis = Poly([1])
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j != i:
                basis = basis * Poly([-xj, 1])
                denom *= xi - xj
        result = result + basis * (Fraction(yi) / denom)
    return result


class RationalFunctionQ:
    """Reduced ratio ``num/den`` of rational polynomials in ``q``.

    The denominator is kept monic so equal functions have equal representations.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = num if isinstance(num, Poly) else Poly([num])
        den = den if isinstance(den, Poly) else Poly([den])
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        g = gcd(num, den)
        if not g.is_zero() and g.degree > 0:
            num, den = num.exact_div(g), den.exact_div(g)
        lead = den.lead()
        self.num = Poly(a / lead for a in num.c)
        self.den = Poly(a / lead for a in den.c)

    def _lift(self, other):
        if isinstance(other, RationalFunctionQ):
            return other
        return RationalFunctionQ(other)

    def __add__(self, other):
        o = self._lift(other)
        return RationalFunctionQ(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunctionQ(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __mul__(self, other):
        o = self._lift(other)
        return RationalFunctionQ(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        return RationalFunctionQ(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __eq__(self, other):
        if not isinstance(other, RationalFunctionQ):
            other = RationalFunctionQ(other)
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __call__(self, x):
        return Fraction(self.num(x)) / Fraction(self.den(x))

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def as_poly(self) -> Poly:
        if not self.is_polynomial():
            raise ArithmeticError(f"{self} is not a polynomial")
        return self.num

    def __repr__(self):
        if self.is_polynomial():
            return f"RationalFunctionQ({self.num})"
        return f"RationalFunctionQ(({self.num})/({self.den}))"


def gl_order(r: int) -> Poly:
    """``|GL_r(F_q)| = prod_{i<r} (q^r - q^i)``."""
    out = Poly([1])
    for i in range(r):
        out = out * (Poly.q() ** r - Poly.q() ** i)
    return out
