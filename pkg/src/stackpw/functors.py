"""Graded-dimension series of Sym, tensor, free Lie and enveloping algebras,
plus the building blocks H(pt/C*), H(pt/GL_r) and the point-count dictionary.

Point counts become virtual Borel-Moore series by ``P(q) -> P(1/q) * q^(vdim/2)``:
weights negate under the duality between compactly supported cohomology and
BM homology, and the virtual twist contributes ``q^(vdim/2)``.  With this
normalisation ``1/|GL_1(F_q)|`` at vdim -2 gives ``1 + q + q^2 + ...``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .plethysm import pexp, plog
from .polynomials import Poly, RationalFunctionQ, gl_order
from .series import GradedSeries, TruncationPolicy, WindowError, invert_geometric


@dataclass(frozen=True)
class VirtualDimension:
    value: int

    @classmethod
    def surface(cls, g: int, r: int) -> "VirtualDimension":
        """Betti/Dolbeault stacks of rank ``r`` in genus ``g``."""
        return cls(2 * r * r * (g - 1))

    def __int__(self):
        return self.value


def _vdim(v: Union[int, VirtualDimension]) -> int:
    return v.value if isinstance(v, VirtualDimension) else int(v)


def sym_series(f: GradedSeries) -> GradedSeries:
    return pexp(f)


def uea_series(g: GradedSeries) -> GradedSeries:
    # PBW: U(g) and Sym(g) have the same graded dimensions
    return pexp(g)


def tensor_series(f: GradedSeries) -> GradedSeries:
    if f.t_part(0):
        raise ValueError("tensor_series needs a series with zero rank-0 part")
    return invert_geometric(1 - f)


def free_lie_series(f: GradedSeries) -> GradedSeries:
    """Graded dimensions of the free Lie algebra on ``f``, via ``pexp(L) = T(f)``."""
    return plog(tensor_series(f))


def bcstar_series(policy: TruncationPolicy) -> GradedSeries:
    """``H(pt/C*) = sum_{i>=0} q^i`` in rank 0, up to the window."""
    return GradedSeries(policy, {(0, 2 * i): 1 for i in range(policy.q_max2 // 2 + 1)})


def expand_reflected(count: RationalFunctionQ, shift2: int, n: int,
                     policy: TruncationPolicy) -> dict[tuple[int, int], int]:
    """Coefficients of ``count(1/q) * q^(shift2/2)`` placed in t-degree ``n``."""
    num, den = count.num, count.den
    if num.is_zero():
        return {}
    # count(1/q) = q^(deg den - deg num) * rev(num)(q) / rev(den)(q)
    rnum, rden = num.reversed_coeffs(), den.reversed_coeffs()
    start2 = shift2 + 2 * (den.degree - num.degree)
    lo, hi = policy.band(n)
    if start2 > hi:
        return {}
    steps = (hi - start2) // 2
    d0 = rden.c[0]
    # power series of rnum / rden up to q^steps
    inv = [Fraction(0)] * (steps + 1)
    inv[0] = 1 / d0
    for k in range(1, steps + 1):
        acc = Fraction(0)
        for j in range(1, min(k, rden.degree) + 1):
            acc += rden.c[j] * inv[k - j]
        inv[k] = -acc / d0
    out = {}
    for k in range(steps + 1):
        c = sum((rnum.c[j] * inv[k - j] for j in range(min(k, rnum.degree) + 1)), Fraction(0))
        if c:
            if c.denominator != 1:
                raise ArithmeticError(f"non-integral coefficient {c} in reflected expansion")
            e2 = start2 + 2 * k
            if e2 < lo:
                raise WindowError(
                    f"reflected series has q^{Fraction(e2, 2)} below the window floor {Fraction(lo, 2)}"
                )
            out[(n, e2)] = int(c)
    return out


def bm_vir_from_count(count, vdim: Union[int, VirtualDimension], policy: TruncationPolicy,
                      rank: int = 0) -> GradedSeries:
    """Virtual BM series of a stack with point count ``count``, placed in ``t^rank``."""
    if not isinstance(count, RationalFunctionQ):
        count = RationalFunctionQ(count if isinstance(count, Poly) else Poly([count]))
    return GradedSeries(policy, expand_reflected(count, _vdim(vdim), rank, policy))


def pt_mod_glr_bm_vir_series(r: int, g: int, policy: TruncationPolicy, rank: int = 0) -> GradedSeries:
    """Virtual BM series of ``pt/GL_r`` normalised with virtual dimension ``2r^2(g-1)``."""
    if r < 1:
        raise ValueError("r must be >= 1")
    return bm_vir_from_count(RationalFunctionQ(1, gl_order(r)), VirtualDimension.surface(g, r),
                             policy, rank)
