"""Filtration tables for the genus-0 and genus-1 stacks.

A table records graded dimensions ``(rank n, cohomological degree i, index k) -> dim``
for one filtration: weight ``W``, perverse ``H``, less perverse ``L`` or the
combined ``F``.  The genus <= 1 tables are built as super-symmetric algebras on
explicitly described generators (the BPS pieces times powers of the
``H(pt/C*)`` generator ``u``), each generator carrying all four gradings.
Degrees and weights are in the virtual normalisation, so a degree-``i``,
weight-``w`` class contributes ``(-1)^i q^(w/2)`` to the E-series.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, replace
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping

from .series import GradedSeries, TruncationPolicy

KINDS = ("W", "H", "L", "F")


class TableInconsistency(ValueError):
    pass


@dataclass(frozen=True)
class Generator:
    """A homogeneous piece of the generating space.

    ``weight`` is the doubled weight-filtration index, ``perverse`` the
    perverse degree and ``less_perverse`` the (even) less-perverse degree.
    """

    rank: int
    degree: int
    weight: int
    perverse: int
    less_perverse: int
    dim: int = 1

    def index(self, kind: str) -> int:
        if kind == "W":
            return self.weight
        if kind == "H":
            return self.perverse
        if kind == "L":
            return self.less_perverse
        if kind == "F":
            # combined index: perverse degree plus half the less-perverse degree
            return self.perverse + self.less_perverse // 2
        raise ValueError(f"unknown filtration kind {kind!r}")


class FiltrationTable:
    def __init__(self, kind: str, entries: Mapping[tuple[int, int, int], int]):
        if kind not in KINDS:
            raise ValueError(f"unknown filtration kind {kind!r}")
        self.kind = kind
        self.entries = {k: v for k, v in entries.items() if v}

    def __repr__(self):
        return f"FiltrationTable({self.kind!r}, {len(self.entries)} entries)"

    def __eq__(self, other):
        return isinstance(other, FiltrationTable) and (self.kind, self.entries) == (other.kind, other.entries)

    def graded(self, n: int, i: int, k: int) -> int:
        return self.entries.get((n, i, k), 0)

    def cells(self) -> list[tuple[int, int]]:
        return sorted({(n, i) for n, i, _ in self.entries})

    def indices(self, n: int, i: int) -> list[int]:
        return sorted(k for (m, j, k) in self.entries if (m, j) == (n, i))

    def totals(self) -> dict[tuple[int, int], int]:
        out: dict[tuple[int, int], int] = defaultdict(int)
        for (n, i, _), v in self.entries.items():
            out[(n, i)] += v
        return dict(out)

    def cumulative(self, n: int, i: int, k: int) -> int:
        """``dim F_k`` in rank ``n``, degree ``i`` for the ascending filtration."""
        return sum(v for (m, j, kk), v in self.entries.items() if (m, j) == (n, i) and kk <= k)

    def validate(self, totals: Mapping[tuple[int, int], int] | None = None) -> None:
        """Monotone cumulative dimensions that stabilise at the expected totals."""
        for (n, i, k), v in sorted(self.entries.items()):
            if v < 0:
                raise TableInconsistency(
                    f"{self.kind}: cumulative dimension drops at rank {n}, degree {i}, index {k}"
                )
            if self.kind == "L" and (k < 0 or k % 2):
                raise TableInconsistency(f"L: index {k} is not an even nonnegative integer")
        if totals is None:
            return
        mine = self.totals()
        for cell in sorted(set(mine) | set(totals)):
            if mine.get(cell, 0) != totals.get(cell, 0):
                n, i = cell
                raise TableInconsistency(
                    f"{self.kind}: rank {n}, degree {i} stabilises at {mine.get(cell, 0)}, "
                    f"expected {totals.get(cell, 0)}"
                )

    def shifted(self, dk: int) -> "FiltrationTable":
        return FiltrationTable(self.kind, {(n, i, k + dk): v for (n, i, k), v in self.entries.items()})

    def e_series(self, policy: TruncationPolicy) -> GradedSeries:
        """``sum (-1)^i dim * t^n q^(w/2)``; only meaningful for the weight table."""
        if self.kind != "W":
            raise ValueError("the E-series specialisation reads weights")
        coeffs: dict[tuple[int, int], int] = defaultdict(int)
        for (n, i, w), v in self.entries.items():
            coeffs[(n, w)] += (-1) ** (i % 2) * v
        return GradedSeries.truncating(policy, coeffs)


def super_sym(gens: Iterable[Generator], r_max: int, cap: int) -> dict[tuple, int]:
    """Graded dimensions of the super-symmetric algebra on ``gens``.

    Even-degree generators are polynomial, odd ones exterior.  Monomials are
    keyed by ``(rank, degree, weight, perverse, less_perverse)`` and kept while
    ``rank <= r_max`` and ``weight/2 + rank <= cap`` (every generator has
    ``weight/2 + rank >= 0``, so this is a quotient by an ideal).
    """
    gens = list(gens)
    for g in gens:
        if g.rank < 1:
            raise ValueError("generators must have positive rank")
        if g.weight + 2 * g.rank < 0:
            raise ValueError(f"generator {g} lies below the truncation cone")

    def level(key):
        return Fraction(key[2], 2) + key[0]

    table = {(0, 0, 0, 0, 0): 1}
    for g in gens:
        step = (g.rank, g.degree, g.weight, g.perverse, g.less_perverse)
        odd = g.degree % 2 == 1
        new: dict[tuple, int] = defaultdict(int)
        for key, v in table.items():
            m = 0
            while True:
                k2 = tuple(a + m * b for a, b in zip(key, step))
                if k2[0] > r_max or level(k2) > cap:
                    break
                mult = comb(g.dim, m) if odd else comb(g.dim + m - 1, m)
                if mult == 0:
                    break
                new[k2] += v * mult
                m += 1
        table = dict(new)
    return table


def tables_from_sym(sym: Mapping[tuple, int]) -> dict[str, FiltrationTable]:
    out = {}
    for kind in KINDS:
        entries: dict[tuple[int, int, int], int] = defaultdict(int)
        for (n, deg, w, p, l), v in sym.items():
            g = Generator(n, deg, w, p, l)
            entries[(n, deg, g.index(kind))] += v
        out[kind] = FiltrationTable(kind, entries)
    return out


def u_powers(base: Generator, cap: int) -> list[Generator]:
    """``base * u^k`` for ``k >= 0``; ``u`` has degree 2, weight 2 and L-degree 2."""
    out = []
    k = 0
    while Fraction(base.weight, 2) + k + base.rank <= cap:
        out.append(replace(base, degree=base.degree + 2 * k, weight=base.weight + 2 * k,
                           less_perverse=base.less_perverse + 2 * k))
        k += 1
    return out


def torus_profile() -> list[Generator]:
    """Rank-1 genus-1 BPS piece, ``H(C* x C*)`` against ``H(T^*E)``, unnormalised.

    Degree ``j`` classes have weight ``2j`` and perverse degree ``j``:
    graded dims ``(1, 2, 1)`` on both sides.
    """
    return [Generator(1, j, 2 * j, j, 0, dim=comb(2, j)) for j in range(3)]


def bps_generators(genus: int, r_max: int) -> list[Generator]:
    """The BPS pieces in each rank, in the virtual normalisation."""
    if genus == 0:
        # one class in rank 1, degree zero
        return [Generator(1, 0, 0, 0, 0)]
    if genus == 1:
        # small diagonal: every rank carries a copy of the torus, twisted by L^(-1)
        return [replace(g, rank=r, degree=g.degree - 2, weight=g.weight - 2, perverse=g.perverse - 1)
                for r in range(1, r_max + 1) for g in torus_profile()]
    raise ValueError("filtration tables are only available in genus 0 and 1")


def stack_tables(genus: int, r_max: int, cap: int) -> dict[str, FiltrationTable]:
    """All four tables for ``Sym(BPS (x) H(pt/C*))`` up to rank ``r_max``."""
    gens = [h for g in bps_generators(genus, r_max) for h in u_powers(g, cap)]
    return tables_from_sym(super_sym(gens, r_max, cap))
