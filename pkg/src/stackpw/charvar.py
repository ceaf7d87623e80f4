"""Point counts of twisted character varieties and representation stacks.

Two independent routes to ``#{(A_1,B_1,...,A_g,B_g) : prod [A_i,B_i] = z}``:

* brute force over an explicit model of ``GL_r(F_q)``;
* the Frobenius formula ``|G|^(2g-1) * sum_chi lambda_chi(z) chi(1)^(2-2g)``
  evaluated symbolically in ``q`` from character degree data.

Over ``F_q`` the twist ``exp(2 pi i d/r)`` is replaced by ``zeta^d`` for a
primitive ``r``-th root of unity ``zeta`` in ``F_q`` (needs ``q = 1 mod r``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .finite_field import FiniteField, field, gl_elements, prime_power
from .functors import VirtualDimension, bm_vir_from_count
from .polynomials import Poly, RationalFunctionQ, gl_order, interpolate
from .quiver import BudgetExceeded
from .series import GradedSeries, TruncationPolicy, WindowError

GROUP_BUDGET = 200_000
TABLE_CAP = 5_000  # largest group that gets a full multiplication table


@dataclass
class GroupModel:
    r: int
    q: int
    F: FiniteField
    elements: np.ndarray
    codes: np.ndarray
    identity: int
    inverse: np.ndarray
    _table: np.ndarray | None = dc_field(default=None, repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def index_of(self, mats: np.ndarray) -> np.ndarray:
        codes = self.F.encode(mats)
        idx = np.searchsorted(self.codes, codes)
        if (idx >= len(self.codes)).any() or (self.codes[np.minimum(idx, len(self.codes) - 1)] != codes).any():
            raise ValueError("matrix is not an element of the group")
        return idx

    def scalar(self, c: int) -> int:
        """Index of the scalar matrix ``c * Id``."""
        if c == 0 or not 0 < c < self.q:
            raise ValueError(f"{c} is not a unit of F_{self.q}")
        m = np.zeros((1, self.r, self.r), dtype=np.int64)
        m[0][np.diag_indices(self.r)] = c
        return int(self.index_of(m)[0])

    def multiply(self, i, j) -> np.ndarray:
        i, j = np.asarray(i), np.asarray(j)
        if self.order <= TABLE_CAP:
            return self.table[i, j]
        prod_ = self.F.matmul(self.elements[i.ravel()], self.elements[j.ravel()])
        return self.index_of(prod_).reshape(np.broadcast(i, j).shape)

    @property
    def table(self) -> np.ndarray:
        if self._table is None:
            if self.order > TABLE_CAP:
                raise BudgetExceeded(f"no multiplication table for a group of order {self.order}")
            n = self.order
            out = np.empty((n, n), dtype=np.int64)
            for start in range(0, n, 256):
                blk = self.F.matmul(self.elements[start:start + 256, None], self.elements[None, :])
                out[start:start + 256] = self.index_of(blk.reshape(-1, self.r, self.r)).reshape(-1, n)
            self._table = out
        return self._table


def build_group(r: int, q: int, budget: int = GROUP_BUDGET) -> GroupModel:
    if not 1 <= r <= 3:
        raise ValueError("only ranks 1..3 are modelled")
    prime_power(q)
    expected = gl_order(r)(q)
    if expected > budget:
        raise BudgetExceeded(f"|GL_{r}(F_{q})| = {expected} exceeds budget {budget}")
    F = field(q)
    elems = gl_elements(F, r)
    if len(elems) != expected:
        raise AssertionError(f"enumerated {len(elems)} elements, expected {expected}")
    codes = F.encode(elems)
    G = GroupModel(r, q, F, elems, codes, identity=-1, inverse=np.empty(0, dtype=np.int64))
    G.identity = G.scalar(1)
    G.inverse = G.index_of(F.inverse(elems))
    return G


@lru_cache(maxsize=None)
def cached_group(r: int, q: int) -> GroupModel:
    return build_group(r, q)


def commutator_indices(G: GroupModel) -> np.ndarray:
    """``comm[a, b]`` = index of ``A B A^-1 B^-1``."""
    T = G.table
    ab = T
    ainv_binv = T[G.inverse[:, None], G.inverse[None, :]]
    return T[ab, ainv_binv]


def _central_index(G: GroupModel, central) -> int:
    if isinstance(central, (int, np.integer)):
        return G.scalar(int(central))
    m = np.asarray(central, dtype=np.int64).reshape(1, G.r, G.r)
    off = m[0] - np.diag(np.diag(m[0]))
    if off.any() or len(set(np.diag(m[0]).tolist())) != 1:
        raise ValueError("central element must be a scalar matrix")
    return int(G.index_of(m)[0])


def brute_relation_count(G: GroupModel, g: int, central=1, method: str = "convolution") -> int:
    """Number of ``2g``-tuples in ``G`` with ``prod_i [A_i, B_i] = central``.

    ``method="literal"`` compares every tuple (``g <= 2``); ``"convolution"``
    convolves the commutator distribution ``g`` times over the group.
    """
    z = _central_index(G, central)
    if g == 0:
        return int(z == G.identity)
    if G.r == 1:
        return (G.q - 1) ** (2 * g) if z == G.identity else 0
    comm = commutator_indices(G).ravel()
    if method == "literal":
        if g > 2:
            raise BudgetExceeded("literal enumeration only for g <= 2")
        if g == 1:
            return int((comm == z).sum())
        # second commutator must equal c1^-1 z
        targets = G.table[G.inverse[comm], z]
        total = 0
        for start in range(0, len(targets), 512):
            total += int((comm[None, :] == targets[start:start + 512, None]).sum())
        return total
    if method != "convolution":
        raise ValueError(f"unknown method {method!r}")
    n1 = np.bincount(comm, minlength=G.order).astype(object)
    dist = n1.copy()
    T = G.table
    for _ in range(g - 1):
        new = np.zeros(G.order, dtype=object)
        nz = np.nonzero(dist)[0]
        for a in nz:
            new[T[a]] += dist[a] * n1
        dist = new
    return int(dist[z])


def class_count(G: GroupModel, method: str = "orbits") -> int:
    """Number of conjugacy classes of ``G``."""
    if G.r == 1:
        return G.order
    if method == "commuting":
        return brute_relation_count(G, 1, 1) // G.order
    if method != "orbits":
        raise ValueError(f"unknown method {method!r}")
    gens = _generators(G)
    n = G.order
    rows, cols = [], []
    all_idx = np.arange(n)
    for s in gens:
        s_inv = G.inverse[s]
        conj = G.multiply(G.multiply(np.full(n, s), all_idx), np.full(n, s_inv))
        rows.append(all_idx)
        cols.append(conj)
    graph = coo_matrix((np.ones(n * len(gens)), (np.concatenate(rows), np.concatenate(cols))), shape=(n, n))
    return int(connected_components(graph, directed=True, connection="weak")[0])


def _generators(G: GroupModel) -> list[int]:
    r, q = G.r, G.q
    mats = []
    for a in range(1, q):
        m = np.eye(r, dtype=np.int64)
        m[0, 0] = a
        mats.append(m)
        for i in range(r):
            for j in range(r):
                if i != j:
                    e = np.eye(r, dtype=np.int64)
                    e[i, j] = a
                    mats.append(e)
    return [int(x) for x in G.index_of(np.stack(mats))]


# -- rational canonical forms -------------------------------------------------


def irreducible_counts(q: int, max_degree: int) -> list[int]:
    """Monic irreducible polynomials over ``F_q`` per degree, by sieving products.

    Entry ``d`` counts degree-``d`` irreducibles; ``x`` is included in degree 1.
    """
    F = field(q)

    def mul(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] = int(F.add[out[i + j], F.mul[x, y]])
        return tuple(out)

    monic = {d: [] for d in range(1, max_degree + 1)}
    from itertools import product
    for d in range(1, max_degree + 1):
        for tail in product(range(q), repeat=d):
            monic[d].append(tuple(tail) + (1,))
    irreducible = {}
    for d in range(1, max_degree + 1):
        reducible = set()
        for k in range(1, d // 2 + 1):
            for a in monic[k]:
                for b in monic[d - k]:
                    reducible.add(mul(a, b))
        irreducible[d] = [p for p in monic[d] if p not in reducible]
    return [0] + [len(irreducible[d]) for d in range(1, max_degree + 1)]


def rcf_class_count(r: int, q: int) -> int:
    """Conjugacy classes of ``GL_r(F_q)`` from rational canonical forms.

    A class is a choice of partition for each monic irreducible ``f != x``
    with ``sum deg(f) |lambda_f| = r``.
    """
    counts = irreducible_counts(q, r)
    counts[1] -= 1  # exclude x
    partitions = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42][: r + 1]
    # coefficient of t^r in prod_d P(t^d)^{N_d}
    poly = [1] + [0] * r
    for d in range(1, r + 1):
        factor = [0] * (r + 1)
        for k in range(0, r // d + 1):
            factor[k * d] = partitions[k]
        for _ in range(counts[d]):
            poly = [sum(poly[i] * factor[n - i] for i in range(n + 1)) for n in range(r + 1)]
    return poly[r]


def fit_polynomial(samples: Sequence[tuple[int, int]], degree: int) -> Poly:
    """Interpolate through the first ``degree+1`` samples; the rest must agree."""
    if len(samples) < degree + 1:
        raise ValueError("not enough samples")
    poly = interpolate(samples[: degree + 1])
    for x, y in samples[degree + 1:]:
        if poly(x) != y:
            raise ArithmeticError(f"fit inconsistency at q={x}: {poly(x)} != {y}")
    return poly


def class_count_polynomial(r: int, qs: Sequence[int] = (2, 3, 4, 5), method: str = "brute") -> Poly:
    """Class-number polynomial of ``GL_r`` fitted from counts at several ``q``."""
    if method == "brute":
        samples = [(q, class_count(cached_group(r, q))) for q in qs]
    elif method == "rcf":
        samples = [(q, rcf_class_count(r, q)) for q in qs]
    else:
        raise ValueError(f"unknown method {method!r}")
    return fit_polynomial(samples, r)


# -- character sums -----------------------------------------------------------


@dataclass(frozen=True)
class CharacterFamily:
    name: str
    degree: Poly
    multiplicity: Poly
    sign_at_minus_one: int  # central character at -Id


@dataclass(frozen=True)
class CharacterDegreeData:
    r: int
    families: tuple[CharacterFamily, ...]

    def central_sum(self, central: str, power: int) -> Poly:
        """``sum_chi lambda_chi(z) * chi(1)^power`` for ``z`` in {"id", "minus_id"}; ``power >= 0``."""
        total = Poly()
        for fam in self.families:
            lam = 1 if central == "id" else fam.sign_at_minus_one
            total = total + fam.multiplicity * (fam.degree ** power) * lam
        return total

    def check(self) -> None:
        order = gl_order(self.r)
        if self.central_sum("id", 2) != order:
            raise ArithmeticError("sum of squared degrees is not |G|")
        # regular character vanishes at -Id != Id
        if self.r == 2 and self.central_sum("minus_id", 2) != Poly():
            raise ArithmeticError("column orthogonality at -Id fails")


def gl1_character_data() -> CharacterDegreeData:
    q = Poly.q()
    return CharacterDegreeData(1, (CharacterFamily("linear", Poly([1]), q - 1, 1),))


def gl2_character_data() -> CharacterDegreeData:
    """Degrees and multiplicities of the irreducible characters of ``GL_2(F_q)``.

    Principal-series and cuspidal families are split by the value of the
    central character at ``-Id``; the split multiplicities assume ``q`` odd,
    their sums are valid for every ``q``.
    """
    q = Poly.q()
    one = Poly([1])
    return CharacterDegreeData(2, (
        CharacterFamily("det twists", one, q - 1, 1),
        CharacterFamily("steinberg twists", q, q - 1, 1),
        CharacterFamily("principal series, even", q + 1, (q - 1) * (q - 3) * Fraction(1, 4), 1),
        CharacterFamily("principal series, odd", q + 1, (q - 1) * (q - 1) * Fraction(1, 4), -1),
        CharacterFamily("cuspidal, even", q - 1, (q - 1) * (q - 1) * Fraction(1, 4), 1),
        CharacterFamily("cuspidal, odd", q - 1, (q * q - 1) * Fraction(1, 4), -1),
    ))


def character_data(r: int) -> CharacterDegreeData:
    if r == 1:
        return gl1_character_data()
    if r == 2:
        return gl2_character_data()
    raise NotImplementedError("symbolic character data only for r <= 2")


def _central_kind(r: int, d: int) -> str:
    k = d % r
    if k == 0:
        return "id"
    if r == 2:
        return "minus_id"
    raise NotImplementedError(f"twist zeta_{r}^{d} not supported symbolically")


def frobenius_count(r: int, g: int, d: int, data: CharacterDegreeData | None = None) -> RationalFunctionQ:
    """``|G|^(2g-1) sum_chi lambda_chi(z) chi(1)^(2-2g)`` as a polynomial in ``q``."""
    data = character_data(r) if data is None else data
    central = _central_kind(r, d)
    order = gl_order(r)
    total = RationalFunctionQ(Poly())
    for fam in data.families:
        lam = 1 if central == "id" else fam.sign_at_minus_one
        term = RationalFunctionQ(fam.multiplicity * lam)
        if g == 0:
            term = term * RationalFunctionQ(fam.degree ** 2, order)
        else:
            term = term * RationalFunctionQ(order ** (2 * g - 1), fam.degree ** (2 * g - 2))
        total = total + term
    if not total.is_polynomial() or not total.num.is_integral():
        raise ArithmeticError(f"character sum did not reduce to an integer polynomial: {total}")
    return total


def central_for(G: GroupModel, d: int) -> int:
    """Field scalar ``zeta_r^d`` used as the twist in ``G``."""
    if d % G.r == 0:
        return 1
    zeta = G.F.root_of_unity(G.r)
    out = 1
    for _ in range(d % G.r):
        out = int(G.F.mul[out, zeta])
    return out


def stack_count(g: int, r: int, d: int = 0, source: str = "frobenius") -> RationalFunctionQ:
    """``|R_{g,r,d}(F_q)| / |GL_r(F_q)|`` as a rational function of ``q``."""
    order = gl_order(r)
    if g == 0:
        return RationalFunctionQ(1 if d % r == 0 else 0, order)
    if source == "frobenius":
        return frobenius_count(r, g, d) / RationalFunctionQ(order)
    if source in ("classes", "rcf") and g == 1 and d % r == 0:
        method = "brute" if source == "classes" else "rcf"
        qs = (2, 3, 4, 5) if method == "brute" else (2, 3, 4, 5, 7)
        return RationalFunctionQ(class_count_polynomial(r, qs, method))
    raise NotImplementedError(f"no counting route {source!r} for g={g}, r={r}, d={d}")


def stack_count_series(g: int, r: int, d: int, vdim, policy: TruncationPolicy,
                       source: str = "frobenius") -> GradedSeries:
    """Virtual BM series of the representation stack, placed in ``t^r``."""
    return bm_vir_from_count(stack_count(g, r, d, source), vdim, policy, rank=r)


def twisted_count(g: int, r: int, d: int) -> Poly:
    """Point count of the smooth twisted character variety ``M_{g,r,d}``."""
    if math.gcd(r, d) != 1:
        raise ValueError(f"gcd({r}, {d}) != 1")
    if g == 0:
        return Poly([1]) if r == 1 else Poly()
    if g == 1 and r > 2:
        # the genus-1 twisted variety is a 2-torus for every rank
        return Poly([-1, 1]) ** 2
    relation = frobenius_count(r, g, d)
    # PGL_r acts freely: divide by |GL_r|/(q-1)
    out = relation * RationalFunctionQ(Poly([-1, 1]), gl_order(r))
    if not out.is_polynomial():
        raise ArithmeticError(f"twisted count is not polynomial: {out}")
    return out.as_poly()


def laurent_series(poly: Poly, shift2: int, n: int, policy: TruncationPolicy) -> GradedSeries:
    """``poly(q) * q^(shift2/2)`` placed in ``t^n``; truncated above, error below."""
    lo, hi = policy.band(n)
    out = {}
    for i, c in enumerate(poly.c):
        if not c:
            continue
        if c.denominator != 1:
            raise ArithmeticError(f"non-integral coefficient {c}")
        e2 = shift2 + 2 * i
        if e2 < lo:
            raise WindowError(f"q^{Fraction(e2, 2)} below the window floor at rank {n}")
        if e2 <= hi and n <= policy.t_max:
            out[(n, e2)] = int(c)
    return GradedSeries(policy, out)


def smooth_twisted_series(g: int, r: int, d: int, policy: TruncationPolicy) -> GradedSeries:
    """``E(M_{g,r,d}; q) * q^(-r^2(g-1)-1)`` in ``t^r``."""
    P = twisted_count(g, r, d)
    return laurent_series(P, -2 * (r * r * (g - 1) + 1), r, policy)
