"""Quivers, Euler forms, Serre exponents and Kac polynomials by counting."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from pathlib import Path
from typing import Iterable, Mapping, Sequence, Union

import numpy as np

from .finite_field import field, gl_elements, prime_power
from .functors import VirtualDimension
from .plethysm import mobius
from .polynomials import Poly, interpolate


class QuiverParseError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple

    def __init__(self, vertices: Union[int, Iterable], arrows: Iterable[tuple] = ()):
        verts = tuple(range(vertices)) if isinstance(vertices, int) else tuple(vertices)
        arr = tuple((s, t) for s, t in arrows)
        for s, t in arr:
            if s not in verts or t not in verts:
                raise ValueError(f"arrow ({s}, {t}) has an endpoint outside {verts}")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "arrows", arr)

    def index(self, v) -> int:
        return self.vertices.index(v)

    @classmethod
    def loops(cls, g: int) -> "Quiver":
        return cls(1, [(0, 0)] * g)

    @classmethod
    def jordan(cls) -> "Quiver":
        return cls.loops(1)

    @classmethod
    def a2(cls) -> "Quiver":
        return cls(2, [(0, 1)])

    @classmethod
    def parse(cls, text: str) -> "Quiver":
        n = None
        arrows = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, _, rest = line.partition(":")
            key, fields = key.strip(), rest.split()
            if key == "vertices":
                if n is not None:
                    raise QuiverParseError(f"line {lineno}: vertices declared twice")
                if len(fields) != 1 or not fields[0].isdigit():
                    raise QuiverParseError(f"line {lineno}: expected 'vertices: <n>'")
                n = int(fields[0])
            elif key == "arrow":
                if n is None:
                    raise QuiverParseError(f"line {lineno}: arrow before 'vertices:' line")
                try:
                    s, t = (int(x) for x in fields)
                except ValueError:
                    raise QuiverParseError(f"line {lineno}: expected 'arrow: <i> <j>'") from None
                if not (0 <= s < n and 0 <= t < n):
                    raise QuiverParseError(f"line {lineno}: vertex out of range 0..{n - 1}")
                arrows.append((s, t))
            else:
                raise QuiverParseError(f"line {lineno}: unknown directive {key!r}")
        if n is None:
            raise QuiverParseError("missing 'vertices:' line")
        return cls(n, arrows)

    @classmethod
    def load(cls, path) -> "Quiver":
        return cls.parse(Path(path).read_text())

    def dumps(self) -> str:
        if self.vertices != tuple(range(len(self.vertices))):
            raise ValueError("only quivers on 0..n-1 have a text form")
        lines = [f"vertices: {len(self.vertices)}"]
        lines += [f"arrow: {s} {t}" for s, t in self.arrows]
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class DimVector:
    entries: tuple[int, ...]

    def __init__(self, entries: Union[Sequence[int], Mapping, int]):
        if isinstance(entries, int):
            entries = (entries,)
        object.__setattr__(self, "entries", tuple(int(x) for x in entries))
        if any(x < 0 for x in self.entries):
            raise ValueError("dimension vectors are non-negative")

    @classmethod
    def of(cls, Q: Quiver, d) -> "DimVector":
        if isinstance(d, DimVector):
            v = d
        elif isinstance(d, Mapping):
            v = cls([d.get(x, 0) for x in Q.vertices])
        else:
            v = cls(d)
        if len(v.entries) != len(Q.vertices):
            raise ValueError(f"dimension vector {v.entries} does not match {len(Q.vertices)} vertices")
        return v

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def total(self) -> int:
        return sum(self.entries)

    def __add__(self, other):
        return DimVector(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        return DimVector(a - b for a, b in zip(self, other))


def euler_form(Q: Quiver, d, e) -> int:
    d, e = DimVector.of(Q, d), DimVector.of(Q, e)
    val = sum(a * b for a, b in zip(d, e))
    for s, t in Q.arrows:
        val -= d[Q.index(s)] * e[Q.index(t)]
    return val


def sym_euler(Q: Quiver, d, e) -> int:
    return euler_form(Q, d, e) + euler_form(Q, e, d)


def serre_exponent(Q: Quiver, d1, d2) -> int:
    val = sym_euler(Q, d1, d2)
    if val > 0:
        raise ValueError(f"symmetrized Euler form is {val} > 0; no Serre relation")
    return 1 - val


def triple_quiver(Q: Quiver) -> Quiver:
    arrows = list(Q.arrows) + [(t, s) for s, t in Q.arrows] + [(v, v) for v in Q.vertices]
    return Quiver(Q.vertices, arrows)


def preproj_vdim(Q: Quiver, d) -> VirtualDimension:
    return VirtualDimension(-2 * euler_form(Q, d, d))


# -- counting ----------------------------------------------------------------


def _kron(F, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Batched Kronecker product over ``F`` (batch axes broadcast)."""
    n, m = a.shape[-2:]
    p, r = b.shape[-2:]
    prod_ = F.mul[a[..., :, None, :, None], b[..., None, :, None, :]]
    return prod_.reshape(prod_.shape[:-4] + (n * p, m * r))


def _centraliser_dims(F, gs: np.ndarray, gt: np.ndarray, pairwise: bool) -> np.ndarray:
    """Dimension of ``{X : gt X = X gs}`` for each element (or each pair)."""
    ds, dt = gs.shape[-1], gt.shape[-1]
    if pairwise:
        gs_, gt_ = gs[:, None], gt[None, :]
    else:
        gs_, gt_ = gs, gt
    left = _kron(F, np.eye(ds, dtype=np.int64), gt_)
    right = _kron(F, np.swapaxes(gs_, -1, -2), np.eye(dt, dtype=np.int64))
    left, right = np.broadcast_arrays(left, right)
    L = F.sub[left, right]
    shape = L.shape[:-2]
    flat = L.reshape((-1,) + L.shape[-2:])
    ranks = np.concatenate([F.rank(flat[i:i + 20000]) for i in range(0, len(flat), 20000)])
    return (ds * dt - ranks).reshape(shape)


DEFAULT_BUDGET = 200_000


def count_rep_classes(Q: Quiver, d, q: int, budget: int = DEFAULT_BUDGET) -> int:
    """Isomorphism classes of ``d``-dimensional ``F_q``-representations (Burnside)."""
    d = DimVector.of(Q, d)
    prime_power(q)
    F = field(q)
    order = 1
    for n in d:
        for i in range(n):
            order *= q ** n - q ** i
    if order > budget:
        raise BudgetExceeded(f"|GL_d(F_{q})| = {order} exceeds budget {budget}")
    groups = [gl_elements(F, n) if n else np.zeros((1, 0, 0), dtype=np.int64) for n in d]
    nv = len(groups)
    exps = np.zeros(tuple(len(g) for g in groups), dtype=np.int64)
    for s, t in Q.arrows:
        i, j = Q.index(s), Q.index(t)
        if d[i] == 0 or d[j] == 0:
            continue
        shape = [1] * nv
        if i == j:
            k = _centraliser_dims(F, groups[i], groups[i], pairwise=False)
            shape[i] = len(groups[i])
        else:
            k = _centraliser_dims(F, groups[i], groups[j], pairwise=True)
            if i > j:
                k = k.T
            shape[i], shape[j] = len(groups[i]), len(groups[j])
        exps = exps + k.reshape(shape)
    values, counts = np.unique(exps, return_counts=True)
    total = sum(int(c) * q ** int(v) for v, c in zip(values, counts))
    if total % order:
        raise AssertionError(f"Burnside sum {total} not divisible by group order {order}")
    return total // order


def _subvectors(d: DimVector) -> list[tuple[int, ...]]:
    vs = [v for v in product(*(range(n + 1) for n in d)) if any(v)]
    return sorted(vs, key=lambda v: (sum(v), v))


def indecomposable_counts(Q: Quiver, d, q: int, budget: int = DEFAULT_BUDGET) -> dict:
    """Indecomposable class counts ``I_e(q)`` for all ``0 < e <= d``.

    Krull-Schmidt gives ``sum_e M_e X^e = prod_e (1 - X^e)^(-I_e)``; this is
    inverted through the logarithm and a Mobius sum over multiples.
    """
    d = DimVector.of(Q, d)
    subs = _subvectors(d)
    M = {e: Fraction(_cached_count(Q, e, q, budget)) for e in subs}
    L: dict[tuple, Fraction] = {}
    for e in subs:
        # |e| L_e = |e| M_e - sum_{0<f<e} |f| L_f M_{e-f}
        n = sum(e)
        acc = n * M[e]
        for f in subs:
            if f == e or sum(f) >= n or any(a > b for a, b in zip(f, e)):
                continue
            diff = tuple(b - a for a, b in zip(f, e))
            acc -= sum(f) * L[f] * M[diff]
        L[e] = acc / n
    out = {}
    for e in subs:
        g = math.gcd(*e)
        val = Fraction(0)
        for k in range(1, g + 1):
            if g % k == 0 and mobius(k):
                val += Fraction(mobius(k), k) * L[tuple(x // k for x in e)]
        if val.denominator != 1:
            raise AssertionError(f"non-integral indecomposable count {val} at {e}")
        out[e] = int(val)
    return out


@lru_cache(maxsize=None)
def _cached_count(Q: Quiver, e: tuple, q: int, budget: int) -> int:
    return count_rep_classes(Q, e, q, budget)


SAMPLE_FIELDS = (2, 3, 4, 5, 7, 8, 9, 11, 13)


def kac_polynomial(Q: Quiver, d, q_samples: Sequence[int] | None = None,
                   budget: int = DEFAULT_BUDGET) -> Poly:
    """Kac polynomial ``a_{Q,d}(q)``: absolutely indecomposables counted over
    finite fields, then interpolated.

    Galois descent relates indecomposables over ``F_q`` to absolutely
    indecomposables over extensions:
    ``I_e(q) = sum_{s | e} (1/s) sum_{r | s} mu(s/r) A_{e/s}(q^r)``.
    The ``A`` for smaller vectors are interpolated first and evaluated at
    ``q^r``, so only counts over the sample fields themselves are needed.
    Every sample beyond the degree bound is a consistency check.
    """
    d = DimVector.of(Q, d)
    subs = _subvectors(d)
    polys: dict[tuple, Poly] = {}
    for e in subs:
        deg = max(0, 1 - euler_form(Q, e, e))
        samples = list(q_samples) if q_samples is not None else list(SAMPLE_FIELDS[:deg + 2])
        if len(samples) < deg + 2:
            raise ValueError(f"need at least {deg + 2} sample fields for dimension {e}, got {samples}")
        g = math.gcd(*e)
        points = []
        for q in samples:
            I = indecomposable_counts(Q, e, q, budget)[e]
            val = Fraction(I)
            for s in range(2, g + 1):
                if g % s:
                    continue
                sub = tuple(x // s for x in e)
                inner = sum((mobius(s // r) * polys[sub](q ** r) for r in range(1, s + 1) if s % r == 0),
                            Fraction(0))
                val -= inner / s
            points.append((q, val))
        poly = interpolate(points[:deg + 1])
        for q, v in points[deg + 1:]:
            if poly(q) != v:
                raise ArithmeticError(
                    f"not polynomial at tested degree {deg} for dimension {e}: "
                    f"fit gives {poly(q)} at q={q}, count gives {v}"
                )
        if not poly.is_integral() or any(c < 0 for c in poly.c):
            raise ArithmeticError(f"Kac polynomial {poly} for {e} is not a non-negative integer polynomial")
        polys[e] = poly
    return polys[tuple(d)]
