"""Small finite fields as lookup tables, with batched matrix routines.

Elements of ``F_q`` (``q = p^k``) are the integers ``0..q-1``; the base-``p``
digits of an element are its coefficients in ``F_p[x]/(m(x))`` for a fixed
irreducible ``m``.  All batched routines take integer arrays of field elements
and operate on the last two axes.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

import numpy as np


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, k)`` with ``q == p**k``; raise if ``q`` is not a prime power."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, m = 0, q
    while m % p == 0:
        m //= p
        k += 1
    if m != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, k


def _polymulmod(a, b, p, modulus):
    k = len(modulus) - 1
    out = [0] * (2 * k - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    # modulus is monic of degree k
    for i in range(len(out) - 1, k - 1, -1):
        c = out[i]
        if c:
            for j in range(k + 1):
                out[i - k + j] = (out[i - k + j] - c * modulus[j]) % p
    return out[:k]


def _find_irreducible(p: int, k: int) -> list[int]:
    # monic degree-k polynomial without factors of degree <= k/2, found by trial
    def has_root_or_factor(poly):
        for deg in range(1, k // 2 + 1):
            for tail in product(range(p), repeat=deg):
                div = list(tail) + [1]
                rem = list(poly)
                for i in range(len(rem) - 1, deg - 1, -1):
                    c = rem[i]
                    if c:
                        for j in range(deg + 1):
                            rem[i - deg + j] = (rem[i - deg + j] - c * div[j]) % p
                if not any(rem[:deg]):
                    return True
        return False

    for tail in product(range(p), repeat=k):
        poly = list(tail) + [1]
        if tail[0] and not has_root_or_factor(poly):
            return poly
    raise RuntimeError(f"no irreducible polynomial of degree {k} over F_{p}")


class FiniteField:
    def __init__(self, q: int):
        p, k = prime_power(q)
        self.q, self.p, self.k = q, p, k
        digits = [[(x // p**i) % p for i in range(k)] for x in range(q)]

        def encode(ds):
            return sum(d * p**i for i, d in enumerate(ds))

        self.add = np.array([[encode([(a + b) % p for a, b in zip(digits[x], digits[y])])
                              for y in range(q)] for x in range(q)], dtype=np.int64)
        if k == 1:
            self.mul = np.array([[(x * y) % p for y in range(q)] for x in range(q)], dtype=np.int64)
        else:
            modulus = _find_irreducible(p, k)
            self.mul = np.array([[encode(_polymulmod(digits[x], digits[y], p, modulus))
                                  for y in range(q)] for x in range(q)], dtype=np.int64)
        self.neg = np.array([int(np.nonzero(self.add[x] == 0)[0][0]) for x in range(q)], dtype=np.int64)
        self.inv = np.zeros(q, dtype=np.int64)
        for x in range(1, q):
            self.inv[x] = int(np.nonzero(self.mul[x] == 1)[0][0])
        self.sub = self.add[:, self.neg]  # sub[x, y] = x - y

    def __repr__(self):
        return f"FiniteField({self.q})"

    # -- scalar helpers ----------------------------------------------------
    def minus_one(self) -> int:
        return int(self.neg[1])

    def element_order(self, x: int) -> int:
        if x == 0:
            raise ValueError("0 has no multiplicative order")
        n, y = 1, x
        while y != 1:
            y = int(self.mul[y, x])
            n += 1
        return n

    def root_of_unity(self, r: int) -> int:
        """A primitive ``r``-th root of unity; needs ``r | q-1``."""
        if (self.q - 1) % r:
            raise ValueError(f"F_{self.q} has no primitive {r}-th root of unity")
        for x in range(1, self.q):
            if self.element_order(x) == r:
                return x
        raise AssertionError("unreachable")

    # -- batched matrices ----------------------------------------------------
    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a, b = np.broadcast_arrays(a[..., :, :, None], b[..., None, :, :])
        prods = self.mul[a, b]  # (..., n, k, m)
        out = prods[..., 0, :]
        for j in range(1, prods.shape[-2]):
            out = self.add[out, prods[..., j, :]]
        return out

    def row_reduce(self, mats: np.ndarray, ncols: int | None = None):
        """Batched reduced row echelon form.

        Pivots are searched only in the first ``ncols`` columns (all by
        default), which lets ``[A | I]`` be reduced to ``[I | A^-1]``.
        Returns ``(rref, rank)``.
        """
        m = np.array(mats, dtype=np.int64, copy=True)
        B, nrows, total = m.shape
        ncols = total if ncols is None else ncols
        rank = np.zeros(B, dtype=np.int64)
        ar = np.arange(B)
        for col in range(ncols):
            rows = np.arange(nrows)
            cand = (m[:, :, col] != 0) & (rows[None, :] >= rank[:, None])
            has = cand.any(axis=1)
            if not has.any():
                continue
            piv = np.where(has, np.argmax(cand, axis=1), 0)
            idx = ar[has]
            r_t, r_p = rank[has], piv[has]
            # swap pivot row into position rank
            top = m[idx, r_t].copy()
            m[idx, r_t] = m[idx, r_p]
            m[idx, r_p] = top
            # normalise
            scale = self.inv[m[idx, r_t, col]]
            m[idx, r_t] = self.mul[scale[:, None], m[idx, r_t]]
            # eliminate every other row
            prow = m[idx, r_t]  # (h, total)
            factors = m[idx, :, col]  # (h, nrows)
            sub = self.mul[factors[:, :, None], prow[:, None, :]]
            new = self.sub[m[idx], sub]
            keep = rows[None, :] == r_t[:, None]
            new[keep] = m[idx][keep]
            m[idx] = new
            rank[has] += 1
        return m, rank

    def rank(self, mats: np.ndarray) -> np.ndarray:
        return self.row_reduce(mats)[1]

    def inverse(self, mats: np.ndarray) -> np.ndarray:
        B, n, _ = mats.shape
        eye = np.broadcast_to(np.eye(n, dtype=np.int64), (B, n, n))
        red, rank = self.row_reduce(np.concatenate([mats, eye], axis=2), ncols=n)
        if (rank < n).any():
            raise ValueError("singular matrix in batch")
        return red[:, :, n:]

    def all_matrices(self, n: int, m: int | None = None) -> np.ndarray:
        m = n if m is None else m
        size = n * m
        codes = np.arange(self.q ** size, dtype=np.int64)
        digits = np.stack([(codes // self.q ** i) % self.q for i in range(size)], axis=1)
        return digits.reshape(-1, n, m)

    def encode(self, mats: np.ndarray) -> np.ndarray:
        """Integer code of each matrix (base-q digits, row-major)."""
        flat = mats.reshape(mats.shape[0], -1)
        weights = self.q ** np.arange(flat.shape[1], dtype=np.int64)
        return flat @ weights


@lru_cache(maxsize=None)
def field(q: int) -> FiniteField:
    return FiniteField(q)


def gl_elements(F: FiniteField, r: int, chunk: int = 1 << 16) -> np.ndarray:
    """All invertible ``r x r`` matrices over ``F``, in code order."""
    parts = []
    total = F.q ** (r * r)
    for start in range(0, total, chunk):
        codes = np.arange(start, min(total, start + chunk), dtype=np.int64)
        digits = np.stack([(codes // F.q ** i) % F.q for i in range(r * r)], axis=1).reshape(-1, r, r)
        parts.append(digits[F.rank(digits) == r])
    return np.concatenate(parts, axis=0)
