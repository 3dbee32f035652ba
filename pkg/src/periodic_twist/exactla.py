"""Dense exact linear algebra over prime fields GF(p).

Matrices are plain ``numpy`` integer arrays with entries in ``[0, p)``.
Elimination always picks the leftmost available pivot column and the
topmost candidate row, so every basis derived here is reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DTYPE = np.int64


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


@dataclass(frozen=True)
class PrimeField:
    """The ground field GF(p)."""

    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"field characteristic must be prime, got {self.p}")

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return pow(a, -1, self.p)

    def array(self, data) -> np.ndarray:
        return np.asarray(data, dtype=DTYPE) % self.p

    def zeros(self, *shape) -> np.ndarray:
        return np.zeros(shape, dtype=DTYPE)

    def eye(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=DTYPE)


def _as_matrix(m, p: int) -> np.ndarray:
    a = np.array(m, dtype=DTYPE, copy=True)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    if a.ndim != 2:
        raise ValueError("expected a 2-dimensional matrix")
    return a % p


def _eliminate(a: np.ndarray, p: int, ncols: int | None = None):
    """In-place reduced row echelon form of ``a``; returns pivot columns.

    Only the first ``ncols`` columns are eligible as pivots.
    """
    rows, cols = a.shape
    if ncols is None:
        ncols = cols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            a[[r, k]] = a[[k, r]]
        piv = int(a[r, c])
        if piv != 1:
            a[r] = (a[r] * pow(piv, -1, p)) % p
        others = np.flatnonzero(a[:, c])
        others = others[others != r]
        if others.size:
            a[others] = (a[others] - np.outer(a[others, c], a[r])) % p
        pivots.append(c)
        r += 1
    return pivots


def rref(m, p: int):
    """Reduced row echelon form.

    Returns ``(rank, pivots, reduced)`` where ``reduced`` has the same shape
    as ``m`` (zero rows at the bottom).
    """
    a = _as_matrix(m, p)
    pivots = _eliminate(a, p)
    return len(pivots), tuple(pivots), a


def rank(m, p: int) -> int:
    a = np.asarray(m)
    if a.size == 0:
        return 0
    return rref(a, p)[0]


def row_basis(m, p: int) -> np.ndarray:
    """RREF basis (as rows) of the row space of ``m``."""
    a = np.asarray(m)
    if a.ndim == 2 and a.shape[0] == 0:
        return np.zeros((0, a.shape[1]), dtype=DTYPE)
    r, _, red = rref(a, p)
    return red[:r].copy()


def nullspace(m, p: int) -> np.ndarray:
    """Basis of ``{v : m @ v = 0}``, returned as the rows of a matrix.

    One basis vector per free column, with a 1 in that column, in
    increasing free-column order.
    """
    a = np.asarray(m)
    if a.ndim == 2 and a.shape[0] == 0:
        return np.eye(a.shape[1], dtype=DTYPE)
    r, pivots, red = rref(a, p)
    cols = red.shape[1]
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=DTYPE)
    piv = np.array(pivots, dtype=np.intp)
    for k, f in enumerate(free):
        basis[k, f] = 1
        if r:
            basis[k, piv] = (-red[:r, f]) % p
    return basis


def solve(m, b, p: int):
    """One solution ``x`` of ``m @ x = b``, or ``None`` if inconsistent.

    ``b`` may be a vector or a matrix of right-hand sides (one per column);
    for a matrix, ``None`` is returned unless every column is solvable.
    Free variables are set to zero.
    """
    a = np.asarray(m, dtype=DTYPE) % p
    bb = np.asarray(b, dtype=DTYPE) % p
    vector = bb.ndim == 1
    if vector:
        bb = bb.reshape(-1, 1)
    if a.ndim != 2 or bb.shape[0] != a.shape[0]:
        raise ValueError(
            f"dimension mismatch: matrix {a.shape}, right-hand side {np.shape(b)}"
        )
    rows, cols = a.shape
    aug = np.concatenate([a, bb], axis=1)
    pivots = _eliminate(aug, p, ncols=cols)
    r = len(pivots)
    if np.any(aug[r:, cols:]):
        return None
    x = np.zeros((cols, bb.shape[1]), dtype=DTYPE)
    if r:
        x[list(pivots)] = aug[:r, cols:]
    return x[:, 0] if vector else x


def inverse(m, p: int) -> np.ndarray:
    a = np.asarray(m, dtype=DTYPE) % p
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    x = solve(a, np.eye(n, dtype=DTYPE), p)
    if x is None or rank(a, p) < n:
        raise ZeroDivisionError("matrix is singular")
    return x


def is_invertible(m, p: int) -> bool:
    a = np.asarray(m)
    return a.shape[0] == a.shape[1] and rank(a, p) == a.shape[0]


def matmul(a, b, p: int) -> np.ndarray:
    return (np.asarray(a, dtype=DTYPE) @ np.asarray(b, dtype=DTYPE)) % p


def batched_invertible(mats: np.ndarray, p: int) -> np.ndarray:
    """Invertibility mask for a stack of square matrices, shape ``(B, n, n)``."""
    a = np.array(mats, dtype=DTYPE, copy=True) % p
    bsz, n, _ = a.shape
    ok = np.ones(bsz, dtype=bool)
    inv_table = np.array([0] + [pow(x, -1, p) for x in range(1, p)], dtype=DTYPE)
    ar = np.arange(bsz)
    for c in range(n):
        sub = a[:, c:, c]
        has = sub != 0
        found = has.any(axis=1)
        ok &= found
        k = c + np.argmax(has, axis=1)
        rows_k = a[ar, k].copy()
        a[ar, k] = a[:, c]
        a[:, c] = rows_k
        piv = a[:, c, c]
        a[:, c] = (a[:, c] * inv_table[piv][:, None]) % p
        factors = a[:, c + 1 :, c].copy()
        a[:, c + 1 :] = (a[:, c + 1 :] - factors[:, :, None] * a[:, c][:, None, :]) % p
    return ok


class Subspace:
    """A subspace of GF(p)^n held as an RREF row basis.

    Because the basis is fully reduced, the coordinates of a member vector
    are its entries at the pivot columns, and ``v - v[pivots] @ basis`` is
    the canonical representative of ``v`` modulo the subspace.
    """

    def __init__(self, n: int, p: int, rows=None):
        self.n = n
        self.p = p
        self.basis = np.zeros((0, n), dtype=DTYPE)
        self.pivots: list[int] = []
        if rows is not None:
            rows = np.asarray(rows, dtype=DTYPE)
            if rows.size:
                self.basis = row_basis(rows.reshape(-1, n), p)
                self.pivots = [int(np.flatnonzero(r)[0]) for r in self.basis]

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def reduce(self, v) -> np.ndarray:
        v = np.asarray(v, dtype=DTYPE) % self.p
        if not self.pivots:
            return v.copy()
        if v.ndim == 1:
            return (v - v[self.pivots] @ self.basis) % self.p
        return (v - v[:, self.pivots] @ self.basis) % self.p

    def contains(self, v) -> bool:
        return not np.any(self.reduce(v))

    def coordinates(self, v) -> np.ndarray:
        """Coordinates of member vector(s) ``v`` in ``self.basis``."""
        v = np.asarray(v, dtype=DTYPE) % self.p
        if not self.contains_all(v):
            raise ValueError("vector is not in the subspace")
        return v[..., self.pivots] % self.p

    def contains_all(self, vs) -> bool:
        return not np.any(self.reduce(vs))

    def add(self, v) -> bool:
        """Add ``v``; returns True when the dimension grew."""
        w = self.reduce(v)
        nz = np.flatnonzero(w)
        if nz.size == 0:
            return False
        c = int(nz[0])
        w = (w * pow(int(w[c]), -1, self.p)) % self.p
        if self.pivots:
            col = self.basis[:, c].copy()
            self.basis = (self.basis - np.outer(col, w)) % self.p
        pos = int(np.searchsorted(self.pivots, c))
        self.basis = np.insert(self.basis, pos, w, axis=0)
        self.pivots.insert(pos, c)
        return True

    def complement_indices(self) -> list[int]:
        """Standard basis indices spanning a complement (the non-pivots)."""
        piv = set(self.pivots)
        return [c for c in range(self.n) if c not in piv]

    def quotient_coordinates(self, v) -> np.ndarray:
        """Coordinates of ``v`` in ``GF(p)^n / self`` w.r.t. the non-pivot basis."""
        return self.reduce(v)[..., self.complement_indices()]

    def intersect(self, other: "Subspace") -> "Subspace":
        if self.dim == 0 or other.dim == 0:
            return Subspace(self.n, self.p)
        stacked = np.concatenate([self.basis, other.basis], axis=0)
        ker = nullspace(stacked.T, self.p)
        vecs = (ker[:, : self.dim] @ self.basis) % self.p
        return Subspace(self.n, self.p, vecs)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace(self.n, self.p, np.concatenate([self.basis, other.basis]))
