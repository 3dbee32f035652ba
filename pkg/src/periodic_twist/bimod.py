"""Bimodules, balanced tensor products, generator-defined maps and exact sequences.

A bimodule is one space with two commuting actions, each stored as a full
matrix per arrow.  The right action uses the right-module convention of
``rep``: ``v . a = R[a] @ v``.

Balanced tensor products ``X (x)_B Y`` are computed inside the direct sum of
``X f_a (x) f_a Y`` over the vertex idempotents ``f_a`` of ``B``, modulo the
span of ``x b (x) y - x (x) b y`` for the arrows ``b`` of ``B``.  The
quotient basis consists of the pure tensors of basis vectors that are not
pivots of that span, so the tensor product keeps a tagged basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Sequence

import numpy as np

from . import exactla as la
from .exactla import DTYPE, Subspace
from .qalg import Automorphism, Embedding, QuiverAlgebra, identity_automorphism, identity_embedding
from .rep import LEFT, RIGHT, Representation, intertwiner_space, restrict, twist


class Bimodule:
    """An ``E``-``E``-bimodule.

    Args:
        algebra: the algebra acting on both sides.
        ltags: left vertex index of each basis vector (``e_v x = x``).
        rtags: right vertex index of each basis vector (``x e_v = x``).
        left: arrow -> matrix of the left action.
        right: arrow -> matrix of the right action.
    """

    def __init__(self, algebra: QuiverAlgebra, ltags, rtags, left: Mapping, right: Mapping, name: str = "", check: bool = True):
        self.algebra = algebra
        self.name = name
        self.left_module = Representation(algebra, LEFT, ltags, left, name=f"{name} (left)", check=check)
        self.right_module = Representation(algebra, RIGHT, rtags, right, name=f"{name} (right)", check=check)
        self.dim = self.left_module.dim
        if self.right_module.dim != self.dim:
            raise ValueError("left and right tag arrays differ in length")
        if check:
            self.validate()

    @property
    def p(self) -> int:
        return self.algebra.p

    @property
    def ltags(self) -> np.ndarray:
        return self.left_module.tags

    @property
    def rtags(self) -> np.ndarray:
        return self.right_module.tags

    @property
    def left(self) -> dict:
        return self.left_module.mats

    @property
    def right(self) -> dict:
        return self.right_module.mats

    def validate(self) -> None:
        p = self.p
        for a, L in self.left.items():
            if np.any(L[~np.equal.outer(self.rtags, self.rtags)]):
                raise ValueError(f"left action of {a} does not preserve right components")
        for b, R in self.right.items():
            if np.any(R[~np.equal.outer(self.ltags, self.ltags)]):
                raise ValueError(f"right action of {b} does not preserve left components")
        for a, L in self.left.items():
            for b, R in self.right.items():
                if not np.array_equal(L @ R % p, R @ L % p):
                    raise ValueError(f"left {a} and right {b} actions do not commute")

    def lact(self, x) -> np.ndarray:
        return self.left_module.act(x)

    def ract(self, x) -> np.ndarray:
        return self.right_module.act(x)

    def component_dims(self) -> np.ndarray:
        """``dims[j, i] = dim e_j X e_i``."""
        nv = len(self.algebra.vertices)
        out = np.zeros((nv, nv), dtype=np.int64)
        np.add.at(out, (self.ltags, self.rtags), 1)
        return out

    def label(self) -> str:
        return self.name or f"<bimodule of dim {self.dim}>"

    def element(self, expr) -> np.ndarray:
        """Element from an algebra expression; only for twisted regular bimodules."""
        raise TypeError(f"{self.label()} does not accept algebra expressions")

    def __repr__(self) -> str:
        return f"Bimodule({self.label()}, dim={self.dim})"


class RegularBimodule(Bimodule):
    """``E`` with left action through ``sigma_left`` and right action through ``sigma_right``."""

    def __init__(self, algebra: QuiverAlgebra, sigma_left: Automorphism | None = None, sigma_right: Automorphism | None = None, name: str = ""):
        sl = sigma_left or identity_automorphism(algebra)
        sr = sigma_right or identity_automorphism(algebra)
        for s in (sl, sr):
            if s.algebra is not algebra:
                raise ValueError("automorphism of a different algebra")
        self.sigma_left, self.sigma_right = sl, sr
        vp = algebra.quiver.vertex_pos
        inv_l = {w: v for v, w in sl.perm.items()}
        inv_r = {w: v for v, w in sr.perm.items()}
        vs = algebra.vertices
        ltags = [vp[inv_l[vs[t]]] for t in algebra.targets]
        rtags = [vp[inv_r[vs[s]]] for s in algebra.sources]
        left = {a: algebra.left_matrix(sl.apply(algebra.arrow(a))) for a in algebra.quiver.arrow_map}
        right = {a: algebra.right_matrix(sr.apply(algebra.arrow(a))) for a in algebra.quiver.arrow_map}
        if not name:
            name = _twist_label(sl) + (algebra.name or "E") + _twist_label(sr, right_side=True)
        super().__init__(algebra, ltags, rtags, left, right, name=name)

    def element(self, expr) -> np.ndarray:
        return self.algebra.element(expr)


def _twist_label(s: Automorphism, right_side: bool = False) -> str:
    if s.is_identity():
        return ""
    return f"_{{{s.name or 'sigma'}}}" if right_side else f"{{{s.name or 'sigma'}}}"


def twisted_regular(algebra: QuiverAlgebra, sigma_left: Automorphism | None = None, sigma_right: Automorphism | None = None, name: str = "") -> RegularBimodule:
    return RegularBimodule(algebra, sigma_left, sigma_right, name=name)


# ---------------------------------------------------------------------------
# balanced tensor products


class BalancedTensor:
    """``X (x)_B Y`` for a right ``B``-module ``X`` and a left ``B``-module ``Y``.

    Attributes:
        pair_index: ``pair_index[i, j]`` is the coordinate of ``x_i (x) y_j`` in
            the pre-space, or -1 when the tags do not match.
        relations: span of the balancing relations in the pre-space.
        basis_pairs: ``(i, j)`` of each quotient basis vector.
    """

    def __init__(self, xr: Representation, yl: Representation):
        if xr.algebra is not yl.algebra or xr.side != RIGHT or yl.side != LEFT:
            raise ValueError("need a right and a left module over the same algebra")
        self.xr, self.yl = xr, yl
        p = xr.p
        nx, ny = xr.dim, yl.dim
        match = np.equal.outer(xr.tags, yl.tags)
        pi = -np.ones((nx, ny), dtype=np.intp)
        ii, jj = np.nonzero(match)
        pi[ii, jj] = np.arange(len(ii))
        self.pair_index = pi
        self.pairs = np.stack([ii, jj], axis=1) if len(ii) else np.zeros((0, 2), dtype=np.intp)
        npairs = len(ii)
        self.npairs = npairs
        rows = []
        quiver = xr.algebra.quiver
        vp = quiver.vertex_pos
        for b, (s, t) in quiver.arrow_map.items():
            R, L = xr.mats[b], yl.mats[b]
            xs = np.flatnonzero(xr.tags == vp[t])
            ys = np.flatnonzero(yl.tags == vp[s])
            if not len(xs) or not len(ys):
                continue
            block = np.zeros((len(xs), len(ys), npairs), dtype=DTYPE)
            r_j = np.arange(len(ys))
            for k, i in enumerate(xs):
                for i2 in np.flatnonzero(R[:, i]):
                    block[k, r_j, pi[i2, ys]] += R[i2, i]
                sub = L[:, ys]
                for j2 in np.flatnonzero(sub.any(axis=1)):
                    block[k, r_j, pi[i, j2]] -= sub[j2]
            block = block.reshape(-1, npairs) % p
            block = block[block.any(axis=1)]
            if block.size:
                rows.append(block)
        self.relations = Subspace(npairs, p, np.concatenate(rows) if rows else None)
        comp = self.relations.complement_indices()
        self.basis_pairs = self.pairs[comp] if comp else np.zeros((0, 2), dtype=np.intp)
        self.dim = len(comp)

    @property
    def p(self) -> int:
        return self.xr.p

    def quotient_coordinates(self, vecs) -> np.ndarray:
        """Pre-space vectors (rows) to quotient coordinates."""
        return self.relations.quotient_coordinates(vecs)

    def pure(self, i: int, j: int) -> np.ndarray:
        v = np.zeros(self.npairs, dtype=DTYPE)
        k = self.pair_index[i, j]
        if k >= 0:
            v[k] = 1
        return v

    def element(self, x, y) -> np.ndarray:
        """Quotient coordinates of ``x (x) y`` for coordinate vectors ``x`` and ``y``."""
        x = np.asarray(x, dtype=DTYPE) % self.p
        y = np.asarray(y, dtype=DTYPE) % self.p
        outer = np.outer(x, y) % self.p
        v = np.zeros(self.npairs, dtype=DTYPE)
        valid = self.pair_index >= 0
        v[self.pair_index[valid]] = outer[valid]
        return self.quotient_coordinates(v)

    def induced(self, target: "BalancedTensor", fx: np.ndarray | None = None, gy: np.ndarray | None = None) -> np.ndarray:
        """Matrix of ``fx (x) gy`` from this tensor product to ``target``.

        ``fx`` maps the left factor (columns indexed by this ``X`` basis) and
        ``gy`` the right factor; ``None`` means the identity.  Both must be
        ``B``-linear for the result to be well defined.
        """
        p = self.p
        fx = np.eye(self.xr.dim, dtype=DTYPE) if fx is None else np.asarray(fx, dtype=DTYPE) % p
        gy = np.eye(self.yl.dim, dtype=DTYPE) if gy is None else np.asarray(gy, dtype=DTYPE) % p
        out = np.zeros((self.dim, target.npairs), dtype=DTYPE)
        tpi = target.pair_index
        for k, (i, j) in enumerate(self.basis_pairs):
            xi = np.flatnonzero(fx[:, i])
            yj = np.flatnonzero(gy[:, j])
            if not len(xi) or not len(yj):
                continue
            coeff = np.outer(fx[xi, i], gy[yj, j]) % p
            idx = tpi[np.ix_(xi, yj)]
            valid = idx >= 0
            if np.any(coeff[~valid]):
                raise ValueError("induced map leaves the balanced pairs; factor maps are not B-linear")
            np.add.at(out[k], idx[valid], coeff[valid])
        out %= p
        return target.quotient_coordinates(out).T % p


def _restricted_pair(x_right: Representation, y_left: Representation, emb: Embedding, tau: Automorphism | None):
    xr = restrict(x_right, emb)
    yl = restrict(y_left, emb)
    if tau is not None and not tau.is_identity():
        if tau.algebra is not emb.sub:
            raise ValueError("middle twist is not an automorphism of the subalgebra")
        yl = twist(yl, tau)
    return xr, yl


class TensorBimodule(Bimodule):
    """``X (x)_{tau B} Y`` for bimodules ``X`` and ``Y`` over ``E``."""

    def __init__(self, x: Bimodule, emb: Embedding, y: Bimodule, tau: Automorphism | None = None, name: str = ""):
        if x.algebra is not y.algebra or emb.ambient is not x.algebra:
            raise ValueError("factors and subalgebra over different algebras")
        self.x, self.y, self.emb, self.tau = x, y, emb, tau
        xr, yl = _restricted_pair(x.right_module, y.left_module, emb, tau)
        self.tensor = t = BalancedTensor(xr, yl)
        ii, jj = (t.basis_pairs[:, 0], t.basis_pairs[:, 1]) if t.dim else (np.zeros(0, int), np.zeros(0, int))
        ltags = x.ltags[ii]
        rtags = y.rtags[jj]
        left = {a: t.induced(t, fx=L) for a, L in x.left.items()}
        right = {a: t.induced(t, gy=R) for a, R in y.right.items()}
        mid = emb.sub.name or "B"
        if tau is not None and not tau.is_identity():
            mid = f"{{{tau.name or 'tau'}}}{mid}"
        super().__init__(x.algebra, ltags, rtags, left, right, name=name or f"{x.label()} (x)_{mid} {y.label()}")

    def element(self, terms) -> np.ndarray:
        """Element from ``[(coeff, left_expr, right_expr), ...]`` with algebra-element factors."""
        if not isinstance(self.x, RegularBimodule) or not isinstance(self.y, RegularBimodule):
            raise TypeError("tensor expressions need regular outer factors")
        alg = self.algebra
        out = np.zeros(self.dim, dtype=DTYPE)
        for c, lx, ry in terms:
            out = (out + c * self.tensor.element(alg.element(lx), alg.element(ry))) % self.p
        return out


def tensor_over_subalgebra(x: Bimodule, emb: Embedding, y: Bimodule, tau: Automorphism | None = None, name: str = "") -> TensorBimodule:
    return TensorBimodule(x, emb, y, tau, name=name)


@dataclass
class ModuleTensor:
    """``Y (x)_E M`` (left) or ``N (x)_E Y`` (right) with its tensor data."""

    module: Representation
    tensor: BalancedTensor
    bimodule_first: bool


def tensor_bimodule_module(y: Bimodule, m: Representation, name: str = "") -> ModuleTensor:
    """``Y (x)_E M`` for a left module ``M``, a left module through ``Y``."""
    if m.side != LEFT or m.algebra is not y.algebra:
        raise ValueError("need a left module over the bimodule's algebra")
    t = BalancedTensor(y.right_module, m)
    ii = t.basis_pairs[:, 0] if t.dim else np.zeros(0, dtype=np.intp)
    mats = {a: t.induced(t, fx=L) for a, L in y.left.items()}
    rep = Representation(y.algebra, LEFT, y.ltags[ii], mats, name=name or f"{y.label()} (x) {m.label()}", check=False)
    return ModuleTensor(rep, t, True)


def tensor_module_bimodule(n: Representation, y: Bimodule, name: str = "") -> ModuleTensor:
    """``N (x)_E Y`` for a right module ``N``, a right module through ``Y``."""
    if n.side != RIGHT or n.algebra is not y.algebra:
        raise ValueError("need a right module over the bimodule's algebra")
    t = BalancedTensor(n, y.left_module)
    jj = t.basis_pairs[:, 1] if t.dim else np.zeros(0, dtype=np.intp)
    mats = {a: t.induced(t, gy=R) for a, R in y.right.items()}
    rep = Representation(y.algebra, RIGHT, y.rtags[jj], mats, name=name or f"{n.label()} (x) {y.label()}", check=False)
    return ModuleTensor(rep, t, False)


def induce(emb: Embedding, m: Representation, name: str = "") -> Representation:
    """``E (x)_B M`` for a left module ``M`` over the subalgebra ``B``."""
    E = emb.ambient
    if m.algebra is not emb.sub or m.side != LEFT:
        raise ValueError("need a left module over the subalgebra")
    reg = RegularBimodule(E)
    xr = restrict(reg.right_module, emb)
    t = BalancedTensor(xr, m)
    ii = t.basis_pairs[:, 0] if t.dim else np.zeros(0, dtype=np.intp)
    mats = {a: t.induced(t, fx=L) for a, L in reg.left.items()}
    return Representation(E, LEFT, reg.ltags[ii], mats, name=name or f"E (x)_B {m.label()}")


# ---------------------------------------------------------------------------
# maps


class BalanceError(ValueError):
    """A generator assignment does not extend to a bimodule map."""


@dataclass
class BimoduleHom:
    src: Bimodule
    dst: Bimodule
    matrix: np.ndarray

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=DTYPE).reshape(self.dst.dim, self.src.dim) % self.src.p

    def is_homomorphism(self) -> bool:
        p = self.src.p
        f = self.matrix
        for a in self.src.left:
            if not np.array_equal(self.dst.left[a] @ f % p, f @ self.src.left[a] % p):
                return False
            if not np.array_equal(self.dst.right[a] @ f % p, f @ self.src.right[a] % p):
                return False
        return True

    def compose(self, other: "BimoduleHom") -> "BimoduleHom":
        """``self o other``."""
        if other.dst.dim != self.src.dim:
            raise ValueError("maps are not composable")
        return BimoduleHom(other.src, self.dst, self.matrix @ other.matrix % self.src.p)

    def is_zero(self) -> bool:
        return not self.matrix.any()

    def rank(self) -> int:
        return la.rank(self.matrix, self.src.p) if self.matrix.size else 0

    def is_isomorphism(self) -> bool:
        return self.src.dim == self.dst.dim and self.rank() == self.src.dim and self.is_homomorphism()


def identity_map(x: Bimodule) -> BimoduleHom:
    return BimoduleHom(x, x, np.eye(x.dim, dtype=DTYPE))


def _presentation_columns(x: Bimodule, g: np.ndarray):
    """All ``a g b`` for basis elements ``a``, ``b``; returns (columns, labels)."""
    p = x.p
    la_ = x.left_module.basis_actions
    ra_ = x.right_module.basis_actions
    lg = np.einsum("aij,j->ai", la_, g) % p  # (d, n)
    keep_a = np.flatnonzero(lg.any(axis=1))
    cols = np.einsum("bij,aj->abi", ra_, lg[keep_a]) % p  # (ka, d, n)
    ka, d, n = cols.shape
    cols = cols.reshape(ka * d, n)
    labels = [(int(a), int(b)) for a in keep_a for b in range(d)]
    nz = cols.any(axis=1)
    return cols[nz].T, [lab for lab, k in zip(labels, nz) if k]


def make_bimodule_map(src: Bimodule, dst: Bimodule, generators: Sequence, values: Sequence) -> BimoduleHom:
    """Extend ``generator_k -> value_k`` to a bimodule map.

    Raises:
        ValueError: the generators do not generate ``src``.
        BalanceError: the assignment does not descend; the message names a
            relation among the generators that the values violate.
    """
    if src.algebra is not dst.algebra:
        raise ValueError("bimodules over different algebras")
    p = src.p
    alg = src.algebra
    pres_cols, assign_cols, labels = [], [], []
    for k, (g, v) in enumerate(zip(generators, values)):
        g = np.asarray(g, dtype=DTYPE) % p
        v = np.asarray(v, dtype=DTYPE) % p
        cols, labs = _presentation_columns(src, g)
        pres_cols.append(cols)
        # same (a, b) pairs applied to the value
        la_ = dst.left_module.basis_actions
        ra_ = dst.right_module.basis_actions
        vals = np.stack([ra_[b] @ (la_[a] @ v % p) % p for a, b in labs], axis=1) if labs else np.zeros((dst.dim, 0), dtype=DTYPE)
        assign_cols.append(vals)
        labels.extend((k, a, b) for a, b in labs)
    pres = np.concatenate(pres_cols, axis=1)
    assign = np.concatenate(assign_cols, axis=1)
    if la.rank(pres, p) != src.dim:
        raise ValueError(f"generators span a sub-bimodule of dimension {la.rank(pres, p)} < {src.dim}")
    sol = la.solve(pres.T, assign.T, p)
    if sol is None:
        ker = la.nullspace(pres, p)
        for w in ker:
            if (assign @ w % p).any():
                terms = [
                    f"{int(w[c])}*{alg.basis[a].label()}.g{k}.{alg.basis[b].label()}"
                    for c, (k, a, b) in enumerate(labels)
                    if w[c]
                ]
                shown = " + ".join(terms[:6]) + (" + ..." if len(terms) > 6 else "")
                raise BalanceError(f"assignment violates the relation {shown} = 0 among generators")
        raise BalanceError("assignment is inconsistent")
    f = BimoduleHom(src, dst, sol.T)
    if not f.is_homomorphism():
        raise AssertionError("extended map failed the bimodule check")
    return f


def multiplication_map(x: TensorBimodule, target: Bimodule) -> BimoduleHom:
    """The map ``a (x) b -> ab`` from ``E (x)_B E`` to ``E`` (regular factors)."""
    ones = x.algebra.one()
    g = x.tensor.element(ones, ones)
    return make_bimodule_map(x, target, [g], [ones])


def bimodule_hom_space(x: Bimodule, y: Bimodule) -> list[BimoduleHom]:
    """Basis of bimodule maps by direct linear solve on bigraded components."""
    nv = len(x.algebra.vertices)
    st = x.ltags * nv + x.rtags
    dt = y.ltags * nv + y.rtags
    pairs = [(x.left[a], y.left[a]) for a in x.left] + [(x.right[a], y.right[a]) for a in x.right]
    return [BimoduleHom(x, y, f) for f in intertwiner_space(st, dt, pairs, x.p)]


# ---------------------------------------------------------------------------
# sequences


@dataclass
class Sequence_:
    """``objects[0] -> objects[1] -> ... -> objects[-1]`` with ``maps[k]: objects[k] -> objects[k+1]``."""

    objects: list
    maps: list  # matrices or objects with .matrix
    names: list | None = None

    def matrices(self) -> list[np.ndarray]:
        return [m.matrix if hasattr(m, "matrix") else np.asarray(m) for m in self.maps]

    @property
    def p(self) -> int:
        return self.objects[0].algebra.p

    def dims(self) -> list[int]:
        return [o.dim for o in self.objects]

    def composites_vanish(self) -> list[bool]:
        mats = self.matrices()
        return [not (b @ a % self.p).any() for a, b in zip(mats, mats[1:])]

    def is_complex(self) -> bool:
        return all(self.composites_vanish())

    def homology_dims(self) -> list[int]:
        """``dim ker(out) - rank(in)`` at every position, ends included."""
        if not self.is_complex():
            raise ValueError("not a complex: consecutive maps do not compose to zero")
        p = self.p
        mats = self.matrices()
        ranks = [la.rank(m, p) if m.size else 0 for m in mats]
        out = []
        for k, o in enumerate(self.objects):
            r_out = ranks[k] if k < len(mats) else 0
            r_in = ranks[k - 1] if k > 0 else 0
            out.append(o.dim - r_out - r_in)
        return out

    def is_exact(self) -> bool:
        return self.is_complex() and not any(self.homology_dims())

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * d for k, d in enumerate(self.dims()))


BimoduleComplex = Sequence_


def homology_dims(seq: Sequence_) -> list[int]:
    return seq.homology_dims()


def tensor_sequence_with_left_module(seq: Sequence_, m: Representation) -> Sequence_:
    """Apply ``- (x)_E M`` termwise to a sequence of bimodules."""
    tens = [tensor_bimodule_module(y, m) for y in seq.objects]
    maps = []
    for f, a, b in zip(seq.matrices(), tens, tens[1:]):
        maps.append(a.tensor.induced(b.tensor, fx=f))
    return Sequence_([t.module for t in tens], maps)


def tensor_sequence_with_right_module(seq: Sequence_, n: Representation) -> Sequence_:
    """Apply ``N (x)_E -`` termwise to a sequence of bimodules."""
    tens = [tensor_module_bimodule(n, y) for y in seq.objects]
    maps = []
    for f, a, b in zip(seq.matrices(), tens, tens[1:]):
        maps.append(a.tensor.induced(b.tensor, gy=f))
    return Sequence_([t.module for t in tens], maps)


def is_central(x: Bimodule, v) -> bool:
    """Whether ``a v = v a`` for every arrow and vertex idempotent ``a``."""
    v = np.asarray(v, dtype=DTYPE) % x.p
    alg = x.algebra
    gens = [alg.arrow(a) for a in alg.quiver.arrow_map] + [alg.idempotent(w) for w in alg.vertices]
    return all(np.array_equal(x.lact(g) @ v % x.p, x.ract(g) @ v % x.p) for g in gens)


def value_by_action(src: Bimodule, dst: Bimodule, generators: Sequence, values: Sequence, element, side: str) -> np.ndarray | None:
    """Image of ``element`` under a generator assignment, using one side only.

    Writes ``element`` as ``sum_k a_k g_k`` (``side == LEFT``) or
    ``sum_k g_k a_k`` (``side == RIGHT``) and returns the matching
    combination of values, or ``None`` if no such expression exists.
    """
    p = src.p
    alg = src.algebra
    acts_s = src.left_module.basis_actions if side == LEFT else src.right_module.basis_actions
    acts_d = dst.left_module.basis_actions if side == LEFT else dst.right_module.basis_actions
    cols, imgs = [], []
    for g, v in zip(generators, values):
        g = np.asarray(g, dtype=DTYPE) % p
        v = np.asarray(v, dtype=DTYPE) % p
        for b in range(alg.dim):
            cols.append(acts_s[b] @ g % p)
            imgs.append(acts_d[b] @ v % p)
    sol = la.solve(np.stack(cols, axis=1), np.asarray(element, dtype=DTYPE) % p, p)
    if sol is None:
        return None
    return np.stack(imgs, axis=1) @ sol % p


def is_twisted_central(src: RegularBimodule, dst: Bimodule, z) -> bool:
    """Whether ``1 -> z`` extends to a bimodule map from the twisted regular ``src``.

    Equivalently ``a z = z c`` where ``a . 1 = 1 . c`` in ``src``; for
    ``src = sigma E`` and ``dst = sigma X`` this is ordinary centrality of
    ``z`` in ``X``.
    """
    z = np.asarray(z, dtype=DTYPE) % dst.p
    alg = src.algebra
    one = alg.one()
    gens = [alg.arrow(a) for a in alg.quiver.arrow_map] + [alg.idempotent(w) for w in alg.vertices]
    for a in gens:
        c = src.lact(a) @ one % src.p
        if not np.array_equal(dst.lact(a) @ z % dst.p, dst.ract(c) @ z % dst.p):
            return False
    return True
