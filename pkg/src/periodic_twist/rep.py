"""Finite-dimensional modules over quiver algebras.

A module is one vector space with a vertex tag on every basis vector and a
full matrix for every arrow.  For a left module an arrow ``a: i -> j`` maps
the ``i``-component to the ``j``-component and a path ``a1*...*ak`` acts as
``A[a1] @ ... @ A[ak]``.  For a right module ``a`` maps the ``j``-component
to the ``i``-component and ``v . (a1*...*ak) = A[ak] @ ... @ A[a1] @ v``.
Every subspace handled here is spanned by vectors supported on a single
component, and row reduction preserves that, so submodules and quotients
keep a tagged basis.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Sequence

import numpy as np

from . import exactla as la
from .exactla import DTYPE, Subspace
from .qalg import Automorphism, Embedding, QuiverAlgebra

LEFT, RIGHT = "left", "right"


class UndecidedError(RuntimeError):
    """Randomized search found no isomorphism and an exhaustive sweep was too large."""


class Representation:
    """A module over ``algebra`` on the given ``side``.

    Args:
        algebra: the acting algebra.
        side: ``"left"`` or ``"right"``.
        tags: vertex index of each basis vector.
        mats: arrow name -> ``n x n`` matrix.
        name: optional label.
        check: validate relations and component structure.
    """

    def __init__(self, algebra: QuiverAlgebra, side: str, tags, mats: Mapping, name: str = "", check: bool = True):
        if side not in (LEFT, RIGHT):
            raise ValueError(f"side must be 'left' or 'right', got {side!r}")
        self.algebra = algebra
        self.side = side
        self.tags = np.asarray(tags, dtype=np.intp).reshape(-1)
        self.dim = len(self.tags)
        p = algebra.p
        self.mats = {}
        for a, _, _ in algebra.quiver.arrows:
            m = mats.get(a)
            if m is None:
                m = np.zeros((self.dim, self.dim), dtype=DTYPE)
            m = np.asarray(m, dtype=DTYPE).reshape(self.dim, self.dim) % p
            self.mats[a] = m
        extra = set(mats) - set(self.mats)
        if extra:
            raise ValueError(f"unknown arrows {sorted(extra)}")
        self.name = name
        if check:
            self.validate()

    # -- structure ------------------------------------------------------------
    @property
    def p(self) -> int:
        return self.algebra.p

    def vertex_indices(self, v) -> np.ndarray:
        return np.flatnonzero(self.tags == self.algebra.quiver.vertex_pos[v])

    def dimension_vector(self) -> tuple:
        nv = len(self.algebra.vertices)
        return tuple(int(x) for x in np.bincount(self.tags, minlength=nv)) if self.dim else (0,) * nv

    def _arrow_ends(self, a):
        s, t = self.algebra.quiver.arrow_map[a]
        vp = self.algebra.quiver.vertex_pos
        return (vp[s], vp[t]) if self.side == LEFT else (vp[t], vp[s])

    def validate(self) -> None:
        for a, m in self.mats.items():
            src, dst = self._arrow_ends(a)
            allowed = np.outer(self.tags == dst, self.tags == src)
            if np.any(m[~allowed]):
                raise ValueError(f"arrow {a} does not map component {src} to component {dst}")
        for r in self.algebra.relations:
            acc = np.zeros((self.dim, self.dim), dtype=DTYPE)
            for path, c in r.items():
                acc = (acc + c * self.path_action(path)) % self.p
            if acc.any():
                raise ValueError(f"relation {' + '.join(f'{c}*{q.label()}' for q, c in r.items())} does not act as zero")
        # rad^bound must vanish
        cur = np.eye(self.dim, dtype=DTYPE)
        for _ in range(self.algebra.bound):
            if not cur.any():
                break
            cur = np.concatenate([m @ cur % self.p for m in self.mats.values()], axis=1) if self.mats else np.zeros((self.dim, 0), dtype=DTYPE)
            cur = la.row_basis(cur.T, self.p).T if cur.size else cur
        if cur.size and cur.any():
            raise ValueError("paths of length >= bound do not act as zero")

    def path_action(self, path) -> np.ndarray:
        if not path.arrows:
            d = (self.tags == self.algebra.quiver.vertex_pos[path.source]).astype(DTYPE)
            return np.diag(d)
        mats = [self.mats[a] for a in path.arrows]
        if self.side == RIGHT:
            mats = mats[::-1]
        out = mats[0]
        for m in mats[1:]:
            out = out @ m % self.p
        return out

    @cached_property
    def basis_actions(self) -> np.ndarray:
        """Stack of the action matrices of every algebra basis element."""
        return np.stack([self.path_action(b) for b in self.algebra.basis]) if self.algebra.dim else np.zeros((0, self.dim, self.dim), dtype=DTYPE)

    def act(self, x) -> np.ndarray:
        """Matrix of the action of the algebra element ``x``."""
        return np.einsum("k,kij->ij", np.asarray(x, dtype=DTYPE), self.basis_actions) % self.p

    def is_zero(self) -> bool:
        return self.dim == 0

    def label(self) -> str:
        return self.name or f"<{self.side} module of dim {self.dim}>"

    def __repr__(self) -> str:
        return f"Representation({self.label()}, dimvec={self.dimension_vector()})"


@dataclass
class ModuleHom:
    """Module map given by a ``dst.dim x src.dim`` matrix."""

    src: Representation
    dst: Representation
    matrix: np.ndarray

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=DTYPE).reshape(self.dst.dim, self.src.dim) % self.src.p

    def is_homomorphism(self) -> bool:
        if self.src.side != self.dst.side:
            return False
        f = self.matrix
        if np.any(f[~np.equal.outer(self.dst.tags, self.src.tags)]):
            return False
        p = self.src.p
        return all(np.array_equal(self.dst.mats[a] @ f % p, f @ self.src.mats[a] % p) for a in self.src.mats)

    def compose(self, other: "ModuleHom") -> "ModuleHom":
        """``self o other``."""
        if other.dst.dim != self.src.dim:
            raise ValueError("maps are not composable")
        return ModuleHom(other.src, self.dst, self.matrix @ other.matrix % self.src.p)

    def rank(self) -> int:
        return la.rank(self.matrix, self.src.p)

    def is_injective(self) -> bool:
        return self.rank() == self.src.dim

    def is_surjective(self) -> bool:
        return self.rank() == self.dst.dim

    def is_isomorphism(self) -> bool:
        return self.src.dim == self.dst.dim and self.is_injective() and self.is_homomorphism()

    def kernel(self) -> tuple[Representation, "ModuleHom"]:
        return submodule(self.src, la.nullspace(self.matrix, self.src.p))

    def image(self) -> tuple[Representation, "ModuleHom"]:
        return submodule(self.dst, self.matrix.T)


# ---------------------------------------------------------------------------
# constructions


def _vertex(algebra: QuiverAlgebra, v) -> str:
    v = str(v)
    if v not in algebra.quiver.vertex_pos:
        raise ValueError(f"unknown vertex {v!r}")
    return v


def simple_module(algebra: QuiverAlgebra, v, side: str = LEFT) -> Representation:
    v = _vertex(algebra, v)
    return Representation(algebra, side, [algebra.quiver.vertex_pos[v]], {}, name=f"S{v}")


def _regular_block(algebra: QuiverAlgebra, idx, side: str, name: str) -> Representation:
    idx = np.asarray(idx, dtype=np.intp)
    mats = {}
    for a, _, _ in algebra.quiver.arrows:
        x = algebra.arrow(a)
        full = algebra.left_matrix(x) if side == LEFT else algebra.right_matrix(x)
        mats[a] = full[np.ix_(idx, idx)]
    tags = algebra.targets[idx] if side == LEFT else algebra.sources[idx]
    return Representation(algebra, side, tags, mats, name=name, check=False)


def projective_module(algebra: QuiverAlgebra, v, side: str = LEFT) -> Representation:
    """``A e_v`` (left) or ``e_v A`` (right), with basis the basis paths it contains."""
    v = _vertex(algebra, v)
    idx = algebra.basis_of(source=v) if side == LEFT else algebra.basis_of(target=v)
    return _regular_block(algebra, idx, side, f"P{v}")


def regular_module(algebra: QuiverAlgebra, side: str = LEFT) -> Representation:
    return _regular_block(algebra, range(algebra.dim), side, "A" if not algebra.name else algebra.name)


def literal_module(algebra: QuiverAlgebra, side: str, dims: Mapping, blocks: Mapping, name: str = "") -> Representation:
    """Module from a dimension per vertex and one block matrix per arrow.

    Basis vectors are ordered by vertex.  The block for arrow ``a`` has shape
    (dim of its target component, dim of its source component) for the side.
    """
    tags = []
    offs = {}
    for v in algebra.vertices:
        offs[v] = len(tags)
        tags.extend([algebra.quiver.vertex_pos[v]] * int(dims.get(v, 0)))
    unknown = set(dims) - set(algebra.vertices)
    if unknown:
        raise ValueError(f"unknown vertices {sorted(unknown)}")
    n = len(tags)
    mats = {}
    for a, blk in blocks.items():
        if a not in algebra.quiver.arrow_map:
            raise ValueError(f"unknown arrow {a!r}")
        s, t = algebra.quiver.arrow_map[a]
        src, dst = (s, t) if side == LEFT else (t, s)
        blk = np.asarray(blk, dtype=DTYPE).reshape(int(dims.get(dst, 0)), int(dims.get(src, 0)))
        m = np.zeros((n, n), dtype=DTYPE)
        m[offs[dst] : offs[dst] + blk.shape[0], offs[src] : offs[src] + blk.shape[1]] = blk
        mats[a] = m
    return Representation(algebra, side, tags, mats, name=name)


def zero_module(algebra: QuiverAlgebra, side: str = LEFT) -> Representation:
    return Representation(algebra, side, [], {}, name="0", check=False)


def direct_sum(mods: Sequence[Representation], name: str = "") -> tuple[Representation, list[ModuleHom], list[ModuleHom]]:
    """Direct sum with its injections and projections."""
    if not mods:
        raise ValueError("direct sum of no modules")
    alg, side = mods[0].algebra, mods[0].side
    for m in mods:
        if m.algebra is not alg or m.side != side:
            raise ValueError("summands over different algebras or sides")
    n = sum(m.dim for m in mods)
    tags = np.concatenate([m.tags for m in mods]) if n else np.zeros(0, dtype=np.intp)
    mats = {}
    for a in alg.quiver.arrow_map:
        big = np.zeros((n, n), dtype=DTYPE)
        o = 0
        for m in mods:
            big[o : o + m.dim, o : o + m.dim] = m.mats[a]
            o += m.dim
        mats[a] = big
    s = Representation(alg, side, tags, mats, name=name or " + ".join(m.label() for m in mods), check=False)
    inj, proj = [], []
    o = 0
    for m in mods:
        e = np.zeros((n, m.dim), dtype=DTYPE)
        e[o : o + m.dim] = np.eye(m.dim, dtype=DTYPE)
        inj.append(ModuleHom(m, s, e))
        proj.append(ModuleHom(s, m, e.T))
        o += m.dim
    return s, inj, proj


def _tag_of_rows(rows: np.ndarray, tags: np.ndarray) -> np.ndarray:
    if rows.shape[0] == 0:
        return np.zeros(0, dtype=np.intp)
    lead = np.array([int(np.flatnonzero(r)[0]) for r in rows], dtype=np.intp)
    return tags[lead]


def submodule(m: Representation, vectors) -> tuple[Representation, ModuleHom]:
    """Submodule with basis the RREF of ``vectors`` (rows); must be closed under the action."""
    vectors = np.asarray(vectors, dtype=DTYPE).reshape(-1, m.dim)
    space = Subspace(m.dim, m.p, vectors if vectors.size else None)
    return _submodule_of(m, space)


def _submodule_of(m: Representation, space: Subspace) -> tuple[Representation, ModuleHom]:
    basis = space.basis
    tags = _tag_of_rows(basis, m.tags)
    mats = {}
    for a, A in m.mats.items():
        img = (A @ basis.T % m.p).T
        if img.size and not space.contains_all(img):
            raise ValueError("subspace is not a submodule")
        mats[a] = (img[:, space.pivots].T % m.p) if basis.shape[0] else np.zeros((0, 0), dtype=DTYPE)
    sub = Representation(m.algebra, m.side, tags, mats, name=f"sub({m.label()})", check=False)
    return sub, ModuleHom(sub, m, basis.T)


def quotient(m: Representation, vectors) -> tuple[Representation, ModuleHom]:
    """Quotient by the submodule spanned by ``vectors`` (rows), with the projection."""
    vectors = np.asarray(vectors, dtype=DTYPE).reshape(-1, m.dim)
    space = Subspace(m.dim, m.p, vectors if vectors.size else None)
    return _quotient_of(m, space)


def _quotient_of(m: Representation, space: Subspace) -> tuple[Representation, ModuleHom]:
    comp = space.complement_indices()
    qmat = space.quotient_coordinates(np.eye(m.dim, dtype=DTYPE)).T  # (len(comp), n)
    mats = {}
    for a, A in m.mats.items():
        if space.dim and not space.contains_all((A @ space.basis.T % m.p).T):
            raise ValueError("subspace is not a submodule")
        mats[a] = qmat @ A[:, comp] % m.p
    q = Representation(m.algebra, m.side, m.tags[comp], mats, name=f"quot({m.label()})", check=False)
    return q, ModuleHom(m, q, qmat)


# ---------------------------------------------------------------------------
# radical, socle, series


def _radical_space(m: Representation) -> Subspace:
    cols = [A.T for A in m.mats.values() if A.any()]
    if not cols:
        return Subspace(m.dim, m.p)
    return Subspace(m.dim, m.p, np.concatenate(cols, axis=0))


def _socle_space(m: Representation, below: Subspace | None = None) -> Subspace:
    """Vectors sent by every arrow into ``below`` (default 0)."""
    if below is None or below.dim == 0:
        q = np.eye(m.dim, dtype=DTYPE)
    else:
        q = below.quotient_coordinates(np.eye(m.dim, dtype=DTYPE)).T
    if q.shape[0] == 0 or not m.mats:
        return Subspace(m.dim, m.p, np.eye(m.dim, dtype=DTYPE))
    stacked = np.concatenate([q @ A % m.p for A in m.mats.values()], axis=0)
    ker = la.nullspace(stacked, m.p)
    return Subspace(m.dim, m.p, ker if ker.size else None)


def radical(m: Representation) -> tuple[Representation, ModuleHom]:
    return _submodule_of(m, _radical_space(m))


def socle(m: Representation) -> tuple[Representation, ModuleHom]:
    return _submodule_of(m, _socle_space(m))


def top(m: Representation) -> tuple[Representation, ModuleHom]:
    return _quotient_of(m, _radical_space(m))


class LoewyTable(tuple):
    """Layers of a radical or socle filtration, top layer first.

    Each layer is a tuple of vertex labels (a multiset, sorted by vertex order).
    """

    def __str__(self) -> str:
        return " / ".join(" ".join(layer) for layer in self)

    def as_multisets(self) -> list[Counter]:
        return [Counter(layer) for layer in self]

    def matches(self, other) -> bool:
        other = [tuple(layer) for layer in other]
        return len(self) == len(other) and all(Counter(a) == Counter(b) for a, b in zip(self, other))

    @classmethod
    def parse(cls, text: str) -> "LoewyTable":
        return cls(tuple(layer.split()) for layer in text.split("/"))


def _space_counts(space: Subspace, tags: np.ndarray, nv: int) -> np.ndarray:
    return np.bincount(_tag_of_rows(space.basis, tags), minlength=nv)


def _layers(m: Representation, chain: list[Subspace]) -> LoewyTable:
    vs = m.algebra.vertices
    nv = len(vs)
    out = []
    for big, small in zip(chain, chain[1:]):
        diff = _space_counts(big, m.tags, nv) - _space_counts(small, m.tags, nv)
        out.append(tuple(v for k, v in enumerate(vs) for _ in range(int(diff[k]))))
    return LoewyTable(out)


def radical_chain(m: Representation) -> list[Subspace]:
    chain = [Subspace(m.dim, m.p, np.eye(m.dim, dtype=DTYPE) if m.dim else None)]
    while chain[-1].dim:
        cur = chain[-1]
        imgs = [(A @ cur.basis.T % m.p).T for A in m.mats.values()]
        imgs = [x for x in imgs if x.any()]
        nxt = Subspace(m.dim, m.p, np.concatenate(imgs) if imgs else None)
        chain.append(nxt)
    return chain


def loewy_series(m: Representation) -> LoewyTable:
    """Radical layers ``rad^k M / rad^(k+1) M``, top first."""
    return _layers(m, radical_chain(m))


def socle_series(m: Representation) -> LoewyTable:
    """Socle layers, listed from the top (``M / soc^(l-1) M``) down to ``soc M``."""
    chain = [Subspace(m.dim, m.p)]
    while chain[-1].dim < m.dim:
        chain.append(_socle_space(m, chain[-1]))
    return _layers(m, list(reversed(chain)))


def loewy_length(m: Representation) -> int:
    return len(radical_chain(m)) - 1


# ---------------------------------------------------------------------------
# covers and syzygies


@dataclass
class ProjectiveCover:
    module: Representation  # the projective P
    map: ModuleHom  # P -> M, surjective with kernel in rad P
    vertices: tuple  # vertex labels of the indecomposable summands, in order
    generators: np.ndarray  # rows: images in M of the summand tops


def top_generators(m: Representation) -> tuple[list[str], np.ndarray]:
    """Vectors of ``m`` whose classes form a basis of ``top(m)``, grouped by vertex order."""
    rad = _radical_space(m)
    comp = rad.complement_indices()
    order = sorted(comp, key=lambda c: (int(m.tags[c]), c))
    vs = [m.algebra.vertices[int(m.tags[c])] for c in order]
    gens = np.zeros((len(order), m.dim), dtype=DTYPE)
    for k, c in enumerate(order):
        gens[k, c] = 1
    return vs, gens


def cover_from_generators(m: Representation, vertices: Sequence[str], gens: np.ndarray) -> ProjectiveCover:
    """Map ``(+) P_v -> m`` sending the top of each summand to the given generator."""
    alg = m.algebra
    summands = [projective_module(alg, v, m.side) for v in vertices]
    if summands:
        p_mod, _, _ = direct_sum(summands, name=" + ".join(f"P{v}" for v in vertices))
    else:
        p_mod = zero_module(alg, m.side)
    cols = []
    acts = m.basis_actions
    for v, g in zip(vertices, gens):
        idx = alg.basis_of(source=v) if m.side == LEFT else alg.basis_of(target=v)
        cols.append((acts[idx] @ g % m.p).T)
    mat = np.concatenate(cols, axis=1) if cols else np.zeros((m.dim, 0), dtype=DTYPE)
    return ProjectiveCover(p_mod, ModuleHom(p_mod, m, mat), tuple(vertices), np.asarray(gens, dtype=DTYPE).reshape(len(vertices), m.dim))


def projective_cover(m: Representation) -> ProjectiveCover:
    """Minimal projective cover: one summand ``P_v`` per basis vector of ``top(m)``."""
    vs, gens = top_generators(m)
    return cover_from_generators(m, vs, gens)


def omega(m: Representation, n: int = 1) -> Representation:
    """Heller translate ``Omega^n(m)`` via minimal projective covers."""
    if n < 1:
        raise ValueError("n must be at least 1")
    cur = m
    for _ in range(n):
        cov = projective_cover(cur)
        cur, _ = cov.map.kernel()
    cur.name = f"Omega^{n}({m.label()})"
    return cur


def omega_via_cover(m: Representation, vertices: Sequence[str], gens: np.ndarray) -> Representation:
    """Kernel of the (possibly non-minimal) cover sending the top of ``P_v`` to each generator."""
    cov = cover_from_generators(m, vertices, gens)
    if not cov.map.is_surjective():
        raise ValueError("generators do not generate the module")
    ker, _ = cov.map.kernel()
    return ker


def _socle_element(alg: QuiverAlgebra, v: str) -> np.ndarray:
    pv = projective_module(alg, v)
    soc = _socle_space(pv)
    if soc.dim != 1:
        raise ValueError(f"socle of P{v} is not simple; the algebra is not self-injective")
    out = np.zeros(alg.dim, dtype=DTYPE)
    out[alg.basis_of(source=v)] = soc.basis[0]
    return out


def strip_projective_summands(m: Representation) -> tuple[Representation, list[str]]:
    """Split off projective summands of a left module over a self-injective algebra.

    ``e_v -> x`` defines a split injection ``P_v -> m`` exactly when the
    socle element of ``P_v`` does not kill ``x``.

    Returns:
        The remaining module and the vertices of the removed summands.
    """
    if m.side != LEFT:
        raise ValueError("left modules only")
    alg = m.algebra
    socs = {v: _socle_element(alg, v) for v in alg.vertices}
    removed = []
    cur = m
    while cur.dim:
        for v in alg.vertices:
            idx = cur.vertex_indices(v)
            if not len(idx):
                continue
            img = cur.act(socs[v])[:, idx]
            cols = np.flatnonzero(img.any(axis=0))
            if len(cols):
                x = np.zeros(cur.dim, dtype=DTYPE)
                x[idx[cols[0]]] = 1
                gen = np.einsum("kij,j->ki", cur.basis_actions, x) % cur.p
                cur, _ = _quotient_of(cur, Subspace(cur.dim, cur.p, gen))
                removed.append(v)
                break
        else:
            break
    return cur, removed


def is_projective(m: Representation) -> bool:
    if m.dim == 0:
        return True
    return projective_cover(m).module.dim == m.dim


# ---------------------------------------------------------------------------
# homomorphisms


def hom_space(m: Representation, n: Representation) -> list[ModuleHom]:
    """Basis of ``Hom(m, n)``.

    A map is fixed by the images of top generators of ``m``; the images are
    free in the matching components of ``n`` subject to killing the
    generators of the kernel of the projective cover.
    """
    if m.algebra is not n.algebra or m.side != n.side:
        raise ValueError("modules over different algebras or sides")
    p = m.p
    if m.dim == 0 or n.dim == 0:
        return []
    cov = projective_cover(m)
    alg = m.algebra
    # unknowns: for generator k at vertex v, coordinates in n's v-component
    blocks = []
    for v in cov.vertices:
        blocks.append(n.vertex_indices(v))
    sizes = [len(b) for b in blocks]
    offs = np.concatenate([[0], np.cumsum(sizes)]).astype(int)
    nunk = int(offs[-1])
    if nunk == 0:
        return []
    # H_u: P -> n, columns for summand k: act_n(b) restricted to block k
    nacts = n.basis_actions
    summand_idx = [alg.basis_of(source=v) if m.side == LEFT else alg.basis_of(target=v) for v in cov.vertices]
    # coefficient tensor: for each P basis vector, the n x nunk matrix of its image
    pcols = []
    for k, idx in enumerate(summand_idx):
        for b in idx:
            c = np.zeros((n.dim, nunk), dtype=DTYPE)
            c[:, offs[k] : offs[k + 1]] = nacts[b][:, blocks[k]]
            pcols.append(c)
    coeff = np.stack(pcols) if pcols else np.zeros((0, n.dim, nunk), dtype=DTYPE)  # (dimP, n, nunk)
    ker, kinc = cov.map.kernel()
    if ker.dim:
        _, kgens = top_generators(ker)
        kvecs = kgens @ kinc.matrix.T % p  # generators of the kernel in P coordinates
        eqs = np.einsum("gp,pnu->gnu", kvecs, coeff).reshape(-1, nunk) % p
        sols = la.nullspace(eqs, p)
    else:
        sols = np.eye(nunk, dtype=DTYPE)
    if sols.shape[0] == 0:
        return []
    section = la.solve(cov.map.matrix, np.eye(m.dim, dtype=DTYPE), p)
    out = []
    for u in sols:
        h = np.einsum("pnu,u->np", coeff, u) % p  # n x dimP
        out.append(ModuleHom(m, n, h @ section % p))
    return out


def intertwiner_space(
    src_tags: np.ndarray,
    dst_tags: np.ndarray,
    pairs: Sequence[tuple[np.ndarray, np.ndarray]],
    p: int,
) -> list[np.ndarray]:
    """All ``F`` with ``F[i, j] = 0`` unless tags agree and ``B F = F A`` for each ``(A, B)`` pair.

    Direct linear solve of the intertwining equations, used for bimodules
    and as an independent check of ``hom_space``.
    """
    src_tags = np.asarray(src_tags)
    dst_tags = np.asarray(dst_tags)
    n_dst, n_src = len(dst_tags), len(src_tags)
    unk = np.argwhere(np.equal.outer(dst_tags, src_tags))
    if len(unk) == 0:
        return []
    ui, uj = unk[:, 0], unk[:, 1]
    nunk = len(unk)
    rows = []
    for a_src, b_dst in pairs:
        # (B F)[r, j] += B[r, i] ; (F A)[i, c] -= A[j, c]
        eq = np.zeros((n_dst, n_src, nunk), dtype=DTYPE)
        cols = np.arange(nunk)
        eq[:, uj, cols] += b_dst[:, ui]
        eq[ui, :, cols] -= a_src[uj, :]
        eq = eq.reshape(-1, nunk) % p
        eq = eq[eq.any(axis=1)]
        if eq.size:
            rows.append(eq)
    if rows:
        sols = la.nullspace(np.concatenate(rows), p)
    else:
        sols = np.eye(nunk, dtype=DTYPE)
    out = []
    for s in sols:
        f = np.zeros((n_dst, n_src), dtype=DTYPE)
        f[ui, uj] = s
        out.append(f)
    return out


def hom_space_direct(m: Representation, n: Representation) -> list[ModuleHom]:
    """``Hom(m, n)`` by solving the intertwining equations for every arrow."""
    pairs = [(m.mats[a], n.mats[a]) for a in m.mats]
    return [ModuleHom(m, n, f) for f in intertwiner_space(m.tags, n.tags, pairs, m.p)]


# ---------------------------------------------------------------------------
# isomorphism


@dataclass
class IsoResult:
    verdict: bool | None  # None = undecided
    witness: ModuleHom | None
    hom_dim: int
    method: str


SWEEP_LIMIT = 3 ** 12


def find_isomorphism(m: Representation, n: Representation, seed: int = 0, trials: int = 64) -> IsoResult:
    """Search ``Hom(m, n)`` for an invertible map.

    Random combinations are tried first; if none is invertible the whole
    space (up to scalars) is swept when it has at most ``3**12`` points.
    """
    if m.algebra is not n.algebra or m.side != n.side:
        raise ValueError("modules over different algebras or sides")
    if m.dimension_vector() != n.dimension_vector():
        return IsoResult(False, None, 0, "dimension vectors differ")
    if m.dim == 0:
        return IsoResult(True, ModuleHom(m, n, np.zeros((0, 0), dtype=DTYPE)), 0, "zero modules")
    homs = hom_space(m, n)
    h = len(homs)
    if h == 0:
        return IsoResult(False, None, 0, "no homomorphisms")
    p = m.p
    stack = np.stack([f.matrix for f in homs])
    rng = np.random.default_rng(seed)
    coeffs = rng.integers(0, p, size=(trials, h), dtype=DTYPE)
    found = _first_invertible(stack, coeffs, p)
    if found is not None:
        return _verified(m, n, found, h, "random")
    if p ** h <= SWEEP_LIMIT:
        for chunk in _projective_points(h, p, 2048):
            found = _first_invertible(stack, chunk, p)
            if found is not None:
                return _verified(m, n, found, h, "sweep")
        return IsoResult(False, None, h, "exhaustive sweep")
    return IsoResult(None, None, h, "random search inconclusive")


def _first_invertible(stack, coeffs, p):
    if len(coeffs) == 0:
        return None
    mats = np.einsum("bh,hij->bij", coeffs, stack) % p
    ok = la.batched_invertible(mats, p)
    if ok.any():
        return mats[int(np.argmax(ok))]
    return None


def _projective_points(h: int, p: int, chunk: int):
    """Nonzero vectors of GF(p)^h with first nonzero entry 1, in chunks."""
    buf = []
    for lead in range(h):
        for tail in itertools.product(range(p), repeat=h - lead - 1):
            buf.append((0,) * lead + (1,) + tail)
            if len(buf) == chunk:
                yield np.array(buf, dtype=DTYPE)
                buf = []
    if buf:
        yield np.array(buf, dtype=DTYPE)


def _verified(m, n, mat, h, method) -> IsoResult:
    f = ModuleHom(m, n, mat)
    if not f.is_isomorphism():
        raise AssertionError("isomorphism witness failed re-verification")
    return IsoResult(True, f, h, method)


def is_isomorphic(m: Representation, n: Representation, seed: int = 0) -> bool:
    res = find_isomorphism(m, n, seed=seed)
    if res.verdict is None:
        raise UndecidedError(f"no isomorphism found among random samples of a {res.hom_dim}-dimensional hom space")
    return res.verdict


# ---------------------------------------------------------------------------
# twists, duals, restriction


def twist(m: Representation, sigma: Automorphism) -> Representation:
    """``sigma``-twisted module: ``x . v = sigma(x) v`` (or ``v . sigma(x)`` on the right)."""
    if sigma.algebra is not m.algebra:
        raise ValueError("automorphism of a different algebra")
    alg = m.algebra
    mats = {a: m.act(sigma.apply(alg.arrow(a))) for a in alg.quiver.arrow_map}
    inv = {w: v for v, w in sigma.perm.items()}
    vp = alg.quiver.vertex_pos
    tags = np.array([vp[inv[alg.vertices[t]]] for t in m.tags], dtype=np.intp)
    return Representation(alg, m.side, tags, mats, name=f"{sigma.name or 'sigma'}({m.label()})")


def dual_module(m: Representation) -> Representation:
    """``Hom_k(m, k)`` on the opposite side, in the dual basis."""
    side = RIGHT if m.side == LEFT else LEFT
    mats = {a: A.T.copy() for a, A in m.mats.items()}
    return Representation(m.algebra, side, m.tags.copy(), mats, name=f"{m.label()}*")


def restrict(m: Representation, emb: Embedding) -> Representation:
    """Restriction to a subalgebra whose idempotents are sums of vertex idempotents."""
    if emb.ambient is not m.algebra:
        raise ValueError("embedding into a different algebra")
    sub = emb.sub
    vp = sub.quiver.vertex_pos
    tags = np.array([vp[emb.vertex_of[m.algebra.vertices[t]]] for t in m.tags], dtype=np.intp)
    mats = {a: m.act(emb.arrow_image(a)) for a in sub.quiver.arrow_map}
    return Representation(sub, m.side, tags, mats, name=f"res({m.label()})")


# ---------------------------------------------------------------------------
# Hom from a projective, via a presentation of its endomorphism algebra


class Presentation:
    """Identification of a presented algebra ``E`` with ``End_A(P)^op = eAe``.

    ``P`` is the direct sum of ``A e_w`` for ``w`` in the image of the vertex
    map.  An arrow ``x: u -> v`` of ``E`` is sent to an element of
    ``e_{phi(v)} A e_{phi(u)}``, which acts on ``Hom_A(P, X)`` by
    precomposition with right multiplication.
    """

    def __init__(self, E: QuiverAlgebra, A: QuiverAlgebra, vertex_map: Mapping, arrow_images: Mapping):
        self.E, self.A = E, A
        self.vertex_map = {str(k): str(v) for k, v in vertex_map.items()}
        if set(self.vertex_map) != set(E.vertices):
            raise ValueError("vertex map must cover every vertex of E")
        if len(set(self.vertex_map.values())) != len(self.vertex_map):
            raise ValueError("vertex map is not injective")
        for w in self.vertex_map.values():
            _vertex(A, w)
        self.images = {}
        for x, (s, t) in E.quiver.arrow_map.items():
            if x not in arrow_images:
                raise ValueError(f"no image for arrow {x}")
            img = A.element(arrow_images[x])
            es, et = A.idempotent(self.vertex_map[s]), A.idempotent(self.vertex_map[t])
            if not np.array_equal(A.product(A.product(et, img), es), img):
                raise ValueError(f"image of {x} does not lie in e_{self.vertex_map[t]} A e_{self.vertex_map[s]}")
            self.images[x] = img
        self.matrix = self._evaluate_basis()
        self._check()

    def _eval_path(self, path) -> np.ndarray:
        A = self.A
        if not path.arrows:
            return A.idempotent(self.vertex_map[path.source])
        out = self.images[path.arrows[0]]
        for a in path.arrows[1:]:
            out = A.product(out, self.images[a])
        return out

    def _evaluate_basis(self) -> np.ndarray:
        return np.stack([self._eval_path(b) for b in self.E.basis], axis=1)

    def _check(self) -> None:
        A, E = self.A, self.E
        for r in E.relations:
            acc = sum((c * self._eval_path(q) for q, c in r.items()), np.zeros(A.dim, dtype=DTYPE)) % A.p
            if acc.any():
                raise ValueError(f"relation {' + '.join(f'{c}*{q.label()}' for q, c in r.items())} of E fails in eAe")
        ws = set(self.vertex_map.values())
        dim_eae = sum(1 for b in A.basis if b.source in ws and b.target in ws)
        if E.dim != dim_eae or la.rank(self.matrix, A.p) != E.dim:
            raise ValueError(f"generator map is not a bijection onto eAe (dim E = {E.dim}, dim eAe = {dim_eae})")

    @property
    def projective_vertices(self) -> tuple:
        return tuple(self.vertex_map[v] for v in self.E.vertices)


def hom_module(pres: Presentation, x: Representation, name: str = "") -> Representation:
    """``Hom_A(P, X)`` as a left ``E``-module, computed from hom spaces.

    The ``u``-component is ``Hom_A(A e_phi(u), X)``; the arrow ``x: u -> v``
    sends ``f`` to ``f o r_a`` where ``r_a: A e_phi(v) -> A e_phi(u)`` is right
    multiplication by the image ``a`` of ``x``.
    """
    A, E = pres.A, pres.E
    if x.algebra is not A or x.side != LEFT:
        raise ValueError("hom_module needs a left module over the ambient algebra")
    proj = {u: projective_module(A, pres.vertex_map[u]) for u in E.vertices}
    bases = {u: hom_space(proj[u], x) for u in E.vertices}
    tags, offs = [], {}
    for u in E.vertices:
        offs[u] = len(tags)
        tags.extend([E.quiver.vertex_pos[u]] * len(bases[u]))
    n = len(tags)
    mats = {}
    for arr, (s, t) in E.quiver.arrow_map.items():
        mat = np.zeros((n, n), dtype=DTYPE)
        if bases[s] and bases[t]:
            # r_a as a matrix from A e_phi(t) to A e_phi(s)
            idx_t = A.basis_of(source=pres.vertex_map[t])
            idx_s = A.basis_of(source=pres.vertex_map[s])
            r = A.right_matrix(pres.images[arr])[np.ix_(idx_s, idx_t)]
            tgt = np.stack([f.matrix.reshape(-1) for f in bases[t]], axis=1)
            for k, f in enumerate(bases[s]):
                comp = (f.matrix @ r % A.p).reshape(-1)
                coords = la.solve(tgt, comp, A.p)
                if coords is None:
                    raise AssertionError("precomposition left the hom space")
                mat[offs[t] : offs[t] + len(bases[t]), offs[s] + k] = coords
        mats[arr] = mat
    return Representation(E, LEFT, tags, mats, name=name or f"Hom(P,{x.label()})")


def projective_as_right_module(pres: Presentation, w: str, name: str = "") -> Representation:
    """``e_w A e`` as a right ``E``-module through right multiplication."""
    A, E = pres.A, pres.E
    w = _vertex(A, w)
    idx, tags = [], []
    for u in E.vertices:
        for k in A.basis_of(target=w, source=pres.vertex_map[u]):
            idx.append(k)
            tags.append(E.quiver.vertex_pos[u])
    idx_arr = np.asarray(idx, dtype=np.intp)
    mats = {}
    for arr in E.quiver.arrow_map:
        full = A.right_matrix(pres.images[arr])
        mats[arr] = full[np.ix_(idx_arr, idx_arr)] if len(idx) else np.zeros((0, 0), dtype=DTYPE)
    return Representation(E, RIGHT, tags, mats, name=name or f"e_{w}Ae")
