"""Bound quiver algebras over GF(p) with an explicit path basis.

Products are written in composition order: for arrows ``a: i -> j`` and
``b: j -> k`` the product ``b*a`` is the path that traverses ``a`` first.
A path is stored as the tuple of its arrows in written order, so the last
arrow is traversed first.  With this convention ``e_t * p * e_s = p`` for a
path ``p`` from ``s`` to ``t``, and the left projective ``A e_i`` is spanned
by the paths starting at ``i``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, NamedTuple, Sequence

import numpy as np

from . import exactla as la
from .exactla import DTYPE, Subspace
from .textformat import parse_path_expr


class Path(NamedTuple):
    source: str
    target: str
    arrows: tuple

    def __len__(self) -> int:  # type: ignore[override]
        return len(self.arrows)

    @property
    def length(self) -> int:
        return len(self.arrows)

    def label(self) -> str:
        return "*".join(self.arrows) if self.arrows else f"e_{self.source}"


@dataclass(frozen=True)
class Quiver:
    """Finite quiver with named vertices and arrows ``name: source -> target``."""

    vertices: tuple
    arrows: tuple  # of (name, source, target)

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex label")
        names = [a[0] for a in self.arrows]
        if len(set(names)) != len(names):
            raise ValueError("duplicate arrow name")
        vs = set(self.vertices)
        for name, s, t in self.arrows:
            if s not in vs or t not in vs:
                raise ValueError(f"arrow {name} has an endpoint outside the vertex set")
            if name == "id" or name.startswith("e_"):
                raise ValueError(f"arrow name {name!r} is reserved")

    @cached_property
    def arrow_map(self) -> dict:
        return {a[0]: (a[1], a[2]) for a in self.arrows}

    @cached_property
    def vertex_pos(self) -> dict:
        return {v: k for k, v in enumerate(self.vertices)}

    def trivial(self, v) -> Path:
        return Path(v, v, ())

    def arrow_path(self, name: str) -> Path:
        s, t = self.arrow_map[name]
        return Path(s, t, (name,))

    def paths(self, max_len: int) -> list[Path]:
        """All paths of length ``<= max_len`` in (length, lexicographic) order."""
        order = {a[0]: k for k, a in enumerate(self.arrows)}
        layer = [self.trivial(v) for v in self.vertices]
        out = list(layer)
        for _ in range(max_len):
            nxt = []
            for p in layer:
                for name, s, t in self.arrows:
                    if s == p.target:
                        nxt.append(Path(p.source, t, (name,) + p.arrows))
            nxt.sort(key=lambda q: [order[a] for a in q.arrows])
            out.extend(nxt)
            layer = nxt
        return out


def compose(p: Path, q: Path) -> Path | None:
    """The product ``p*q`` (``q`` first), or None when not composable."""
    if q.target != p.source:
        return None
    return Path(q.source, p.target, p.arrows + q.arrows)


def _poly_to_paths(quiver: Quiver, poly: Mapping) -> dict:
    """Turn a parsed polynomial into ``{Path: coeff}``; products that do not compose vanish.

    Raises ValueError for unknown atoms.
    """
    out: dict = {}
    for atoms, c in poly.items():
        if not atoms:
            for v in quiver.vertices:
                key = quiver.trivial(v)
                out[key] = out.get(key, 0) + c
            continue
        cur: Path | None = None
        ok = True
        for atom in reversed(atoms):
            if atom.startswith("e_"):
                v = atom[2:]
                if v not in quiver.vertex_pos:
                    raise ValueError(f"unknown vertex in idempotent {atom!r}")
                step = quiver.trivial(v)
            elif atom in quiver.arrow_map:
                step = quiver.arrow_path(atom)
            else:
                raise ValueError(f"unknown arrow {atom!r}")
            cur = step if cur is None else compose(step, cur)
            if cur is None:
                ok = False
                break
        if ok:
            out[cur] = out.get(cur, 0) + c
    return {k: v for k, v in out.items() if v != 0}


def _strict_relation(quiver: Quiver, poly: Mapping) -> dict:
    """Like ``_poly_to_paths`` but rejects non-composable and non-parallel terms."""
    for atoms in poly:
        for left, right in zip(atoms, atoms[1:]):
            s_left = _endpoint(quiver, left, 0)
            t_right = _endpoint(quiver, right, 1)
            if s_left != t_right:
                raise ValueError(f"non-composable product {left}*{right} in relation")
    paths = _poly_to_paths(quiver, poly)
    ends = {(p.source, p.target) for p in paths}
    if len(ends) > 1:
        raise ValueError("relation is not a combination of parallel paths")
    return paths


def _endpoint(quiver: Quiver, atom: str, which: int):
    if atom.startswith("e_"):
        return atom[2:]
    if atom not in quiver.arrow_map:
        raise ValueError(f"unknown arrow {atom!r}")
    return quiver.arrow_map[atom][which]


class QuiverAlgebra:
    """Finite-dimensional quotient ``kQ / I`` with ``rad^bound = 0``.

    Attributes:
        p: field characteristic.
        quiver: the underlying quiver.
        bound: every path of length ``>= bound`` is zero.
        basis: residues of paths forming a basis, idempotents first.
        mult: structure constants, ``mult[i, j]`` is the coordinate vector of
            ``basis[i] * basis[j]``.
        relations: generators of the ideal, as ``{Path: coeff}`` dicts.
    """

    def __init__(self, quiver: Quiver, p: int, bound: int, ideal: Subspace, paths: list[Path], relations, name: str = ""):
        la.PrimeField(p)
        self.quiver = quiver
        self.p = p
        self.bound = bound
        self.name = name
        self.relations = relations
        self._paths = paths
        self._path_index = {q: k for k, q in enumerate(paths)}
        self._ideal = ideal
        # columns of the ideal are in reversed path order so pivots land on long paths
        n = len(paths)
        free_cols = ideal.complement_indices()
        basis_pos = sorted(n - 1 - c for c in free_cols)
        self.basis: list[Path] = [paths[k] for k in basis_pos]
        self.dim = len(self.basis)
        self.index = {b: k for k, b in enumerate(self.basis)}
        for v in quiver.vertices:
            if quiver.trivial(v) not in self.index:
                raise ValueError(f"idempotent e_{v} lies in the ideal")
        for name_, s, t in quiver.arrows:
            if Path(s, t, (name_,)) not in self.index:
                raise ValueError(f"arrow {name_} is not part of a basis; ideal is not admissible")
        # normal form of every path of length < bound, as algebra coordinates
        red = ideal.reduce(np.eye(n, dtype=DTYPE)[:, ::-1][:, :])  # row k = path k in reversed columns
        keep = [n - 1 - k for k in basis_pos]
        nf = red[:, keep]  # row k: coordinates of paths[k]
        self._nf = nf % p
        self.sources = np.array([quiver.vertex_pos[b.source] for b in self.basis], dtype=np.intp)
        self.targets = np.array([quiver.vertex_pos[b.target] for b in self.basis], dtype=np.intp)
        self.mult = self._structure_constants()

    # -- construction helpers -------------------------------------------------
    def _path_vector(self, path: Path | None) -> np.ndarray:
        if path is None or path.length >= self.bound:
            return np.zeros(self.dim, dtype=DTYPE)
        return self._nf[self._path_index[path]].copy()

    def _structure_constants(self) -> np.ndarray:
        d = self.dim
        t = np.zeros((d, d, d), dtype=DTYPE)
        for i, bi in enumerate(self.basis):
            for j, bj in enumerate(self.basis):
                if bi.source == bj.target:
                    t[i, j] = self._path_vector(compose(bi, bj))
        return t

    # -- elements ---------------------------------------------------------------
    @property
    def vertices(self) -> tuple:
        return self.quiver.vertices

    def idempotent(self, v) -> np.ndarray:
        return self._path_vector(self.quiver.trivial(str(v)) if str(v) in self.quiver.vertex_pos else _bad_vertex(v))

    def one(self) -> np.ndarray:
        return sum(self.idempotent(v) for v in self.vertices) % self.p

    def arrow(self, name: str) -> np.ndarray:
        return self._path_vector(self.quiver.arrow_path(name))

    def path_element(self, path: Path) -> np.ndarray:
        return self._path_vector(path)

    def element(self, expr) -> np.ndarray:
        """Coordinates of a path expression (string or parsed polynomial)."""
        poly = parse_path_expr(expr) if isinstance(expr, str) else expr
        out = np.zeros(self.dim, dtype=DTYPE)
        for path, c in _poly_to_paths(self.quiver, poly).items():
            out = (out + c * self._path_vector(path)) % self.p
        return out

    def format_element(self, x) -> str:
        x = np.asarray(x) % self.p
        parts = []
        for k in np.flatnonzero(x):
            c = int(x[k])
            lab = self.basis[k].label()
            parts.append(lab if c == 1 else f"{c}*{lab}")
        return " + ".join(parts) if parts else "0"

    def product(self, x, y) -> np.ndarray:
        x = np.asarray(x, dtype=DTYPE)
        y = np.asarray(y, dtype=DTYPE)
        return np.einsum("i,j,ijk->k", x, y, self.mult) % self.p

    def left_matrix(self, x) -> np.ndarray:
        """Matrix of ``y -> x*y``."""
        return np.einsum("i,ijk->kj", np.asarray(x, dtype=DTYPE), self.mult) % self.p

    def right_matrix(self, x) -> np.ndarray:
        """Matrix of ``y -> y*x``."""
        return np.einsum("j,ijk->ki", np.asarray(x, dtype=DTYPE), self.mult) % self.p

    def basis_of(self, target=None, source=None) -> list[int]:
        """Basis indices of ``e_target A e_source`` (either may be None)."""
        out = []
        for k, b in enumerate(self.basis):
            if (target is None or b.target == target) and (source is None or b.source == source):
                out.append(k)
        return out

    def radical_degree(self) -> np.ndarray:
        return np.array([b.length for b in self.basis])

    def check_associativity(self) -> bool:
        left = np.einsum("ijm,mkl->ijkl", self.mult, self.mult) % self.p
        right = np.einsum("jkm,iml->ijkl", self.mult, self.mult) % self.p
        return bool(np.array_equal(left, right))

    def __repr__(self) -> str:
        return f"QuiverAlgebra({self.name or '?'}, dim={self.dim}, p={self.p})"


def _bad_vertex(v):
    raise ValueError(f"unknown vertex {v!r}")


def _closure_vectors(quiver: Quiver, paths: list[Path], bound: int, p: int):
    """Index maps for left/right multiplication of paths by arrows, in reversed columns."""
    n = len(paths)
    idx = {q: k for k, q in enumerate(paths)}
    col = lambda k: n - 1 - k  # noqa: E731
    left, right = {}, {}
    for name, s, t in quiver.arrows:
        a = Path(s, t, (name,))
        lsrc, ldst, rsrc, rdst = [], [], [], []
        for k, q in enumerate(paths):
            aq = compose(a, q)
            if aq is not None and aq.length < bound:
                lsrc.append(col(k))
                ldst.append(col(idx[aq]))
            qa = compose(q, a)
            if qa is not None and qa.length < bound:
                rsrc.append(col(k))
                rdst.append(col(idx[qa]))
        left[name] = (np.array(lsrc, dtype=np.intp), np.array(ldst, dtype=np.intp))
        right[name] = (np.array(rsrc, dtype=np.intp), np.array(rdst, dtype=np.intp))
    return left, right


def _saturate(space: Subspace, seeds, left, right) -> Subspace:
    """Close ``space`` under multiplication by arrows on both sides."""
    queue = []
    for v in seeds:
        if space.add(v):
            queue.append(np.asarray(v, dtype=DTYPE) % space.p)
    while queue:
        v = queue.pop()
        for maps in (left, right):
            for src, dst in maps.values():
                w = np.zeros(space.n, dtype=DTYPE)
                if src.size:
                    np.add.at(w, dst, v[src])
                w %= space.p
                if w.any() and space.add(w):
                    queue.append(w)
    return space


def build_algebra(
    quiver: Quiver,
    relations: Sequence,
    bound: int,
    p: int,
    zero_paths: Sequence[int] = (),
    name: str = "",
) -> QuiverAlgebra:
    """Build ``kQ/I`` where ``I`` is generated by ``relations`` and all paths of length ``bound``.

    Args:
        quiver: the quiver.
        relations: path expressions (strings or parsed polynomials), each a
            combination of parallel paths.
        bound: nilpotency bound ``N >= 2``.
        p: field characteristic.
        zero_paths: lengths ``L`` for which every path of length ``L`` between
            distinct vertices is declared zero.
        name: optional label.
    """
    if bound < 2:
        raise ValueError("nilpotency bound must be at least 2")
    paths = quiver.paths(bound - 1)
    n = len(paths)
    idx = {q: k for k, q in enumerate(paths)}
    rels = []
    for r in relations:
        poly = parse_path_expr(r) if isinstance(r, str) else r
        rels.append(_strict_relation(quiver, poly))
    for length in zero_paths:
        for q in paths:
            if q.length == length and q.source != q.target:
                rels.append({q: 1})
    seeds = []
    for r in rels:
        v = np.zeros(n, dtype=DTYPE)
        for q, c in r.items():
            if q.length < bound:
                v[n - 1 - idx[q]] = (v[n - 1 - idx[q]] + c) % p
        seeds.append(v)
    left, right = _closure_vectors(quiver, paths, bound, p)
    ideal = _saturate(Subspace(n, p), seeds, left, right)
    return QuiverAlgebra(quiver, p, bound, ideal, paths, rels, name=name)


# ---------------------------------------------------------------------------
# automorphisms


class Automorphism:
    """Algebra automorphism given by a vertex permutation and arrow images.

    Attributes:
        algebra: the algebra acted on.
        perm: dict vertex -> vertex.
        matrix: ``matrix[:, k]`` is the image of ``basis[k]``.
    """

    def __init__(self, algebra: QuiverAlgebra, perm: Mapping, matrix: np.ndarray, name: str = ""):
        self.algebra = algebra
        self.perm = dict(perm)
        self.matrix = np.asarray(matrix, dtype=DTYPE) % algebra.p
        self.name = name

    def apply(self, x) -> np.ndarray:
        return (self.matrix @ np.asarray(x, dtype=DTYPE)) % self.algebra.p

    @cached_property
    def inverse(self) -> "Automorphism":
        inv = {w: v for v, w in self.perm.items()}
        return Automorphism(self.algebra, inv, la.inverse(self.matrix, self.algebra.p), self.name + "^-1")

    def then(self, other: "Automorphism") -> "Automorphism":
        """The composite ``other o self``."""
        perm = {v: other.perm[self.perm[v]] for v in self.perm}
        return Automorphism(self.algebra, perm, (other.matrix @ self.matrix) % self.algebra.p)

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.matrix, np.eye(self.algebra.dim, dtype=DTYPE)))

    def cycles(self) -> list[tuple]:
        """Non-trivial cycles of the vertex permutation."""
        seen, out = set(), []
        for v in self.algebra.vertices:
            if v in seen:
                continue
            cyc = [v]
            seen.add(v)
            w = self.perm[v]
            while w != v:
                cyc.append(w)
                seen.add(w)
                w = self.perm[w]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_string(self) -> str:
        cyc = self.cycles()
        return "".join("(" + ",".join(c) + ")" for c in cyc) if cyc else "id"


def identity_automorphism(algebra: QuiverAlgebra) -> Automorphism:
    return Automorphism(algebra, {v: v for v in algebra.vertices}, np.eye(algebra.dim, dtype=DTYPE), "id")


def check_automorphism(algebra: QuiverAlgebra, perm: Mapping, arrow_images: Mapping, name: str = "") -> Automorphism:
    """Validate an automorphism given on generators and return its linear map.

    Raises:
        ValueError: endpoint mismatch, a relation not preserved, or a map
            that is not bijective.
    """
    q = algebra.quiver
    perm = {str(k): str(v) for k, v in perm.items()}
    if set(perm) != set(q.vertices) or set(perm.values()) != set(q.vertices):
        raise ValueError("vertex map is not a permutation of the vertex set")
    missing = set(q.arrow_map) - set(arrow_images)
    if missing:
        raise ValueError(f"no image given for arrows {sorted(missing)}")
    images = {}
    for a, expr in arrow_images.items():
        if a not in q.arrow_map:
            raise ValueError(f"unknown arrow {a!r}")
        img = algebra.element(expr)
        s, t = q.arrow_map[a]
        proj = algebra.product(algebra.idempotent(perm[t]), algebra.product(img, algebra.idempotent(perm[s])))
        if not np.array_equal(proj, img) or not img.any():
            raise ValueError(f"image of arrow {a} is not a nonzero element from e_{perm[s]} to e_{perm[t]}")
        images[a] = img
    mat = np.zeros((algebra.dim, algebra.dim), dtype=DTYPE)
    for k, b in enumerate(algebra.basis):
        mat[:, k] = _image_of_path(algebra, b, perm, images)
    aut = Automorphism(algebra, perm, mat, name)
    for r in algebra.relations:
        acc = np.zeros(algebra.dim, dtype=DTYPE)
        for path, c in r.items():
            acc = (acc + c * _image_of_path(algebra, path, perm, images)) % algebra.p
        if acc.any():
            raise ValueError(f"relation {_format_rel(r)} is not preserved")
    if not la.is_invertible(mat, algebra.p):
        raise ValueError("induced linear map is not bijective")
    return aut


def _format_rel(r: Mapping) -> str:
    return " + ".join(f"{c}*{p.label()}" for p, c in r.items())


def _image_of_path(algebra: QuiverAlgebra, path: Path, perm, images) -> np.ndarray:
    if not path.arrows:
        return algebra.idempotent(perm[path.source])
    out = images[path.arrows[0]]
    for a in path.arrows[1:]:
        out = algebra.product(out, images[a])
    return out


def is_algebra_map(src: QuiverAlgebra, dst: QuiverAlgebra, matrix: np.ndarray) -> bool:
    """Whether ``matrix`` (columns = images of src basis) is multiplicative and unital."""
    m = np.asarray(matrix, dtype=DTYPE) % dst.p
    lhs = np.einsum("ijk,lk->ijl", src.mult, m) % dst.p
    rhs = np.einsum("ai,bj,abl->ijl", m, m, dst.mult) % dst.p
    return bool(np.array_equal(lhs, rhs)) and bool(np.array_equal(m @ src.one() % dst.p, dst.one()))


# ---------------------------------------------------------------------------
# subalgebras


@dataclass
class Embedding:
    """An injective unital algebra map ``sub -> ambient``.

    Attributes:
        sub: the subalgebra as a quiver algebra in its own right.
        ambient: the ambient algebra.
        matrix: ``matrix[:, k]`` is the image of ``sub.basis[k]``.
        vertex_sets: for each subalgebra vertex, the ambient vertices whose
            idempotents sum to it.
    """

    sub: QuiverAlgebra
    ambient: QuiverAlgebra
    matrix: np.ndarray
    vertex_sets: dict = field(default_factory=dict)

    def image(self, x) -> np.ndarray:
        return (self.matrix @ np.asarray(x, dtype=DTYPE)) % self.ambient.p

    def arrow_image(self, name: str) -> np.ndarray:
        return self.image(self.sub.arrow(name))

    @cached_property
    def vertex_of(self) -> dict:
        """Ambient vertex -> subalgebra vertex."""
        return {w: v for v, ws in self.vertex_sets.items() for w in ws}


def identity_embedding(algebra: QuiverAlgebra) -> Embedding:
    return Embedding(algebra, algebra, np.eye(algebra.dim, dtype=DTYPE), {v: (v,) for v in algebra.vertices})


def subalgebra(
    ambient: QuiverAlgebra,
    idempotents: Mapping,
    arrows: Mapping,
    name: str = "",
) -> Embedding:
    """Subalgebra generated by orthogonal idempotents and radical elements.

    Args:
        ambient: the ambient algebra.
        idempotents: name -> expression; each must be a sum of vertex
            idempotents of ``ambient``, and together they must partition the
            vertex set (so the subalgebra is unital in the ambient algebra).
        arrows: name -> expression; each must lie in ``f_t * rad * f_s`` for
            unique idempotent generators ``f_s``, ``f_t``.

    Returns:
        An ``Embedding`` whose ``sub`` is presented by the quiver of the
        generators modulo the kernel of the evaluation map.
    """
    p = ambient.p
    vsets: dict = {}
    for v, expr in idempotents.items():
        x = ambient.element(expr)
        ws = []
        for w in ambient.vertices:
            c = int(x[ambient.index[ambient.quiver.trivial(w)]])
            if c not in (0, 1):
                raise ValueError(f"idempotent {v} is not a sum of vertex idempotents")
            if c:
                ws.append(w)
        rest = x.copy()
        for w in ws:
            rest = (rest - ambient.idempotent(w)) % p
        if rest.any() or not ws:
            raise ValueError(f"idempotent {v} is not a nonempty sum of vertex idempotents")
        vsets[str(v)] = tuple(ws)
    covered = [w for ws in vsets.values() for w in ws]
    if sorted(covered) != sorted(ambient.vertices):
        raise ValueError("idempotent generators must partition the vertices of the ambient algebra")
    f = {v: sum(ambient.idempotent(w) for w in ws) % p for v, ws in vsets.items()}
    qarrows, images = [], {}
    for a, expr in arrows.items():
        x = ambient.element(expr)
        if x[[ambient.index[ambient.quiver.trivial(w)] for w in ambient.vertices]].any():
            raise ValueError(f"generator {a} is not in the radical")
        ends = [
            (s, t)
            for s in vsets
            for t in vsets
            if ambient.product(ambient.product(f[t], x), f[s]).any()
        ]
        if len(ends) != 1 or not np.array_equal(ambient.product(ambient.product(f[ends[0][1]], x), f[ends[0][0]]), x):
            raise ValueError(f"generator {a} does not run between a single pair of idempotents")
        qarrows.append((str(a), ends[0][0], ends[0][1]))
        images[str(a)] = x
    quiver = Quiver(tuple(vsets), tuple(qarrows))
    bound = ambient.bound
    paths = quiver.paths(bound - 1)
    n = len(paths)
    evals = np.zeros((n, ambient.dim), dtype=DTYPE)
    for k, q in enumerate(paths):
        if not q.arrows:
            evals[k] = f[q.source]
        else:
            x = images[q.arrows[0]]
            for a in q.arrows[1:]:
                x = ambient.product(x, images[a])
            evals[k] = x
    # kernel of the evaluation map, in reversed path columns
    rev = evals[::-1]
    kernel = la.nullspace(rev.T, p)
    ideal = Subspace(n, p, kernel if kernel.size else None)
    rels = _minimal_relations(quiver, paths, bound, p, kernel)
    sub = QuiverAlgebra(quiver, p, bound, ideal, paths, rels, name=name)
    mat = np.zeros((ambient.dim, sub.dim), dtype=DTYPE)
    idx = {q: k for k, q in enumerate(paths)}
    for k, b in enumerate(sub.basis):
        mat[:, k] = evals[idx[b]]
    if la.rank(mat, p) != sub.dim:
        raise AssertionError("subalgebra evaluation map is not injective on the basis")
    return Embedding(sub, ambient, mat, vsets)


def _minimal_relations(quiver, paths, bound, p, kernel) -> list:
    """A small generating set of the ideal spanned by ``kernel`` (rows, reversed columns)."""
    n = len(paths)
    left, right = _closure_vectors(quiver, paths, bound, p)
    gen = Subspace(n, p)
    rels = []
    rows = sorted(
        (r for r in kernel),
        key=lambda r: -int(np.flatnonzero(r)[-1]) if r.any() else 0,
    )
    for r in rows:
        if gen.contains(r):
            continue
        _saturate(gen, [r], left, right)
        rels.append({paths[n - 1 - c]: int(r[c]) for c in np.flatnonzero(r)})
    return rels


# ---------------------------------------------------------------------------
# invariants


def cartan_matrix(algebra: QuiverAlgebra) -> np.ndarray:
    """Entry ``(i, j)`` is ``dim e_j A e_i``, the multiplicity of ``S_j`` in ``P_i = A e_i``."""
    nv = len(algebra.vertices)
    c = np.zeros((nv, nv), dtype=np.int64)
    np.add.at(c, (algebra.sources, algebra.targets), 1)
    return c


@dataclass
class SymmetricReport:
    symmetric: bool
    form: np.ndarray | None
    trace_space_dim: int
    searched: int
    exhaustive: bool


def verify_symmetric(algebra: QuiverAlgebra, seed: int = 0, trials: int = 64) -> SymmetricReport:
    """Search for a symmetrizing form.

    Symmetric forms are the linear forms vanishing on all commutators
    ``xy - yx``.  A form ``lam`` is symmetrizing when the Gram matrix
    ``lam(b_i b_j)`` is invertible.  The space of symmetric forms is swept
    exhaustively when it has at most ``3**12`` points, else sampled.
    """
    p = algebra.p
    d = algebra.dim
    comm = (algebra.mult - algebra.mult.transpose(1, 0, 2)).reshape(d * d, d) % p
    forms = la.nullspace(comm, p)  # rows: symmetric forms
    k = forms.shape[0]
    if k == 0:
        return SymmetricReport(False, None, 0, 0, True)
    gram_basis = np.einsum("ijk,fk->fij", algebra.mult, forms) % p  # (k, d, d)
    exhaustive = p ** k <= 3 ** 12
    if exhaustive:
        coeffs = np.array(list(itertools.product(range(p), repeat=k))[1:], dtype=DTYPE)
    else:
        rng = np.random.default_rng(seed)
        coeffs = rng.integers(0, p, size=(trials, k), dtype=DTYPE)
    searched = 0
    for start in range(0, len(coeffs), 256):
        chunk = coeffs[start : start + 256]
        grams = np.einsum("bf,fij->bij", chunk, gram_basis) % p
        ok = la.batched_invertible(grams, p)
        searched += len(chunk)
        if ok.any():
            c = chunk[int(np.argmax(ok))]
            lam = (c @ forms) % p
            return SymmetricReport(True, lam, k, searched, exhaustive)
    return SymmetricReport(False, None, k, searched, exhaustive)


def is_symmetrizing(algebra: QuiverAlgebra, lam) -> bool:
    lam = np.asarray(lam, dtype=DTYPE) % algebra.p
    gram = np.einsum("ijk,k->ij", algebra.mult, lam) % algebra.p
    return bool(np.array_equal(gram, gram.T)) and la.is_invertible(gram, algebra.p)
