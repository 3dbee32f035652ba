"""Two-term combinatorial tilting complexes and homotopy-category homs.

Complexes of projective left modules are stored combinatorially: the term in
homological degree ``n`` is a tuple of vertices ``(u_1, ..., u_r)`` standing
for ``P_{u_1} + ... + P_{u_r}``, and a map between such sums is a matrix of
algebra elements.  The entry for ``P_u -> P_v`` lies in ``e_u A e_v`` and
acts by ``x -> x * a``; composing ``f`` then ``g`` multiplies their matrices
in that order.  The differential ``D_n`` goes from degree ``n`` to ``n - 1``.

For a subset ``J`` of vertices the tilting complex is the sum of ``T_j``
(``Q -> P_j`` in degrees 1 and 0) for ``j`` in ``J`` and of ``P_i`` placed in
degree 1 for the remaining vertices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import exactla as la
from .exactla import Subspace
from .qalg import QuiverAlgebra
from .rep import (
    DTYPE,
    LEFT,
    ModuleHom,
    Representation,
    _quotient_of,
    _radical_space,
    _submodule_of,
    hom_space,
    loewy_series,
    omega,
    projective_cover,
    simple_module,
)
from .report import Report

__all__ = [
    "ProjComplex",
    "SerreApprox",
    "TiltingReport",
    "serre_approx",
    "tilting_summand",
    "combinatorial_tilting_complex",
    "direct_sum_complex",
    "homotopy_hom",
    "chain_map_space",
    "end_top_dim",
    "verify_tilting",
    "ext1_dim",
    "perversity_string",
]


@dataclass
class ProjComplex:
    """Bounded complex of projective left modules.

    Attributes:
        algebra: The algebra.
        terms: Homological degree -> tuple of vertices.
        diffs: Degree ``n`` -> dict ``(k, l) -> element`` for the entry
            from summand ``k`` of degree ``n`` to summand ``l`` of degree
            ``n - 1``; missing entries are zero.
        name: Display label.
    """

    algebra: QuiverAlgebra
    terms: dict
    diffs: dict = field(default_factory=dict)
    name: str = ""

    def term(self, n: int) -> tuple:
        return tuple(self.terms.get(n, ()))

    def degrees(self) -> list[int]:
        return sorted(n for n, t in self.terms.items() if t)

    def diff_entry(self, n: int, k: int, l: int) -> np.ndarray | None:
        return self.diffs.get(n, {}).get((k, l))

    def length(self) -> int:
        d = self.degrees()
        return d[-1] - d[0] if d else 0

    def is_complex(self) -> bool:
        alg = self.algebra
        for n in self.degrees():
            src, mid, dst = self.term(n), self.term(n - 1), self.term(n - 2)
            for k in range(len(src)):
                for l in range(len(dst)):
                    acc = np.zeros(alg.dim, dtype=DTYPE)
                    for m in range(len(mid)):
                        a, b = self.diff_entry(n, k, m), self.diff_entry(n - 1, m, l)
                        if a is not None and b is not None:
                            acc = (acc + alg.product(a, b)) % alg.p
                    if acc.any():
                        return False
        return True

    def describe(self) -> str:
        parts = []
        for n in sorted(self.degrees(), reverse=True):
            t = self.term(n)
            parts.append(f"deg {n}: " + " + ".join(f"P{v}" for v in t))
        return "; ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"ProjComplex({self.name or '?'}: {self.describe()})"


def direct_sum_complex(parts: Sequence[ProjComplex], name: str = "") -> ProjComplex:
    """Termwise direct sum."""
    if not parts:
        raise ValueError("direct sum of no complexes")
    alg = parts[0].algebra
    terms: dict = {}
    offsets: list[dict] = []
    for c in parts:
        off = {}
        for n in c.degrees():
            off[n] = len(terms.get(n, ()))
            terms[n] = tuple(terms.get(n, ())) + c.term(n)
        offsets.append(off)
    diffs: dict = {}
    for c, off in zip(parts, offsets):
        for n, entries in c.diffs.items():
            for (k, l), a in entries.items():
                diffs.setdefault(n, {})[(k + off[n], l + off.get(n - 1, 0))] = a
    return ProjComplex(alg, terms, diffs, name or " + ".join(c.name for c in parts))


# ---------------------------------------------------------------------------
# Serre quotient approximation


@dataclass
class SerreApprox:
    """Largest quotient of ``P(M)`` whose kernel part has factors in ``J``.

    Iterating yields ``(module, map)``.

    Attributes:
        module: ``M_J = P(M) / K'``.
        map: The projection ``P(M) -> M_J``.
        cover: The projective cover ``P(M)`` of ``M``.
        kernel: ``K``, the kernel of ``P(M) -> M`` (subspace of ``P(M)``).
        rejected: ``K'``, the stable term of the reject chain.
        steps: Number of strict steps taken by the chain.
    """

    module: Representation
    map: ModuleHom
    cover: Representation
    cover_vertices: tuple
    kernel: Subspace
    rejected: Subspace
    steps: int

    def __iter__(self):
        yield self.module
        yield self.map


def _generated(m: Representation, vectors: np.ndarray) -> Subspace:
    """Submodule of ``m`` generated by the rows of ``vectors``."""
    if vectors.size == 0:
        return Subspace(m.dim, m.p)
    imgs = np.einsum("kij,rj->kri", m.basis_actions, vectors).reshape(-1, m.dim) % m.p
    return Subspace(m.dim, m.p, imgs)


def _reject_step(m: Representation, space: Subspace, J: set) -> Subspace:
    """Intersection of the kernels of all maps ``space -> S_j``, ``j`` in ``J``.

    This is ``rad(space)`` plus the submodule generated by the components of
    ``space`` at vertices outside ``J``.
    """
    if space.dim == 0:
        return space
    basis = space.basis
    rad_rows = [basis @ A.T % m.p for A in m.mats.values()]
    rows = [r for r in rad_rows if r.any()]
    outside = [k for k, v in enumerate(m.algebra.vertices) if v not in J]
    mask = np.isin(m.tags, outside)
    proj = basis * mask[None, :]
    if proj.any():
        rows.append(proj)
    if not rows:
        return Subspace(m.dim, m.p)
    gen = np.concatenate(rows, axis=0)
    return _generated(m, gen[gen.any(axis=1)])


def serre_approx(m: Representation, J: Iterable) -> SerreApprox:
    """Approximation ``P(M) -> M_J`` of ``M`` by the Serre subcategory of ``J``.

    ``K'`` is reached by the reject chain ``K_0 = K``,
    ``K_{m+1} = rad K_m + A (sum of e_i K_m, i not in J)``, which stops as
    soon as two terms agree.
    """
    if m.side != LEFT:
        raise ValueError("left modules only")
    J = {str(j) for j in J}
    bad = J - set(m.algebra.vertices)
    if bad:
        raise ValueError(f"unknown vertices {sorted(bad)}")
    cov = projective_cover(m)
    P = cov.module
    ker = la.nullspace(cov.map.matrix, m.p)
    K = Subspace(P.dim, m.p, ker if ker.size else None)
    cur, steps = K, 0
    while True:
        nxt = _reject_step(P, cur, J)
        if nxt.dim == cur.dim:
            break
        cur, steps = nxt, steps + 1
    MJ, proj = _quotient_of(P, cur)
    MJ.name = f"{m.label()}_J"
    return SerreApprox(MJ, proj, P, cov.vertices, K, cur, steps)


# ---------------------------------------------------------------------------
# tilting complexes


def _embed_in_algebra(alg: QuiverAlgebra, v: str, vec: np.ndarray) -> np.ndarray:
    """Element of ``A e_v`` given in the basis of ``projective_module(alg, v)``."""
    out = np.zeros(alg.dim, dtype=DTYPE)
    out[alg.basis_of(source=v)] = vec
    return out


def tilting_summand(alg: QuiverAlgebra, v, J: Iterable) -> tuple[ProjComplex, SerreApprox | None]:
    """``T_v = (Q -> P_v)`` for ``v`` in ``J``, else ``P_v`` in degree 1."""
    v = str(v)
    J = {str(j) for j in J}
    if v not in J:
        return ProjComplex(alg, {1: (v,)}, {}, f"P{v}[1]"), None
    approx = serre_approx(simple_module(alg, v), J)
    P = approx.cover
    sub, inc = _submodule_of(P, approx.rejected)
    if sub.dim == 0:
        return ProjComplex(alg, {0: (v,)}, {}, f"T{v}"), approx
    cov = projective_cover(sub)
    gens = cov.generators @ inc.matrix.T % alg.p  # rows in P_v coordinates
    entries = {(k, 0): _embed_in_algebra(alg, v, g) for k, g in enumerate(gens)}
    return ProjComplex(alg, {1: tuple(cov.vertices), 0: (v,)}, {1: entries}, f"T{v}"), approx


def combinatorial_tilting_complex(alg: QuiverAlgebra, J: Iterable) -> list[ProjComplex]:
    """Indecomposable summands of the basic tilting complex at ``J``, one per vertex."""
    J = [str(j) for j in J]
    bad = set(J) - set(alg.vertices)
    if bad:
        raise ValueError(f"unknown vertices {sorted(bad)}")
    return [tilting_summand(alg, v, J)[0] for v in alg.vertices]


# ---------------------------------------------------------------------------
# homotopy category


class _Layout:
    """Coordinates for a map of degree ``d`` from ``X`` to ``Y`` (``X_n -> Y_{n-d}``)."""

    def __init__(self, X: ProjComplex, Y: ProjComplex, d: int):
        alg = X.algebra
        self.blocks = []  # (n, k, l, basis indices)
        self.offset = {}
        pos = 0
        for n in X.degrees():
            for k, u in enumerate(X.term(n)):
                for l, w in enumerate(Y.term(n - d)):
                    idx = np.asarray(alg.basis_of(target=u, source=w), dtype=np.intp)
                    self.blocks.append((n, k, l, idx))
                    self.offset[(n, k, l)] = pos
                    pos += len(idx)
        self.size = pos

    def unpack(self, vec: np.ndarray, dim: int) -> dict:
        out = {}
        for n, k, l, idx in self.blocks:
            o = self.offset[(n, k, l)]
            x = np.zeros(dim, dtype=DTYPE)
            x[idx] = vec[o : o + len(idx)]
            out[(n, k, l)] = x
        return out

    def pack(self, entries: dict) -> np.ndarray:
        out = np.zeros(self.size, dtype=DTYPE)
        for n, k, l, idx in self.blocks:
            x = entries.get((n, k, l))
            if x is not None:
                o = self.offset[(n, k, l)]
                out[o : o + len(idx)] = x[idx]
        return out


def _differential_terms(X: ProjComplex, Y: ProjComplex, F: dict, d: int) -> dict:
    """``D^X_n F_{n-1} - (-1)^d F_n D^Y_{n-d}`` for a map ``F`` of degree ``d``, entrywise."""
    alg = X.algebra
    p = alg.p
    sign = -1 if d % 2 == 0 else 1
    out: dict = {}
    for (n, k, m), a in F.items():
        if not a.any():
            continue
        # F_n then D^Y_{n-d}: contributes to (n, k, l) with l in Y_{n-d-1}
        for l in range(len(Y.term(n - d - 1))):
            b = Y.diff_entry(n - d, m, l)
            if b is not None:
                key = (n, k, l)
                out[key] = (out.get(key, 0) + sign * alg.product(a, b)) % p
        # D^X_{n+1} then F_n: contributes to (n + 1, k', m)
        for k2 in range(len(X.term(n + 1))):
            b = X.diff_entry(n + 1, k2, k)
            if b is not None:
                key = (n + 1, k2, m)
                out[key] = (out.get(key, 0) + alg.product(b, a)) % p
    return out


def _residual_layout(X: ProjComplex, Y: ProjComplex, d: int) -> tuple[dict, int]:
    """Full algebra coordinates for each entry of ``X_n -> Y_{n-d-1}``."""
    alg = X.algebra
    offs, pos = {}, 0
    degs = set(X.degrees()) | {n + 1 for n in X.degrees()}
    for n in sorted(degs):
        for k in range(len(X.term(n))):
            for l in range(len(Y.term(n - d - 1))):
                offs[(n, k, l)] = pos
                pos += alg.dim
    return offs, pos


def chain_map_space(X: ProjComplex, Y: ProjComplex, d: int = 0) -> tuple[np.ndarray, _Layout]:
    """Basis (rows) of chain maps ``X -> Y[d]`` in the coordinates of a ``_Layout``.

    The shifted complex ``Y[d]`` has ``Y_{n-d}`` in degree ``n`` and
    differential ``(-1)^d D^Y``.
    """
    alg = X.algebra
    lay = _Layout(X, Y, d)
    if lay.size == 0:
        return np.zeros((0, 0), dtype=DTYPE), lay
    roffs, rsize = _residual_layout(X, Y, d)
    cols = []
    for c in range(lay.size):
        u = np.zeros(lay.size, dtype=DTYPE)
        u[c] = 1
        res = _differential_terms(X, Y, lay.unpack(u, alg.dim), d)
        col = np.zeros(rsize, dtype=DTYPE)
        for key, val in res.items():
            if key in roffs:
                col[roffs[key] : roffs[key] + alg.dim] = val
        cols.append(col)
    eq = np.stack(cols, axis=1) if rsize else np.zeros((0, lay.size), dtype=DTYPE)
    Z = la.nullspace(eq, alg.p) if eq.size else np.eye(lay.size, dtype=DTYPE)
    return Z, lay


def _null_homotopic(X: ProjComplex, Y: ProjComplex, d: int, lay: _Layout) -> np.ndarray:
    """Rows spanning the null-homotopic maps ``X -> Y[d]``."""
    alg = X.algebra
    p = alg.p
    hl = _Layout(X, Y, d - 1)
    sign = 1 if d % 2 == 0 else -1
    rows = []
    for c in range(hl.size):
        u = np.zeros(hl.size, dtype=DTYPE)
        u[c] = 1
        H = hl.unpack(u, alg.dim)
        F: dict = {}
        for (n, k, m), h in H.items():
            if not h.any():
                continue
            # H_n then the differential of Y[d]
            for l in range(len(Y.term(n - d))):
                b = Y.diff_entry(n - d + 1, m, l)
                if b is not None:
                    key = (n, k, l)
                    F[key] = (F.get(key, 0) + sign * alg.product(h, b)) % p
            # D^X_{n+1} then H_n
            for k2 in range(len(X.term(n + 1))):
                b = X.diff_entry(n + 1, k2, k)
                if b is not None:
                    key = (n + 1, k2, m)
                    F[key] = (F.get(key, 0) + alg.product(b, h)) % p
        rows.append(lay.pack(F))
    return np.stack(rows) if rows else np.zeros((0, lay.size), dtype=DTYPE)


def homotopy_hom(X: ProjComplex, Y: ProjComplex, shift: int = 0) -> int:
    """``dim Hom_K(X, Y[shift])``: chain maps modulo null-homotopic maps."""
    Z, lay = chain_map_space(X, Y, shift)
    if lay.size == 0 or Z.shape[0] == 0:
        return 0
    B = _null_homotopic(X, Y, shift, lay)
    rb = la.rank(B, X.algebra.p) if B.size else 0
    return Z.shape[0] - rb


def end_top_dim(X: ProjComplex) -> int:
    """Rank of the idempotent parts of chain endomorphisms of ``X``.

    For a complex with radical differentials this is the dimension of
    ``End(X)`` modulo its radical, so ``1`` means ``X`` is indecomposable.
    """
    alg = X.algebra
    Z, lay = chain_map_space(X, X, 0)
    if Z.shape[0] == 0:
        return 0
    cols = []
    for n, k, l, idx in lay.blocks:
        u = X.term(n)[k]
        w = X.term(n)[l]
        if u != w:
            continue
        e = alg.index[alg.quiver.trivial(u)]
        pos = list(idx).index(e)
        cols.append(lay.offset[(n, k, l)] + pos)
    if not cols:
        return 0
    return la.rank(Z[:, cols], alg.p)


def ext1_dim(alg: QuiverAlgebra, i, j) -> int:
    """``dim Ext^1(S_i, S_j) = dim Hom(Omega S_i, S_j)``."""
    return len(hom_space(omega(simple_module(alg, i)), simple_module(alg, j)))


def _fmt_set(vs: Sequence[str]) -> str:
    return "∅" if not vs else "{" + ",".join(vs) + "}"


def perversity_string(alg: QuiverAlgebra, J: Iterable) -> str:
    """The filtration ``∅ ⊂_0 J ⊂_{-1} I`` for the tilt at ``J``."""
    Js = [v for v in alg.vertices if v in {str(j) for j in J}]
    return f"∅ ⊂_0 {_fmt_set(Js)} ⊂_{{-1}} {_fmt_set(list(alg.vertices))}"


@dataclass
class TiltingReport(Report):
    """Report on a combinatorial tilting complex.

    Attributes:
        hom_dims: Shift -> ``dim Hom_K(T, T[shift])``.
        summands: One dict per indecomposable summand (label, terms, top dim).
        perversity: The perversity filtration.
        end_dim: ``dim End_K(T)``.
    """

    hom_dims: dict = field(default_factory=dict)
    summands: list = field(default_factory=list)
    perversity: str = ""
    end_dim: int = 0

    def to_dict(self, timings: bool = False) -> dict:
        out = super().to_dict(timings)
        out["hom_dims"] = {str(k): v for k, v in self.hom_dims.items()}
        out["summands"] = self.summands
        out["perversity"] = self.perversity
        out["end_dim"] = self.end_dim
        return out

    def text(self) -> str:
        lines = [super().text(), f"perversity: {self.perversity}", f"dim End(T) = {self.end_dim}"]
        for s in self.summands:
            lines.append(f"  {s['label']}: {s['terms']}")
        lines.append("  hom dims by shift: " + ", ".join(f"{k}: {v}" for k, v in sorted(self.hom_dims.items())))
        return "\n".join(lines)


def verify_tilting(alg: QuiverAlgebra, J: Iterable, window: int | None = None, tag: str = "combinatorial tilting complex") -> TiltingReport:
    """Build the tilting complex at ``J`` and check what can be checked.

    Checks self-orthogonality for every nonzero shift in ``[-window, window]``
    (default: length of ``T`` plus one), that every summand is indecomposable
    and that there are as many as vertices, and the degenerate cases
    ``J = ∅`` and ``J = I``.  When ``Ext^1`` vanishes between all vertices
    of ``J`` it also checks that ``T_j`` is ``P(rad P_j) -> P_j``.
    """
    Jl = [v for v in alg.vertices if v in {str(j) for j in J}]
    if len(Jl) != len(set(str(j) for j in J)):
        raise ValueError("J contains unknown vertices")
    rep = TiltingReport(f"tilting complex of {alg.name or 'A'} at {_fmt_set(Jl)}")
    parts, approx = [], {}
    with rep.timed("build"):
        for v in alg.vertices:
            c, a = tilting_summand(alg, v, Jl)
            parts.append(c)
            if a is not None:
                approx[v] = a
    T = direct_sum_complex(parts, name="T")
    rep.add("T is a complex", T.is_complex(), tag, {"terms": T.describe()})
    w = window if window is not None else T.length() + 1
    with rep.timed("homs"):
        for s in range(-w, w + 1):
            rep.hom_dims[s] = homotopy_hom(T, T, s)
    for s in range(-w, w + 1):
        if s != 0:
            rep.add(f"Hom(T, T[{s}]) = 0", rep.hom_dims[s] == 0, tag, {"dim": rep.hom_dims[s]})
    rep.end_dim = rep.hom_dims[0]
    tops = []
    for c in parts:
        t = end_top_dim(c)
        tops.append(t)
        rep.summands.append({"label": c.name, "terms": c.describe(), "end_top_dim": t, "end_dim": homotopy_hom(c, c, 0)})
    rep.add(
        "indecomposable summands = number of vertices",
        all(t == 1 for t in tops) and len(parts) == len(alg.vertices),
        tag,
        {"summands": len(parts), "vertices": len(alg.vertices), "end_top_dims": tops},
    )
    rep.perversity = perversity_string(alg, Jl)
    if not Jl:
        ok = all(c.degrees() == [1] and len(c.term(1)) == 1 for c in parts)
        rep.add("J empty: T is the sum of P_i[1]", ok, tag, {"terms": T.describe()})
    if len(Jl) == len(alg.vertices):
        ok = all(c.degrees() == [0] and len(c.term(0)) == 1 for c in parts)
        rep.add("J = I: T is A in degree 0", ok and rep.end_dim == alg.dim, tag, {"end_dim": rep.end_dim, "dim": alg.dim})
    ext_free = all(ext1_dim(alg, i, j) == 0 for i in Jl for j in Jl)
    for v in Jl:
        a = approx[v]
        rad = _radical_space(a.cover)
        same = a.rejected.dim == rad.dim and rad.contains_all(a.rejected.basis) if a.rejected.dim else rad.dim == 0
        rep.add(
            f"T{v} = P(rad P{v}) -> P{v}",
            same,
            tag,
            {"rejected_dim": a.rejected.dim, "rad_dim": rad.dim, "chain_steps": a.steps},
            applicable=ext_free,
        )
        rep.add(
            f"rad of {v}_J has factors in J",
            all(x in Jl for layer in loewy_series(a.module)[1:] for x in layer),
            tag,
            {"loewy": str(loewy_series(a.module))},
        )
    return rep
