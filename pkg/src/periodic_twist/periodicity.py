"""Periodicity and strong periodicity of modules.

Plain periodicity compares ``Omega^n(M)`` with the twisted module ``sigma M``.
Strong periodicity is checked against an explicit exact sequence of
bimodules ``0 -> sigma E -> Y_{n-1} -> ... -> Y_0 -> E -> 0``: tensoring it
with ``M`` must give projective middle terms and an exact sequence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import exactla as la
from .bimod import (
    Bimodule,
    BimoduleHom,
    RegularBimodule,
    Sequence_,
    bimodule_hom_space,
    tensor_sequence_with_left_module,
    tensor_sequence_with_right_module,
    twisted_regular,
)
from .qalg import Automorphism, Embedding, QuiverAlgebra, identity_embedding
from .rep import (
    LEFT,
    RIGHT,
    SWEEP_LIMIT,
    ModuleHom,
    Presentation,
    Representation,
    direct_sum,
    dual_module,
    find_isomorphism,
    hom_module,
    is_projective,
    omega,
    projective_as_right_module,
    projective_cover,
    projective_module,
    regular_module,
    restrict,
    twist,
)
from .report import Report

__all__ = [
    "PeriodicityWitness",
    "PeriodicityReport",
    "find_bimodule_isomorphism",
    "check_periodic",
    "check_strong_periodic_left",
    "check_strong_periodic_right",
    "relative_witness_prereqs",
    "omega_sequence",
]

PeriodicityReport = Report


def find_bimodule_isomorphism(x: Bimodule, y: Bimodule, seed: int = 0, trials: int = 64) -> tuple[bool | None, BimoduleHom | None]:
    """Search the bimodule maps ``x -> y`` for an invertible one.

    Returns:
        ``(verdict, witness)``; the verdict is ``None`` when random search
        fails on a space too large to sweep.
    """
    if x.algebra is not y.algebra:
        raise ValueError("bimodules over different algebras")
    if x.dim != y.dim or not np.array_equal(x.component_dims(), y.component_dims()):
        return False, None
    if x.dim == 0:
        return True, BimoduleHom(x, y, np.zeros((0, 0), dtype=np.int64))
    homs = bimodule_hom_space(x, y)
    if not homs:
        return False, None
    p = x.p
    stack = np.stack([h.matrix for h in homs])
    rng = np.random.default_rng(seed)
    coeffs = rng.integers(0, p, size=(trials, len(homs)))
    mats = np.einsum("bh,hij->bij", coeffs, stack) % p
    ok = la.batched_invertible(mats, p)
    if ok.any():
        return True, BimoduleHom(x, y, mats[int(np.argmax(ok))])
    if p ** len(homs) > SWEEP_LIMIT:
        return None, None
    from .rep import _projective_points

    for chunk in _projective_points(len(homs), p, 2048):
        mats = np.einsum("bh,hij->bij", chunk, stack) % p
        ok = la.batched_invertible(mats, p)
        if ok.any():
            return True, BimoduleHom(x, y, mats[int(np.argmax(ok))])
    return False, None


@dataclass
class PeriodicityWitness:
    """An exact sequence ``0 -> sigma E -> Y_{n-1} -> ... -> Y_0 -> E -> 0``.

    Attributes:
        algebra: The algebra ``E``.
        sigma: The automorphism twisting the left end.
        n: The period, the number of middle terms.
        complex: The sequence, starting at ``sigma E`` and ending at ``E``.
        tags: Optional labels for the middle terms (e.g. the subalgebra
            each one is relatively projective over).
        name: Display name.
    """

    algebra: QuiverAlgebra
    sigma: Automorphism
    n: int
    complex: Sequence_
    tags: Sequence[str] = field(default_factory=tuple)
    name: str = "witness"

    def __post_init__(self):
        if len(self.complex.objects) != self.n + 2:
            raise ValueError(f"period {self.n} needs {self.n + 2} terms, got {len(self.complex.objects)}")
        if self.sigma.algebra is not self.algebra:
            raise ValueError("automorphism of a different algebra")

    def verify(self, seed: int = 0) -> Report:
        """Check exactness and identify the end terms with ``sigma E`` and ``E``."""
        rep = Report(f"witness {self.name}")
        seq = self.complex
        dims = seq.dims()
        vanish = seq.composites_vanish()
        rep.add("consecutive composites vanish", all(vanish), "bimodule sequence is a complex", {"composites": vanish})
        if all(vanish):
            h = seq.homology_dims()
            rep.add("exact", not any(h), "bimodule sequence is exact", {"dims": dims, "homology": h, "euler": seq.euler_characteristic()})
        else:
            rep.add("exact", False, "bimodule sequence is exact", {"dims": dims}, "not a complex")
        for label, obj, want in (
            ("left end is sigma E", seq.objects[0], twisted_regular(self.algebra, self.sigma)),
            ("right end is E", seq.objects[-1], twisted_regular(self.algebra)),
        ):
            verdict, iso = find_bimodule_isomorphism(want, obj, seed=seed)
            rep.add(label, verdict, "end terms of the bimodule sequence", {"dim": obj.dim})
            if iso is not None:
                rep.witnesses[label] = iso
        return rep


def omega_sequence(m: Representation, n: int) -> list[tuple[tuple, int]]:
    """Cover vertices and kernel dimension at each of ``n`` syzygy steps."""
    out = []
    cur = m
    for _ in range(n):
        cov = projective_cover(cur)
        cur, _ = cov.map.kernel()
        out.append((cov.vertices, cur.dim))
    return out


def _greek(name: str) -> str:
    return {"sigma": "σ", "tau": "τ", "": "σ"}.get(name, name)


def check_periodic(m: Representation, sigma: Automorphism, n: int, seed: int = 0, tag: str = "") -> Report:
    """Whether ``Omega^n(m)`` is isomorphic to the twisted module ``sigma m``."""
    if n < 1:
        raise ValueError("period must be at least 1")
    rep = Report(f"periodicity of {m.label()} (twist {sigma.name or 'sigma'}, n={n})")
    with rep.timed("omega"):
        steps = omega_sequence(m, n)
        om = omega(m, n)
    tw = twist(m, sigma)
    with rep.timed("isomorphism"):
        res = find_isomorphism(om, tw, seed=seed)
    ledger = {
        "covers": [" + ".join(f"P{v}" for v in vs) for vs, _ in steps],
        "kernel_dims": [d for _, d in steps],
        "omega_dimvec": om.dimension_vector(),
        "twist_dimvec": tw.dimension_vector(),
        "hom_dim": res.hom_dim,
        "method": res.method,
    }
    rep.add(f"Ω^{n}({m.label()}) ≅ {_greek(sigma.name)}{m.label()}", res.verdict, tag or "periodicity by syzygies", ledger)
    if res.witness is not None:
        rep.witnesses["isomorphism"] = res.witness
    return rep


def _strong_check(mod: Representation, w: PeriodicityWitness, side: str, seed: int, tag: str) -> Report:
    if mod.algebra is not w.algebra:
        raise ValueError("module and witness over different algebras")
    if mod.side != side:
        raise ValueError(f"need a {side} module")
    sigma = w.sigma if side == LEFT else w.sigma.inverse
    rep = Report(f"strong periodicity of {mod.label()} ({side}) via {w.name}")
    proj = is_projective(mod)
    with rep.timed("tensor"):
        if side == LEFT:
            seq = tensor_sequence_with_left_module(w.complex, mod)
        else:
            seq = tensor_sequence_with_right_module(w.complex, mod)
    mids = seq.objects[1:-1]
    mid_proj = [is_projective(x) for x in mids]
    rep.add(
        "tensored middle terms projective",
        all(mid_proj),
        tag,
        {"dims": [x.dim for x in mids], "projective": mid_proj},
        applicable=not proj,
    )
    vanish = seq.composites_vanish()
    if all(vanish):
        h = seq.homology_dims()
        rep.add("tensored sequence exact", not any(h), tag, {"dims": seq.dims(), "homology": h, "euler": seq.euler_characteristic()}, applicable=not proj)
    else:
        h = None
        rep.add("tensored sequence exact", False, tag, {"dims": seq.dims(), "composites": vanish}, "not a complex", applicable=not proj)
    tw = twist(mod, sigma)
    first = find_isomorphism(seq.objects[0], tw, seed=seed)
    last = find_isomorphism(seq.objects[-1], mod, seed=seed)
    rep.add("left end ~ twisted module", first.verdict, tag, {"dim": seq.objects[0].dim, "method": first.method}, applicable=not proj)
    rep.add("right end ~ module", last.verdict, tag, {"dim": seq.objects[-1].dim, "method": last.method}, applicable=not proj)
    if h is not None and not any(h) and len(seq.maps) >= 2:
        # the kernel of the first middle differential is the image of the left end
        d = seq.maps[1]
        mat = d.matrix if hasattr(d, "matrix") else np.asarray(d)
        ker, _ = ModuleHom(seq.objects[1], seq.objects[2], mat).kernel()
        res = find_isomorphism(ker, tw, seed=seed)
        rep.add("kernel of first middle differential ~ twisted module", res.verdict, tag, {"dim": ker.dim, "method": res.method}, applicable=not proj)
        if res.witness is not None:
            rep.witnesses["periodicity isomorphism"] = res.witness
    if proj:
        rep.add("module is projective (degenerate case)", True, tag, {"dim": mod.dim}, applicable=False)
    return rep


def check_strong_periodic_left(m: Representation, w: PeriodicityWitness, seed: int = 0, tag: str = "witness tensored with the module") -> Report:
    """Strong periodicity of a left module: ``w (x)_E m`` has projective middle terms and is exact."""
    return _strong_check(m, w, LEFT, seed, tag)


def check_strong_periodic_right(n: Representation, w: PeriodicityWitness, seed: int = 0, tag: str = "module tensored with the witness") -> Report:
    """Strong periodicity of a right module, with the inverse twist."""
    return _strong_check(n, w, RIGHT, seed, tag)


def relative_witness_prereqs(
    pres: Presentation,
    q_vertices: Sequence[str],
    subalgebras: Sequence[Embedding] = (),
    seed: int = 0,
    tag: str = "relative projectivity hypotheses",
) -> Report:
    """Hypotheses under which a relative resolution gives strong periodicity.

    With ``P`` the projective over ``A`` presented by ``pres`` and ``Q`` the sum
    of ``P_q`` for ``q`` in ``q_vertices``, checks that ``Hom_A(P, P + Q)`` is
    ``E + M`` as a left module, that ``P`` is ``E + M*`` as a right module and
    that ``E``, ``M`` and ``M*`` are projective over each subalgebra.

    Raises:
        ValueError: if ``P + Q`` is not a projective generator.
    """
    E, A = pres.E, pres.A
    pv = set(pres.projective_vertices)
    qv = [str(q) for q in q_vertices]
    if pv | set(qv) != set(A.vertices) or pv & set(qv):
        raise ValueError("P + Q must be a basic projective generator with no common summands")
    rep = Report("relative witness prerequisites")
    p_sum, _, _ = direct_sum([projective_module(A, v) for v in sorted(pv, key=A.vertices.index)])
    q_sum, _, _ = direct_sum([projective_module(A, v) for v in qv])
    hom_p = hom_module(pres, p_sum)
    m = hom_module(pres, q_sum, name="M")
    both, _, _ = direct_sum([hom_p, m])
    whole, _, _ = direct_sum([p_sum, q_sum])
    hom_all = hom_module(pres, whole)
    res = find_isomorphism(hom_p, regular_module(E, LEFT), seed=seed)
    rep.add("Hom(P,P) ~ E (left)", res.verdict, tag, {"dim": hom_p.dim, "method": res.method})
    rep.add("Hom(P,P+Q) = E + M (left)", hom_all.dim == both.dim == E.dim + m.dim, tag, {"dims": (E.dim, m.dim, hom_all.dim)})
    right_p = [projective_as_right_module(pres, w) for w in A.vertices if w in pv]
    rp, _, _ = direct_sum(right_p)
    res = find_isomorphism(rp, regular_module(E, RIGHT), seed=seed)
    rep.add("P restricted to P-vertices ~ E (right)", res.verdict, tag, {"dim": rp.dim, "method": res.method})
    md = dual_module(m)
    right_q = [projective_as_right_module(pres, w) for w in qv]
    rq, _, _ = direct_sum(right_q)
    res = find_isomorphism(rq, md, seed=seed)
    rep.add("P restricted to Q-vertices ~ M* (right)", res.verdict, tag, {"dim": rq.dim, "method": res.method})
    subs = list(subalgebras) or [identity_embedding(E)]
    for emb in subs:
        sname = emb.sub.name or "B"
        for label, mod in (
            ("E left", regular_module(E, LEFT)),
            ("E right", regular_module(E, RIGHT)),
            ("M left", m),
            ("M* right", md),
        ):
            rep.add(f"{label} projective over {sname}", is_projective(restrict(mod, emb)), tag, {"dim": mod.dim})
    rep.witnesses["M"] = m
    return rep
