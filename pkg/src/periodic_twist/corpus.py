"""Built-in example bundles and their golden checks.

A bundle is the result of interpreting one text-format document: algebras,
presentations, automorphisms, subalgebras, modules, bimodules, maps,
sequences, witnesses and ``expect`` statements.  Maps or sequences that fail
to build are kept as error records so the golden check can report them.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from .bimod import (
    BalanceError,
    Bimodule,
    RegularBimodule,
    Sequence_,
    TensorBimodule,
    induce,
    is_twisted_central,
    make_bimodule_map,
    tensor_over_subalgebra,
    tensor_sequence_with_left_module,
    twisted_regular,
    value_by_action,
)
from .periodicity import (
    PeriodicityWitness,
    check_periodic,
    check_strong_periodic_left,
    check_strong_periodic_right,
    omega_sequence,
    relative_witness_prereqs,
)
from .qalg import (
    Automorphism,
    Quiver,
    QuiverAlgebra,
    build_algebra,
    cartan_matrix,
    check_automorphism,
    subalgebra,
    verify_symmetric,
)
from .rep import (
    LEFT,
    RIGHT,
    LoewyTable,
    Presentation,
    Representation,
    dual_module,
    find_isomorphism,
    hom_module,
    is_projective,
    literal_module,
    loewy_series,
    omega,
    projective_module,
    regular_module,
    restrict,
    simple_module,
    socle_series,
    twist,
)
from .report import Report
from .textformat import ParseError, Stmt, TensorRef, parse_document, parse_tensor_expr, serialize_document

__all__ = [
    "CorpusBundle",
    "EXAMPLES",
    "load_example",
    "load_path",
    "load_text",
    "example_text",
    "build_bundle",
    "golden_check",
    "check_expect",
    "round_trip",
    "tensor_vector",
    "verify_example",
]

EXAMPLES = ("s6", "s8", "toys")


@dataclass
class CorpusBundle:
    """Objects built from one document, keyed by their names in the document."""

    name: str
    statements: list
    algebras: dict = field(default_factory=dict)
    presentations: dict = field(default_factory=dict)
    automorphisms: dict = field(default_factory=dict)
    subalgebras: dict = field(default_factory=dict)
    modules: dict = field(default_factory=dict)
    bimodules: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)
    map_data: dict = field(default_factory=dict)  # name -> (src, dst, generators, values)
    sequences: dict = field(default_factory=dict)
    sequence_maps: dict = field(default_factory=dict)  # name -> map names, even if unbuilt
    witnesses: dict = field(default_factory=dict)
    errors: dict = field(default_factory=dict)  # name -> message for objects that failed to build
    expects: list = field(default_factory=list)

    def algebra(self, name: str) -> QuiverAlgebra:
        if name in self.algebras:
            return self.algebras[name]
        raise KeyError(f"unknown algebra {name!r} in {self.name}")

    def module(self, name: str) -> Representation:
        if name in self.modules:
            return self.modules[name]
        raise KeyError(f"unknown module {name!r} in {self.name}")

    def get(self, name: str):
        for table in (self.modules, self.bimodules, self.maps, self.sequences, self.witnesses, self.automorphisms, self.algebras, self.presentations):
            if name in table:
                return table[name]
        if name in self.errors:
            raise KeyError(f"{name!r} failed to build: {self.errors[name]}")
        raise KeyError(f"unknown name {name!r} in {self.name}")


def example_text(name: str) -> str:
    """Text of a built-in example file."""
    if name not in EXAMPLES:
        raise KeyError(f"unknown example {name!r}; known: {', '.join(EXAMPLES)}")
    return resources.files("periodic_twist").joinpath("data", f"{name}.txt").read_text()


_CACHE: dict = {}


def load_example(name: str, cache: bool = True) -> CorpusBundle:
    """Build a built-in example (``"s6"``, ``"s8"`` or ``"toys"``)."""
    if cache and name in _CACHE:
        return _CACHE[name]
    bundle = build_bundle(parse_document(example_text(name)), name=name)
    if cache:
        _CACHE[name] = bundle
    return bundle


def load_text(text: str, name: str = "input") -> CorpusBundle:
    """Build a bundle from document text."""
    return build_bundle(parse_document(text), name=name)


def load_path(path: str) -> CorpusBundle:
    """Build a bundle from a document on disk."""
    with open(path, encoding="utf-8") as fh:
        return load_text(fh.read(), name=str(path))


def round_trip(text: str) -> str:
    """Parse and re-serialize a document (canonical form)."""
    return serialize_document(parse_document(text))


# ---------------------------------------------------------------------------
# interpretation


def tensor_vector(bimod: Bimodule, terms, lets: dict | None = None) -> np.ndarray:
    """Vector of a parsed tensor expression inside a regular or tensor bimodule."""
    lets = lets or {}
    p = bimod.p
    out = np.zeros(bimod.dim, dtype=np.int64)
    for t in terms:
        if isinstance(t, TensorRef):
            if t.name not in lets:
                raise KeyError(f"undefined tensor variable ${t.name}")
            out = (out + t.coeff * lets[t.name]) % p
        elif isinstance(bimod, TensorBimodule):
            out = (out + bimod.element([(t.coeff, t.left, t.right)])) % p
        else:
            raise TypeError(f"tensor expression in {bimod.label()}, which is not a tensor product")
    return out


def _value(bimod: Bimodule, item, lets: dict) -> np.ndarray:
    kind, val = item
    if kind == "tensor":
        return tensor_vector(bimod, val, lets)
    if isinstance(bimod, RegularBimodule):
        return bimod.element(val)
    raise TypeError(f"plain algebra element given for {bimod.label()}; use a tensor expression")


def _aut(bundle: CorpusBundle, name: str | None, algebra: QuiverAlgebra) -> Automorphism | None:
    if name is None:
        return None
    s = bundle.automorphisms[name]
    if s.algebra is not algebra:
        raise ValueError(f"automorphism {name} is not of {algebra.name}")
    return s


def build_bundle(stmts: list, name: str = "input") -> CorpusBundle:
    """Interpret parsed statements in order."""
    b = CorpusBundle(name, stmts)
    for s in stmts:
        try:
            _interpret(b, s)
        except (BalanceError, ValueError, KeyError, TypeError) as exc:
            if s.kind in ("map", "sequence", "witness"):
                b.errors[s.name] = str(exc)
            else:
                raise ParseError(f"{s.kind} {s.name}: {exc}", s.line, 1) from exc
    return b


def _interpret(b: CorpusBundle, s: Stmt) -> None:
    a = s.args
    if s.kind == "algebra":
        fields = {"relation": [], "arrow": [], "zero_paths": []}
        p = bound = None
        verts = ()
        for item in s.body:
            if item[0] == "field":
                p = item[1]
            elif item[0] == "vertices":
                verts = item[1]
            elif item[0] == "bound":
                bound = item[1]
            else:
                fields[item[0]].append(item[1:] if item[0] == "arrow" else item[1])
        if p is None or bound is None:
            raise ValueError("algebra needs 'field' and 'bound'")
        q = Quiver(tuple(verts), tuple(tuple(x) for x in fields["arrow"]))
        b.algebras[s.name] = build_algebra(q, fields["relation"], bound, p, zero_paths=fields["zero_paths"], name=s.name)
    elif s.kind == "presentation":
        E, A = b.algebra(s.name), b.algebra(a["ambient"])
        vmap = {x[1]: x[2] for x in s.body if x[0] == "vertex"}
        amap = {x[1]: x[2] for x in s.body if x[0] == "arrow"}
        b.presentations[s.name] = Presentation(E, A, vmap, amap)
    elif s.kind == "automorphism":
        alg = b.algebra(a["algebra"])
        vmap = {x[1]: x[2] for x in s.body if x[0] == "vertex"}
        amap = {x[1]: x[2] for x in s.body if x[0] == "arrow"}
        b.automorphisms[s.name] = check_automorphism(alg, vmap, amap, name=s.name)
    elif s.kind == "subalgebra":
        alg = b.algebra(a["algebra"])
        idem = {x[1]: x[2] for x in s.body if x[0] == "idempotent"}
        arr = {x[1]: x[2] for x in s.body if x[0] == "arrow"}
        emb = subalgebra(alg, idem, arr, name=s.name)
        b.subalgebras[s.name] = emb
        b.algebras[s.name] = emb.sub
    elif s.kind == "module":
        b.modules[s.name] = _module(b, s)
    elif s.kind == "bimodule":
        b.bimodules[s.name] = _bimodule(b, s)
    elif s.kind == "map":
        src, dst = b.bimodules[a["src"]], b.bimodules[a["dst"]]
        lets, gens, vals = {}, [], []
        for item in s.body:
            if item[0] == "let":
                lets[item[1]] = tensor_vector(dst, item[2], lets)
            else:
                gens.append(_value(src, item[1], {}))
                vals.append(_value(dst, item[2], lets))
        b.map_data[s.name] = (src, dst, gens, vals)
        b.maps[s.name] = make_bimodule_map(src, dst, gens, vals)
    elif s.kind == "sequence":
        b.sequence_maps[s.name] = tuple(a["maps"])
        objs = [b.bimodules[t] for t in a["terms"]]
        missing = [d for d in a["maps"] if d not in b.maps]
        if missing:
            raise KeyError(f"maps {', '.join(missing)} are unavailable")
        maps = [b.maps[d] for d in a["maps"]]
        for f, x, y in zip(maps, objs, objs[1:]):
            if f.src is not x or f.dst is not y:
                raise ValueError(f"map does not go from {x.label()} to {y.label()}")
        b.sequences[s.name] = Sequence_(objs, maps, names=list(a["maps"]))
    elif s.kind == "witness":
        if a["sequence"] not in b.sequences:
            raise KeyError(f"sequence {a['sequence']} is unavailable")
        seq = b.sequences[a["sequence"]]
        alg = seq.objects[0].algebra
        b.witnesses[s.name] = PeriodicityWitness(alg, b.automorphisms[a["aut"]], a["n"], seq, name=s.name)
    elif s.kind == "expect":
        b.expects.append(s)
    else:
        raise ValueError(f"unsupported statement {s.kind}")


def _module(b: CorpusBundle, s: Stmt) -> Representation:
    a = s.args
    kind = a["kind"]
    if kind == "literal":
        alg = b.algebra(a["algebra"])
        dims = dict(next((x[1] for x in s.body if x[0] == "dims"), ()))
        blocks = {x[1]: np.array(x[2], dtype=np.int64) for x in s.body if x[0] == "act"}
        return literal_module(alg, LEFT if a["side"] == "left" else RIGHT, dims, blocks, name=s.name)
    args = a["args"]
    if kind == "simple":
        m = simple_module(b.algebra(args[0]), args[1])
    elif kind == "projective":
        m = projective_module(b.algebra(args[0]), args[1])
    elif kind == "regular":
        if args[1] not in ("left", "right"):
            raise ValueError("side must be left or right")
        m = regular_module(b.algebra(args[0]), LEFT if args[1] == "left" else RIGHT)
    elif kind == "hom":
        pres = b.presentations[args[0]]
        m = hom_module(pres, projective_module(pres.A, args[1]))
    elif kind == "induce":
        emb = b.subalgebras[args[0]]
        m = induce(emb, simple_module(emb.sub, args[1]))
    elif kind == "twist":
        m = twist(b.module(args[0]), b.automorphisms[args[1]])
    elif kind == "dual":
        m = dual_module(b.module(args[0]))
    else:
        raise ValueError(f"unknown module construction {kind}")
    m.name = s.name
    return m


def _bimodule(b: CorpusBundle, s: Stmt) -> Bimodule:
    a = s.args
    left = b.algebra(a["left"])
    x = twisted_regular(left, _aut(b, a.get("lt"), left), _aut(b, a.get("lrt"), left))
    if "mid" not in a:
        x.name = s.name
        return x
    right = b.algebra(a["right"])
    if right is not left:
        raise ValueError("both outer factors must be the same algebra")
    y = twisted_regular(right, _aut(b, a.get("rlt"), right), _aut(b, a.get("rt"), right))
    emb = b.subalgebras[a["mid"]]
    tau = _aut(b, a.get("mt"), emb.sub)
    return tensor_over_subalgebra(x, emb, y, tau, name=s.name)


# ---------------------------------------------------------------------------
# golden checks


def _yes(value: str) -> bool:
    v = value.strip().lower()
    if v not in ("yes", "no"):
        raise ValueError(f"expected yes/no, got {value!r}")
    return v == "yes"


def _cover_string(vertices) -> str:
    return " + ".join(f"P{v}" for v in vertices)


def _split_subject(subject: str) -> tuple[str, str]:
    head, _, tail = subject.partition("/")
    return head, tail


def check_expect(b: CorpusBundle, s: Stmt, seed: int = 0) -> tuple[bool | None, dict, str]:
    """Evaluate one ``expect`` statement: ``(verdict, ledger, detail)``."""
    what, subj, value = s.args["what"], s.name, s.args["value"]
    if what == "dim":
        obj = b.get(subj)
        return obj.dim == int(value), {"dim": obj.dim}, ""
    if what == "dimvec":
        m = b.module(subj)
        got = m.dimension_vector()
        want = tuple(int(x) for x in value.split())
        return tuple(got) == want, {"dimvec": got}, ""
    if what in ("loewy", "socle"):
        m = b.module(subj)
        got = loewy_series(m) if what == "loewy" else socle_series(m)
        return got.matches(LoewyTable.parse(value)), {what: str(got)}, ""
    if what == "perm":
        s_ = b.automorphisms[subj]
        got = s_.cycle_string()
        return got == value.replace(" ", ""), {"perm": got}, ""
    if what == "involution":
        s_ = b.automorphisms[subj]
        return s_.then(s_).is_identity() == _yes(value), {}, ""
    if what == "presentation":
        pres = b.presentations[subj]
        return _yes(value), {"dim": pres.E.dim, "rank": pres.E.dim}, "relations and bijectivity checked at load"
    if what == "resolution":
        m = b.module(subj)
        want = [x.strip() for x in value.split("|")]
        steps = omega_sequence(m, len(want))
        got = [_cover_string(vs) for vs, _ in steps]
        ok = [Counter(g.split(" + ")) for g in got] == [Counter(x.strip() for x in w.split("+")) for w in want]
        return ok, {"covers": got}, ""
    if what == "omega_dim":
        name, n = _split_subject(subj)
        om = omega(b.module(name), int(n or 1))
        return om.dim == int(value), {"dim": om.dim}, ""
    if what == "periodic":
        aut, n = value.split()
        rep = check_periodic(b.module(subj), b.automorphisms[aut], int(n), seed=seed)
        a = rep.assertions[0]
        return a.verdict, a.ledger, a.detail
    if what == "symmetric":
        res = verify_symmetric(b.algebra(subj), seed=seed)
        cm = cartan_matrix(b.algebra(subj))
        ledger = {"trace_space_dim": res.trace_space_dim, "exhaustive": res.exhaustive, "cartan_symmetric": bool((cm == cm.T).all())}
        return res.symmetric == _yes(value), ledger, "" if res.exhaustive or res.symmetric else "sampled search only"
    if what == "relproj":
        name, sub = _split_subject(subj)
        m = restrict(b.module(name), b.subalgebras[sub])
        return is_projective(m) == _yes(value), {"dim": m.dim}, ""
    if what == "well_defined":
        ok = subj in b.maps
        return ok == _yes(value), {}, b.errors.get(subj, "")
    if what == "identity":
        lhs, _, rhs = value.partition("==")
        src, dst, gens, vals = _map_data(b, subj)
        u = tensor_vector(src, parse_tensor_expr(lhs))
        w = tensor_vector(src, parse_tensor_expr(rhs))
        same = np.array_equal(u, w)
        fl = value_by_action(src, dst, gens, vals, u, LEFT)
        fr = value_by_action(src, dst, gens, vals, w, RIGHT)
        if fl is None or fr is None:
            return False, {"same_element": same}, "element not reachable from generators on one side"
        return same and np.array_equal(fl, fr), {"same_element": same, "image_nonzero": bool(fl.any())}, ""
    if what == "central":
        src, dst, gens, vals = _map_data(b, subj)
        if not isinstance(src, RegularBimodule) or len(gens) != 1:
            raise ValueError("centrality needs a map out of a twisted regular bimodule with one generator")
        ok = is_twisted_central(src, dst, vals[0])
        return ok == _yes(value), {}, ""
    if what == "complex":
        if subj not in b.sequences:
            return not _yes(value), {"composites": _partial_composites(b, subj)}, b.errors.get(subj, "")
        seq = b.sequences[subj]
        vanish = seq.composites_vanish()
        return all(vanish) == _yes(value), {"composites": vanish}, ""
    if what == "homology":
        if subj not in b.sequences:
            return False, {}, b.errors.get(subj, "")
        seq = b.sequences[subj]
        if not seq.is_complex():
            return False, {"composites": seq.composites_vanish()}, "not a complex"
        h = seq.homology_dims()
        return h == [int(x) for x in value.split()], {"dims": seq.dims(), "homology": h}, ""
    if what == "tensor":
        name, v = _split_subject(subj)
        if name not in b.sequences:
            return False, {}, b.errors.get(name, "")
        seq = b.sequences[name]
        alg = seq.objects[0].algebra
        tens = tensor_sequence_with_left_module(seq, simple_module(alg, v))
        want = value.split()
        isos = [find_isomorphism(t, b.module(w), seed=seed).verdict for t, w in zip(tens.objects, want)]
        exact = tens.is_exact()
        ledger = {"dims": tens.dims(), "iso": isos, "exact": exact, "euler": tens.euler_characteristic()}
        ok = len(want) == len(tens.objects) and all(x is True for x in isos) and exact
        return ok, ledger, ""
    if what == "strong":
        wname, side = value.split()
        if wname not in b.witnesses:
            return False, {}, b.errors.get(wname, "witness unavailable")
        w = b.witnesses[wname]
        chk = check_strong_periodic_left if side == "left" else check_strong_periodic_right
        rep = chk(b.module(subj), w, seed=seed)
        return rep.passed, {a.name: a.status for a in rep.assertions}, "; ".join(a.name for a in rep.failures())
    if what == "prereqs":
        qs, _, subs = value.partition("over")
        rep = relative_witness_prereqs(b.presentations[subj], qs.split(), [b.subalgebras[x] for x in subs.split()], seed=seed)
        return rep.passed, {a.name: a.status for a in rep.assertions}, "; ".join(a.name for a in rep.failures())
    raise ValueError(f"unknown expectation kind {what!r}")


def _partial_composites(b: CorpusBundle, seq_name: str) -> dict:
    """``"g.f" -> vanishes?`` for consecutive maps of a sequence that did build."""
    names = b.sequence_maps.get(seq_name, ())
    out = {}
    for f, g in zip(names, names[1:]):
        if f in b.maps and g in b.maps:
            out[f"{g}.{f}"] = not (b.maps[g].matrix @ b.maps[f].matrix % b.maps[f].src.p).any()
    return out


def _map_data(b: CorpusBundle, name: str):
    if name not in b.map_data:
        raise KeyError(f"map {name!r} unavailable: {b.errors.get(name, 'not defined')}")
    return b.map_data[name]


def golden_check(bundle: CorpusBundle, seed: int = 0) -> Report:
    """Evaluate every ``expect`` statement of a bundle."""
    rep = Report(f"golden check: {bundle.name}")
    for s in bundle.expects:
        label = f"{s.args['what']} {s.name} = {s.args['value']}"
        with rep.timed(label):
            try:
                verdict, ledger, detail = check_expect(bundle, s, seed=seed)
            except (KeyError, ValueError, TypeError) as exc:
                verdict, ledger, detail = False, {}, f"error: {exc}"
        rep.add(label, verdict, s.args["tag"], ledger, detail)
    return rep


# ---------------------------------------------------------------------------
# full verification of the two block examples

_VERIFY_PLAN = {
    "s6": {"module": "M", "aut": "sigma", "n": 2, "tilt": ("A", ("3",))},
    "s8": {"module": "M", "aut": "sigma", "n": 3, "tilt": ("A", ("1",))},
}


def _sequence_assertions(rep: Report, b: CorpusBundle, name: str, tag: str) -> None:
    names = b.sequence_maps.get(name, ())
    for f, g in zip(names, names[1:]):
        label = f"{name}: {g}∘{f} = 0"
        if f in b.maps and g in b.maps:
            ok = not (b.maps[g].matrix @ b.maps[f].matrix % b.maps[f].src.p).any()
            rep.add(label, ok, tag)
        else:
            missing = [x for x in (f, g) if x not in b.maps]
            rep.add(label, False, tag, {}, "; ".join(f"{x}: {b.errors.get(x, 'unavailable')}" for x in missing))
    if name in b.sequences:
        seq = b.sequences[name]
        if seq.is_complex():
            h = seq.homology_dims()
            rep.add(f"{name}: exactness", not any(h), tag, {"dims": seq.dims(), "homology": h, "euler": seq.euler_characteristic()})
        else:
            rep.add(f"{name}: exactness", False, tag, {"dims": seq.dims()}, "not a complex")
    else:
        rep.add(f"{name}: exactness", False, tag, {}, b.errors.get(name, "unavailable"))


def verify_example(name: str, seed: int = 0) -> Report:
    """Everything checkable about a block example: golden values, sequences, witness, tilt."""
    from .tilt import verify_tilting

    if name not in _VERIFY_PLAN:
        raise KeyError(f"no verification plan for {name!r}; known: {', '.join(_VERIFY_PLAN)}")
    plan = _VERIFY_PLAN[name]
    b = load_example(name)
    rep = Report(f"verify {name}")
    rep.extend(golden_check(b, seed=seed))
    per = check_periodic(b.module(plan["module"]), b.automorphisms[plan["aut"]], plan["n"], seed=seed, tag=f"{name}: periodicity by syzygies")
    rep.extend(per)
    for seq in b.sequence_maps:
        _sequence_assertions(rep, b, seq, f"{name}: bimodule sequence {seq}")
    for wname, w in b.witnesses.items():
        rep.extend(w.verify(seed=seed), prefix=f"{wname}: ")
    alg, J = plan["tilt"]
    t = verify_tilting(b.algebra(alg), J, tag=f"{name}: combinatorial tilting complex at {{{','.join(J)}}}")
    rep.extend(t, prefix="tilt: ")
    rep.add("tilt: perversity " + t.perversity, True, t.assertions[0].tag, {"end_dim": t.end_dim})
    return rep
