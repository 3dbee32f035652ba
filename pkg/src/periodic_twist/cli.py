"""Command-line front end.

Every command builds a report; the exit status is 0 exactly when the report
has no failed or undecided assertion, 1 otherwise and 2 on input errors.

    periodic-twist [-i INPUT] [--format text|json] [--seed N] COMMAND ...

``INPUT`` is a built-in example name (``s6``, ``s8``, ``toys``) or a path to
a document in the text format.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter

from .corpus import EXAMPLES, CorpusBundle, example_text, golden_check, load_example, load_path, round_trip, verify_example
from .periodicity import check_periodic, check_strong_periodic_left, check_strong_periodic_right
from .qalg import cartan_matrix, verify_symmetric
from .rep import LEFT, loewy_series, omega, socle_series
from .report import Report
from .textformat import ParseError

__all__ = ["main", "build_parser", "run"]


def _load(source: str) -> CorpusBundle:
    return load_example(source) if source in EXAMPLES else load_path(source)


def _pick_algebra(b: CorpusBundle, name: str | None):
    if name:
        return b.algebra(name)
    for preferred in ("A", "E"):
        if preferred in b.algebras:
            return b.algebras[preferred]
    return next(iter(b.algebras.values()))


def _layers_text(table) -> list[str]:
    rows = [" ".join(layer) for layer in table]
    width = max((len(r) for r in rows), default=0)
    return [r.center(width).rstrip() for r in rows]


def cmd_algebra_info(args, b: CorpusBundle) -> Report:
    names = [args.name] if args.name else list(b.algebras)
    rep = Report(f"algebra info ({b.name})")
    for n in names:
        alg = b.algebra(n)
        cm = cartan_matrix(alg)
        sym = verify_symmetric(alg, seed=args.seed)
        counts = Counter(b_.length for b_ in alg.basis)
        rep.add(
            f"{n}: dim {alg.dim}",
            True,
            "algebra structure",
            {
                "vertices": list(alg.vertices),
                "arrows": len(alg.quiver.arrows),
                "p": alg.p,
                "radical_layers": [counts[k] for k in sorted(counts)],
                "cartan": cm.tolist(),
                "cartan_symmetric": bool((cm == cm.T).all()),
                "symmetric": sym.symmetric,
            },
        )
    return rep


def cmd_module_loewy(args, b: CorpusBundle) -> Report:
    m = b.module(args.name)
    lo, so = loewy_series(m), socle_series(m)
    rep = Report(f"Loewy series of {args.name}")
    rep.add(f"{args.name}: dim {m.dim}", True, "radical and socle series", {"loewy": str(lo), "socle": str(so), "dimvec": m.dimension_vector()})
    rep.witnesses["display"] = _layers_text(lo)
    return rep


def cmd_module_omega(args, b: CorpusBundle) -> Report:
    m = b.module(args.name)
    om = omega(m, args.n)
    rep = Report(f"Ω^{args.n}({args.name})")
    rep.add(f"Ω^{args.n}({args.name}): dim {om.dim}", True, "syzygy by minimal projective covers", {"dim": om.dim, "dimvec": om.dimension_vector(), "loewy": str(loewy_series(om))})
    rep.witnesses["display"] = _layers_text(loewy_series(om))
    return rep


def cmd_periodicity(args, b: CorpusBundle) -> Report:
    return check_periodic(b.module(args.module), b.automorphisms[args.sigma], args.n, seed=args.seed)


def cmd_strong(args, b: CorpusBundle) -> Report:
    m = b.module(args.module)
    if args.witness not in b.witnesses:
        raise KeyError(f"witness {args.witness!r} unavailable: {b.errors.get(args.witness, 'not defined')}")
    w = b.witnesses[args.witness]
    chk = check_strong_periodic_left if m.side == LEFT else check_strong_periodic_right
    return chk(m, w, seed=args.seed)


def cmd_tilt(args, b: CorpusBundle) -> Report:
    from .tilt import verify_tilting

    J = [x for x in args.J.replace(",", " ").split() if x] if args.J else []
    rep = verify_tilting(_pick_algebra(b, args.algebra), J)
    return rep


def cmd_verify(args, b) -> Report:
    return verify_example(args.example, seed=args.seed)


def cmd_golden(args, b: CorpusBundle) -> Report:
    return golden_check(b, seed=args.seed)


def _common_options(ap: argparse.ArgumentParser, defaults: bool) -> None:
    # subcommands repeat the options with suppressed defaults so either position works
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    ap.add_argument("-i", "--input", default=d("s6"), help="built-in example (s6, s8, toys) or path to a document (default: s6)")
    ap.add_argument("--format", choices=("text", "json"), default=d("text"))
    ap.add_argument("--seed", type=int, default=d(0), help="random seed for isomorphism searches (default: 0)")
    ap.add_argument("--timings", action="store_true", default=d(False), help="include timings in json output")
    ap.add_argument("-v", "--verbose", action="store_true", default=d(False), help="print ledgers under every assertion")


class _Sub:
    """Subparser factory that attaches the common options to leaf commands."""

    def __init__(self, action, common):
        self.action, self.common = action, common

    def add_parser(self, name, **kw):
        return self.action.add_parser(name, parents=[self.common], **kw)

    def group(self, name):
        return _Sub(self.action.add_parser(name).add_subparsers(dest="action", required=True), self.common)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="periodic-twist", description="Exact checks for periodic modules, bimodule resolutions and tilting complexes.")
    _common_options(ap, defaults=True)
    common = argparse.ArgumentParser(add_help=False)
    _common_options(common, defaults=False)
    sub = _Sub(ap.add_subparsers(dest="group", required=True), common)

    g = sub.group("algebra")
    p = g.add_parser("info", help="dimensions, Cartan matrix, symmetric form")
    p.add_argument("name", nargs="?")
    p.set_defaults(func=cmd_algebra_info)

    g = sub.group("module")
    p = g.add_parser("loewy", help="radical and socle series")
    p.add_argument("name")
    p.set_defaults(func=cmd_module_loewy)
    p = g.add_parser("omega", help="Heller translate")
    p.add_argument("name")
    p.add_argument("-n", type=int, default=1)
    p.set_defaults(func=cmd_module_omega)

    g = sub.group("periodicity")
    p = g.add_parser("check", help="Omega^n(M) against the twisted module")
    p.add_argument("module")
    p.add_argument("sigma")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_periodicity)

    g = sub.group("strong-periodicity")
    p = g.add_parser("check", help="tensor a witness sequence with M")
    p.add_argument("module")
    p.add_argument("witness")
    p.set_defaults(func=cmd_strong)

    g = sub.group("tilt")
    p = g.add_parser("verify", help="combinatorial tilting complex at J")
    p.add_argument("-J", default="", help="vertices, comma or space separated (empty for J = ∅)")
    p.add_argument("--algebra", default=None)
    p.set_defaults(func=cmd_tilt)

    p = sub.add_parser("verify", help="full verification of a block example")
    p.add_argument("example", choices=("s6", "s8"))
    p.set_defaults(func=cmd_verify, no_input=True)

    p = sub.add_parser("golden", help="evaluate the expect statements of the input")
    p.set_defaults(func=cmd_golden)

    g = sub.group("corpus")
    p = g.add_parser("dump", help="print a built-in example in canonical form")
    p.add_argument("name", choices=EXAMPLES)
    p.add_argument("--raw", action="store_true", help="print the shipped file with its comments")
    p.set_defaults(func=None)
    return ap


def _render(rep: Report, fmt: str, timings: bool, verbose: bool) -> str:
    if fmt == "json":
        return json.dumps(rep.to_dict(timings=timings), indent=2, ensure_ascii=False, sort_keys=False)
    lines = [rep.text()]
    if verbose or len(rep.assertions) == 1:
        lines = [rep.title, "=" * len(rep.title)]
        for a in rep.assertions:
            lines.append(a.line())
            for k, v in a.ledger.items():
                lines.append(f"    {k}: {v}")
            if a.detail:
                lines.append(f"    detail: {a.detail}")
    display = rep.witnesses.get("display")
    if isinstance(display, list):
        lines += ["", *display]
    return "\n".join(lines)


def run(argv=None, out=None) -> int:
    """Run one command; returns the exit status."""
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        if args.group == "corpus":
            text = example_text(args.name)
            out.write(text if args.raw else round_trip(text))
            return 0
        b = None if getattr(args, "no_input", False) else _load(args.input)
        rep = args.func(args, b)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (KeyError, ValueError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 2
    out.write(_render(rep, args.format, args.timings, args.verbose) + "\n")
    if not rep.passed:
        first = rep.failures()[0]
        print(f"first failing assertion: {first.name} [{first.tag}]", file=sys.stderr)
        return 1
    return 0


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
