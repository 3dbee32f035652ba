"""Two-term tilting complexes attached to a set of simples J.

Run with ``python3 demos/tilting.py [s6|s8] [J]``.
"""

import sys

from periodic_twist.corpus import load_example
from periodic_twist.rep import loewy_series, simple_module
from periodic_twist.tilt import combinatorial_tilting_complex, serre_approx, verify_tilting


def main(example="s6", J="3"):
    A = load_example(example).algebras["A"]
    J = [x for x in J.split(",") if x]
    print(f"{example}.A: dim {A.dim}, J = {{{','.join(J)}}}\n")
    for v in J:
        ap = serre_approx(simple_module(A, v), J)
        print(f"largest quotient of P{v} with factors in J: {loewy_series(ap.module)}")
    print()
    for v, t in zip(A.vertices, combinatorial_tilting_complex(A, J)):
        terms = ", ".join(f"deg {d}: {' + '.join('P' + x for x in t.term(d))}" for d in sorted(t.degrees(), reverse=True))
        print(f"T{v}: {terms}")
    rep = verify_tilting(A, J)
    print(f"\nEnd(T) has dimension {rep.end_dim}; Hom(T, T[s]) dims {rep.hom_dims}")
    print(f"perversity data: {rep.perversity}")
    for a in rep.assertions:
        print("    " + a.line())


if __name__ == "__main__":
    main(*sys.argv[1:3])
