"""Walk through the period-2 example: projectives, M, its syzygies and the bimodule witness.

Run with ``python3 demos/s6_walkthrough.py``.
"""

from periodic_twist.corpus import load_example
from periodic_twist.periodicity import check_periodic, check_strong_periodic_left, omega_sequence
from periodic_twist.rep import loewy_series, omega, projective_module


def show(title, table):
    print(f"{title}:")
    rows = [" ".join(layer) for layer in table]
    width = max(len(r) for r in rows)
    for r in rows:
        print("    " + r.center(width))


def main():
    b = load_example("s6")
    E, sigma, M = b.algebras["E"], b.automorphisms["sigma"], b.modules["M"]
    print(f"E has dimension {E.dim} over GF({E.p}); σ permutes simples as {sigma.cycle_string()}\n")
    for v in E.vertices:
        show(f"P{v}", loewy_series(projective_module(E, v)))
    print()
    show("M", loewy_series(M))

    print("\nminimal projective resolution of M:")
    for k, (vs, d) in enumerate(omega_sequence(M, 2), start=1):
        print(f"    step {k}: cover {' + '.join('P' + v for v in vs)}, kernel dim {d}")
    show("Ω²(M)", loewy_series(omega(M, 2)))

    rep = check_periodic(M, sigma, 2)
    print(f"\n{rep.assertions[0].line()}")

    w = b.witnesses["W"]
    seq = w.complex
    print(f"\nbimodule witness: dims {seq.dims()}, homology {seq.homology_dims()}")
    strong = check_strong_periodic_left(M, w)
    print(f"strong periodicity of M: {'pass' if strong.passed else 'FAIL'}")
    for a in strong.assertions:
        print("    " + a.line())


if __name__ == "__main__":
    main()
