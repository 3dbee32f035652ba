"""The period-3 example: differentials as displayed against the sign-corrected ones.

Run with ``python3 demos/s8_signs.py``.
"""

from periodic_twist.bimod import is_twisted_central
from periodic_twist.corpus import load_example


def composite(b, f, g):
    if f not in b.maps or g not in b.maps:
        return "unavailable"
    p = b.maps[f].src.p
    return "zero" if not (b.maps[g].matrix @ b.maps[f].matrix % p).any() else "NONZERO"


def main():
    b = load_example("s8")
    print("bimodule dims:", {n: b.bimodules[n].dim for n in ("Y0", "Y1", "Y2")})

    print("\nas displayed:")
    print(f"    d3 well defined: {'d3' in b.maps}  ({b.errors.get('d3', '')})")
    src, dst, _, vals = b.map_data["d3"]
    print(f"    d3(1) twisted central: {is_twisted_central(src, dst, vals[0])}")
    print(f"    d1∘d2: {composite(b, 'd2', 'd1')}")

    print("\ncorrected (three signs in each of two d2 values, two in d3, y5 negated):")
    src, dst, _, vals = b.map_data["d3c"]
    print(f"    d3c(1) twisted central: {is_twisted_central(src, dst, vals[0])}")
    for f, g in (("d1", "d0"), ("d2c", "d1"), ("d3c", "d2c")):
        print(f"    {g}∘{f}: {composite(b, f, g)}")
    seq = b.sequences["Ycseq"]
    print(f"    dims {seq.dims()}, homology {seq.homology_dims()}, euler {seq.euler_characteristic()}")

    rep = b.witnesses["W"].verify()
    print("\nwitness built on the corrected sequence:")
    for a in rep.assertions:
        print("    " + a.line())


if __name__ == "__main__":
    main()
