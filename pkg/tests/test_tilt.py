import pytest

from periodic_twist.rep import find_isomorphism, loewy_series, projective_module, simple_module
from periodic_twist.tilt import (
    ProjComplex,
    combinatorial_tilting_complex,
    ext1_dim,
    homotopy_hom,
    perversity_string,
    serre_approx,
    verify_tilting,
)


def stalk(alg, v, deg=0):
    return ProjComplex(alg, {deg: (v,)}, {}, f"P{v}[{deg}]")


def test_stalks_in_different_degrees(s6):
    A = s6.algebras["A"]
    assert homotopy_hom(stalk(A, "1"), stalk(A, "1"), 1) == 0
    assert homotopy_hom(stalk(A, "1"), stalk(A, "1", 1), 0) == 0


def test_end_of_regular_stalk(toys):
    A = toys.algebras["A21"]
    parts = [stalk(A, v) for v in A.vertices]
    from periodic_twist.tilt import direct_sum_complex

    assert homotopy_hom(direct_sum_complex(parts), direct_sum_complex(parts), 0) == A.dim


def test_ext1(s6):
    E, A = s6.algebras["E"], s6.algebras["A"]
    assert ext1_dim(E, "1", "2") == 1
    assert ext1_dim(E, "1", "4") == 0
    assert ext1_dim(A, "3", "3") == 0


def test_serre_approx_trivial_cases(s6):
    A = s6.algebras["A"]
    S3 = simple_module(A, "3")
    MJ, _ = serre_approx(S3, [])
    assert MJ.dim == 1
    MJ, _ = serre_approx(S3, A.vertices)
    assert find_isomorphism(MJ, projective_module(A, "3")).verdict


def test_serre_approx_factors_in_J(s6):
    A = s6.algebras["A"]
    for J in (["3"], ["1", "2"], ["2", "5", "3"]):
        for v in J:
            ap = serre_approx(simple_module(A, v), J)
            lo = loewy_series(ap.module)
            assert lo[0] == (v,)
            assert all(x in J for layer in lo[1:] for x in layer)
            assert ap.steps <= ap.kernel.dim


def test_serre_approx_is_largest(s6):
    # enlarging M_J by one more layer from outside J is impossible: the next
    # reject step is stable, so every simple quotient of K' lies outside J
    A = s6.algebras["A"]
    ap = serre_approx(simple_module(A, "3"), ["2", "3"])
    from periodic_twist.rep import _submodule_of, top

    sub, _ = _submodule_of(ap.cover, ap.rejected)
    if sub.dim:
        t, _ = top(sub)
        assert all(A.vertices[k] not in ("2", "3") for k in t.tags)


def test_tilting_complex_shape(s6):
    A = s6.algebras["A"]
    parts = combinatorial_tilting_complex(A, ["3"])
    T3 = parts[2]
    assert sorted(T3.term(1)) == ["2", "5"] and T3.term(0) == ("3",)
    assert all(p.degrees() == [1] for k, p in enumerate(parts) if k != 2)


@pytest.mark.parametrize("example,J", [("s6", ["3"]), ("s8", ["1"])])
def test_verify_tilting(example, J, s6, s8):
    b = {"s6": s6, "s8": s8}[example]
    rep = verify_tilting(b.algebras["A"], J)
    assert rep.passed
    assert rep.perversity == f"∅ ⊂_0 {{{J[0]}}} ⊂_{{-1}} {{1,2,3,4,5}}"
    assert all(rep.hom_dims[s] == 0 for s in (-2, -1, 1, 2))


def test_degenerate_cases(toys):
    A = toys.algebras["A21"]
    empty = verify_tilting(A, [])
    assert empty.passed and empty.end_dim == A.dim
    full = verify_tilting(A, A.vertices)
    assert full.passed and full.end_dim == A.dim


def test_unknown_vertex(toys):
    with pytest.raises(ValueError):
        verify_tilting(toys.algebras["A21"], ["9"])


def test_perversity_string(toys):
    assert perversity_string(toys.algebras["A21"], []) == "∅ ⊂_0 ∅ ⊂_{-1} {1,2}"
