import numpy as np
import pytest

from periodic_twist.rep import (
    LEFT,
    RIGHT,
    LoewyTable,
    dual_module,
    find_isomorphism,
    hom_space,
    hom_space_direct,
    is_projective,
    literal_module,
    loewy_series,
    omega,
    omega_via_cover,
    projective_cover,
    projective_module,
    regular_module,
    simple_module,
    socle_series,
    strip_projective_summands,
    top_generators,
    twist,
)


def test_projective_series(s6):
    E = s6.algebras["E"]
    lo = loewy_series(projective_module(E, "2"))
    assert lo.matches(LoewyTable.parse("2 / 1 4 / 2 5 2 / 4 1 / 2"))
    assert not lo.matches(LoewyTable.parse("2 / 1 4 / 2 5 5 / 4 1 / 2"))


def test_literal_module(toys):
    A = toys.algebras["A21"]
    m = literal_module(A, LEFT, {"1": 1, "2": 1}, {"a": np.array([[1]])}, name="X")
    assert str(loewy_series(m)) == "1 / 2"
    with pytest.raises(ValueError):
        literal_module(A, LEFT, {"1": 1, "2": 1}, {"a": np.array([[1]]), "b": np.array([[1]])})


def test_projective_cover_minimal(s6):
    M = s6.modules["M"]
    cov = projective_cover(M)
    assert sorted(cov.vertices) == ["2", "5"]
    assert cov.map.is_surjective() and cov.map.is_homomorphism()


def test_omega_dimensions(s6, s8):
    assert omega(s6.modules["M"]).dim == 12
    assert omega(s6.modules["M"], 2).dim == 6
    assert omega(s8.modules["M"], 3).dim == 6


def test_omega_of_projective_vanishes(s6):
    assert omega(projective_module(s6.algebras["E"], "1")).dim == 0


@pytest.mark.parametrize("name", ["M", "S1", "U2", "P4"])
def test_hom_space_methods_agree(s6, name):
    m = s6.modules[name]
    for other in ("M", "S2", "P1"):
        n = s6.modules[other]
        assert len(hom_space(m, n)) == len(hom_space_direct(m, n))
        assert all(h.is_homomorphism() for h in hom_space(m, n))


def test_isomorphism_search(s6):
    M = s6.modules["M"]
    res = find_isomorphism(M, M)
    assert res.verdict and res.witness.is_isomorphism()
    assert find_isomorphism(M, s6.modules["sM"]).verdict is False
    assert find_isomorphism(s6.modules["S1"], s6.modules["S2"]).verdict is False


def test_twist_moves_vertices(s6):
    sigma = s6.automorphisms["sigma"]
    S1 = s6.modules["S1"]
    assert find_isomorphism(twist(S1, sigma), s6.modules["S2"]).verdict


def test_dual_changes_side(s6):
    d = dual_module(s6.modules["M"])
    assert d.side == RIGHT and d.dim == 6
    assert dual_module(d).side == LEFT


def test_projectivity(s6):
    assert is_projective(regular_module(s6.algebras["E"]))
    assert not is_projective(s6.modules["M"])


def test_top_and_socle_of_projectives_simple(s6, s8):
    for b in (s6, s8):
        for alg in (b.algebras["E"], b.algebras["A"]):
            for v in alg.vertices:
                lo = loewy_series(projective_module(alg, v))
                so = socle_series(projective_module(alg, v))
                assert lo[0] == (v,) and lo[-1] == (v,) and so[0] == (v,)


def test_non_minimal_cover_then_strip(s6):
    M = s6.modules["M"]
    vs, gens = top_generators(M)
    extra_v = M.algebra.vertices[int(M.tags[0])]
    extra = np.zeros((1, M.dim), dtype=np.int64)
    extra[0, 0] = 1
    big = omega_via_cover(M, list(vs) + [extra_v], np.concatenate([gens, extra]))
    core, removed = strip_projective_summands(big)
    assert len(removed) == 1
    assert find_isomorphism(core, omega(M)).verdict
