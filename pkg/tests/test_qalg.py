import numpy as np
import pytest

from periodic_twist.qalg import (
    Quiver,
    build_algebra,
    cartan_matrix,
    check_automorphism,
    is_symmetrizing,
    verify_symmetric,
)
from periodic_twist.textformat import parse_path_expr


def brauer_star():
    q = Quiver(("1", "2"), (("a", "1", "2"), ("b", "2", "1")))
    rels = [parse_path_expr("a*b*a"), parse_path_expr("b*a*b")]
    return build_algebra(q, rels, 4, 3, name="A21")


def test_dimension_and_basis_order():
    alg = brauer_star()
    assert alg.dim == 6
    assert [b.length for b in alg.basis[:2]] == [0, 0]


def test_associative_and_unital():
    alg = brauer_star()
    assert alg.check_associativity()
    one = alg.one()
    for k in range(alg.dim):
        x = np.eye(alg.dim, dtype=np.int64)[k]
        assert np.array_equal(alg.product(one, x), x)
        assert np.array_equal(alg.product(x, one), x)


def test_product_convention():
    alg = brauer_star()
    # b*a: a first (1 -> 2), then b (2 -> 1): a loop at 1
    ba = alg.element("b*a")
    assert ba.any()
    assert not alg.element("a*a").any()
    assert np.array_equal(alg.product(alg.idempotent("1"), ba), ba)


def test_cartan_matrix(s6, s8):
    cm = cartan_matrix(s6.algebras["E"])
    assert (cm == cm.T).all()
    assert cm.sum() == 36
    assert cartan_matrix(s8.algebras["E"])[0].tolist() == [3, 2, 1, 0]


def test_symmetric_form():
    alg = brauer_star()
    res = verify_symmetric(alg)
    assert res.symmetric and is_symmetrizing(alg, res.form)


def test_non_symmetric_path_algebra(toys):
    assert not verify_symmetric(toys.algebras["A2"]).symmetric


def test_bad_automorphism_rejected():
    alg = brauer_star()
    with pytest.raises(ValueError):
        check_automorphism(alg, {"1": "2", "2": "1"}, {"a": parse_path_expr("a"), "b": parse_path_expr("b")})


def test_swap_automorphism():
    alg = brauer_star()
    s = check_automorphism(alg, {"1": "2", "2": "1"}, {"a": parse_path_expr("b"), "b": parse_path_expr("a")}, name="s")
    assert s.cycle_string() == "(1,2)"
    assert s.then(s).is_identity()
    assert np.array_equal(s.inverse.matrix, s.matrix)


def test_automorphism_images(s6):
    sigma = s6.automorphisms["sigma"]
    E = s6.algebras["E"]
    assert np.array_equal(sigma.apply(E.arrow("eps")), E.arrow("eta'"))
    for x in (E.arrow("eps"), E.element("eta*eps")):
        for y in (E.arrow("eta"), E.element("alpha'*eta")):
            assert np.array_equal(sigma.apply(E.product(x, y)), E.product(sigma.apply(x), sigma.apply(y)))


def test_subalgebras(s6, s8):
    assert s6.algebras["B"].dim == 12
    assert [s8.algebras[n].dim for n in "BCD"] == [6, 8, 4]
    emb = s8.subalgebras["B"]
    assert emb.vertex_of["2"] == emb.vertex_of["4"]


def test_non_admissible_rejected():
    q = Quiver(("1",), (("x", "1", "1"),))
    with pytest.raises(ValueError):
        build_algebra(q, [parse_path_expr("x")], 3, 3)
