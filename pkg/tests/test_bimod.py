import numpy as np
import pytest

from periodic_twist.bimod import (
    LEFT,
    RIGHT,
    BalanceError,
    bimodule_hom_space,
    identity_map,
    is_central,
    is_twisted_central,
    make_bimodule_map,
    multiplication_map,
    tensor_over_subalgebra,
    twisted_regular,
    value_by_action,
)
from periodic_twist.corpus import tensor_vector
from periodic_twist.textformat import parse_tensor_expr


def test_tensor_dimensions(s6, s8):
    assert (s6.bimodules["Y0"].dim, s6.bimodules["Y1"].dim) == (108, 108)
    assert [s8.bimodules[n].dim for n in ("Y0", "Y1", "Y2")] == [150, 216, 126]


def test_component_dims_sum(s6):
    Y = s6.bimodules["Y0"]
    assert Y.component_dims().sum() == Y.dim


def test_multiplication_map_surjective(s6):
    f = multiplication_map(s6.bimodules["Y0"], s6.bimodules["R"])
    assert f.is_homomorphism() and f.rank() == 36


def test_balance_error_on_bad_assignment(s6):
    Y1, Y0 = s6.bimodules["Y1"], s6.bimodules["Y0"]
    src, dst, gens, vals = s6.map_data["d1"]
    flipped = list(vals)
    flipped[0] = tensor_vector(Y0, parse_tensor_expr("alpha' (x) e_1 + e_2 (x) alpha'"))
    with pytest.raises(BalanceError, match="relation"):
        make_bimodule_map(Y1, Y0, gens, flipped)


def test_twisted_centrality(s8):
    src, dst, gens, vals = s8.map_data["d3c"]
    assert is_twisted_central(src, dst, vals[0])
    src, dst, gens, vals = s8.map_data["d3"]
    assert not is_twisted_central(src, dst, vals[0])


def test_plain_centrality_of_identity_element(s6):
    R = s6.bimodules["R"]
    assert is_central(R, R.algebra.one())
    assert not is_central(R, R.algebra.idempotent("1"))


def test_value_by_action_sides_agree_for_maps(s8):
    src, dst, gens, vals = s8.map_data["d2c"]
    u = tensor_vector(src, parse_tensor_expr("delta4 (x) e_3"))
    f = s8.maps["d2c"]
    assert np.array_equal(value_by_action(src, dst, gens, vals, u, LEFT), f.matrix @ u % 3)
    assert np.array_equal(value_by_action(src, dst, gens, vals, u, RIGHT), f.matrix @ u % 3)


def test_hom_space_of_regular_bimodule(toys):
    A = toys.algebras["A21"]
    R = twisted_regular(A)
    # bimodule endomorphisms of A are multiplications by central elements: 1, ab, ba
    assert len(bimodule_hom_space(R, R)) == 3
    assert identity_map(R).is_isomorphism()


def test_tensor_over_whole_algebra_is_regular(toys):
    from periodic_twist.periodicity import find_bimodule_isomorphism
    from periodic_twist.qalg import identity_embedding

    A = toys.algebras["A21"]
    R = twisted_regular(A)
    T = tensor_over_subalgebra(R, identity_embedding(A), R)
    assert T.dim == A.dim
    assert find_bimodule_isomorphism(T, R)[0]
