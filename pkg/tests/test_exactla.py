import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from periodic_twist import exactla as la

P = 3


def matrices(max_rows=6, max_cols=6):
    return st.tuples(st.integers(1, max_rows), st.integers(1, max_cols)).flatmap(
        lambda s: arrays(np.int64, s, elements=st.integers(0, P - 1))
    )


@given(matrices())
def test_rank_nullity(m):
    ns = la.nullspace(m, P)
    assert la.rank(m, P) + ns.shape[0] == m.shape[1]
    if ns.size:
        assert not (m @ ns.T % P).any()


@given(matrices())
def test_row_basis_spans_row_space(m):
    rb = la.row_basis(m, P)
    assert rb.shape[0] == la.rank(m, P)
    both = np.concatenate([rb, m]) if rb.size else m
    assert la.rank(both, P) == la.rank(m, P)


@given(matrices(), st.integers(0, 2**31))
def test_solve_consistent_system(m, seed):
    rng = np.random.default_rng(seed)
    x = rng.integers(0, P, m.shape[1])
    b = m @ x % P
    y = la.solve(m, b, P)
    assert y is not None
    assert np.array_equal(m @ y % P, b)


def test_solve_inconsistent_returns_none():
    assert la.solve(np.array([[1, 0], [0, 0]]), np.array([0, 1]), P) is None


@settings(max_examples=50)
@given(st.integers(1, 6), st.integers(0, 2**31))
def test_inverse_of_invertible(n, seed):
    rng = np.random.default_rng(seed)
    while True:
        m = rng.integers(0, P, (n, n))
        if la.is_invertible(m, P):
            break
    inv = la.inverse(m, P)
    assert np.array_equal(m @ inv % P, np.eye(n, dtype=np.int64))


@given(st.integers(1, 5), st.integers(0, 2**31))
def test_batched_invertible_agrees(n, seed):
    rng = np.random.default_rng(seed)
    stack = rng.integers(0, P, (8, n, n))
    mask = la.batched_invertible(stack, P)
    assert list(mask) == [la.is_invertible(m, P) for m in stack]


@given(matrices(4, 6), matrices(4, 6))
def test_subspace_sum_and_intersection(a, b):
    n = max(a.shape[1], b.shape[1])
    a = np.pad(a, ((0, 0), (0, n - a.shape[1])))
    b = np.pad(b, ((0, 0), (0, n - b.shape[1])))
    U, V = la.Subspace(n, P, a), la.Subspace(n, P, b)
    assert (U + V).dim + U.intersect(V).dim == U.dim + V.dim
    assert U.contains_all(U.intersect(V).basis) if U.intersect(V).dim else True


@given(matrices(4, 6))
def test_quotient_coordinates_kill_subspace(a):
    U = la.Subspace(a.shape[1], P, a)
    if U.dim:
        assert not la.Subspace(a.shape[1], P).dim
        assert not U.quotient_coordinates(U.basis).any()
    assert len(U.complement_indices()) == a.shape[1] - U.dim


def test_prime_field_rejects_composite():
    with pytest.raises(ValueError):
        la.PrimeField(4)
    assert la.PrimeField(5).inv(2) == 3
