import numpy as np
import pytest
import scipy.linalg as sla
from hypothesis import given, strategies as st

from gkgeom import linalg as la

seeds = st.integers(0, 2**32 - 1)


def crandn(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def test_standard_basis_full_rank():
    assert la.span_reduce(np.eye(4)).rank == 4


def test_collinear_vectors_rank_one(rng):
    v = crandn(rng, 4)
    U = la.span_reduce([v, 2 * v, 3 * v])
    assert U.rank == 1 and U.contains(v)


@given(seeds)
def test_rank_matches_row_reduction(seed):
    rng = np.random.default_rng(seed)
    A = crandn(rng, 4, 3)
    M = A @ crandn(rng, 3, 6)
    assert la.span_reduce(M).rank == np.linalg.matrix_rank(M) == 3


def test_empty_input_needs_ambient():
    with pytest.raises(ValueError):
        la.span_reduce([])
    assert la.span_reduce([], ambient_dim=3).rank == 0


def test_mismatched_vectors_rejected():
    with pytest.raises(ValueError):
        la.span_reduce([np.ones(3), np.ones(4)])


def test_intersect_idempotent(rng):
    U = la.span_reduce(crandn(rng, 4, 2))
    assert la.subspace_eq(la.intersect(U, U), U)


def test_complementary_spans_meet_in_zero():
    e = np.eye(4)
    assert la.intersect(la.span_reduce(e[:, :2]), la.span_reduce(e[:, 2:])).rank == 0


@given(seeds)
def test_intersection_dimension_formula(seed):
    rng = np.random.default_rng(seed)
    U, W = la.span_reduce(crandn(rng, 4, 3)), la.span_reduce(crandn(rng, 4, 3))
    both = np.linalg.matrix_rank(np.hstack([U.frame, W.frame]))
    assert la.intersect(U, W).rank == 3 + 3 - both
    assert la.add(U, W).rank == both


def test_subspace_eq_basis_independent(rng):
    U = la.span_reduce(crandn(rng, 4, 2))
    mixed = la.span_reduce(U.frame @ crandn(rng, 2, 2))
    assert la.subspace_eq(U, mixed)


def test_subspace_eq_distinct_lines():
    e = np.eye(2)
    assert not la.subspace_eq(la.span_reduce(e[:, :1]), la.span_reduce(e[:, 1:]))


def test_subspace_eq_tolerates_tiny_noise(rng):
    U = la.span_reduce(crandn(rng, 4, 2))
    V = la.span_reduce(U.frame + 1e-14 * crandn(rng, 4, 2))
    assert la.subspace_eq(U, V, tol=1e-10)
    assert np.max(sla.subspace_angles(U.frame, V.frame)) < 1e-10


def test_tangent_block_isotropic():
    T = la.span_reduce(np.vstack([np.eye(3), np.zeros((3, 3))]))
    assert la.isotropy_check(T) == 0.0


def test_symmetric_graph_not_isotropic(rng):
    a = rng.standard_normal((3, 3))
    g = a @ a.T + np.eye(3)
    G = np.vstack([np.eye(3), g])
    P = la.pairing_matrix(3)
    # raw pairing matrix of the graph is 2g
    assert np.allclose(G.T @ P @ G, 2 * g)
    assert la.isotropy_check(la.span_reduce(G)) > 1e-3


@given(seeds)
def test_two_form_graph_isotropic(seed):
    rng = np.random.default_rng(seed)
    B = rng.standard_normal((4, 4))
    B = B - B.T
    assert la.isotropy_check(la.span_reduce(np.vstack([np.eye(4), B]))) < 1e-12


def test_split_space_rejects_nonpositive():
    with pytest.raises(ValueError):
        la.SplitSpace(0)
