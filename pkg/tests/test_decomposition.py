import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from orthogroups import (
    GOperator,
    NotOrthogonal,
    OrthonormalFamily,
    ReflectionWord,
    basis,
    compose,
    embed,
    householder_decompose,
    is_stable_O_member,
    op_distance,
    random_orthogonal,
    reconstruct,
    reflection_flipping,
)
from orthogroups.decomposition import matrix_from_json, matrix_to_json, reflection_matrix
from orthogroups.errors import DimensionMismatch

from conftest import operator_matrix, seeds

dims = st.integers(2, 8)


def test_identity_gives_empty_word():
    w = householder_decompose(np.eye(3))
    assert len(w) == 0
    assert np.array_equal(reconstruct(w), np.eye(3))


def test_swap_is_one_householder():
    S = np.array([[0.0, 1.0], [1.0, 0.0]])
    w = householder_decompose(S)
    assert len(w) == 1
    # I − 2uuᵀ with u = (e0 − e1)/√2, up to the sign of u
    u = w.factors[0][0].to_dense(2)
    assert abs(abs(u @ np.array([1, -1])) / math.sqrt(2) - 1) <= 1e-15
    assert np.allclose(reconstruct(w), S, atol=1e-15)


def test_quarter_turn_needs_two_factors():
    R = np.array([[0.0, -1.0], [1.0, 0.0]])
    w = householder_decompose(R)
    assert len(w) == 2
    L1, L2 = (reflection_matrix(f, 2) for f in w.factors)
    assert np.allclose(L1 @ L2, R, atol=1e-10)


def test_reconstruct_examples():
    assert np.array_equal(reconstruct(ReflectionWord(4, ())), np.eye(4))
    w = ReflectionWord(3, (OrthonormalFamily([basis(0)]),))
    assert np.array_equal(reconstruct(w), np.diag([-1.0, 1.0, 1.0]))
    with pytest.raises(DimensionMismatch):
        reconstruct(ReflectionWord(2, (OrthonormalFamily([basis(5)]),)))


def test_non_orthogonal_input_reports_residual():
    with pytest.raises(NotOrthogonal) as info:
        householder_decompose(np.array([[1.0, 0.1], [0.0, 1.0]]))
    assert info.value.residual == pytest.approx(0.1)
    with pytest.raises(DimensionMismatch):
        householder_decompose(np.ones((2, 3)))


def test_reflection_as_input_is_one_factor():
    # diag(−1, 1, 1) is already reduced in every column but the first
    w = householder_decompose(np.diag([-1.0, 1.0, 1.0]))
    assert len(w) == 1
    assert np.allclose(reconstruct(w), np.diag([-1.0, 1.0, 1.0]))


def test_random_orthogonal_examples():
    for s in range(5):
        assert abs(random_orthogonal(1, s)[0, 0]) == 1.0
    M = random_orthogonal(6, 11)
    assert np.max(np.abs(M.T @ M - np.eye(6))) <= 1e-10
    assert np.array_equal(random_orthogonal(5, 3), random_orthogonal(5, 3))


def test_embed_examples():
    assert op_distance(embed(np.eye(4)), GOperator.identity()) == 0.0
    assert op_distance(embed(np.diag([-1.0, 1.0])), reflection_flipping(OrthonormalFamily([basis(0)]))) == 0.0
    with pytest.raises(NotOrthogonal):
        embed(np.array([[2.0]]))


def test_matrix_json_round_trip():
    M = random_orthogonal(4, 0)
    assert np.array_equal(matrix_from_json(matrix_to_json(M)), M)
    with pytest.raises(DimensionMismatch):
        matrix_from_json({"n": 3, "rows": [[1.0, 0.0], [0.0, 1.0]]})


def test_word_json_round_trip():
    w = householder_decompose(random_orthogonal(5, 9))
    assert np.array_equal(reconstruct(ReflectionWord.from_json(w.to_json())), reconstruct(w))


@given(dims, seeds)
def test_round_trip(n, seed):
    M = random_orthogonal(n, seed)
    w = householder_decompose(M)
    assert len(w) <= n
    assert np.max(np.abs(reconstruct(w) - M)) <= 1e-8


@given(dims, seeds)
def test_factors_are_reflections(n, seed):
    w = householder_decompose(random_orthogonal(n, seed))
    for f in w.factors:
        L = reflection_matrix(f, n)
        assert np.max(np.abs(L @ L - np.eye(n))) <= 1e-9
        assert np.max(np.abs(L - L.T)) <= 1e-9


@given(dims, seeds)
def test_word_operator_matches_matrix(n, seed):
    M = random_orthogonal(n, seed)
    A = householder_decompose(M).operator()
    assert np.allclose(operator_matrix(A, n + 2), np.pad(M, (0, 2)) + np.diag([0.0] * n + [1.0, 1.0]), atol=1e-10)


@given(dims, seeds, seeds)
def test_embed_is_homomorphism(n, s1, s2):
    M, N = random_orthogonal(n, s1), random_orthogonal(n, s2)
    assert op_distance(embed(M @ N), compose(embed(M), embed(N))) <= 1e-9


@given(dims, seeds)
def test_embedded_matrices_are_stable(n, seed):
    assert is_stable_O_member(embed(random_orthogonal(n, seed)))


@given(dims, seeds)
def test_slightly_perturbed_input_is_accepted(n, seed):
    rng = np.random.default_rng(seed)
    M = random_orthogonal(n, seed) + 1e-11 * rng.standard_normal((n, n))
    w = householder_decompose(M)
    assert np.max(np.abs(reconstruct(w) - M)) <= 1e-8
