import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from orthogroups import OrthonormalFamily, SparseVector, basis, inner, norm, orthonormalize
from orthogroups.sparse import STORAGE_EPS

from conftest import coefficients, sparse_vectors


def test_inner_examples():
    assert inner(basis(0), basis(0)) == 1.0
    assert inner(basis(0), basis(1)) == 0.0
    assert inner(SparseVector({0: 1, 1: 2}), SparseVector({0: 3, 1: 4})) == 11.0
    assert inner(SparseVector(), SparseVector()) == 0.0


def test_norm_examples():
    assert norm(basis(7)) == 1.0
    assert norm(SparseVector({0: 3, 1: 4})) == 5.0
    assert norm(SparseVector()) == 0.0


def test_orthonormalize_examples():
    fam = orthonormalize([SparseVector({0: 1}), SparseVector({0: 1, 1: 1})])
    assert len(fam) == 2
    assert fam[0].allclose(basis(0), 1e-15) and fam[1].allclose(basis(1), 1e-15)

    fam = orthonormalize([basis(3), basis(5)])
    assert [m for m in fam] == [basis(3), basis(5)]

    fam = orthonormalize([SparseVector({0: 1}), SparseVector({0: 2})])
    assert len(fam) == 1 and fam[0] == basis(0)


def test_storage_pruning():
    v = SparseVector({0: 1.0, 1: 1e-15, 2: -5e-15, 3: 2e-14})
    assert v.support == {0, 3}
    assert (basis(0) - basis(0)).is_zero()
    assert SparseVector.from_dense([0.0, 1e-20, 2.0]).entries == {2: 2.0}


def test_invalid_entries_rejected():
    with pytest.raises(ValueError):
        SparseVector({-1: 1.0})
    with pytest.raises(ValueError):
        SparseVector({0: math.nan})
    with pytest.raises(ValueError):
        SparseVector.from_dense([1.0, math.inf])


def test_family_rejects_non_orthonormal():
    with pytest.raises(ValueError):
        OrthonormalFamily([basis(0), SparseVector({0: 1, 1: 1})])
    fam = OrthonormalFamily([basis(0), basis(4)])
    assert fam.gram_residual() == 0.0


def test_json_round_trip():
    v = SparseVector({0: 0.1, 17: -3.25})
    assert SparseVector.from_json(v.to_json()) == v
    fam = orthonormalize([SparseVector({0: 1, 2: 1}), basis(1)])
    assert [m for m in OrthonormalFamily.from_json(fam.to_json())] == list(fam)


@given(sparse_vectors(), sparse_vectors(), sparse_vectors(), coefficients, coefficients)
def test_inner_is_linear(x, y, z, a, b):
    lhs = inner(a * x + b * y, z)
    rhs = a * inner(x, z) + b * inner(y, z)
    scale = (abs(a) * norm(x) + abs(b) * norm(y)) * norm(z) + 1e-300
    assert abs(lhs - rhs) <= 1e-12 * scale


@given(sparse_vectors(), sparse_vectors())
def test_cauchy_schwarz(x, y):
    assert abs(inner(x, y)) <= norm(x) * norm(y) * (1 + 1e-12) + 1e-12


@given(st.lists(sparse_vectors(nonzero=True), min_size=1, max_size=6), sparse_vectors())
def test_bessel_inequality(vs, x):
    fam = orthonormalize(vs)
    assert sum(inner(x, v) ** 2 for v in fam) <= norm(x) ** 2 * (1 + 1e-12) + 1e-10


@given(st.lists(sparse_vectors(nonzero=True), min_size=1, max_size=6))
def test_orthonormalize_output_is_orthonormal(vs):
    fam = orthonormalize(vs)
    assert fam.gram_residual() <= 1e-10
    # dense oracle: same span as numpy's rank-revealing SVD
    idx = sorted(set().union(*(v.support for v in vs)))
    V = np.column_stack([v.to_dense(idx) for v in vs])
    Q = fam.as_columns(idx)
    assert np.allclose(Q @ (Q.T @ V), V, atol=1e-9 * max(1.0, np.abs(V).max()))


@given(st.lists(sparse_vectors(nonzero=True), min_size=1, max_size=6))
def test_orthonormalize_idempotent(vs):
    once = orthonormalize(vs)
    twice = orthonormalize(once.members)
    assert len(twice) == len(once)
    assert np.max(np.abs(twice.gram() - once.gram()), initial=0.0) <= 1e-10
    idx = once.support()
    A, B = once.as_columns(idx), twice.as_columns(idx)
    assert np.allclose(A @ A.T, B @ B.T, atol=1e-10)


@given(sparse_vectors())
def test_stored_entries_above_epsilon(x):
    assert all(abs(v) >= STORAGE_EPS for _, v in x.items())
