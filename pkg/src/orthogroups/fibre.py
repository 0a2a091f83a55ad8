"""Evaluation at e₀ as a quotient map onto the sphere, its stabilisers and a
section, and the local trivialisation of O(j+1) → Sʲ with fibre O(j).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .decomposition import check_orthogonal, matrix_from_json, matrix_to_json, orthogonality_residual
from .errors import DegeneratePair, DimensionMismatch, InvalidFibre
from .operators import (
    GOperator,
    apply,
    compose,
    reflection_flipping,
    reflection_spanning,
)
from .sparse import OrthonormalFamily, SparseVector, basis, distance, norm
from .sphere import SpherePoint

COSET_TOL = 1e-9
PAIR_TOL = 1e-8
ANTIPODE_RADIUS = 1e-6


def project_lambda(A: GOperator) -> SpherePoint:
    """A ↦ A e₀."""
    return SpherePoint(apply(A, basis(0)), tol=1e-9)


def same_coset(A: GOperator, B: GOperator, tol: float = COSET_TOL) -> bool:
    """Whether A and B lie in the same left coset of the stabiliser of e₀."""
    return distance(apply(A, basis(0)), apply(B, basis(0))) <= tol


def stabilizer_membership(n: int, A: GOperator, tol: float = COSET_TOL) -> bool:
    """Whether A fixes each of e₀, …, e_{n−1}."""
    return all(distance(apply(A, basis(i)), basis(i)) <= tol for i in range(n))


def _unit_difference(x: SparseVector, y: SparseVector) -> SparseVector:
    # normalise before building the vector so that storage pruning cannot
    # eat small coordinates of a short difference
    raw = x.entries
    for i, v in y.items():
        raw[i] = raw.get(i, 0.0) - v
    n = np.sqrt(sum(v * v for v in raw.values()))
    return SparseVector({i: v / n for i, v in raw.items()})


def _flip_along(x: SparseVector, y: SparseVector) -> GOperator:
    return reflection_flipping(OrthonormalFamily([_unit_difference(x, y)], check=False))


def reflection_r(x: SparseVector, y: SparseVector) -> GOperator:
    """The reflection along x − y, which exchanges the unit vectors x and y."""
    if not distance(x, y) > PAIR_TOL:
        raise DegeneratePair(f"‖x − y‖ = {distance(x, y)!r} is too small")
    return _flip_along(x, y)


def _generic_section(x: SparseVector) -> GOperator:
    # −r(−e₀, x) = 2uuᵀ − I with u ∥ x + e₀
    u = _unit_difference(x, -basis(0))
    return reflection_spanning(OrthonormalFamily([u], check=False))


def section_h0(x: SparseVector) -> GOperator:
    """An orthogonal operator sending e₀ to ``x``.

    Away from −e₀ this is −r(−e₀, x).  Within 1e-6 of −e₀ that formula
    loses accuracy, so the point is first moved next to e₀ by the
    coordinate flip f on index 0 and ``f ∘ h(f x) ∘ h(e₀)`` is returned,
    where h is the generic formula.  At −e₀ itself this is exactly f.
    """
    e0 = basis(0)
    if distance(x, -e0) >= ANTIPODE_RADIUS:
        return _generic_section(x)
    flip0 = reflection_flipping(OrthonormalFamily([e0], check=False))
    near_pole = apply(flip0, x)
    return compose(flip0, compose(_generic_section(near_pole), _generic_section(e0)))


def frame_matrix(j: int, b: SparseVector) -> np.ndarray:
    """Orthogonal (j+1)×(j+1) matrix with first column ``b``.

    This is the section at ``b`` with columns 1..j negated, so that the
    frame at e₀ is the identity.
    """
    F = section_h0(b).dense(range(j + 1))
    F[:, 1:] *= -1.0
    return F


@dataclass(frozen=True, eq=False)
class TrivializationResult:
    base_point: SpherePoint
    fibre_part: np.ndarray

    def to_json(self) -> dict:
        return {"base": self.base_point.to_json(), "fibre": matrix_to_json(self.fibre_part)}

    @classmethod
    def from_json(cls, data) -> "TrivializationResult":
        base = SpherePoint(SparseVector.from_json(data["base"]), tol=1e-9)
        return cls(base, matrix_from_json(data["fibre"]))


def trivialize(j: int, A) -> TrivializationResult:
    """A ↦ (A e₀, fibre coordinates of A in the frame at A e₀).

    With Φ the frame at b = A e₀, ΦᵀA = diag(1, F) and F is the fibre part.
    """
    A = np.asarray(A, dtype=float)
    if A.shape != (j + 1, j + 1):
        raise DimensionMismatch(f"expected ({j + 1}, {j + 1}) matrix, got {A.shape}")
    A = check_orthogonal(A)
    b = SpherePoint(SparseVector.from_dense(A[:, 0]), tol=1e-9)
    Phi = frame_matrix(j, b)
    return TrivializationResult(b, (Phi.T @ A)[1:, 1:])


def untrivialize(j: int, r: TrivializationResult) -> np.ndarray:
    F = np.asarray(r.fibre_part, dtype=float)
    if F.shape != (j, j):
        raise InvalidFibre(f"fibre must be {j}×{j}, got {F.shape}")
    if j and orthogonality_residual(F) > 1e-9:
        raise InvalidFibre("fibre part is not orthogonal")
    b = r.base_point
    if b.max_index() > j or abs(norm(b) - 1.0) > 1e-9:
        raise InvalidFibre(f"base point is not a unit vector in R^{j + 1}")
    D = np.eye(j + 1)
    D[1:, 1:] = F
    return frame_matrix(j, b) @ D
