"""Computable orthogonal operators on ℓ².

An operator is stored in the normal form ``sign ∘ block``:

* ``block`` acts as a k×k orthogonal matrix in the coordinates of a finite
  orthonormal family and as the identity on the orthogonal complement;
* ``sign`` is a diagonal ±1 pattern whose set of −1 entries is finite or
  cofinite.

The class contains ±I, every reflection 2P − I whose projection has finite
rank or finite corank, and is closed under composition and inversion.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .sparse import (
    STORAGE_EPS,
    OrthonormalFamily,
    SparseVector,
    _mgs_columns,
    basis,
    inner,
    union_support,
)

FINITE = "finite"
COFINITE = "cofinite"
BLOCK_ORTHO_TOL = 1e-9
EQUALITY_TOL = 1e-9


@dataclass(frozen=True)
class SignPattern:
    """Diagonal ±1 operator.

    ``mode == "finite"``: the −1 entries are exactly ``indices``.
    ``mode == "cofinite"``: every index except ``indices`` carries −1.
    """

    mode: str = FINITE
    indices: frozenset = frozenset()

    def __post_init__(self):
        if self.mode not in (FINITE, COFINITE):
            raise ValueError(f"unknown sign mode {self.mode!r}")
        object.__setattr__(self, "indices", frozenset(int(i) for i in self.indices))

    @classmethod
    def identity(cls) -> "SignPattern":
        return cls(FINITE, frozenset())

    @classmethod
    def negation(cls) -> "SignPattern":
        return cls(COFINITE, frozenset())

    def sign(self, i: int) -> int:
        negative = (i in self.indices) == (self.mode == FINITE)
        return -1 if negative else 1

    def apply(self, x: SparseVector) -> SparseVector:
        return SparseVector({i: self.sign(i) * v for i, v in x.items()})

    def compose(self, other: "SignPattern") -> "SignPattern":
        # Negative sets multiply by symmetric difference; complement parity
        # tracks the mode.
        idx = self.indices ^ other.indices
        mode = FINITE if (self.mode == COFINITE) == (other.mode == COFINITE) else COFINITE
        return SignPattern(mode, idx)

    def is_identity(self) -> bool:
        return self.mode == FINITE and not self.indices

    def to_json(self) -> dict:
        return {"mode": self.mode, "indices": sorted(self.indices)}

    @classmethod
    def from_json(cls, data) -> "SignPattern":
        return cls(data["mode"], frozenset(data.get("indices", ())))


@dataclass(frozen=True, eq=False)
class BlockPart:
    """Orthogonal matrix acting in the coordinates of ``basis``; identity elsewhere."""

    basis: OrthonormalFamily
    matrix: np.ndarray

    def __post_init__(self):
        M = np.array(self.matrix, dtype=float).reshape(len(self.basis), len(self.basis))
        k = M.shape[0]
        if k:
            resid = np.max(np.abs(M.T @ M - np.eye(k)))
            if resid > BLOCK_ORTHO_TOL:
                raise ValueError(f"block matrix is not orthogonal (residual {resid:.3e})")
        M.setflags(write=False)
        object.__setattr__(self, "matrix", M)
        # dense copy of the basis on its support, used by apply
        idx = self.basis.support()
        object.__setattr__(self, "_idx", idx)
        object.__setattr__(self, "_Q", self.basis.as_columns(idx))

    @classmethod
    def identity(cls) -> "BlockPart":
        return cls(OrthonormalFamily(), np.zeros((0, 0)))

    @classmethod
    def _from_columns(cls, indices: list[int], W: np.ndarray, matrix: np.ndarray) -> "BlockPart":
        # orthonormal columns W over `indices`; skips re-densifying the basis
        W = np.where(np.abs(W) >= STORAGE_EPS, W, 0.0)
        rows = np.flatnonzero(np.any(W != 0.0, axis=1))
        idx = [indices[r] for r in rows]
        Q = W[rows]
        fam = OrthonormalFamily((SparseVector.from_dense(Q[:, k], idx) for k in range(Q.shape[1])), check=False)
        M = np.array(matrix, dtype=float)
        if M.size and np.max(np.abs(M.T @ M - np.eye(M.shape[0]))) > BLOCK_ORTHO_TOL:
            raise ValueError("block matrix is not orthogonal")
        M.setflags(write=False)
        obj = object.__new__(cls)
        for name, value in (("basis", fam), ("matrix", M), ("_idx", idx), ("_Q", Q)):
            object.__setattr__(obj, name, value)
        return obj

    @property
    def size(self) -> int:
        return len(self.basis)

    def support(self) -> list[int]:
        return self.basis.support()

    def apply(self, x: SparseVector) -> SparseVector:
        if not self.size:
            return x
        get = x._entries.get
        xd = np.array([get(i, 0.0) for i in self._idx])
        c = self._Q.T @ xd
        delta = self._Q @ (self.matrix @ c - c)
        out = x.entries
        for i, v in zip(self._idx, delta.tolist()):
            out[i] = out.get(i, 0.0) + v
        return SparseVector(out)

    def columns_on(self, indices: list[int]) -> np.ndarray:
        """Basis as dense columns over ``indices`` (which must cover the support)."""
        pos = {i: r for r, i in enumerate(indices)}
        Q = np.zeros((len(indices), self.size))
        Q[[pos[i] for i in self._idx]] = self._Q
        return Q

    def conjugate_by_sign(self, sign: SignPattern) -> "BlockPart":
        """The block D·B·D for a sign pattern D (same matrix, flipped basis)."""
        if sign.is_identity() or not self.size:
            return self
        fam = OrthonormalFamily((sign.apply(q) for q in self.basis), check=False)
        return BlockPart(fam, self.matrix)

    def to_json(self) -> dict:
        return {"basis": self.basis.to_json(), "matrix": self.matrix.tolist()}

    @classmethod
    def from_json(cls, data) -> "BlockPart":
        fam = OrthonormalFamily.from_json(data.get("basis", []))
        M = np.array(data.get("matrix", []), dtype=float).reshape(len(fam), len(fam))
        return cls(fam, M)


@dataclass(frozen=True, eq=False)
class GOperator:
    """Orthogonal operator ``sign ∘ block`` (the block is applied first)."""

    sign: SignPattern
    block: BlockPart

    @classmethod
    def identity(cls) -> "GOperator":
        return cls(SignPattern.identity(), BlockPart.identity())

    @classmethod
    def negative_identity(cls) -> "GOperator":
        return cls(SignPattern.negation(), BlockPart.identity())

    def __call__(self, x: SparseVector) -> SparseVector:
        return apply(self, x)

    def __matmul__(self, other: "GOperator") -> "GOperator":
        return compose(self, other)

    def active_indices(self) -> list[int]:
        """Coordinates outside which the operator is a plain ±1 diagonal."""
        return sorted(set(self.block.support()) | self.sign.indices)

    def dense(self, indices: Iterable[int]) -> np.ndarray:
        """Matrix of the operator on ``span{e_i : i ∈ indices}``.

        Only meaningful when ``indices`` contains :meth:`active_indices`, in
        which case that span is invariant.
        """
        indices = list(indices)
        blk = self.block
        if not set(blk.support()) <= set(indices):
            cols = [apply(self, basis(i)).to_dense(indices) for i in indices]
            return np.column_stack(cols) if cols else np.zeros((0, 0))
        out = np.eye(len(indices))
        if blk.size:
            Q = blk.columns_on(indices)
            out += Q @ (blk.matrix - np.eye(blk.size)) @ Q.T
        signs = np.array([self.sign.sign(i) for i in indices], dtype=float)
        return signs[:, None] * out

    def to_json(self) -> dict:
        return {"sign": self.sign.to_json(), "block": self.block.to_json()}

    @classmethod
    def from_json(cls, data) -> "GOperator":
        return cls(SignPattern.from_json(data["sign"]), BlockPart.from_json(data["block"]))


@dataclass(frozen=True)
class ProjectionSpec:
    family: OrthonormalFamily


def project(spec, x: SparseVector) -> SparseVector:
    """Orthogonal projection x ↦ Σ ⟨x, v⟩ v over the members of the family."""
    family = spec.family if isinstance(spec, ProjectionSpec) else spec
    out: dict[int, float] = {}
    for v in family:
        c = inner(x, v)
        for i, a in v.items():
            out[i] = out.get(i, 0.0) + c * a
    return SparseVector(out)


def _minus_identity_block(family: OrthonormalFamily) -> BlockPart:
    k = len(family)
    return BlockPart(family, -np.eye(k))


def reflection_spanning(family: OrthonormalFamily) -> GOperator:
    """Reflection 2P − I that fixes span(family) and negates its complement.

    The empty family gives −I.
    """
    return GOperator(SignPattern.negation(), _minus_identity_block(family))


def reflection_flipping(family: OrthonormalFamily) -> GOperator:
    """Reflection I − 2P that negates span(family) and fixes its complement."""
    return GOperator(SignPattern.identity(), _minus_identity_block(family))


def apply(A: GOperator, x: SparseVector) -> SparseVector:
    return A.sign.apply(A.block.apply(x))


def _merge_blocks(first: BlockPart, second: BlockPart) -> BlockPart:
    """Block equal to ``first ∘ second`` on the union of the two active subspaces."""
    if not first.size:
        return second
    if not second.size:
        return first
    idx = union_support(list(first.basis) + list(second.basis))
    Q1 = first.columns_on(idx)
    Q2 = second.columns_on(idx)
    W = _mgs_columns(np.hstack([Q1, Q2]))
    m = W.shape[1]
    R1 = W.T @ Q1
    R2 = W.T @ Q2
    B1 = np.eye(m) + R1 @ (first.matrix - np.eye(first.size)) @ R1.T
    B2 = np.eye(m) + R2 @ (second.matrix - np.eye(second.size)) @ R2.T
    N = B1 @ B2
    if np.max(np.abs(N - np.eye(m))) <= 1e-13:
        return BlockPart.identity()
    return BlockPart._from_columns(idx, W, N)


def compose(A: GOperator, B: GOperator) -> GOperator:
    """A ∘ B in normal form.

    D_A B_A D_B B_B = (D_A D_B)(D_B B_A D_B) B_B, using D_B² = I.
    """
    moved = A.block.conjugate_by_sign(B.sign)
    return GOperator(A.sign.compose(B.sign), _merge_blocks(moved, B.block))


def adjoint_inverse(A: GOperator) -> GOperator:
    """The operator that is simultaneously Aᵀ and A⁻¹.

    (D B)⁻¹ = Bᵀ D = D (D Bᵀ D): the sign stays, the block matrix is
    transposed and its basis is pushed through the sign pattern.
    """
    blk = A.block
    if blk.size:
        flipped = blk.conjugate_by_sign(A.sign)
        blk = BlockPart(flipped.basis, blk.matrix.T)
    return GOperator(A.sign, blk)


def conjugate_reflection(X: GOperator, family: OrthonormalFamily) -> OrthonormalFamily:
    """Family {Xᵀ e : e ∈ family}.

    Reflecting in the returned family equals Xᵀ ∘ L ∘ X where L reflects in
    ``family``, which is why conjugating a finite product of reflections by
    any orthogonal X again gives a finite product of reflections.
    """
    Xt = adjoint_inverse(X)
    return OrthonormalFamily((apply(Xt, e) for e in family), check=False)


def op_distance(A: GOperator, B: GOperator) -> float:
    """Operator norm ‖A − B‖, computed exactly for this class.

    Both operators leave span{e_i : i ∈ C} invariant, where C collects every
    active coordinate; off C they are ±1 diagonals that agree everywhere or
    disagree everywhere depending on their sign modes.
    """
    idx = sorted(set(A.active_indices()) | set(B.active_indices()))
    inside = 0.0
    if idx:
        inside = float(np.linalg.norm(A.dense(idx) - B.dense(idx), ord=2))
    outside = 0.0 if A.sign.mode == B.sign.mode else 2.0
    return max(inside, outside)


def operators_close(A: GOperator, B: GOperator, tol: float = EQUALITY_TOL) -> bool:
    return op_distance(A, B) <= tol


def is_stable_O_member(A: GOperator) -> bool:
    """Whether A moves only finitely many coordinates.

    The block is always supported on finitely many coordinates, so this
    reduces to the sign pattern having finitely many −1 entries.
    """
    return A.sign.mode == FINITE
