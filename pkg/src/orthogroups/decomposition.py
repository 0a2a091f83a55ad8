"""Dense orthogonal matrices as finite products of reflections.

Column by column, a Householder reflection sends the current column to the
matching unit vector; orthogonality then forces the rest of that row to
vanish and the trailing block is again orthogonal.  Collecting the
reflections L₁, …, L_k gives L_k ⋯ L₁ A = I, hence A = L₁ L₂ ⋯ L_k.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .errors import DimensionMismatch, NotOrthogonal
from .operators import BlockPart, GOperator, SignPattern, compose, reflection_flipping
from .sparse import OrthonormalFamily, SparseVector, basis

INPUT_TOL = 1e-9
SKIP_TOL = 1e-12


def orthogonality_residual(M) -> float:
    M = np.asarray(M, dtype=float)
    return float(np.max(np.abs(M.T @ M - np.eye(M.shape[0])))) if M.size else 0.0


def check_orthogonal(M, tol: float = INPUT_TOL) -> np.ndarray:
    """Return ``M`` as a float array, raising :class:`NotOrthogonal` if it is not."""
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] < 1:
        raise DimensionMismatch(f"expected a non-empty square matrix, got shape {M.shape}")
    resid = orthogonality_residual(M)
    if not resid <= tol:
        raise NotOrthogonal(resid, tol)
    return M


@dataclass(frozen=True)
class ReflectionWord:
    """Ordered reflections I − 2P_G over coordinates ``< n``.

    The word represents the product ``factors[0] · factors[1] ⋯`` (leftmost
    factor applied last).
    """

    n: int
    factors: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))

    def __len__(self):
        return len(self.factors)

    def max_index(self) -> int:
        return max((max(f.support(), default=-1) for f in self.factors), default=-1)

    def operator(self) -> GOperator:
        """The word as a :class:`GOperator`."""
        return reduce(
            compose, (reflection_flipping(f) for f in self.factors), GOperator.identity()
        )

    def to_json(self) -> dict:
        return {"n": self.n, "factors": [f.to_json() for f in self.factors]}

    @classmethod
    def from_json(cls, data) -> "ReflectionWord":
        return cls(int(data["n"]), tuple(OrthonormalFamily.from_json(f) for f in data["factors"]))


def matrix_to_json(M) -> dict:
    M = np.asarray(M, dtype=float)
    return {"n": int(M.shape[0]), "rows": M.tolist()}


def matrix_from_json(data) -> np.ndarray:
    n = int(data["n"])
    M = np.array(data["rows"], dtype=float)
    if M.shape != (n, n):
        raise DimensionMismatch(f"rows have shape {M.shape}, expected ({n}, {n})")
    return M


def _householder_vector(c: np.ndarray):
    """Unit u with (I − 2uuᵀ) c = ‖c‖ e₀, or None if c is already ‖c‖ e₀.

    Uses Parlett's form of c₀ − ‖c‖ when c₀ > 0 to avoid cancellation.
    """
    tail = c[1:]
    sigma = float(tail @ tail)
    nc = np.sqrt(c[0] ** 2 + sigma)
    if c[0] > 0 and np.sqrt(sigma) <= SKIP_TOL:
        return None
    v = c.copy()
    if c[0] <= 0:
        v[0] = c[0] - nc
    else:
        v[0] = -sigma / (c[0] + nc)
    return v / np.linalg.norm(v)


def householder_decompose(M) -> ReflectionWord:
    """Write an orthogonal matrix as a product of at most ``n`` reflections.

    Raises
    ------
    NotOrthogonal
        If ``max|MᵀM − I| > 1e-9``.
    """
    A = check_orthogonal(M).copy()
    n = A.shape[0]
    factors = []
    for j in range(n):
        u = _householder_vector(A[j:, j])
        if u is None:
            continue
        A[j:, j:] -= 2.0 * np.outer(u, u @ A[j:, j:])
        factors.append(OrthonormalFamily([SparseVector.from_dense(u, range(j, n))], check=False))
    return ReflectionWord(n, tuple(factors))


def reflection_matrix(family: OrthonormalFamily, n: int) -> np.ndarray:
    """Dense matrix of I − 2P_family on the first ``n`` coordinates."""
    if family.support() and max(family.support()) >= n:
        raise DimensionMismatch(f"factor uses index {max(family.support())} >= n = {n}")
    G = family.as_columns(list(range(n)))
    return np.eye(n) - 2.0 * G @ G.T


def reconstruct(word: ReflectionWord) -> np.ndarray:
    out = np.eye(word.n)
    for f in word.factors:
        out = out @ reflection_matrix(f, word.n)
    return out


def random_orthogonal(n: int, seed: int) -> np.ndarray:
    """Deterministic random orthogonal matrix.

    Product of ``n`` Householder reflections along Gaussian directions and
    a random diagonal sign.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.default_rng(seed)
    Q = np.diag(rng.choice([-1.0, 1.0], size=n))
    for _ in range(n):
        v = rng.standard_normal(n)
        v /= np.linalg.norm(v)
        Q = Q - 2.0 * np.outer(v, v @ Q)
    return Q


def embed(M) -> GOperator:
    """Operator acting as ``M`` on coordinates 0..n−1 and as the identity above."""
    M = check_orthogonal(M)
    n = M.shape[0]
    fam = OrthonormalFamily((basis(i) for i in range(n)), check=False)
    return GOperator(SignPattern.identity(), BlockPart(fam, M))
