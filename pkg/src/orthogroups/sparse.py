"""Finite-support vectors of ℓ² and orthonormal families built from them.

Every vector has finitely many nonzero coordinates, indexed by the natural
numbers.  A finite dimension ``n`` is modelled by only using indices below
``n``; the countable case simply leaves indices unbounded.
"""
from __future__ import annotations

import math
from typing import Iterable, Mapping

import numpy as np

STORAGE_EPS = 1e-14
DEPENDENCE_TOL = 1e-12
ORTHONORMAL_TOL = 1e-10


class SparseVector:
    """Immutable real vector with finite support.

    Coefficients with absolute value below ``STORAGE_EPS`` are dropped on
    construction, so repeated arithmetic cannot grow the support with
    round-off debris.

    >>> x = SparseVector({0: 3.0, 1: 4.0})
    >>> norm(x)
    5.0
    """

    __slots__ = ("_entries",)

    def __init__(self, entries: Mapping[int, float] | None = None):
        clean = {}
        if entries:
            if not all(map(math.isfinite, entries.values())):
                raise ValueError("non-finite coefficient")
            clean = {int(i): float(v) for i, v in entries.items() if abs(v) >= STORAGE_EPS}
            if clean and min(clean) < 0:
                raise ValueError(f"negative index {min(clean)}")
        object.__setattr__(self, "_entries", clean)

    def __setattr__(self, name, value):
        raise AttributeError("SparseVector is immutable")

    @classmethod
    def _trusted(cls, clean: dict) -> "SparseVector":
        # caller guarantees int keys >= 0 and finite floats above STORAGE_EPS
        obj = object.__new__(cls)
        object.__setattr__(obj, "_entries", clean)
        return obj

    @classmethod
    def basis(cls, i: int, scale: float = 1.0) -> "SparseVector":
        return cls({i: scale})

    @classmethod
    def zero(cls) -> "SparseVector":
        return cls()

    @classmethod
    def from_dense(cls, values, indices: Iterable[int] | None = None) -> "SparseVector":
        values = np.asarray(values, dtype=float).ravel()
        if indices is None:
            indices = range(len(values))
        idx = np.asarray(list(indices), dtype=np.int64)
        if len(idx) != len(values):
            raise ValueError("values and indices differ in length")
        if not np.all(np.isfinite(values)):
            raise ValueError("non-finite coefficient")
        if len(idx) and idx.min() < 0:
            raise ValueError(f"negative index {idx.min()}")
        keep = np.abs(values) >= STORAGE_EPS
        vec = SparseVector._trusted(dict(zip(idx[keep].tolist(), values[keep].tolist())))
        return vec if cls is SparseVector else cls(vec)

    @property
    def entries(self) -> dict[int, float]:
        return dict(self._entries)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(self._entries)

    def max_index(self) -> int:
        """Largest supported index, or -1 for the zero vector."""
        return max(self._entries, default=-1)

    def items(self):
        return self._entries.items()

    def __getitem__(self, i: int) -> float:
        return self._entries.get(i, 0.0)

    def __len__(self):
        return len(self._entries)

    def is_zero(self) -> bool:
        return not self._entries

    def to_dense(self, indices: Iterable[int] | int) -> np.ndarray:
        if isinstance(indices, (int, np.integer)):
            indices = range(int(indices))
        return np.array([self._entries.get(i, 0.0) for i in indices])

    def __add__(self, other: "SparseVector") -> "SparseVector":
        if not isinstance(other, SparseVector):
            return NotImplemented
        out = dict(self._entries)
        for i, v in other._entries.items():
            out[i] = out.get(i, 0.0) + v
        return SparseVector(out)

    def __sub__(self, other: "SparseVector") -> "SparseVector":
        if not isinstance(other, SparseVector):
            return NotImplemented
        out = dict(self._entries)
        for i, v in other._entries.items():
            out[i] = out.get(i, 0.0) - v
        return SparseVector(out)

    def __neg__(self) -> "SparseVector":
        return SparseVector({i: -v for i, v in self._entries.items()})

    def __mul__(self, a) -> "SparseVector":
        if isinstance(a, SparseVector):
            return NotImplemented
        a = float(a)
        return SparseVector({i: a * v for i, v in self._entries.items()})

    __rmul__ = __mul__

    def __truediv__(self, a) -> "SparseVector":
        return self * (1.0 / float(a))

    def __eq__(self, other):
        if not isinstance(other, SparseVector):
            return NotImplemented
        return self._entries == other._entries

    __hash__ = None

    def allclose(self, other: "SparseVector", atol: float = 1e-10) -> bool:
        return distance(self, other) <= atol

    def __repr__(self):
        body = ", ".join(f"{i}: {v!r}" for i, v in sorted(self._entries.items()))
        return f"{type(self).__name__}({{{body}}})"

    def to_json(self) -> dict:
        return {"entries": {str(i): v for i, v in sorted(self._entries.items())}}

    @classmethod
    def from_json(cls, data: Mapping) -> "SparseVector":
        try:
            entries = data["entries"]
        except (KeyError, TypeError):
            raise ValueError("SparseVector JSON needs an 'entries' object") from None
        return cls({int(k): float(v) for k, v in entries.items()})


def basis(i: int) -> SparseVector:
    """Unit coordinate vector e_i."""
    return SparseVector.basis(i)


def inner(x: SparseVector, y: SparseVector) -> float:
    if len(x) > len(y):
        x, y = y, x
    get = y._entries.get
    return math.fsum(v * get(i, 0.0) for i, v in x._entries.items())


def norm(x: SparseVector) -> float:
    return math.sqrt(inner(x, x))


def distance(x: SparseVector, y: SparseVector) -> float:
    return norm(x - y)


def union_support(vectors: Iterable[SparseVector]) -> list[int]:
    idx: set[int] = set()
    for v in vectors:
        idx.update(v.support)
    return sorted(idx)


def _mgs_columns(V: np.ndarray, tol: float = DEPENDENCE_TOL) -> np.ndarray:
    """Modified Gram–Schmidt with one re-orthogonalisation pass.

    Row-oriented: each accepted vector is removed from all later columns at
    once.  Columns whose residual norm falls below ``tol`` are dropped.
    """
    W = np.array(V, dtype=float, copy=True)
    n, m = W.shape
    Q = np.empty((n, m))
    k = 0
    for j in range(m):
        v = W[:, j]
        if k:
            K = Q[:, :k]
            v = v - K @ (K.T @ v)
        r = np.linalg.norm(v)
        if r < tol:
            continue
        q = v / r
        Q[:, k] = q
        k += 1
        if j + 1 < m:
            W[:, j + 1:] -= np.outer(q, q @ W[:, j + 1:])
    return Q[:, :k]


class OrthonormalFamily:
    """Ordered, pairwise-orthonormal list of sparse vectors.

    Construction checks ``|⟨vᵢ, vⱼ⟩ − δᵢⱼ| ≤ 1e-10`` over all pairs unless
    ``check=False``.  Use :func:`orthonormalize` to build one from
    arbitrary input.
    """

    __slots__ = ("_members",)

    def __init__(self, members: Iterable[SparseVector] = (), check: bool = True):
        members = tuple(members)
        for m in members:
            if not isinstance(m, SparseVector):
                raise TypeError("family members must be SparseVector")
        object.__setattr__(self, "_members", members)
        if check:
            resid = self.gram_residual()
            if resid > ORTHONORMAL_TOL:
                raise ValueError(f"family is not orthonormal (Gram residual {resid:.3e})")

    def __setattr__(self, name, value):
        raise AttributeError("OrthonormalFamily is immutable")

    @property
    def members(self) -> tuple[SparseVector, ...]:
        return self._members

    def __iter__(self):
        return iter(self._members)

    def __len__(self):
        return len(self._members)

    def __getitem__(self, k):
        return self._members[k]

    def __repr__(self):
        return f"OrthonormalFamily({list(self._members)!r})"

    def support(self) -> list[int]:
        return union_support(self._members)

    def gram(self) -> np.ndarray:
        k = len(self._members)
        G = np.empty((k, k))
        for a in range(k):
            for b in range(a, k):
                G[a, b] = G[b, a] = inner(self._members[a], self._members[b])
        return G

    def gram_residual(self) -> float:
        if not self._members:
            return 0.0
        return float(np.max(np.abs(self.gram() - np.eye(len(self._members)))))

    def as_columns(self, indices: list[int]) -> np.ndarray:
        """Dense matrix whose columns are the members restricted to ``indices``."""
        if not self._members:
            return np.zeros((len(indices), 0))
        return np.column_stack([m.to_dense(indices) for m in self._members])

    def to_json(self) -> list:
        return [m.to_json() for m in self._members]

    @classmethod
    def from_json(cls, data) -> "OrthonormalFamily":
        return cls(SparseVector.from_json(d) for d in data)


def orthonormalize(vectors: Iterable[SparseVector]) -> OrthonormalFamily:
    """Orthonormal family spanning the same subspace as ``vectors``.

    Linearly dependent inputs (residual norm below 1e-12 after projecting
    out the earlier members) are dropped, so the result may be shorter than
    the input.
    """
    vectors = list(vectors)
    idx = union_support(vectors)
    if not idx:
        return OrthonormalFamily((), check=False)
    V = np.column_stack([v.to_dense(idx) for v in vectors])
    Q = _mgs_columns(V)
    return OrthonormalFamily(
        (SparseVector.from_dense(Q[:, k], idx) for k in range(Q.shape[1])),
        check=False,
    )
