"""Random inputs for property checks.  All functions take a numpy Generator."""
from __future__ import annotations

import numpy as np

from .decomposition import ReflectionWord, embed, random_orthogonal
from .euclid import EuclidElement
from .operators import (
    FINITE,
    COFINITE,
    BlockPart,
    GOperator,
    SignPattern,
    compose,
    reflection_flipping,
    reflection_spanning,
)
from .sparse import OrthonormalFamily, SparseVector, norm, orthonormalize
from .sphere import SpherePoint


def random_vector(rng, max_support: int = 32, max_index: int = 40) -> SparseVector:
    k = int(rng.integers(1, max_support + 1))
    idx = rng.choice(max_index, size=min(k, max_index), replace=False)
    return SparseVector(dict(zip(idx.tolist(), rng.standard_normal(len(idx)).tolist())))


def random_unit(rng, max_support: int = 32, max_index: int = 40) -> SpherePoint:
    return SpherePoint.normalized(random_vector(rng, max_support, max_index))


def random_family(rng, max_size: int = 4, max_support: int = 32, max_index: int = 40) -> OrthonormalFamily:
    """Orthonormalised random vectors; may be empty."""
    k = int(rng.integers(0, max_size + 1))
    return orthonormalize(random_vector(rng, max_support, max_index) for _ in range(k))


def random_reflection(rng, **kw) -> GOperator:
    fam = random_family(rng, **kw)
    return reflection_spanning(fam) if rng.random() < 0.5 else reflection_flipping(fam)


def random_sign(rng, max_index: int = 40) -> SignPattern:
    k = int(rng.integers(0, 4))
    idx = frozenset(rng.choice(max_index, size=k, replace=False).tolist())
    return SignPattern(FINITE if rng.random() < 0.6 else COFINITE, idx)


def random_operator(rng, max_index: int = 40) -> GOperator:
    """Random element of the sign ∘ block class, built one of three ways."""
    kind = int(rng.integers(0, 3))
    if kind == 0:
        # sign pattern over a random dense block on random coordinates
        fam = random_family(rng, max_size=4, max_support=6, max_index=max_index)
        M = random_orthogonal(len(fam), int(rng.integers(2**31))) if len(fam) else np.zeros((0, 0))
        return GOperator(random_sign(rng, max_index), BlockPart(fam, M))
    if kind == 1:
        n = int(rng.integers(1, 7))
        return embed(random_orthogonal(n, int(rng.integers(2**31))))
    out = GOperator.identity()
    for _ in range(int(rng.integers(1, 4))):
        out = compose(out, random_reflection(rng, max_size=3, max_support=6, max_index=max_index))
    return out


def random_word(rng, max_len: int = 3, max_index: int = 12) -> ReflectionWord:
    factors = []
    for _ in range(int(rng.integers(1, max_len + 1))):
        fam = random_family(rng, max_size=3, max_support=6, max_index=max_index)
        factors.append(fam)
    return ReflectionWord(max_index, tuple(factors))


def random_euclid(rng, with_word: bool = False) -> EuclidElement:
    shift = random_vector(rng, max_support=8, max_index=20)
    if with_word:
        return EuclidElement.from_word(shift, random_word(rng))
    return EuclidElement(shift, random_operator(rng, max_index=20))


def random_disc_point(rng, pole: int, radius: float = 0.9, max_index: int = 12) -> SparseVector:
    """Point of the chart disc (zero pole coordinate) with norm ≤ radius."""
    v = random_vector(rng, max_support=8, max_index=max_index).entries
    v.pop(pole, None)
    v = SparseVector(v)
    if v.is_zero():
        return v
    return v * (radius * rng.random() / norm(v))
