"""Euclidean motions of ℓ²: pairs (shift, rotor) under the semidirect product.

    (x₁, M₁) · (x₂, M₂) = (x₁ + M₁x₂, M₁M₂),    (M, v) acts by x ↦ Mx + v.

Elements whose rotor carries an explicit :class:`ReflectionWord` model the
subgroup built from finitely many reflections; the others are generic.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .decomposition import ReflectionWord
from .operators import GOperator, adjoint_inverse, apply, compose, conjugate_reflection
from .sparse import SparseVector


@dataclass(frozen=True, eq=False)
class EuclidElement:
    shift: SparseVector
    rotor: GOperator
    word: Optional[ReflectionWord] = None

    @classmethod
    def identity(cls) -> "EuclidElement":
        return cls(SparseVector(), GOperator.identity(), ReflectionWord(0, ()))

    @classmethod
    def translation(cls, v: SparseVector) -> "EuclidElement":
        return cls(v, GOperator.identity(), ReflectionWord(0, ()))

    @classmethod
    def from_word(cls, shift: SparseVector, word: ReflectionWord) -> "EuclidElement":
        return cls(shift, word.operator(), word)

    def __matmul__(self, other):
        return e_compose(self, other)

    def __call__(self, x: SparseVector) -> SparseVector:
        return e_act(self, x)

    def to_json(self) -> dict:
        out = {"shift": self.shift.to_json(), "rotor": self.rotor.to_json()}
        if self.word is not None:
            out["word"] = self.word.to_json()
        return out

    @classmethod
    def from_json(cls, data) -> "EuclidElement":
        word = ReflectionWord.from_json(data["word"]) if data.get("word") else None
        return cls(SparseVector.from_json(data["shift"]), GOperator.from_json(data["rotor"]), word)


def _join_words(a: Optional[ReflectionWord], b: Optional[ReflectionWord]):
    if a is None or b is None:
        return None
    return ReflectionWord(max(a.n, b.n), a.factors + b.factors)


def e_compose(g: EuclidElement, h: EuclidElement) -> EuclidElement:
    return EuclidElement(
        g.shift + apply(g.rotor, h.shift),
        compose(g.rotor, h.rotor),
        _join_words(g.word, h.word),
    )


def e_inverse(g: EuclidElement) -> EuclidElement:
    """(m, M)⁻¹ = (−M⁻¹m, M⁻¹)."""
    inv = adjoint_inverse(g.rotor)
    word = None
    if g.word is not None:
        # every factor is an involution, so the inverse word is the reversal
        word = ReflectionWord(g.word.n, tuple(reversed(g.word.factors)))
    return EuclidElement(-apply(inv, g.shift), inv, word)


def e_act(g: EuclidElement, x: SparseVector) -> SparseVector:
    return apply(g.rotor, x) + g.shift


def xi_conjugation_witness(g: EuclidElement, a: EuclidElement) -> EuclidElement:
    """g⁻¹ a g with its rotor rebuilt as a reflection word.

    The shift is −M⁻¹m + M⁻¹a + M⁻¹Am for g = (m, M), a = (a, A), and each
    factor of A's word is transported by Mᵀ, so the result again has a word
    of the same length.
    """
    if a.word is None:
        raise ValueError("rotor of `a` must carry its reflection word")
    M_inv = adjoint_inverse(g.rotor)
    m = g.shift
    shift = apply(M_inv, a.shift + apply(a.rotor, m) - m)
    factors = tuple(conjugate_reflection(g.rotor, f) for f in a.word.factors)
    top = max((max(f.support(), default=-1) for f in factors), default=-1)
    word = ReflectionWord(max(a.word.n, top + 1), factors)
    return EuclidElement(shift, word.operator(), word)
