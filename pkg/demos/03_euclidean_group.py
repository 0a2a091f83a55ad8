"""
Rigid motions
=============

A motion is a pair (shift, rotor) acting by x ↦ rotor(x) + shift.  Pairs
compose by (x₁, M₁)(x₂, M₂) = (x₁ + M₁x₂, M₁M₂).
"""
import numpy as np

from orthogroups import (
    EuclidElement,
    OrthonormalFamily,
    SparseVector,
    basis,
    distance,
    e_act,
    e_compose,
    e_inverse,
    householder_decompose,
    op_distance,
    random_orthogonal,
    reflection_flipping,
    xi_conjugation_witness,
)

flip0 = reflection_flipping(OrthonormalFamily([basis(0)]))

# Reflect in the e0-hyperplane, then move one unit along e1.
g = EuclidElement(basis(1), flip0)
print("g(e0) =", e_act(g, basis(0)))

# (e0, flip) is its own inverse: it reflects in the hyperplane x0 = ½.
h = EuclidElement(basis(0), flip0)
hh = e_compose(h, h)
print("h∘h shift:", hh.shift, " rotor distance to I:", op_distance(hh.rotor, EuclidElement.identity().rotor))

# Motions preserve distances.
x, y = SparseVector({0: 1.0, 4: 2.0}), SparseVector({2: -1.0})
print("‖x−y‖ =", distance(x, y), " ‖gx−gy‖ =", distance(e_act(g, x), e_act(g, y)))

# Motions whose rotor is a word of reflections form a normal subgroup:
# conjugating one by any motion gives another with a word of the same
# length, obtained by moving each reflection's family.
word = householder_decompose(random_orthogonal(4, seed=3))
a = EuclidElement.from_word(SparseVector({1: 0.5}), word)
k = EuclidElement(SparseVector({6: 1.0}), flip0)
w = xi_conjugation_witness(k, a)
direct = e_compose(e_inverse(k), e_compose(a, k))
print("word lengths:", len(a.word), "->", len(w.word))
print("witness vs direct product:", max(distance(w.shift, direct.shift), op_distance(w.rotor, direct.rotor)))
