"""
Reflections on the sequence space
=================================

Vectors with finitely many nonzero coordinates stand in for elements of ℓ².
A finite orthonormal family spans a subspace; the reflection 2P − I fixes
that subspace and negates everything orthogonal to it.
"""
import numpy as np

from orthogroups import (
    GOperator,
    OrthonormalFamily,
    SparseVector,
    apply,
    basis,
    compose,
    is_stable_O_member,
    op_distance,
    orthonormalize,
    reflection_flipping,
    reflection_spanning,
)

# A family from two overlapping vectors, made orthonormal.
F = orthonormalize([SparseVector({0: 1.0, 3: 1.0}), SparseVector({0: 1.0, 5: 2.0})])
print("family:", list(F))

# The reflection fixing span(F) negates every coordinate it does not touch,
# including all the ones far out in the sequence.
L = reflection_spanning(F)
x = SparseVector({0: 1.0, 1: -2.0, 1000: 0.5})
print("L x =", apply(L, x))

# L is an involution: L∘L is the identity, exactly up to round-off.
print("‖L∘L − I‖ =", op_distance(compose(L, L), GOperator.identity()))

# The empty family gives −I; flipping instead of spanning gives I − 2P.
print("reflection_spanning(∅) e7 =", apply(reflection_spanning(OrthonormalFamily()), basis(7)))
H = reflection_flipping(OrthonormalFamily([SparseVector({0: 1 / np.sqrt(2), 1: 1 / np.sqrt(2)})]))
print("Householder flip of e0 =", apply(H, basis(0)))

# Operators that negate infinitely many coordinates lie outside the stable
# group, which only contains finite deviations from the identity.
print("−I stable?", is_stable_O_member(GOperator.negative_identity()))
print("H stable?", is_stable_O_member(H))
print("L stable?", is_stable_O_member(L))
