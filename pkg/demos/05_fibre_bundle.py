"""
Orthogonal groups fibred over spheres
=====================================

Sending an orthogonal operator A to its first column A e0 is a quotient map
onto the unit sphere; the operators over a point form a coset of the
stabiliser of e0.  In finite dimension O(j+1) → Sʲ is a bundle with fibre
O(j), and a frame built from one reflection trivialises it.
"""
import numpy as np

from orthogroups import (
    SparseVector,
    SpherePoint,
    TrivializationResult,
    apply,
    basis,
    distance,
    project_lambda,
    random_orthogonal,
    section_h0,
    trivialize,
    untrivialize,
)

np.set_printoptions(precision=4, suppress=True)

# The section h0 picks an operator over each point.  It is the negative of
# the reflection exchanging −e0 and x, with a separate branch near −e0.
for x in (basis(1), SpherePoint.normalized(SparseVector({0: -1.0, 4: 1e-9})), -basis(0)):
    print("x =", x, " |h0(x)e0 − x| =", distance(project_lambda(section_h0(x)), x))

# Split a random O(4) element into a base point on S³ and a fibre in O(3).
A = random_orthogonal(4, seed=2)
r = trivialize(3, A)
print("base point", r.base_point)
print("fibre\n", r.fibre_part)
print("round trip error", np.max(np.abs(untrivialize(3, r) - A)))

# Moving along the fibre does not move the base point.
F = random_orthogonal(3, seed=5)
B = untrivialize(3, TrivializationResult(r.base_point, F))
print("same base:", np.allclose(B[:, 0], A[:, 0]), " fibre recovered:", np.allclose(trivialize(3, B).fibre_part, F))

# In O(2) the fibre is O(1) = {±1}: rotations sit over +1, reflections over −1.
t = 0.7
for M in ([[np.cos(t), -np.sin(t)], [np.sin(t), np.cos(t)]], [[np.cos(t), np.sin(t)], [np.sin(t), -np.cos(t)]]):
    print("fibre", trivialize(1, M).fibre_part.ravel())
