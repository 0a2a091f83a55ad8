"""
Orthogonal matrices as products of reflections
==============================================

Every n×n orthogonal matrix is a product of at most n Householder
reflections.  We factor a few matrices and rebuild them.
"""
import numpy as np

from orthogroups import embed, householder_decompose, op_distance, random_orthogonal, reconstruct
from orthogroups.decomposition import reflection_matrix

np.set_printoptions(precision=4, suppress=True)

# The swap of two coordinates is itself a single reflection.
swap = np.array([[0.0, 1.0], [1.0, 0.0]])
w = householder_decompose(swap)
print("swap ->", len(w), "factor, normal", w.factors[0][0])

# A quarter turn needs two.
quarter = np.array([[0.0, -1.0], [1.0, 0.0]])
w = householder_decompose(quarter)
print("quarter turn ->", len(w), "factors")
for f in w.factors:
    print(reflection_matrix(f, 2))

# Random matrices of growing size: word length never exceeds n.
for n in range(2, 9):
    M = random_orthogonal(n, seed=n)
    w = householder_decompose(M)
    err = np.max(np.abs(reconstruct(w) - M))
    print(f"n={n}: {len(w)} factors, max error {err:.1e}")

# A word is also an operator on the whole sequence space, equal to the
# matrix embedded in the leading coordinates.
M = random_orthogonal(5, seed=1)
print("word vs embed:", op_distance(householder_decompose(M).operator(), embed(M)))
