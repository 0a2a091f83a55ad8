"""
The infinite-dimensional sphere is contractible
===============================================

First push x along the normalised segment to its index shift Sx, which has
no e0 component.  Then slide from Sx to e0 along a quarter circle.  Neither
stage passes through zero, which is impossible in finite dimensions.
"""
import json

import numpy as np

from orthogroups import SparseVector, SpherePoint, basis, chart_forward, chart_inverse, contract_path
from orthogroups.suites import frechet_error

x = SpherePoint.normalized(SparseVector({0: 1.0, 1: -1.0, 2: 0.5}))
path = contract_path(x, steps=201)

print("start", path.points[0])
print("middle (= Sx)", path.points[100])
print("end", path.points[-1])
print("max |‖p‖ − 1| =", path.max_norm_residual())
print("path length ≈", round(path.length(), 4))

# The uniform-time path slows to a halt near e0 like √(1 − t), so its
# steps are uneven; the arc schedule visits the same points evenly.
for schedule in ("linear", "arc"):
    p = contract_path(x, 1000, schedule=schedule)
    g = p.gaps()
    print(f"{schedule:>6}: largest step / mean step = {g.max() / g.mean():.2f}")

# Plot-ready output: the first coordinates of every sample.
curve = np.array([[pt[0], pt[1], pt[2], pt[3]] for pt in path.points])
print(json.dumps({"t": path.times[:3], "coords": curve[:3].round(6).tolist()}))

# Charts: the upper hemisphere around e_p is a disc in the remaining
# coordinates, and the change of chart is smooth.
y = chart_forward(0, x)
print("chart 0 coordinates", y, "back:", chart_inverse(0, y))
print("derivative vs finite differences:",
      frechet_error(2, 0, SparseVector({1: 0.3, 2: 0.4}), SparseVector({1: 1.0, 3: 0.5})))
