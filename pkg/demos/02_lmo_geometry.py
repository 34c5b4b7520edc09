# Linear minimization oracles over the three built-in constraint sets.
#
# A Frank-Wolfe step needs argmin_{s in X} <g, s>, which each set solves in
# closed form at a vertex. The brute-force enumeration oracle double-checks
# every answer here.

import numpy as np

from stochfw import ConstraintSet, contains, diameter, lmo
from stochfw.reference import lmo_by_enumeration

g = np.array([3.0, -1.0, 2.0])

for kind in ("l1_ball", "simplex", "linf_box"):
    cset = ConstraintSet(kind, radius=1.0, dim=3)
    s = lmo(cset, g)
    s_enum = lmo_by_enumeration(cset, g)
    assert np.array_equal(s, s_enum)
    print(f"{kind:9s} lmo({g}) = {s}   <g,s> = {g @ s:+.3f}   D = {diameter(cset):.3f}")

# the l1 ball pushes all mass onto the single largest-|gradient| coordinate,
# the simplex onto the smallest gradient entry, the box onto every sign
print()

# ties (e.g. a zero gradient at a stationary point) resolve deterministically
cset = ConstraintSet("l1_ball", radius=2.0)
print("l1 lmo(0) =", lmo(cset, np.zeros(3)), " (lowest-index vertex, +r sign)")

# vertices are always feasible, and the chosen vertex is scale-invariant
rng = np.random.default_rng(0)
for _ in range(1000):
    v = rng.normal(size=3)
    s = lmo(cset, v)
    assert contains(cset, s, 1e-12)
    assert np.array_equal(s, lmo(cset, 7.5 * v))
print("1000 random gradients: vertices feasible, direction scale-invariant")
