"""r-variation of step families and the grid norms that measure it.

The r-variation of a finite value sequence is computed exactly by dynamic
programming (checked here against exhaustive enumeration), then evaluated
pointwise over a sampling grid and measured in L^p, weak-L^p, and Lorentz
norms.
"""

import numpy as np

from polysum import (
    GridSamples,
    distribution_function,
    hypercube,
    lorentz_p1_norm,
    lp_norm,
    random_trig_polynomial,
    sample_grid,
    v_r_bruteforce,
    v_r_exact,
    v_r_field,
    weak_lp_norm,
)

# exact r-variation: DP vs exhaustive enumeration
rng = np.random.default_rng(0)
v = rng.normal(size=10) + 1j * rng.normal(size=10)
for r in (1.0, 2.0, 3.0):
    print(f"V_{r} by DP: {v_r_exact(v, r):.12f}   "
          f"brute force: {v_r_bruteforce(v, r):.12f}")

print("\nmonotone families collapse to a single jump:")
mono = np.cumsum(np.abs(rng.normal(size=8)))
print("  V_3 =", v_r_exact(mono, 3.0), " last-first =", float(mono[-1] - mono[0]))

# the pointwise variation field of a random polynomial over the square
P = hypercube(2)
f = random_trig_polynomial(2, 8, 0.6, seed=1)
M = 17
field = v_r_field(f, P, M, 3.0)
fsamp = sample_grid(f, M)
print(f"\nvariation field on a {M}x{M} grid: "
      f"min {field.values.min():.3f}, max {field.values.max():.3f}")

for p in (1.5, 2.0, 3.0):
    print(f"p={p}: ||V_3||_p = {lp_norm(field, p):.4f}, "
          f"weak = {weak_lp_norm(field, p):.4f}, "
          f"||f||_p = {lp_norm(fsamp, p):.4f}, "
          f"Lorentz p,1 of |f| = {lorentz_p1_norm(fsamp.abs(), p):.4f}")

# the distribution function underlying all of these
print("\ndistribution function of the field at a few thresholds:")
for alpha in np.quantile(field.flat, [0.0, 0.5, 0.9]):
    print(f"  d({alpha:.3f}) = {distribution_function(field, float(alpha)):.4f}")

# two-level sanity example with a closed form
h = GridSamples(1, 10, np.array([2.0] * 3 + [0.5] * 7))
p = 2.0
print("\ntwo-level field: Lorentz norm", lorentz_p1_norm(h, p),
      " closed form", p * (0.5 + 1.5 * 0.3 ** (1 / p)))
