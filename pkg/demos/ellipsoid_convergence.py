"""Full-space oscillatory integral with an ellipsoidal phase point.

The phase sqrt(x^2 + 2y^2 + 3z^2) is conical at the origin, where the
amplitude also carries a second-order singularity.  Spherical coordinates
confine the oscillation to the radius; the radial descent rule with m
points then converges like w^-(2m+1), and the 50-point outer rules add no
visible error.  Shrinking the outer rules to 30 points exposes the outer
integration as the new error floor.

This is the experiment behind ``nsdq run --experiment ellipsoid``.
"""

import numpy as np

from nsdq.experiments import fit_slope, run_ellipsoid

grid = np.geomspace(10.0, 1000.0, 10)

print("absolute error against the Si/Ci closed form")
header = f"{'omega':>8} " + " ".join(f"{f'm={m}':>10}" for m in (2, 4, 6, 8))
print(header)
tables = {m: run_ellipsoid(grid, m=m) for m in (2, 4, 6, 8)}
for i, omega in enumerate(grid):
    cells = " ".join(f"{tables[m][i].abs_err:10.1e}" for m in (2, 4, 6, 8))
    print(f"{omega:8.1f} {cells}")

fit = fit_slope(tables[2])
print(f"\nfitted decay of the m=2 column: w^{fit.slope:.2f} "
      f"(r^2 = {fit.r_squared:.4f}); higher m saturates double precision")

print("\nouter-rule plateau: same run with 30-point outer rules, m=8")
reduced = run_ellipsoid(grid, m=8, outer_cc=30, outer_trap=30)
for full_row, red_row in zip(tables[8], reduced):
    print(f"  omega={full_row.omega:7.1f}: 50-point {full_row.abs_err:.1e}   "
          f"30-point {red_row.abs_err:.1e}")
