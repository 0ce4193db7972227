"""The rectangular duct: where direct descent fails and the polar fix.

The kernel exp(i w r)/r over a rectangle touching the singular point is
the model integral of baffled-duct acoustics.  Treating it by nested
univariate descent in Cartesian coordinates leaves square-root
singularities on the descent parameters (the phase is conical, not smooth,
at the origin), so the error of that method never decays past a fixed
relative level.  The polar decomposition evaluates the central
contribution on radial descent paths and the boundary term along
closed-form angle paths, and reaches machine precision with a few points.
"""

import numpy as np

from nsdq.experiments import run_duct

grid = np.geomspace(10.0, 10000.0, 7)

print("relative error vs the reduced 1-D reference (a=1, b=2, f = y cos x)")
print(f"{'omega':>9} {'corner':>11} {'direct':>11} {'modified':>11}")
corner = run_duct(grid, n_gl=8)
direct = run_duct(grid, n_gl=8, mode="direct")
modified = run_duct(grid, n_gl=8, mode="direct_modified")
for c, d, m in zip(corner, direct, modified):
    print(f"{c.omega:9.0f} {c.rel_err:11.1e} {d.rel_err:11.1e} {m.rel_err:11.1e}")

print("""
The direct column sits at a constant ~2e-1: its corner term at (0, b)
keeps an untreated sqrt singularity whose quadrature error scales exactly
with the integral.  The corner and modified columns converge to the
reference noise floor within a decade of frequency.""")

print("rule-size sweep of the corner mode at omega = 100:")
for n_gl in (2, 4, 6, 8):
    row = run_duct([100.0], n_gl=n_gl)[0]
    print(f"  n_gl={n_gl} (n_gh={row.params['n_gh']}): rel err {row.rel_err:.1e}")
