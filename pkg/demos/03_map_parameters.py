"""
Choosing N, k and l
===================

The map steepness k and the scaling length l decide where on the half line
the collocation points sit. This walk-through sweeps them for the linear
problem y'' + (2/x) y' - 2(2x^2 + 3) y = 0, whose solution is e^{x^2}.
"""

import numpy as np

from hermite_lane_emden import error_table, lookup, solve
from hermite_lane_emden.problems import published_grid
from hermite_lane_emden.solver import collocation_points

problem, base = lookup("example7")
grid = published_grid("example7")


def max_error(config):
    return error_table(problem, solve(problem, config), grid).max_error


print("points span for a few k at N = 30:")
for k in (1.0, 3.0, 6.0):
    pts = collocation_points(base.updated(k=k))
    print(f"  k={k:<4g} x in [{pts.min():.2e}, {pts.max():.2f}]")

print("\nmax error over the table grid")
print(f"{'N':>4}" + "".join(f"  k={k:<7g}" for k in (2.0, 4.0, 6.0)))
for N in (10, 20, 30):
    errs = [max_error(base.updated(N=N, k=k)) for k in (2.0, 4.0, 6.0)]
    print(f"{N:>4}" + "".join(f"  {e:9.1e}" for e in errs))

print("\nand in l at the default N, k:")
for l in (1.0, 2.0, 3.0):
    print(f"  l={l:g}: {max_error(base.updated(l=l)):.1e}")
