"""
Isothermal gas sphere
=====================

y'' + (2/x) y' + e^y = 0 with y(0) = y'(0) = 0 has no closed form. We solve
it, compare with a tabulated series solution, and look at how fast the
Hermite coefficients fall off.
"""

import numpy as np
from scipy.integrate import solve_ivp

from hermite_lane_emden import coefficient_decay, error_table, lookup, solve
from hermite_lane_emden.problems import published_grid

problem, config = lookup("isothermal")
report = solve(problem, config)
print(f"N={config.N} k={config.k} l={config.l}: converged in {report.iterations} Newton steps,"
      f" max collocation residual {report.residual_max:.1e}")

# The series column is itself a truncation, so add a tight ODE integration
# started from the regular expansion y = -x^2/6 + x^4/120 near the origin.
x0 = 1e-4
ivp = solve_ivp(lambda x, s: [s[1], -np.exp(s[0]) - 2 * s[1] / x], (x0, 2.5),
                [-x0**2 / 6 + x0**4 / 120, -x0 / 3 + x0**3 / 30],
                rtol=1e-12, atol=1e-14, dense_output=True)

table = error_table(problem, report, published_grid("isothermal"))
print(f"\n{'x':>5} {'collocation':>14} {'series':>14} {'|diff|':>9} {'vs ODE':>9}")
for row in table:
    ode = ivp.sol(row.x)[0] if row.x > x0 else 0.0
    print(f"{row.x:5.2f} {row.computed:14.10f} {row.reference:14.10f} {row.abs_error:9.1e}"
          f" {abs(row.computed - ode):9.1e}")

# Coefficient magnitudes on a log scale. The middle of the spectrum carries
# the slow logarithmic growth of y; past it the magnitudes drop by orders of
# magnitude within a few indices.
print("\n  i  log10|a_i|")
for i, mag in coefficient_decay(report)[::3]:
    print(f"{i:3d}  {np.log10(mag):7.2f}  " + "#" * int(max(0, 14 + 2 * np.log10(mag))))
