"""
Stellar surfaces from the standard equation
===========================================

The first zero of y'' + (2/x) y' + y^m = 0, y(0) = 1, y'(0) = 0 is the
dimensionless radius of a polytrope. Each index below is solved on the half
line with its own truncation and map parameters, and the zero is read off the
spectral solution.
"""

import numpy as np

from hermite_lane_emden import first_zero, lookup, solve
from hermite_lane_emden.problems import FIRST_ZEROS, standard_lane_emden

print(f"{'m':>4} {'N':>3} {'zero':>14} {'reference':>12} {'|diff|':>9}")
for m, (N, k, l, reference) in FIRST_ZEROS.items():
    problem, config = lookup(standard_lane_emden(m).name)
    report = solve(problem, config)
    zero = first_zero(report.approximant)
    print(f"{m:>4g} {N:>3d} {zero:14.10f} {reference:12.8f} {abs(zero - reference):9.1e}")

# The closed-form cases make a quick sanity check: sin(x)/x vanishes at pi.
problem, config = lookup("example1-m1")
print("\nm = 1 zero - pi =", first_zero(solve(problem, config).approximant) - np.pi)

# For m = 5 the solution (1 + x^2/3)^(-1/2) never reaches zero.
problem, config = lookup("example1-m5")
try:
    first_zero(solve(problem, config).approximant)
except ValueError as exc:
    print("m = 5:", exc)
