"""Boundary-embedding approximant on (0, inf).

For coefficients a_0..a_N, initial data (A, B) and a map with scaling ``l``

    u(x) = A + B x + s * sum_i a_i H~_i(phi(s)),    s = x / l.

Every mapped Hermite function vanishes faster than any power as s -> 0+, so
u(0+) = A and u'(0+) = B regardless of the coefficients.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

import numpy as np

from .basis import hermite_derivative_tables
from .mapping import DomainMap, _as_positive, forward, forward_derivatives


def basis_matrices(dmap, N, points):
    """Value, first and second x-derivative of s * H~_i(phi(s)) at ``points``.

    Returns three arrays of shape ``(len(points), N + 1)`` so that, e.g.,
    ``M1 @ a`` is the first derivative of the spectral part at every point.
    """
    x = _as_positive(np.atleast_1d(np.asarray(points, dtype=float)))
    l = dmap.l
    s = x / l
    w = forward(dmap, s)
    dw, d2w = forward_derivatives(dmap, s)
    h, hp, hpp = hermite_derivative_tables(N, w)
    # derivatives of H~_i(phi(s)) with respect to s
    g1 = hp * dw
    g2 = hpp * dw * dw + hp * d2w
    M0 = (s * h).T
    M1 = ((h + s * g1) / l).T
    M2 = ((2.0 * g1 + s * g2) / (l * l)).T
    return M0, M1, M2


@dataclass(frozen=True)
class SpectralApproximant:
    coeffs: np.ndarray
    A: float = 0.0
    B: float = 0.0
    map: DomainMap = field(default_factory=DomainMap)

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=float).reshape(-1)
        if c.size == 0:
            raise ValueError("need at least one coefficient")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def N(self):
        return self.coeffs.size - 1

    def evaluate(self, x):
        """u(x) for x > 0; scalar in, scalar out."""
        return self.evaluate_derivatives(x)[0]

    def evaluate_derivatives(self, x):
        """(u, u', u'') at x > 0."""
        scalar = np.ndim(x) == 0
        xa = np.atleast_1d(np.asarray(x, dtype=float))
        M0, M1, M2 = basis_matrices(self.map, self.N, xa)
        a = self.coeffs
        u = self.A + self.B * xa + M0 @ a
        du = self.B + M1 @ a
        d2u = M2 @ a
        if scalar:
            return float(u[0]), float(du[0]), float(d2u[0])
        return u, du, d2u

    def __call__(self, x):
        return self.evaluate(x)

    def with_coeffs(self, coeffs):
        return SpectralApproximant(coeffs, self.A, self.B, self.map)

    def to_csv(self):
        """Coefficient dump with header ``i,a_i,abs_a_i``."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["i", "a_i", "abs_a_i"])
        for i, a in enumerate(self.coeffs):
            writer.writerow([i, f"{a:.10g}", f"{abs(a):.10g}"])
        return buf.getvalue()
