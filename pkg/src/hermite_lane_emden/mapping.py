"""Log-sinh map between the half line (0, inf) and the real line.

    omega = phi(z) = ln(sinh(k z)),    z = phi^{-1}(omega) = asinh(e^omega) / k

The induced weight phi'(z) = k coth(k z) makes the mapped Hermite functions
H~_n(phi(z)) orthogonal on (0, inf); for k = 1 this is the familiar coth(z).
The scaling length ``l`` is carried here but applied by the approximant
(argument substitution x -> x / l); none of the functions below use it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

LN2 = math.log(2.0)


@dataclass(frozen=True)
class DomainMap:
    """Map steepness ``k`` and domain scaling ``l`` (both positive)."""

    k: float = 1.0
    l: float = 1.0

    def __post_init__(self):
        if not (self.k > 0 and math.isfinite(self.k)):
            raise ValueError(f"k must be positive and finite, got {self.k}")
        if not (self.l > 0 and math.isfinite(self.l)):
            raise ValueError(f"l must be positive and finite, got {self.l}")


def _as_positive(z):
    z = np.asarray(z, dtype=float)
    if np.any(~(z > 0)):
        raise ValueError("mapped abscissae must be strictly positive")
    return z


def _out(a):
    return float(a) if np.ndim(a) == 0 else a


def forward(dmap, z):
    """omega = ln(sinh(k z)) for z > 0.

    Written as  k z - ln 2 + ln(1 - e^{-2kz})  so neither large nor tiny
    arguments overflow.
    """
    t = dmap.k * _as_positive(z)
    return _out(t - LN2 + np.log(-np.expm1(-2.0 * t)))


def inverse(dmap, omega):
    """z = ln(e^omega + sqrt(e^{2 omega} + 1)) / k, overflow-free."""
    omega = np.asarray(omega, dtype=float)
    neg = np.minimum(omega, 0.0)
    pos = np.maximum(omega, 0.0)
    z = np.where(
        omega <= 0.0,
        np.arcsinh(np.exp(neg)),
        # ln(e^w (1 + sqrt(1 + e^{-2w}))) for w > 0
        pos + np.log1p(np.sqrt(1.0 + np.exp(-2.0 * pos))),
    )
    return _out(z / dmap.k)


def forward_derivatives(dmap, z):
    """Return (d omega/dz, d^2 omega/dz^2) = (k coth(kz), -k^2 csch^2(kz))."""
    t = dmap.k * _as_positive(z)
    e = np.exp(-2.0 * t)
    em1 = -np.expm1(-2.0 * t)
    d1 = dmap.k * (1.0 + e) / em1
    d2 = -4.0 * dmap.k ** 2 * e / (em1 * em1)
    return _out(d1), _out(d2)


def transform_nodes(dmap, rule):
    """Images on (0, inf) of the Hermite-Gauss nodes of ``rule``."""
    return np.asarray(inverse(dmap, rule.nodes), dtype=float).reshape(-1)


def induced_weight(dmap, z):
    """Weight k coth(kz) under which mapped Hermite functions are orthogonal."""
    return forward_derivatives(dmap, z)[0]
