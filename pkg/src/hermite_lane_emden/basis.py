"""Normalized Hermite functions and Hermite-Gauss quadrature on the real line.

All evaluation is done on the exponentially damped functions

    H~_n(x) = exp(-x**2 / 2) * H_n(x) / sqrt(2**n * n!)

through their three-term recurrence, so nothing overflows for the orders
used by the collocation solver (raw Hermite polynomials overflow long before
n = 200 at the outer Gauss nodes).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

SQRT_PI = math.sqrt(math.pi)

MAX_ORDER = 200


@dataclass(frozen=True)
class QuadratureRule:
    """Hermite-Gauss rule with ``order + 1`` nodes for Hermite functions.

    ``nodes`` are the roots of H_{order+1} in ascending order. ``weights`` are
    the Hermite-function weights, i.e. ``sum(p(x_j) * w_j)`` approximates
    ``int p(x) dx`` (no implicit ``exp(-x**2)`` factor).
    """

    order: int
    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        self.nodes.setflags(write=False)
        self.weights.setflags(write=False)

    def integrate(self, values):
        """Apply the rule to samples taken at ``nodes`` (last axis)."""
        return np.asarray(values) @ self.weights


def hermite_function_batch(n_max, x):
    """Evaluate H~_0 .. H~_{n_max} at ``x``.

    Returns an array of shape ``(n_max + 1,) + np.shape(x)``; row ``i`` holds
    H~_i(x). A scalar ``x`` yields a 1-D array.
    """
    if n_max < 0:
        raise ValueError(f"n_max must be non-negative, got {n_max}")
    x = np.asarray(x, dtype=float)
    out = np.empty((n_max + 1,) + x.shape)
    out[0] = np.exp(-0.5 * x * x)
    if n_max >= 1:
        out[1] = math.sqrt(2.0) * x * out[0]
    for n in range(1, n_max):
        out[n + 1] = (x * math.sqrt(2.0 / (n + 1)) * out[n]
                      - math.sqrt(n / (n + 1)) * out[n - 1])
    return out


def hermite_function(n, x):
    """H~_n(x), the normalized Hermite function of degree ``n``."""
    if n < 0:
        raise ValueError(f"degree must be non-negative, got {n}")
    values = hermite_function_batch(n, x)[n]
    return float(values) if values.ndim == 0 else values


def hermite_function_derivative(n, x):
    """First derivative of H~_n at ``x``.

    Uses  H~'_n = sqrt(n/2) H~_{n-1} - sqrt((n+1)/2) H~_{n+1}  with H~_{-1} = 0.
    """
    if n < 0:
        raise ValueError(f"degree must be non-negative, got {n}")
    h = hermite_function_batch(n + 1, x)
    d = -math.sqrt((n + 1) / 2.0) * h[n + 1]
    if n >= 1:
        d = d + math.sqrt(n / 2.0) * h[n - 1]
    return float(d) if np.ndim(d) == 0 else d


def hermite_derivative_tables(n_max, x):
    """Values, first and second derivatives of H~_0 .. H~_{n_max} at ``x``.

    The second derivative comes from applying the two-sided derivative
    relation twice:

        H~''_n = sqrt(n(n-1))/2 H~_{n-2} - (n + 1/2) H~_n
                 + sqrt((n+1)(n+2))/2 H~_{n+2}
    """
    x = np.asarray(x, dtype=float)
    h = hermite_function_batch(n_max + 2, x)
    n = np.arange(n_max + 1, dtype=float).reshape((-1,) + (1,) * x.ndim)
    lower = np.zeros_like(h[: n_max + 1])
    lower[1:] = h[:n_max]
    lower2 = np.zeros_like(h[: n_max + 1])
    lower2[2:] = h[: max(n_max - 1, 0)]
    value = h[: n_max + 1]
    first = np.sqrt(n / 2.0) * lower - np.sqrt((n + 1) / 2.0) * h[1: n_max + 2]
    second = (0.5 * np.sqrt(n * (n - 1).clip(min=0)) * lower2
              - (n + 0.5) * value
              + 0.5 * np.sqrt((n + 1) * (n + 2)) * h[2: n_max + 3])
    return value, first, second


def _newton_polish(n, z, tol, max_iter):
    # Newton on H~_n; the damping factor cancels in the ratio f/f'.
    for _ in range(max_iter):
        h = hermite_function_batch(n, z)
        f = h[n]
        fp = math.sqrt(2.0 * n) * h[n - 1] - z * f
        dz = f / fp
        z = z - dz
        if abs(dz) <= tol * max(1.0, abs(z)):
            return z
    raise RuntimeError(f"Hermite root iteration did not converge (n={n}, z={z})")


def gauss_rule(N, *, tol=1e-14, max_iter=100):
    """Hermite-Gauss rule built on the N+1 roots of H_{N+1}.

    Roots are found by Newton iteration seeded with the classical asymptotic
    estimates for the largest roots, then by extrapolation from previously
    found roots. Only the non-negative half is computed; the rest follows by
    symmetry. Weights are

        w_j = sqrt(pi) / ((N + 1) * H~_N(x_j)**2).

    Raises
    ------
    ValueError
        If ``N`` is negative or exceeds :data:`MAX_ORDER`.
    RuntimeError
        If a root fails to converge within ``max_iter`` Newton steps.
    """
    if N < 0 or N > MAX_ORDER:
        raise ValueError(f"order must lie in [0, {MAX_ORDER}], got {N}")
    n = N + 1
    if n == 1:
        return QuadratureRule(0, np.zeros(1), np.array([SQRT_PI]))

    m = n // 2
    roots = np.empty(m)
    for i in range(m):
        if i == 0:
            z = math.sqrt(2 * n + 1) - 1.85575 * (2 * n + 1) ** (-1 / 6)
        elif i == 1:
            z = roots[0] - 1.14 * n ** 0.426 / roots[0]
        elif i == 2:
            z = 1.86 * roots[1] - 0.86 * roots[0]
        elif i == 3:
            z = 1.91 * roots[2] - 0.91 * roots[1]
        else:
            z = 2.0 * roots[i - 1] - roots[i - 2]
        roots[i] = _newton_polish(n, z, tol, max_iter)

    positive = np.sort(roots)
    if n % 2:
        nodes = np.concatenate([-positive[::-1], [0.0], positive])
    else:
        nodes = np.concatenate([-positive[::-1], positive])

    hN = hermite_function_batch(N, nodes)[N]
    weights = SQRT_PI / (n * hN * hN)
    return QuadratureRule(N, nodes, weights)
