"""Post-solve analysis: first zeros, error tables, coefficient decay, projection."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .basis import SQRT_PI, gauss_rule, hermite_function_batch
from .mapping import DomainMap, inverse


class NoSignChange(ValueError):
    """No sign change of the function was found inside the scanned bracket."""


def _scalar_fn(fn):
    if hasattr(fn, "evaluate"):
        return fn.evaluate
    return lambda x: float(fn(x))


def first_zero(fn, bracket_hi=20.0, *, start=1e-3, scan_step=0.05, xtol=1e-12):
    """Smallest positive zero of ``fn`` in ``(start, bracket_hi)``.

    ``fn`` is an approximant (anything with ``evaluate``) or a scalar
    callable. The interval is scanned in steps of ``scan_step`` for the first
    sign change; bisection narrows it to ``xtol`` and a secant step through
    the final bracket polishes the estimate.
    """
    f = _scalar_fn(fn)
    n = int(math.ceil((bracket_hi - start) / scan_step))
    grid = np.minimum(start + scan_step * np.arange(n + 1), bracket_hi)
    lo, flo = grid[0], f(grid[0])
    if flo == 0.0:
        return float(lo)
    for hi in grid[1:]:
        fhi = f(hi)
        if fhi == 0.0:
            return float(hi)
        if np.sign(fhi) != np.sign(flo):
            break
        lo, flo = hi, fhi
    else:
        raise NoSignChange(f"no sign change in ({start}, {bracket_hi})")

    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        fmid = f(mid)
        if fmid == 0.0:
            return float(mid)
        if np.sign(fmid) == np.sign(flo):
            lo, flo = mid, fmid
        else:
            hi, fhi = mid, fmid
    if fhi == flo:
        return float(0.5 * (lo + hi))
    x = hi - fhi * (hi - lo) / (fhi - flo)
    return float(min(max(x, lo), hi))


@dataclass(frozen=True)
class ErrorRow:
    x: float
    computed: float
    reference: float
    abs_error: float


@dataclass(frozen=True)
class ErrorTable:
    rows: tuple
    source: str  # "exact" or the label of the published reference column

    def __iter__(self):
        return iter(self.rows)

    def __len__(self):
        return len(self.rows)

    @property
    def max_error(self):
        return max((r.abs_error for r in self.rows), default=0.0)

    def as_arrays(self):
        cols = np.array([(r.x, r.computed, r.reference, r.abs_error) for r in self.rows])
        return cols.reshape(-1, 4).T


def error_table(problem, report, xs):
    """Compare the solution in ``report`` against the exact solution of
    ``problem`` or, when none is known, the published reference column.

    Rows are sorted by x; ``x = 0`` uses the initial value exactly. Abscissae
    with no reference available get NaN in the reference and error columns.
    """
    from .problems import reference_source, reference_value

    xs = sorted(float(x) for x in xs)
    if any(x < 0 for x in xs):
        raise ValueError("abscissae must be non-negative")
    computed = np.atleast_1d(report.solution(np.array(xs))) if xs else []
    if problem.exact is not None:
        source = "exact"
        refs = [float(problem.exact(x)) for x in xs]
    else:
        source = reference_source(problem.name) or "none"
        refs = []
        for x in xs:
            try:
                refs.append(reference_value(problem.name, x))
            except KeyError:
                refs.append(math.nan)
    rows = tuple(
        ErrorRow(x, float(c), float(r), abs(float(c) - float(r)))
        for x, c, r in zip(xs, computed, refs))
    return ErrorTable(rows, source)


def coefficient_decay(report):
    """``[(i, |a_i|), ...]`` in index order."""
    coeffs = getattr(report, "coeffs", report)
    return [(i, abs(float(a))) for i, a in enumerate(np.asarray(coeffs))]


def project(f, N, dmap=None, quad_order=None):
    """Expansion coefficients of ``f`` in the mapped Hermite functions.

    Computes  c_n = <f, H^_n>_w / |H^_n|_w^2  with weight w(x) = k coth(kx)
    (coth(x) for k = 1). Under omega = ln(sinh(kx)) the inner product becomes
    an ordinary integral over the real line, evaluated by Hermite-Gauss
    quadrature of order ``quad_order`` (default ``2N + 20``). The basis here
    is H~_n(phi(x)); the scaling length of ``dmap`` is not used.
    """
    dmap = dmap or DomainMap()
    quad_order = 2 * N + 20 if quad_order is None else quad_order
    rule = gauss_rule(quad_order)
    x = inverse(dmap, rule.nodes)
    fx = np.asarray(f(x), dtype=float)
    H = hermite_function_batch(N, rule.nodes)
    return (H * fx) @ rule.weights / SQRT_PI


def reconstruct(coeffs, x, dmap=None):
    """Evaluate sum_n c_n H~_n(phi(x)) at ``x > 0``."""
    from .mapping import forward

    dmap = dmap or DomainMap()
    c = np.asarray(coeffs, dtype=float)
    return c @ hermite_function_batch(c.size - 1, forward(dmap, x))
