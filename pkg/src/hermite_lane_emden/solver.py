"""Hermite function collocation and Newton iteration on the coefficients."""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
import scipy.linalg

from .approximant import SpectralApproximant, basis_matrices
from .basis import gauss_rule
from .mapping import DomainMap, transform_nodes

log = logging.getLogger(__name__)

MAX_HALVINGS = 8
RESIDUAL_TOL = 1e-12
FULL_STEP = 1e-6


class SolverError(RuntimeError):
    """Base class for collocation solve failures."""


class NoConvergence(SolverError):
    def __init__(self, message, trace=None, coeffs=None):
        super().__init__(message)
        self.trace = trace or []
        self.coeffs = coeffs


class SingularJacobian(SolverError):
    pass


def linear_solve(matrix, rhs, pivot_tol=1e-14):
    """Solve ``matrix @ x = rhs`` by LU with partial pivoting.

    Raises :class:`SingularJacobian` when a pivot falls below
    ``pivot_tol`` times the largest entry of the matrix.
    """
    a = np.asarray(matrix, dtype=float)
    b = np.asarray(rhs, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(b)):
        raise ValueError("non-finite right-hand side")
    return scipy.linalg.lu_solve(_factor(a, pivot_tol), b, check_finite=False)


def _factor(a, pivot_tol=1e-14):
    if not np.all(np.isfinite(a)):
        raise SingularJacobian("non-finite entries in Jacobian")
    scale = np.abs(a).max() if a.size else 0.0
    if scale == 0.0:
        raise SingularJacobian("zero matrix")
    with warnings.catch_warnings():
        # an exactly zero pivot is reported below as SingularJacobian
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(a, check_finite=False)
    if np.abs(np.diag(lu)).min() <= pivot_tol * scale:
        raise SingularJacobian("pivot below tolerance; matrix is numerically singular")
    return lu, piv


@dataclass
class SolveReport:
    approximant: SpectralApproximant
    residual_max: float
    newton_trace: list
    converged: bool
    iterations: int
    points: np.ndarray = field(repr=False, default=None)
    # y = exp(z) for log-transformed problems, identity otherwise
    transform: Optional[Callable] = field(repr=False, default=None)

    @property
    def coeffs(self):
        return self.approximant.coeffs

    def solution(self, x):
        """Value of the original unknown y at ``x >= 0``.

        ``x = 0`` returns the initial value exactly.
        """
        xa = np.asarray(x, dtype=float)
        u = np.full(xa.shape, self.approximant.A)
        pos = xa > 0
        if np.any(pos):
            u[pos] = self.approximant.evaluate_derivatives(xa[pos])[0]
        if np.any(xa < 0):
            raise ValueError("solution is defined for x >= 0 only")
        if self.transform is not None:
            u = self.transform(u)
        return float(u) if u.ndim == 0 else u


def collocation_points(config):
    """Images of the N+1 Hermite-Gauss nodes under the inverse log-sinh map.

    The map uses ``k`` only; ``l`` enters through the approximant argument.
    """
    return transform_nodes(DomainMap(config.k, config.l), gauss_rule(config.N))


def _terms(problem, x, u, du, d2u):
    r = d2u + problem.alpha / x * du + problem.f(x) * problem.g(u) - problem.h(x)
    if problem.log_transform:
        r = r + du * du
    return r


def residual(problem, approx, x):
    """Collocation residual u'' + (alpha/x) u' + f g(u) - h at ``x > 0``."""
    scalar = np.ndim(x) == 0
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    u, du, d2u = approx.evaluate_derivatives(xa)
    r = _terms(problem, xa, u, du, d2u)
    return float(r[0]) if scalar else r


class CollocationSystem:
    """Residual vector and Jacobian on the collocation points.

    Basis matrices are computed once; the residual and analytic Jacobian are
    then matrix-vector products.
    """

    def __init__(self, problem, config):
        self.problem = problem
        self.config = config
        self.map = DomainMap(config.k, config.l)
        self.points = collocation_points(config)
        self.M0, self.M1, self.M2 = basis_matrices(self.map, config.N, self.points)
        x = self.points
        self._f = np.broadcast_to(problem.f(x), x.shape).astype(float)
        self._h = np.broadcast_to(problem.h(x), x.shape).astype(float)
        self._sing = problem.alpha / x

    def term_scale(self, a):
        """Rounding-level magnitude of the residual at ``a`` (at least 1).

        Uses the uncancelled sizes |M| @ |a| of the spectral sums, so the
        scale reflects what floating point can resolve, not the (small)
        residual itself.
        """
        u, du, _ = self.fields(a)
        aa = np.abs(a)
        parts = [
            np.abs(self.M2) @ aa,
            np.abs(self._sing) * (abs(self.problem.B) + np.abs(self.M1) @ aa),
            np.abs(self._f * self.problem.g(u)),
            np.abs(self._h),
        ]
        if self.problem.log_transform:
            parts.append(du * du)
        return max(1.0, max(float(np.max(p)) for p in parts))

    def fields(self, a):
        x = self.points
        u = self.problem.A + self.problem.B * x + self.M0 @ a
        du = self.problem.B + self.M1 @ a
        d2u = self.M2 @ a
        return u, du, d2u

    def residual(self, a):
        u, du, d2u = self.fields(a)
        r = d2u + self._sing * du + self._f * self.problem.g(u) - self._h
        if self.problem.log_transform:
            r = r + du * du
        return r

    def jacobian(self, a):
        u, du, _ = self.fields(a)
        gp = np.broadcast_to(self.problem.g_prime(u), u.shape)
        J = self.M2 + self._sing[:, None] * self.M1 + (self._f * gp)[:, None] * self.M0
        if self.problem.log_transform:
            J = J + (2.0 * du)[:, None] * self.M1
        return J

    def jacobian_fd(self, a, eps=1e-7):
        """Central-difference Jacobian, kept for verification."""
        a = np.asarray(a, dtype=float)
        J = np.empty((a.size, a.size))
        for i in range(a.size):
            step = eps * max(1.0, abs(a[i]))
            ap, am = a.copy(), a.copy()
            ap[i] += step
            am[i] -= step
            J[:, i] = (self.residual(ap) - self.residual(am)) / (2.0 * step)
        return J


def assemble_system(problem, config):
    """Return ``(residual_fn, jacobian_fn, points)`` for the collocation system."""
    system = CollocationSystem(problem, config)
    return system.residual, system.jacobian, system.points


def _norm(v):
    return float(np.abs(v).max())


def newton(system, a0, tol, max_iters):
    """Damped Newton iteration on the collocation system.

    Returns ``(coeffs, trace, converged)`` where ``trace`` holds
    ``(iteration, step_norm, residual_norm)`` for each update.

    Damping uses the natural monotonicity test: a trial step ``t * delta``
    is accepted when the simplified correction ``J(a)^{-1} F(a + t delta)``
    has 2-norm at most ``(1 - t/4) |delta|``, otherwise ``t`` is halved (at
    most ``MAX_HALVINGS`` times). Measuring through ``J^{-1}`` keeps the test
    insensitive to the very different row scales that exponential
    nonlinearities produce. Corrections below ``FULL_STEP`` (relative) are
    always taken in full.

    Iteration stops when the step falls below ``tol`` or the residual falls
    below ``RESIDUAL_TOL`` relative to the size of the equation's terms; in
    the latter case one more step is tried and kept only if it cuts the
    residual at least tenfold.
    """
    a = np.array(a0, dtype=float)
    r = system.residual(a)
    trace = []
    if _norm(r) <= RESIDUAL_TOL * system.term_scale(a):
        return a, trace, True
    polishing = False
    for it in range(1, max_iters + 1):
        lu = _factor(system.jacobian(a))
        delta = scipy.linalg.lu_solve(lu, -r, check_finite=False)
        dnorm = np.linalg.norm(delta)
        t = 1.0
        if _norm(delta) > FULL_STEP * (1.0 + _norm(a)):
            for _ in range(MAX_HALVINGS):
                r_trial = system.residual(a + t * delta)
                if np.all(np.isfinite(r_trial)):
                    bar = scipy.linalg.lu_solve(lu, -r_trial, check_finite=False)
                    if np.linalg.norm(bar) <= (1.0 - 0.25 * t) * dnorm:
                        break
                t *= 0.5
        trial = a + t * delta
        r_trial = system.residual(trial)
        rnorm = _norm(r_trial)
        if not np.isfinite(rnorm):
            raise NoConvergence("residual became non-finite", trace, a)
        if polishing and rnorm > 0.1 * _norm(r):
            # already at the rounding floor; keep the previous iterate
            return a, trace, True
        a, r = trial, r_trial
        step = t * _norm(delta)
        trace.append((it, step, rnorm))
        log.debug("newton %d: step=%.3e residual=%.3e damping=%g", it, step, rnorm, t)
        if polishing or step <= tol * (1.0 + _norm(a)):
            return a, trace, True
        if rnorm <= RESIDUAL_TOL * system.term_scale(a):
            polishing = True
    return a, trace, False


def solve(problem, config, initial=None):
    """Collocate ``problem`` at the N+1 mapped Hermite-Gauss points.

    Starts from the all-zero coefficient vector (the boundary ray A + Bx)
    unless ``initial`` is given.

    Raises
    ------
    NoConvergence
        Newton did not meet the tolerance within ``config.max_iters``.
    SingularJacobian
        A Newton linear system was numerically singular.
    """
    system = CollocationSystem(problem, config)
    a0 = np.zeros(config.N + 1) if initial is None else np.asarray(initial, dtype=float)
    coeffs, trace, converged = newton(system, a0, config.newton_tol, config.max_iters)
    approx = SpectralApproximant(coeffs, problem.A, problem.B, system.map)
    res_max = _norm(system.residual(coeffs))
    if not converged:
        raise NoConvergence(
            f"{problem.name}: Newton did not converge in {config.max_iters} iterations "
            f"(residual {res_max:.3e})", trace, coeffs)
    return SolveReport(
        approximant=approx, residual_max=res_max, newton_trace=trace,
        converged=True, iterations=len(trace), points=system.points,
        transform=np.exp if problem.log_transform else None)
