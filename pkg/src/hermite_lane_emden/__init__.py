"""Hermite function collocation for Lane-Emden type equations on the half-line."""

from .approximant import SpectralApproximant, basis_matrices
from .basis import QuadratureRule, gauss_rule, hermite_function, hermite_function_batch
from .diagnostics import (ErrorTable, NoSignChange, coefficient_decay, error_table,
                          first_zero, project, reconstruct)
from .mapping import DomainMap
from .problems import LaneEmdenProblem, SolveConfig, lookup, problem_ids, registry
from .solver import NoConvergence, SingularJacobian, SolveReport, SolverError, solve

__version__ = "0.1.0"

__all__ = [
    "SpectralApproximant", "basis_matrices", "QuadratureRule", "gauss_rule",
    "hermite_function", "hermite_function_batch", "ErrorTable", "NoSignChange",
    "coefficient_decay", "error_table", "first_zero", "project", "reconstruct",
    "DomainMap", "LaneEmdenProblem", "SolveConfig", "lookup", "problem_ids",
    "registry", "NoConvergence", "SingularJacobian", "SolveReport", "SolverError",
    "solve",
]
