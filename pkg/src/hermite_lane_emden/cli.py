"""Command-line front end: ``solve``, ``zeros``, ``coeffs`` and ``list``.

Configuration precedence is built-in example defaults < ``--config`` file
< command-line flags. CSV numbers carry 10 significant digits.

Exit codes: 0 success, 1 input or I/O error, 2 no Newton convergence,
3 singular Jacobian, 4 no sign change when locating a zero.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import diagnostics, problems
from .solver import NoConvergence, SingularJacobian, solve

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NO_CONVERGENCE = 2
EXIT_SINGULAR = 3
EXIT_NO_SIGN_CHANGE = 4

DEFAULT_GRID = (0.0, 0.1, 0.5, 1.0, 2.0)
CONFIG_KEYS = ("N", "k", "l", "newton_tol", "max_iters")

SCHEMA_PATH = Path(__file__).with_name("schemas") / "output.schema.json"


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors, which is reserved for
    # non-convergence here.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def parse_number(text):
    """Float from decimal or fraction notation ("2/3")."""
    try:
        return float(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not a number: {text!r}") from exc


def _number_arg(text):
    try:
        return parse_number(text)
    except InputError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def read_config_file(path):
    """Parse ``key = value`` lines (``#`` starts a comment) into overrides."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read config file {path}: {exc.strerror}") from exc
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or key not in CONFIG_KEYS:
            raise InputError(f"{path}:{lineno}: expected one of {CONFIG_KEYS} as 'key = value'")
        num = parse_number(value)
        out[key] = int(num) if key in ("N", "max_iters") else num
    return out


@dataclass
class RunSpec:
    command: str
    problem: str = None
    N: int = None
    k: float = None
    l: float = None
    fmt: str = "csv"
    out: str = None
    grid: str = "paper"
    config_file: str = None
    sweep: str = None
    workers: int = 1
    ms: list = field(default_factory=list)
    bracket_hi: float = 20.0

    def overrides(self):
        merged = read_config_file(self.config_file) if self.config_file else {}
        for key in ("N", "k", "l"):
            if getattr(self, key) is not None:
                merged[key] = getattr(self, key)
        return merged

    def resolve(self):
        try:
            problem, cfg = problems.lookup(self.problem)
        except KeyError as exc:
            raise InputError(exc.args[0]) from exc
        try:
            cfg = cfg.updated(**self.overrides())
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        return problem, cfg

    def abscissae(self, problem):
        if self.grid == "paper":
            xs = problems.published_grid(problem.name) or list(DEFAULT_GRID)
        else:
            xs = [parse_number(t) for t in self.grid.split(",") if t.strip()]
        if not xs or any(x < 0 for x in xs):
            raise InputError("grid abscissae must be non-negative")
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise InputError("grid abscissae must be strictly increasing")
        return xs


def _fmt(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return "nan" if math.isnan(value) else f"{value + 0.0:.10g}"
    return str(value)


def _json_value(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def _config_dict(cfg):
    return {"N": cfg.N, "k": cfg.k, "l": cfg.l,
            "newton_tol": cfg.newton_tol, "max_iters": cfg.max_iters}


def render(fmt, columns, rows, meta):
    if fmt == "json":
        doc = {"status": "ok", **meta, "columns": list(columns),
               "rows": [{c: _json_value(v) for c, v in zip(columns, row)} for row in rows]}
        return json.dumps(doc, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def emit(spec, text):
    if spec.out is None:
        sys.stdout.write(text)
        return
    try:
        with open(spec.out, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise InputError(f"cannot write {spec.out}: {exc.strerror}") from exc


def failure_record(kind, code, message, problem=None, trace=None):
    doc = {"status": "error", "error": kind, "exit_code": code, "message": message}
    if problem is not None:
        doc["problem"] = problem
    if trace:
        doc["trace"] = [[int(i), float(s), float(r)] for i, s, r in trace]
    return doc


def _fail(doc):
    sys.stderr.write(json.dumps(doc) + "\n")
    return doc["exit_code"]


def _solve_or_fail(problem, cfg):
    try:
        return solve(problem, cfg), None
    except NoConvergence as exc:
        return None, failure_record("NoConvergence", EXIT_NO_CONVERGENCE, str(exc),
                                    problem.name, exc.trace)
    except SingularJacobian as exc:
        return None, failure_record("SingularJacobian", EXIT_SINGULAR, str(exc), problem.name)


def cmd_solve(spec):
    problem, cfg = spec.resolve()
    if spec.sweep:
        return _cmd_sweep(spec, problem, cfg)
    xs = spec.abscissae(problem)
    report, err = _solve_or_fail(problem, cfg)
    if err:
        return _fail(err)
    table = diagnostics.error_table(problem, report, xs)
    rows = [(r.x, r.computed, r.reference, r.abs_error) for r in table]
    meta = {"command": "solve", "problem": problem.name, "config": _config_dict(cfg),
            "source": table.source, "converged": report.converged,
            "iterations": report.iterations, "residual_max": report.residual_max}
    emit(spec, render(spec.fmt, ("x", "computed", "reference", "abs_error"), rows, meta))
    return EXIT_OK


def parse_sweep(text):
    key, sep, values = text.partition("=")
    key = key.strip()
    if not sep or key not in ("N", "k", "l"):
        raise InputError("--sweep expects KEY=v1,v2,... with KEY one of N, k, l")
    vals = [parse_number(v) for v in values.split(",") if v.strip()]
    if not vals:
        raise InputError("--sweep needs at least one value")
    if key == "N":
        vals = [int(v) for v in vals]
    return key, vals


def _sweep_point(args):
    name, cfg, xs = args
    problem, _ = problems.lookup(name)
    report, err = _solve_or_fail(problem, cfg)
    if err:
        return (cfg.N, cfg.k, cfg.l, False, 0, math.nan, math.nan)
    table = diagnostics.error_table(problem, report, xs)
    return (cfg.N, cfg.k, cfg.l, True, report.iterations, report.residual_max, table.max_error)


def _cmd_sweep(spec, problem, cfg):
    key, vals = parse_sweep(spec.sweep)
    xs = spec.abscissae(problem)
    try:
        jobs = [(problem.name, cfg.updated(**{key: v}), xs) for v in vals]
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if spec.workers > 1:
        with ProcessPoolExecutor(max_workers=spec.workers) as pool:
            rows = list(pool.map(_sweep_point, jobs))
    else:
        rows = [_sweep_point(j) for j in jobs]
    columns = ("N", "k", "l", "converged", "iterations", "residual_max", "max_abs_error")
    emit(spec, render(spec.fmt, columns, rows, {"command": "sweep", "problem": problem.name}))
    return EXIT_OK if all(r[3] for r in rows) else EXIT_NO_CONVERGENCE


def cmd_zeros(spec):
    ms = spec.ms or sorted(problems.FIRST_ZEROS)
    rows, failure = [], None
    for m in ms:
        if m < 0:
            raise InputError(f"polytropic index must be non-negative, got {m}")
        problem = problems.standard_lane_emden(m)
        try:
            _, cfg = problems.lookup(problem.name)
        except KeyError:
            # unregistered index: borrow the m=3 configuration
            _, cfg = problems.lookup("example1-m3")
        try:
            cfg = cfg.updated(**spec.overrides())
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        report, err = _solve_or_fail(problem, cfg)
        if err:
            failure = failure or err
            continue
        try:
            zero = diagnostics.first_zero(report.approximant, spec.bracket_hi)
        except diagnostics.NoSignChange as exc:
            failure = failure or failure_record(
                "NoSignChange", EXIT_NO_SIGN_CHANGE, f"m={m:g}: {exc}", problem.name)
            continue
        rows.append((float(m), cfg.N, cfg.k, cfg.l, zero))
    if rows:
        emit(spec, render(spec.fmt, ("m", "N", "k", "l", "zero"), rows, {"command": "zeros"}))
    if failure:
        return _fail(failure)
    return EXIT_OK


def cmd_coeffs(spec):
    problem, cfg = spec.resolve()
    report, err = _solve_or_fail(problem, cfg)
    if err:
        return _fail(err)
    rows = [(i, float(a), abs(float(a))) for i, a in enumerate(report.coeffs)]
    meta = {"command": "coeffs", "problem": problem.name, "config": _config_dict(cfg)}
    emit(spec, render(spec.fmt, ("i", "a_i", "abs_a_i"), rows, meta))
    return EXIT_OK


def cmd_list(spec):
    rows = [(p.name, c.N, c.k, c.l, p.description) for p, c in problems.registry()]
    emit(spec, render(spec.fmt, ("id", "N", "k", "l", "description"), rows, {"command": "list"}))
    return EXIT_OK


COMMANDS = {"solve": cmd_solve, "zeros": cmd_zeros, "coeffs": cmd_coeffs, "list": cmd_list}


def build_parser():
    parser = _Parser(prog="hermite-lane-emden",
                     description="Hermite function collocation for Lane-Emden type equations.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log Newton iterations")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, with_problem=True):
        if with_problem:
            p.add_argument("problem", help="problem id (see 'list')")
        p.add_argument("--N", type=int, help="truncation order")
        p.add_argument("--k", type=_number_arg, help="map steepness")
        p.add_argument("--l", type=_number_arg, help="domain scaling length")
        p.add_argument("--config", dest="config_file", help="key = value config file")
        p.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")
        p.add_argument("--out", help="output path (default: stdout)")

    p = sub.add_parser("solve", help="solve a problem and tabulate errors")
    common(p)
    p.add_argument("--grid", default="paper",
                   help="'paper' for the published abscissae or a comma list")
    p.add_argument("--sweep", help="KEY=v1,v2,... run one solve per value of N, k or l")
    p.add_argument("--workers", type=int, default=1, help="parallel workers for --sweep")

    p = sub.add_parser("zeros", help="first zeros of the standard equation")
    common(p, with_problem=False)
    p.add_argument("--m", dest="ms", type=_number_arg, nargs="+", default=[],
                   help="polytropic indices (default: the published set)")
    p.add_argument("--bracket-hi", type=float, default=20.0)

    p = sub.add_parser("coeffs", help="Hermite coefficients of the converged solution")
    common(p)

    p = sub.add_parser("list", help="list the available problems")
    p.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")
    p.add_argument("--out", help="output path (default: stdout)")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    fields = {k: v for k, v in vars(args).items() if k in RunSpec.__dataclass_fields__}
    spec = RunSpec(**fields)
    try:
        return COMMANDS[spec.command](spec)
    except InputError as exc:
        return _fail(failure_record("InputError", EXIT_INPUT, str(exc), spec.problem))


if __name__ == "__main__":
    sys.exit(main())
