"""Lane-Emden type problems and the worked examples with their reference data.

General form on x > 0::

    y'' + (alpha / x) y' + f(x) g(y) = h(x),    y(0) = A,  y'(0) = B

Problems flagged with ``substitution="log-transform"`` are solved for
z = ln y instead, which adds a (z')**2 term to the residual; their ``A``,
``B``, ``g`` and ``h`` describe the z-equation while ``exact`` stays in
terms of the original unknown y.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Optional

import numpy as np

LOG_TRANSFORM = "log-transform"


def _one(x):
    return np.ones_like(np.asarray(x, dtype=float))


def _zero(x):
    return np.zeros_like(np.asarray(x, dtype=float))


@dataclass(frozen=True)
class LaneEmdenProblem:
    name: str
    alpha: float
    g: Callable
    g_prime: Callable
    f: Callable = _one
    h: Callable = _zero
    A: float = 0.0
    B: float = 0.0
    exact: Optional[Callable] = None
    substitution: Optional[str] = None
    description: str = ""

    def __post_init__(self):
        if not (math.isfinite(self.A) and math.isfinite(self.B)):
            raise ValueError("initial data must be finite")
        if self.substitution not in (None, LOG_TRANSFORM):
            raise ValueError(f"unknown substitution {self.substitution!r}")

    @property
    def log_transform(self):
        return self.substitution == LOG_TRANSFORM

    def solved_exact(self, x):
        """Exact solution of the unknown actually solved for (z = ln y if transformed)."""
        if self.exact is None:
            return None
        y = self.exact(x)
        return np.log(y) if self.log_transform else y

    def to_original(self, u):
        """Map solved-unknown values back to y."""
        return np.exp(u) if self.log_transform else u

    @property
    def original_A(self):
        return math.exp(self.A) if self.log_transform else self.A


@dataclass(frozen=True)
class SolveConfig:
    N: int
    k: float
    l: float
    newton_tol: float = 1e-12
    max_iters: int = 50

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 1:
            raise ValueError(f"N must be an integer >= 1, got {self.N}")
        if not (self.k > 0 and self.l > 0):
            raise ValueError("k and l must be positive")
        if not (self.newton_tol > 0) or self.max_iters < 1:
            raise ValueError("newton_tol must be positive and max_iters >= 1")
        object.__setattr__(self, "N", int(self.N))

    def updated(self, **overrides):
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})


def _power(m):
    # Integer indices use the plain power, which is defined for negative
    # iterates (and beyond the first zero); fractional indices use the odd
    # extension sign(y)|y|^m to stay real.
    if float(m).is_integer():
        p = int(m)
        if p == 0:
            return _one, _zero
        return (lambda y: np.power(y, p),
                lambda y: p * np.power(y, p - 1))
    return (lambda y: np.sign(y) * np.abs(y) ** m,
            lambda y: m * np.abs(y) ** (m - 1))


_STANDARD_EXACT = {
    0: lambda x: 1.0 - np.asarray(x, dtype=float) ** 2 / 6.0,
    1: lambda x: np.sinc(np.asarray(x, dtype=float) / np.pi),
    5: lambda x: (1.0 + np.asarray(x, dtype=float) ** 2 / 3.0) ** -0.5,
}


def _fmt_index(m):
    return str(int(m)) if float(m).is_integer() else str(m)


def standard_lane_emden(m):
    """y'' + (2/x) y' + y^m = 0 with y(0) = 1, y'(0) = 0."""
    if m < 0:
        raise ValueError(f"polytropic index must be non-negative, got {m}")
    g, gp = _power(m)
    exact = _STANDARD_EXACT.get(m) if float(m).is_integer() else None
    return LaneEmdenProblem(
        name=f"example1-m{_fmt_index(m)}", alpha=2.0, g=g, g_prime=gp,
        A=1.0, B=0.0, exact=exact,
        description=f"standard Lane-Emden equation, m={_fmt_index(m)}")


def isothermal():
    return LaneEmdenProblem(
        name="isothermal", alpha=2.0, g=np.exp, g_prime=np.exp, A=0.0, B=0.0,
        description="isothermal gas sphere, g(y) = exp(y)")


def example3():
    return LaneEmdenProblem(
        name="example3", alpha=2.0, g=np.sinh, g_prime=np.cosh, A=1.0,
        description="g(y) = sinh(y)")


def example4():
    return LaneEmdenProblem(
        name="example4", alpha=2.0, g=np.sin, g_prime=np.cos, A=1.0,
        description="g(y) = sin(y)")


def example5():
    return LaneEmdenProblem(
        name="example5", alpha=2.0,
        g=lambda y: 4.0 * (2.0 * np.exp(y) + np.exp(0.5 * y)),
        g_prime=lambda y: 4.0 * (2.0 * np.exp(y) + 0.5 * np.exp(0.5 * y)),
        exact=lambda x: -2.0 * np.log1p(np.asarray(x, dtype=float) ** 2),
        description="g(y) = 4(2 e^y + e^(y/2))")


def example6():
    # y'' + (2/x) y' - 6y - 4y ln y = 0, y(0) = 1, solved through y = e^z:
    # z'' + (z')^2 + (2/x) z' - 4z = 6, z(0) = z'(0) = 0.
    return LaneEmdenProblem(
        name="example6", alpha=2.0,
        g=lambda z: -4.0 * np.asarray(z, dtype=float),
        g_prime=lambda z: np.full_like(np.asarray(z, dtype=float), -4.0),
        h=lambda x: np.full_like(np.asarray(x, dtype=float), 6.0),
        A=0.0, B=0.0,
        exact=lambda x: np.exp(np.asarray(x, dtype=float) ** 2),
        substitution=LOG_TRANSFORM,
        description="g(y) = -6y - 4y ln(y), solved for z = ln(y)")


def example7():
    return LaneEmdenProblem(
        name="example7", alpha=2.0,
        f=lambda x: -2.0 * (2.0 * np.asarray(x, dtype=float) ** 2 + 3.0),
        g=lambda y: np.asarray(y, dtype=float), g_prime=_one, A=1.0,
        exact=lambda x: np.exp(np.asarray(x, dtype=float) ** 2),
        description="f(x) = -2(2x^2 + 3), g(y) = y")


def example8():
    return LaneEmdenProblem(
        name="example8", alpha=8.0,
        f=lambda x: np.asarray(x, dtype=float),
        g=lambda y: np.asarray(y, dtype=float), g_prime=_one,
        h=lambda x: np.polyval([1.0, -1.0, 0.0, 44.0, -30.0, 0.0], x),
        exact=lambda x: np.polyval([1.0, -1.0, 0.0, 0.0, 0.0], x),
        description="alpha = 8, f(x) = x, g(y) = y, non-homogeneous")


def example9():
    return LaneEmdenProblem(
        name="example9", alpha=2.0,
        g=lambda y: np.asarray(y, dtype=float), g_prime=_one,
        h=lambda x: np.polyval([1.0, 1.0, 12.0, 6.0], x),
        exact=lambda x: np.polyval([1.0, 1.0, 0.0, 0.0], x),
        description="g(y) = y, h(x) = 6 + 12x + x^2 + x^3")


# Published (N, k, l) per polytropic index together with the first zero.
FIRST_ZEROS = {
    1.5: (4, 1.0, 3.74224350, 3.65375374),
    2: (10, 1.0, 1.97027600, 4.35287460),
    2.5: (10, 1.0, 1.97668316, 5.35527546),
    3: (20, 1.0, 1.86927585, 6.89684862),
    4: (12, 1.0 / 3.0, 1.97137830, 14.9715463),
}

# Indices with closed-form solutions have no published configuration; these
# were chosen so the approximant stays accurate to 1e-7 on the range where
# the solution is compared and, for m = 5, stays positive on (0, 20).
_EXACT_CASE_CONFIGS = {
    0: SolveConfig(N=40, k=2.0, l=2.0),
    1: SolveConfig(N=40, k=1.0, l=2.0),
    5: SolveConfig(N=40, k=1.0 / 3.0, l=2.0),
}


def _registry_entries():
    entries = []
    for m in (0, 1, 1.5, 2, 2.5, 3, 4, 5):
        if m in FIRST_ZEROS:
            N, k, l, _ = FIRST_ZEROS[m]
            cfg = SolveConfig(N=N, k=k, l=l)
        else:
            cfg = _EXACT_CASE_CONFIGS[m]
        entries.append((standard_lane_emden(m), cfg))
    entries += [
        (isothermal(), SolveConfig(N=30, k=2.0, l=2.0)),
        (example3(), SolveConfig(N=10, k=1.0, l=2.0)),
        (example4(), SolveConfig(N=15, k=1.0, l=2.0)),
        (example5(), SolveConfig(N=30, k=2.0 / 3.0, l=2.0)),
        (example6(), SolveConfig(N=30, k=6.0, l=2.0)),
        (example7(), SolveConfig(N=30, k=6.0, l=2.0)),
        (example8(), SolveConfig(N=30, k=2.0 / 3.0, l=2.0)),
        (example9(), SolveConfig(N=30, k=2.0 / 3.0, l=2.0)),
    ]
    return tuple(entries)


_REGISTRY = _registry_entries()
ALIASES = {"example2": "isothermal", "example1": "example1-m3"}


def registry():
    """All shipped problems with their default solver configuration."""
    return list(_REGISTRY)


def problem_ids():
    return [p.name for p, _ in _REGISTRY]


def lookup(name):
    """Return ``(problem, config)`` for an identifier or alias."""
    key = ALIASES.get(name, name)
    for problem, cfg in _REGISTRY:
        if problem.name == key:
            return problem, cfg
    raise KeyError(f"unknown problem {name!r}; known: {', '.join(problem_ids())}")


# Published comparison tables: (x, value from the collocation method, reference).
# Reference columns are numerical integrations (standard equation), truncated
# Adomian series (isothermal, sinh, sin) or the analytic solution.
_TABLES = {
    "example1-m3": ("Horedt", [
        (0.0, 1.00000000, 1.0000000),
        (0.1, 0.99833720, 0.9983358),
        (0.5, 0.95984209, 0.9598391),
        (1.0, 0.85505959, 0.8550576),
        (5.0, 0.11082019, 0.1108198),
        (6.0, 0.04373912, 0.0437380),
        (6.8, 0.00417826, 0.0041678),
        (6.896, 0.00003610, 0.0000360),
    ]),
    "example1-m4": ("Horedt", [
        (0.0, 1.0000000, 1.0000000),
        (0.1, 0.9985876, 0.9983367),
        (0.2, 0.9936339, 0.9933862),
        (0.5, 0.9605160, 0.9603109),
        (1.0, 0.8610072, 0.8608138),
        (5.0, 0.2358368, 0.2359227),
        (10.0, 0.0596105, 0.0596727),
        (14.0, 0.0083058, 0.0083305),
        (14.9, 0.0005759, 0.0005764),
    ]),
    "isothermal": ("Wazwaz", [
        (0.0, 0.0000000000, 0.0000000000),
        (0.1, -0.0016664188, -0.0016658339),
        (0.2, -0.0066539713, -0.0066533671),
        (0.5, -0.0411545150, -0.0411539568),
        (1.0, -0.1588281737, -0.1588273537),
        (1.5, -0.3380198308, -0.3380131103),
        (2.0, -0.5598233120, -0.5599626601),
        (2.5, -0.8063410846, -0.8100196713),
    ]),
    "example3": ("Wazwaz", [
        (0.0, 1.0000000000, 1.0000000000),
        (0.1, 0.9981138095, 0.9980428414),
        (0.2, 0.9922758837, 0.9921894348),
        (0.5, 0.9520376245, 0.9519611019),
        (1.0, 0.8183047481, 0.8182516669),
        (1.5, 0.6254886192, 0.6258916077),
        (2.0, 0.4066479695, 0.4136691039),
    ]),
    "example4": ("Wazwaz", [
        (0.0, 1.0000000000, 1.0000000000),
        (0.1, 0.9986051425, 0.9985979358),
        (0.2, 0.9944062706, 0.9943962733),
        (0.5, 0.9651881683, 0.9651777886),
        (1.0, 0.8636881301, 0.8636811027),
        (1.5, 0.7050524103, 0.7050419247),
        (2.0, 0.5064687568, 0.5063720330),
    ]),
    "example5": ("exact", [
        (0.00, 0.0000000000, 0.0000000000),
        (0.01, -0.0001970587, -0.0001999900),
        (0.10, -0.0198967225, -0.0199006617),
        (0.50, -0.4462840851, -0.4462871026),
        (1.00, -1.3862934297, -1.3862943611),
        (2.00, -3.2188763248, -3.2188758249),
        (3.00, -4.6051709964, -4.6051701860),
        (4.00, -5.6664274573, -5.6664266881),
        (5.00, -6.5161937402, -6.5161930760),
        (6.00, -7.2218363729, -7.2218358253),
        (7.00, -7.8240461812, -7.8240460109),
        (8.00, -8.3487734467, -8.3487745398),
        (9.00, -8.8134506165, -8.8134384945),
        (10.00, -9.2302027821, -9.2302410337),
    ]),
    "example6": ("exact", [
        (0.00, 1.0000000000, 1.0000000000),
        (0.01, 1.0000999826, 1.0001000050),
        (0.02, 1.0004000642, 1.0004000800),
        (0.05, 1.0025031064, 1.0025031276),
        (0.10, 1.0100501492, 1.0100501671),
        (0.20, 1.0408107527, 1.0408107742),
        (0.50, 1.2840253862, 1.2840254167),
        (0.70, 1.6323161777, 1.6323162200),
        (0.80, 1.8964808279, 1.8964808793),
        (0.90, 2.2479078937, 2.2479079867),
        (1.00, 2.7182819166, 2.7182818285),
    ]),
    "example7": ("exact", [
        (0.00, 1.0000000000, 1.0000000000),
        (0.01, 1.0000999826, 1.0001000050),
        (0.02, 1.0004000642, 1.0004000800),
        (0.05, 1.0025031065, 1.0025031276),
        (0.10, 1.0100501493, 1.0100501671),
        (0.20, 1.0408107533, 1.0408107742),
        (0.50, 1.2840253904, 1.2840254167),
        (0.70, 1.6323161872, 1.6323162200),
        (0.80, 1.8964808414, 1.8964808793),
        (0.90, 2.2479079319, 2.2479079867),
        (1.00, 2.7182818260, 2.7182818285),
    ]),
    "example8": ("exact", [
        (0.00, 0.0000000000, 0.0000000000),
        (0.01, -0.0000009321, -0.0000009900),
        (0.10, -0.0009008409, -0.0009000000),
        (0.50, -0.0625021958, -0.0625000000),
        (1.00, -0.0000008284, 0.0000000000),
        (2.00, 8.0000001732, 8.0000000000),
        (3.00, 54.0000002074, 54.0000000000),
        (4.00, 192.0000000368, 192.0000000000),
        (5.00, 499.9999998091, 500.0000000000),
        (6.00, 1079.9999995264, 1080.0000000000),
        (7.00, 2058.0000004141, 2058.0000000000),
        (8.00, 3584.0000093640, 3584.0000000000),
        (9.00, 5831.9999560359, 5832.0000000000),
        (10.00, 8999.9996608001, 9000.0000000000),
    ]),
    "example9": ("exact", [
        (0.00, 0.0000000000, 0.0000000000),
        (0.01, 0.0000995275, 0.0001010000),
        (0.10, 0.0109981790, 0.0110000000),
        (0.50, 0.3749985918, 0.3750000000),
        (1.00, 1.9999987524, 2.0000000000),
        (2.00, 11.9999993068, 12.0000000000),
        (3.00, 35.9999999242, 36.0000000000),
        (4.00, 80.0000003071, 80.0000000000),
        (5.00, 150.0000003207, 150.0000000000),
        (6.00, 252.0000000974, 252.0000000000),
        (7.00, 391.9999997951, 392.0000000000),
        (8.00, 575.9999992644, 576.0000000000),
        (9.00, 810.0000046092, 810.0000000000),
        (10.00, 1099.9999875537, 1100.0000000000),
    ]),
}

# Published Hermite coefficients a_0..a_N at the FIRST_ZEROS configurations.
PUBLISHED_COEFFICIENTS = {
    2: [
        -5.2841135322e-01, -2.0672313847e-01, -2.1013493211e-01,
        -1.2898718939e-01, -1.3634530855e-01, -8.7619773995e-02,
        -7.2750465809e-02, -3.9156883681e-02, -2.6813942695e-02,
        -9.5249929620e-03, -4.1991804282e-03,
    ],
    3: [
        -4.4099373672e-01, -1.5728415017e-01, -1.7607131187e-01,
        -1.1378421470e-01, -1.2995159559e-01, -9.6296863459e-02,
        -9.8373526479e-02, -7.9430021072e-02, -7.8340439572e-02,
        -6.2915940155e-02, -5.7157720774e-02, -4.3579589433e-02,
        -3.6177724390e-02, -2.4548768173e-02, -1.7916420281e-02,
        -1.0200227258e-02, -6.5268030714e-03, -2.7962896018e-03,
        -1.5765572392e-03, -3.7895054857e-04, -2.4542997154e-04,
    ],
    4: [
        -3.8511246127e-01, 1.1585058556e-01, -1.6576622713e-01,
        9.2854106306e-03, -7.1551541010e-02, -9.8809929827e-03,
        -4.8372346356e-02, -9.4556001733e-03, -2.6810185942e-02,
        -6.6016540826e-03, -1.1910053277e-02, -1.1402951223e-03,
        -3.1134305650e-03,
    ],
}


def _table(name):
    key = ALIASES.get(name, name)
    lookup(key)
    return _TABLES.get(key)


def reference_source(name):
    """Label of the published reference column, or None when there is no table."""
    entry = _table(name)
    return entry[0] if entry else None


def reference_table(name):
    """Published ``(x, reference)`` pairs, exactly as printed.

    Raises ``KeyError`` for unknown identifiers; problems without a published
    table return an empty list.
    """
    entry = _table(name)
    return [(x, ref) for x, _, ref in entry[1]] if entry else []


def published_values(name):
    """Published ``(x, collocation value, reference)`` rows."""
    entry = _table(name)
    return list(entry[1]) if entry else []


def reference_value(name, x, atol=1e-12):
    """Published reference at abscissa ``x``; ``KeyError`` if not tabulated."""
    for xr, ref in reference_table(name):
        if abs(xr - x) <= atol:
            return ref
    raise KeyError(f"no published reference for {name!r} at x={x}")


def published_grid(name):
    """Abscissae of the published table for ``name`` (empty when none)."""
    return [x for x, _ in reference_table(name)]
