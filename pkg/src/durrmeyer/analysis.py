"""Error measurement, convergence rates, Voronovskaja residuals and moduli of continuity."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence, Union

import numpy as np
from scipy.ndimage import maximum_filter1d, minimum_filter1d

from .basis import LinearCoeff
from .errors import DegenerateFitError, DomainError, InvalidSpecError, MissingLimitsError
from .functions import TargetFunction, as_target
from .moments import moment_bruteforce
from .operators import Family, OperatorSpec, apply, preset

DEFAULT_GRID = 201
MODULUS_RESOLUTION = 10_000
# errors below this are reproduction / rounding noise and are left out of rate fits
RATE_FLOOR = 1e-12
SQRT2_FACTOR = 1.0 + math.sqrt(2.0)


@dataclass(frozen=True)
class Grid:
    points: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 1 or pts.size == 0:
            raise DomainError("grid must be a nonempty 1-D sequence")
        if np.any(np.diff(pts) <= 0):
            raise DomainError("grid points must be strictly increasing")
        if pts[0] < 0 or pts[-1] > 1:
            raise DomainError("grid points must lie in [0, 1]")
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)

    @classmethod
    def uniform(cls, size: int = DEFAULT_GRID, endpoints: bool = True) -> "Grid":
        if endpoints:
            return cls(np.linspace(0.0, 1.0, size))
        return cls(np.linspace(0.0, 1.0, size + 2)[1:-1])

    def __len__(self):
        return self.points.size


def _points(grid) -> np.ndarray:
    if grid is None:
        return Grid.uniform().points
    if isinstance(grid, Grid):
        return grid.points
    if isinstance(grid, int):
        return Grid.uniform(grid).points
    return Grid(grid).points


@dataclass(frozen=True)
class ErrorReport:
    spec_name: str
    n: int
    x: np.ndarray
    errors: np.ndarray
    sup_error: float

    @property
    def per_point(self):
        return list(zip(self.x.tolist(), self.errors.tolist()))


def error_report(spec: OperatorSpec, f, grid=None) -> ErrorReport:
    """Pointwise ``|f(x) - D(f; x)|`` and its discrete maximum."""
    f = as_target(f)
    x = _points(grid)
    err = np.abs(f(x) - apply(spec, f, x))
    return ErrorReport(spec.name, spec.n, x, err, float(err.max()))


@dataclass(frozen=True)
class RateFit:
    """Least-squares line through ``(log n, log sup_error)``."""

    n_values: tuple
    sup_errors: tuple
    slope: float
    intercept: float
    r_squared: float
    dropped: tuple = ()


SpecFactory = Union[str, Callable[[int], OperatorSpec]]


def _factory(spec_factory: SpecFactory) -> Callable[[int], OperatorSpec]:
    if isinstance(spec_factory, str):
        name = spec_factory
        return lambda n: preset(name, n)
    return spec_factory


def fit_rate(n_values: Sequence[int], sup_errors: Sequence[float]) -> RateFit:
    ns = np.asarray(n_values, dtype=float)
    errs = np.asarray(sup_errors, dtype=float)
    keep = errs >= RATE_FLOOR
    dropped = tuple(int(n) for n in ns[~keep])
    if keep.sum() < 2:
        raise DegenerateFitError(
            "fewer than two sup-errors above %.0e; the function is reproduced" % RATE_FLOOR
        )
    lx, ly = np.log(ns[keep]), np.log(errs[keep])
    slope, intercept = np.polyfit(lx, ly, 1)
    resid = ly - (slope * lx + intercept)
    ss_tot = float(((ly - ly.mean()) ** 2).sum())
    r2 = 1.0 - float((resid**2).sum()) / ss_tot if ss_tot > 0 else 1.0
    return RateFit(tuple(int(n) for n in ns), tuple(errs.tolist()), float(slope),
                   float(intercept), min(1.0, max(0.0, r2)), dropped)


def convergence_order(spec_factory: SpecFactory, f, n_values: Sequence[int], grid=None) -> RateFit:
    """Fit the empirical convergence order of an operator family on ``f``.

    ``spec_factory`` is a preset name or a callable ``n -> OperatorSpec``.
    A slope near ``-p`` is the empirical signature of an ``O(n^-p)`` rate.
    """
    if len(set(n_values)) < 4:
        raise InvalidSpecError("need at least 4 distinct n values")
    make = _factory(spec_factory)
    f = as_target(f)
    errs = [error_report(make(n), f, grid).sup_error for n in n_values]
    return fit_rate(n_values, errs)


# -- Voronovskaja ------------------------------------------------------------

def voronovskaja_limit(l0: float, l1: float, f: TargetFunction, x):
    """``(1-2x)(2 l1 + 3 l0) f'(x) + x(1-x)(2 l0 + l1) f''(x)``."""
    x = np.asarray(x, dtype=float)
    return ((1 - 2 * x) * (2 * l1 + 3 * l0) * f.derivative(1)(x)
            + x * (1 - x) * (2 * l0 + l1) * f.derivative(2)(x))


def voronovskaja_residual(spec: OperatorSpec, f, grid=None):
    """``n (D(f;x) - f(x))`` minus its Voronovskaja limit, on a grid.

    Returns ``(x, residual)`` arrays. The operator spec must carry the limits
    ``(l0, l1)`` of its order-I sequences.
    """
    f = as_target(f)
    if spec.family is Family.CLASSICAL:
        spec = spec.as_m1()
    if spec.family is not Family.M1:
        raise InvalidSpecError("Voronovskaja residuals are defined for order-I operators")
    if spec.limits is None:
        raise MissingLimitsError(f"{spec.name}: sequence limits (l0, l1) are required")
    x = _points(grid)
    scaled = spec.n * (apply(spec, f, x) - f(x))
    l0, l1 = spec.limits
    return x, scaled - voronovskaja_limit(l0, l1, f, x)


def quantitative_voronovskaja_lhs(n: int, g, x):
    """``D(g;x) - g(x) - D((t-x)^2; x) g''(x) / 2`` for the ``a0 = 2, a1 = -3`` operator."""
    g = as_target(g)
    spec = preset("m1-reproducing", n)
    x = np.asarray(x, dtype=float)
    second = moment_bruteforce(spec, "central", 2, x)
    return apply(spec, g, x) - g(x) - 0.5 * second * g.derivative(2)(x)


def quantitative_voronovskaja_check(g, n: int, grid=None, resolution: int = MODULUS_RESOLUTION) -> float:
    """Sup of ``|lhs| / (omega(g'', 1/sqrt(n)) / n)`` over the grid.

    When ``g''`` is constant the modulus vanishes and ``n * sup|lhs|`` is
    returned instead; that quantity must itself tend to zero.
    """
    g = as_target(g)
    x = _points(grid)
    lhs = np.abs(quantitative_voronovskaja_lhs(n, g, x))
    omega = modulus_first(g.derivative(2), 1.0 / math.sqrt(n), resolution)
    if omega == 0.0:
        return float(lhs.max() * n)
    return float(lhs.max() / (omega / n))


# -- moduli of continuity ----------------------------------------------------

def _samples(f, resolution):
    if resolution < 1000:
        raise DomainError("resolution must be at least 1000 samples")
    t = np.linspace(0.0, 1.0, resolution + 1)
    # constant closures may return a scalar
    return np.broadcast_to(np.asarray(as_target(f)(t), dtype=float), t.shape)


def _window(delta, resolution):
    if not 0.0 < delta <= 1.0:
        raise DomainError("delta must lie in (0, 1]")
    return int(math.floor(delta * resolution + 1e-9))


def modulus_first(f, delta: float, resolution: int = MODULUS_RESOLUTION) -> float:
    """``max |f(s) - f(t)|`` over grid pairs with ``|s - t| <= delta``.

    Equivalent to the largest max-minus-min over sliding windows of width
    ``delta``, so it runs in linear time. The discretization error is at most
    ``sup|f'| / resolution``.
    """
    y = _samples(f, resolution)
    w = _window(delta, resolution)
    if w == 0:
        return 0.0
    hi = maximum_filter1d(y, w + 1, mode="nearest")
    lo = minimum_filter1d(y, w + 1, mode="nearest")
    return float((hi - lo).max())


def modulus_second(f, delta: float, resolution: int = MODULUS_RESOLUTION) -> float:
    """``max |f(x-h) - 2 f(x) + f(x+h)|`` over grid points with ``0 < h <= delta``."""
    y = _samples(f, resolution)
    w = min(_window(delta, resolution), resolution // 2)
    best = 0.0
    for lag in range(1, w + 1):
        d2 = y[: -2 * lag] - 2.0 * y[lag:-lag] + y[2 * lag:]
        best = max(best, float(np.abs(d2).max()))
    return best


# -- direct estimates --------------------------------------------------------

def direct_bound(c: LinearCoeff, n: int, f, grid=None, resolution: int = MODULUS_RESOLUTION):
    """``(bound, actual)`` for the first-modulus direct estimate.

    ``bound = (3|a1| + 1)(1 + sqrt 2) omega(f, 1/sqrt n)``; ``actual`` is the
    discrete sup-error of the order-I operator with coefficients ``c``.
    """
    c.check_constraint(1e-12)
    f = as_target(f)
    spec = OperatorSpec(Family.M1, n, c)
    actual = error_report(spec, f, grid).sup_error
    bound = (3 * abs(c.a1) + 1) * SQRT2_FACTOR * modulus_first(f, 1.0 / math.sqrt(n), resolution)
    return bound, actual


def lipschitz_bound(c: LinearCoeff, n: int, order: float, constant: float) -> float:
    """Bound for ``f`` Lipschitz of ``order`` in (0, 1] with ``constant``."""
    if not 0.0 < order <= 1.0:
        raise DomainError("Lipschitz order must lie in (0, 1]")
    return (3 * abs(c.a1) + 1) * SQRT2_FACTOR * constant * n ** (-order / 2)
