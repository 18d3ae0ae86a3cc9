"""Bernstein basis and the coefficient-weighted bases of orders I, II and III.

All evaluators accept scalar or array ``k`` and ``x`` and broadcast them
against each other. Indices outside ``0..n`` evaluate to exactly zero, which
lets the modified bases be written as plain sums of shifted Bernstein
polynomials without per-term index windows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.special import gammaln

from .errors import DomainError, InvalidSpecError

# Above this degree the binomial logs come from gammaln instead of exact
# integers; the exact table costs O(n^2) bit operations to build.
_EXACT_BINOMIAL_MAX = 5000

CONSTRAINT_TOL = 1e-15


@lru_cache(maxsize=128)
def _log_binomials(n: int) -> np.ndarray:
    if n > _EXACT_BINOMIAL_MAX:
        k = np.arange(n + 1)
        return gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1)
    out = np.empty(n + 1)
    c = 1
    for k in range(n + 1):
        out[k] = math.log(c)
        c = c * (n - k) // (k + 1)
    return out


def _as_unit_interval(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(x)) or np.any(x < 0.0) or np.any(x > 1.0):
        raise DomainError("x must lie in [0, 1]")
    return x


def _scalar_or_array(out, *inputs):
    if all(np.ndim(v) == 0 for v in inputs):
        return float(out)
    return out


def bernstein(n: int, k, x):
    """Evaluate ``p_{n,k}(x) = C(n,k) x^k (1-x)^(n-k)``.

    Interior points are evaluated in log space, using the logarithm of the
    exact integer binomial (float ``gammaln`` loses about ``n log n`` ulps to
    cancellation). The endpoints are handled explicitly.

    Parameters
    ----------
    n : int
        Degree, ``n >= 0``.
    k : int or array_like of int
        Index; values outside ``0..n`` give 0.
    x : float or array_like
        Abscissae in ``[0, 1]``.
    """
    if n < 0:
        raise DomainError(f"degree must be >= 0, got {n}")
    x = _as_unit_interval(x)
    k_arr = np.asarray(k, dtype=np.int64)
    kb, xb = np.broadcast_arrays(k_arr, x)
    out = np.zeros(kb.shape)
    valid = (kb >= 0) & (kb <= n)

    at0 = valid & (xb == 0.0)
    at1 = valid & (xb == 1.0)
    out[at0 & (kb == 0)] = 1.0
    out[at1 & (kb == n)] = 1.0

    inner = valid & (xb > 0.0) & (xb < 1.0)
    if np.any(inner):
        ki = kb[inner]
        xi = xb[inner]
        logs = _log_binomials(n)[ki] + ki * np.log(xi) + (n - ki) * np.log1p(-xi)
        out[inner] = np.exp(logs)
    return _scalar_or_array(out, k, x)


@dataclass(frozen=True)
class LinearCoeff:
    """``a(x, n) = a1 * x + a0`` for the order-I basis."""

    a0: float
    a1: float

    def a(self, x):
        return self.a1 * np.asarray(x, dtype=float) + self.a0

    @property
    def total(self) -> float:
        """``2 a0 + a1``, the image of the constant 1."""
        return 2.0 * self.a0 + self.a1

    def satisfies_constraint(self, tol: float = CONSTRAINT_TOL) -> bool:
        return abs(self.total - 1.0) <= tol

    def check_constraint(self, tol: float = CONSTRAINT_TOL) -> None:
        if not self.satisfies_constraint(tol):
            raise InvalidSpecError(
                f"2*a0 + a1 = {self.total!r} violates the unit-sum constraint"
            )

    @property
    def is_positive(self) -> bool:
        """True when ``a0 >= 0`` and ``a0 + a1 >= 0`` (positive operator case)."""
        return self.a0 >= 0.0 and self.a0 + self.a1 >= 0.0

    @classmethod
    def classical(cls) -> "LinearCoeff":
        return cls(1.0, -1.0)


@dataclass(frozen=True)
class QuadraticCoeffSet:
    """``b(x,n) = b2 x^2 + b1 x + b0`` and ``d(x,n) = d0 x (1-x)``."""

    b0: float
    b1: float
    b2: float
    d0: float

    def b(self, x):
        x = np.asarray(x, dtype=float)
        return (self.b2 * x + self.b1) * x + self.b0

    def d(self, x):
        x = np.asarray(x, dtype=float)
        return self.d0 * x * (1.0 - x)

    def satisfies_constraint(self, tol: float = CONSTRAINT_TOL) -> bool:
        quad = 2.0 * self.b2 - self.d0
        const = self.b2 + 2.0 * self.b0 + self.b1 - 1.0
        scale = max(1.0, abs(self.b1), abs(self.b2), abs(self.d0))
        return abs(quad) <= tol * scale and abs(const) <= tol * scale

    def check_constraint(self, tol: float = CONSTRAINT_TOL) -> None:
        if not self.satisfies_constraint(tol):
            raise InvalidSpecError(
                "order-II coefficients violate 2*b2 - d0 = 0, b2 + 2*b0 + b1 = 1"
            )

    @classmethod
    def classical(cls) -> "QuadraticCoeffSet":
        return cls(1.0, -2.0, 1.0, 2.0)

    @classmethod
    def tilde(cls, n: int) -> "QuadraticCoeffSet":
        """Preset ``b0 = 3/2, b1 = -n, b2 = n - 2, d0 = 2(n - 2)``."""
        return cls(1.5, -float(n), float(n - 2), 2.0 * (n - 2))


def _tilde3_exact(n: int):
    n = Fraction(n)
    bt = (
        Fraction(10, 3),
        Fraction(-53, 3) - Fraction(11, 6) * n,
        n * n / 2 + Fraction(29, 6) * n + Fraction(89, 3),
        -n * n - 3 * n - 16,
        n * n / 2,
    )
    dt = (
        Fraction(-10, 3),
        Fraction(80, 3) + Fraction(10, 3) * n,
        -2 * n * n - Fraction(28, 3) * n - Fraction(161, 3),
        4 * n * n + 6 * n + 32,
        -2 * n * n,
    )
    return bt, dt, 3 * n * n


def _bernstein_form(coeffs) -> tuple:
    """Degree-4 Bernstein coefficients of ``sum coeffs[i] x^i``, rounded once.

    The floats are converted exactly, so the only error is the final rounding.
    """
    exact = [Fraction(c) for c in coeffs]
    return tuple(
        float(sum(Fraction(math.comb(j, i), math.comb(4, i)) * exact[i] for i in range(j + 1)))
        for j in range(5)
    )


@dataclass(frozen=True)
class QuarticCoeffSet:
    """Order-III coefficients: ``bt[i]``, ``dt[i]`` multiply ``x**i``; ``et0`` scales ``(x(1-x))^2``.

    ``b`` and ``d`` are evaluated in Bernstein form. For the preset the
    monomial coefficients grow like ``n^2`` and cancel to ``O(n^2 x^2 (1-x)^2)``;
    in Bernstein form that part is a single nonnegative term.
    """

    bt: tuple
    dt: tuple
    et0: float
    _bt_bern: tuple = field(init=False, repr=False, compare=False)
    _dt_bern: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.bt) != 5 or len(self.dt) != 5:
            raise InvalidSpecError("order-III coefficient tuples need 5 entries")
        object.__setattr__(self, "_bt_bern", _bernstein_form(self.bt))
        object.__setattr__(self, "_dt_bern", _bernstein_form(self.dt))

    @staticmethod
    def _quartic(beta, x):
        y = 1.0 - x
        x2, y2 = x * x, y * y
        return (beta[0] * y2 * y2 + 4.0 * beta[1] * x * y2 * y + 6.0 * beta[2] * x2 * y2
                + 4.0 * beta[3] * x2 * x * y + beta[4] * x2 * x2)

    def b(self, x):
        return self._quartic(self._bt_bern, np.asarray(x, dtype=float))

    def d(self, x):
        return self._quartic(self._dt_bern, np.asarray(x, dtype=float))

    def e(self, x):
        x = np.asarray(x, dtype=float)
        return self.et0 * (x * (1.0 - x)) ** 2

    @classmethod
    def tilde(cls, n: int) -> "QuarticCoeffSet":
        bt, dt, et = _tilde3_exact(n)
        return cls(tuple(float(v) for v in bt), tuple(float(v) for v in dt), float(et))

    @staticmethod
    def tilde_exact(n: int):
        """The same preset as exact fractions ``(bt, dt, et0)``, for oracles."""
        return _tilde3_exact(n)


def modified_basis_m1(n: int, k, x, c: LinearCoeff):
    """``a(x,n) p_{n-1,k}(x) + a(1-x,n) p_{n-1,k-1}(x)``.

    The boundary rows ``k = 0`` and ``k = n`` fall out of the zero
    convention for out-of-range indices.
    """
    if n < 1:
        raise DomainError(f"order-I basis needs n >= 1, got {n}")
    x = _as_unit_interval(x)
    k = np.asarray(k)
    out = c.a(x) * bernstein(n - 1, k, x) + c.a(1.0 - x) * bernstein(n - 1, k - 1, x)
    return _scalar_or_array(out, k, x)


def modified_basis_m2(n: int, k, x, c: QuadraticCoeffSet):
    """``b(x) p_{n-2,k} + d(x) p_{n-2,k-1} + b(1-x) p_{n-2,k-2}``."""
    if n < 2:
        raise DomainError(f"order-II basis needs n >= 2, got {n}")
    x = _as_unit_interval(x)
    k = np.asarray(k)
    out = (
        c.b(x) * bernstein(n - 2, k, x)
        + c.d(x) * bernstein(n - 2, k - 1, x)
        + c.b(1.0 - x) * bernstein(n - 2, k - 2, x)
    )
    return _scalar_or_array(out, k, x)


def modified_basis_m3(n: int, k, x, c: QuarticCoeffSet):
    """Five-term order-III basis built from ``p_{n-4, k-j}``, ``j = 0..4``."""
    if n < 4:
        raise DomainError(f"order-III basis needs n >= 4, got {n}")
    x = _as_unit_interval(x)
    k = np.asarray(k)
    y = 1.0 - x
    weights = (c.b(x), c.d(x), c.e(x), c.d(y), c.b(y))
    out = sum(w * bernstein(n - 4, k - j, x) for j, w in enumerate(weights))
    return _scalar_or_array(out, k, x)
