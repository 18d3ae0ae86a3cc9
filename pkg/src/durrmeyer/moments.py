"""Closed-form moments of the Durrmeyer families and a brute-force oracle.

The closed forms are literal transcriptions of the published moment
identities. Where only a leading term is known (higher central moments of
the order-II and order-III operators) the value is flagged ``asymptotic``.
``moment_bruteforce`` sums the operator directly and is the reference every
closed form is tested against.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, prod
from typing import NamedTuple

import numpy as np

from ._summation import compensated_sum
from .basis import LinearCoeff, QuadraticCoeffSet
from .errors import DomainError, UnsupportedMomentError
from .operators import Family, OperatorSpec, basis_matrix
from .quadrature import basis_monomial_integral

MAX_ORDER = 10


@dataclass(frozen=True)
class MomentQuery:
    spec: OperatorSpec
    kind: str  # "raw" or "central"
    order: int
    x: float

    def __post_init__(self):
        if self.kind not in ("raw", "central"):
            raise ValueError(f"kind must be 'raw' or 'central', got {self.kind!r}")


class MomentResult(NamedTuple):
    value: float
    asymptotic: bool


# -- order I -----------------------------------------------------------------

def closed_moment_m1(c: LinearCoeff, n: int, i: int, x):
    """Images of ``e0, e1, e2`` under the order-I operator."""
    a0, a1 = c.a0, c.a1
    x = np.asarray(x, dtype=float)
    s = 2 * a0 + a1
    if i == 0:
        return s + 0 * x
    if i == 1:
        return s * x + (1 - 2 * x) * (3 * a0 + 2 * a1) / (n + 2)
    if i == 2:
        q = (n + 2) * (n + 3)
        return (
            s * x**2
            - ((8 * x**2 - 5 * x) * a0 + (5 * x**2 - 3 * x) * a1) * 2 * n / q
            - 2 * ((x**2 + 5 * x - 3) * a1 + (4 * x**2 + 5 * x - 4) * a0) / q
        )
    raise UnsupportedMomentError(f"order-I raw moment e{i} has no closed form")


def closed_central_m1(c: LinearCoeff, n: int, r: int, x):
    """Central moments of order 1, 2 and 4 of the order-I operator."""
    a0, a1 = c.a0, c.a1
    x = np.asarray(x, dtype=float)
    if r == 1:
        return (1 - 2 * x) * (2 * a1 + 3 * a0) / (n + 2)
    if r == 2:
        q = (n + 2) * (n + 3)
        return (
            2 * (3 * a1 + 4 * a0 - 11 * a1 * x + 14 * x**2 * a0 + 11 * a1 * x**2 - 14 * a0 * x) / q
            + 2 * (1 - x) * x * (2 * a0 + a1) * n / q
        )
    if r == 4:
        s = 2 * a0 + a1
        brace = (
            (1 - x) ** 2 * x**2 * s * n**2
            + 3 * (1 - x) * x * (15 * a1 * x**2 + 22 * x**2 * a0 - 15 * a1 * x
                                 - 22 * a0 * x + 6 * a0 + 4 * a1) * n
            + 10 * a1 + 12 * a0 - 68 * a1 * x + 124 * x**4 * a0 + 202 * x**2 * a0
            + 114 * x**4 * a1 + 182 * a1 * x**2 - 78 * a0 * x - 228 * a1 * x**3
            - 248 * a0 * x**3
        )
        return 12 * brace / ((n + 2) * (n + 3) * (n + 4) * (n + 5))
    raise UnsupportedMomentError(f"order-I central moment r={r} has no closed form")


def closed_moment_decomposition(c: LinearCoeff, n: int, part: int, i: int, x):
    """Images of ``e0, e1, e2`` under the positive parts ``D1`` (part=1) and ``D2`` (part=2)."""
    a0, a1 = c.a0, c.a1
    x = np.asarray(x, dtype=float)
    q = (n + 2) * (n + 3)
    if part == 1:
        if i == 0:
            return -a1 * (x + 1)
        if i == 1:
            return -a1 * (n * x**2 + n * x - x**2 + 2) / (n + 2)
        if i == 2:
            return -a1 * (
                x**2 * (x + 1) * n**2 - x * (3 * x**2 - x - 6) * n
                + 2 * x**3 - 2 * x**2 - 4 * x + 6
            ) / q
    elif part == 2:
        lead = 2 * a0 - a1 * x
        if i == 0:
            return lead
        if i == 1:
            return (lead * n * x + a1 * x**2 - 2 * a0 * x - 2 * a1 * x + 3 * a0) / (n + 2)
        if i == 2:
            return (
                lead * x**2 * n**2
                + (3 * a1 * x**3 - 6 * a0 * x**2 - 6 * a1 * x**2 + 10 * a0 * x) * n
                - 2 * a1 * x**3 + 4 * a0 * x**2 + 6 * a1 * x**2 - 10 * a0 * x
                - 6 * a1 * x + 8 * a0
            ) / q
    raise UnsupportedMomentError(f"no closed form for part {part}, e{i}")


# -- order II ----------------------------------------------------------------

def closed_moment_m2(c: QuadraticCoeffSet, n: int, i: int, x):
    """Images of ``e0, e1, e2`` under the general order-II operator.

    The printed ``e1`` identity is missing a ``+`` between its ``n``-term and
    the cubic remainder; the version here includes it (the oracle agrees).
    """
    b0, b1, b2, d0 = c.b0, c.b1, c.b2, c.d0
    x = np.asarray(x, dtype=float)
    u = 2 * b2 - d0
    s = 2 * b0 + b1 + b2
    if i == 0:
        return u * x**2 - u * x + s
    if i == 1:
        return (
            (u * x**3 - u * x**2 + s * x) * n
            - 2 * u * x**3 + 4 * u * x**2 + (-4 * b0 - 4 * b1 - 8 * b2 + 2 * d0) * x
            + 4 * b0 + 3 * b1 + 3 * b2
        ) / (n + 2)
    if i == 2:
        return (
            (u * x**4 - u * x**3 + s * x**2) * n**2
            + (-5 * u * x**4 + 11 * u * x**3
               + (-10 * b0 - 9 * b1 - 21 * b2 + 6 * d0) * x**2
               + (12 * b0 + 8 * b1 + 8 * b2) * x) * n
            + 6 * u * x**4 - 18 * u * x**3
            + (12 * b0 + 14 * b1 + 52 * b2 - 18 * d0) * x**2
            + (-24 * b0 - 26 * b1 - 40 * b2 + 6 * d0) * x
            + 14 * b0 + 12 * b1 + 12 * b2
        ) / ((n + 2) * (n + 3))
    raise UnsupportedMomentError(f"order-II raw moment e{i} has no closed form")


def closed_moment_m2_constrained(b0: float, b1: float, n: int, i: int, x):
    """Order-II moments once ``2 b2 = d0`` and ``b2 + 2 b0 + b1 = 1`` are imposed."""
    x = np.asarray(x, dtype=float)
    if i == 0:
        return 1.0 + 0 * x
    if i == 1:
        return x + ((4 * b0 - 6) * x + 3 - 2 * b0) / (n + 2)
    if i == 2:
        return x**2 + 2 * (
            4 * b0 * n * x**2 - 2 * b0 * n * x - 10 * b0 * x**2 - b1 * x**2 - 7 * n * x**2
            + 16 * b0 * x + b1 * x + 4 * n * x + 5 * x**2 - 5 * b0 - 14 * x + 6
        ) / ((n + 2) * (n + 3))
    raise UnsupportedMomentError(f"order-II raw moment e{i} has no closed form")


def closed_moment_m2_tilde(n: int, i: int, x):
    x = np.asarray(x, dtype=float)
    if i == 0:
        return 1.0 + 0 * x
    if i == 1:
        return x + 0.0
    if i == 2:
        return x**2 + (20 * x * (1 - x) - 3) / ((n + 2) * (n + 3))
    raise UnsupportedMomentError(f"order-II raw moment e{i} has no closed form")


def _rising(n, lo, hi):
    return prod(n + k for k in range(lo, hi + 1))


def closed_central_m2_tilde(n: int, r: int, x):
    """Central moments of the ``b0 = 3/2`` order-II operator.

    Exact for ``r = 2, 3``; for ``r = 4, 5, 6`` only the leading term is
    returned (see ``SUPPORTED`` for the flags).
    """
    x = np.asarray(x, dtype=float)
    w = x * (1 - x)
    if r == 2:
        return (20 * w - 3) / ((n + 2) * (n + 3))
    if r == 3:
        return 3 * (1 - 2 * x) * (-4 * n * w - 48 * x**2 + 48 * x - 7) / _rising(n, 2, 4)
    if r == 4:
        return -12 * w**2 * n**2 / _rising(n, 2, 5)
    if r == 5:
        return -360 * (1 - 2 * x) * w**2 * n**2 / _rising(n, 2, 6)
    if r == 6:
        return -240 * w**3 * n**3 / _rising(n, 2, 7)
    raise UnsupportedMomentError(f"order-II central moment r={r} has no closed form")


# -- order III ---------------------------------------------------------------

def closed_central_m3_tilde(n: int, r: int, x):
    """Central moments of the order-III operator.

    Orders 1-3 vanish identically. Orders 4-6 return the leading term; the
    printed denominators ``sum_{k=2}^{m}(n+k)`` are read as products, the
    only reading under which the remainders are of the stated size.
    """
    x = np.asarray(x, dtype=float)
    w = x * (1 - x)
    if r in (1, 2, 3):
        return 0.0 * x
    if r == 4:
        return 20 * w * (21 * x**2 - 21 * x + 5) * n / _rising(n, 2, 5)
    if r == 5:
        return 180 * (1 - 2 * x) * w**2 * n**2 / _rising(n, 2, 6)
    if r == 6:
        return 120 * w**3 * n**3 / _rising(n, 2, 7)
    raise UnsupportedMomentError(f"order-III central moment r={r} has no closed form")


# (family, kind) -> {order: asymptotic?}
SUPPORTED = {
    (Family.CLASSICAL, "raw"): {0: False, 1: False, 2: False},
    (Family.CLASSICAL, "central"): {1: False, 2: False, 4: False},
    (Family.M1, "raw"): {0: False, 1: False, 2: False},
    (Family.M1, "central"): {1: False, 2: False, 4: False},
    (Family.M2, "raw"): {0: False, 1: False, 2: False},
    (Family.M2_TILDE, "raw"): {0: False, 1: False, 2: False},
    (Family.M2_TILDE, "central"): {2: False, 3: False, 4: True, 5: True, 6: True},
    (Family.M3_TILDE, "central"): {1: False, 2: False, 3: False, 4: True, 5: True, 6: True},
}


def supported_table() -> str:
    lines = []
    for (fam, kind), orders in SUPPORTED.items():
        listed = ", ".join(f"{r}{'~' if asym else ''}" for r, asym in orders.items())
        lines.append(f"  {fam.value:<10} {kind:<8} {listed}")
    return "\n".join(lines) + "\n  (~ = leading term only)"


def closed_form(q: MomentQuery) -> MomentResult:
    """Dispatch a query to the matching closed form."""
    fam = q.spec.family
    orders = SUPPORTED.get((fam, q.kind), {})
    if q.order not in orders:
        raise UnsupportedMomentError(
            f"no closed form for {fam.value} {q.kind} moment of order {q.order}; supported:\n"
            + supported_table()
        )
    n, x, r = q.spec.n, q.x, q.order
    if fam in (Family.CLASSICAL, Family.M1):
        c = q.spec.coeffs if fam is Family.M1 else LinearCoeff.classical()
        fn = closed_moment_m1 if q.kind == "raw" else closed_central_m1
        value = fn(c, n, r, x)
    elif fam is Family.M2:
        value = closed_moment_m2(q.spec.coeffs, n, r, x)
    elif fam is Family.M2_TILDE:
        fn = closed_moment_m2_tilde if q.kind == "raw" else closed_central_m2_tilde
        value = fn(n, r, x)
    else:
        value = closed_central_m3_tilde(n, r, x)
    return MomentResult(float(value) if np.ndim(value) == 0 else value, orders[r])


def moment_bruteforce(spec, kind: str | None = None, order: int | None = None, x=None):
    """Apply the operator to ``t^r`` or ``(t - x)^r`` by direct summation over ``k``.

    For central moments the binomial expansion of ``(t - x)^r`` is taken
    inside each ``k``-integral, where it stays well conditioned, and only
    then summed against the outer basis with compensation. ``spec`` may
    also be a ``MomentQuery`` carrying the other three arguments.
    """
    if isinstance(spec, MomentQuery):
        spec, kind, order, x = spec.spec, spec.kind, spec.order, spec.x
    if not 0 <= order <= MAX_ORDER:
        raise DomainError(f"moment order must be in 0..{MAX_ORDER}")
    scalar = np.ndim(x) == 0
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    n = spec.n
    k = np.arange(n + 1)
    if kind == "raw":
        inner = np.broadcast_to(basis_monomial_integral(n, k, order)[:, None], (n + 1, xs.size))
    elif kind == "central":
        terms = np.stack([
            comb(order, j) * (-xs[None, :]) ** (order - j)
            * basis_monomial_integral(n, k, j)[:, None]
            for j in range(order + 1)
        ])
        inner = compensated_sum(terms, axis=0)
    else:
        raise ValueError(f"kind must be 'raw' or 'central', got {kind!r}")
    out = (n + 1) * np.atleast_1d(compensated_sum(basis_matrix(spec, xs) * inner, axis=0))
    return float(out[0]) if scalar else out
