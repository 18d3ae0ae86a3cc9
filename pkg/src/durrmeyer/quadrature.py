"""Integrals of Bernstein polynomials against monomials and general functions.

``basis_monomial_integral`` is the closed form of ``int_0^1 p_{n,k}(t) t^m dt``;
everything else goes through Gauss-Legendre rules mapped to ``[0, 1]``,
optionally split into panels at declared breakpoints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import roots_legendre

from ._summation import compensated_sum
from .basis import bernstein
from .errors import DomainError

MIN_DEFAULT_NODES = 64
# Headroom above the basis degree left for the integrand's non-polynomial
# factor; 2 * 32 extra degrees resolves sin(2*pi*t) to rounding level.
DEFAULT_EXTRA_NODES = 32
BREAKPOINT_PANELS = 8


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Legendre rule on ``[0, 1]``.

    ``order`` is the polynomial exactness degree ``2 * len(nodes) - 1``.
    """

    nodes: np.ndarray
    weights: np.ndarray
    order: int

    def __len__(self):
        return len(self.nodes)

    def integrate(self, f, a: float = 0.0, b: float = 1.0) -> float:
        t, w = self.on(a, b)
        return compensated_sum(w * np.asarray(f(t), dtype=float))

    def on(self, a: float, b: float):
        """Nodes and weights transplanted to ``[a, b]``."""
        h = b - a
        return a + h * self.nodes, h * self.weights


@lru_cache(maxsize=64)
def _gauss_nodes(m: int) -> QuadratureRule:
    t, w = roots_legendre(m)
    nodes = 0.5 * (t + 1.0)
    weights = 0.5 * w
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return QuadratureRule(nodes, weights, 2 * m - 1)


def make_rule(min_exactness: int) -> QuadratureRule:
    """Smallest Gauss-Legendre rule exact for polynomials of degree ``min_exactness``."""
    if min_exactness < 0:
        raise DomainError("min_exactness must be >= 0")
    m = max(1, math.ceil((min_exactness + 1) / 2))
    return _gauss_nodes(m)


def default_rule(n: int) -> QuadratureRule:
    """Single-panel rule used for degree-``n`` Durrmeyer integrals of smooth functions."""
    m = max(MIN_DEFAULT_NODES, (n + 1) // 2 + DEFAULT_EXTRA_NODES)
    return _gauss_nodes(m)


def basis_monomial_integral(n: int, k, m: int):
    """``int_0^1 p_{n,k}(t) t^m dt = n! (k+m)! / (k! (n+m+1)!)``.

    Evaluated as ``prod_{j=1..m} (k+j)/(n+j) / (n+m+1)``: every factor is at
    most one, so nothing overflows, and the relative error stays near
    ``2 m`` ulps instead of the ``n log n`` ulps a log-gamma difference costs.
    """
    k_arr = np.asarray(k, dtype=np.int64)
    if n < 0 or m < 0:
        raise DomainError("n and m must be non-negative")
    if np.any(k_arr < 0) or np.any(k_arr > n):
        raise DomainError(f"index k out of range 0..{n}")
    kf = k_arr.astype(float)
    acc = np.ones_like(kf)
    for j in range(1, m + 1):
        acc = acc * ((kf + j) / (n + j))
    acc = acc / (n + m + 1)
    return float(acc) if np.ndim(k) == 0 else acc


def panel_edges(breakpoints=(), panels: int = 1):
    """Sorted panel edges on ``[0, 1]``: ``panels`` equal pieces plus interior breakpoints."""
    edges = set(np.linspace(0.0, 1.0, panels + 1).tolist())
    edges.update(b for b in breakpoints if 0.0 < b < 1.0)
    return sorted(edges)


def composite_nodes(rule: QuadratureRule, breakpoints=(), panels: int | None = None):
    """Concatenated nodes and weights of ``rule`` over every panel."""
    if panels is None:
        panels = BREAKPOINT_PANELS if breakpoints else 1
    edges = panel_edges(breakpoints, panels)
    ts, ws = [], []
    for a, b in zip(edges[:-1], edges[1:]):
        t, w = rule.on(a, b)
        ts.append(t)
        ws.append(w)
    return np.concatenate(ts), np.concatenate(ws)


def basis_integral_table(n: int, f, rule: QuadratureRule | None = None,
                         breakpoints=(), panels: int | None = None) -> np.ndarray:
    """``int_0^1 p_{n,k}(t) f(t) dt`` for every ``k = 0..n`` at once.

    ``f`` must accept a numpy array of abscissae.
    """
    if rule is None:
        rule = default_rule(n)
    t, w = composite_nodes(rule, breakpoints, panels)
    fw = w * np.asarray(f(t), dtype=float)
    k = np.arange(n + 1)
    table = bernstein(n, k[:, None], t[None, :]) * fw[None, :]
    return compensated_sum(table, axis=1)


def basis_function_integral(n: int, k: int, f, rule: QuadratureRule | None = None,
                            breakpoints=(), panels: int | None = None) -> float:
    """Quadrature value of ``int_0^1 p_{n,k}(t) f(t) dt``.

    Exact up to rounding when ``f`` is a polynomial and
    ``deg f + n <= rule.order`` (per panel).
    """
    if rule is None:
        rule = default_rule(n)
    t, w = composite_nodes(rule, breakpoints, panels)
    terms = w * bernstein(n, k, t) * np.asarray(f(t), dtype=float)
    return compensated_sum(terms)
