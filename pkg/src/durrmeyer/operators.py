"""Classical and modified Durrmeyer operators.

Every family shares the form

    D(f; x) = (n + 1) * sum_k  q_{n,k}(x) * int_0^1 p_{n,k}(t) f(t) dt

and differs only in the outer basis ``q_{n,k}``. The integral table depends
on ``(n, f)`` alone, so it is built once and reused for every abscissa.
"""

from __future__ import annotations

import ast
import enum
import operator
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional, Union

import numpy as np

from ._summation import compensated_sum
from .basis import (
    LinearCoeff,
    QuadraticCoeffSet,
    QuarticCoeffSet,
    _as_unit_interval,
    bernstein,
    modified_basis_m1,
    modified_basis_m2,
    modified_basis_m3,
)
from .errors import DomainError, InvalidSpecError, UnknownPresetError
from .functions import TargetFunction, as_target
from .quadrature import basis_integral_table


class Family(enum.Enum):
    CLASSICAL = "classical"
    M1 = "m1"
    M2 = "m2"
    M2_TILDE = "m2-tilde"
    M3_TILDE = "m3-tilde"


MIN_DEGREE = {
    Family.CLASSICAL: 0,
    Family.M1: 1,
    Family.M2: 2,
    Family.M2_TILDE: 2,
    Family.M3_TILDE: 4,
}

_COEFF_KIND = {
    Family.CLASSICAL: type(None),
    Family.M1: LinearCoeff,
    Family.M2: QuadraticCoeffSet,
    Family.M2_TILDE: QuadraticCoeffSet,
    Family.M3_TILDE: QuarticCoeffSet,
}

Coeffs = Union[LinearCoeff, QuadraticCoeffSet, QuarticCoeffSet, None]


@dataclass(frozen=True)
class OperatorSpec:
    """One concrete operator: family, degree and coefficient values at that degree.

    ``limits`` holds ``(l0, l1)``, the limits of the order-I sequences, when
    known. With ``constrained=True`` the unit-sum constraint of the family is
    enforced at construction.
    """

    family: Family
    n: int
    coeffs: Coeffs = None
    name: str = ""
    limits: Optional[tuple] = None
    constrained: bool = False

    def __post_init__(self):
        if self.n < MIN_DEGREE[self.family]:
            raise InvalidSpecError(
                f"{self.family.value} needs n >= {MIN_DEGREE[self.family]}, got n={self.n}"
            )
        if not isinstance(self.coeffs, _COEFF_KIND[self.family]):
            raise InvalidSpecError(
                f"{self.family.value} expects {_COEFF_KIND[self.family].__name__} coefficients"
            )
        if self.constrained and self.coeffs is not None:
            self.coeffs.check_constraint()
        if not self.name:
            object.__setattr__(self, "name", self.family.value)

    @property
    def positive(self) -> bool:
        """Whether the operator is known to be positive."""
        if self.family is Family.CLASSICAL:
            return True
        if self.family is Family.M1:
            return self.coeffs.is_positive
        if self.family is Family.M2:
            return self.coeffs == QuadraticCoeffSet.classical()
        return False

    def as_m1(self) -> "OperatorSpec":
        """The order-I view of an order-I or classical spec."""
        if self.family is Family.M1:
            return self
        if self.family is Family.CLASSICAL:
            return OperatorSpec(Family.M1, max(self.n, 1), LinearCoeff.classical(),
                                name=self.name, limits=(1.0, -1.0))
        raise InvalidSpecError(f"{self.family.value} has no order-I form")


def basis_matrix(spec: OperatorSpec, x) -> np.ndarray:
    """Outer basis ``q_{n,k}(x)`` as an ``(n + 1, len(x))`` array."""
    x = np.atleast_1d(_as_unit_interval(x))
    k = np.arange(spec.n + 1)[:, None]
    xs = x[None, :]
    fam = spec.family
    if fam is Family.CLASSICAL:
        return bernstein(spec.n, k, xs)
    if fam is Family.M1:
        return modified_basis_m1(spec.n, k, xs, spec.coeffs)
    if fam in (Family.M2, Family.M2_TILDE):
        return modified_basis_m2(spec.n, k, xs, spec.coeffs)
    return modified_basis_m3(spec.n, k, xs, spec.coeffs)


@lru_cache(maxsize=256)
def _cached_integrals(n: int, f: TargetFunction) -> np.ndarray:
    table = basis_integral_table(n, f.func, breakpoints=f.breakpoints)
    table.flags.writeable = False
    return table


def integral_table(n: int, f) -> np.ndarray:
    """``int_0^1 p_{n,k}(t) f(t) dt`` for ``k = 0..n`` (cached per ``(n, f)``)."""
    f = as_target(f)
    try:
        return _cached_integrals(n, f)
    except TypeError:  # unhashable closure captured in f
        return basis_integral_table(n, f.func, breakpoints=f.breakpoints)


def combine(basis: np.ndarray, integrals: np.ndarray, n: int) -> np.ndarray:
    """``(n + 1) * sum_k basis[k, :] * integrals[k]`` with compensated summation."""
    return (n + 1) * np.atleast_1d(compensated_sum(basis * integrals[:, None], axis=0))


def apply(spec: OperatorSpec, f, x):
    """Evaluate the operator on ``f`` at ``x`` (scalar or array)."""
    scalar = np.ndim(x) == 0
    out = combine(basis_matrix(spec, x), integral_table(spec.n, f), spec.n)
    return float(out[0]) if scalar else out


def apply_on_grid(spec: OperatorSpec, f, grid) -> list:
    """``[(x, D(f; x)), ...]`` over a sorted grid, sharing one integral table."""
    pts = np.asarray(getattr(grid, "points", grid), dtype=float)
    if pts.size == 0:
        raise DomainError("grid is empty")
    if np.any(np.diff(pts) < 0):
        raise DomainError("grid must be sorted")
    values = apply(spec, f, pts)
    return list(zip(pts.tolist(), values.tolist()))


def decompose_m1(spec: OperatorSpec, f, x):
    """Split an order-I operator into ``(D1, D2)`` with ``D = D2 - D1``.

    Outer bases: ``D1`` uses ``-a1 x p_{n-1,k} - a1 p_{n-1,k-1}`` and ``D2``
    uses ``a0 p_{n-1,k} + (a0 - a1 x) p_{n-1,k-1}``. For a sign-changing
    pair ``(a0, a1)`` both parts are positive operators (up to sign).
    """
    if spec.family is not Family.M1:
        raise InvalidSpecError("decomposition is defined for order-I operators only")
    scalar = np.ndim(x) == 0
    xs = np.atleast_1d(_as_unit_interval(x))
    n, a0, a1 = spec.n, spec.coeffs.a0, spec.coeffs.a1
    k = np.arange(n + 1)[:, None]
    lo = bernstein(n - 1, k, xs[None, :])
    hi = bernstein(n - 1, k - 1, xs[None, :])
    q1 = -a1 * xs * lo - a1 * hi
    q2 = a0 * lo + (a0 - a1 * xs) * hi
    table = integral_table(n, f)
    d1, d2 = combine(q1, table, n), combine(q2, table, n)
    if scalar:
        return float(d1[0]), float(d2[0])
    return d1, d2


# -- coefficient sequences ---------------------------------------------------

_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}


def parse_sequence(expr: str) -> Callable[[int], Fraction]:
    """Compile a rational expression in ``n`` such as ``"(n-1)/(2*n)"``.

    Only numbers, ``n``, parentheses, unary minus and ``+ - * / **`` (integer
    exponents) are accepted; evaluation is exact in fractions.
    """
    try:
        tree = ast.parse(expr, mode="eval").body
    except SyntaxError as exc:
        raise InvalidSpecError(f"cannot parse sequence {expr!r}") from exc

    def check(node):
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            if isinstance(node.op, ast.Pow) and not (
                isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)
            ):
                raise InvalidSpecError("exponents must be integer literals")
            check(node.left)
            check(node.right)
        elif isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            check(node.operand)
        elif isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            pass
        elif isinstance(node, ast.Name) and node.id == "n":
            pass
        else:
            raise InvalidSpecError(f"unsupported token in sequence {expr!r}")

    check(tree)

    def evaluate(node, n):
        if isinstance(node, ast.BinOp):
            return _BINOPS[type(node.op)](evaluate(node.left, n), evaluate(node.right, n))
        if isinstance(node, ast.UnaryOp):
            v = evaluate(node.operand, n)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.Name):
            return Fraction(n)
        return Fraction(node.value)

    def seq(n: int) -> Fraction:
        try:
            return evaluate(tree, n)
        except ZeroDivisionError as exc:
            raise InvalidSpecError(f"sequence {expr!r} divides by zero at n={n}") from exc

    seq.expr = expr
    return seq


@dataclass(frozen=True)
class SequenceFamily:
    """Order-I coefficient sequences ``a0(n), a1(n)`` with optional limits ``(l0, l1)``."""

    name: str
    a0_of_n: Callable
    a1_of_n: Callable
    limits: Optional[tuple] = None

    def coeffs(self, n: int) -> LinearCoeff:
        return LinearCoeff(float(self.a0_of_n(n)), float(self.a1_of_n(n)))

    def exact(self, n: int):
        return Fraction(self.a0_of_n(n)), Fraction(self.a1_of_n(n))

    def spec(self, n: int, constrained: bool = True) -> OperatorSpec:
        if n < MIN_DEGREE[Family.M1]:
            raise InvalidSpecError(f"{self.name} needs n >= {MIN_DEGREE[Family.M1]}, got n={n}")
        try:
            a0, a1 = self.exact(n)
        except ZeroDivisionError as exc:
            raise InvalidSpecError(f"{self.name}: coefficients undefined at n={n}") from exc
        if constrained and 2 * a0 + a1 != 1:
            raise InvalidSpecError(f"{self.name}: 2*a0(n) + a1(n) != 1 at n={n}")
        return OperatorSpec(Family.M1, n, self.coeffs(n), name=self.name,
                            limits=self.limits, constrained=False)

    @classmethod
    def from_expressions(cls, a0: str, a1: str, name: str = "m1-custom",
                         limits: Optional[tuple] = None) -> "SequenceFamily":
        return cls(name, parse_sequence(a0), parse_sequence(a1), limits)


SEQUENCES = {
    "m1-example1": SequenceFamily(
        "m1-example1", lambda n: Fraction(n - 1, 2 * n), lambda n: Fraction(1, n), (0.5, 0.0)
    ),
    "m1-example2": SequenceFamily(
        "m1-example2",
        lambda n: Fraction(-n, 2 * n + 1),
        lambda n: Fraction(4 * n + 1, 2 * n + 1),
        (-0.5, 2.0),
    ),
    "m1-reproducing": SequenceFamily(
        "m1-reproducing", lambda n: Fraction(2), lambda n: Fraction(-3), (2.0, -3.0)
    ),
    "m1-classical": SequenceFamily(
        "m1-classical", lambda n: Fraction(1), lambda n: Fraction(-1), (1.0, -1.0)
    ),
}

PRESETS = ("classical", "m1-example1", "m1-example2", "m1-reproducing", "m2-tilde", "m3-tilde")


def preset(name: str, n: int) -> OperatorSpec:
    """Build a named operator at degree ``n``."""
    if name == "classical":
        return OperatorSpec(Family.CLASSICAL, n, None, name="classical", limits=(1.0, -1.0))
    if name in SEQUENCES:
        return SEQUENCES[name].spec(n)
    if name == "m2-tilde":
        if n < 2:
            raise InvalidSpecError(f"m2-tilde needs n >= 2, got n={n}")
        return OperatorSpec(Family.M2_TILDE, n, QuadraticCoeffSet.tilde(n), name=name,
                            constrained=True)
    if name == "m3-tilde":
        if n < 4:
            raise InvalidSpecError(f"m3-tilde needs n >= 4, got n={n}")
        return OperatorSpec(Family.M3_TILDE, n, QuarticCoeffSet.tilde(n), name=name)
    raise UnknownPresetError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")
