"""Named target functions on [0, 1] with analytic derivatives where available."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import InvalidSpecError

TWO_PI = 2.0 * np.pi

# smoothness tag meaning "infinitely differentiable"
SMOOTH = 10


@dataclass(frozen=True)
class TargetFunction:
    """A real function on ``[0, 1]`` evaluated on numpy arrays.

    ``smoothness`` is the declared differentiability class (0, 2, 6 or 10;
    10 stands for anything at least ten times continuously differentiable).
    ``breakpoints`` mark interior kinks at which quadrature panels are split.
    """

    name: str
    func: Callable
    smoothness: int = SMOOTH
    breakpoints: tuple = ()
    d1: Optional[Callable] = field(default=None, compare=False)
    d2: Optional[Callable] = field(default=None, compare=False)

    def __call__(self, x):
        out = self.func(np.asarray(x, dtype=float))
        return out if np.ndim(out) else float(out)

    def derivative(self, order: int, h: float = 1e-4):
        """First or second derivative: the analytic one if known, else 5-point central differences."""
        exact = {1: self.d1, 2: self.d2}.get(order)
        if exact is not None:
            return exact
        f = self.func
        if order == 1:
            return lambda x: (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h)
        if order == 2:
            return lambda x: (
                -f(x - 2 * h) + 16 * f(x - h) - 30 * f(x) + 16 * f(x + h) - f(x + 2 * h)
            ) / (12 * h * h)
        raise ValueError("only first and second derivatives are supported")

    def scaled_sum(self, other: "TargetFunction", alpha: float, beta: float) -> "TargetFunction":
        """``alpha * self + beta * other``."""
        f, g = self.func, other.func
        return TargetFunction(
            f"{alpha:g}*{self.name}+{beta:g}*{other.name}",
            lambda x: alpha * f(x) + beta * g(x),
            min(self.smoothness, other.smoothness),
            tuple(sorted(set(self.breakpoints) | set(other.breakpoints))),
        )


def monomial(i: int) -> TargetFunction:
    if i < 0:
        raise InvalidSpecError("monomial power must be >= 0")
    return TargetFunction(
        f"e{i}",
        lambda x: np.ones_like(x) if i == 0 else x**i,
        d1=lambda x: i * x ** (i - 1) if i >= 1 else np.zeros_like(x),
        d2=lambda x: i * (i - 1) * x ** (i - 2) if i >= 2 else np.zeros_like(x),
    )


def _example1(x):
    return np.sin(TWO_PI * x) + 2.0 * np.sin(0.5 * np.pi * x)


def _example2(x):
    return np.abs(x - 0.5) * np.cos(TWO_PI * x)


def _example3(x):
    return (x - 0.25) * np.sin(TWO_PI * x)


FUNCTIONS = {
    "example1": TargetFunction(
        "example1",
        _example1,
        d1=lambda x: TWO_PI * np.cos(TWO_PI * x) + np.pi * np.cos(0.5 * np.pi * x),
        d2=lambda x: -(TWO_PI**2) * np.sin(TWO_PI * x) - 0.5 * np.pi**2 * np.sin(0.5 * np.pi * x),
    ),
    "example2": TargetFunction("example2", _example2, smoothness=0, breakpoints=(0.5,)),
    "example3": TargetFunction(
        "example3",
        _example3,
        d1=lambda x: np.sin(TWO_PI * x) + TWO_PI * (x - 0.25) * np.cos(TWO_PI * x),
        d2=lambda x: 2 * TWO_PI * np.cos(TWO_PI * x) - TWO_PI**2 * (x - 0.25) * np.sin(TWO_PI * x),
    ),
    "sin2pi": TargetFunction(
        "sin2pi",
        lambda x: np.sin(TWO_PI * x),
        d1=lambda x: TWO_PI * np.cos(TWO_PI * x),
        d2=lambda x: -(TWO_PI**2) * np.sin(TWO_PI * x),
    ),
    "abs_half": TargetFunction(
        "abs_half", lambda x: np.abs(x - 0.5), smoothness=0, breakpoints=(0.5,)
    ),
}

_MONOMIAL = re.compile(r"e(\d+)$")


def get_function(name: str) -> TargetFunction:
    """Look up a named preset or a monomial ``e<i>``."""
    if name in FUNCTIONS:
        return FUNCTIONS[name]
    m = _MONOMIAL.match(name)
    if m:
        return monomial(int(m.group(1)))
    known = ", ".join(sorted(FUNCTIONS))
    raise InvalidSpecError(f"unknown function {name!r}; known: {known}, e<i>")


def as_target(f) -> TargetFunction:
    if isinstance(f, TargetFunction):
        return f
    if isinstance(f, str):
        return get_function(f)
    if callable(f):
        return TargetFunction(getattr(f, "__name__", "f"), f)
    raise TypeError(f"cannot interpret {f!r} as a target function")
