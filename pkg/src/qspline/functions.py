"""Registry of analytic test functions with derivatives up to order five."""

from dataclasses import dataclass, field
from math import factorial
from typing import Callable

import numpy as np

from .exceptions import InputError


@dataclass(frozen=True)
class TestFunction:
    """A function with analytic derivatives ``derivatives[k]`` for some k."""

    __test__ = False  # keep pytest from collecting this class

    name: str
    value: Callable
    derivatives: dict = field(default_factory=dict)
    interval: tuple = (0.0, 1.0)

    def __call__(self, x):
        return self.value(np.asarray(x, dtype=float))

    def has_derivative(self, k: int) -> bool:
        return k == 0 or k in self.derivatives

    def derivative(self, k: int):
        if k == 0:
            return self.value
        try:
            return self.derivatives[k]
        except KeyError:
            raise InputError(f"{self.name} has no registered derivative of order {k}") from None


def _sin_derivs():
    return {k: (lambda x, k=k: np.sin(np.asarray(x, dtype=float) + k * np.pi / 2)) for k in range(1, 6)}


def _runge(k):
    # d^k/dx^k 1/(1+x^2) = (-1)^k k! Im((x - i)^-(k+1))
    def f(x):
        z = np.asarray(x, dtype=float) - 1j
        return (-1) ** k * factorial(k) * np.imag(z ** (-(k + 1)))
    return f


# derivatives of the logistic function as polynomials in s = 1/(1+exp(-x))
_P = np.polynomial.polynomial
_LOGISTIC_POLYS = [np.array([0.0, 1.0])]
for _ in range(5):
    # d/dx P(s) = P'(s) * s (1 - s)
    _LOGISTIC_POLYS.append(_P.polymul(_P.polyder(_LOGISTIC_POLYS[-1]), [0.0, 1.0, -1.0]))


def _logistic(k):
    coeffs = _LOGISTIC_POLYS[k]

    def f(x):
        s = 1.0 / (1.0 + np.exp(-np.asarray(x, dtype=float)))
        return _P.polyval(s, coeffs)
    return f


def polynomial_function(coeffs, name=None, interval=(0.0, 1.0)) -> TestFunction:
    """Power-basis polynomial ``sum coeffs[k] x**k`` with all derivatives."""
    P = np.polynomial.Polynomial(coeffs)
    derivs = {k: P.deriv(k) for k in range(1, 6)}
    return TestFunction(name or f"poly{len(coeffs) - 1}", P, derivs, interval)


REGISTRY = {
    "sin": TestFunction("sin", np.sin, _sin_derivs(), (0.0, np.pi)),
    "runge": TestFunction("runge", _runge(0), {k: _runge(k) for k in range(1, 6)}, (-1.0, 3.0)),
    "logistic": TestFunction(
        "logistic", _logistic(0), {k: _logistic(k) for k in range(1, 6)}, (-1.0, 4.0)
    ),
    "exp": TestFunction("exp", np.exp, {k: np.exp for k in range(1, 6)}, (0.0, 1.0)),
    "x4": polynomial_function([0, 0, 0, 0, 1], "x4"),
    "x5": polynomial_function([0, 0, 0, 0, 0, 1], "x5"),
}


def get_function(name: str) -> TestFunction:
    try:
        return REGISTRY[name.lower()]
    except KeyError:
        raise InputError(f"unknown function {name!r}; known: {', '.join(sorted(REGISTRY))}") from None


def register(fn: TestFunction) -> TestFunction:
    REGISTRY[fn.name.lower()] = fn
    return fn
