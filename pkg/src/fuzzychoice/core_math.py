"""Generalized exponential/logarithm and change-factor algebra.

A change ``x`` is a relative wealth variation; the associated factor is
``1 + x``.  ``x = -1`` is total ruin and nothing below it is admissible.

The generalized pair used throughout the package is::

    gexp(h, a) = (1 + h*a) ** (1/h)       -> exp(a) as h -> 0
    glog(p, v) = (v**p - 1) / p           -> log(v) as p -> 0

Both are evaluated in the log domain (``log1p``/``expm1``) so they stay
accurate close to the exponential limit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

#: Below this magnitude the shape parameter is treated as zero.
EPS_H = 1e-8


class DomainError(ValueError):
    """An argument fell outside the real domain of an operation."""


def _is_limit(h: float) -> bool:
    return abs(h) < EPS_H


def gexp(h: float, a):
    """Generalized exponential ``(1 + h*a)**(1/h)``.

    Accepts scalars or arrays for ``a``.  Raises :class:`DomainError` when
    ``1 + h*a <= 0`` anywhere.
    """
    if _is_limit(h):
        return np.exp(a) if isinstance(a, np.ndarray) else math.exp(a)
    if isinstance(a, np.ndarray):
        ha = h * a
        if np.any(ha <= -1.0):
            raise DomainError(f"gexp: 1 + h*a must be positive (h={h})")
        return np.exp(np.log1p(ha) / h)
    ha = h * a
    if ha <= -1.0:
        raise DomainError(f"gexp: 1 + h*a = {1.0 + ha:g} is not positive (h={h}, a={a})")
    return math.exp(math.log1p(ha) / h)


def glog(p: float, v):
    """Generalized logarithm ``(v**p - 1) / p``, the inverse of :func:`gexp`."""
    if isinstance(v, np.ndarray):
        if np.any(v <= 0):
            raise DomainError("glog: argument must be positive")
        return np.log(v) if _is_limit(p) else np.expm1(p * np.log(v)) / p
    if v <= 0:
        raise DomainError(f"glog: argument must be positive, got {v}")
    if _is_limit(p):
        return math.log(v)
    return math.expm1(p * math.log(v)) / p


def check_change(x: float, name: str = "x") -> float:
    if not x >= -1.0:  # also rejects NaN
        raise DomainError(f"{name} = {x} is below total ruin (-1)")
    return float(x)


def check_sense(s: float, name: str = "s", allow_zero: bool = True) -> float:
    lo_ok = s >= 0.0 if allow_zero else s > 0.0
    if not (lo_ok and s <= 1.0):
        interval = "[0, 1]" if allow_zero else "(0, 1]"
        raise DomainError(f"{name} = {s} is outside {interval}")
    return float(s)


def meiotic_change(X: float, s: float) -> float:
    """Shrink a change to the certain equivalent ``(1 + X)**s - 1``."""
    check_change(X, "X")
    check_sense(s)
    if X == -1.0:
        return 0.0 if s == 0.0 else -1.0
    return math.expm1(s * math.log1p(X))


def hyperbolic_change(y: float, s: float) -> float:
    """Inflate a certain change to ``(1 + y)**(1/s) - 1``; inverse of :func:`meiotic_change`."""
    check_change(y, "y")
    check_sense(s, allow_zero=False)
    if y == -1.0:
        return -1.0
    return math.expm1(math.log1p(y) / s)


@dataclass(frozen=True)
class ChangeFactor:
    """Multiplicative wealth change ``1 + x``."""

    x: float

    def __post_init__(self):
        check_change(self.x)

    @classmethod
    def from_amount(cls, amount: float, baseline: float) -> "ChangeFactor":
        if baseline <= 0:
            raise DomainError(f"baseline must be positive, got {baseline}")
        return cls(amount / baseline)

    @property
    def factor(self) -> float:
        return 1.0 + self.x

    def compose(self, other: "ChangeFactor") -> "ChangeFactor":
        return ChangeFactor(self.factor * other.factor - 1.0)

    def __mul__(self, other: "ChangeFactor") -> "ChangeFactor":
        return self.compose(other)

    def restoring(self) -> "ChangeFactor":
        """The change that undoes this one."""
        if self.x == -1.0:
            raise DomainError("ruin cannot be undone")
        return ChangeFactor(1.0 / self.factor - 1.0)
