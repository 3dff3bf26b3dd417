"""Hyperbolic discounting ``D(n) = gexp(h, -rho*n) = (1 - h*rho*n)**(1/h)``.

``h <= 0`` is the hyperbolicity (``h -> 0-`` recovers ``exp(-rho*n)``) and
``rho > 0`` the per-period rate.  Intertemporal arbitrage between a small
soon reward and a large late one yields::

    1/h = -(s_m / s_M) * n        rho = kappa * s_m / W0

so ``h`` is never positive and the discount is subadditive:
``D(a) * D(b) < D(a + b)`` for ``a, b > 0``.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
from scipy.optimize import minimize

from .core_math import EPS_H, DomainError, gexp


class InsufficientDataError(DomainError):
    pass


@dataclass(frozen=True)
class DiscountParams:
    h: float
    rho: float

    def __post_init__(self):
        if not self.h <= 0:
            raise DomainError(f"hyperbolicity must be <= 0, got h = {self.h}")
        if not self.rho > 0:
            raise DomainError(f"discount rate must be positive, got rho = {self.rho}")

    @property
    def exponential(self) -> bool:
        return abs(self.h) < EPS_H


def _discount(h: float, rho: float, n):
    # also used by the unconstrained fit, where h > 0 may leave the domain
    if abs(h) < EPS_H:
        return np.exp(-rho * n)
    base = 1.0 - h * rho * n
    with np.errstate(invalid="ignore", divide="ignore"):
        return np.where(base > 0, np.exp(np.log1p(-h * rho * n) / h), np.nan)


def discount(params: DiscountParams, n):
    """Discount factor after ``n`` periods; scalar in, float out."""
    arr = np.asarray(n, dtype=float)
    if np.any(~(arr >= 0)):
        raise DomainError("delay must be non-negative")
    out = _discount(params.h, params.rho, arr)
    return float(out) if out.ndim == 0 else out


def average_rate(params: DiscountParams, n):
    """Per-period average rate ``-ln D(n) / n``."""
    n = np.asarray(n, dtype=float)
    out = -np.log(discount(params, n)) / n
    return float(out) if out.ndim == 0 else out


def params_from_arbitrage(
    s_m: float, s_M: float, n: float, kappa: float, W0: float
) -> DiscountParams:
    """Discount parameters implied by the small-soon / large-late arbitrage."""
    for name, v in (("s_m", s_m), ("s_M", s_M), ("n", n), ("kappa", kappa), ("W0", W0)):
        if not v > 0:
            raise DomainError(f"{name} must be positive, got {v}")
    if s_m > 1 or s_M > 1:
        raise DomainError("senses of truth must not exceed 1")
    return DiscountParams(h=-s_M / (s_m * n), rho=kappa * s_m / W0)


def annualized_rate(m: float, M: float, t: float) -> float:
    """Continuously compounded annual rate making ``m`` now worth ``M`` after ``t`` years."""
    if not (m > 0 and t > 0):
        raise DomainError(f"need m > 0 and t > 0, got m={m}, t={t}")
    if not M > m:
        raise DomainError(f"delayed amount must exceed the immediate one ({M} <= {m})")
    return math.log(M / m) / t


def subadditive_combine(params: DiscountParams, a: float, b: float) -> tuple[float, float]:
    """Discount over a delay split into ``a`` then ``b``, versus over ``a + b`` at once.

    Returns ``(divided, undivided)``.
    """
    if a < 0 or b < 0:
        raise DomainError("delays must be non-negative")
    divided = discount(params, a) * discount(params, b)
    undivided = discount(params, a + b)
    return divided, undivided


def product_identity(h: float, x: float, y: float) -> float:
    """Right-hand side of ``gexp(h,-x) * gexp(h,-y) = gexp(h, -x - y + h*x*y)``."""
    return gexp(h, -x - y + h * x * y)


@dataclass(frozen=True)
class FitResult:
    h: float
    rho: float
    residual: float  # sum of squared residuals
    converged: bool
    evaluations: int

    @property
    def params(self) -> DiscountParams | None:
        """Fitted parameters; ``None`` for an unconstrained fit that landed at ``h > 0``."""
        if self.h > 0:
            return None
        return DiscountParams(self.h, self.rho)


_H_GRID = -np.geomspace(1e-6, 10.0, 36)
_RHO_GRID = np.geomspace(1e-4, 10.0, 51)
_MAX_EVALS = 10_000
_XATOL = 1e-9


def _sse(h: float, rho: float, n: np.ndarray, d: np.ndarray) -> float:
    if not (rho > 0 and np.isfinite(h)):
        return math.inf
    pred = _discount(h, rho, n)
    if not np.all(np.isfinite(pred)):
        return math.inf
    return float(np.sum((pred - d) ** 2))


def fit_discount(
    points: Iterable[Sequence[float]], *, unconstrained: bool = False
) -> FitResult:
    """Least-squares fit of ``(h, rho)`` to ``(delay, discount)`` indifference points.

    A log-spaced grid seeds a Nelder-Mead refinement.  ``h`` is kept
    non-positive by searching over ``log(-h)``; with ``unconstrained=True``
    ``h`` is searched directly and may turn positive (diagnostic only).
    """
    pts = np.asarray([tuple(p) for p in points], dtype=float)
    if pts.ndim != 2 or len(pts) < 2:
        raise InsufficientDataError("at least two indifference points are needed")
    n, d = pts[:, 0], pts[:, 1]
    if len(np.unique(n)) != len(n):
        raise InsufficientDataError("delays must be distinct")
    if np.any(n < 0) or np.any(~((d > 0) & (d <= 1))):
        raise DomainError("delays must be >= 0 and discounts in (0, 1]")

    grid = [(_sse(h, r, n, d), h, r) for h in _H_GRID for r in _RHO_GRID]
    _, h0, r0 = min(grid)

    if unconstrained:
        def unpack(z):
            return float(z[0]), math.exp(z[1])
        start = [h0, math.log(r0)]
        bounds = [(-50.0, 50.0), (math.log(1e-8), math.log(1e3))]
    else:
        def unpack(z):
            return -math.exp(z[0]), math.exp(z[1])
        start = [math.log(-h0), math.log(r0)]
        bounds = [(math.log(1e-10), math.log(50.0)), (math.log(1e-8), math.log(1e3))]

    res = minimize(
        lambda z: _sse(*unpack(z), n, d),
        start,
        method="Nelder-Mead",
        bounds=bounds,
        options={"xatol": _XATOL, "fatol": math.inf, "maxfev": _MAX_EVALS, "maxiter": _MAX_EVALS},
    )
    h, rho = unpack(res.x)
    return FitResult(
        h=h,
        rho=rho,
        residual=float(res.fun),
        converged=bool(res.success),
        evaluations=int(res.nfev) + len(grid),
    )


def load_points_csv(path: str | Path) -> list[tuple[float, float]]:
    """Read ``delay_periods,discount_factor`` rows."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        missing = {"delay_periods", "discount_factor"} - set(reader.fieldnames or ())
        if missing:
            raise DomainError(f"{path}: missing column(s) {', '.join(sorted(missing))}")
        return [(float(r["delay_periods"]), float(r["discount_factor"])) for r in reader]
