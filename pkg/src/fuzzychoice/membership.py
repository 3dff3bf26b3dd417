"""Fuzzy goal "the bigger the better" over changes.

The membership family is ``mu(x) = 1 - [1 - alpha*beta*(x + 1)]**(1/alpha)``
which, for ``alpha < 0`` and ``beta > 0``, maps ``[-1, inf)`` onto ``[0, 1)``
with ``mu(-1) = 0``, strictly increasing and saturating at 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .core_math import DomainError


class ParameterError(ValueError):
    """Membership parameters do not define a valid goal function."""


# checked numerically in addition to the analytic conditions
_VALIDATION_GRID = np.concatenate(
    [np.linspace(-1.0, 0.0, 101), np.geomspace(1e-3, 1e6, 200)]
)


def _degree(alpha: float, beta: float, x):
    return -np.expm1(np.log1p(-alpha * beta * (x + 1.0)) / alpha)


@dataclass(frozen=True)
class MembershipParams:
    alpha: float = -1.001
    beta: float = 1.3

    def __post_init__(self):
        a, b = self.alpha, self.beta
        if not (np.isfinite(a) and np.isfinite(b)):
            raise ParameterError("alpha and beta must be finite")
        if b <= 0:
            raise ParameterError(f"beta must be positive, got {b}")
        # 1/alpha < 0 gives mu -> 1; alpha*beta < 0 keeps the bracket positive
        # and the derivative beta*[...]**(1/alpha - 1) positive.
        if a >= 0:
            raise ParameterError(f"alpha must be negative, got {a}")
        with np.errstate(all="ignore"):
            mu = _degree(a, b, _VALIDATION_GRID)
        if not np.all(np.isfinite(mu)):
            raise ParameterError("membership degree is not finite on the validation grid")
        if mu[0] != 0.0:
            raise ParameterError("mu(-1) must be 0")
        if np.any(mu < 0) or np.any(mu >= 1):
            raise ParameterError("membership degree leaves [0, 1)")
        # saturation may flatten the far tail to equal floats, never decrease it
        if np.any(np.diff(mu) < 0) or not np.all(np.diff(mu[:150]) > 0):
            raise ParameterError("membership is not increasing")


DEFAULT_PARAMS = MembershipParams()


def mu(params: MembershipParams, x):
    """Membership degree of change ``x`` (scalar or array)."""
    arr = np.asarray(x, dtype=float)
    if np.any(~(arr >= -1.0)):
        raise DomainError("membership is defined for changes >= -1")
    out = _degree(params.alpha, params.beta, arr)
    return float(out) if out.ndim == 0 else out


Candidate = Sequence  # (label, change) or (label, change, sense)


def judge(params: MembershipParams, candidates: Iterable[Candidate]) -> str:
    """Fuzzy "or" (max of memberships) over labeled changes; returns the winning label.

    Ties in degree go to the larger change, then the larger sense of truth
    (default 1), then the first listed.
    """
    items = []
    for i, cand in enumerate(candidates):
        label, change = cand[0], float(cand[1])
        sense = float(cand[2]) if len(cand) > 2 else 1.0
        items.append((mu(params, change), change, sense, -i, label))
    if not items:
        raise ValueError("judge needs at least one candidate")
    best = max(items, key=lambda t: t[:4])
    by_change = max(items, key=lambda t: (t[1], t[2], t[3]))
    assert best[1] == by_change[1], "membership ordering disagrees with change ordering"
    return best[4]
