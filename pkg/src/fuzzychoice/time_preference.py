"""Intertemporal choice between a small-soon and a large-late reward.

With ``n`` attempts at the small reward ``m`` allowed before the large reward
``M`` arrives, the later option wins when::

    (1 + M/W0)**s_M  >  (1 + m/W0)**(n * s_m)

Shifting two rewards ``M1 < M2`` (due at ``n`` and ``n + 1``) into the future
changes the trial ratio ``(n + 1)/n`` toward 1, which is what produces
preference reversal.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .core_math import DomainError, check_sense
from .discounting import DiscountParams, params_from_arbitrage
from .membership import DEFAULT_PARAMS, MembershipParams, judge


class Decision(enum.Enum):
    LATER = "later"
    SOONER = "sooner"


@dataclass(frozen=True)
class IntertemporalChoice:
    m: float
    M: float
    W0: float
    s_m: float = 1.0
    s_M: float = 1.0
    n: float = 1.0

    def __post_init__(self):
        if not (self.m > 0 and self.W0 > 0):
            raise DomainError("amounts and wealth must be positive")
        if not self.M > self.m:
            raise DomainError(f"large reward M={self.M} must exceed small reward m={self.m}")
        if not self.n >= 1:
            raise DomainError(f"n must be at least 1, got {self.n}")
        check_sense(self.s_m, "s_m")
        check_sense(self.s_M, "s_M")


@dataclass(frozen=True)
class Preference:
    decision: Decision
    later_factor: float  # (1 + M/W0)**s_M
    sooner_factor: float  # (1 + m/W0)**(n*s_m)


def prefer_delayed(
    choice: IntertemporalChoice, params: MembershipParams = DEFAULT_PARAMS
) -> Preference:
    c = choice
    later = (1.0 + c.M / c.W0) ** c.s_M
    sooner = (1.0 + c.m / c.W0) ** (c.n * c.s_m)
    label = judge(
        params,
        [
            (Decision.LATER, later - 1.0, c.s_M),
            (Decision.SOONER, sooner - 1.0, c.s_m),
        ],
    )
    return Preference(label, later, sooner)


def arbitrage_kappa(choice: IntertemporalChoice) -> float:
    """``kappa`` such that ``(1 + M/W0)**s_M = (1 + kappa*s_M/W0)**(n*s_m)``.

    The later reward wins exactly when ``kappa * s_M > m``.
    """
    c = choice
    if c.s_m == 0 or c.s_M == 0:
        raise DomainError("kappa is undefined for a zero sense of truth")
    return c.W0 / c.s_M * math.expm1(c.s_M * math.log1p(c.M / c.W0) / (c.n * c.s_m))


def implied_discount(choice: IntertemporalChoice) -> DiscountParams:
    """Discount parameters for which ``discount(n) = 1 / (1 + M/W0)``."""
    c = choice
    return params_from_arbitrage(c.s_m, c.s_M, c.n, arbitrage_kappa(c), c.W0)


@dataclass(frozen=True)
class ReversalSchedule:
    preferred: tuple[str, ...]  # "M1" or "M2" for n = 1..n_max
    factors: tuple[tuple[float, float], ...]
    reversal_n: int | None  # first n at which M2 wins after M1 did

    def winner(self, n: int) -> str:
        return self.preferred[n - 1]


def reversal_schedule(
    M1: float,
    M2: float,
    W0: float,
    s1: float,
    s2: float,
    n_max: int,
    params: MembershipParams = DEFAULT_PARAMS,
) -> ReversalSchedule:
    """Preferred reward when ``M1`` is due in ``n`` periods and ``M2`` in ``n + 1``.

    Compares ``(1 + M1/W0)**((n+1)/n * s1)`` against ``(1 + M2/W0)**s2``.
    """
    if not (0 < M1 <= M2 and W0 > 0):
        raise DomainError("need 0 < M1 <= M2 and W0 > 0")
    check_sense(s1, "s1", allow_zero=False)
    check_sense(s2, "s2", allow_zero=False)
    if n_max < 1:
        raise DomainError(f"n_max must be at least 1, got {n_max}")

    g1, g2 = math.log1p(M1 / W0), math.log1p(M2 / W0)
    preferred, factors = [], []
    for n in range(1, n_max + 1):
        f1 = math.exp((n + 1) / n * s1 * g1)
        f2 = math.exp(s2 * g2)
        preferred.append(judge(params, [("M1", f1 - 1.0, s1), ("M2", f2 - 1.0, s2)]))
        factors.append((f1, f2))

    reversal = None
    if preferred[0] == "M1" and "M2" in preferred:
        reversal = preferred.index("M2") + 1
    return ReversalSchedule(tuple(preferred), tuple(factors), reversal)
