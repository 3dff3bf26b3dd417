"""Lotteries read as temporal hypotheses.

A gain ``x`` won with probability ``p`` is similar to the certain change
``(1 + x)**p - 1`` (meiosis), which never beats the certain ``p*x``: risk
aversion for gains.  A certain loss ``p*x`` is exaggerated into
``(1 + p*rho*x)**(1/p) - 1`` (hyperbole); with ``rho > 1`` this dips below
the gamble's ``x`` for mild losses (risk seeking) and rises above it again
for deep ones (ruin aversion).  Gluing both branches gives the S-curve.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .core_math import DomainError, check_sense, glog
from .membership import DEFAULT_PARAMS, MembershipParams, judge

#: illustrative loss exaggeration; values just above 1 are more realistic
DEFAULT_RHO = 1.2
REALISTIC_RHO = 1.05

# bracket offset from the ends of (-1, 0) and stopping width for the crossover
_BRACKET_DELTA = 1e-9
_ROOT_WIDTH = 1e-10
# judgments closer than this (relative) are ties
TIE_RTOL = 1e-12


class Choice(enum.Enum):
    CERTAIN = "certain"
    UNCERTAIN = "uncertain"


@dataclass(frozen=True)
class SCurveParams:
    p: float = 0.5
    rho: float = DEFAULT_RHO

    def __post_init__(self):
        check_sense(self.p, "p", allow_zero=False)
        if not self.rho >= 1.0:
            raise DomainError(f"rho must be >= 1, got {self.rho}")

    @property
    def loss_floor(self) -> float:
        """Smallest change (exclusive) on which the loss branch is defined."""
        return max(-1.0, -1.0 / (self.p * self.rho))


@dataclass(frozen=True)
class Lottery:
    outcomes: tuple[tuple[float, float], ...]  # (amount, probability)
    W0: float

    def __post_init__(self):
        object.__setattr__(self, "outcomes", tuple((float(a), float(p)) for a, p in self.outcomes))
        if not self.W0 > 0:
            raise DomainError(f"W0 must be positive, got {self.W0}")
        total = 0.0
        for amount, prob in self.outcomes:
            check_sense(prob, "probability")
            if not amount / self.W0 > -1.0:
                raise DomainError(f"outcome {amount} would ruin a wealth of {self.W0}")
            total += prob
        if total > 1.0 + 1e-12:
            raise DomainError(f"probabilities sum to {total} > 1")

    @property
    def changes(self) -> tuple[tuple[float, float], ...]:
        return tuple((a / self.W0, p) for a, p in self.outcomes)

    @property
    def next_form(self) -> bool:
        """True when some outcome certainly happens at the next moment."""
        return math.isclose(sum(p for _, p in self.outcomes), 1.0, abs_tol=1e-12)

    def growth_factor(self) -> float:
        return math.prod((1.0 + x) ** p for x, p in self.changes)


def meiotic_value(p: float, x: float) -> float:
    """Expected next-moment change of winning ``x`` with probability ``p``: ``(1+x)**p - 1``."""
    check_sense(p, "p", allow_zero=False)
    if not x >= 0:
        raise DomainError(f"gain must be non-negative, got {x}")
    return p * glog(p, 1.0 + x)


def hyperbolic_loss_value(params: SCurveParams, x: float) -> float:
    """Exaggerated certain loss ``(1 + p*rho*x)**(1/p) - 1``."""
    if not (-1.0 < x <= 0.0):
        raise DomainError(f"loss must lie in (-1, 0], got {x}")
    p, rho = params.p, params.rho
    if not 1.0 + p * rho * x > 0:
        raise DomainError(f"1 + p*rho*x must be positive (x={x}, p={p}, rho={rho})")
    return math.expm1(math.log1p(p * rho * x) / p)


def s_curve(params: SCurveParams, x: float) -> float:
    if x >= 0:
        return meiotic_value(params.p, x)
    return hyperbolic_loss_value(params, x)


def _gap(params: SCurveParams, x: float) -> float:
    return hyperbolic_loss_value(params, x) - x


def risk_crossover(params: SCurveParams) -> float | None:
    """Loss level where the exaggerated certain loss re-crosses the line ``x``.

    Milder losses favour the gamble, deeper ones the sure loss.  ``None``
    when no crossing exists inside ``(-1, 0)``.
    """
    if params.rho == 1.0:
        # convex and tangent to x at 0: never below the line
        return None
    lo = params.loss_floor + _BRACKET_DELTA
    hi = -_BRACKET_DELTA
    if lo >= hi:
        return None

    xs = np.linspace(lo, hi, 257)
    signs = np.sign([_gap(params, x) for x in xs])
    changes = int(np.count_nonzero(np.diff(signs[signs != 0])))
    if changes > 1:
        raise DomainError(f"{changes} sign changes for {params}; crossover is not unique")

    f_lo, f_hi = _gap(params, lo), _gap(params, hi)
    if not (f_lo > 0 > f_hi):
        return None
    while hi - lo >= _ROOT_WIDTH:
        mid = 0.5 * (lo + hi)
        if _gap(params, mid) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def crossover_half(rho: float) -> float:
    """Closed-form crossover for ``p = 1/2``: ``-4*(rho - 1)/rho**2``."""
    return -4.0 * (rho - 1.0) / rho**2


def is_tie(certain: float, uncertain: float) -> bool:
    return math.isclose(certain, uncertain, rel_tol=TIE_RTOL, abs_tol=1e-15)


def _prefer(certain: float, uncertain: float, params: MembershipParams) -> Choice:
    if is_tie(certain, uncertain):
        return Choice.CERTAIN
    return judge(params, [(Choice.CERTAIN, certain), (Choice.UNCERTAIN, uncertain)])


def judge_gain_lottery(
    x: float, p: float, params: MembershipParams = DEFAULT_PARAMS
) -> Choice:
    """Sure ``p*x`` against ``x`` with probability ``p``; ties go to the sure gain."""
    return _prefer(p * x, meiotic_value(p, x), params)


def judge_loss_lottery(
    x: float, scurve: SCurveParams, params: MembershipParams = DEFAULT_PARAMS
) -> Choice:
    """Sure loss ``p*|x|`` against losing ``|x|`` with probability ``p``.

    The sure loss is compared in its exaggerated form; ties (exactly at the
    crossover) go to the sure loss.
    """
    if not -1.0 < x < 0.0:
        raise DomainError(f"loss must lie in (-1, 0), got {x}")
    return _prefer(hyperbolic_loss_value(scurve, x), x, params)


class Disjunction(NamedTuple):
    change: float
    next_form: bool


def disjunction_change(x1: float, p: float, x2: float, q: float) -> Disjunction:
    """Average change ``(1+x1)**p * (1+x2)**q - 1`` of "win x1 (p) or lose x2 (q)"."""
    if not (x1 >= 0 >= x2 > -1):
        raise DomainError(f"need x1 >= 0 >= x2 > -1, got x1={x1}, x2={x2}")
    if p < 0 or q < 0:
        raise DomainError("probabilities must be non-negative")
    if p + q > 1.0 + 1e-12:
        raise DomainError(f"probability mass p + q = {p + q} exceeds 1")
    log_factor = p * math.log1p(x1) + q * math.log1p(x2)
    return Disjunction(math.expm1(log_factor), math.isclose(p + q, 1.0, abs_tol=1e-12))


def is_fair(x1: float, p: float, x2: float, q: float) -> bool:
    return disjunction_change(x1, p, x2, q).change > 0


def restore_change(x: float) -> float:
    """Change that brings wealth back after a change ``x``: ``1/(1+x) - 1``."""
    if not x > -1.0:
        raise DomainError(f"cannot restore from ruin (x={x})")
    return -x / (1.0 + x)


def judge_lottery(
    lottery: Lottery, rho: float = DEFAULT_RHO, params: MembershipParams = DEFAULT_PARAMS
) -> Choice:
    """Judge a one-outcome lottery against receiving its expected amount for sure."""
    if len(lottery.outcomes) != 1:
        raise DomainError("only single-outcome lotteries have a certain counterpart")
    (x, p), = lottery.changes
    if x >= 0:
        return judge_gain_lottery(x, p, params)
    return judge_loss_lottery(x, SCurveParams(p=p, rho=rho), params)
