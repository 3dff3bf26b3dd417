"""Temporal hypotheses, meiosis/hyperbole argumentation and the time-average oracle.

A hypothesis proposes a change ``x`` and carries a sense of truth ``s``,
the intuitive long-run fraction of time in which it holds.  Two hypotheses
are similar when their time-average growth factors match::

    F(X, s)  ~  N(x, 1)    iff    1 + x = (1 + X)**s

Meiosis moves a hypothesis to the certain ("next moment") frame by
shrinking its change; hyperbole moves a certain hypothesis to an uncertain
frame by inflating it.  Either way, judging then reduces to comparing
changes under the same sense of truth.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .core_math import DomainError, check_change, check_sense, hyperbolic_change, meiotic_change
from .membership import DEFAULT_PARAMS, MembershipParams, judge


class Quantifier(enum.Enum):
    NEXT = "N"
    SOMETIME = "F"
    ALWAYS = "G"
    FREQUENTLY = "GF"

    @property
    def certain(self) -> bool:
        return self in (Quantifier.NEXT, Quantifier.ALWAYS)


# Conventional positions on an ordinal scale.
ADVERB_SENSE = {
    "never": 0.0,
    "rarely": 0.15,
    "sometimes": 0.4,
    "often": 0.65,
    "usually": 0.8,
    "always": 1.0,
}


@dataclass(frozen=True)
class Hypothesis:
    label: str
    x: float
    s: float = 1.0
    quantifier: Quantifier = Quantifier.SOMETIME

    def __post_init__(self):
        check_change(self.x)
        check_sense(self.s)
        if self.quantifier.certain and self.s != 1.0:
            raise DomainError(
                f"{self.quantifier.name} hypothesis {self.label!r} must have s = 1, got {self.s}"
            )

    @property
    def growth_factor(self) -> float:
        """Per-period time-average factor ``(1 + x)**s``."""
        return 1.0 + meiotic_change(self.x, self.s)


def meiosis(hyp: Hypothesis) -> Hypothesis:
    """Reduce a hypothesis to the similar one that is certain at the next moment."""
    return replace(hyp, x=meiotic_change(hyp.x, hyp.s), s=1.0, quantifier=Quantifier.NEXT)


def hyperbole(hyp: Hypothesis, target_s: float) -> Hypothesis:
    """Exaggerate a certain hypothesis into a similar one holding with sense ``target_s``."""
    if hyp.s != 1.0:
        raise DomainError(f"hyperbole starts from a certain hypothesis, got s = {hyp.s}")
    check_sense(target_s, "target_s", allow_zero=False)
    return replace(
        hyp, x=hyperbolic_change(hyp.x, target_s), s=target_s, quantifier=Quantifier.SOMETIME
    )


class Mode(enum.Enum):
    MEIOSIS = "meiosis"
    HYPERBOLE = "hyperbole"


@dataclass(frozen=True)
class Comparison:
    winner: str
    mode: Mode
    sense: float  # common sense of truth the changes were brought to
    changes: tuple[float, float]


def _raise_to(hyp: Hypothesis, target: float) -> float:
    if hyp.s == target:
        return hyp.x
    # (1 + x)**(s/target) - 1, via the certain frame
    return hyperbolic_change(meiotic_change(hyp.x, hyp.s), target)


def compare_hypotheses(
    a: Hypothesis,
    b: Hypothesis,
    params: MembershipParams = DEFAULT_PARAMS,
    mode: Mode = Mode.MEIOSIS,
) -> Comparison:
    mode = Mode(mode)
    if mode is Mode.MEIOSIS:
        ea, eb = meiosis(a).x, meiosis(b).x
        sense = 1.0
    else:
        sense = min(a.s, b.s)
        if sense == 0.0:
            raise DomainError("hyperbole needs a positive sense of truth on both hypotheses")
        ea, eb = _raise_to(a, sense), _raise_to(b, sense)
    winner = judge(params, [(a.label, ea, sense), (b.label, eb, sense)])
    return Comparison(winner=winner, mode=mode, sense=sense, changes=(ea, eb))


def _rng(seed: int) -> np.random.Generator:
    # Philox: counter-based, 64-bit keyed; same seed gives the same trajectory
    return np.random.Generator(np.random.Philox(seed))


def simulate_outcomes(
    outcomes: Sequence[tuple[float, float]], T: int, seed: int = 0
) -> float:
    """Time-average growth factor of a repeated multi-outcome gamble.

    Each period at most one outcome fires: outcome ``i`` with probability
    ``p_i`` (so ``sum(p_i) <= 1``), otherwise wealth is unchanged.  Returns
    ``(W_T / W_0)**(1/T)``.
    """
    if T < 1:
        raise DomainError(f"T must be at least 1, got {T}")
    changes = [float(x) for x, _ in outcomes]
    probs = np.array([p for _, p in outcomes], dtype=float)
    for x in changes:
        if not x > -1.0:
            raise DomainError(f"outcome change {x} must exceed -1")
    if np.any(probs < 0) or probs.sum() > 1.0 + 1e-12:
        raise DomainError("outcome probabilities must be non-negative and sum to at most 1")

    u = _rng(seed).random(T)
    edges = np.cumsum(probs)
    idx = np.searchsorted(edges, u, side="right")  # len(outcomes) means nothing fired
    counts = np.bincount(idx, minlength=len(changes) + 1)[: len(changes)]
    factor = 1.0
    for x, k in zip(changes, counts):
        factor *= (1.0 + x) ** (k / T)
    return factor


def simulate_time_average(X: float, p: float, T: int, seed: int = 0) -> float:
    """Time-average factor of a gamble multiplying wealth by ``1 + X`` with probability ``p``.

    Converges to ``(1 + X)**p`` as ``T`` grows.
    """
    check_sense(p, "p")
    return simulate_outcomes([(X, p)], T, seed)


def similarity_gap(X: float, s: float, T: int, seed: int = 0) -> float:
    """Relative gap between the simulated and the closed-form meiotic factor."""
    expected = 1.0 + meiotic_change(X, s)
    return abs(simulate_time_average(X, s, T, seed) / expected - 1.0)


def sense_from_adverb(word: str) -> float:
    try:
        return ADVERB_SENSE[word.lower()]
    except KeyError:
        raise DomainError(
            f"unknown adverb {word!r}; expected one of {', '.join(ADVERB_SENSE)}"
        ) from None


__all__ = [
    "ADVERB_SENSE",
    "Comparison",
    "Hypothesis",
    "Mode",
    "Quantifier",
    "compare_hypotheses",
    "hyperbole",
    "meiosis",
    "sense_from_adverb",
    "similarity_gap",
    "simulate_outcomes",
    "simulate_time_average",
]
