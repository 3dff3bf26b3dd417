import math

import numpy as np
import pytest

from fuzzychoice.core_math import DomainError
from fuzzychoice.discounting import discount
from fuzzychoice.time_preference import (
    Decision,
    IntertemporalChoice,
    arbitrage_kappa,
    implied_discount,
    prefer_delayed,
    reversal_schedule,
)


def test_prefer_delayed_examples():
    one = prefer_delayed(IntertemporalChoice(m=15, M=50, W0=100, n=1))
    assert one.decision is Decision.LATER
    assert one.later_factor == pytest.approx(1.5) and one.sooner_factor == pytest.approx(1.15)

    four = prefer_delayed(IntertemporalChoice(m=15, M=50, W0=100, n=4))
    assert four.decision is Decision.SOONER
    assert four.sooner_factor == pytest.approx(1.74900625, rel=1e-14)

    impossible = prefer_delayed(IntertemporalChoice(m=15, M=1e6, W0=100, s_M=0.0))
    assert impossible.decision is Decision.SOONER


def test_choice_validation():
    for kwargs in (dict(m=0, M=1, W0=1), dict(m=2, M=1, W0=1), dict(m=1, M=2, W0=1, n=0.5),
                   dict(m=1, M=2, W0=1, s_m=1.5)):
        with pytest.raises(DomainError):
            IntertemporalChoice(**kwargs)


def test_rational_trial_count():
    # between n=2 (later) and n=4 (sooner) the switch sits at ln1.5/ln1.15
    n_star = math.log(1.5) / math.log(1.15)
    assert prefer_delayed(IntertemporalChoice(15, 50, 100, n=n_star - 0.01)).decision is Decision.LATER
    assert prefer_delayed(IntertemporalChoice(15, 50, 100, n=n_star + 0.01)).decision is Decision.SOONER


def test_discounting_consistency():
    rng = np.random.default_rng(11)
    for _ in range(500):
        W0 = rng.uniform(50, 5000)
        m = rng.uniform(1, W0)
        M = m * rng.uniform(1.01, 10)
        choice = IntertemporalChoice(
            m, M, W0, s_m=rng.uniform(0.05, 1), s_M=rng.uniform(0.05, 1), n=rng.uniform(1, 30)
        )
        kappa = arbitrage_kappa(choice)
        params = implied_discount(choice)
        # the implied discount undoes exactly the change of the large reward
        assert discount(params, choice.n) == pytest.approx(1 / (1 + M / W0), rel=1e-9)
        later = prefer_delayed(choice).decision is Decision.LATER
        margin = kappa * choice.s_M - m
        if abs(margin) > 1e-9 * m:
            assert later == (margin > 0)


def test_reversal_example():
    sched = reversal_schedule(10, 20, 100, 0.9, 0.6, 10)
    assert sched.preferred[:3] == ("M1", "M1", "M1")
    assert all(w == "M2" for w in sched.preferred[3:])
    assert sched.reversal_n == 4
    assert sched.winner(4) == "M2"


def test_reversal_threshold_matches_analytic():
    # (n+1)/n * s1*ln(1+M1/W0) < s2*ln(1+M2/W0)  <=>  n > 1/(ratio - 1)
    ratio = 0.6 * math.log(1.2) / (0.9 * math.log(1.1))
    assert math.ceil(1 / (ratio - 1)) == reversal_schedule(10, 20, 100, 0.9, 0.6, 10).reversal_n


def test_no_reversal_when_m2_dominates():
    # (1.1)**(2*0.5) < (1.5)**0.9: M2 already wins at n = 1
    sched = reversal_schedule(10, 50, 100, 0.5, 0.9, 20)
    assert set(sched.preferred) == {"M2"}
    assert sched.reversal_n is None


def test_identical_rewards_never_reverse():
    # the extra trials always favour the earlier of two equal rewards
    sched = reversal_schedule(10, 10, 100, 0.7, 0.7, 15)
    assert set(sched.preferred) == {"M1"}
    assert sched.reversal_n is None


def test_once_m2_wins_it_keeps_winning():
    rng = np.random.default_rng(5)
    for _ in range(300):
        M1 = rng.uniform(1, 50)
        sched = reversal_schedule(M1, M1 * rng.uniform(1, 5), 100, rng.uniform(0.1, 1), rng.uniform(0.1, 1), 40)
        if "M2" in sched.preferred:
            first = sched.preferred.index("M2")
            assert set(sched.preferred[first:]) == {"M2"}


def test_scale_invariance():
    rng = np.random.default_rng(9)
    for _ in range(100):
        M1, W0 = rng.uniform(1, 40), rng.uniform(50, 500)
        M2 = M1 * rng.uniform(1.05, 4)
        s1, s2 = rng.uniform(0.1, 1, size=2)
        c = rng.uniform(0.01, 1000)
        a = reversal_schedule(M1, M2, W0, s1, s2, 30)
        b = reversal_schedule(c * M1, c * M2, c * W0, s1, s2, 30)
        assert a.preferred == b.preferred
        ch = IntertemporalChoice(M1, M2, W0, s1, s2, n=2)
        ch_c = IntertemporalChoice(c * M1, c * M2, c * W0, s1, s2, n=2)
        assert prefer_delayed(ch).decision == prefer_delayed(ch_c).decision


def test_reversal_errors():
    with pytest.raises(DomainError):
        reversal_schedule(20, 10, 100, 0.9, 0.6, 5)
    with pytest.raises(DomainError):
        reversal_schedule(10, 20, 100, 0.0, 0.6, 5)
    with pytest.raises(DomainError):
        reversal_schedule(10, 20, 100, 0.9, 0.6, 0)
